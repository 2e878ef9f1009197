#pragma once

#include "ewild/field.hpp"
#include "ewild/pressure.hpp"
#include "ewild/report.hpp"

namespace ewild {

/// Pressure deviation p1 = p(rho0) - p(rho_bar). Requires rho0 > 0, p' > 0 on
/// its range, and zero discrete mean (the compatibility hypothesis); throws
/// "incompatible density" otherwise.
ScalarField pressure_deviation(const ScalarField& rho0, const PressureLaw& law, double rho_bar,
                               double mean_tol = 1e-10);

struct CompactPoissonSolution {
  ScalarField u;      // lap(u) = p_eps with supp u in closure(Omega^eps)
  ScalarField p_eps;  // p1 - p1 * omega^eps (physical-space assembly)
  double epsilon = 0.0;
  double residual_linf = 0.0;   // max|lap u - p_eps| / max|p_eps|
  double support_excess = 0.0;  // of u outside Omega^eps
  ReportSection checks;
};

/// Solves lap(u) = p1 - p1*omega^eps with compactly supported u via
/// u_hat = p1_hat * (omega_hat - 1)/|xi|^2 (frequency-0 mode set to zero).
/// `omega_ball` describes Omega (the support of p1); the support check runs
/// against Omega^eps = omega_ball inflated by eps.
CompactPoissonSolution solve_compact(const ScalarField& p1, double epsilon,
                                     const Ball& omega_ball, double residual_tol = 1e-8,
                                     double support_tol = 1e-6);

struct PwsDecayReport {
  double omega_hat_zero = 0.0;   // transform at frequency 0 (unit mass -> 1)
  double max_abs = 0.0;          // sup over real frequencies (L1 bound -> <= 1)
  double tail_ratio = 0.0;       // |omega_hat| at the largest resolved frequency / at 0
  double fitted_exponent = 0.0;  // log-log slope of the radial-max profile tail
  ReportSection checks;
};

/// Real-axis consequences of the exponential-type bound for the mollifier
/// transform (report-only).
PwsDecayReport verify_pws_decay(const ScalarField& omega_eps);

}  // namespace ewild
