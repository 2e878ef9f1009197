#include "ewild/compact_poisson.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ewild/mollifier.hpp"
#include "ewild/spectral.hpp"

namespace ewild {

ScalarField pressure_deviation(const ScalarField& rho0, const PressureLaw& law, double rho_bar,
                               double mean_tol) {
  const double p_bar = law.value(rho_bar);
  ScalarField p1(rho0.grid());
  for (std::size_t i = 0; i < rho0.points(); ++i) {
    if (!(rho0[i] > 0.0))
      throw std::domain_error("pressure_deviation: rho0 must be positive everywhere");
    p1[i] = law.value(rho0[i]) - p_bar;
  }
  const double scale = max_abs(p1);
  if (scale > 0.0 && std::abs(mean(p1)) > mean_tol * scale)
    throw std::runtime_error("pressure_deviation: incompatible density (nonzero mean of p1)");
  return p1;
}

CompactPoissonSolution solve_compact(const ScalarField& p1, double epsilon,
                                     const Ball& omega_ball, double residual_tol,
                                     double support_tol) {
  const Grid& g = p1.grid();
  CompactPoissonSolution sol;
  sol.epsilon = epsilon;
  sol.checks.name = "compact_poisson";

  const Ball omega_eps_ball = omega_ball.inflate(epsilon);
  // Omega^eps must sit inside the box with margin (no periodic wrap).
  for (int a = 0; a < g.dim(); ++a) {
    const double lo = omega_eps_ball.center[a] - omega_eps_ball.radius;
    const double hi = omega_eps_ball.center[a] + omega_eps_ball.radius;
    if (lo < g.box().lower[a] + epsilon || hi > g.box().upper[a] - epsilon)
      throw std::invalid_argument("solve_compact: Omega^eps too close to the box boundary");
  }

  if (max_abs(p1) == 0.0) {
    sol.u = ScalarField(g);
    sol.p_eps = ScalarField(g);
    sol.checks.require("residual_linf", 0.0, residual_tol);
    sol.checks.require("support_excess", 0.0, support_tol);
    return sol;
  }

  const ScalarField omega = mollifier(epsilon, g);
  sol.p_eps = p1;
  ScalarField smoothed = convolve(p1, omega);
  axpy(-1.0, smoothed, sol.p_eps);

  // u_hat = p1_hat * g1(|xi|^2) with g1 = (omega_hat - 1)/|xi|^2; the ratio is
  // well conditioned near 0 because 1 - omega_hat vanishes quadratically.
  Spectrum sp = forward(p1);
  Spectrum sw = forward(omega);
  const double cellvol = g.cell_volume();
  if (g.dim() == 2) {
    const int n0 = g.points(0), n1 = g.points(1);
    std::size_t idx = 0;
    for (int i0 = 0; i0 < n0; ++i0) {
      for (int i1 = 0; i1 < n1; ++i1, ++idx) {
        const double k0 = g.wavenumber(0, i0), k1 = g.wavenumber(1, i1);
        const double k2 = k0 * k0 + k1 * k1;
        if (k2 == 0.0) {
          sp.c[idx] = 0.0;
          continue;
        }
        const double omega_hat = sw.c[idx].real() * cellvol;  // real: even kernel
        sp.c[idx] *= (omega_hat - 1.0) / k2;
      }
    }
  } else {
    const int n0 = g.points(0), n1 = g.points(1), n2 = g.points(2);
    std::size_t idx = 0;
    for (int i0 = 0; i0 < n0; ++i0) {
      for (int i1 = 0; i1 < n1; ++i1) {
        for (int i2 = 0; i2 < n2; ++i2, ++idx) {
          const double k0 = g.wavenumber(0, i0), k1 = g.wavenumber(1, i1),
                       k2c = g.wavenumber(2, i2);
          const double k2 = k0 * k0 + k1 * k1 + k2c * k2c;
          if (k2 == 0.0) {
            sp.c[idx] = 0.0;
            continue;
          }
          const double omega_hat = sw.c[idx].real() * cellvol;
          sp.c[idx] *= (omega_hat - 1.0) / k2;
        }
      }
    }
  }
  sol.u = inverse_real(sp);

  ScalarField lap_u = spectral_laplacian(sol.u);
  axpy(-1.0, sol.p_eps, lap_u);
  const double p_scale = max_abs(sol.p_eps);
  sol.residual_linf = p_scale > 0.0 ? max_abs(lap_u) / p_scale : 0.0;
  sol.support_excess = support_excess(sol.u, omega_eps_ball);

  sol.checks.require("residual_linf", sol.residual_linf, residual_tol,
                     "max|lap u - p_eps| / max|p_eps|");
  sol.checks.require("support_excess", sol.support_excess, support_tol,
                     "sup|u| outside Omega^eps / max|u|");
  sol.checks.require("mean_u", std::abs(mean(sol.u)) / std::max(max_abs(sol.u), 1e-300), 1e-12,
                     "frequency-0 mode pinned to zero");
  return sol;
}

PwsDecayReport verify_pws_decay(const ScalarField& omega_eps) {
  const Grid& g = omega_eps.grid();
  PwsDecayReport rep;
  rep.checks.name = "pws_decay";
  Spectrum s = forward(omega_eps);
  const double cellvol = g.cell_volume();

  // Radial-max profile of |omega_hat| over integer-frequency shells.
  int max_shell = 0;
  for (int a = 0; a < g.dim(); ++a) max_shell += (g.points(a) / 2) * (g.points(a) / 2);
  max_shell = static_cast<int>(std::sqrt(static_cast<double>(max_shell))) + 1;
  std::vector<double> shell_max(max_shell + 1, 0.0);

  const int n0 = g.points(0), n1 = g.points(1), n2 = g.dim() == 3 ? g.points(2) : 1;
  std::size_t idx = 0;
  double global_max = 0.0;
  for (int i0 = 0; i0 < n0; ++i0) {
    for (int i1 = 0; i1 < n1; ++i1) {
      for (int i2 = 0; i2 < n2; ++i2, ++idx) {
        const double f0 = g.freq(0, i0), f1 = g.freq(1, i1),
                     f2 = g.dim() == 3 ? g.freq(2, i2) : 0.0;
        const double r = std::sqrt(f0 * f0 + f1 * f1 + f2 * f2);
        const double a = std::abs(s.c[idx]) * cellvol;
        global_max = std::max(global_max, a);
        const int shell = std::min<int>(static_cast<int>(std::lround(r)), max_shell);
        shell_max[shell] = std::max(shell_max[shell], a);
      }
    }
  }
  rep.omega_hat_zero = s.c[0].real() * cellvol;
  rep.max_abs = global_max;

  // Largest fully resolved shell: min over axes of N/2.
  int kres = g.points(0) / 2;
  for (int a = 1; a < g.dim(); ++a) kres = std::min(kres, g.points(a) / 2);
  rep.tail_ratio = shell_max[kres] / rep.omega_hat_zero;

  // Fitted exponent of |omega_hat| ~ (1+k)^(-s) over the top octave.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  for (int k = kres / 2; k <= kres; ++k) {
    if (shell_max[k] <= 0.0) continue;
    const double x = std::log(1.0 + k), y = std::log(shell_max[k]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++cnt;
  }
  rep.fitted_exponent = cnt > 1 ? -(cnt * sxy - sx * sy) / (cnt * sxx - sx * sx) : 0.0;

  rep.checks.require("omega_hat_zero_minus_one", std::abs(rep.omega_hat_zero - 1.0), 1e-12,
                     "unit mass");
  rep.checks.require("sup_minus_one", rep.max_abs - 1.0, 1e-12,
                     "L1 bound of a nonnegative kernel");
  rep.checks.record("tail_ratio", rep.tail_ratio);
  rep.checks.record("fitted_exponent", rep.fitted_exponent);
  return rep;
}

}  // namespace ewild
