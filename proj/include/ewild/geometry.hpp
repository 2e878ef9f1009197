#pragma once

#include <array>
#include <functional>
#include <random>

#include "ewild/field.hpp"
#include "ewild/pressure.hpp"

namespace ewild {

/// Pointwise state (m, U, q): momentum, traceless symmetric matrix (packed),
/// modified pressure.
struct State {
  int n = 2;
  std::array<double, 3> m{};
  std::array<double, 6> U{};  // packed symmetric, see sym_index
  double q = 0.0;

  double u(int i, int j) const { return U[sym_index(n, i, j)]; }
  double& u(int i, int j) { return U[sym_index(n, i, j)]; }
};

struct HullParams {
  double rho = 1.0;
  double chi = 1.0;
};

/// Largest eigenvalue of a packed symmetric matrix, closed form (n = 2, 3).
double lambda_max_sym(int n, const double* packed);
/// Operator norm (largest |eigenvalue|), closed form.
double opnorm_sym(int n, const double* packed);

/// e(rho, m, U) = lambda_max(m (x) m / rho - U); rho > 0 required.
double e_value(double rho, const State& s);
double e_value_packed(int n, double rho, const double* m, const double* U_packed);

struct HullMargin {
  double margin = 0.0;    // chi/n - e  (> 0 <=> hyperinterior)
  double q_defect = 0.0;  // q - (p(rho) + chi/n)
};

HullMargin hull_margin(const State& s, const HullParams& hp, const PressureLaw& law);

/// Membership in K_{rho,chi}: hull membership plus |m|^2 = rho*chi within
/// tol (relative). When true, U necessarily equals the equality-case matrix
/// (verified internally).
bool in_K(const State& s, const HullParams& hp, const PressureLaw& law, double tol);

/// det M for the (n+1)x(n+1) symmetric block matrix M = [[U + q I, m],[m, 0]];
/// membership in the wave cone <=> |det| <= tol * wave_cone_scale(s).
double wave_cone_residual(const State& s);
double wave_cone_scale(const State& s);

/// Numeric kernel vector of M(s) (unit norm); meaningful when s is in the
/// wave cone. Also reports the conditioning |M xi| / (|M| |xi|).
std::array<double, 4> wave_cone_kernel(const State& s, double* conditioning = nullptr);

/// The unique (U, q) completing (rho, m) to a point of K_rho.
State flux_from_state(double rho, const std::array<double, 3>& m, int n, const PressureLaw& law);

/// Assembles (m,U,q) h(y . xi) on grid x [0,T] and measures the weak residual
/// of the linear system against a fixed family of compactly supported
/// space-time test functions. Requires xi in the kernel of M(s).
double plane_wave_check(const State& s, const std::array<double, 4>& xi,
                        const std::function<double(double)>& profile, const Grid& spatial,
                        int nt, double T, double kernel_tol = 1e-8);

/// A laminate direction between two states of K_{rho,chi} (n = 2): both
/// endpoints on |m|^2 = rho*chi with their equality-case U's; the midpoint
/// difference lies in the wave cone with a closed-form kernel vector.
struct WaveDirection {
  State z_plus, z_minus;
  State z_bar;                 // (z+ - z-)/2, q component 0
  std::array<double, 4> xi{};  // kernel vector, |xi_x| = 1
  double cone_residual = 0.0;  // |det M(z_bar)| / scale
};

WaveDirection sample_direction(std::mt19937_64& rng, double rho, double chi,
                               const PressureLaw& law);

/// Direction through given angles (deterministic variant of sample_direction).
WaveDirection direction_from_angles(double alpha_plus, double alpha_minus, double rho, double chi,
                                    const PressureLaw& law);

}  // namespace ewild
