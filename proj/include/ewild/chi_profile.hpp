#pragma once

#include <limits>
#include <string>
#include <vector>

namespace ewild {

/// Constants of the admissibility chain: rho0 <= C0^2, gradient sup bounds
/// c1, c2, and the ODE coefficients C1 = 2 c1 C0, C2 = c2 C0.
struct AdmissibilityConstants {
  double C0 = 1.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double C1 = 0.0;
  double C2 = 0.0;
};

/// Time gauge chi(t): constant, the admissibility ODE solution
/// chi' = -C1 chi^(1/2) - C2 chi^(3/2), or sampled values with linear
/// interpolation. The ODE form evaluates its closed form (via w = sqrt(chi))
/// and clamps to zero past the positivity horizon.
class ChiProfile {
 public:
  static ChiProfile constant(double chi0);
  static ChiProfile ode(double chi0, double C1, double C2);
  static ChiProfile sampled(std::vector<double> times, std::vector<double> values);

  double chi(double t) const;
  double dchi(double t) const;
  /// First time chi reaches zero (+inf if it stays positive).
  double horizon() const { return horizon_; }
  double chi0() const { return chi(0.0); }

  enum class Kind { Constant, Ode, Sampled };
  Kind kind() const { return kind_; }
  double ode_C1() const { return C1_; }
  double ode_C2() const { return C2_; }
  const std::vector<double>& sample_times() const { return ts_; }
  const std::vector<double>& sample_values() const { return vs_; }

 private:
  Kind kind_ = Kind::Constant;
  double chi0_ = 1.0, C1_ = 0.0, C2_ = 0.0;
  double horizon_ = std::numeric_limits<double>::infinity();
  std::vector<double> ts_, vs_;
};

struct ChiOdeResult {
  ChiProfile profile;
  double agreement_rel = 0.0;  // closed form vs adaptive RK4, relative
  double horizon = 0.0;
};

/// Solves the chi ODE with equality; evaluates both the closed form and an
/// adaptive 4th-order integrator and reports their agreement on [0, min(T,
/// horizon)].
ChiOdeResult solve_chi_ode(double chi0, double C1, double C2, double T);

/// T_bar = sup{ t : chi(s) > n*lambda(s) for all s <= t }, located by scan +
/// bisection; lambda is linearly interpolated between samples. Throws when
/// chi(0) <= n*lambda(0) (message carries the needed lower bound).
double maximal_time(const ChiProfile& chi, const std::vector<double>& times,
                    const std::vector<double>& lambda, int n);

}  // namespace ewild
