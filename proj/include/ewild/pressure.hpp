#pragma once

#include <functional>
#include <string>
#include <vector>

namespace ewild {

/// Barotropic pressure law with p' > 0 on its working range.
/// Gamma law: p(rho) = kappa * rho^gamma (gamma=1 allowed).
/// Tabulated: monotone cubic interpolant (Fritsch-Carlson) of given samples.
class PressureLaw {
 public:
  static PressureLaw gamma_law(double kappa, double gamma);
  static PressureLaw tabulated(std::vector<double> rho, std::vector<double> p);

  double operator()(double rho) const { return value(rho); }
  double value(double rho) const;
  double derivative(double rho) const;
  /// Inverse of the (strictly increasing) law: rho with p(rho) = pv.
  double inverse(double pv) const;

  /// Internal energy from p(r) = r^2 eps'(r): eps(rho) = int_ref^rho p(s)/s^2 ds,
  /// normalized so eps(rho_ref) = 0. Closed form for gamma laws, adaptive
  /// quadrature otherwise.
  double internal_energy(double rho, double rho_ref) const;

  bool is_gamma() const { return kind_ == Kind::Gamma; }
  double kappa() const { return kappa_; }
  double gamma() const { return gamma_; }
  std::string describe() const;

  /// Valid density range (unbounded for gamma laws).
  double rho_min() const;
  double rho_max() const;

 private:
  enum class Kind { Gamma, Tabulated };
  Kind kind_ = Kind::Gamma;
  double kappa_ = 1.0, gamma_ = 2.0;
  // tabulated representation
  std::vector<double> trho_, tp_, tm_;  // knots, values, Fritsch-Carlson slopes
  int find_interval(double rho) const;
};

/// Adaptive Simpson quadrature (shared utility; tol is absolute).
double adaptive_quadrature(const std::function<double(double)>& f, double a, double b,
                           double tol = 1e-12);

}  // namespace ewild
