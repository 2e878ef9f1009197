#include "ewild/pressure.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ewild {

namespace {

double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa,
                   double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_quadrature(const std::function<double(double)>& f, double a, double b,
                           double tol) {
  if (a == b) return 0.0;
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_rec(f, a, b, fa, fm, fb, whole, tol, 48);
}

PressureLaw PressureLaw::gamma_law(double kappa, double gamma) {
  if (!(kappa > 0.0) || !(gamma > 0.0))
    throw std::invalid_argument("PressureLaw: gamma law needs kappa > 0, gamma > 0");
  PressureLaw law;
  law.kind_ = Kind::Gamma;
  law.kappa_ = kappa;
  law.gamma_ = gamma;
  return law;
}

PressureLaw PressureLaw::tabulated(std::vector<double> rho, std::vector<double> p) {
  if (rho.size() < 3 || rho.size() != p.size())
    throw std::invalid_argument("PressureLaw: tabulated law needs >= 3 matched samples");
  for (std::size_t i = 1; i < rho.size(); ++i) {
    if (!(rho[i] > rho[i - 1]) || !(p[i] > p[i - 1]))
      throw std::invalid_argument("PressureLaw: tabulated samples must be strictly increasing");
  }
  PressureLaw law;
  law.kind_ = Kind::Tabulated;
  law.trho_ = std::move(rho);
  law.tp_ = std::move(p);
  // Fritsch-Carlson slopes: monotone cubic Hermite interpolant, p' > 0.
  const std::size_t n = law.trho_.size();
  std::vector<double> d(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i)
    d[i] = (law.tp_[i + 1] - law.tp_[i]) / (law.trho_[i + 1] - law.trho_[i]);
  law.tm_.assign(n, 0.0);
  law.tm_[0] = d[0];
  law.tm_[n - 1] = d[n - 2];
  for (std::size_t i = 1; i + 1 < n; ++i) law.tm_[i] = 0.5 * (d[i - 1] + d[i]);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double a = law.tm_[i] / d[i], b = law.tm_[i + 1] / d[i];
    const double s = a * a + b * b;
    if (s > 9.0) {
      const double t = 3.0 / std::sqrt(s);
      law.tm_[i] = t * a * d[i];
      law.tm_[i + 1] = t * b * d[i];
    }
  }
  return law;
}

int PressureLaw::find_interval(double rho) const {
  if (rho < trho_.front() || rho > trho_.back())
    throw std::domain_error("PressureLaw: density outside tabulated range");
  auto it = std::upper_bound(trho_.begin(), trho_.end(), rho);
  int i = static_cast<int>(it - trho_.begin()) - 1;
  return std::clamp(i, 0, static_cast<int>(trho_.size()) - 2);
}

double PressureLaw::value(double rho) const {
  if (!(rho > 0.0)) throw std::domain_error("PressureLaw: rho must be positive");
  if (kind_ == Kind::Gamma) return kappa_ * std::pow(rho, gamma_);
  const int i = find_interval(rho);
  const double h = trho_[i + 1] - trho_[i];
  const double t = (rho - trho_[i]) / h;
  const double t2 = t * t, t3 = t2 * t;
  return tp_[i] * (2 * t3 - 3 * t2 + 1) + h * tm_[i] * (t3 - 2 * t2 + t) +
         tp_[i + 1] * (-2 * t3 + 3 * t2) + h * tm_[i + 1] * (t3 - t2);
}

double PressureLaw::derivative(double rho) const {
  if (!(rho > 0.0)) throw std::domain_error("PressureLaw: rho must be positive");
  if (kind_ == Kind::Gamma) return kappa_ * gamma_ * std::pow(rho, gamma_ - 1.0);
  const int i = find_interval(rho);
  const double h = trho_[i + 1] - trho_[i];
  const double t = (rho - trho_[i]) / h;
  const double t2 = t * t;
  return (tp_[i] * (6 * t2 - 6 * t) + h * tm_[i] * (3 * t2 - 4 * t + 1) +
          tp_[i + 1] * (-6 * t2 + 6 * t) + h * tm_[i + 1] * (3 * t2 - 2 * t)) /
         h;
}

double PressureLaw::inverse(double pv) const {
  if (kind_ == Kind::Gamma) {
    if (!(pv > 0.0)) throw std::domain_error("PressureLaw: inverse needs positive pressure");
    return std::pow(pv / kappa_, 1.0 / gamma_);
  }
  if (pv < tp_.front() || pv > tp_.back())
    throw std::domain_error("PressureLaw: pressure outside tabulated range");
  double lo = trho_.front(), hi = trho_.back();
  for (int it = 0; it < 200 && hi - lo > 1e-15 * (1.0 + hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    (value(mid) < pv ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double PressureLaw::internal_energy(double rho, double rho_ref) const {
  if (!(rho > 0.0) || !(rho_ref > 0.0))
    throw std::domain_error("PressureLaw: internal_energy needs positive densities");
  if (kind_ == Kind::Gamma) {
    if (std::abs(gamma_ - 1.0) < 1e-14) return kappa_ * std::log(rho / rho_ref);
    return kappa_ * (std::pow(rho, gamma_ - 1.0) - std::pow(rho_ref, gamma_ - 1.0)) /
           (gamma_ - 1.0);
  }
  return adaptive_quadrature([this](double s) { return value(s) / (s * s); }, rho_ref, rho);
}

double PressureLaw::rho_min() const { return kind_ == Kind::Gamma ? 0.0 : trho_.front(); }
double PressureLaw::rho_max() const {
  return kind_ == Kind::Gamma ? std::numeric_limits<double>::infinity() : trho_.back();
}

std::string PressureLaw::describe() const {
  std::ostringstream os;
  if (kind_ == Kind::Gamma)
    os << "gamma(kappa=" << kappa_ << ",gamma=" << gamma_ << ")";
  else
    os << "tabulated(" << trho_.size() << " knots)";
  return os.str();
}

}  // namespace ewild
