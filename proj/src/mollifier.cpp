#include "ewild/mollifier.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace ewild {

double smooth_step_down(double s) {
  if (s <= 0.0) return 1.0;
  if (s >= 1.0) return 0.0;
  const double a = std::exp(-1.0 / (1.0 - s));
  const double b = std::exp(-1.0 / s);
  return a / (a + b);
}

double plateau_bump(double dist, double r) {
  if (dist >= r) return 0.0;
  if (dist <= 0.5 * r) return 1.0;
  return smooth_step_down(2.0 * dist / r - 1.0);
}

double poly_bump(double s, int k) {
  const double t = 1.0 - s * s;
  if (t <= 0.0) return 0.0;
  double p = t;
  for (int i = 1; i < k; ++i) p *= t;
  return p;
}

ScalarField mollifier(double eps, const Grid& grid) {
  if (!(eps > 2.0 * grid.max_spacing()))
    throw std::invalid_argument("mollifier: eps under-resolved (need eps > 2*max spacing)");
  ScalarField w(grid);
  const int dim = grid.dim();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto x = grid.point(i);
    double d2 = 0.0;
    for (int a = 0; a < dim; ++a) {
      const double d = std::remainder(x[a], grid.box().length(a));
      d2 += d * d;
    }
    w[i] = plateau_bump(std::sqrt(d2), eps);
  }
  const double mass = integral(w);
  if (!(mass > 0.0)) throw std::runtime_error("mollifier: vanishing discrete mass");
  scale(w, 1.0 / mass);
  return w;
}

namespace {

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double plateau_bump_mass(double r, int dim) {
  const double surface = dim == 2 ? 2.0 * M_PI : 4.0 * M_PI;
  auto f = [&](double s) {
    const double jac = dim == 2 ? s : s * s;
    return plateau_bump(s, r) * jac;
  };
  const double fa = f(0.0), fb = f(r), fm = f(0.5 * r);
  const double whole = r / 6.0 * (fa + 4.0 * fm + fb);
  return surface * adaptive_simpson(f, 0.0, r, fa, fm, fb, whole, 1e-14, 40);
}

}  // namespace ewild
