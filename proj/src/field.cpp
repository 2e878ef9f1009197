#include "ewild/field.hpp"

#include <cmath>
#include <stdexcept>

namespace ewild {

void Box::validate() const {
  if (dim < 2 || dim > 3) throw std::invalid_argument("Box: dim must be 2 or 3");
  for (int a = 0; a < dim; ++a) {
    if (!(upper[a] > lower[a])) throw std::invalid_argument("Box: upper must exceed lower");
  }
}

Grid Grid::make(const Box& box, const std::array<int, 3>& dims) {
  box.validate();
  Grid g;
  g.box_ = box;
  g.dims_ = {1, 1, 1};
  for (int a = 0; a < box.dim; ++a) {
    if (dims[a] < 16)
      throw std::invalid_argument("Grid: dims must be >= 16 per axis (resolution too low)");
    g.dims_[a] = dims[a];
    g.two_pi_over_len_[a] = 2.0 * M_PI / box.length(a);
  }
  return g;
}

double Grid::max_spacing() const {
  double h = 0.0;
  for (int a = 0; a < dim(); ++a) h = std::max(h, spacing(a));
  return h;
}

std::size_t Grid::size() const {
  std::size_t n = 1;
  for (int a = 0; a < dim(); ++a) n *= static_cast<std::size_t>(dims_[a]);
  return n;
}

double Grid::cell_volume() const {
  double v = 1.0;
  for (int a = 0; a < dim(); ++a) v *= spacing(a);
  return v;
}

std::array<double, 3> Grid::point(std::size_t flat) const {
  std::array<double, 3> x{};
  if (dim() == 2) {
    const std::size_t n1 = dims_[1];
    x[0] = coord(0, static_cast<int>(flat / n1));
    x[1] = coord(1, static_cast<int>(flat % n1));
  } else {
    const std::size_t n1 = dims_[1], n2 = dims_[2];
    x[2] = coord(2, static_cast<int>(flat % n2));
    const std::size_t rest = flat / n2;
    x[1] = coord(1, static_cast<int>(rest % n1));
    x[0] = coord(0, static_cast<int>(rest / n1));
  }
  return x;
}

int Grid::freq(int axis, int i) const {
  const int n = dims_[axis];
  return (i <= n / 2) ? i : i - n;
}

bool Grid::same_as(const Grid& other) const {
  if (dim() != other.dim()) return false;
  for (int a = 0; a < dim(); ++a) {
    if (dims_[a] != other.dims_[a]) return false;
    if (box_.lower[a] != other.box_.lower[a] || box_.upper[a] != other.box_.upper[a]) return false;
  }
  return true;
}

int sym_components(int n) { return n * (n + 1) / 2; }

int sym_index(int n, int i, int j) {
  if (i > j) std::swap(i, j);
  if (n == 2) return i + j;             // (0,0)->0 (0,1)->1 (1,1)->2
  return i * n - i * (i - 1) / 2 + (j - i);  // 3D packed upper triangle
}

double max_abs(const FieldBase& f) {
  double m = 0.0;
  for (double x : f.raw()) m = std::max(m, std::abs(x));
  return m;
}

double linf_diff(const FieldBase& a, const FieldBase& b) {
  if (a.raw().size() != b.raw().size()) throw std::invalid_argument("linf_diff: shape mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.raw().size(); ++i)
    m = std::max(m, std::abs(a.raw()[i] - b.raw()[i]));
  return m;
}

double mean(const ScalarField& f) {
  double s = 0.0;
  for (double x : f.raw()) s += x;
  return s / static_cast<double>(f.points());
}

double integral(const ScalarField& f) { return mean(f) * f.points() * f.grid().cell_volume(); }

double l2_norm(const FieldBase& f) {
  double s = 0.0;
  for (double x : f.raw()) s += x * x;
  return std::sqrt(s * f.grid().cell_volume());
}

void axpy(double a, const FieldBase& x, FieldBase& y) {
  if (x.raw().size() != y.raw().size()) throw std::invalid_argument("axpy: shape mismatch");
  for (std::size_t i = 0; i < x.raw().size(); ++i) y.raw()[i] += a * x.raw()[i];
}

void scale(FieldBase& f, double a) {
  for (double& x : f.raw()) x *= a;
}

ScalarField magnitude(const FieldBase& f) {
  ScalarField out(f.grid());
  const std::size_t n = f.points();
  for (int c = 0; c < f.components(); ++c) {
    const double* p = f.comp(c);
    for (std::size_t i = 0; i < n; ++i) out[i] += p[i] * p[i];
  }
  for (std::size_t i = 0; i < n; ++i) out[i] = std::sqrt(out[i]);
  return out;
}

bool Ball::contains(const std::array<double, 3>& x, int dim) const {
  double d2 = 0.0;
  for (int a = 0; a < dim; ++a) {
    const double d = x[a] - center[a];
    d2 += d * d;
  }
  return d2 < radius * radius;
}

Region ball_region(const Ball& ball, int dim) {
  return [ball, dim](const std::array<double, 3>& x) { return ball.contains(x, dim); };
}

double support_excess(const FieldBase& f, const Region& region) {
  const double scale = max_abs(f);
  if (scale == 0.0) return 0.0;
  const std::size_t n = f.points();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (region(f.grid().point(i))) continue;
    double a = 0.0;
    for (int c = 0; c < f.components(); ++c) a = std::max(a, std::abs(f.comp(c)[i]));
    worst = std::max(worst, a);
  }
  return worst / scale;
}

double support_excess(const FieldBase& f, const Ball& ball) {
  return support_excess(f, ball_region(ball, f.grid().dim()));
}

double support_radius(const FieldBase& f, const std::array<double, 3>& center, double threshold) {
  const double cut = threshold * max_abs(f);
  const std::size_t n = f.points();
  double r2max = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double a = 0.0;
    for (int c = 0; c < f.components(); ++c) a = std::max(a, std::abs(f.comp(c)[i]));
    if (a <= cut) continue;
    const auto x = f.grid().point(i);
    double d2 = 0.0;
    for (int axis = 0; axis < f.grid().dim(); ++axis) {
      const double d = x[axis] - center[axis];
      d2 += d * d;
    }
    r2max = std::max(r2max, d2);
  }
  return std::sqrt(r2max);
}

}  // namespace ewild
