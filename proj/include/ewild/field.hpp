#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace ewild {

/// Axis-aligned box defining the periodic computational domain. dim in {2,3}.
struct Box {
  int dim = 2;
  std::array<double, 3> lower{};
  std::array<double, 3> upper{};

  double length(int axis) const { return upper[axis] - lower[axis]; }
  void validate() const;
};

/// Uniform tensor grid over a periodic Box, with spectral wavenumber tables.
/// Point i on axis a sits at lower[a] + i*spacing(a); the right box face is
/// identified with the left one.
class Grid {
 public:
  Grid() = default;

  /// Factory enforcing the resolution preconditions (dims >= 16 per axis).
  static Grid make(const Box& box, const std::array<int, 3>& dims);

  const Box& box() const { return box_; }
  int dim() const { return box_.dim; }
  int points(int axis) const { return dims_[axis]; }
  const std::array<int, 3>& dims() const { return dims_; }
  double spacing(int axis) const { return box_.length(axis) / dims_[axis]; }
  double max_spacing() const;
  std::size_t size() const;
  double cell_volume() const;

  double coord(int axis, int i) const { return box_.lower[axis] + i * spacing(axis); }
  std::array<double, 3> point(std::size_t flat) const;

  /// Signed integer frequency for FFT bin i (0,1,...,N/2,-N/2+1,...,-1).
  int freq(int axis, int i) const;
  /// Angular wavenumber 2*pi*freq/L for FFT bin i.
  double wavenumber(int axis, int i) const { return two_pi_over_len_[axis] * freq(axis, i); }
  bool is_nyquist(int axis, int i) const { return dims_[axis] % 2 == 0 && i == dims_[axis] / 2; }

  bool same_as(const Grid& other) const;

 private:
  Box box_;
  std::array<int, 3> dims_{1, 1, 1};
  std::array<double, 3> two_pi_over_len_{};
};

/// Sampled field on a Grid; components stored contiguously, each row-major
/// (last axis fastest, matching the transform layout).
class FieldBase {
 public:
  FieldBase() = default;
  FieldBase(const Grid& grid, int ncomp)
      : grid_(grid), ncomp_(ncomp), v_(grid.size() * ncomp, 0.0) {}

  const Grid& grid() const { return grid_; }
  int components() const { return ncomp_; }
  std::size_t points() const { return grid_.size(); }

  double* comp(int c) { return v_.data() + static_cast<std::size_t>(c) * points(); }
  const double* comp(int c) const { return v_.data() + static_cast<std::size_t>(c) * points(); }
  std::vector<double>& raw() { return v_; }
  const std::vector<double>& raw() const { return v_; }

 protected:
  Grid grid_;
  int ncomp_ = 0;
  std::vector<double> v_;
};

class ScalarField : public FieldBase {
 public:
  ScalarField() = default;
  explicit ScalarField(const Grid& grid) : FieldBase(grid, 1) {}
  double& operator[](std::size_t i) { return v_[i]; }
  double operator[](std::size_t i) const { return v_[i]; }
};

class VectorField : public FieldBase {
 public:
  VectorField() = default;
  explicit VectorField(const Grid& grid) : FieldBase(grid, grid.dim()) {}
};

/// Packed symmetric order: 2D (11,12,22); 3D (11,12,13,22,23,33).
int sym_index(int n, int i, int j);
int sym_components(int n);

class SymTensorField : public FieldBase {
 public:
  SymTensorField() = default;
  explicit SymTensorField(const Grid& grid, bool traceless = false)
      : FieldBase(grid, sym_components(grid.dim())), traceless_(traceless) {}
  bool traceless() const { return traceless_; }
  void set_traceless(bool t) { traceless_ = t; }
  double* entry(int i, int j) { return comp(sym_index(grid_.dim(), i, j)); }
  const double* entry(int i, int j) const { return comp(sym_index(grid_.dim(), i, j)); }

 private:
  bool traceless_ = false;
};

/// General (not necessarily symmetric) n x n matrix field, row-major comps.
class MatrixField : public FieldBase {
 public:
  MatrixField() = default;
  explicit MatrixField(const Grid& grid) : FieldBase(grid, grid.dim() * grid.dim()) {}
  double* entry(int i, int j) { return comp(i * grid_.dim() + j); }
  const double* entry(int i, int j) const { return comp(i * grid_.dim() + j); }
};

// ---- reductions & elementwise helpers ----

double max_abs(const FieldBase& f);
double linf_diff(const FieldBase& a, const FieldBase& b);
double mean(const ScalarField& f);
double integral(const ScalarField& f);
/// l2 norm of the field over the box: sqrt(sum |f|^2 * cellvol), all components.
double l2_norm(const FieldBase& f);

/// y += a*x (same shape).
void axpy(double a, const FieldBase& x, FieldBase& y);
void scale(FieldBase& f, double a);

/// Pointwise Euclidean magnitude across components.
ScalarField magnitude(const FieldBase& f);

// ---- regions & support ----

struct Ball {
  std::array<double, 3> center{};
  double radius = 0.0;
  bool contains(const std::array<double, 3>& x, int dim) const;
  Ball inflate(double margin) const { return Ball{center, radius + margin}; }
};

using Region = std::function<bool(const std::array<double, 3>&)>;

Region ball_region(const Ball& ball, int dim);

/// sup of |f| outside the region, normalized by max|f|; 0 for the zero field.
double support_excess(const FieldBase& f, const Region& region);
double support_excess(const FieldBase& f, const Ball& ball);

/// Radius of the smallest ball centered at `center` containing all samples
/// with |f| > threshold * max|f|.
double support_radius(const FieldBase& f, const std::array<double, 3>& center,
                      double threshold = 1e-13);

}  // namespace ewild
