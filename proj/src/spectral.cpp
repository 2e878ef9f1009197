#include "ewild/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <stdexcept>

namespace ewild {

namespace {

// FFTW plan creation is not thread-safe; execution of a created plan is.
std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

void run_dft(const Grid& g, std::vector<std::complex<double>>& data, int sign) {
  const int rank = g.dim();
  int n[3] = {g.points(0), g.points(1), g.points(2)};
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(plan_mutex());
    plan = fftw_plan_dft(rank, n, ptr, ptr, sign, FFTW_ESTIMATE);
  }
  if (!plan) throw std::runtime_error("spectral: FFTW plan creation failed");
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(plan_mutex());
    fftw_destroy_plan(plan);
  }
}

}  // namespace

Spectrum forward(const ScalarField& f) {
  Spectrum s;
  s.grid = f.grid();
  s.c.assign(f.points(), {0.0, 0.0});
  for (std::size_t i = 0; i < f.points(); ++i) s.c[i] = f[i];
  run_dft(s.grid, s.c, FFTW_FORWARD);
  return s;
}

ScalarField inverse_real(const Spectrum& s) {
  std::vector<std::complex<double>> work = s.c;
  run_dft(s.grid, work, FFTW_BACKWARD);
  ScalarField out(s.grid);
  const double inv_n = 1.0 / static_cast<double>(s.grid.size());
  for (std::size_t i = 0; i < work.size(); ++i) out[i] = work[i].real() * inv_n;
  return out;
}

namespace {

// Applies mult(k-bins) to the spectrum of f. Multiplier receives the bin
// indices; derivative multipliers are assembled by the callers.
template <class Mult>
ScalarField apply_multiplier(const ScalarField& f, Mult&& mult) {
  Spectrum s = forward(f);
  const Grid& g = s.grid;
  if (g.dim() == 2) {
    const int n0 = g.points(0), n1 = g.points(1);
    std::size_t idx = 0;
    for (int i0 = 0; i0 < n0; ++i0)
      for (int i1 = 0; i1 < n1; ++i1, ++idx) s.c[idx] *= mult(i0, i1, 0);
  } else {
    const int n0 = g.points(0), n1 = g.points(1), n2 = g.points(2);
    std::size_t idx = 0;
    for (int i0 = 0; i0 < n0; ++i0)
      for (int i1 = 0; i1 < n1; ++i1)
        for (int i2 = 0; i2 < n2; ++i2, ++idx) s.c[idx] *= mult(i0, i1, i2);
  }
  return inverse_real(s);
}

}  // namespace

ScalarField spectral_derivative(const ScalarField& f, const std::array<int, 3>& orders) {
  const Grid& g = f.grid();
  return apply_multiplier(f, [&](int i0, int i1, int i2) -> std::complex<double> {
    const int idxs[3] = {i0, i1, i2};
    std::complex<double> m(1.0, 0.0);
    for (int a = 0; a < g.dim(); ++a) {
      const int d = orders[a];
      if (d == 0) continue;
      if (d % 2 == 1 && g.is_nyquist(a, idxs[a])) return {0.0, 0.0};
      const std::complex<double> ik(0.0, g.wavenumber(a, idxs[a]));
      for (int r = 0; r < d; ++r) m *= ik;
    }
    return m;
  });
}

VectorField spectral_gradient(const ScalarField& f) {
  VectorField out(f.grid());
  for (int a = 0; a < f.grid().dim(); ++a) {
    std::array<int, 3> ord{};
    ord[a] = 1;
    ScalarField d = spectral_derivative(f, ord);
    std::copy(d.raw().begin(), d.raw().end(), out.comp(a));
  }
  return out;
}

ScalarField spectral_divergence(const VectorField& v) {
  const Grid& g = v.grid();
  ScalarField out(g);
  for (int a = 0; a < g.dim(); ++a) {
    ScalarField comp(g);
    std::copy(v.comp(a), v.comp(a) + g.size(), comp.raw().begin());
    std::array<int, 3> ord{};
    ord[a] = 1;
    ScalarField d = spectral_derivative(comp, ord);
    for (std::size_t i = 0; i < g.size(); ++i) out[i] += d[i];
  }
  return out;
}

namespace {

template <class EntryGetter>
VectorField divergence_rows(const Grid& g, EntryGetter&& entry) {
  VectorField out(g);
  for (int i = 0; i < g.dim(); ++i) {
    for (int j = 0; j < g.dim(); ++j) {
      ScalarField comp(g);
      const double* src = entry(i, j);
      std::copy(src, src + g.size(), comp.raw().begin());
      std::array<int, 3> ord{};
      ord[j] = 1;
      ScalarField d = spectral_derivative(comp, ord);
      double* dst = out.comp(i);
      for (std::size_t k = 0; k < g.size(); ++k) dst[k] += d[k];
    }
  }
  return out;
}

}  // namespace

VectorField spectral_divergence(const SymTensorField& t) {
  return divergence_rows(t.grid(), [&](int i, int j) { return t.entry(i, j); });
}

VectorField spectral_divergence(const MatrixField& m) {
  return divergence_rows(m.grid(), [&](int i, int j) { return m.entry(i, j); });
}

SymTensorField spectral_hessian(const ScalarField& f) {
  const Grid& g = f.grid();
  SymTensorField out(g);
  for (int i = 0; i < g.dim(); ++i) {
    for (int j = i; j < g.dim(); ++j) {
      std::array<int, 3> ord{};
      ord[i] += 1;
      ord[j] += 1;
      ScalarField d = spectral_derivative(f, ord);
      std::copy(d.raw().begin(), d.raw().end(), out.entry(i, j));
    }
  }
  return out;
}

ScalarField spectral_laplacian(const ScalarField& f) {
  const Grid& g = f.grid();
  return apply_multiplier(f, [&](int i0, int i1, int i2) -> std::complex<double> {
    const int idxs[3] = {i0, i1, i2};
    double k2 = 0.0;
    for (int a = 0; a < g.dim(); ++a) {
      const double k = g.wavenumber(a, idxs[a]);
      k2 += k * k;
    }
    return {-k2, 0.0};
  });
}

ScalarField inverse_laplacian_zero_mean(const ScalarField& f) {
  const Grid& g = f.grid();
  return apply_multiplier(f, [&](int i0, int i1, int i2) -> std::complex<double> {
    const int idxs[3] = {i0, i1, i2};
    double k2 = 0.0;
    for (int a = 0; a < g.dim(); ++a) {
      const double k = g.wavenumber(a, idxs[a]);
      k2 += k * k;
    }
    if (k2 == 0.0) return {0.0, 0.0};
    return {-1.0 / k2, 0.0};
  });
}

ScalarField convolve(const ScalarField& f, const ScalarField& kernel, bool* wrapped) {
  if (!f.grid().same_as(kernel.grid()))
    throw std::invalid_argument("convolve: fields must share a grid");
  if (wrapped) {
    // Combined support must fit in the box, else the periodic product wraps.
    *wrapped = false;
    const Grid& g = f.grid();
    for (int a = 0; a < g.dim(); ++a) {
      const double half = 0.5 * g.box().length(a);
      std::array<double, 3> c{};
      const double rf = support_radius(f, c);
      const double rk = support_radius(kernel, c);
      if (rf + rk > half) *wrapped = true;
    }
  }
  Spectrum sf = forward(f);
  Spectrum sk = forward(kernel);
  for (std::size_t i = 0; i < sf.c.size(); ++i) sf.c[i] *= sk.c[i];
  ScalarField out = inverse_real(sf);
  scale(out, f.grid().cell_volume());
  return out;
}

ScalarField spectral_upsample(const ScalarField& f, int factor) {
  if (factor < 1) throw std::invalid_argument("spectral_upsample: factor must be >= 1");
  if (factor == 1) return f;
  const Grid& g = f.grid();
  std::array<int, 3> fine_dims{1, 1, 1};
  for (int a = 0; a < g.dim(); ++a) fine_dims[a] = g.points(a) * factor;
  Grid fine = Grid::make(g.box(), fine_dims);

  Spectrum coarse = forward(f);
  Spectrum up;
  up.grid = fine;
  up.c.assign(fine.size(), {0.0, 0.0});

  // Copy each coarse bin into the matching signed-frequency slot; split
  // Nyquist modes evenly between +N/2 and -N/2 to keep the field real.
  const double amp = static_cast<double>(fine.size()) / static_cast<double>(g.size());
  auto place = [&](const std::array<int, 3>& fr, std::complex<double> val) {
    std::size_t idx = 0;
    for (int a = 0; a < g.dim(); ++a) {
      int bin = fr[a] >= 0 ? fr[a] : fr[a] + fine.points(a);
      idx = idx * fine.points(a) + bin;
    }
    up.c[idx] += val * amp;
  };
  const int n0 = g.points(0), n1 = g.points(1), n2 = g.dim() == 3 ? g.points(2) : 1;
  std::size_t idx = 0;
  for (int i0 = 0; i0 < n0; ++i0) {
    for (int i1 = 0; i1 < n1; ++i1) {
      for (int i2 = 0; i2 < n2; ++i2, ++idx) {
        const int bins[3] = {i0, i1, i2};
        std::vector<std::array<int, 3>> targets{{0, 0, 0}};
        double weight = 1.0;
        for (int a = 0; a < g.dim(); ++a) {
          const int fr = g.freq(a, bins[a]);
          if (g.is_nyquist(a, bins[a])) {
            weight *= 0.5;
            std::vector<std::array<int, 3>> split;
            for (auto t : targets) {
              t[a] = fr;
              split.push_back(t);
              t[a] = -fr;
              split.push_back(t);
            }
            targets = std::move(split);
          } else {
            for (auto& t : targets) t[a] = fr;
          }
        }
        for (const auto& t : targets) place(t, coarse.c[idx] * weight);
      }
    }
  }
  return inverse_real(up);
}

}  // namespace ewild
