#include "ewild/bogovskii.hpp"

#include <cmath>
#include <stdexcept>

#include "ewild/mollifier.hpp"
#include "ewild/spectral.hpp"

namespace ewild {

void StarDomain::validate() const {
  if (!(ball_radius > 0.0) || !(outer_radius > ball_radius))
    throw std::invalid_argument("StarDomain: need 0 < ball_radius < outer_radius");
}

namespace {

// 4-point Gauss-Legendre on [-1,1].
constexpr double kGlNode[4] = {-0.8611363115940526, -0.3399810435848563, 0.3399810435848563,
                               0.8611363115940526};
constexpr double kGlWeight[4] = {0.3478548451374538, 0.6521451548625461, 0.6521451548625461,
                                 0.3478548451374538};

// Intersection of the ray origin + t*dir (unit dir) with a ball, clipped to
// t >= 0. Returns false if empty.
bool ray_ball(const std::array<double, 3>& origin, const std::array<double, 3>& dir,
              const std::array<double, 3>& center, double radius, int dim, double& t0,
              double& t1) {
  double b = 0.0, c = -radius * radius;
  for (int a = 0; a < dim; ++a) {
    const double d = origin[a] - center[a];
    b += dir[a] * d;
    c += d * d;
  }
  const double disc = b * b - c;
  if (disc <= 0.0) return false;
  const double sq = std::sqrt(disc);
  t0 = std::max(0.0, -b - sq);
  t1 = -b + sq;
  return t1 > t0;
}

// Cubic Lagrange interpolation on the (upsampled) periodic grid.
class CubicSampler {
 public:
  explicit CubicSampler(const ScalarField& f) : f_(&f) {
    const Grid& g = f.grid();
    for (int a = 0; a < g.dim(); ++a) {
      n_[a] = g.points(a);
      inv_h_[a] = 1.0 / g.spacing(a);
      lo_[a] = g.box().lower[a];
    }
  }

  double operator()(const std::array<double, 3>& x) const {
    const Grid& g = f_->grid();
    int base[3];
    double w[3][4];
    for (int a = 0; a < g.dim(); ++a) {
      const double s = (x[a] - lo_[a]) * inv_h_[a];
      const double fl = std::floor(s);
      const double u = s - fl;
      base[a] = static_cast<int>(fl);
      const double um1 = u + 1.0, up1 = u - 1.0, up2 = u - 2.0;
      w[a][0] = -u * up1 * up2 / 6.0;
      w[a][1] = um1 * up1 * up2 / 2.0;
      w[a][2] = -um1 * u * up2 / 2.0;
      w[a][3] = um1 * u * up1 / 6.0;
    }
    auto wrap = [](int i, int n) {
      i %= n;
      return i < 0 ? i + n : i;
    };
    double acc = 0.0;
    if (g.dim() == 2) {
      const int n1 = n_[1];
      for (int i = 0; i < 4; ++i) {
        const int i0 = wrap(base[0] - 1 + i, n_[0]);
        const double wi = w[0][i];
        const double* row = f_->raw().data() + static_cast<std::size_t>(i0) * n1;
        for (int j = 0; j < 4; ++j) {
          const int i1 = wrap(base[1] - 1 + j, n1);
          acc += wi * w[1][j] * row[i1];
        }
      }
    } else {
      for (int i = 0; i < 4; ++i) {
        const int i0 = wrap(base[0] - 1 + i, n_[0]);
        for (int j = 0; j < 4; ++j) {
          const int i1 = wrap(base[1] - 1 + j, n_[1]);
          const double wij = w[0][i] * w[1][j];
          const double* row =
              f_->raw().data() + (static_cast<std::size_t>(i0) * n_[1] + i1) * n_[2];
          for (int k = 0; k < 4; ++k) {
            const int i2 = wrap(base[2] - 1 + k, n_[2]);
            acc += wij * w[2][k] * row[i2];
          }
        }
      }
    }
    return acc;
  }

 private:
  const ScalarField* f_;
  int n_[3] = {1, 1, 1};
  double inv_h_[3] = {1, 1, 1};
  double lo_[3] = {0, 0, 0};
};

// Composite 4-point Gauss-Legendre over [a,b] with panels of width <= hmax.
template <class F>
void composite_gl(const F& f, double a, double b, double hmax, int moments, double* out) {
  for (int k = 0; k < moments; ++k) out[k] = 0.0;
  if (!(b > a)) return;
  const int panels = std::max(1, static_cast<int>(std::ceil((b - a) / hmax)));
  const double w = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * w;
    for (int q = 0; q < 4; ++q) {
      const double s = mid + 0.5 * w * kGlNode[q];
      const double v = f(s) * 0.5 * w * kGlWeight[q];
      double sk = 1.0;
      for (int k = 0; k < moments; ++k) {
        out[k] += v * sk;
        sk *= s;
      }
    }
  }
}

struct StarWeight {
  std::array<double, 3> center{};
  double radius = 0.0;
  double inv_mass = 0.0;
  int dim = 2;

  double operator()(const std::array<double, 3>& x) const {
    double d2 = 0.0;
    for (int a = 0; a < dim; ++a) {
      const double d = x[a] - center[a];
      d2 += d * d;
    }
    return plateau_bump(std::sqrt(d2), radius) * inv_mass;
  }
};

}  // namespace

DivergenceSolution bogovskii_solve(const ScalarField& p, const StarDomain& domain,
                                   const BogovskiiParams& params, double residual_tol,
                                   double support_tol) {
  domain.validate();
  const Grid& g = p.grid();
  const int dim = g.dim();

  DivergenceSolution sol;
  sol.p = p;
  sol.domain = domain;
  sol.checks.name = "bogovskii";
  sol.phi = VectorField(g);

  const double p_scale = max_abs(p);
  if (p_scale == 0.0) {
    sol.checks.require("residual_linf", 0.0, residual_tol);
    sol.checks.require("support_excess", 0.0, support_tol);
    return sol;
  }
  if (std::abs(mean(p)) > 1e-8 * p_scale)
    throw std::runtime_error("bogovskii_solve: compatibility violated (nonzero mean)");

  // Source support ball centered at the domain center.
  const double src_radius =
      support_radius(p, domain.center, params.support_threshold) + 2.0 * g.max_spacing();
  if (src_radius >= domain.outer_radius)
    throw std::invalid_argument("bogovskii_solve: source not compactly inside Omega'");

  StarWeight weight;
  weight.center = domain.center;
  weight.radius = domain.ball_radius;
  weight.dim = dim;
  weight.inv_mass = 1.0 / plateau_bump_mass(domain.ball_radius, dim);

  const ScalarField fine = spectral_upsample(p, params.upsample);
  const CubicSampler sample(fine);

  const double hmax_p = params.panel_factor * g.max_spacing();
  const double hmax_w = std::max(domain.ball_radius / 12.0, 0.5 * hmax_p);

  const std::size_t npts = g.size();
  const double r_out2 = domain.outer_radius * domain.outer_radius;

  if (dim == 2) {
    const int ntheta = params.n_theta;
    const double dtheta = 2.0 * M_PI / ntheta;
    std::vector<double> cths(ntheta), sths(ntheta);
    for (int j = 0; j < ntheta; ++j) {
      cths[j] = std::cos((j + 0.5) * dtheta);
      sths[j] = std::sin((j + 0.5) * dtheta);
    }
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16)
#endif
    for (long long ii = 0; ii < static_cast<long long>(npts); ++ii) {
      const std::size_t i = static_cast<std::size_t>(ii);
      const auto x = g.point(i);
      double d2 = 0.0;
      for (int a = 0; a < 2; ++a) {
        const double d = x[a] - domain.center[a];
        d2 += d * d;
      }
      if (d2 >= r_out2) continue;  // supp B[p] stays in the star hull
      double acc0 = 0.0, acc1 = 0.0;
      for (int j = 0; j < ntheta; ++j) {
        const std::array<double, 3> dir{cths[j], sths[j], 0.0};
        double t0, t1;
        if (!ray_ball(x, dir, domain.center, domain.ball_radius, 2, t0, t1)) continue;
        const std::array<double, 3> neg{-dir[0], -dir[1], 0.0};
        double s0, s1;
        if (!ray_ball(x, neg, domain.center, src_radius, 2, s0, s1)) continue;
        double M[2];
        composite_gl(
            [&](double t) {
              return weight({x[0] + t * dir[0], x[1] + t * dir[1], 0.0});
            },
            t0, t1, hmax_w, 2, M);
        if (M[0] == 0.0 && M[1] == 0.0) continue;
        double P[2];
        composite_gl(
            [&](double s) {
              return sample({x[0] - s * dir[0], x[1] - s * dir[1], 0.0});
            },
            s0, s1, hmax_p, 2, P);
        const double radial = M[1] * P[0] + M[0] * P[1];
        acc0 += dir[0] * radial;
        acc1 += dir[1] * radial;
      }
      sol.phi.comp(0)[i] = acc0 * dtheta;
      sol.phi.comp(1)[i] = acc1 * dtheta;
    }
  } else {
    // 3D: product angular grid, Gauss-Legendre in cos(polar) x uniform azimuth.
    const int naz = params.n_theta, npol = params.n_polar;
    std::vector<double> mu(npol), wmu(npol);
    // Newton iteration for Legendre nodes.
    for (int k = 0; k < npol; ++k) {
      double z = std::cos(M_PI * (k + 0.75) / (npol + 0.5));
      for (int it = 0; it < 100; ++it) {
        double pm1 = 1.0, pk = z;
        for (int l = 2; l <= npol; ++l) {
          const double pl = ((2 * l - 1) * z * pk - (l - 1) * pm1) / l;
          pm1 = pk;
          pk = pl;
        }
        const double dp = npol * (z * pk - pm1) / (z * z - 1.0);
        const double dz = pk / dp;
        z -= dz;
        if (std::abs(dz) < 1e-15) break;
      }
      double pm1 = 1.0, pk = z;
      for (int l = 2; l <= npol; ++l) {
        const double pl = ((2 * l - 1) * z * pk - (l - 1) * pm1) / l;
        pm1 = pk;
        pk = pl;
      }
      const double dp = npol * (z * pk - pm1) / (z * z - 1.0);
      mu[k] = z;
      wmu[k] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
    const double daz = 2.0 * M_PI / naz;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8)
#endif
    for (long long ii = 0; ii < static_cast<long long>(npts); ++ii) {
      const std::size_t i = static_cast<std::size_t>(ii);
      const auto x = g.point(i);
      double d2 = 0.0;
      for (int a = 0; a < 3; ++a) {
        const double d = x[a] - domain.center[a];
        d2 += d * d;
      }
      if (d2 >= r_out2) continue;
      double acc[3] = {0.0, 0.0, 0.0};
      for (int kp = 0; kp < npol; ++kp) {
        const double cpol = mu[kp];
        const double spol = std::sqrt(std::max(0.0, 1.0 - cpol * cpol));
        for (int ja = 0; ja < naz; ++ja) {
          const double phi_a = (ja + 0.5) * daz;
          const std::array<double, 3> dir{spol * std::cos(phi_a), spol * std::sin(phi_a), cpol};
          double t0, t1;
          if (!ray_ball(x, dir, domain.center, domain.ball_radius, 3, t0, t1)) continue;
          const std::array<double, 3> neg{-dir[0], -dir[1], -dir[2]};
          double s0, s1;
          if (!ray_ball(x, neg, domain.center, src_radius, 3, s0, s1)) continue;
          double M[3];
          composite_gl(
              [&](double t) {
                return weight({x[0] + t * dir[0], x[1] + t * dir[1], x[2] + t * dir[2]});
              },
              t0, t1, hmax_w, 3, M);
          if (M[0] == 0.0 && M[1] == 0.0 && M[2] == 0.0) continue;
          double P[3];
          composite_gl(
              [&](double s) {
                return sample({x[0] - s * dir[0], x[1] - s * dir[1], x[2] - s * dir[2]});
              },
              s0, s1, hmax_p, 3, P);
          const double radial = M[2] * P[0] + 2.0 * M[1] * P[1] + M[0] * P[2];
          const double w = wmu[kp] * daz * radial;
          for (int a = 0; a < 3; ++a) acc[a] += dir[a] * w;
        }
      }
      for (int a = 0; a < 3; ++a) sol.phi.comp(a)[i] = acc[a];
    }
  }

  ScalarField div = spectral_divergence(sol.phi);
  axpy(-1.0, p, div);
  sol.residual_linf = max_abs(div) / p_scale;
  sol.support_excess = support_excess(sol.phi, domain.outer());
  sol.checks.require("residual_linf", sol.residual_linf, residual_tol,
                     "max|div phi - p| / max|p|");
  sol.checks.require("support_excess", sol.support_excess, support_tol,
                     "sup|phi| outside Omega' / max|phi|");
  return sol;
}

AntisymmetricLift antisymmetric_lift(const ScalarField& p, const VectorField& phi,
                                     double input_tol, double spectral_tol, double grad_tol) {
  const Grid& g = p.grid();
  if (!g.same_as(phi.grid())) throw std::invalid_argument("antisymmetric_lift: grid mismatch");
  const int n = g.dim();
  const std::size_t npts = g.size();

  AntisymmetricLift lift;
  lift.checks.name = "antisymmetric_lift";
  lift.p_src = p;

  ScalarField p_eff = spectral_divergence(phi);
  const double p_scale = max_abs(p);
  if (p_scale > 0.0) {
    ScalarField diff = p_eff;
    axpy(-1.0, p, diff);
    if (max_abs(diff) > input_tol * p_scale)
      throw std::invalid_argument("antisymmetric_lift: phi/p mismatch (divergence residual)");
  }

  lift.A = MatrixField(g);
  const double factor = static_cast<double>(n) / (1.0 - n);
  for (int i = 0; i < n; ++i) {
    std::array<int, 3> ord{};
    ord[i] = 1;
    for (int j = 0; j < n; ++j) {
      ScalarField comp(g);
      std::copy(phi.comp(j), phi.comp(j) + npts, comp.raw().begin());
      ScalarField d = spectral_derivative(comp, ord);
      double* dst = lift.A.entry(i, j);
      for (std::size_t k = 0; k < npts; ++k)
        dst[k] = factor * (d[k] - (i == j ? p_eff[k] / n : 0.0));
    }
  }

  lift.U2 = SymTensorField(g, /*traceless=*/true);
  lift.V = MatrixField(g);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double* aij = lift.A.entry(i, j);
      const double* aji = lift.A.entry(j, i);
      double* vij = lift.V.entry(i, j);
      for (std::size_t k = 0; k < npts; ++k) vij[k] = 0.5 * (aij[k] - aji[k]);
      if (j >= i) {
        double* uij = lift.U2.entry(i, j);
        for (std::size_t k = 0; k < npts; ++k) uij[k] = 0.5 * (aij[k] + aji[k]);
      }
    }
  }
  lift.m_slope = spectral_divergence(lift.V);

  // tr A vanishes identically (A is built from div phi, not p).
  const double a_scale = std::max(max_abs(lift.A), 1e-300);
  double tr_max = 0.0;
  for (std::size_t k = 0; k < npts; ++k) {
    double tr = 0.0;
    for (int i = 0; i < n; ++i) tr += lift.A.entry(i, i)[k];
    tr_max = std::max(tr_max, std::abs(tr));
  }
  lift.tr_A_rel = tr_max / a_scale;

  ScalarField div_m = spectral_divergence(lift.m_slope);
  lift.div_m_rel = max_abs(div_m) / std::max(max_abs(lift.m_slope), 1e-300);

  VectorField div_A = spectral_divergence(lift.A);
  VectorField grad_p = spectral_gradient(p);
  const double gp_scale = std::max(max_abs(grad_p), 1e-300);
  axpy(1.0, grad_p, div_A);
  lift.div_A_grad_rel = max_abs(div_A) / gp_scale;

  lift.checks.require("tr_A_rel", lift.tr_A_rel, 1e-10, "pointwise trace of A");
  lift.checks.require("div_m_slope_rel", lift.div_m_rel, spectral_tol, "div div of skew field");
  lift.checks.require("div_A_plus_grad_p_rel", lift.div_A_grad_rel, grad_tol,
                      "quadrature-limited");
  return lift;
}

ObstructionReport obstruction_witness(const ScalarField& p, int band,
                                      double cutoff_radius_frac) {
  const Grid& g = p.grid();
  if (g.dim() != 2) throw std::invalid_argument("obstruction_witness: 2D only");
  ObstructionReport rep;
  const double p_scale = max_abs(p);
  rep.mean_rel = p_scale > 0.0 ? std::abs(mean(p)) / p_scale : 0.0;
  if (rep.mean_rel <= 1e-8) {
    rep.obstruction = false;
    return rep;
  }
  rep.obstruction = true;

  const std::size_t npts = g.size();
  // Cutoff fixed in physical units so candidates are compactly supported.
  double rcut = cutoff_radius_frac * 0.5 *
                std::min(g.box().length(0), g.box().length(1));
  ScalarField cutoff(g);
  for (std::size_t i = 0; i < npts; ++i) {
    const auto x = g.point(i);
    cutoff[i] = plateau_bump(std::hypot(x[0], x[1]), rcut);
  }

  // Real trig basis (integer box frequencies up to `band`) times the cutoff.
  struct Mode {
    int k0, k1;
    bool sine;
  };
  std::vector<Mode> modes;
  for (int k0 = -band; k0 <= band; ++k0) {
    for (int k1 = -band; k1 <= band; ++k1) {
      if (k0 < 0 || (k0 == 0 && k1 < 0)) continue;
      modes.push_back({k0, k1, false});
      if (k0 != 0 || k1 != 0) modes.push_back({k0, k1, true});
    }
  }
  const int per_comp = static_cast<int>(modes.size());
  const int dofs = 2 * per_comp;
  rep.basis_size = dofs;

  // Columns of the residual operator: U1-basis -> (d1 b, -d2 b);
  // U2-basis -> (d2 b, d1 b). RHS = (d1 p, d2 p).
  std::vector<std::vector<double>> cols(dofs);
  VectorField grad_p = spectral_gradient(p);
  std::vector<double> rhs(2 * npts);
  std::copy(grad_p.comp(0), grad_p.comp(0) + npts, rhs.begin());
  std::copy(grad_p.comp(1), grad_p.comp(1) + npts, rhs.begin() + npts);

  const double w0 = 2.0 * M_PI / g.box().length(0);
  const double w1 = 2.0 * M_PI / g.box().length(1);
  for (int comp = 0; comp < 2; ++comp) {
    for (int mi = 0; mi < per_comp; ++mi) {
      ScalarField b(g);
      for (std::size_t i = 0; i < npts; ++i) {
        const auto x = g.point(i);
        const double phase = modes[mi].k0 * w0 * x[0] + modes[mi].k1 * w1 * x[1];
        b[i] = cutoff[i] * (modes[mi].sine ? std::sin(phase) : std::cos(phase));
      }
      ScalarField d0 = spectral_derivative(b, {1, 0, 0});
      ScalarField d1 = spectral_derivative(b, {0, 1, 0});
      std::vector<double>& col = cols[comp * per_comp + mi];
      col.resize(2 * npts);
      if (comp == 0) {
        std::copy(d0.raw().begin(), d0.raw().end(), col.begin());
        for (std::size_t i = 0; i < npts; ++i) col[npts + i] = -d1[i];
      } else {
        std::copy(d1.raw().begin(), d1.raw().end(), col.begin());
        std::copy(d0.raw().begin(), d0.raw().end(), col.begin() + npts);
      }
    }
  }

  // Normal equations with a tiny ridge; Cholesky solve.
  std::vector<double> G(static_cast<std::size_t>(dofs) * dofs, 0.0);
  std::vector<double> gvec(dofs, 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 4)
#endif
  for (int a = 0; a < dofs; ++a) {
    for (int b = a; b < dofs; ++b) {
      double s = 0.0;
      const double* ca = cols[a].data();
      const double* cb = cols[b].data();
      for (std::size_t i = 0; i < 2 * npts; ++i) s += ca[i] * cb[i];
      G[a * dofs + b] = s;
      G[b * dofs + a] = s;
    }
    double s = 0.0;
    for (std::size_t i = 0; i < 2 * npts; ++i) s += cols[a][i] * rhs[i];
    gvec[a] = s;
  }
  double ridge = 0.0;
  for (int a = 0; a < dofs; ++a) ridge = std::max(ridge, G[a * dofs + a]);
  ridge *= 1e-12;
  for (int a = 0; a < dofs; ++a) G[a * dofs + a] += ridge;

  std::vector<double> L(G);
  for (int i = 0; i < dofs; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = L[i * dofs + j];
      for (int k = 0; k < j; ++k) s -= L[i * dofs + k] * L[j * dofs + k];
      if (i == j)
        L[i * dofs + i] = std::sqrt(std::max(s, 1e-300));
      else
        L[i * dofs + j] = s / L[j * dofs + j];
    }
  }
  std::vector<double> y(dofs), c(dofs);
  for (int i = 0; i < dofs; ++i) {
    double s = gvec[i];
    for (int k = 0; k < i; ++k) s -= L[i * dofs + k] * y[k];
    y[i] = s / L[i * dofs + i];
  }
  for (int i = dofs - 1; i >= 0; --i) {
    double s = y[i];
    for (int k = i + 1; k < dofs; ++k) s -= L[k * dofs + i] * c[k];
    c[i] = s / L[i * dofs + i];
  }

  double res2 = 0.0, rhs2 = 0.0;
  for (std::size_t i = 0; i < 2 * npts; ++i) {
    double r = rhs[i];
    for (int a = 0; a < dofs; ++a) r -= c[a] * cols[a][i];
    res2 += r * r;
    rhs2 += rhs[i] * rhs[i];
  }
  const double cellvol = g.cell_volume();
  rep.residual_abs = std::sqrt(res2 * cellvol);
  rep.residual_rel = std::sqrt(res2 / std::max(rhs2, 1e-300));
  return rep;
}

}  // namespace ewild
