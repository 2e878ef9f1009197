#include "ewild/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace ewild {

double lambda_max_sym(int n, const double* s) {
  if (n == 2) {
    const double a = s[0], b = s[1], c = s[2];
    const double tr2 = 0.5 * (a + c);
    return tr2 + std::sqrt(0.25 * (a - c) * (a - c) + b * b);
  }
  // 3x3 trigonometric closed form.
  const double a11 = s[0], a12 = s[1], a13 = s[2], a22 = s[3], a23 = s[4], a33 = s[5];
  const double p1 = a12 * a12 + a13 * a13 + a23 * a23;
  if (p1 == 0.0) return std::max(a11, std::max(a22, a33));
  const double q = (a11 + a22 + a33) / 3.0;
  const double b11 = a11 - q, b22 = a22 - q, b33 = a33 - q;
  const double p2 = b11 * b11 + b22 * b22 + b33 * b33 + 2.0 * p1;
  const double p = std::sqrt(p2 / 6.0);
  double r = (b11 * b22 * b33 + 2.0 * a12 * a13 * a23 - b11 * a23 * a23 - b22 * a13 * a13 -
              b33 * a12 * a12) /
             (2.0 * p * p * p);
  r = std::clamp(r, -1.0, 1.0);
  const double phi = std::acos(r) / 3.0;
  return q + 2.0 * p * std::cos(phi);
}

double opnorm_sym(int n, const double* s) {
  double neg[6];
  const int nc = sym_components(n);
  for (int i = 0; i < nc; ++i) neg[i] = -s[i];
  return std::max(lambda_max_sym(n, s), lambda_max_sym(n, neg));
}

double e_value_packed(int n, double rho, const double* m, const double* U) {
  if (!(rho > 0.0)) throw std::domain_error("e_value: rho must be positive");
  double s[6];
  const double inv_rho = 1.0 / rho;
  if (n == 2) {
    s[0] = m[0] * m[0] * inv_rho - U[0];
    s[1] = m[0] * m[1] * inv_rho - U[1];
    s[2] = m[1] * m[1] * inv_rho - U[2];
  } else {
    s[0] = m[0] * m[0] * inv_rho - U[0];
    s[1] = m[0] * m[1] * inv_rho - U[1];
    s[2] = m[0] * m[2] * inv_rho - U[2];
    s[3] = m[1] * m[1] * inv_rho - U[3];
    s[4] = m[1] * m[2] * inv_rho - U[4];
    s[5] = m[2] * m[2] * inv_rho - U[5];
  }
  return lambda_max_sym(n, s);
}

double e_value(double rho, const State& s) {
  return e_value_packed(s.n, rho, s.m.data(), s.U.data());
}

HullMargin hull_margin(const State& s, const HullParams& hp, const PressureLaw& law) {
  if (!(hp.rho > 0.0) || !(hp.chi > 0.0))
    throw std::domain_error("hull_margin: rho and chi must be positive");
  HullMargin out;
  out.margin = hp.chi / s.n - e_value(hp.rho, s);
  out.q_defect = s.q - (law.value(hp.rho) + hp.chi / s.n);
  return out;
}

bool in_K(const State& s, const HullParams& hp, const PressureLaw& law, double tol) {
  const HullMargin hm = hull_margin(s, hp, law);
  const double q_scale = std::abs(law.value(hp.rho)) + hp.chi / s.n;
  if (hm.margin < -tol * hp.chi / s.n) return false;
  if (std::abs(hm.q_defect) > tol * q_scale) return false;
  double m2 = 0.0;
  for (int i = 0; i < s.n; ++i) m2 += s.m[i] * s.m[i];
  if (std::abs(m2 - hp.rho * hp.chi) > tol * hp.rho * hp.chi) return false;
  // On K the matrix is pinned to the equality case (Lemma-level fact).
  double err = 0.0;
  for (int i = 0; i < s.n; ++i) {
    for (int j = i; j < s.n; ++j) {
      const double eq = s.m[i] * s.m[j] / hp.rho - (i == j ? m2 / (s.n * hp.rho) : 0.0);
      err = std::max(err, std::abs(s.u(i, j) - eq));
    }
  }
  if (err > 10.0 * s.n * tol * hp.chi + 1e-14)
    throw std::logic_error("in_K: state on K without equality-case matrix");
  return true;
}

namespace {

// det [[A, b],[b^T, 0]] = -b^T adj(A) b for symmetric A (n x n, n = 2 or 3).
double bordered_det(int n, const double* A, const double* b) {
  if (n == 2) {
    const double adj00 = A[2], adj01 = -A[1], adj11 = A[0];
    return -(b[0] * (adj00 * b[0] + adj01 * b[1]) + b[1] * (adj01 * b[0] + adj11 * b[1]));
  }
  const double a11 = A[0], a12 = A[1], a13 = A[2], a22 = A[3], a23 = A[4], a33 = A[5];
  const double c11 = a22 * a33 - a23 * a23;
  const double c12 = -(a12 * a33 - a13 * a23);
  const double c13 = a12 * a23 - a13 * a22;
  const double c22 = a11 * a33 - a13 * a13;
  const double c23 = -(a11 * a23 - a12 * a13);
  const double c33 = a11 * a22 - a12 * a12;
  const double v0 = c11 * b[0] + c12 * b[1] + c13 * b[2];
  const double v1 = c12 * b[0] + c22 * b[1] + c23 * b[2];
  const double v2 = c13 * b[0] + c23 * b[1] + c33 * b[2];
  return -(b[0] * v0 + b[1] * v1 + b[2] * v2);
}

void assemble_M(const State& s, double* M /* (n+1)^2 row-major */) {
  const int n = s.n, d = n + 1;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) M[i * d + j] = s.u(i, j) + (i == j ? s.q : 0.0);
    M[i * d + n] = s.m[i];
    M[n * d + i] = s.m[i];
  }
  M[n * d + n] = 0.0;
}

double max_abs_M(const State& s) {
  double m = 0.0;
  for (int i = 0; i < s.n; ++i) m = std::max(m, std::abs(s.m[i]));
  for (int i = 0; i < sym_components(s.n); ++i) m = std::max(m, std::abs(s.U[i]));
  for (int i = 0; i < s.n; ++i) m = std::max(m, std::abs(s.u(i, i) + s.q));
  return m;
}

}  // namespace

double wave_cone_residual(const State& s) {
  double A[6];
  for (int i = 0; i < s.n; ++i)
    for (int j = i; j < s.n; ++j) A[sym_index(s.n, i, j)] = s.u(i, j) + (i == j ? s.q : 0.0);
  return bordered_det(s.n, A, s.m.data());
}

double wave_cone_scale(const State& s) {
  const double m = max_abs_M(s);
  double p = 1.0;
  for (int i = 0; i < s.n + 1; ++i) p *= m;
  return p;
}

std::array<double, 4> wave_cone_kernel(const State& s, double* conditioning) {
  const int d = s.n + 1;
  double M[16];
  assemble_M(s, M);
  double R[16];
  std::copy(M, M + d * d, R);

  // Gaussian elimination with partial pivoting; null direction from the
  // weakest pivot column.
  std::array<int, 4> col_of_pivot{-1, -1, -1, -1};
  std::array<bool, 4> col_used{};
  int row = 0;
  for (int col = 0; col < d && row < d; ++col) {
    int piv = -1;
    double best = 0.0;
    for (int r = row; r < d; ++r) {
      if (std::abs(R[r * d + col]) > best) {
        best = std::abs(R[r * d + col]);
        piv = r;
      }
    }
    const double scale = max_abs_M(s) + 1e-300;
    if (piv < 0 || best <= 1e-12 * scale) continue;  // free column
    if (piv != row)
      for (int c = 0; c < d; ++c) std::swap(R[piv * d + c], R[row * d + c]);
    for (int r = row + 1; r < d; ++r) {
      const double f = R[r * d + col] / R[row * d + col];
      for (int c = col; c < d; ++c) R[r * d + c] -= f * R[row * d + c];
    }
    col_of_pivot[row] = col;
    col_used[col] = true;
    ++row;
  }
  std::array<double, 4> xi{};
  int free_col = -1;
  for (int c = d - 1; c >= 0; --c)
    if (!col_used[c]) {
      free_col = c;
      break;
    }
  if (free_col < 0) free_col = d - 1;  // numerically full rank; best effort
  xi[free_col] = 1.0;
  for (int r = row - 1; r >= 0; --r) {
    const int pc = col_of_pivot[r];
    if (pc < 0) continue;
    double s2 = 0.0;
    for (int c = pc + 1; c < d; ++c) s2 += R[r * d + c] * xi[c];
    xi[pc] = -s2 / R[r * d + pc];
  }
  double norm = 0.0;
  for (int i = 0; i < d; ++i) norm += xi[i] * xi[i];
  norm = std::sqrt(norm);
  for (int i = 0; i < d; ++i) xi[i] /= norm;
  if (conditioning) {
    double worst = 0.0;
    for (int r = 0; r < d; ++r) {
      double v = 0.0;
      for (int c = 0; c < d; ++c) v += M[r * d + c] * xi[c];
      worst = std::max(worst, std::abs(v));
    }
    *conditioning = worst / (max_abs_M(s) + 1e-300);
  }
  return xi;
}

State flux_from_state(double rho, const std::array<double, 3>& m, int n,
                      const PressureLaw& law) {
  if (!(rho > 0.0)) throw std::domain_error("flux_from_state: rho must be positive");
  State s;
  s.n = n;
  s.m = m;
  double m2 = 0.0;
  for (int i = 0; i < n; ++i) m2 += m[i] * m[i];
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      s.u(i, j) = m[i] * m[j] / rho - (i == j ? m2 / (n * rho) : 0.0);
  s.q = law.value(rho) + m2 / (n * rho);
  return s;
}

double plane_wave_check(const State& s, const std::array<double, 4>& xi,
                        const std::function<double(double)>& profile, const Grid& spatial,
                        int nt, double T, double kernel_tol) {
  const int n = s.n, d = n + 1;
  double M[16];
  assemble_M(s, M);
  double xinorm = 0.0, worst = 0.0;
  for (int i = 0; i < d; ++i) xinorm += xi[i] * xi[i];
  xinorm = std::sqrt(xinorm);
  for (int r = 0; r < d; ++r) {
    double v = 0.0;
    for (int c = 0; c < d; ++c) v += M[r * d + c] * xi[c];
    worst = std::max(worst, std::abs(v));
  }
  const double m_scale = max_abs_M(s);
  if (m_scale > 0.0 && worst > kernel_tol * m_scale * xinorm)
    throw std::invalid_argument("plane_wave_check: xi not in the kernel of M");

  // Fixed family of compactly supported space-time bumps, (1-s^2)^k profiles.
  constexpr int kPow = 10;
  struct Test {
    std::array<double, 3> center;
    double width;       // spatial half-width as fraction of the box
    double tc, tw;      // time center/half-width as fraction of T
  };
  const std::array<Test, 3> tests = {Test{{0.0, 0.0, 0.0}, 0.42, 0.5, 0.45},
                                     Test{{0.15, -0.1, 0.08}, 0.3, 0.4, 0.3},
                                     Test{{-0.2, 0.12, -0.1}, 0.34, 0.62, 0.33}};

  const double dt = T / (nt - 1);
  const double cellvol = spatial.cell_volume();
  double state_scale = m_scale;
  for (int i = 0; i < n; ++i) state_scale = std::max(state_scale, std::abs(s.m[i]));
  state_scale = std::max(state_scale, std::abs(s.q));
  if (state_scale == 0.0) return 0.0;

  double residual = 0.0;
  for (const Test& test : tests) {
    // Residuals of the n momentum rows and the divergence row, plus the
    // normalizing L1 mass of the test derivatives.
    std::array<double, 4> R{};
    double denom = 0.0;
    for (int it = 0; it < nt; ++it) {
      const double t = it * dt;
      const double st = (t / T - test.tc) / test.tw;
      if (std::abs(st) >= 1.0) continue;
      const double bt = poly_bump(st, kPow);
      const double dbt = -2.0 * kPow * st * poly_bump(st, kPow - 1) / (test.tw * T);
      for (std::size_t ix = 0; ix < spatial.size(); ++ix) {
        const auto x = spatial.point(ix);
        double bx = 1.0;
        std::array<double, 3> dbx{};
        bool inside = true;
        std::array<double, 3> sxv{};
        for (int a = 0; a < n; ++a) {
          const double half = 0.5 * spatial.box().length(a);
          const double mid = 0.5 * (spatial.box().lower[a] + spatial.box().upper[a]);
          const double sx = (x[a] - mid - test.center[a] * half) / (test.width * 2.0 * half);
          sxv[a] = sx;
          if (std::abs(sx) >= 1.0) {
            inside = false;
            break;
          }
          bx *= poly_bump(sx, kPow);
        }
        if (!inside) continue;
        for (int a = 0; a < n; ++a) {
          double prod = 1.0;
          for (int b = 0; b < n; ++b) {
            if (b == a) continue;
            prod *= poly_bump(sxv[b], kPow);
          }
          const double half = 0.5 * spatial.box().length(a);
          dbx[a] = -2.0 * kPow * sxv[a] * poly_bump(sxv[a], kPow - 1) /
                   (test.width * 2.0 * half) * prod;
        }
        double phase = t * xi[n];
        for (int a = 0; a < n; ++a) phase += x[a] * xi[a];
        const double h = profile(phase);
        const double w = cellvol * dt;  // interior bump: trapezoid = plain sum
        // divergence row: m . grad(psi)
        double div_acc = 0.0;
        for (int a = 0; a < n; ++a) div_acc += s.m[a] * h * dbx[a];
        R[n] += w * div_acc;
        // momentum rows: m_i dpsi/dt + U_ij dpsi/dx_j + q dpsi/dx_i
        for (int i = 0; i < n; ++i) {
          double acc = s.m[i] * h * dbt * bx;
          for (int j = 0; j < n; ++j) acc += s.u(i, j) * h * dbx[j];
          acc += s.q * h * dbx[i];
          R[i] += w * acc;
        }
        double dsum = std::abs(dbt * bx);
        for (int a = 0; a < n; ++a) dsum += std::abs(dbx[a]);
        denom += w * dsum;
      }
    }
    for (int i = 0; i <= n; ++i)
      residual = std::max(residual, std::abs(R[i]) / (state_scale * denom));
  }
  return residual;
}

WaveDirection direction_from_angles(double alpha_plus, double alpha_minus, double rho,
                                    double chi, const PressureLaw& law) {
  if (!(rho > 0.0) || !(chi > 0.0))
    throw std::domain_error("direction_from_angles: rho and chi must be positive");
  const double R = std::sqrt(rho * chi);
  WaveDirection wd;
  auto make_state = [&](double alpha) {
    std::array<double, 3> m{R * std::cos(alpha), R * std::sin(alpha), 0.0};
    return flux_from_state(rho, m, 2, law);
  };
  wd.z_plus = make_state(alpha_plus);
  wd.z_minus = make_state(alpha_minus);
  wd.z_bar.n = 2;
  for (int i = 0; i < 2; ++i) wd.z_bar.m[i] = 0.5 * (wd.z_plus.m[i] - wd.z_minus.m[i]);
  for (int c = 0; c < 3; ++c) wd.z_bar.U[c] = 0.5 * (wd.z_plus.U[c] - wd.z_minus.U[c]);
  wd.z_bar.q = 0.0;

  const double mb0 = wd.z_bar.m[0], mb1 = wd.z_bar.m[1];
  const double mnorm = std::hypot(mb0, mb1);
  if (mnorm < 1e-12 * R) throw std::domain_error("direction_from_angles: degenerate pair");
  // xi_x = perp(m_bar)/|m_bar|; U_bar xi_x is parallel to m_bar, so xi_t
  // follows from U_bar xi_x = -xi_t m_bar.
  const double px = -mb1 / mnorm, py = mb0 / mnorm;
  const double ux = wd.z_bar.u(0, 0) * px + wd.z_bar.u(0, 1) * py;
  const double uy = wd.z_bar.u(0, 1) * px + wd.z_bar.u(1, 1) * py;
  const double xit = -(ux * mb0 + uy * mb1) / (mnorm * mnorm);
  wd.xi = {px, py, xit, 0.0};
  const double scale = wave_cone_scale(wd.z_bar);
  wd.cone_residual = scale > 0.0 ? std::abs(wave_cone_residual(wd.z_bar)) / scale : 0.0;
  return wd;
}

WaveDirection sample_direction(std::mt19937_64& rng, double rho, double chi,
                               const PressureLaw& law) {
  std::uniform_real_distribution<double> uni(0.0, 2.0 * M_PI);
  for (int attempt = 0; attempt < 64; ++attempt) {
    const double ap = uni(rng), am = uni(rng);
    const double gap = std::abs(std::remainder(ap - am, 2.0 * M_PI));
    if (gap < 0.15) continue;  // nearly equal momenta: vanishing direction
    return direction_from_angles(ap, am, rho, chi, law);
  }
  throw std::runtime_error("sample_direction: no admissible pair drawn");
}

}  // namespace ewild
