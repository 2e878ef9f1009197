#pragma once

#include "ewild/field.hpp"
#include "ewild/report.hpp"

namespace ewild {

/// Star-shaped domain Omega' = ball(center, outer_radius), star-shaped with
/// respect to the concentric ball(center, ball_radius).
struct StarDomain {
  std::array<double, 3> center{};
  double ball_radius = 0.5;
  double outer_radius = 1.0;

  Ball outer() const { return Ball{center, outer_radius}; }
  Ball core() const { return Ball{center, ball_radius}; }
  void validate() const;
};

struct BogovskiiParams {
  int n_theta = 256;          // angular nodes (azimuth)
  int n_polar = 32;           // polar Gauss-Legendre nodes (3D only)
  double panel_factor = 1.5;  // radial panel width in units of grid spacing
  int upsample = 4;           // spectral upsampling factor for source interpolation
  double support_threshold = 1e-12;  // relative cutoff for the source support scan
};

struct DivergenceSolution {
  VectorField phi;  // sum_j d_j phi_j = p, supp phi in Omega'
  ScalarField p;
  StarDomain domain;
  double residual_linf = 0.0;   // max|div phi - p| / max|p| (spectral divergence)
  double support_excess = 0.0;  // of phi outside Omega'
  ReportSection checks;
};

/// Bogovskii operator on the star-shaped domain, evaluated by quadrature of
/// the target-centered polar form of the integral representation (the
/// integrand is smooth; the kernel singularity cancels against the polar
/// Jacobian). Requires supp p inside Omega' and zero mean (compatibility).
DivergenceSolution bogovskii_solve(const ScalarField& p, const StarDomain& domain,
                                   const BogovskiiParams& params = {},
                                   double residual_tol = 1e-3, double support_tol = 1e-8);

struct AntisymmetricLift {
  MatrixField A;       // n/(1-n) (d_i phi_j - (div phi / n) delta_ij)
  SymTensorField U2;   // symmetric traceless part
  MatrixField V;       // skew part
  VectorField m_slope; // div V, so m(t) = t * m_slope
  ScalarField p_src;
  double tr_A_rel = 0.0;      // max|tr A| / max|A|
  double div_m_rel = 0.0;     // max|div m_slope| / max|m_slope|
  double div_A_grad_rel = 0.0;  // max|div A + grad p_src| / max|grad p_src|
  ReportSection checks;
};

/// Lift of Prop-style structure: A is built from phi and its spectral
/// divergence (so tr A vanishes identically); div A = -grad(div phi) holds
/// spectrally and differs from -grad p by the divergence residual.
AntisymmetricLift antisymmetric_lift(const ScalarField& p, const VectorField& phi,
                                     double input_tol = 1e-2, double spectral_tol = 1e-8,
                                     double grad_tol = 1e-3);

struct ObstructionReport {
  bool obstruction = false;  // nonzero-mean input
  double mean_rel = 0.0;     // |mean p| / max|p|
  double residual_rel = 0.0; // best least-squares residual / ||grad p||_2
  double residual_abs = 0.0; // best least-squares residual (L2)
  int basis_size = 0;
};

/// Least-squares witness for the nonexistence of compactly supported
/// solutions of the 2D curl/divergence system when the mean of p is nonzero:
/// minimizes the residual over band-limited, compactly supported candidates
/// and reports the floor (report-only; 2D).
ObstructionReport obstruction_witness(const ScalarField& p, int band = 3,
                                      double cutoff_radius_frac = 0.8);

}  // namespace ewild
