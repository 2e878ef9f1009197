#pragma once

#include "ewild/field.hpp"

namespace ewild {

/// C^inf step: 1 for s <= 0, 0 for s >= 1, strictly decreasing between,
/// flat to all orders at both ends (exp(-1/s) partition of unity).
double smooth_step_down(double s);

/// Radial C^inf profile: 1 on [0, r/2], smooth_step_down on (r/2, r), 0 beyond.
double plateau_bump(double dist, double r);

/// Polynomial bump (1 - s^2)^k on |s| < 1, zero outside; C^{k-1} with
/// algebraically decaying spectrum (used where evaluation speed matters).
double poly_bump(double s, int k);

/// Mollifier omega^eps: radial, constant on |x| <= eps/2, supported in
/// |x| < eps, nonnegative, discrete integral exactly 1 (so the transform
/// value at frequency 0 equals 1). Centered at the origin with minimum-image
/// distances. Rejects eps <= 2 * max spacing (kernel under-resolved).
ScalarField mollifier(double eps, const Grid& grid);

/// Continuum mass of plateau_bump(|x|, r) in dim d (adaptive radial quadrature).
double plateau_bump_mass(double r, int dim);

}  // namespace ewild
