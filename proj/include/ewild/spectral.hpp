#pragma once

#include <complex>
#include <vector>

#include "ewild/field.hpp"

namespace ewild {

/// Full complex spectrum of a real field, same layout as the grid
/// (row-major, FFT bin ordering per axis).
struct Spectrum {
  Grid grid;
  std::vector<std::complex<double>> c;
};

Spectrum forward(const ScalarField& f);
ScalarField inverse_real(const Spectrum& s);

/// Exact derivative of the trigonometric interpolant, per-axis orders.
/// The Nyquist mode is zeroed on axes with odd derivative order.
ScalarField spectral_derivative(const ScalarField& f, const std::array<int, 3>& orders);

VectorField spectral_gradient(const ScalarField& f);
ScalarField spectral_divergence(const VectorField& v);
VectorField spectral_divergence(const SymTensorField& t);
VectorField spectral_divergence(const MatrixField& m);  // row-wise
SymTensorField spectral_hessian(const ScalarField& f);
ScalarField spectral_laplacian(const ScalarField& f);

/// Solves lap(u) = f on the torus with zero-mean u; requires mean(f) ~ 0
/// (the k=0 mode is dropped).
ScalarField inverse_laplacian_zero_mean(const ScalarField& f);

/// Exact convolution of trigonometric interpolants, normalized so that a
/// unit-mass kernel preserves the mean of f. Sets *wrapped if the combined
/// supports exceed the box (periodic wrap-around).
ScalarField convolve(const ScalarField& f, const ScalarField& kernel, bool* wrapped = nullptr);

/// Zero-pad the spectrum to `factor` times the resolution per axis
/// (exact spectral upsampling of the trigonometric interpolant).
ScalarField spectral_upsample(const ScalarField& f, int factor);

}  // namespace ewild
