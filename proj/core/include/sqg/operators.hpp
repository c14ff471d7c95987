#pragma once

#include "sqg/fft.hpp"
#include "sqg/spectral_field.hpp"

namespace sqg {

// (-Delta)^a with Fourier symbol |k|^{2a}; sign=-1 gives the inverse symbol
// |k|^{-2a}, which requires a zero-mean field (the k=0 mode has no inverse).
SpectralField fractional_laplacian(const SpectralField& f, double a, int sign = +1);

// u = grad^perp (-Delta)^{exponent} theta. The default exponent -1/2 yields
// u_hat(k) = (i k2, -i k1) |k|^{-1} theta_hat(k): a unit-modulus multiplier,
// so every L2-based norm of u equals that of theta. Requires zero mean.
VectorField velocity_from_scalar(const SpectralField& theta, double exponent = -0.5);

// D^beta = (i k1)^{b1} (i k2)^{b2}.
SpectralField derivative(const SpectralField& f, int b1, int b2);

// Zero all modes outside the retained block |j| <= Grid::dealias_limit()
// per axis (2/3 rule).
SpectralField dealias(const SpectralField& f);
bool inside_dealias_block(const Grid& g, int j1, int j2);

// Pointwise product computed on the physical grid, conjugate-symmetrized and
// dealiased. For inputs supported in the retained block the result equals the
// exact truncated convolution (aliased images fall outside the block).
SpectralField pointwise_product(const SpectralField& f, const SpectralField& g);

// Untruncated product; exact when both inputs are band-limited to
// |j|_inf <= n/4 - 1 (the convolution then fits the representable range).
SpectralField pointwise_product_full(const SpectralField& f, const SpectralField& g);

// dealias(u . grad f), the advection product every transport term reduces to.
// One forward transform; gradients and velocity components synthesized once.
SpectralField advect(const VectorField& u, const SpectralField& f);

}  // namespace sqg
