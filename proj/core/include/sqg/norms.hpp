#pragma once

#include "sqg/spectral_field.hpp"

namespace sqg {

enum class Lp { two, inf };

// L2 over the box (Parseval route) or L-infinity (max over the physical
// sampling grid; a documented lower bound of the true sup).
double lebesgue_norm(const SpectralField& f, Lp p);

// L-infinity evaluated on a `factor`-times-finer grid via zero padding.
double linf_upsampled(const SpectralField& f, int factor);

// Exact multi-index weight w_m(k) = sum_{|beta| <= m} k1^{2 b1} k2^{2 b2}.
double sobolev_weight(int m, double k1, double k2);

// H^m with optional extra Lambda^{alpha_shift} factor:
//   ( box_area * sum_k w_m(k) |k|^{2 alpha_shift} |c_k|^2 )^{1/2}.
double sobolev_norm(const SpectralField& f, int m, double alpha_shift = 0.0);

// box_area * sum_k w(k) Re(a_k conj(b_k)) for weights supplied per mode;
// used by the energy ledger. A weight callback keeps loop order fixed.
double weighted_inner(const SpectralField& a, const SpectralField& b,
                      double (*weight)(double k1, double k2));

// Euclidean sup of a two-component field on the sampling grid.
double linf_vector(const VectorField& u);

}  // namespace sqg
