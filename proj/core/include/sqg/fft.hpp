#pragma once

#include <vector>

#include "sqg/spectral_field.hpp"

namespace sqg {

// Physical samples on the n x n lattice x = (m1, m2) * dx, row-major like the
// spectral storage. Values are complex; real-valued fields carry ~1e-16 imag.
using PhysicalField = std::vector<cplx>;

// Synthesis: f(x_m) = sum_k c_k e^{i k.x_m} (unnormalised inverse DFT).
PhysicalField to_physical(const SpectralField& f);

// Analysis: c_k = (1/n^2) sum_m f(x_m) e^{-i k.x_m}.
SpectralField to_spectral(const PhysicalField& phys, const Grid& g);

double max_abs(const PhysicalField& p);
double max_abs_real(const PhysicalField& p);

}  // namespace sqg
