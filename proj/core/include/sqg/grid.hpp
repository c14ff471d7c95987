#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>

namespace sqg {

// Square periodic box [0, box_len)^2 sampled on an n x n lattice.
// Wavenumbers per axis are dk * j with dk = 2*pi/box_len and signed index
// j in [-n/2, n/2 - 1]; storage index i maps to j = i for i < n/2, i - n else.
struct Grid {
  int n = 0;
  double box_len = 0.0;

  Grid() = default;
  Grid(int n_, double box_len_) : n(n_), box_len(box_len_) {
    if (n < 8 || n % 2 != 0)
      throw std::invalid_argument("grid.n must be even and >= 8");
    if (!(box_len > 0.0) || !std::isfinite(box_len))
      throw std::invalid_argument("grid.box_len must be positive and finite");
  }

  double dk() const { return 2.0 * std::numbers::pi / box_len; }
  double dx() const { return box_len / n; }
  double area() const { return box_len * box_len; }
  std::size_t size() const { return static_cast<std::size_t>(n) * n; }

  int signed_index(int i) const { return i < n / 2 ? i : i - n; }
  int storage_index(int j) const { return j >= 0 ? j : j + n; }
  double wavenumber(int i) const { return dk() * signed_index(i); }

  // 2/3-rule retained block: |j| <= limit per axis with 3*limit < n strictly,
  // so aliased images of products of retained modes can never wrap back into
  // the block (when 3 | n, images of the corner modes would land exactly on
  // the opposite block edge).
  int dealias_limit() const { return (n - 1) / 3; }

  bool operator==(const Grid& o) const { return n == o.n && box_len == o.box_len; }
  bool operator!=(const Grid& o) const { return !(*this == o); }

  static constexpr double annulus_inner = 4.0 / 3.0;
  static constexpr double annulus_outer = 3.0 / 2.0;

  // Sufficient condition for the annulus 4/3 <= |k| <= 3/2 to contain lattice
  // points: dk <= 1/12 (the diagonal direction then cannot skip it).
  bool annulus_resolvable() const { return dk() <= 1.0 / 12.0 + 1e-15; }

  // Strict strip resolvability dk <= delta/6: off-diagonal lattice points fall
  // inside |k1 - k2| <= delta/3. Required on the data-verification path.
  bool strip_resolvable(double delta) const { return dk() <= delta / 6.0 + 1e-15; }
};

}  // namespace sqg
