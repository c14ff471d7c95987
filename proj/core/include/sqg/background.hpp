#pragma once

#include <vector>

#include "sqg/recipe.hpp"

namespace sqg {

// Theta(t) = exp(-mu (-Delta)^alpha t) Theta0, mode-wise exact. Throws on
// negative t; support never grows.
SpectralField background_at(const SpectralField& theta0, double mu, double alpha,
                            double t);

// Precomputed sparse view of the decaying background: mode list with per-mode
// decay rates and velocity multipliers, so repeated time evaluations cost
// O(support) instead of O(n^2).
class Background {
 public:
  Background(const SpectralField& theta0, double mu, double alpha,
             double velocity_exponent = -0.5);
  Background(const DataRecipe& recipe, const Grid& grid);

  const Grid& grid() const { return grid_; }
  bool empty() const { return modes_.empty(); }
  std::size_t support_size() const { return modes_.size(); }
  double mu() const { return mu_; }
  double alpha() const { return alpha_; }
  double velocity_exponent() const { return velocity_exponent_; }

  SpectralField theta_at(double t) const;
  VectorField velocity_at(double t) const;
  // Accumulate Theta(t) (resp. U(t)) into an existing field.
  void add_theta(double t, SpectralField& acc) const;
  void add_velocity(double t, VectorField& acc) const;

  // -(U . grad Theta)(t), dealiased; identically zero when all support
  // wavevectors are parallel.
  SpectralField forcing_at(double t) const;

  double linf_theta(double t) const;
  double linf_velocity(double t) const;  // sup_x |U(x,t)|, Euclidean magnitude

  struct Mode {
    int j1, j2;
    cplx c0;       // coefficient at t = 0
    double rate;   // mu |k|^{2 alpha}
    double vm1, vm2;  // velocity multiplier: u_hat = (i vm1, i vm2) theta_hat
  };
  const std::vector<Mode>& modes() const { return modes_; }
  double slowest_rate() const;

 private:
  void collect(const SpectralField& theta0);

  Grid grid_;
  double mu_, alpha_, velocity_exponent_;
  std::vector<Mode> modes_;
};

// Convenience: -(U . grad Theta)(t) for the recipe's family on the grid.
SpectralField forcing_at(const DataRecipe& recipe, const Grid& grid, double t);

}  // namespace sqg
