#include "sqg/background.hpp"

#include <cmath>
#include <stdexcept>

#include "sqg/norms.hpp"
#include "sqg/operators.hpp"

namespace sqg {

SpectralField background_at(const SpectralField& theta0, double mu, double alpha,
                            double t) {
  if (t < 0.0) throw std::invalid_argument("background_at: t must be >= 0");
  const Grid& g = theta0.grid();
  SpectralField out(g);
  for (int i1 = 0; i1 < g.n; ++i1) {
    const double k1 = g.wavenumber(i1);
    for (int i2 = 0; i2 < g.n; ++i2) {
      const cplx c = theta0.at(i1, i2);
      if (c == cplx{}) continue;
      const double k2 = g.wavenumber(i2);
      const double k2norm = k1 * k1 + k2 * k2;
      const double rate =
          (k2norm == 0.0 && alpha > 0.0) ? 0.0 : mu * std::pow(k2norm, alpha);
      out.at(i1, i2) = c * std::exp(-rate * t);
    }
  }
  return out;
}

Background::Background(const SpectralField& theta0, double mu, double alpha,
                       double velocity_exponent)
    : grid_(theta0.grid()),
      mu_(mu),
      alpha_(alpha),
      velocity_exponent_(velocity_exponent) {
  collect(theta0);
}

Background::Background(const DataRecipe& recipe, const Grid& grid)
    : grid_(grid),
      mu_(recipe.mu),
      alpha_(recipe.alpha),
      velocity_exponent_(recipe.velocity_exponent) {
  SpectralField chi = build_chi(recipe, grid);
  chi *= recipe.amplitude();
  collect(chi);
}

void Background::collect(const SpectralField& theta0) {
  for (int i1 = 0; i1 < grid_.n; ++i1) {
    const double k1 = grid_.wavenumber(i1);
    for (int i2 = 0; i2 < grid_.n; ++i2) {
      const cplx c = theta0.at(i1, i2);
      if (c == cplx{}) continue;
      const double k2 = grid_.wavenumber(i2);
      const double k2norm = k1 * k1 + k2 * k2;
      if (k2norm == 0.0)
        throw std::invalid_argument("Background: theta0 must have zero mean");
      Mode m;
      m.j1 = grid_.signed_index(i1);
      m.j2 = grid_.signed_index(i2);
      m.c0 = c;
      m.rate = mu_ * std::pow(k2norm, alpha_);
      const double vmul = std::pow(k2norm, velocity_exponent_);
      m.vm1 = k2 * vmul;
      m.vm2 = -k1 * vmul;
      modes_.push_back(m);
    }
  }
}

void Background::add_theta(double t, SpectralField& acc) const {
  if (t < 0.0) throw std::invalid_argument("Background: t must be >= 0");
  for (const Mode& m : modes_)
    acc.at_signed(m.j1, m.j2) += m.c0 * std::exp(-m.rate * t);
}

void Background::add_velocity(double t, VectorField& acc) const {
  if (t < 0.0) throw std::invalid_argument("Background: t must be >= 0");
  for (const Mode& m : modes_) {
    const cplx th = m.c0 * std::exp(-m.rate * t);
    acc.x1.at_signed(m.j1, m.j2) += cplx{0.0, m.vm1} * th;
    acc.x2.at_signed(m.j1, m.j2) += cplx{0.0, m.vm2} * th;
  }
}

SpectralField Background::theta_at(double t) const {
  SpectralField f(grid_);
  add_theta(t, f);
  return f;
}

VectorField Background::velocity_at(double t) const {
  VectorField u(grid_);
  add_velocity(t, u);
  return u;
}

SpectralField Background::forcing_at(double t) const {
  SpectralField f = advect(velocity_at(t), theta_at(t));
  f *= -1.0;
  return f;
}

double Background::linf_theta(double t) const {
  return lebesgue_norm(theta_at(t), Lp::inf);
}

double Background::linf_velocity(double t) const {
  return linf_vector(velocity_at(t));
}

double Background::slowest_rate() const {
  double r = 0.0;
  for (const Mode& m : modes_) r = (r == 0.0) ? m.rate : std::min(r, m.rate);
  return r;
}

SpectralField forcing_at(const DataRecipe& recipe, const Grid& grid, double t) {
  return Background(recipe, grid).forcing_at(t);
}

}  // namespace sqg
