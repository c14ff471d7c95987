#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace sqg {

// Adaptive Simpson for a K-component integrand. Refinement is driven by
// component 0; the remaining components are accumulated with the same nodes
// and weights (sound when they are nonnegative parts of component 0, as the
// norm integrals here are). Tolerance is absolute, on component 0.
template <std::size_t K, typename F>
std::array<double, K> adaptive_simpson(F&& f, double a, double b, double tol,
                                       int max_depth = 48,
                                       long* eval_count = nullptr) {
  using Sample = std::array<double, K>;
  struct Impl {
    F& f;
    long evals = 0;

    Sample eval(double x) {
      ++evals;
      Sample s = f(x);
      for (std::size_t i = 0; i < K; ++i)
        if (!std::isfinite(s[i]))
          throw std::runtime_error("quadrature integrand evaluated non-finite");
      return s;
    }
    static Sample simpson(const Sample& fa, const Sample& fm, const Sample& fb,
                          double h) {
      Sample s;
      for (std::size_t i = 0; i < K; ++i)
        s[i] = (h / 6.0) * (fa[i] + 4.0 * fm[i] + fb[i]);
      return s;
    }
    Sample recurse(double a, double b, const Sample& fa, const Sample& fm,
                   const Sample& fb, const Sample& whole, double tol, int depth) {
      const double m = 0.5 * (a + b);
      const Sample flm = eval(0.5 * (a + m));
      const Sample frm = eval(0.5 * (m + b));
      const Sample left = simpson(fa, flm, fm, m - a);
      const Sample right = simpson(fm, frm, fb, b - m);
      const double err = std::abs(left[0] + right[0] - whole[0]);
      if (err <= 15.0 * tol || err == 0.0) {
        Sample s;
        for (std::size_t i = 0; i < K; ++i)
          s[i] = left[i] + right[i] + (left[i] + right[i] - whole[i]) / 15.0;
        return s;
      }
      if (depth <= 0)
        throw std::runtime_error(
            "adaptive quadrature failed to reach the requested tolerance");
      const Sample sl = recurse(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1);
      const Sample sr = recurse(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
      Sample s;
      for (std::size_t i = 0; i < K; ++i) s[i] = sl[i] + sr[i];
      return s;
    }
  };

  if (!(b > a)) {
    std::array<double, K> zero{};
    return zero;
  }
  Impl impl{f};
  const auto fa = impl.eval(a);
  const auto fm = impl.eval(0.5 * (a + b));
  const auto fb = impl.eval(b);
  const auto whole = Impl::simpson(fa, fm, fb, b - a);
  auto result = impl.recurse(a, b, fa, fm, fb, whole, tol, max_depth);
  if (eval_count) *eval_count = impl.evals;
  return result;
}

}  // namespace sqg
