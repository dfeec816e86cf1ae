#pragma once

#include <kdvist/types.hpp>

namespace kdvist {

//! Gauss-Legendre rule on [-1,1], computed via the symmetric tridiagonal
//! Jacobi matrix (Golub-Welsch). n up to a few hundred is fine.
struct GaussRule {
  Vec nodes;
  Vec weights;
};

GaussRule gauss_legendre(int n);

//! Composite Gauss-Legendre rule: p-point rule on each interval
//! [edges[i], edges[i+1]]. Edges must be strictly increasing.
GaussRule composite_gauss(const Vec& edges, int p);

//! Composite rule on [a,b] with n_panels equal panels.
GaussRule composite_gauss_uniform(Real a, Real b, int n_panels, int p);

// sum of w_i * f(x_i)
template <typename F>
auto quad_sum(const GaussRule& rule, F&& f) {
  decltype(f(Real{})) acc{};
  for (Index i = 0; i < rule.nodes.size(); ++i)
    acc += rule.weights[i] * f(rule.nodes[i]);
  return acc;
}

//! Adaptive Simpson on [a,b] for scalar- or complex-valued f. Used as an
//! independent quadrature oracle in tests and for small one-off integrals.
template <typename F>
auto adaptive_simpson(F&& f, Real a, Real b, Real tol = 1e-12, int depth = 28) {
  using T = decltype(f(Real{}));
  auto simpson = [](T fa, T fm, T fb, Real h) { return h / 6.0 * (fa + 4.0 * fm + fb); };
  struct Rec {
    F& f;
    decltype(simpson) S;
    T operator()(Real a, Real b, T fa, T fm, T fb, T whole, Real tol, int depth) {
      Real m = 0.5 * (a + b);
      T flm = f(0.5 * (a + m)), frm = f(0.5 * (m + b));
      T left = S(fa, flm, fm, m - a), right = S(fm, frm, fb, b - m);
      if (depth <= 0 || std::abs(left + right - whole) < 15 * tol)
        return left + right + (left + right - whole) / 15.0;
      return (*this)(a, m, fa, flm, fm, left, tol / 2, depth - 1) +
             (*this)(m, b, fm, frm, fb, right, tol / 2, depth - 1);
    }
  } rec{f, simpson};
  T fa = f(a), fm = f(0.5 * (a + b)), fb = f(b);
  return rec(a, b, fa, fm, fb, simpson(fa, fm, fb, b - a), tol, depth);
}

} // namespace kdvist
