#pragma once

#include <kdvist/potential.hpp>
#include <kdvist/scattering.hpp>
#include <kdvist/types.hpp>

#include <string>
#include <vector>

namespace kdvist {

enum class Segment { ray_left, rect_side_left, rect_top, rect_side_right, ray_right };

// One straight quadrature panel: nodes[begin..end) run from z0 to z1.
struct ContourPanel {
  Index begin{0}, end{0};
  Complex z0, z1;
  Segment tag{Segment::ray_left};
};

// Oriented integration path: real ray (-K,-a], square detour
// [-a, -a+ia, a+ia, a] over the poles, real ray [a, K). Weights carry the
// complex direction, so sum w_j f(z_j) approximates the path integral.
struct ContourSpec {
  Real a{1.0};
  Real ray_cutoff{30.0};
  Real t_hint{0.1};
  CVec nodes;
  CVec weights;
  std::vector<Segment> segment_tags;
  std::vector<ContourPanel> panels;
  Real truncation_estimate{0.0};
  std::vector<std::string> warnings;

  Index n_ray{0}, n_side{0}, n_top{0};
};

// n_ray = total nodes over both rays (must be even), n_side = per vertical
// side, n_top = top edge. Ray panels are graded by the cubic phase measure
// mu(k) = r_scale (k - a) + 8 t_hint (k^3 - a^3).
ContourSpec build_contour(Real a, Real K, Index n_ray, Index n_side, Index n_top,
                          Real t_hint = 0.1, Real r_scale = 60.0);

// Picks node counts from a phase budget (about 1.5 rad per node).
ContourSpec build_contour_auto(Real a, Real K, Real t, Real r_scale = 60.0,
                               Real x_scale = 15.0);

// Square detour only (no rays): -a -> -a+ia -> a+ia -> a. Side panels are
// graded dyadically toward the real axis so kernels exp(i lam r) with r up
// to r_scale are resolved; the top is sized for phase r_scale + 24 t a^2.
ContourSpec build_rectangle(Real a, Real t_hint, Real r_scale = 80.0,
                            Real x_scale = 15.0, Index order = 12);

// a = max kappa + 1 (1 when no bound states); throws if a would not clear
// the poles.
Real contour_height(const BoundStatesResult& bs);

template <typename F>
Complex contour_integral(const ContourSpec& c, F&& f) {
  Complex acc{0.0, 0.0};
  for (Index j = 0; j < c.nodes.size(); ++j) acc += c.weights[j] * f(c.nodes[j]);
  return acc;
}

// xi_{x,t}(lambda) = exp(i (8 lambda^3 t + 2 lambda x)); this is 1/xi.
Complex xi_inv(Complex lambda, Real x, Real t);

// L at every contour node (parallel over nodes).
CVec reflection_on_contour(const Potential& q, const ContourSpec& c, Index threads = 0);

struct SymbolGrid {
  Vec k_grid;
  CVec phi;
  CVec dphi_dx;
  Real x{0.0}, t{0.0};
};

// Phi_{x,t}(k) = -(1/2pi i) * Int_Gamma xi^{-1}(lam) L(lam) / (lam - (k - i0)) dlam
// evaluated for real k. On-ray k uses principal value plus the -i pi half
// residue; k must stay clear of quadrature nodes. dphi_dx carries the extra
// -2 i lam factor. Requires t > 0.
SymbolGrid symbol_phi(const CVec& L_on_gamma, const ContourSpec& c, Real x, Real t,
                      const Vec& k_grid);

// F(k) = Int f(lam)/(lam - k) dlam over the given straight-panel path, for
// real k strictly below it. Used for the square-detour part of the symbol.
CVec cauchy_transform(const CVec& f_on_path, const CVec& path_nodes,
                      const CVec& path_weights, const Vec& k_grid);

} // namespace kdvist
