#include <kdvist/concurrency.hpp>
#include <kdvist/contour.hpp>
#include <kdvist/quadrature.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace kdvist {

namespace {

// mu(k) = r_scale (k - a) + 8 t (k^3 - a^3), the worst-case oscillation phase
// accumulated along a ray; node spacing follows equal increments of mu.
Real ray_phase(Real k, Real a, Real t, Real r_scale) {
  return r_scale * (k - a) + 8.0 * t * (k * k * k - a * a * a);
}

Real invert_ray_phase(Real target, Real a, Real K, Real t, Real r_scale) {
  Real lo = a, hi = K;
  for (int it = 0; it < 80; ++it) {
    const Real mid = 0.5 * (lo + hi);
    (ray_phase(mid, a, t, r_scale) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// splits n nodes into panels of roughly `order` nodes each
std::vector<Index> panel_orders(Index n, Index order) {
  const Index n_panels = std::max<Index>(1, (n + order / 2) / order);
  std::vector<Index> out(n_panels, n / n_panels);
  for (Index i = 0; i < n % n_panels; ++i) out[i] += 1;
  return out;
}

void append_panel(ContourSpec& c, Complex z0, Complex z1, Index order, Segment tag) {
  const GaussRule gl = gauss_legendre(order);
  const Complex mid = 0.5 * (z0 + z1);
  const Complex half = 0.5 * (z1 - z0);
  ContourPanel pan;
  pan.begin = c.nodes.size();
  pan.z0 = z0;
  pan.z1 = z1;
  pan.tag = tag;
  const Index old = c.nodes.size();
  c.nodes.conservativeResize(old + order);
  c.weights.conservativeResize(old + order);
  for (Index i = 0; i < order; ++i) {
    c.nodes[old + i] = mid + half * gl.nodes[i];
    c.weights[old + i] = half * gl.weights[i];
    c.segment_tags.push_back(tag);
  }
  pan.end = c.nodes.size();
  c.panels.push_back(pan);
}

// graded panel edges on [a, K]
std::vector<Real> ray_edges(Real a, Real K, Index n_panels, Real t, Real r_scale) {
  const Real total = ray_phase(K, a, t, r_scale);
  std::vector<Real> edges(n_panels + 1);
  edges[0] = a;
  edges[n_panels] = K;
  for (Index i = 1; i < n_panels; ++i)
    edges[i] = invert_ray_phase(total * static_cast<Real>(i) / n_panels, a, K, t, r_scale);
  return edges;
}

struct RayInfo {
  Real lo, hi; // the open interval of the ray on the real axis
  std::vector<const ContourPanel*> panels;
};

// barycentric interpolation of the density over one panel's nodes
Complex panel_interp(const ContourSpec& c, const ContourPanel& pan, const CVec& vals,
                     Complex z) {
  const Index n = pan.end - pan.begin;
  Complex num{0.0, 0.0}, den{0.0, 0.0};
  for (Index i = 0; i < n; ++i) {
    const Complex zi = c.nodes[pan.begin + i];
    Complex w{1.0, 0.0};
    for (Index j = 0; j < n; ++j) {
      if (j == i) continue;
      w /= (zi - c.nodes[pan.begin + j]);
    }
    const Complex d = z - zi;
    if (std::abs(d) < 1e-14) return vals[pan.begin + i];
    num += w / d * vals[pan.begin + i];
    den += w / d;
  }
  return num / den;
}

} // namespace

Real contour_height(const BoundStatesResult& bs) {
  Real kmax = 0.0;
  for (const auto& s : bs.states) kmax = std::max(kmax, s.kappa);
  return kmax + 1.0;
}

ContourSpec build_contour(Real a, Real K, Index n_ray, Index n_side, Index n_top,
                          Real t_hint, Real r_scale) {
  if (!(a > 0.0)) throw std::invalid_argument("build_contour: a must be positive");
  if (!(K > a)) throw std::invalid_argument("build_contour: ray cutoff K must exceed a");
  if (n_ray < 2 || n_ray % 2 != 0)
    throw std::invalid_argument("build_contour: n_ray must be even and >= 2");
  if (n_side < 2 || n_top < 2)
    throw std::invalid_argument("build_contour: n_side and n_top must be >= 2");
  if (!(t_hint > 0.0)) throw std::invalid_argument("build_contour: t_hint must be positive");

  ContourSpec c;
  c.a = a;
  c.ray_cutoff = K;
  c.t_hint = t_hint;
  c.n_ray = n_ray;
  c.n_side = n_side;
  c.n_top = n_top;

  const Real growth = 16.0 * a * a * a * t_hint + a * r_scale;
  if (growth > 650.0)
    throw std::invalid_argument("build_contour: detour growth exponent overflows double");
  if (growth > 60.0) {
    std::ostringstream os;
    os << "detour growth exponent " << growth << " costs about " << growth / 2.302585
       << " digits in kernel assembly";
    c.warnings.push_back(os.str());
  }

  const Index n_half = n_ray / 2;
  const std::vector<Index> ray_ord = panel_orders(n_half, 12);
  const std::vector<Real> edges = ray_edges(a, K, static_cast<Index>(ray_ord.size()),
                                            t_hint, r_scale);

  // left ray (-K, -a], mirrored grading, still oriented left to right
  for (Index p = ray_ord.size(); p-- > 0;)
    append_panel(c, Complex(-edges[p + 1], 0.0), Complex(-edges[p], 0.0), ray_ord[p],
                 Segment::ray_left);

  const Complex ia{0.0, a};
  {
    const std::vector<Index> ords = panel_orders(n_side, 12);
    Complex z0(-a, 0.0);
    const Complex step = ia / static_cast<Real>(ords.size());
    for (Index p = 0; p < static_cast<Index>(ords.size()); ++p) {
      const Complex z1 = Complex(-a, 0.0) + step * static_cast<Real>(p + 1);
      append_panel(c, z0, z1, ords[p], Segment::rect_side_left);
      z0 = z1;
    }
  }
  {
    const std::vector<Index> ords = panel_orders(n_top, 12);
    Complex z0(-a, a);
    const Real step = 2.0 * a / static_cast<Real>(ords.size());
    for (Index p = 0; p < static_cast<Index>(ords.size()); ++p) {
      const Complex z1 = Complex(-a + step * (p + 1), a);
      append_panel(c, z0, z1, ords[p], Segment::rect_top);
      z0 = z1;
    }
  }
  {
    const std::vector<Index> ords = panel_orders(n_side, 12);
    Complex z0(a, a);
    const Complex step = -ia / static_cast<Real>(ords.size());
    for (Index p = 0; p < static_cast<Index>(ords.size()); ++p) {
      const Complex z1 = Complex(a, a) + static_cast<Real>(p + 1) * step;
      append_panel(c, z0, z1, ords[p], Segment::rect_side_right);
      z0 = z1;
    }
  }
  for (Index p = 0; p < static_cast<Index>(ray_ord.size()); ++p)
    append_panel(c, Complex(edges[p], 0.0), Complex(edges[p + 1], 0.0), ray_ord[p],
                 Segment::ray_right);

  if (c.nodes.size() != n_ray + 2 * n_side + n_top)
    throw std::logic_error("build_contour: node bookkeeping mismatch");

  // First integration-by-parts bound on the dropped tails |k| > K, per unit
  // of ||q||_1, using the Born decay |L| <= Q/(2 K^2); both rays included.
  c.truncation_estimate = 1.0 / (12.0 * pi * K * K * K * K * t_hint);
  return c;
}

ContourSpec build_rectangle(Real a, Real t_hint, Real r_scale, Real x_scale,
                            Index order) {
  if (!(a > 0.0)) throw std::invalid_argument("build_rectangle: a must be positive");
  if (!(t_hint > 0.0)) throw std::invalid_argument("build_rectangle: t_hint must be positive");

  ContourSpec c;
  c.a = a;
  c.ray_cutoff = a; // no rays
  c.t_hint = t_hint;

  // dyadic side panel edges: fine near Im = 0 where exp(i lam r) still
  // oscillates and has not decayed
  std::vector<Real> heights{0.0};
  Real h = std::min(a, 0.5 / r_scale);
  while (h < a) {
    heights.push_back(h);
    h *= 2.0;
  }
  heights.push_back(a);

  const Real top_phase = 2.0 * a * (r_scale + 2.0 * x_scale + 24.0 * t_hint * a * a);
  const Index n_top_panels =
      std::max<Index>(4, static_cast<Index>(std::ceil(top_phase / (1.5 * order))));

  for (Index p = 0; p + 1 < static_cast<Index>(heights.size()); ++p)
    append_panel(c, Complex(-a, heights[p]), Complex(-a, heights[p + 1]), order,
                 Segment::rect_side_left);
  const Real step = 2.0 * a / static_cast<Real>(n_top_panels);
  for (Index p = 0; p < n_top_panels; ++p)
    append_panel(c, Complex(-a + step * p, a), Complex(-a + step * (p + 1), a), order,
                 Segment::rect_top);
  for (Index p = heights.size() - 1; p-- > 0;)
    append_panel(c, Complex(a, heights[p + 1]), Complex(a, heights[p]), order,
                 Segment::rect_side_right);
  c.n_side = (static_cast<Index>(heights.size()) - 1) * order;
  c.n_top = n_top_panels * order;
  return c;
}

ContourSpec build_contour_auto(Real a, Real K, Real t, Real r_scale, Real x_scale) {
  const Real per_node = 1.5;
  const Real mu_ray = ray_phase(K, a, t, r_scale + 2.0 * x_scale);
  Index n_half = static_cast<Index>(std::ceil(mu_ray / per_node));
  n_half = std::max<Index>(n_half, 48);
  const Real mu_top = 2.0 * a * (r_scale + 2.0 * x_scale + 24.0 * t * a * a);
  Index n_top = std::max<Index>(48, static_cast<Index>(std::ceil(mu_top / per_node)));
  const Real mu_side = a * (r_scale + 2.0 * x_scale + 24.0 * t * a * a);
  Index n_side = std::max<Index>(36, static_cast<Index>(std::ceil(mu_side / per_node)));
  return build_contour(a, K, 2 * n_half, n_side, n_top, t, r_scale);
}

Complex xi_inv(Complex lambda, Real x, Real t) {
  const Complex phase = Complex(0.0, -1.0) *
                        (8.0 * lambda * lambda * lambda * t + 2.0 * lambda * x);
  return std::exp(phase);
}

CVec reflection_on_contour(const Potential& q, const ContourSpec& c, Index threads) {
  CVec out(c.nodes.size());
  parallel_for(c.nodes.size(), threads,
               [&](Index j) { out[j] = reflection_L(q, c.nodes[j]); });
  return out;
}

CVec cauchy_transform(const CVec& f_on_path, const CVec& path_nodes,
                      const CVec& path_weights, const Vec& k_grid) {
  if (f_on_path.size() != path_nodes.size() || path_nodes.size() != path_weights.size())
    throw std::invalid_argument("cauchy_transform: size mismatch");
  CVec out(k_grid.size());
  for (Index i = 0; i < k_grid.size(); ++i) {
    const Complex k(k_grid[i], 0.0);
    Complex acc{0.0, 0.0};
    for (Index j = 0; j < path_nodes.size(); ++j)
      acc += path_weights[j] * f_on_path[j] / (path_nodes[j] - k);
    out[i] = acc;
  }
  return out;
}

namespace {

// shared core: Cauchy integral of one density over the full contour with
// principal-value handling on the rays
CVec contour_cauchy(const ContourSpec& c, const CVec& g, const Vec& k_grid) {
  std::vector<const ContourPanel*> left_panels, right_panels;
  for (const auto& pan : c.panels) {
    if (pan.tag == Segment::ray_left) left_panels.push_back(&pan);
    if (pan.tag == Segment::ray_right) right_panels.push_back(&pan);
  }

  CVec out(k_grid.size());
  for (Index i = 0; i < k_grid.size(); ++i) {
    const Real k = k_grid[i];
    const bool in_left = (k > -c.ray_cutoff && k < -c.a);
    const bool in_right = (k > c.a && k < c.ray_cutoff);

    if (in_left || in_right) {
      Real min_dist = 1e30;
      for (Index j = 0; j < c.nodes.size(); ++j)
        if (c.segment_tags[j] == Segment::ray_left || c.segment_tags[j] == Segment::ray_right)
          min_dist = std::min(min_dist, std::abs(c.nodes[j] - Complex(k, 0.0)));
      if (min_dist < 1e-8 * (1.0 + std::abs(k)))
        throw std::invalid_argument("symbol evaluation point collides with a ray node");
    }

    Complex gk{0.0, 0.0};
    if (in_left || in_right) {
      const auto& panels = in_left ? left_panels : right_panels;
      const ContourPanel* home = nullptr;
      for (const auto* pan : panels)
        if (k >= pan->z0.real() - 1e-14 && k <= pan->z1.real() + 1e-14) home = pan;
      if (!home) throw std::logic_error("ray panel lookup failed");
      gk = panel_interp(c, *home, g, Complex(k, 0.0));
    }

    Complex acc{0.0, 0.0};
    for (Index j = 0; j < c.nodes.size(); ++j) {
      const Segment tag = c.segment_tags[j];
      const bool on_home_ray = (in_left && tag == Segment::ray_left) ||
                               (in_right && tag == Segment::ray_right);
      const Complex dv = on_home_ray ? (g[j] - gk) : g[j];
      acc += c.weights[j] * dv / (c.nodes[j] - Complex(k, 0.0));
    }

    if (in_left || in_right) {
      // PV over the home ray; the -i0 shift of the pole adds -i pi g(k)
      const Real lo = in_left ? -c.ray_cutoff : c.a;
      const Real hi = in_left ? -c.a : c.ray_cutoff;
      acc += gk * (std::log((hi - k) / (k - lo)) - Complex(0.0, pi));
    }
    out[i] = acc;
  }
  return out;
}

} // namespace

SymbolGrid symbol_phi(const CVec& L_on_gamma, const ContourSpec& c, Real x, Real t,
                      const Vec& k_grid) {
  if (!(t > 0.0)) throw std::domain_error("symbol_phi: time slice requires t > 0");
  if (L_on_gamma.size() != c.nodes.size())
    throw std::invalid_argument("symbol_phi: L values do not match contour nodes");

  CVec g(c.nodes.size()), g2(c.nodes.size());
  for (Index j = 0; j < c.nodes.size(); ++j) {
    g[j] = xi_inv(c.nodes[j], x, t) * L_on_gamma[j];
    g2[j] = Complex(0.0, -2.0) * c.nodes[j] * g[j];
  }

  SymbolGrid out;
  out.k_grid = k_grid;
  out.x = x;
  out.t = t;
  const Complex pref = -1.0 / (2.0 * pi * iu);
  out.phi = pref * contour_cauchy(c, g, k_grid);
  out.dphi_dx = pref * contour_cauchy(c, g2, k_grid);
  return out;
}

} // namespace kdvist
