#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <kdvist/contour.hpp>
#include <kdvist/potential.hpp>

using namespace kdvist;

namespace {

Complex xi_fwd(Complex lam, Real x, Real t) {
  return std::exp(iu * (8.0 * lam * lam * lam * t + 2.0 * lam * x));
}

// Int_{-K}^{K} d lam / (lam - (k - i0)) for real |k| < K
Complex line_cauchy_closed(Real K, Real k) {
  return std::log((K - k) / (K + k)) - iu * pi;
}

} // namespace

TEST_CASE("contour weights integrate polynomials exactly") {
  const Real a = 2.0, K = 30.0;
  const ContourSpec c = build_contour(a, K, 160, 48, 48, 0.1, 5.0);
  CHECK(c.nodes.size() == c.weights.size());
  CHECK(c.nodes.size() == c.n_ray + 2 * c.n_side + c.n_top);

  const Complex m0 = contour_integral(c, [](Complex) { return Complex{1.0, 0.0}; });
  const Complex m1 = contour_integral(c, [](Complex z) { return z; });
  const Complex m2 = contour_integral(c, [](Complex z) { return z * z; });
  CHECK(std::abs(m0 - 2.0 * K) < 1e-9 * K);
  CHECK(std::abs(m1) < 1e-9 * K * K);
  CHECK(std::abs(m2 - 2.0 * K * K * K / 3.0) < 1e-9 * K * K * K);
}

TEST_CASE("function analytic above the axis integrates as on the straight line") {
  const Real a = 2.0, K = 30.0;
  const ContourSpec c = build_contour(a, K, 320, 64, 64, 1e-3, 5.0);
  // f = 1/(lam + i)^2, antiderivative -1/(lam + i)
  const Complex got =
      contour_integral(c, [](Complex z) { return 1.0 / ((z + iu) * (z + iu)); });
  const Complex want = -1.0 / (Complex(K, 0.0) + iu) + 1.0 / (Complex(-K, 0.0) + iu);
  CHECK(std::abs(got - want) < 1e-10);
}

TEST_CASE("detour over a pole differs from the line by the residue") {
  const Real a = 2.0, K = 30.0, kappa = 1.0;
  const ContourSpec c = build_contour(a, K, 320, 64, 64, 1e-3, 5.0);
  // f = 1/((lam - i kappa)(lam + 2i)); the pole i kappa sits under the top
  const auto f = [kappa](Complex z) {
    return 1.0 / ((z - iu * kappa) * (z + 2.0 * iu));
  };
  const Complex got = contour_integral(c, f);

  const Complex pf = 1.0 / (iu * kappa + 2.0 * iu);
  const Complex line =
      pf * (std::log((Complex(K, 0.0) - iu * kappa) / (Complex(-K, 0.0) - iu * kappa)) -
            std::log((Complex(K, 0.0) + 2.0 * iu) / (Complex(-K, 0.0) + 2.0 * iu)));
  const Complex res = 1.0 / (iu * kappa + 2.0 * iu);
  const Complex want = line - 2.0 * pi * iu * res;
  CHECK(std::abs(got - want) < 1e-9);
}

TEST_CASE("cauchy_transform over the square detour matches the telescoped logarithm") {
  const Real a = 2.0;
  const ContourSpec rect = build_rectangle(a, 0.1, 10.0, 5.0);
  const CVec ones = CVec::Ones(rect.nodes.size());
  Vec ks(2);
  ks << 0.7, 3.0;
  const CVec got = cauchy_transform(ones, rect.nodes, rect.weights, ks);
  // inside the detour footprint the continued Log picks up -i pi
  const Complex want_in = std::log((a - 0.7) / (a + 0.7)) - iu * pi;
  const Complex want_out = Complex(std::log((3.0 - a) / (3.0 + a)), 0.0);
  CHECK(std::abs(got[0] - want_in) < 1e-9);
  CHECK(std::abs(got[1] - want_out) < 1e-9);
}

TEST_CASE("symbol with unit density reproduces the Plemelj closed form") {
  const Real a = 2.0, K = 30.0, x = 0.3, t = 0.05;
  const ContourSpec c = build_contour(a, K, 320, 64, 64, 1e-3, 5.0);
  // L = xi makes the density xi^{-1} L identically one
  CVec L(c.nodes.size());
  for (Index j = 0; j < c.nodes.size(); ++j) L[j] = xi_fwd(c.nodes[j], x, t);

  Vec ks(4);
  ks << -7.123, 0.5, 3.137, 19.4; // gap point and on-ray points
  const SymbolGrid sg = symbol_phi(L, c, x, t, ks);
  const Complex pref = -1.0 / (2.0 * pi * iu);
  for (Index j = 0; j < ks.size(); ++j) {
    const Complex want = pref * line_cauchy_closed(K, ks[j]);
    CHECK(std::abs(sg.phi[j] - want) < 1e-8);
    // density -2 i lam: Int lam/(lam - k) = 2K + k * Int 1/(lam - k)
    const Complex want_dx =
        pref * (-2.0 * iu) * (2.0 * K + ks[j] * line_cauchy_closed(K, ks[j]));
    CHECK(std::abs(sg.dphi_dx[j] - want_dx) < 1e-7);
  }
}

TEST_CASE("symbol with rational density matches partial fractions") {
  const Real a = 2.0, K = 30.0, x = 0.3, t = 0.05;
  const ContourSpec c = build_contour(a, K, 320, 64, 64, 1e-3, 5.0);
  // density g = 1/(lam + 2i), analytic above the axis
  CVec L(c.nodes.size());
  for (Index j = 0; j < c.nodes.size(); ++j)
    L[j] = xi_fwd(c.nodes[j], x, t) / (c.nodes[j] + 2.0 * iu);

  Vec ks(3);
  ks << -11.31, 0.4, 5.77;
  const SymbolGrid sg = symbol_phi(L, c, x, t, ks);
  for (Index j = 0; j < ks.size(); ++j) {
    const Real k = ks[j];
    const Complex gk = 1.0 / (Complex(k, 0.0) + 2.0 * iu);
    const Complex log_pole = std::log((Complex(K, 0.0) + 2.0 * iu) /
                                      (Complex(-K, 0.0) + 2.0 * iu));
    const Complex pv = gk * (Complex(std::log((K - k) / (K + k)), 0.0) - log_pole);
    const Complex want = -1.0 / (2.0 * pi * iu) * (pv - iu * pi * gk);
    CHECK(std::abs(sg.phi[j] - want) < 1e-8);
  }
}

TEST_CASE("symbol of a real potential has conjugate symmetry") {
  const Potential q = make_preset("square_well", {1.0, 2.0});
  const ContourSpec c = build_contour_auto(1.6, 25.0, 0.1);
  const CVec L = reflection_on_contour(q, c);
  Vec ks(6);
  ks << -12.2, -4.1, -0.6, 0.6, 4.1, 12.2;
  const SymbolGrid sg = symbol_phi(L, c, 0.4, 0.1, ks);
  for (Index j = 0; j < 3; ++j)
    CHECK(std::abs(sg.phi[j] - std::conj(sg.phi[5 - j])) < 1e-8);
}

TEST_CASE("zero reflection data gives a zero symbol") {
  const ContourSpec c = build_contour(1.0, 20.0, 80, 24, 24, 0.1, 5.0);
  Vec ks(2);
  ks << 0.3, 5.0;
  const SymbolGrid sg = symbol_phi(CVec::Zero(c.nodes.size()), c, 1.0, 0.2, ks);
  CHECK(sg.phi.cwiseAbs().maxCoeff() == 0.0);
  CHECK(sg.dphi_dx.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("dphi_dx is the x derivative of phi") {
  const Potential q = make_preset("exp_decay", {1.0, 1.0});
  const ContourSpec c = build_contour_auto(1.5, 25.0, 0.1);
  const CVec L = reflection_on_contour(q, c);
  Vec ks(2);
  ks << 0.9, 6.3;
  const Real x = 0.5, t = 0.1;
  const SymbolGrid sg = symbol_phi(L, c, x, t, ks);

  const auto fd_err = [&](Real h) {
    const SymbolGrid p = symbol_phi(L, c, x + h, t, ks);
    const SymbolGrid m = symbol_phi(L, c, x - h, t, ks);
    Real worst = 0.0;
    for (Index j = 0; j < ks.size(); ++j)
      worst = std::max(worst,
                       std::abs((p.phi[j] - m.phi[j]) / (2.0 * h) - sg.dphi_dx[j]));
    return worst;
  };
  const Real e1 = fd_err(3e-3), e2 = fd_err(1e-3);
  CHECK(e2 < 1e-5);
  CHECK(e1 / e2 > 4.0); // second order central difference
  CHECK(e1 / e2 < 20.0);
}

TEST_CASE("doubling the ray cutoff moves the symbol less than the truncation estimate") {
  const Potential q = make_preset("square_well", {1.0, 2.0});
  const ContourSpec c1 = build_contour_auto(1.6, 25.0, 0.1);
  const ContourSpec c2 = build_contour_auto(1.6, 50.0, 0.1);
  Vec ks(2);
  ks << 0.8, 3.9;
  const SymbolGrid s1 = symbol_phi(reflection_on_contour(q, c1), c1, 0.0, 0.1, ks);
  const SymbolGrid s2 = symbol_phi(reflection_on_contour(q, c2), c2, 0.0, 0.1, ks);
  const Real budget = std::max(5.0 * c1.truncation_estimate * q.l1_norm(), 1e-10);
  for (Index j = 0; j < ks.size(); ++j)
    CHECK(std::abs(s1.phi[j] - s2.phi[j]) < budget);
}

TEST_CASE("builder rejects bad geometry") {
  CHECK_THROWS(build_contour(-1.0, 30.0, 80, 24, 24));
  CHECK_THROWS(build_contour(2.0, 1.0, 80, 24, 24));
  CHECK_THROWS(build_contour(2.0, 30.0, 81, 24, 24)); // odd ray count
  CHECK_THROWS(build_contour(2.0, 30.0, 80, 24, 24, -0.1));
  CHECK_THROWS(build_contour(4.0, 30.0, 80, 24, 24, 1.0, 60.0)); // growth overflow
  CHECK_THROWS(build_rectangle(0.0, 0.1));
}

TEST_CASE("large but finite growth is reported as a warning") {
  const ContourSpec c = build_contour(2.0, 30.0, 80, 24, 24, 0.1, 60.0);
  CHECK(!c.warnings.empty());
}

TEST_CASE("evaluation points colliding with quadrature nodes are rejected") {
  const ContourSpec c = build_contour(1.0, 20.0, 80, 24, 24, 0.1, 5.0);
  Index ray_node = 0;
  for (Index j = 0; j < c.nodes.size(); ++j)
    if (c.segment_tags[j] == Segment::ray_right) {
      ray_node = j;
      break;
    }
  Vec ks(1);
  ks << c.nodes[ray_node].real();
  CHECK_THROWS(symbol_phi(CVec::Ones(c.nodes.size()), c, 0.0, 0.1, ks));
}

TEST_CASE("contour height clears the poles") {
  BoundStatesResult bs;
  bs.states.push_back({0.7, 1.0});
  bs.states.push_back({1.3, 0.5});
  CHECK(contour_height(bs) == doctest::Approx(2.3));
  CHECK(contour_height({}) == doctest::Approx(1.0));
}
