#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <kdvist/pde_ref.hpp>

#include <cmath>

using namespace kdvist;

namespace {

Real soliton(Real x, Real t, Real x0) {
  const Real s = 1.0 / std::cosh(x - x0 - 4.0 * t);
  return -2.0 * s * s;
}

PdeParams small_box() {
  PdeParams p;
  p.domain_half_width = 60.0;
  p.n_modes = 4096;
  p.dt = 1e-3;
  return p;
}

} // namespace

TEST_CASE("soliton translates at speed 4 with its shape intact") {
  const Real x0 = 5.0;
  const auto q0 = [&](Real x) { return soliton(x, 0.0, x0); };
  const PdeRun run = evolve_kdv(q0, {0.5, 1.0}, small_box());

  // profile error against the exact translate, sampled densely near the crest
  for (size_t jt = 0; jt < run.times.size(); ++jt) {
    const Real t = run.times[jt];
    Real worst = 0.0;
    for (Real x = x0 + 4.0 * t - 5.0; x <= x0 + 4.0 * t + 5.0; x += 0.05)
      worst = std::max(worst, std::abs(sample_snapshot(run, jt, x) - soliton(x, t, x0)));
    CHECK(worst < 1e-5);
  }

  // crest location at t = 1 by scanning the interpolant
  Real best_x = 0.0, best_q = 1.0;
  for (Real x = 8.5; x <= 9.5; x += 1e-3) {
    const Real v = sample_snapshot(run, 1, x);
    if (v < best_q) {
      best_q = v;
      best_x = x;
    }
  }
  CHECK(std::abs(best_x - (x0 + 4.0)) < 1e-3);
  CHECK(std::abs(best_q + 2.0) < 1e-5);

  CHECK(run.boundary_amplitude[1] < 1e-8);
  CHECK(run.mass_drift < 1e-6);
  CHECK(run.momentum_drift < 1e-6);
}

TEST_CASE("discretized equation residual vanishes on the traveling wave") {
  CHECK(soliton_equation_residual(60.0, 4096) < 1e-6);
}

TEST_CASE("time refinement converges at fourth order") {
  const auto q0 = [](Real x) { return soliton(x, 0.0, 5.0); };
  auto run_at = [&](Real dt) {
    PdeParams p = small_box();
    p.dt = dt;
    return evolve_kdv(q0, {0.2}, p).snapshots[0];
  };
  const Vec ref = run_at(2.5e-4);
  const Real e1 = (run_at(2e-3) - ref).cwiseAbs().maxCoeff();
  const Real e2 = (run_at(1e-3) - ref).cwiseAbs().maxCoeff();
  if (e1 > 1e-11) {
    const Real ratio = e1 / e2;
    CHECK(ratio > 8.0);
    CHECK(ratio < 40.0);
  } else {
    CHECK(e2 <= 1.5 * e1 + 1e-14); // both at the roundoff floor
  }
}

TEST_CASE("zero data stays exactly zero") {
  const PdeRun run = evolve_kdv([](Real) { return 0.0; }, {0.3}, small_box());
  CHECK(run.snapshots[0].cwiseAbs().maxCoeff() < 1e-15);
  CHECK(run.boundary_amplitude[0] < 1e-15);
}

TEST_CASE("scheme conserves mass and momentum without the absorbing layer") {
  // jump data spreads a 1/k spectral tail; with the sponge disabled the
  // integrating-factor scheme must still hold the first two invariants
  PdeParams p;
  p.sponge_strength = 0.0;
  const auto q0 = [](Real x) { return (x > 0.0 && x < 2.0) ? -0.5 : 0.0; };
  const PdeRun run = evolve_kdv(q0, {0.05}, p);
  CHECK(run.mass_drift < 1e-10);
  CHECK(run.momentum_drift < 1e-3);
}

TEST_CASE("bad arguments are rejected") {
  const auto q0 = [](Real x) { return soliton(x, 0.0, 5.0); };
  CHECK_THROWS(evolve_kdv(q0, {}));
  CHECK_THROWS(evolve_kdv(q0, {0.2, 0.1}));
  CHECK_THROWS(evolve_kdv(q0, {-0.1}));
  PdeParams bad;
  bad.sponge_width = bad.domain_half_width + 1.0;
  CHECK_THROWS(evolve_kdv(q0, {0.1}, bad));
}
