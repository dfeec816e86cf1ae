#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracle_step.hpp"

#include <kdvist/jost.hpp>
#include <kdvist/potential.hpp>

#include <cmath>

using namespace kdvist;

namespace {
oracle::StepPotential well_oracle(Real v0, Real b) {
  oracle::StepPotential s;
  s.pieces.push_back({0.0, b, -v0});
  return s;
}
} // namespace

TEST_CASE("zero potential gives m identically one") {
  Potential q = make_preset("zero", {});
  for (Complex k : {Complex(0.7, 0.0), Complex(3.0, 1.5), Complex(0.0, 2.0)}) {
    JostSolution right = jost_solve(q, k, Side::right);
    JostSolution left = jost_solve(q, k, Side::left);
    // roundoff from ~4000 unit-modulus cell factors
    for (Index i = 0; i < right.m.size(); i += 500) {
      CHECK(std::abs(right.m[i] - 1.0) < 1e-12);
      CHECK(std::abs(right.mp[i]) < 1e-12);
      CHECK(std::abs(left.m[i] - 1.0) < 1e-12);
      CHECK(std::abs(left.mp[i]) < 1e-12);
    }
  }
}

TEST_CASE("right solution matches transfer-matrix continuation of e^{ikx}") {
  Potential q = make_preset("square_well", {1.0, 2.0});
  auto orc = well_oracle(1.0, 2.0);
  std::vector<Complex> ks = {Complex(0.05, 0.0), Complex(0.5, 0.0),  Complex(2.0, 0.0),
                             Complex(20.0, 0.0), Complex(-3.0, 0.0), Complex(0.3, 0.8),
                             Complex(-1.0, 1.0), Complex(0.0, 0.4),  Complex(0.0, 1.7),
                             Complex(5.0, 2.0)};
  for (Complex k : ks) {
    CAPTURE(k.real());
    CAPTURE(k.imag());
    JostSolution sol = jost_solve(q, k, Side::right);
    for (Real x : {0.0, 0.5, 1.25, 1.995, 2.5, 10.0}) {
      Index i = static_cast<Index>(std::llround(x / q.grid_step));
      Complex psip;
      Complex psi = orc.psi_plus(x, k, &psip);
      Complex m_ref = std::exp(-iu * k * x) * psi;
      Complex mp_ref = std::exp(-iu * k * x) * (psip - iu * k * psi);
      CHECK(std::abs(sol.m[i] - m_ref) < 1e-8 * std::abs(m_ref));
      CHECK(std::abs(sol.mp[i] - mp_ref) < 1e-8 * (1.0 + std::abs(mp_ref)));
    }
  }
}

TEST_CASE("left solution matches transfer-matrix continuation of e^{-ikx}") {
  Potential q = make_preset("square_well", {1.0, 2.0});
  auto orc = well_oracle(1.0, 2.0);
  for (Complex k : {Complex(0.5, 0.0), Complex(4.0, 0.0), Complex(0.0, 0.9), Complex(2.0, 1.0)}) {
    CAPTURE(k.real());
    CAPTURE(k.imag());
    JostSolution sol = jost_solve(q, k, Side::left);
    for (Real x : {0.0, 0.7, 1.995, 3.0}) {
      Index i = static_cast<Index>(std::llround(x / q.grid_step));
      Complex psip;
      Complex psi = orc.psi_minus(x, k, &psip);
      Complex m_ref = std::exp(iu * k * x) * psi;
      Complex mp_ref = std::exp(iu * k * x) * (psip + iu * k * psi);
      CHECK(std::abs(sol.m[i] - m_ref) < 1e-8 * std::abs(m_ref));
      CHECK(std::abs(sol.mp[i] - mp_ref) < 1e-8 * (1.0 + std::abs(mp_ref)));
    }
  }
}

TEST_CASE("mixed-sign potential agrees with the step oracle") {
  Real h = 0.005;
  Potential q;
  q.grid_step = h;
  q.b_max = 20.0;
  q.samples = Vec::Zero(4000);
  // -1 on (0,1), +0.5 on (1,3)
  for (Index i = 0; i < q.samples.size(); ++i) {
    Real x = q.cell_center(i);
    if (x < 1.0)
      q.samples[i] = -1.0;
    else if (x < 3.0)
      q.samples[i] = 0.5;
  }
  q.preset_tag = "custom";
  oracle::StepPotential orc;
  orc.pieces.push_back({0.0, 1.0, -1.0});
  orc.pieces.push_back({1.0, 3.0, 0.5});

  for (Complex k : {Complex(1.3, 0.0), Complex(0.0, 0.6), Complex(2.0, 0.5)}) {
    JostSolution sol = jost_solve(q, k, Side::right);
    for (Real x : {0.0, 0.5, 2.0}) {
      Index i = static_cast<Index>(std::llround(x / h));
      Complex psip;
      Complex psi = orc.psi_plus(x, k, &psip);
      Complex m_ref = std::exp(-iu * k * x) * psi;
      CHECK(std::abs(sol.m[i] - m_ref) < 1e-8 * std::abs(m_ref));
    }
  }
}

TEST_CASE("sup norm bound exp(norm1(q)/|k|)") {
  Potential q = make_preset("exp_decay", {2.0, 1.0});
  for (Complex k : {Complex(0.3, 0.0), Complex(1.0, 0.5), Complex(0.0, 0.8), Complex(6.0, 0.0)}) {
    JostSolution sol = jost_solve(q, k, Side::right);
    CHECK(sol.sup_m <= std::exp(q.l1_norm() / std::abs(k)) + 1e-9);
  }
}

TEST_CASE("edge evaluation agrees with the full solve") {
  Potential q = make_preset("gaussian_bump", {0.4, 2.0, 0.6});
  for (Complex k : {Complex(0.9, 0.0), Complex(0.0, 1.2), Complex(3.0, 0.4)}) {
    JostSolution sol = jost_solve(q, k, Side::right);
    auto [m0, mp0] = jost_edge(q, k, Side::right);
    CHECK(std::abs(m0 - sol.m[0]) < 1e-13 * std::abs(m0));
    CHECK(std::abs(mp0 - sol.mp[0]) < 1e-13 * (1.0 + std::abs(mp0)));
    JostSolution soll = jost_solve(q, k, Side::left);
    auto [mb, mpb] = jost_edge(q, k, Side::left);
    CHECK(std::abs(mb - soll.m[soll.m.size() - 1]) < 1e-13 * std::abs(mb));
    CHECK(std::abs(mpb - soll.mp[soll.mp.size() - 1]) < 1e-13 * (1.0 + std::abs(mpb)));
  }
}

TEST_CASE("solver rejects k on the negative imaginary side and k = 0") {
  Potential q = make_preset("zero", {});
  CHECK_THROWS_AS((void)jost_solve(q, Complex(0.0, 0.0), Side::right), std::domain_error);
  CHECK_THROWS_AS((void)jost_solve(q, Complex(1.0, -0.5), Side::right), std::domain_error);
}

TEST_CASE("single cell step matches the oracle propagator") {
  // one constant cell, both equation signs and directions
  Real h = 0.01, qc = -0.8;
  Complex k(1.7, 0.3);
  {
    // right-normalized equation integrated rightward from (1, 0)
    Complex m = 1.0, mp = 0.0;
    cell_step(k, qc, h, +1, +1, m, mp);
    // oracle: psi = e^{ikx} m, start x=0: psi=1, psi'=ik; step; convert back
    Complex psi = 1.0, psip = iu * k;
    oracle::StepPotential::prop_forward(k, qc, h, psi, psip);
    Complex m_ref = std::exp(-iu * k * h) * psi;
    Complex mp_ref = std::exp(-iu * k * h) * (psip - iu * k * psi);
    CHECK(std::abs(m - m_ref) < 1e-14);
    CHECK(std::abs(mp - mp_ref) < 1e-13);
  }
  {
    // left-normalized equation integrated rightward
    Complex m = 1.0, mp = 0.0;
    cell_step(k, qc, h, -1, +1, m, mp);
    Complex psi = 1.0, psip = -iu * k;
    oracle::StepPotential::prop_forward(k, qc, h, psi, psip);
    Complex m_ref = std::exp(iu * k * h) * psi;
    Complex mp_ref = std::exp(iu * k * h) * (psip + iu * k * psi);
    CHECK(std::abs(m - m_ref) < 1e-14);
    CHECK(std::abs(mp - mp_ref) < 1e-13);
  }
}
