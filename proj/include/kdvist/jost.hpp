#pragma once

#include <kdvist/potential.hpp>
#include <kdvist/types.hpp>

namespace kdvist {

enum class Side { left, right };

//! Faddeev-normalized Jost solution on the sample grid.
//! right: m'' + 2ik m' = q m with m = 1, m' = 0 for x >= b_max,
//!        psi_+ = e^{ikx} m.
//! left:  m'' - 2ik m' = q m with m = 1, m' = 0 for x <= 0,
//!        psi_- = e^{-ikx} m.
//! Valid for real k and Im k > 0; the propagation is exact on each
//! constant cell, so the error is roundoff for the stored step potential.
struct JostSolution {
  Side side{};
  Complex k{};
  Vec x;    // cell boundaries 0, h, ..., b_max (cells()+1 points)
  CVec m;   // m at boundaries
  CVec mp;  // m' at boundaries
  Real sup_m{};
};

JostSolution jost_solve(const Potential& q, Complex k, Side side);

//! Boundary pair only: (m(0), m'(0)) for right, (m(b_max), m'(b_max)) for
//! left. Same propagation as jost_solve without storing the interior.
std::pair<Complex, Complex> jost_edge(const Potential& q, Complex k, Side side);

//! Exact one-cell step of (m, m') across width h with constant cell value
//! qc. dir=+1 steps x -> x+h, dir=-1 steps x -> x-h. sign=+1 is the right
//! equation (m'' + 2ik m'), sign=-1 the left one.
void cell_step(Complex k, Real qc, Real h, int sign, int dir, Complex& m, Complex& mp);

} // namespace kdvist
