#pragma once

#include <kdvist/io.hpp>
#include <kdvist/jost.hpp>
#include <kdvist/potential.hpp>

#include <string>
#include <vector>

namespace kdvist {

//! Transmission and the two reflection coefficients at real k, from the
//! Wronskian identities evaluated with the right Faddeev solution at x = 0:
//!   W = m'(0) + 2ik m(0),  T = 2ik/W,  L = -m'(0)/W,  R = -conj(m'(0))/W.
struct ScatteringPoint {
  Complex T, R, L;
};
ScatteringPoint scattering_coefficients(const Potential& q, Real k);

struct BoundState {
  Real kappa; // decay rate, bound-state energy -kappa^2
  Real c;     // norming constant ||psi_-(., i kappa)||_2^{-2}
};

struct BoundStatesResult {
  std::vector<BoundState> states; // ascending in kappa
  std::vector<std::string> warnings;
};

//! Zeros of the Jost Wronskian on the positive imaginary axis. Scans
//! (0, kappa_cap] with kappa_cap = l1_norm/2 + margin, brackets sign
//! changes, bisects, then attaches norming constants. Nearly degenerate
//! roots are reported in warnings.
BoundStatesResult bound_states(const Potential& q, Real margin = 0.1, int n_scan = 400);

//! The (real) Wronskian root function w(kappa) = m'(0) - 2 kappa m(0)
//! at k = i kappa; bound states are its zeros.
Real wronskian_iw(const Potential& q, Real kappa);

//! c = ||psi_-(., i kappa)||_2^{-2} with exact exponential tails outside
//! [0, b_max] and exact per-cell integrals inside.
Real norming_constant(const Potential& q, Real kappa);

//! Weyl m-function of the right half-line problem: m_+(k^2) = psi_+'(0)/psi_+(0).
//! Free case: m_+(k^2) = ik.
Complex weyl_m(const Potential& q, Complex k);

//! Left reflection coefficient continued to Im k >= 0:
//!   L(k) = (ik - m_+(k^2)) / (ik + m_+(k^2)) = -m'(0) / (m'(0) + 2ik m(0)).
//! Poles at the bound states i kappa_n; callers must keep clear of them.
Complex reflection_L(const Potential& q, Complex k);

//! Throws std::domain_error if lambda is within `radius` of any pole i kappa_n.
void require_pole_clearance(Complex lambda, const std::vector<BoundState>& states,
                            Real radius = 0.05);

//! Scattering data tabulated on a symmetric real grid excluding a gap
//! around k = 0. Canonical cacheable object.
struct ScatteringSlice {
  Vec k_grid; // strictly increasing, |k| in (gap, k_max)
  CVec T, R, L;
  std::vector<BoundState> bound_states;
  std::string source_potential_hash;
};

struct SliceParams {
  Real gap = 0.01;
  Real k_max = 20.0;
  Real dk = 0.01;
};

ScatteringSlice compute_slice(const Potential& q, const SliceParams& p = {}, int threads = 0);

json slice_to_json(const ScatteringSlice& s);
ScatteringSlice slice_from_json(const json& j);

} // namespace kdvist
