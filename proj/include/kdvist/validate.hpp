#pragma once

#include <kdvist/io.hpp>
#include <kdvist/potential.hpp>
#include <kdvist/scattering.hpp>

#include <string>
#include <vector>

namespace kdvist {

struct Check {
  std::string name;
  Real lhs{0.0}, rhs{0.0};
  Real residual{0.0};
  Real tolerance{0.0};
  bool pass{false};
  std::string note;
};

struct ValidationReport {
  std::string potential_tag;
  std::string potential_digest;
  std::vector<Check> checks;

  bool all_pass() const;
  json to_json() const;
};

// max_k | |T|^2 + |L|^2 - 1 | over the slice grid
Check check_unitarity(const ScatteringSlice& slice, Real tol = 1e-6);

// (16/3) sum kappa^3 + (8/pi) Int_0^inf k^2 log(1 - |L|^2)^{-1} dk = Int q^2.
// The k-integral beyond the grid is estimated in Born approximation via
// Parseval from the exact cell transform of q; lhs otherwise uses only
// scattering data, rhs only the stored potential.
Check check_zf_trace(const Potential& q, const ScatteringSlice& slice,
                     const std::vector<BoundState>& states, Real tol = 1e-3);

// L = L_b + T_b^2 L_{>b} / (1 - R_b L_{>b}) with L_{>b} taken from the
// untranslated upper tail; plus the bound |L - L_b| <= 2 |L_{>b}|.
std::vector<Check> check_layer_stripping(const Potential& q, Real b,
                                         const SliceParams& sp = {}, int threads = 0,
                                         Real tol = 1e-6);

// sup_{|k|>=a} |k (L - L_b)| tracks ||q - q_b||_1 across b_list: the
// normalized ratios stay under an absolute constant and within a factor-2
// band of each other (valid when (Q/2a) e^{Q/a} < 1). Also the truncation
// trace bound Int k^2 |L - L_b|^2 dk <= (pi/2) Int_b^inf q^2 per level.
// Levels whose tail carries no mass are skipped (L_b == L there).
std::vector<Check> check_truncation_rates(const Potential& q,
                                          const std::vector<Real>& b_list, Real a,
                                          const SliceParams& sp = {}, int threads = 0);

// residues of L at i kappa_n via a small-circle trapezoid match i c_n, and
// sum kappa_n <= ||q||_1 / 2
std::vector<Check> check_residues_and_lt(const Potential& q,
                                         const std::vector<BoundState>& states,
                                         Real rel_tol = 1e-4);

// spectral norm of the Hankel operator with reflection-only symbol
// xi^{-1} L_b stays below 1; adding a constant to the symbol leaves the
// operator unchanged
std::vector<Check> check_hankel_norm_lt1(const Potential& q, Real x, Real t,
                                         int threads = 0);

// square-detour integral of xi^{-1} L equals the straight segment [-a, a]
// minus 2 pi i times the enclosed residues i c~_n
Check check_deformation(const Potential& q, const std::vector<BoundState>& states,
                        Real x, Real t, int threads = 0);

// ||H(Phi - Phi_b)|| decreasing over b_list
Check check_norm_convergence(const Potential& q, const std::vector<Real>& b_list,
                             Real x, Real t, int threads = 0);

// ||(I+H_b)^{-1} - (I+H)^{-1}|| <= ||(I+H_b)^{-1}|| ||H - H_b|| ||(I+H)^{-1}||
Check check_resolvent_inequality(const Potential& q, Real b, Real x, Real t,
                                 int threads = 0);

// min eig(I + H(Phi)) >= 1 - ||H(xi^{-1} L)|| - eps_disc, and > 0
Check check_positivity_chain(const Potential& q, Real x, Real t, int threads = 0);

// standard battery for one potential; deep adds the operator-level checks
ValidationReport run_validation(const Potential& q, bool deep = false, int threads = 0);

} // namespace kdvist
