#pragma once

#include <kdvist/contour.hpp>
#include <kdvist/quadrature.hpp>
#include <kdvist/types.hpp>

#include <utility>
#include <vector>

namespace kdvist {

// Riesz projection P- on a uniform symmetric midpoint k-grid. Convention:
// pairing Phi(k) = Int G(r) exp(-i k r) dr, so P- keeps the r > 0 content;
// 1/(k - i kappa) passes through, 1/(k + i kappa) is annihilated. The
// zero-frequency bin is dropped, so grid constants map to zero exactly.
CVec riesz_project_minus(const Vec& k_grid, const CVec& f);

// Transform table G(r) = (1/2pi) Int Phi(k) exp(+i k r) dk, sampled on the
// cyclic uniform r-grid r_m = m dr (upper half of the index range aliases
// to r < 0). gp holds dG/dr.
struct KernelTable {
  Real dr{0.0};
  Index n{0};
  CVec g, gp;

  Complex eval(Real r) const;
  Complex eval_deriv(Real r) const;
};

KernelTable kernel_table_from_symbol(const Vec& k_grid, const CVec& values,
                                     Real dr_target = 0.005);

// Additive description of the kernel function G(r):
//   sum of decaying exponentials  +  table part evaluated at r - table_shift
//   +  square-detour quadrature sum handled separately during assembly.
struct KernelSource {
  std::vector<std::pair<Real, Real>> poles; // (kappa, weight): weight * exp(-kappa r)
  const KernelTable* table{nullptr};
  Real table_shift{0.0};
  const ContourSpec* contour{nullptr};
  CVec density; // w_j xi^{-1}(lam_j) L_j / (2 pi) on contour nodes

  Complex point_g(Real r) const;  // poles + table only
  Complex point_gp(Real r) const;
};

// Nystrom discretization of I + H on L^2(0, s_max) in weighted coordinates
// (rows and columns scaled by sqrt of the quadrature weights), with the
// x-differentiated system assembled alongside. The operator matrix keeps the
// real part of the kernel; herm_defect records the largest imaginary part
// seen, which measures the self-adjointness defect of the quadrature.
struct HankelSystem {
  Vec s_nodes, s_weights;
  Mat iph;   // I + H
  Mat hx;    // dH/dx = -2 * (G' kernel)
  Vec rhs;   // -sqrt(2 pi) G(s)  in weighted coordinates
  Vec rhs_x; // +2 sqrt(2 pi) G'(s)
  CVec g, gp;
  Complex g0, gp0;
  Real herm_defect{0.0};
  Real x{0.0}, t{0.0};
  Index basis_size{0};
};

HankelSystem assemble_hankel(const KernelSource& src, const GaussRule& s_rule,
                             Real x, Real t);

// convenience: symbol on a real grid -> table source -> system
HankelSystem hankel_from_symbol(const SymbolGrid& symbol, Index basis_size,
                                Real s_max = 40.0);

GaussRule half_line_rule(Real s_max, Index n_nodes, Index order = 12);

Real hankel_norm(const HankelSystem& sys);
Real min_eig(const HankelSystem& sys);

struct SolveResult {
  Vec y;      // weighted coordinates of m - 1
  Real alpha; // smallest eigenvalue of I + H
};

// Solves (I + H) y = rhs; throws if the smallest eigenvalue drops below
// alpha_floor or the residual exceeds 1e-10 of the data scale.
SolveResult solve_m(const HankelSystem& sys, Real alpha_floor = 1e-6);

// (I + H) y_x = rhs_x - H_x y, reusing the assembled pair.
Vec solve_dm_dx(const HankelSystem& sys, const Vec& y);

// unweighted values Y(s_i) from weighted coordinates
Vec node_values(const HankelSystem& sys, const Vec& y);

// H^2 representative y(lambda) = (1/sqrt(2pi)) sum sqrt(w_i) y_i exp(i lambda s_i)
Complex eval_upper(const HankelSystem& sys, const Vec& y, Complex lambda);

// Hankel matrix in the rational orthonormal basis
// phi_n(k) = (1/sqrt(pi)) (k-i)^n / (k+i)^{n+1}; entries gamma_{m+n} with
// gamma_p = -(1/pi) Int Phi(k) (k-i)^p / (k+i)^{p+2} dk. Cross-check mode.
CMat mt_hankel_matrix(const Vec& k_grid, const CVec& phi_values, Index n_basis);
Real mt_hankel_norm(const CMat& a);

struct RefineResult {
  Real norm{0.0};
  Index basis_size{0};
  bool converged{false};
  std::vector<Real> history;
};

// doubles the node count until the norm moves less than tol, capped
RefineResult refine_hankel_norm(const KernelSource& src, Real x, Real t,
                                Real s_max = 40.0, Index start = 96,
                                Real tol = 1e-6, Index cap = 4096);

} // namespace kdvist
