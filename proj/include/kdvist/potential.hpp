#pragma once

#include <kdvist/types.hpp>

#include <string>
#include <vector>

namespace kdvist {

//! Real potential supported in [0, b_max], stored as a piecewise-constant
//! function: samples[i] is the value on cell [i*h, (i+1)*h), with the sample
//! point at the cell midpoint. Scattering quantities computed from this
//! object are exact for the stored step function; presets are matched at
//! O(grid_step^2). Discontinuities of the analytic presets land on cell
//! boundaries, never on sample points.
struct Potential {
  Real grid_step{0.005};
  Real b_max{20.0};
  Vec samples;
  std::string preset_tag;

  Index cells() const { return samples.size(); }
  Real cell_center(Index i) const { return (static_cast<Real>(i) + 0.5) * grid_step; }

  //! piecewise-constant lookup; zero outside [0, b_max)
  Real value(Real x) const;

  //! exact L1 norm of the stored step function
  Real l1_norm() const { return grid_step * samples.array().abs().sum(); }
  //! exact L2 norm of the stored step function
  Real l2_norm() const { return std::sqrt(grid_step * samples.array().square().sum()); }
};

//! Analytic preset families, sampled at cell midpoints:
//!   zero            ()              q = 0
//!   square_well     (V0, b)         q = -V0 on (0, b)
//!   exp_decay       (c, rate)       q = -c e^{-rate x} on (0, b_max)
//!   truncated_sech2 (kappa, x0, b)  q = -2 kappa^2 sech^2(kappa (x - x0)) on (0, b)
//!   gaussian_bump   (A, mu, sigma)  q = A e^{-(x-mu)^2 / (2 sigma^2)} on (0, b_max)
Potential make_preset(const std::string& name, const std::vector<Real>& params,
                      Real grid_step = 0.005, Real b_max = 20.0);

//! Zero every cell at or beyond b (snapped to the nearest cell boundary).
//! Grid and b_max unchanged; idempotent.
Potential truncate(const Potential& q, Real b);

//! Potential restricted to [b, b_max): complement of truncate, no translation.
Potential upper_tail(const Potential& q, Real b);

} // namespace kdvist
