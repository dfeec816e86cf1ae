#pragma once

#include <kdvist/potential.hpp>
#include <kdvist/types.hpp>

#include <functional>
#include <vector>

namespace kdvist {

// Pseudo-spectral reference integrator for q_t - 6 q q_x + q_xxx = 0 on a
// periodic box, integrating-factor RK4 in Fourier space, 2/3 dealiasing.
struct PdeParams {
  // the left-moving dispersive fan must not wrap back into the comparison
  // window; the domain buys room at ~3 k^2 t per unit time
  Real domain_half_width{120.0};
  Index n_modes{32768};
  Real dt{1e-4};
  Real dealias_fraction{2.0 / 3.0};
  // absorbing layer -sigma(x) q on the outer sponge_width of each edge,
  // sigma = strength * ramp^2; identically zero inside, so compactly
  // supported solutions keep their invariants while wrapped radiation from
  // slowly decaying spectra (jump discontinuities in q0) is damped out.
  // strength 0 disables the layer.
  Real sponge_width{30.0};
  Real sponge_strength{800.0};
};

struct PdeRun {
  PdeParams params;
  Vec x_grid;
  std::vector<Real> times;
  std::vector<Vec> snapshots;
  std::vector<Real> boundary_amplitude; // max |q| over the outer 5% per side
  Real mass_drift{0.0};     // relative drift of Int q dx over the run
  Real momentum_drift{0.0}; // relative drift of Int q^2 dx
};

PdeRun evolve_kdv(const std::function<Real(Real)>& q0, const std::vector<Real>& t_list,
                  const PdeParams& p = {});
PdeRun evolve_kdv(const Potential& q0, const std::vector<Real>& t_list,
                  const PdeParams& p = {});

// cubic interpolation of one snapshot on the periodic grid
Real sample_snapshot(const PdeRun& run, Index snap, Real x);

// residual of the discretized equation on a given field, used to pin the
// sign convention: feeds q(x,t) = -2 sech^2(x - 4t) and differentiates in t
// spectrally via the known traveling profile
Real soliton_equation_residual(Real domain_half_width = 60.0, Index n_modes = 4096);

} // namespace kdvist
