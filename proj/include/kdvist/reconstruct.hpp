#pragma once

#include <kdvist/hankel.hpp>
#include <kdvist/io.hpp>
#include <kdvist/potential.hpp>
#include <kdvist/scattering.hpp>

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace kdvist {

enum class ReconPath { contour, proposition };

const char* path_name(ReconPath p);

struct PointDiagnostics {
  Real hankel_norm{0.0};
  Real min_eig{0.0};
  Real herm_defect{0.0};
  Real imag_residual{0.0};
  Complex i1, i2, i3;
};

struct ReconParams {
  Real s_max{40.0};
  Index basis_size{240};
  Index order{12};
  Real k_cutoff{30.0};
  Real fine_dk{0.002};
  Real dr_target{0.005};
  Real alpha_floor{1e-6};
  Real imag_tol{1e-3};
  Real a_override{0.0};
  Index threads{0};
};

struct ReconstructionField {
  Vec x_grid;
  Vec t_list;
  Mat q; // (x, t)
  std::vector<PointDiagnostics> diagnostics; // x-major
  ReconPath path{ReconPath::proposition};
  std::string source_potential_digest;
};

// q(x,t) = Re(I1 + I2 + I3) with
//   I1 = 4 G'(0),  I2 = (4/sqrt(2pi)) Int y G' ds,  I3 = -(2/sqrt(2pi)) Int y_x G ds,
// y solving (I + H) y = -sqrt(2pi) G on (0, s_max).
Real reconstruct_from_source(const KernelSource& src, const GaussRule& s_rule, Real x,
                             Real t, Real alpha_floor, Real imag_tol,
                             PointDiagnostics* diag = nullptr);

class Reconstructor {
 public:
  explicit Reconstructor(Potential q, ReconParams params = {});

  Real point(Real x, Real t, ReconPath path, PointDiagnostics* diag = nullptr);
  ReconstructionField grid(const Vec& xs, const Vec& ts, ReconPath path);

  const BoundStatesResult& bound_states() const { return bs_; }
  Real detour_height() const { return a_; }
  const ReconParams& params() const { return params_; }
  const Potential& potential() const { return q_; }

 private:
  struct TimeCache {
    bool has_tables{false};
    KernelTable line_table; // r-transform of exp(-8ik^3 t) L over the whole grid
    KernelTable ray_table;  // same restricted to a_t < |k| < K
    ContourSpec rect;       // detour over [-a_t, a_t] at the t-adapted height
    CVec rect_l;
  };

  // detour height used at time t: a_ lowered toward the poles when the top
  // segment envelope e^{16 t a^3} would drown the contour integral in roundoff
  Real detour_height_at(Real t) const;

  const TimeCache& ensure_time(Real t);

  Potential q_;
  ReconParams params_;
  BoundStatesResult bs_;
  Real a_{1.0};
  bool reflectionless_{false};
  Vec fine_k_;
  CVec fine_l_;
  std::map<long long, std::unique_ptr<TimeCache>> cache_;
};

void write_field_csv(const ReconstructionField& f, const std::string& path);
nlohmann::json field_to_json(const ReconstructionField& f);

} // namespace kdvist
