#include <kdvist/concurrency.hpp>
#include <kdvist/fft_utils.hpp>
#include <kdvist/reconstruct.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace kdvist {

const char* path_name(ReconPath p) {
  return p == ReconPath::contour ? "contour" : "proposition";
}

Real reconstruct_from_source(const KernelSource& src, const GaussRule& s_rule, Real x,
                             Real t, Real alpha_floor, Real imag_tol,
                             PointDiagnostics* diag) {
  const HankelSystem sys = assemble_hankel(src, s_rule, x, t);
  const SolveResult sol = solve_m(sys, alpha_floor);
  const Vec yx = solve_dm_dx(sys, sol.y);

  const Real s2pi = std::sqrt(2.0 * pi);
  const Vec sq = sys.s_weights.cwiseSqrt();

  Complex i2{0.0, 0.0}, i3{0.0, 0.0};
  for (Index i = 0; i < sys.s_nodes.size(); ++i) {
    i2 += sq[i] * sol.y[i] * sys.gp[i];
    i3 += sq[i] * yx[i] * sys.g[i];
  }
  const Complex i1 = 4.0 * sys.gp0;
  i2 *= 4.0 / s2pi;
  i3 *= -2.0 / s2pi;

  const Complex total = i1 + i2 + i3;
  const Real imag_res = std::abs(total.imag());
  if (diag) {
    diag->min_eig = sol.alpha;
    diag->hankel_norm = hankel_norm(sys);
    diag->herm_defect = sys.herm_defect;
    diag->imag_residual = imag_res;
    diag->i1 = i1;
    diag->i2 = i2;
    diag->i3 = i3;
  }
  if (imag_res > imag_tol) {
    std::ostringstream os;
    os << "reconstruction at x = " << x << ", t = " << t
       << ": imaginary residual " << imag_res << " exceeds " << imag_tol;
    throw std::runtime_error(os.str());
  }
  return total.real();
}

Reconstructor::Reconstructor(Potential q, ReconParams params)
    : q_(std::move(q)), params_(params) {
  bs_ = kdvist::bound_states(q_);
  a_ = params_.a_override > 0.0 ? params_.a_override : contour_height(bs_);
  if (!(params_.k_cutoff > a_))
    throw std::invalid_argument("Reconstructor: k_cutoff must exceed the detour height");

  fine_k_ = midpoint_grid(params_.k_cutoff, params_.fine_dk);
  fine_l_ = CVec::Zero(fine_k_.size());
  const Index half = fine_k_.size() / 2;
  // L(-k) = conj L(k): solve the positive half only
  CVec pos(half);
  parallel_for(half, params_.threads, [&](Index j) {
    pos[j] = scattering_coefficients(q_, fine_k_[half + j]).L;
  });
  for (Index j = 0; j < half; ++j) {
    fine_l_[half + j] = pos[j];
    fine_l_[half - 1 - j] = std::conj(pos[j]);
  }
  reflectionless_ = fine_l_.cwiseAbs().maxCoeff() < 1e-13;
}

Real Reconstructor::detour_height_at(Real t) const {
  // any height above the poles gives the same integral, but the top segment
  // carries the envelope e^{16 t a^3} and the quadrature cancels through it,
  // so roundoff scales with that factor; cap the exponent near 6 while
  // keeping 0.35 of clearance above the highest pole
  Real kmax = 0.0;
  for (const auto& s : bs_.states) kmax = std::max(kmax, s.kappa);
  const Real cap = std::cbrt(6.0 / (16.0 * t));
  return std::max(kmax + 0.35, std::min(a_, cap));
}

const Reconstructor::TimeCache& Reconstructor::ensure_time(Real t) {
  if (!(t > 0.0)) throw std::domain_error("reconstruct: requires t > 0");
  const long long key = std::llround(t * 1e12);
  auto it = cache_.find(key);
  if (it != cache_.end()) return *it->second;
  const Real a_t = detour_height_at(t);

  auto tc = std::make_unique<TimeCache>();
  tc->has_tables = !reflectionless_;
  if (tc->has_tables) {
    // the discrete transform is periodic in r with period 2 pi / dk; shrink
    // dk until the symbol's r-content (spread -24 K^2 t from the cubic phase,
    // plus the evaluation range with its 2x shift) fits inside one period
    const Real k2 = params_.k_cutoff * params_.k_cutoff;
    const Real span = 24.0 * k2 * t + 2.0 * params_.s_max + 80.0 + 128.0;
    const Real dk_t = std::min(params_.fine_dk, 2.0 * pi / span);

    Vec kgrid;
    CVec lvals;
    if (dk_t == params_.fine_dk) {
      kgrid = fine_k_;
      lvals = fine_l_;
    } else {
      kgrid = midpoint_grid(params_.k_cutoff, dk_t);
      lvals = CVec::Zero(kgrid.size());
      const Index half = kgrid.size() / 2;
      CVec pos(half);
      parallel_for(half, params_.threads, [&](Index j) {
        pos[j] = scattering_coefficients(q_, kgrid[half + j]).L;
      });
      for (Index j = 0; j < half; ++j) {
        lvals[half + j] = pos[j];
        lvals[half - 1 - j] = std::conj(pos[j]);
      }
    }

    const Index n = kgrid.size();
    CVec line(n), ray(n);
    for (Index j = 0; j < n; ++j) {
      const Real k = kgrid[j];
      const Complex v = std::exp(Complex(0.0, -8.0 * k * k * k * t)) * lvals[j];
      line[j] = v;
      // partial cell weights keep the effective ray endpoints at exactly +-a
      const Real lo = std::abs(k) - 0.5 * dk_t, hi = std::abs(k) + 0.5 * dk_t;
      const Real frac = std::clamp((hi - std::max(lo, a_t)) / dk_t, 0.0, 1.0);
      ray[j] = frac * v;
    }
    tc->line_table = kernel_table_from_symbol(kgrid, line, params_.dr_target);
    tc->ray_table = kernel_table_from_symbol(kgrid, ray, params_.dr_target);
  }
  tc->rect = build_rectangle(a_t, t, 2.0 * params_.s_max, 15.0, params_.order);
  tc->rect_l = reflection_on_contour(q_, tc->rect, params_.threads);

  auto [pos, ok] = cache_.emplace(key, std::move(tc));
  (void)ok;
  return *pos->second;
}

Real Reconstructor::point(Real x, Real t, ReconPath path, PointDiagnostics* diag) {
  const TimeCache& tc = ensure_time(t);
  const GaussRule rule = half_line_rule(params_.s_max, params_.basis_size, params_.order);

  KernelSource src;
  src.table_shift = 2.0 * x;
  if (path == ReconPath::proposition) {
    for (const auto& st : bs_.states)
      src.poles.push_back(
          {st.kappa, st.c * std::exp(2.0 * st.kappa * x - 8.0 * st.kappa * st.kappa * st.kappa * t)});
    src.table = tc.has_tables ? &tc.line_table : nullptr;
  } else {
    src.table = tc.has_tables ? &tc.ray_table : nullptr;
    src.contour = &tc.rect;
    src.density.resize(tc.rect.nodes.size());
    for (Index m = 0; m < tc.rect.nodes.size(); ++m)
      src.density[m] =
          tc.rect.weights[m] * xi_inv(tc.rect.nodes[m], x, t) * tc.rect_l[m] / (2.0 * pi);
  }
  return reconstruct_from_source(src, rule, x, t, params_.alpha_floor, params_.imag_tol,
                                 diag);
}

ReconstructionField Reconstructor::grid(const Vec& xs, const Vec& ts, ReconPath path) {
  ReconstructionField f;
  f.x_grid = xs;
  f.t_list = ts;
  f.path = path;
  f.source_potential_digest = potential_digest(q_);
  f.q = Mat::Zero(xs.size(), ts.size());
  f.diagnostics.resize(static_cast<size_t>(xs.size()) * ts.size());

  for (Index jt = 0; jt < ts.size(); ++jt) {
    ensure_time(ts[jt]); // shared read-only cache for the parallel sweep
    parallel_for(xs.size(), params_.threads, [&](Index ix) {
      PointDiagnostics d;
      f.q(ix, jt) = point(xs[ix], ts[jt], path, &d);
      f.diagnostics[static_cast<size_t>(ix) * ts.size() + jt] = d;
    });
  }
  return f;
}

void write_field_csv(const ReconstructionField& f, const std::string& path) {
  std::vector<std::vector<Real>> rows;
  rows.reserve(static_cast<size_t>(f.x_grid.size()) * f.t_list.size());
  for (Index ix = 0; ix < f.x_grid.size(); ++ix)
    for (Index jt = 0; jt < f.t_list.size(); ++jt) {
      const auto& d = f.diagnostics[static_cast<size_t>(ix) * f.t_list.size() + jt];
      rows.push_back({f.x_grid[ix], f.t_list[jt], f.q(ix, jt), d.hankel_norm, d.min_eig,
                      d.imag_residual});
    }
  write_text_file(path, csv_format({"x", "t", "q", "hankel_norm", "min_eig",
                                    "imag_residual"},
                                   rows));
}

nlohmann::json field_to_json(const ReconstructionField& f) {
  nlohmann::json j;
  j["path"] = path_name(f.path);
  j["source_potential_digest"] = f.source_potential_digest;
  j["x_grid"] = vec_to_json(f.x_grid);
  j["t_list"] = vec_to_json(f.t_list);
  nlohmann::json rows = nlohmann::json::array();
  for (Index ix = 0; ix < f.x_grid.size(); ++ix) {
    nlohmann::json row = nlohmann::json::array();
    for (Index jt = 0; jt < f.t_list.size(); ++jt) row.push_back(f.q(ix, jt));
    rows.push_back(row);
  }
  j["q"] = rows;
  return j;
}

} // namespace kdvist
