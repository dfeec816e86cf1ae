#include <kdvist/potential.hpp>

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace kdvist {

Real Potential::value(Real x) const {
  if (x < 0.0 || x >= b_max) return 0.0;
  Index i = static_cast<Index>(std::floor(x / grid_step));
  if (i < 0) i = 0;
  if (i >= cells()) i = cells() - 1;
  return samples[i];
}

namespace {

Index checked_cell_count(Real grid_step, Real b_max) {
  if (!(grid_step > 0.0) || !(b_max > 0.0))
    throw std::invalid_argument("make_preset: grid_step and b_max must be positive");
  Real n = b_max / grid_step;
  Real nr = std::round(n);
  if (std::abs(n - nr) > 1e-9 * nr)
    throw std::invalid_argument("make_preset: b_max must be an integer number of cells");
  return static_cast<Index>(nr);
}

void expect_params(const std::string& name, const std::vector<Real>& p, size_t n) {
  if (p.size() != n) {
    std::ostringstream os;
    os << "make_preset: " << name << " takes " << n << " parameters, got " << p.size();
    throw std::invalid_argument(os.str());
  }
}

} // namespace

Potential make_preset(const std::string& name, const std::vector<Real>& params,
                      Real grid_step, Real b_max) {
  Index n = checked_cell_count(grid_step, b_max);
  Potential q;
  q.grid_step = grid_step;
  q.b_max = b_max;
  q.samples = Vec::Zero(n);

  std::ostringstream tag;
  tag << name << "(";
  for (size_t i = 0; i < params.size(); ++i) tag << (i ? "," : "") << params[i];
  tag << ")";
  q.preset_tag = tag.str();

  auto fill = [&](auto&& f) {
    for (Index i = 0; i < n; ++i) q.samples[i] = f(q.cell_center(i));
  };

  if (name == "zero") {
    expect_params(name, params, 0);
  } else if (name == "square_well") {
    expect_params(name, params, 2);
    Real V0 = params[0], b = params[1];
    if (!(b > 0.0) || b > b_max)
      throw std::invalid_argument("make_preset: square_well width must lie in (0, b_max]");
    fill([&](Real x) { return x < b ? -V0 : 0.0; });
  } else if (name == "exp_decay") {
    expect_params(name, params, 2);
    Real c = params[0], rate = params[1];
    if (!(rate > 0.0)) throw std::invalid_argument("make_preset: exp_decay rate must be positive");
    fill([&](Real x) { return -c * std::exp(-rate * x); });
  } else if (name == "truncated_sech2") {
    expect_params(name, params, 3);
    Real kappa = params[0], x0 = params[1], b = params[2];
    if (!(b > 0.0) || b > b_max)
      throw std::invalid_argument("make_preset: truncated_sech2 cutoff must lie in (0, b_max]");
    fill([&](Real x) {
      if (x >= b) return 0.0;
      Real s = 1.0 / std::cosh(kappa * (x - x0));
      return -2.0 * kappa * kappa * s * s;
    });
  } else if (name == "gaussian_bump") {
    expect_params(name, params, 3);
    Real A = params[0], mu = params[1], sigma = params[2];
    if (!(sigma > 0.0)) throw std::invalid_argument("make_preset: gaussian_bump sigma must be positive");
    fill([&](Real x) {
      Real u = (x - mu) / sigma;
      return A * std::exp(-0.5 * u * u);
    });
  } else {
    throw std::invalid_argument("make_preset: unknown preset '" + name + "'");
  }
  return q;
}

namespace {

Index snapped_boundary_cell(const Potential& q, Real b) {
  if (!(b >= 0.0) || b > q.b_max + 1e-12)
    throw std::invalid_argument("truncate: b must lie in [0, b_max]");
  Index i = static_cast<Index>(std::llround(b / q.grid_step));
  if (i < 0) i = 0;
  if (i > q.cells()) i = q.cells();
  return i;
}

} // namespace

Potential truncate(const Potential& q, Real b) {
  Index keep = snapped_boundary_cell(q, b);
  Potential out = q;
  for (Index i = keep; i < out.cells(); ++i) out.samples[i] = 0.0;
  if (keep < q.cells()) {
    std::ostringstream tag;
    tag << q.preset_tag << "|trunc@" << static_cast<Real>(keep) * q.grid_step;
    out.preset_tag = tag.str();
  }
  return out;
}

Potential upper_tail(const Potential& q, Real b) {
  Index keep = snapped_boundary_cell(q, b);
  Potential out = q;
  for (Index i = 0; i < keep; ++i) out.samples[i] = 0.0;
  std::ostringstream tag;
  tag << q.preset_tag << "|tail@" << static_cast<Real>(keep) * q.grid_step;
  out.preset_tag = tag.str();
  return out;
}

} // namespace kdvist
