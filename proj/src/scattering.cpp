#include <kdvist/scattering.hpp>

#include <kdvist/concurrency.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace kdvist {

ScatteringPoint scattering_coefficients(const Potential& q, Real k) {
  if (k == 0.0) throw std::domain_error("scattering_coefficients: k = 0 is excluded");
  auto [m0, mp0] = jost_edge(q, Complex(k, 0.0), Side::right);
  Complex W = mp0 + 2.0 * iu * k * m0;
  ScatteringPoint p;
  p.T = 2.0 * iu * k / W;
  p.L = -mp0 / W;
  p.R = -std::conj(mp0) / W;
  return p;
}

Real wronskian_iw(const Potential& q, Real kappa) {
  if (!(kappa > 0.0)) throw std::domain_error("wronskian_iw: kappa must be positive");
  auto [m0, mp0] = jost_edge(q, Complex(0.0, kappa), Side::right);
  // real-coefficient ODE at k = i kappa keeps m real; drop roundoff imaginaries
  return (mp0 - 2.0 * kappa * m0).real();
}

namespace {

// exact integral of psi^2 over one constant cell, from (psi, psi') at the
// left edge; gamma^2 = qc + kappa^2
Real cell_psi2_integral(Real psi, Real psip, Real qc, Real kappa, Real h) {
  Complex g2(qc + kappa * kappa, 0.0);
  if (std::abs(g2) * h * h < 1e-12) {
    return psi * psi * h + psi * psip * h * h + psip * psip * h * h * h / 3.0;
  }
  Complex g = std::sqrt(g2);
  Complex a = 0.5 * (psi + psip / g);
  Complex b = 0.5 * (psi - psip / g);
  auto E = [](Complex z) { // (e^z - 1)/z
    if (std::abs(z) < 1e-5) return 1.0 + z / 2.0 + z * z / 6.0 + z * z * z / 24.0;
    return (std::exp(z) - 1.0) / z;
  };
  Complex z = 2.0 * g * h;
  Complex val = a * a * h * E(z) + 2.0 * a * b * h + b * b * h * E(-z);
  return val.real();
}

} // namespace

Real norming_constant(const Potential& q, Real kappa) {
  if (!(kappa > 0.0)) throw std::domain_error("norming_constant: kappa must be positive");
  JostSolution left = jost_solve(q, Complex(0.0, kappa), Side::left);
  Index n = q.cells();
  Real h = q.grid_step;
  // stop the cell sum at the end of the numerical support: past it the true
  // eigenfunction is pure decay, while the integrated m carries an e^{+kappa x}
  // contamination from the finite root accuracy that e^{2 kappa b_max} would
  // amplify catastrophically for the deeper states
  Index n_sup = 0;
  for (Index j = 0; j < n; ++j)
    if (q.samples[j] != 0.0) n_sup = j + 1;
  // psi_-(x) = e^{kappa x} m(x); left tail integral is exactly 1/(2 kappa)
  Real total = 1.0 / (2.0 * kappa);
  for (Index j = 0; j < n_sup; ++j) {
    Real ex = std::exp(kappa * left.x[j]);
    Real psi = ex * left.m[j].real();
    Real psip = ex * (kappa * left.m[j].real() + left.mp[j].real());
    total += cell_psi2_integral(psi, psip, q.samples[j], kappa, h);
  }
  // beyond the support the true eigenfunction is psi(b) e^{-kappa (x-b)}
  Real psib = std::exp(kappa * left.x[n_sup]) * left.m[n_sup].real();
  total += psib * psib / (2.0 * kappa);
  return 1.0 / total;
}

BoundStatesResult bound_states(const Potential& q, Real margin, int n_scan) {
  BoundStatesResult out;
  Real cap = 0.5 * q.l1_norm() + margin;
  if (!(cap > 0.0) || q.l1_norm() == 0.0) return out;
  n_scan = std::max(n_scan, 16);

  Real lo = std::min(1e-6, cap * 1e-3);
  Vec grid = Vec::LinSpaced(n_scan + 1, lo, cap);
  Vec w(n_scan + 1);
  for (int i = 0; i <= n_scan; ++i) w[i] = wronskian_iw(q, grid[i]);

  std::vector<Real> roots;
  for (int i = 0; i < n_scan; ++i) {
    if (w[i] == 0.0) {
      roots.push_back(grid[i]);
      continue;
    }
    if (w[i] * w[i + 1] < 0.0) {
      Real a = grid[i], b = grid[i + 1], fa = w[i];
      for (int it = 0; it < 100; ++it) {
        Real mid = 0.5 * (a + b);
        Real fm = wronskian_iw(q, mid);
        if (fm == 0.0) {
          a = b = mid;
          break;
        }
        if (fa * fm < 0.0)
          b = mid;
        else {
          a = mid;
          fa = fm;
        }
        if (b - a < 1e-15 * std::max(1.0, b)) break;
      }
      roots.push_back(0.5 * (a + b));
    }
  }
  if (w[n_scan] == 0.0) roots.push_back(grid[n_scan]);

  Real sep = (cap - lo) / n_scan;
  for (size_t i = 1; i < roots.size(); ++i) {
    if (roots[i] - roots[i - 1] < 5.0 * sep) {
      std::ostringstream os;
      os << "nearly degenerate bound states at kappa = " << roots[i - 1] << " and " << roots[i]
         << "; scan step " << sep << " may miss pairs between them";
      out.warnings.push_back(os.str());
    }
  }

  for (Real kappa : roots) out.states.push_back({kappa, norming_constant(q, kappa)});
  return out;
}

Complex weyl_m(const Potential& q, Complex k) {
  auto [m0, mp0] = jost_edge(q, k, Side::right);
  if (m0 == Complex{0.0, 0.0}) throw std::domain_error("weyl_m: psi_+(0) vanishes at this k");
  return iu * k + mp0 / m0;
}

Complex reflection_L(const Potential& q, Complex k) {
  auto [m0, mp0] = jost_edge(q, k, Side::right);
  Complex W = mp0 + 2.0 * iu * k * m0;
  if (std::abs(W) == 0.0) throw std::domain_error("reflection_L: evaluated at a Wronskian zero");
  return -mp0 / W;
}

void require_pole_clearance(Complex lambda, const std::vector<BoundState>& states, Real radius) {
  for (const auto& s : states) {
    if (std::abs(lambda - iu * s.kappa) < radius) {
      std::ostringstream os;
      os << "evaluation point (" << lambda.real() << "," << lambda.imag()
         << ") is within " << radius << " of the pole at i*" << s.kappa;
      throw std::domain_error(os.str());
    }
  }
}

ScatteringSlice compute_slice(const Potential& q, const SliceParams& p, int threads) {
  if (!(p.k_max > p.gap) || !(p.gap >= 0.0) || !(p.dk > 0.0))
    throw std::invalid_argument("compute_slice: need 0 <= gap < k_max and dk > 0");
  Index n_pos = std::max<Index>(1, static_cast<Index>(std::llround((p.k_max - p.gap) / p.dk)));
  Real dk = (p.k_max - p.gap) / static_cast<Real>(n_pos);

  ScatteringSlice s;
  s.k_grid.resize(2 * n_pos);
  for (Index i = 0; i < n_pos; ++i) {
    Real k = p.gap + (static_cast<Real>(i) + 0.5) * dk;
    s.k_grid[n_pos + i] = k;
    s.k_grid[n_pos - 1 - i] = -k;
  }
  s.T.resize(2 * n_pos);
  s.R.resize(2 * n_pos);
  s.L.resize(2 * n_pos);
  parallel_for(2 * n_pos, threads, [&](Index i) {
    ScatteringPoint pt = scattering_coefficients(q, s.k_grid[i]);
    s.T[i] = pt.T;
    s.R[i] = pt.R;
    s.L[i] = pt.L;
  });
  auto bs = bound_states(q);
  s.bound_states = bs.states;
  s.source_potential_hash = potential_digest(q);
  return s;
}

json slice_to_json(const ScatteringSlice& s) {
  json j;
  j["k_grid"] = vec_to_json(s.k_grid);
  j["T"] = cvec_to_json(s.T);
  j["R"] = cvec_to_json(s.R);
  j["L"] = cvec_to_json(s.L);
  json bs = json::array();
  for (const auto& b : s.bound_states) bs.push_back({{"kappa", b.kappa}, {"c", b.c}});
  j["bound_states"] = bs;
  j["source_potential_hash"] = s.source_potential_hash;
  return j;
}

ScatteringSlice slice_from_json(const json& j) {
  ScatteringSlice s;
  s.k_grid = vec_from_json(j.at("k_grid"));
  s.T = cvec_from_json(j.at("T"));
  s.R = cvec_from_json(j.at("R"));
  s.L = cvec_from_json(j.at("L"));
  for (const auto& b : j.at("bound_states"))
    s.bound_states.push_back({b.at("kappa").get<Real>(), b.at("c").get<Real>()});
  s.source_potential_hash = j.value("source_potential_hash", std::string{});
  return s;
}

} // namespace kdvist
