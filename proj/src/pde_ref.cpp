#include <kdvist/fft_utils.hpp>
#include <kdvist/pde_ref.hpp>

#include <cmath>
#include <stdexcept>

namespace kdvist {

namespace {

Vec wavenumbers(Index n, Real half_width) {
  const Real base = pi / half_width; // 2 pi / (2 W)
  Vec k(n);
  for (Index m = 0; m < n; ++m) {
    const Index shifted = (m < n / 2) ? m : m - n;
    k[m] = base * static_cast<Real>(shifted);
  }
  return k;
}

CVec to_spectral(const Vec& q) {
  CVec tmp(q.size());
  for (Index j = 0; j < q.size(); ++j) tmp[j] = Complex(q[j], 0.0);
  return fft(tmp);
}

Vec to_physical(const CVec& qh) {
  const CVec tmp = ifft(qh);
  Vec q(tmp.size());
  for (Index j = 0; j < tmp.size(); ++j) q[j] = tmp[j].real();
  return q;
}

} // namespace

PdeRun evolve_kdv(const std::function<Real(Real)>& q0, const std::vector<Real>& t_list,
                  const PdeParams& p) {
  if (t_list.empty()) throw std::invalid_argument("evolve_kdv: empty time list");
  for (size_t i = 0; i < t_list.size(); ++i) {
    if (!(t_list[i] > 0.0)) throw std::invalid_argument("evolve_kdv: times must be > 0");
    if (i > 0 && !(t_list[i] > t_list[i - 1]))
      throw std::invalid_argument("evolve_kdv: times must be increasing");
  }
  const Index n = p.n_modes;
  const Real w = p.domain_half_width;
  const Real dx = 2.0 * w / static_cast<Real>(n);
  if (p.sponge_strength > 0.0 && !(p.sponge_width > 0.0 && p.sponge_width < w))
    throw std::invalid_argument("evolve_kdv: sponge_width must lie in (0, half_width)");

  PdeRun run;
  run.params = p;
  run.x_grid = Vec(n);
  for (Index j = 0; j < n; ++j) run.x_grid[j] = -w + dx * j;

  Vec q(n);
  for (Index j = 0; j < n; ++j) q[j] = q0(run.x_grid[j]);

  const Vec k = wavenumbers(n, w);
  const Real k_keep = p.dealias_fraction * pi / w * static_cast<Real>(n / 2);
  Vec mask(n);
  for (Index m = 0; m < n; ++m) mask[m] = (std::abs(k[m]) <= k_keep) ? 1.0 : 0.0;

  CVec v = to_spectral(q);
  const Real mass0 = v[0].real() * dx;
  const Real mom0 = v.squaredNorm() / static_cast<Real>(n) * dx;

  const bool sponged = p.sponge_strength > 0.0;
  Vec sigma;
  if (sponged) {
    sigma = Vec::Zero(n);
    const Real x_on = w - p.sponge_width;
    for (Index j = 0; j < n; ++j) {
      const Real d = std::abs(run.x_grid[j]) - x_on;
      if (d > 0.0) {
        const Real u = d / p.sponge_width;
        sigma[j] = p.sponge_strength * u * u;
      }
    }
  }

  // N(q)^ = 3 i k (q^2)^ - (sigma q)^, dealiased
  const auto nonlinear = [&](const CVec& vh) -> CVec {
    const Vec qq = to_physical(vh);
    CVec sq(n);
    for (Index j = 0; j < n; ++j) sq[j] = Complex(qq[j] * qq[j], 0.0);
    CVec out = fft(sq);
    for (Index m = 0; m < n; ++m) out[m] *= Complex(0.0, 3.0 * k[m]) * mask[m];
    if (sponged) {
      CVec sg(n);
      for (Index j = 0; j < n; ++j) sg[j] = Complex(sigma[j] * qq[j], 0.0);
      const CVec sgh = fft(sg);
      for (Index m = 0; m < n; ++m) out[m] -= sgh[m] * mask[m];
    }
    return out;
  };

  Real t_now = 0.0;
  Real worst_mass = 0.0, worst_mom = 0.0;
  for (Real t_target : t_list) {
    const Real gap = t_target - t_now;
    const Index steps = std::max<Index>(1, static_cast<Index>(std::ceil(gap / p.dt)));
    const Real dt = gap / static_cast<Real>(steps);

    CVec e_half(n), e_full(n);
    for (Index m = 0; m < n; ++m) {
      // integrating factor for the linear part q_t = -q_xxx: symbol i k^3
      const Complex lam(0.0, k[m] * k[m] * k[m]);
      e_half[m] = std::exp(lam * (dt / 2.0));
      e_full[m] = std::exp(lam * dt);
    }
    for (Index s = 0; s < steps; ++s) {
      const CVec a = dt * nonlinear(v);
      const CVec b = dt * nonlinear((e_half.array() * (v + 0.5 * a).array()).matrix());
      const CVec c = dt * nonlinear(
                              (e_half.array() * v.array() + 0.5 * b.array()).matrix());
      const CVec d = dt * nonlinear((e_full.array() * v.array() +
                                     e_half.array() * c.array())
                                        .matrix());
      v = (e_full.array() * v.array() +
           (e_full.array() * a.array() + 2.0 * e_half.array() * (b + c).array() +
            d.array()) /
               6.0)
              .matrix();
    }
    t_now = t_target;

    const Vec snap = to_physical(v);
    run.times.push_back(t_now);
    run.snapshots.push_back(snap);
    const Index edge = std::max<Index>(1, n / 20);
    Real bamp = 0.0;
    for (Index j = 0; j < edge; ++j) {
      bamp = std::max(bamp, std::abs(snap[j]));
      bamp = std::max(bamp, std::abs(snap[n - 1 - j]));
    }
    run.boundary_amplitude.push_back(bamp);

    const Real mass = v[0].real() * dx;
    const Real mom = v.squaredNorm() / static_cast<Real>(n) * dx;
    worst_mass = std::max(worst_mass, std::abs(mass - mass0) / (std::abs(mass0) + 1e-30));
    worst_mom = std::max(worst_mom, std::abs(mom - mom0) / (std::abs(mom0) + 1e-30));
  }
  run.mass_drift = worst_mass;
  run.momentum_drift = worst_mom;
  return run;
}

PdeRun evolve_kdv(const Potential& q0, const std::vector<Real>& t_list,
                  const PdeParams& p) {
  return evolve_kdv([&q0](Real x) { return q0.value(x); }, t_list, p);
}

Real sample_snapshot(const PdeRun& run, Index snap, Real x) {
  const Vec& q = run.snapshots.at(snap);
  const Index n = q.size();
  const Real w = run.params.domain_half_width;
  const Real dx = 2.0 * w / static_cast<Real>(n);
  const Real pos = (x + w) / dx;
  const long long j0 = static_cast<long long>(std::floor(pos));
  const Real u = pos - static_cast<Real>(j0);
  const auto wrap = [n](long long m) -> Index {
    long long r = m % static_cast<long long>(n);
    if (r < 0) r += n;
    return static_cast<Index>(r);
  };
  const Real p0 = q[wrap(j0 - 1)], p1 = q[wrap(j0)], p2 = q[wrap(j0 + 1)],
             p3 = q[wrap(j0 + 2)];
  const Real l0 = -u * (u - 1.0) * (u - 2.0) / 6.0;
  const Real l1 = (u * u - 1.0) * (u - 2.0) / 2.0;
  const Real l2 = -u * (u + 1.0) * (u - 2.0) / 2.0;
  const Real l3 = u * (u * u - 1.0) / 6.0;
  return l0 * p0 + l1 * p1 + l2 * p2 + l3 * p3;
}

Real soliton_equation_residual(Real domain_half_width, Index n_modes) {
  const Index n = n_modes;
  const Real w = domain_half_width;
  const Vec k = wavenumbers(n, w);
  Vec q(n);
  for (Index j = 0; j < n; ++j) {
    const Real x = -w + 2.0 * w / n * j;
    const Real c = std::cosh(x);
    q[j] = -2.0 / (c * c);
  }
  CVec qh = to_spectral(q);
  CVec qxh(n), qxxxh(n);
  for (Index m = 0; m < n; ++m) {
    const Complex ik(0.0, k[m]);
    qxh[m] = ik * qh[m];
    qxxxh[m] = ik * ik * ik * qh[m];
  }
  const Vec qx = to_physical(qxh);
  const Vec qxxx = to_physical(qxxxh);
  // traveling wave: q_t = -4 q_x; residual of q_t - 6 q q_x + q_xxx
  Real worst = 0.0;
  for (Index j = 0; j < n; ++j)
    worst = std::max(worst, std::abs(-4.0 * qx[j] - 6.0 * q[j] * qx[j] + qxxx[j]));
  return worst;
}

} // namespace kdvist
