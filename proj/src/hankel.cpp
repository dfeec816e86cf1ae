#include <kdvist/fft_utils.hpp>
#include <kdvist/hankel.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace kdvist {

namespace {

Real uniform_step(const Vec& k_grid, const char* who) {
  if (k_grid.size() < 4) throw std::invalid_argument(std::string(who) + ": grid too short");
  const Real dk = k_grid[1] - k_grid[0];
  for (Index j = 1; j < k_grid.size(); ++j)
    if (std::abs((k_grid[j] - k_grid[j - 1]) - dk) > 1e-9 * dk)
      throw std::invalid_argument(std::string(who) + ": grid must be uniform");
  return dk;
}

void require_symmetric(const Vec& k_grid, const char* who) {
  if (std::abs(k_grid[0] + k_grid[k_grid.size() - 1]) > 1e-9)
    throw std::invalid_argument(std::string(who) + ": grid must be symmetric about 0");
}

} // namespace

CVec riesz_project_minus(const Vec& k_grid, const CVec& f) {
  if (f.size() != k_grid.size())
    throw std::invalid_argument("riesz_project_minus: size mismatch");
  uniform_step(k_grid, "riesz_project_minus");
  require_symmetric(k_grid, "riesz_project_minus");

  const Index n = f.size();
  CVec bins = ifft(f); // bin m <-> r = 2 pi m / (n dk), upper half aliases r < 0
  for (Index m = 0; m < n; ++m)
    if (m == 0 || m >= n / 2) bins[m] = Complex(0.0, 0.0);
  return fft(bins);
}

Complex KernelTable::eval(Real r) const {
  const Real mf = r / dr;
  const auto wrap = [this](long long m) -> Index {
    long long w = m % static_cast<long long>(n);
    if (w < 0) w += n;
    return static_cast<Index>(w);
  };
  const long long m0 = static_cast<long long>(std::floor(mf));
  const Real u = mf - static_cast<Real>(m0);
  const Complex p0 = g[wrap(m0 - 1)], p1 = g[wrap(m0)], p2 = g[wrap(m0 + 1)],
                p3 = g[wrap(m0 + 2)];
  const Real l0 = -u * (u - 1.0) * (u - 2.0) / 6.0;
  const Real l1 = (u * u - 1.0) * (u - 2.0) / 2.0;
  const Real l2 = -u * (u + 1.0) * (u - 2.0) / 2.0;
  const Real l3 = u * (u * u - 1.0) / 6.0;
  return l0 * p0 + l1 * p1 + l2 * p2 + l3 * p3;
}

Complex KernelTable::eval_deriv(Real r) const {
  const Real mf = r / dr;
  const auto wrap = [this](long long m) -> Index {
    long long w = m % static_cast<long long>(n);
    if (w < 0) w += n;
    return static_cast<Index>(w);
  };
  const long long m0 = static_cast<long long>(std::floor(mf));
  const Real u = mf - static_cast<Real>(m0);
  const Complex p0 = gp[wrap(m0 - 1)], p1 = gp[wrap(m0)], p2 = gp[wrap(m0 + 1)],
                p3 = gp[wrap(m0 + 2)];
  const Real l0 = -u * (u - 1.0) * (u - 2.0) / 6.0;
  const Real l1 = (u * u - 1.0) * (u - 2.0) / 2.0;
  const Real l2 = -u * (u + 1.0) * (u - 2.0) / 2.0;
  const Real l3 = u * (u * u - 1.0) / 6.0;
  return l0 * p0 + l1 * p1 + l2 * p2 + l3 * p3;
}

KernelTable kernel_table_from_symbol(const Vec& k_grid, const CVec& values,
                                     Real dr_target) {
  if (values.size() != k_grid.size())
    throw std::invalid_argument("kernel_table_from_symbol: size mismatch");
  const Real dk = uniform_step(k_grid, "kernel_table_from_symbol");
  require_symmetric(k_grid, "kernel_table_from_symbol");
  const Index n = k_grid.size();

  Index n_pad = next_pow2(std::max<Index>(
      2 * n, static_cast<Index>(std::ceil(2.0 * pi / (dk * dr_target)))));

  // no mean subtraction: for a decaying symbol the window mean carries
  // exactly the G(0) content, and the transform values at r near 0 feed the
  // trace formula
  KernelTable t;
  t.n = n_pad;
  t.dr = 2.0 * pi / (static_cast<Real>(n_pad) * dk);
  t.g = fourier_sum_table(k_grid, values, n_pad);
  CVec vp(n);
  for (Index j = 0; j < n; ++j) vp[j] = iu * k_grid[j] * values[j];
  t.gp = fourier_sum_table(k_grid, vp, n_pad);
  return t;
}

Complex KernelSource::point_g(Real r) const {
  Complex acc{0.0, 0.0};
  for (const auto& [kappa, c] : poles) acc += c * std::exp(-kappa * r);
  if (table) acc += table->eval(r - table_shift);
  return acc;
}

Complex KernelSource::point_gp(Real r) const {
  Complex acc{0.0, 0.0};
  for (const auto& [kappa, c] : poles) acc += -kappa * c * std::exp(-kappa * r);
  if (table) acc += table->eval_deriv(r - table_shift);
  return acc;
}

GaussRule half_line_rule(Real s_max, Index n_nodes, Index order) {
  const Index n_panels = std::max<Index>(1, (n_nodes + order / 2) / order);
  return composite_gauss_uniform(0.0, s_max, n_panels, order);
}

HankelSystem assemble_hankel(const KernelSource& src, const GaussRule& s_rule,
                             Real x, Real t) {
  const Index n = s_rule.nodes.size();
  HankelSystem sys;
  sys.s_nodes = s_rule.nodes;
  sys.s_weights = s_rule.weights;
  sys.x = x;
  sys.t = t;
  sys.basis_size = n;

  CMat kg = CMat::Zero(n, n), kgp = CMat::Zero(n, n);
  sys.g = CVec::Zero(n);
  sys.gp = CVec::Zero(n);
  sys.g0 = Complex(0.0, 0.0);
  sys.gp0 = Complex(0.0, 0.0);

  for (Index i = 0; i < n; ++i)
    for (Index j = i; j < n; ++j) {
      const Real r = s_rule.nodes[i] + s_rule.nodes[j];
      const Complex gv = src.point_g(r);
      const Complex gpv = src.point_gp(r);
      kg(i, j) = gv;
      kg(j, i) = gv;
      kgp(i, j) = gpv;
      kgp(j, i) = gpv;
    }
  for (Index i = 0; i < n; ++i) {
    sys.g[i] = src.point_g(s_rule.nodes[i]);
    sys.gp[i] = src.point_gp(s_rule.nodes[i]);
  }
  sys.g0 = src.point_g(0.0);
  sys.gp0 = src.point_gp(0.0);

  if (src.contour) {
    const CVec& lam = src.contour->nodes;
    if (src.density.size() != lam.size())
      throw std::invalid_argument("assemble_hankel: density does not match contour");
    const Index m_total = lam.size();
    const Index block = 8192;
    for (Index b0 = 0; b0 < m_total; b0 += block) {
      const Index bm = std::min(block, m_total - b0);
      CMat e(n, bm);
      for (Index i = 0; i < n; ++i)
        for (Index m = 0; m < bm; ++m)
          e(i, m) = std::exp(iu * lam[b0 + m] * s_rule.nodes[i]);
      CVec dens = src.density.segment(b0, bm);
      CVec densp(bm);
      for (Index m = 0; m < bm; ++m) densp[m] = iu * lam[b0 + m] * dens[m];
      kg.noalias() += e * dens.asDiagonal() * e.transpose();
      kgp.noalias() += e * densp.asDiagonal() * e.transpose();
      sys.g.noalias() += e * dens;
      sys.gp.noalias() += e * densp;
      sys.g0 += dens.sum();
      sys.gp0 += densp.sum();
    }
  }

  sys.herm_defect = kg.imag().cwiseAbs().maxCoeff();

  const Vec sq = s_rule.weights.cwiseSqrt();
  const Mat kgr = kg.real();
  const Mat kgpr = kgp.real();
  const Vec gr = sys.g.real();
  const Vec gpr = sys.gp.real();
  sys.iph = Mat::Identity(n, n);
  sys.iph.noalias() += sq.asDiagonal() * kgr * sq.asDiagonal();
  sys.hx = -2.0 * (sq.asDiagonal() * kgpr * sq.asDiagonal());
  const Real s2pi = std::sqrt(2.0 * pi);
  sys.rhs = -s2pi * sq.cwiseProduct(gr);
  sys.rhs_x = 2.0 * s2pi * sq.cwiseProduct(gpr);
  return sys;
}

HankelSystem hankel_from_symbol(const SymbolGrid& symbol, Index basis_size, Real s_max) {
  const KernelTable table = kernel_table_from_symbol(symbol.k_grid, symbol.phi);
  KernelSource src;
  src.table = &table;
  return assemble_hankel(src, half_line_rule(s_max, basis_size), symbol.x, symbol.t);
}

Real hankel_norm(const HankelSystem& sys) {
  Mat h = sys.iph - Mat::Identity(sys.iph.rows(), sys.iph.cols());
  Eigen::SelfAdjointEigenSolver<Mat> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

Real min_eig(const HankelSystem& sys) {
  Eigen::SelfAdjointEigenSolver<Mat> es(sys.iph, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

SolveResult solve_m(const HankelSystem& sys, Real alpha_floor) {
  const Real alpha = min_eig(sys);
  if (alpha < alpha_floor) {
    std::ostringstream os;
    os << "hankel solve: operator lost positivity, alpha = " << alpha << " < floor "
       << alpha_floor << " at x = " << sys.x << ", t = " << sys.t;
    throw std::runtime_error(os.str());
  }
  Eigen::LDLT<Mat> ldlt(sys.iph);
  Vec y = ldlt.solve(sys.rhs);
  const Real scale = sys.rhs.cwiseAbs().maxCoeff() + 1.0;
  const Real resid = (sys.iph * y - sys.rhs).cwiseAbs().maxCoeff();
  if (resid > 1e-10 * scale) {
    std::ostringstream os;
    os << "hankel solve at x=" << sys.x << ", t=" << sys.t
       << ": relative residual " << resid / scale
       << "; the operator data are too ill-conditioned at this point";
    throw std::runtime_error(os.str());
  }
  return {std::move(y), alpha};
}

Vec solve_dm_dx(const HankelSystem& sys, const Vec& y) {
  Eigen::LDLT<Mat> ldlt(sys.iph);
  return ldlt.solve((sys.rhs_x - sys.hx * y).eval());
}

Vec node_values(const HankelSystem& sys, const Vec& y) {
  return y.cwiseQuotient(sys.s_weights.cwiseSqrt());
}

Complex eval_upper(const HankelSystem& sys, const Vec& y, Complex lambda) {
  Complex acc{0.0, 0.0};
  for (Index i = 0; i < sys.s_nodes.size(); ++i)
    acc += std::sqrt(sys.s_weights[i]) * y[i] * std::exp(iu * lambda * sys.s_nodes[i]);
  return acc / std::sqrt(2.0 * pi);
}

CMat mt_hankel_matrix(const Vec& k_grid, const CVec& phi_values, Index n_basis) {
  if (phi_values.size() != k_grid.size())
    throw std::invalid_argument("mt_hankel_matrix: size mismatch");
  const Real dk = uniform_step(k_grid, "mt_hankel_matrix");
  const Index n = k_grid.size();
  const Index p_max = 2 * n_basis - 1;

  CVec acc(n), rho(n);
  for (Index j = 0; j < n; ++j) {
    const Complex kj(k_grid[j], 0.0);
    acc[j] = phi_values[j] / ((kj + iu) * (kj + iu));
    rho[j] = (kj - iu) / (kj + iu);
  }
  CVec gamma(p_max);
  for (Index p = 0; p < p_max; ++p) {
    gamma[p] = -(dk / pi) * acc.sum();
    acc = acc.cwiseProduct(rho);
  }
  CMat a(n_basis, n_basis);
  for (Index i = 0; i < n_basis; ++i)
    for (Index j = 0; j < n_basis; ++j) a(i, j) = gamma[i + j];
  return a;
}

Real mt_hankel_norm(const CMat& a) {
  Eigen::JacobiSVD<CMat> svd(a);
  return svd.singularValues()(0);
}

RefineResult refine_hankel_norm(const KernelSource& src, Real x, Real t, Real s_max,
                                Index start, Real tol, Index cap) {
  RefineResult out;
  Real prev = -1.0;
  for (Index n = start; n <= cap; n *= 2) {
    const HankelSystem sys = assemble_hankel(src, half_line_rule(s_max, n), x, t);
    out.norm = hankel_norm(sys);
    out.basis_size = sys.basis_size;
    out.history.push_back(out.norm);
    if (prev >= 0.0 && std::abs(out.norm - prev) < tol) {
      out.converged = true;
      break;
    }
    prev = out.norm;
  }
  return out;
}

} // namespace kdvist
