#include <kdvist/quadrature.hpp>

#include <stdexcept>

namespace kdvist {

GaussRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  if (n == 1) {
    GaussRule r;
    r.nodes = Vec::Zero(1);
    r.weights = Vec::Constant(1, 2.0);
    return r;
  }
  // Jacobi matrix for Legendre polynomials: zero diagonal,
  // off-diagonal beta_j = j / sqrt(4j^2 - 1)
  Mat J = Mat::Zero(n, n);
  for (int j = 1; j < n; ++j) {
    Real b = j / std::sqrt(4.0 * j * j - 1.0);
    J(j, j - 1) = b;
    J(j - 1, j) = b;
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(J);
  GaussRule r;
  r.nodes = es.eigenvalues();
  r.weights = 2.0 * es.eigenvectors().row(0).array().square();
  return r;
}

GaussRule composite_gauss(const Vec& edges, int p) {
  if (edges.size() < 2) throw std::invalid_argument("composite_gauss: need >= 2 edges");
  GaussRule base = gauss_legendre(p);
  Index n_panels = edges.size() - 1;
  GaussRule r;
  r.nodes.resize(n_panels * p);
  r.weights.resize(n_panels * p);
  for (Index i = 0; i < n_panels; ++i) {
    Real lo = edges[i], hi = edges[i + 1];
    if (!(hi > lo)) throw std::invalid_argument("composite_gauss: edges not increasing");
    Real h2 = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
    for (int j = 0; j < p; ++j) {
      r.nodes[i * p + j] = mid + h2 * base.nodes[j];
      r.weights[i * p + j] = h2 * base.weights[j];
    }
  }
  return r;
}

GaussRule composite_gauss_uniform(Real a, Real b, int n_panels, int p) {
  Vec edges = Vec::LinSpaced(n_panels + 1, a, b);
  return composite_gauss(edges, p);
}

} // namespace kdvist
