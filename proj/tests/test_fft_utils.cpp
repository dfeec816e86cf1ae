#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <kdvist/fft_utils.hpp>

#include <random>

using namespace kdvist;

namespace {

// direct DFT, the oracle for the engine-backed transforms
CVec dft_direct(const CVec& v) {
  const Index n = v.size();
  CVec out = CVec::Zero(n);
  for (Index m = 0; m < n; ++m)
    for (Index j = 0; j < n; ++j)
      out[m] += v[j] * std::exp(Complex(0.0, -2.0 * pi * j * m / static_cast<Real>(n)));
  return out;
}

CVec random_cvec(Index n, unsigned seed) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<Real> dist(-1.0, 1.0);
  CVec v(n);
  for (Index j = 0; j < n; ++j) v[j] = Complex(dist(gen), dist(gen));
  return v;
}

} // namespace

TEST_CASE("fft matches the direct DFT") {
  const CVec v = random_cvec(64, 7u);
  const CVec got = fft(v);
  const CVec want = dft_direct(v);
  CHECK((got - want).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("ifft inverts fft") {
  const CVec v = random_cvec(128, 11u);
  CHECK((ifft(fft(v)) - v).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("next_pow2") {
  CHECK(next_pow2(1) == 1);
  CHECK(next_pow2(2) == 2);
  CHECK(next_pow2(3) == 4);
  CHECK(next_pow2(1025) == 2048);
}

TEST_CASE("midpoint grid is symmetric with uniform step") {
  const Vec k = midpoint_grid(5.0, 0.25);
  CHECK(k.size() == 40);
  for (Index j = 0; j < k.size(); ++j) CHECK(k[j] == doctest::Approx(-k[k.size() - 1 - j]));
  for (Index j = 1; j < k.size(); ++j)
    CHECK(k[j] - k[j - 1] == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(k[k.size() - 1] == doctest::Approx(5.0 - 0.125));
}

TEST_CASE("fourier_sum_table equals the direct sum, positive and negative r") {
  const Real dk = 0.5;
  const Vec k = midpoint_grid(4.0, dk);
  const CVec v = random_cvec(k.size(), 3u);
  const Index n_pad = 64;
  const CVec table = fourier_sum_table(k, v, n_pad);
  REQUIRE(table.size() == n_pad);

  const Real dr = 2.0 * pi / (n_pad * dk);
  for (Index m : {Index(0), Index(1), Index(5), Index(31), Index(33), Index(63)}) {
    const Real r = m < n_pad / 2 ? dr * m : dr * (m - n_pad);
    Complex want{0.0, 0.0};
    for (Index j = 0; j < k.size(); ++j)
      want += v[j] * std::exp(Complex(0.0, k[j] * r));
    want *= dk / (2.0 * pi);
    CHECK(std::abs(table[m] - want) < 1e-12);
  }
}

TEST_CASE("fourier_sum_table of a decaying pole symbol approximates the exponential") {
  // phi(k) = -i c / (k - i kappa) has transform c e^{-kappa r} on r > 0. The
  // finite-window artifact is the tail integral of (c/pi) sin(k r)/k past
  // k_max, bounded by 2 c / (pi k_max r) per bin
  const Real c = 1.4, kappa = 0.8, k_max = 200.0, dk = 0.02;
  const Vec k = midpoint_grid(k_max, dk);
  CVec v(k.size());
  for (Index j = 0; j < k.size(); ++j) v[j] = -iu * c / (Complex(k[j], 0.0) - iu * kappa);
  const Index n_pad = next_pow2(4 * k.size());
  const CVec table = fourier_sum_table(k, v, n_pad);
  const Real dr = 2.0 * pi / (n_pad * dk);
  for (Index m : {Index(40), Index(200), Index(800)}) {
    const Real r = dr * m;
    CHECK(std::abs(table[m] - c * std::exp(-kappa * r)) < 2.0 * c / (k_max * r));
  }
}

TEST_CASE("fourier_sum_table rejects a non-uniform grid") {
  Vec k(4);
  k << -1.0, -0.3, 0.3, 1.0;
  CHECK_THROWS(fourier_sum_table(k, CVec::Ones(4), 16));
}
