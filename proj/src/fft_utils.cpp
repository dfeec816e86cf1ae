#include <kdvist/fft_utils.hpp>

#include <stdexcept>
#include <unsupported/Eigen/FFT>

namespace kdvist {

CVec fft(const CVec& in) {
  Eigen::FFT<Real> engine;
  CVec out(in.size());
  engine.fwd(out, in);
  return out;
}

CVec ifft(const CVec& in) {
  Eigen::FFT<Real> engine;
  CVec out(in.size());
  engine.inv(out, in);
  return out;
}

Index next_pow2(Index n) {
  Index p = 1;
  while (p < n) p <<= 1;
  return p;
}

Vec midpoint_grid(Real k_max, Real dk) {
  const Index half = static_cast<Index>(std::llround(k_max / dk));
  if (half < 1) throw std::invalid_argument("midpoint_grid: k_max < dk");
  const Index n = 2 * half;
  Vec k(n);
  for (Index j = 0; j < n; ++j) k[j] = (static_cast<Real>(j - half) + 0.5) * dk;
  return k;
}

CVec fourier_sum_table(const Vec& k_grid, const CVec& v, Index n_pad) {
  const Index n = k_grid.size();
  if (v.size() != n) throw std::invalid_argument("fourier_sum_table: size mismatch");
  if (n < 2) throw std::invalid_argument("fourier_sum_table: need at least 2 samples");
  const Real dk = k_grid[1] - k_grid[0];
  for (Index j = 1; j < n; ++j)
    if (std::abs((k_grid[j] - k_grid[j - 1]) - dk) > 1e-9 * std::abs(dk))
      throw std::invalid_argument("fourier_sum_table: grid not uniform");
  if (n_pad < n) throw std::invalid_argument("fourier_sum_table: n_pad < n");

  CVec padded = CVec::Zero(n_pad);
  padded.head(n) = v;
  // sum_j v_j exp(+2pi i j m / n_pad) = n_pad * ifft(padded)[m]
  CVec sums = ifft(padded) * static_cast<Real>(n_pad);

  const Real k0 = k_grid[0];
  const Real dr = 2.0 * pi / (static_cast<Real>(n_pad) * dk);
  CVec out(n_pad);
  for (Index m = 0; m < n_pad; ++m) {
    // r_m aliases to negative values past the half period
    const Real r = (m <= n_pad / 2) ? m * dr : (m - n_pad) * dr;
    out[m] = (dk / (2.0 * pi)) * std::exp(Complex(0.0, k0 * r)) * sums[m];
  }
  return out;
}

} // namespace kdvist
