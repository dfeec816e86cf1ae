#pragma once

#include <kdvist/types.hpp>

namespace kdvist {

// forward DFT: out[m] = sum_j in[j] exp(-2*pi*i*j*m/N)
CVec fft(const CVec& in);

// inverse DFT: out[j] = (1/N) sum_m in[m] exp(+2*pi*i*j*m/N)
CVec ifft(const CVec& in);

Index next_pow2(Index n);

// Uniform symmetric midpoint grid k_j = (j - N/2 + 1/2) dk, j = 0..N-1.
Vec midpoint_grid(Real k_max, Real dk);

// Fourier sums G(r_m) = (dk/2pi) sum_j v_j exp(i k_j r_m) on the uniform
// r-grid r_m = 2 pi m / (n_pad dk), m = 0..n_pad-1 (m beyond n_pad/2 aliases
// to negative r). k_grid must be uniform; v is zero-padded to n_pad.
CVec fourier_sum_table(const Vec& k_grid, const CVec& v, Index n_pad);

} // namespace kdvist
