#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ssa/matrix.hpp"

// OpenMP kernels behind the public operations.  Each output element is
// computed entirely by one thread with a fixed inner summation order, so
// results are bit-identical to the serial twins in ssa::reference for any
// thread count.
namespace ssa::kernels {

// X * X^T for an M x K matrix, exactly symmetric by construction.
Matrix gram(const Matrix& x);

std::vector<double> autocorr(std::span<const double> x, std::size_t max_lag);

// One filter per eigenvector column of u: row m holds the 2M-1 symmetric
// taps conv(u_m, reverse(u_m)) / M, tap k stored at index M-1+k.
Matrix filter_bank(const Matrix& u);

// c[0] + sum_k 2 c[k] cos(k w_j) on the one-sided grid w_j = 2 pi j / nfft,
// j = 0..nfft/2.
std::vector<double> cosine_series_grid(std::span<const double> coeffs, std::size_t nfft);

// Row m: the response of taps row m on the one-sided grid (nfft/2+1 points).
Matrix response_grid(const Matrix& taps, std::size_t nfft);

// U^T X.
Matrix project(const Matrix& u, const Matrix& x);

// U diag(w) U^T X.
Matrix rank_one_reconstruct(const Matrix& u, std::span<const double> w, const Matrix& x);

std::vector<double> diag_average(const Matrix& xhat, bool divide_by_window);

// Row m: w[m] * (taps row m applied as a zero-phase FIR with zero padding
// outside [0, N-1]).
Matrix zero_phase_components(std::span<const double> x, const Matrix& taps,
                             std::span<const double> w);

// Row s: |FFT(window .* x[start_s .. start_s+L-1], nfft)|^2 one-sided,
// start_s = s * step.  nfft must be a power of two >= window length.
Matrix segment_periodograms(std::span<const double> x, std::size_t segment_length,
                            std::size_t step, std::span<const double> window,
                            std::size_t nfft);

}  // namespace ssa::kernels
