#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ssa/matrix.hpp"

// Serial reference implementations of the kernels in ssa::kernels, kept for
// testing and benchmarking.  Same contracts, same summation order, plain
// loops, no OpenMP; the test suite asserts bit-identical outputs.
namespace ssa::reference {

Matrix gram(const Matrix& x);

std::vector<double> autocorr(std::span<const double> x, std::size_t max_lag);

Matrix filter_bank(const Matrix& u);

std::vector<double> cosine_series_grid(std::span<const double> coeffs, std::size_t nfft);

Matrix response_grid(const Matrix& taps, std::size_t nfft);

Matrix project(const Matrix& u, const Matrix& x);

Matrix rank_one_reconstruct(const Matrix& u, std::span<const double> w, const Matrix& x);

std::vector<double> diag_average(const Matrix& xhat, bool divide_by_window);

Matrix zero_phase_components(std::span<const double> x, const Matrix& taps,
                             std::span<const double> w);

Matrix segment_periodograms(std::span<const double> x, std::size_t segment_length,
                            std::size_t step, std::span<const double> window,
                            std::size_t nfft);

}  // namespace ssa::reference
