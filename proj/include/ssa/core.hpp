#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ssa/matrix.hpp"
#include "ssa/time_series.hpp"

namespace ssa {

enum class CorrelationMode { Embedding, Toeplitz };

// Divisor used when collapsing the diagonals of a reconstructed trajectory
// matrix: Mean divides by the number of entries actually present on the
// diagonal, FilterBank always divides by M (zero-padding semantics, the
// exact counterpart of the zero-phase convolution path).
enum class AveragingMode { Mean, FilterBank };

// M x K matrix of lagged windows, K = N - M + 1.  Row 0 holds x[M-1..N-1],
// row M-1 holds x[0..N-M]; every descending diagonal is constant.
struct TrajectoryMatrix {
  Matrix entries;
  std::size_t window = 0;  // M

  std::size_t columns() const { return entries.cols(); }  // K
};

struct CorrelationMatrix {
  Matrix entries;  // M x M, symmetric
  CorrelationMode mode = CorrelationMode::Toeplitz;

  std::size_t size() const { return entries.rows(); }
};

// Symmetric eigendecomposition.  Eigenvalues are non-increasing, eigenvector
// columns orthonormal, and each column's largest-magnitude entry is positive
// (ties broken toward the earliest index) so results are reproducible.
struct EigenBasis {
  std::vector<double> eigenvalues;
  Matrix eigenvectors;  // column m is u_m

  std::size_t size() const { return eigenvalues.size(); }
};

// Per-component reconstruction weights p_mm in [0, 1].
struct WeightVector {
  std::vector<double> weights;

  static WeightVector ones(std::size_t m);
  static WeightVector top(std::size_t m, std::size_t retained);  // binary

  std::size_t size() const { return weights.size(); }
};

TrajectoryMatrix embed(const TimeSeries& x, std::size_t window);

// Raw (non-normalized) autocorrelation sums r[0..max_lag],
// r[m] = sum_n x[n] x[n+m].
std::vector<double> autocorrelation(const TimeSeries& x, std::size_t max_lag);

CorrelationMatrix correlation_matrix(const TimeSeries& x, std::size_t window,
                                     CorrelationMode mode);

// Cyclic Jacobi with fixed sweep order; converges when the off-diagonal
// Frobenius norm drops below 1e-12 of its initial value, capped at 100
// sweeps (numeric_error beyond that).  Deterministic: repeated calls give
// bit-identical output.
EigenBasis eig_sym(const CorrelationMatrix& r);

// Projections Y, row m = u_m^T X.
Matrix project(const TrajectoryMatrix& x, const EigenBasis& basis);

// Noise-floor weights p_m = sqrt(1 - eta/lambda_m) for the first `retained`
// components, eta = mean of the discarded eigenvalues; retained == M makes
// eta 0 and every weight 1.  Retained eigenvalues at or below eta clamp to 0.
WeightVector noise_weights(std::span<const double> eigenvalues, std::size_t retained);

// X_hat = sum_m u_m p_m u_m^T X.
Matrix reconstruct_matrix(const EigenBasis& basis, const WeightVector& weights,
                          const TrajectoryMatrix& x);

TimeSeries diagonal_average(const Matrix& xhat, AveragingMode mode,
                            double sample_rate = 1.0);

}  // namespace ssa
