#include "ssa/core.hpp"

#include <cmath>
#include <stdexcept>

#include "ssa/kernels.hpp"

namespace ssa {

WeightVector WeightVector::ones(std::size_t m) {
  return {std::vector<double>(m, 1.0)};
}

WeightVector WeightVector::top(std::size_t m, std::size_t retained) {
  if (retained > m) throw std::invalid_argument("retained count exceeds component count");
  WeightVector w{std::vector<double>(m, 0.0)};
  for (std::size_t i = 0; i < retained; ++i) w.weights[i] = 1.0;
  return w;
}

TrajectoryMatrix embed(const TimeSeries& x, std::size_t window) {
  validate(x);
  const std::size_t n = x.size();
  if (window == 0 || window > n)
    throw std::invalid_argument("embedding dimension must be in [1, N]");
  const std::size_t k = n - window + 1;
  Matrix entries(window, k);
  for (std::size_t i = 0; i < window; ++i)
    for (std::size_t j = 0; j < k; ++j)
      entries(i, j) = x.samples[window - 1 - i + j];
  return {std::move(entries), window};
}

std::vector<double> autocorrelation(const TimeSeries& x, std::size_t max_lag) {
  validate(x);
  return kernels::autocorr(x.samples, max_lag);
}

CorrelationMatrix correlation_matrix(const TimeSeries& x, std::size_t window,
                                     CorrelationMode mode) {
  if (mode == CorrelationMode::Embedding) {
    const TrajectoryMatrix traj = embed(x, window);
    return {kernels::gram(traj.entries), mode};
  }
  validate(x);
  if (window == 0 || window > x.size())
    throw std::invalid_argument("embedding dimension must be in [1, N]");
  const std::vector<double> r = kernels::autocorr(x.samples, window - 1);
  Matrix entries(window, window);
  for (std::size_t i = 0; i < window; ++i)
    for (std::size_t j = 0; j < window; ++j)
      entries(i, j) = r[i > j ? i - j : j - i];
  return {std::move(entries), mode};
}

Matrix project(const TrajectoryMatrix& x, const EigenBasis& basis) {
  if (basis.eigenvectors.rows() != x.window)
    throw std::invalid_argument("basis dimension does not match the trajectory window");
  return kernels::project(basis.eigenvectors, x.entries);
}

WeightVector noise_weights(std::span<const double> eigenvalues, std::size_t retained) {
  const std::size_t m = eigenvalues.size();
  if (retained == 0 || retained > m)
    throw std::invalid_argument("retained count must be in [1, M]");
  for (std::size_t i = 1; i < m; ++i)
    if (eigenvalues[i] > eigenvalues[i - 1])
      throw std::invalid_argument("eigenvalues must be in descending order");

  double eta = 0.0;
  if (retained < m) {
    double acc = 0.0;
    for (std::size_t i = retained; i < m; ++i) acc += eigenvalues[i];
    eta = acc / static_cast<double>(m - retained);
  }

  WeightVector w{std::vector<double>(m, 0.0)};
  for (std::size_t i = 0; i < retained; ++i) {
    if (eta == 0.0)
      w.weights[i] = 1.0;
    else if (eigenvalues[i] > eta)
      w.weights[i] = std::sqrt(1.0 - eta / eigenvalues[i]);
  }
  return w;
}

Matrix reconstruct_matrix(const EigenBasis& basis, const WeightVector& weights,
                          const TrajectoryMatrix& x) {
  if (basis.eigenvectors.rows() != x.window)
    throw std::invalid_argument("basis dimension does not match the trajectory window");
  if (weights.size() != basis.size())
    throw std::invalid_argument("weight count must match the basis size");
  return kernels::rank_one_reconstruct(basis.eigenvectors, weights.weights, x.entries);
}

TimeSeries diagonal_average(const Matrix& xhat, AveragingMode mode, double sample_rate) {
  return {kernels::diag_average(xhat, mode == AveragingMode::FilterBank), sample_rate};
}

}  // namespace ssa
