#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ssa/core.hpp"
#include "ssa/matrix.hpp"
#include "ssa/time_series.hpp"

namespace ssa {

// Symmetric taps t_{-(M-1)} .. t_{M-1} of the cascaded analysis-synthesis
// branch built from one eigenvector; t_k == t_{-k} exactly by construction.
struct ComponentFilter {
  std::vector<double> coefficients;  // size 2M-1, tap k at index M-1+k

  std::size_t window() const { return (coefficients.size() + 1) / 2; }
  double tap(std::ptrdiff_t k) const {
    return coefficients[static_cast<std::size_t>(
        static_cast<std::ptrdiff_t>(window()) - 1 + k)];
  }
};

// Zero-phase response: values are real and may be negative.
struct FrequencyResponse {
  std::vector<double> frequencies;  // nfft/2+1 points in [0, fs/2]
  std::vector<double> values;
  double sample_rate = 1.0;
};

enum class Ordering { ByEigenvalue, ByPeakFrequency };

// The per-component quadruples (eigenvalue, eigenvector, filter, peak
// frequency) plus build metadata.  All four arrays share one ordering.
struct SsaModel {
  std::vector<double> eigenvalues;
  Matrix eigenvectors;  // column m matches eigenvalues[m]
  std::vector<ComponentFilter> filters;
  std::vector<double> peak_frequencies;
  Ordering ordering = Ordering::ByEigenvalue;
  CorrelationMode mode = CorrelationMode::Toeplitz;
  std::size_t window = 0;         // M
  std::size_t signal_length = 0;  // N
  std::size_t nfft = 0;           // grid used for peak localization
  double sample_rate = 1.0;

  Matrix taps_matrix() const;  // filters as rows, for the kernels
};

// Reconstructed per-component signals, in phase with the input.  Components
// are full length N with zero-padding transients; interior() is the
// transient-free range [M-1, N-M] as a half-open index pair.
struct ComponentSet {
  std::vector<std::vector<double>> components;  // M signals of length N
  std::vector<double> weights;                  // as applied
  std::size_t window = 0;
  double sample_rate = 1.0;

  std::size_t size() const { return components.size(); }
  std::size_t length() const { return components.empty() ? 0 : components[0].size(); }
  std::pair<std::size_t, std::size_t> interior() const;
  std::vector<double> sum() const;
};

// Taps t_k = (1/M) sum_i u_i u_{i-|k|}: the autocorrelation of the
// eigenvector divided by M.
ComponentFilter filter_coefficients(std::span<const double> eigenvector);

// T(w) = t_0 + sum_k 2 t_k cos(k w) on w_j = 2 pi j / nfft, j = 0..nfft/2.
// nfft must be even and >= 2M-1.
FrequencyResponse frequency_response(const ComponentFilter& filter, std::size_t nfft,
                                     double sample_rate = 1.0);

// Grid frequency maximizing |value|; ties resolve to the lowest frequency.
double peak_frequency(const FrequencyResponse& response);

SsaModel build_model(const TimeSeries& x, std::size_t window, CorrelationMode mode,
                     Ordering ordering, std::size_t nfft = 4096);

// x_hat_m[n] = p_m (sum_{k=0}^{M-1} t_k x[n-k] + sum_{k=1}^{M-1} t_k x[n+k])
// with x zero outside [0, N-1].
ComponentSet extract_components(const TimeSeries& x, const SsaModel& model,
                                const WeightVector& weights);

}  // namespace ssa
