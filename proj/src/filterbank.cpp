#include "ssa/filterbank.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ssa/kernels.hpp"

namespace ssa {

Matrix SsaModel::taps_matrix() const {
  Matrix taps(filters.size(), 2 * window - 1);
  for (std::size_t m = 0; m < filters.size(); ++m) {
    if (filters[m].coefficients.size() != 2 * window - 1)
      throw std::invalid_argument("filter length does not match the model window");
    std::copy(filters[m].coefficients.begin(), filters[m].coefficients.end(),
              taps.row(m).begin());
  }
  return taps;
}

std::pair<std::size_t, std::size_t> ComponentSet::interior() const {
  const std::size_t n = length();
  const std::size_t begin = window - 1;
  const std::size_t end = (n + 1 >= window) ? (n + 1 - window) : 0;  // N-M+1
  if (begin >= end) return {0, 0};
  return {begin, end};
}

std::vector<double> ComponentSet::sum() const {
  std::vector<double> acc(length(), 0.0);
  for (const auto& c : components)
    for (std::size_t n = 0; n < acc.size(); ++n) acc[n] += c[n];
  return acc;
}

ComponentFilter filter_coefficients(std::span<const double> eigenvector) {
  if (eigenvector.empty()) throw std::invalid_argument("eigenvector must be non-empty");
  Matrix u(eigenvector.size(), 1);
  for (std::size_t i = 0; i < eigenvector.size(); ++i) u(i, 0) = eigenvector[i];
  const Matrix taps = kernels::filter_bank(u);
  ComponentFilter f;
  f.coefficients.assign(taps.row(0).begin(), taps.row(0).end());
  return f;
}

FrequencyResponse frequency_response(const ComponentFilter& filter, std::size_t nfft,
                                     double sample_rate) {
  const std::size_t m = filter.window();
  const std::span<const double> half{filter.coefficients.data() + (m - 1), m};
  FrequencyResponse resp;
  resp.values = kernels::cosine_series_grid(half, nfft);
  resp.sample_rate = sample_rate;
  resp.frequencies.resize(resp.values.size());
  for (std::size_t j = 0; j < resp.frequencies.size(); ++j)
    resp.frequencies[j] =
        sample_rate * static_cast<double>(j) / static_cast<double>(nfft);
  return resp;
}

double peak_frequency(const FrequencyResponse& response) {
  if (response.values.empty()) throw std::invalid_argument("empty frequency response");
  std::size_t arg = 0;
  double best = std::abs(response.values[0]);
  for (std::size_t j = 1; j < response.values.size(); ++j) {
    const double cand = std::abs(response.values[j]);
    if (cand > best) {  // ties keep the lowest frequency
      best = cand;
      arg = j;
    }
  }
  return response.frequencies[arg];
}

SsaModel build_model(const TimeSeries& x, std::size_t window, CorrelationMode mode,
                     Ordering ordering, std::size_t nfft) {
  const CorrelationMatrix r = correlation_matrix(x, window, mode);
  const EigenBasis basis = eig_sym(r);
  const Matrix taps = kernels::filter_bank(basis.eigenvectors);
  const Matrix resp = kernels::response_grid(taps, nfft);

  const std::size_t m = window;
  std::vector<double> peaks(m);
  for (std::size_t c = 0; c < m; ++c) {
    std::size_t arg = 0;
    double best = std::abs(resp(c, 0));
    for (std::size_t j = 1; j < resp.cols(); ++j) {
      const double cand = std::abs(resp(c, j));
      if (cand > best) {
        best = cand;
        arg = j;
      }
    }
    peaks[c] = x.sample_rate * static_cast<double>(arg) / static_cast<double>(nfft);
  }

  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  if (ordering == Ordering::ByPeakFrequency) {
    // ascending peak; ties by descending eigenvalue so dominant components
    // lead within a band
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (peaks[a] != peaks[b]) return peaks[a] < peaks[b];
      return basis.eigenvalues[a] > basis.eigenvalues[b];
    });
  }

  SsaModel model;
  model.ordering = ordering;
  model.mode = mode;
  model.window = m;
  model.signal_length = x.size();
  model.nfft = nfft;
  model.sample_rate = x.sample_rate;
  model.eigenvalues.resize(m);
  model.eigenvectors = Matrix(m, m);
  model.filters.resize(m);
  model.peak_frequencies.resize(m);
  for (std::size_t c = 0; c < m; ++c) {
    const std::size_t src = order[c];
    model.eigenvalues[c] = basis.eigenvalues[src];
    for (std::size_t i = 0; i < m; ++i)
      model.eigenvectors(i, c) = basis.eigenvectors(i, src);
    model.filters[c].coefficients.assign(taps.row(src).begin(), taps.row(src).end());
    model.peak_frequencies[c] = peaks[src];
  }
  return model;
}

ComponentSet extract_components(const TimeSeries& x, const SsaModel& model,
                                const WeightVector& weights) {
  validate(x);
  if (x.size() != model.signal_length)
    throw std::invalid_argument("signal length does not match the model");
  if (weights.size() != model.window)
    throw std::invalid_argument("weight count must match the model window");

  const Matrix taps = model.taps_matrix();
  const Matrix comp = kernels::zero_phase_components(x.samples, taps, weights.weights);

  ComponentSet set;
  set.window = model.window;
  set.sample_rate = x.sample_rate;
  set.weights = weights.weights;
  set.components.resize(model.window);
  for (std::size_t m = 0; m < model.window; ++m)
    set.components[m].assign(comp.row(m).begin(), comp.row(m).end());
  return set;
}

}  // namespace ssa
