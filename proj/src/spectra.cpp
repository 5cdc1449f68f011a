#include "ssa/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "ssa/core.hpp"
#include "ssa/kernels.hpp"

namespace ssa {

SpectrumEstimate autocorr_psd(const TimeSeries& x, std::size_t window, std::size_t nfft) {
  if (window == 0 || window > x.size())
    throw std::invalid_argument("embedding dimension must be in [1, N]");
  const std::vector<double> r = autocorrelation(x, window - 1);
  SpectrumEstimate est;
  est.estimator = Estimator::AutocorrDft;
  est.window = window;
  est.powers = kernels::cosine_series_grid(r, nfft);
  est.frequencies.resize(est.powers.size());
  for (std::size_t j = 0; j < est.frequencies.size(); ++j)
    est.frequencies[j] =
        x.sample_rate * static_cast<double>(j) / static_cast<double>(nfft);
  return est;
}

SpectrumEstimate eigen_spectrum(const SsaModel& model) {
  SpectrumEstimate est;
  est.estimator = Estimator::EigenSpectrum;
  est.window = model.window;
  if (model.ordering == Ordering::ByPeakFrequency) {
    est.frequencies = model.peak_frequencies;
    est.powers = model.eigenvalues;
    return est;
  }
  // reorder on the fly: ascending peak, ties by descending eigenvalue
  std::vector<std::size_t> order(model.window);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (model.peak_frequencies[a] != model.peak_frequencies[b])
      return model.peak_frequencies[a] < model.peak_frequencies[b];
    return model.eigenvalues[a] > model.eigenvalues[b];
  });
  est.frequencies.resize(model.window);
  est.powers.resize(model.window);
  for (std::size_t i = 0; i < model.window; ++i) {
    est.frequencies[i] = model.peak_frequencies[order[i]];
    est.powers[i] = model.eigenvalues[order[i]];
  }
  return est;
}

const char* welch_window_name(WelchWindow window) {
  switch (window) {
    case WelchWindow::Hamming: return "hamming";
    case WelchWindow::Hann: return "hann";
    case WelchWindow::Rectangular: return "rectangular";
  }
  return "unknown";
}

std::vector<double> welch_window_values(WelchWindow window, std::size_t length) {
  if (length == 0) throw std::invalid_argument("window length must be positive");
  std::vector<double> w(length, 1.0);
  if (length == 1) return w;
  const double denom = static_cast<double>(length - 1);
  for (std::size_t n = 0; n < length; ++n) {
    const double phase = 2.0 * std::numbers::pi * static_cast<double>(n) / denom;
    switch (window) {
      case WelchWindow::Hamming: w[n] = 0.54 - 0.46 * std::cos(phase); break;
      case WelchWindow::Hann: w[n] = 0.5 - 0.5 * std::cos(phase); break;
      case WelchWindow::Rectangular: w[n] = 1.0; break;
    }
  }
  return w;
}

SpectrumEstimate welch_psd(const TimeSeries& x, std::size_t segment_length,
                           double overlap, std::size_t nfft, WelchWindow window) {
  validate(x);
  if (segment_length == 0 || segment_length > x.size())
    throw std::invalid_argument("segment length must be in [1, N]");
  if (!(overlap >= 0.0 && overlap < 1.0))
    throw std::invalid_argument("overlap fraction must be in [0, 1)");

  std::size_t step = segment_length -
      static_cast<std::size_t>(overlap * static_cast<double>(segment_length));
  if (step == 0) step = 1;

  const std::vector<double> w = welch_window_values(window, segment_length);
  const Matrix per = kernels::segment_periodograms(x.samples, segment_length, step,
                                                   w, nfft);

  double wss = 0.0;
  for (double v : w) wss += v * v;
  const double scale =
      1.0 / (x.sample_rate * wss * static_cast<double>(per.rows()));

  SpectrumEstimate est;
  est.estimator = Estimator::Welch;
  est.segment_length = segment_length;
  est.overlap = overlap;
  est.window_name = welch_window_name(window);
  est.powers.assign(per.cols(), 0.0);
  // fixed-order reduction over segments keeps the result reproducible
  for (std::size_t s = 0; s < per.rows(); ++s)
    for (std::size_t j = 0; j < per.cols(); ++j) est.powers[j] += per(s, j);
  for (std::size_t j = 0; j < per.cols(); ++j) {
    const bool edge = (j == 0) || (j == per.cols() - 1);
    est.powers[j] *= edge ? scale : 2.0 * scale;
  }
  est.frequencies.resize(per.cols());
  for (std::size_t j = 0; j < per.cols(); ++j)
    est.frequencies[j] =
        x.sample_rate * static_cast<double>(j) / static_cast<double>(nfft);
  return est;
}

}  // namespace ssa
