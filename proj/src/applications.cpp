#include "ssa/applications.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ssa/core.hpp"
#include "ssa/kernels.hpp"

namespace ssa {

void validate(const BandSpec& spec) {
  for (const auto& [lo, hi] : spec.bands) {
    if (!(lo < hi)) throw std::invalid_argument("band must satisfy lo < hi");
    if (lo < 0.0) throw std::invalid_argument("band edges must be non-negative");
  }
  std::vector<std::pair<double, double>> sorted = spec.bands;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i].first < sorted[i - 1].second)
      throw std::invalid_argument("bands must not overlap");
}

GroupedComponents group_components(const ComponentSet& components,
                                   std::span<const double> peak_frequencies,
                                   const BandSpec& bands) {
  validate(bands);
  if (peak_frequencies.size() != components.size())
    throw std::invalid_argument("peak count must match the component count");

  const std::size_t n = components.length();
  GroupedComponents out;
  out.band_signals.assign(bands.bands.size(), std::vector<double>(n, 0.0));
  out.leftover.assign(n, 0.0);
  out.members.resize(bands.bands.size());

  for (std::size_t m = 0; m < components.size(); ++m) {
    const double peak = peak_frequencies[m];
    bool assigned = false;
    for (std::size_t b = 0; b < bands.bands.size(); ++b) {
      if (peak >= bands.bands[b].first && peak < bands.bands[b].second) {
        out.members[b].push_back(m);
        for (std::size_t t = 0; t < n; ++t)
          out.band_signals[b][t] += components.components[m][t];
        assigned = true;
        break;
      }
    }
    if (!assigned) {
      out.leftover_members.push_back(m);
      for (std::size_t t = 0; t < n; ++t) out.leftover[t] += components.components[m][t];
    }
  }
  return out;
}

namespace {

// lambda_min at or below rounding level of lambda_max counts as numerically
// non-positive: the denominator clamps to eps * lambda_max and the reading
// is flagged.
EigenvalueRatio ratio_from_eigenvalues(std::span<const double> lambda) {
  const double top = lambda.front();
  const double bottom = lambda.back();
  if (top <= 0.0) return {1.0, true};  // all-zero segment
  const double floor = std::numeric_limits<double>::epsilon() * top;
  if (bottom <= floor) return {top / floor, true};
  return {top / bottom, false};
}

}  // namespace

EigenvalueRatio eigenvalue_ratio(const TimeSeries& segment, std::size_t window,
                                 CorrelationMode mode) {
  if (segment.size() < window)
    throw std::invalid_argument("segment must hold at least M samples");
  const EigenBasis basis = eig_sym(correlation_matrix(segment, window, mode));
  return ratio_from_eigenvalues(basis.eigenvalues);
}

SensingReport sense(const TimeSeries& x, const SenseOptions& options) {
  validate(x);
  if (options.segment_length == 0)
    throw std::invalid_argument("segment length must be positive");
  if (options.window == 0 || options.window > options.segment_length)
    throw std::invalid_argument("segment length must be at least M");
  if (!(options.threshold > 0.0))
    throw std::invalid_argument("threshold must be positive");

  const std::size_t count = x.size() / options.segment_length;  // tail dropped
  SensingReport report;
  report.options = options;
  report.segments.resize(count);

  const std::ptrdiff_t segs = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t s = 0; s < segs; ++s) {
    const std::size_t idx = static_cast<std::size_t>(s);
    TimeSeries segment;
    segment.sample_rate = x.sample_rate;
    const auto begin = x.samples.begin() +
        static_cast<std::ptrdiff_t>(idx * options.segment_length);
    segment.samples.assign(begin, begin + static_cast<std::ptrdiff_t>(options.segment_length));

    SegmentReading reading;
    reading.index = idx;
    if (options.emit_spectra) {
      const SsaModel model = build_model(segment, options.window, options.mode,
                                         Ordering::ByPeakFrequency, options.nfft);
      // eigenvalues ordered by peak: min/max still come from the multiset
      std::vector<double> lambda = model.eigenvalues;
      std::sort(lambda.begin(), lambda.end(), std::greater<>());
      const EigenvalueRatio r = ratio_from_eigenvalues(lambda);
      reading.ratio = r.ratio;
      reading.clamped = r.clamped;
      reading.spectrum = eigen_spectrum(model);
    } else {
      const EigenvalueRatio r = eigenvalue_ratio(segment, options.window, options.mode);
      reading.ratio = r.ratio;
      reading.clamped = r.clamped;
    }
    reading.ratio_db = 10.0 * std::log10(reading.ratio);
    reading.occupied = reading.ratio > options.threshold;
    report.segments[idx] = std::move(reading);
  }
  return report;
}

double calibrate_threshold(std::span<const double> ratios,
                           std::span<const std::uint8_t> occupied_labels) {
  if (ratios.size() != occupied_labels.size())
    throw std::invalid_argument("labels must match the ratio count");
  std::vector<double> idle, busy;
  for (std::size_t i = 0; i < ratios.size(); ++i)
    (occupied_labels[i] ? busy : idle).push_back(ratios[i]);
  if (idle.empty() || busy.empty())
    throw std::invalid_argument("calibration needs both occupied and idle samples");

  auto median = [](std::vector<double>& v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return (n % 2 == 1) ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
  };
  return std::sqrt(median(idle) * median(busy));
}

}  // namespace ssa
