#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "ssa/filterbank.hpp"
#include "ssa/spectra.hpp"
#include "ssa/time_series.hpp"

namespace ssa {

// Ordered half-open [lo, hi) frequency intervals; overlapping bands are
// rejected so membership is a partition.
struct BandSpec {
  std::vector<std::pair<double, double>> bands;
};

void validate(const BandSpec& spec);

struct GroupedComponents {
  std::vector<std::vector<double>> band_signals;  // one per band, length N
  std::vector<double> leftover;                   // components outside all bands
  std::vector<std::vector<std::size_t>> members;  // component indices per band
  std::vector<std::size_t> leftover_members;
};

// Component m joins band b iff lo <= peak_m < hi; everything unassigned is
// summed into the leftover.  Empty bands yield zero signals.
GroupedComponents group_components(const ComponentSet& components,
                                   std::span<const double> peak_frequencies,
                                   const BandSpec& bands);

struct EigenvalueRatio {
  double ratio = 1.0;  // lambda_max / lambda_min, >= 1
  bool clamped = false;
};

// Dynamic range of the segment's correlation-matrix eigenvalues.  A
// non-positive smallest eigenvalue clamps the denominator to
// eps * lambda_max and sets the flag; an all-zero segment reports ratio 1,
// flagged.
EigenvalueRatio eigenvalue_ratio(const TimeSeries& segment, std::size_t window,
                                 CorrelationMode mode);

struct SegmentReading {
  std::size_t index = 0;
  double ratio = 1.0;
  double ratio_db = 0.0;
  bool occupied = false;
  bool clamped = false;
  std::optional<SpectrumEstimate> spectrum;  // peak-ordered, when emitted
};

struct SenseOptions {
  std::size_t segment_length = 0;
  std::size_t window = 0;  // M
  double threshold = 0.0;  // occupied iff ratio > threshold
  CorrelationMode mode = CorrelationMode::Toeplitz;
  bool emit_spectra = false;
  std::size_t nfft = 4096;
};

struct SensingReport {
  std::vector<SegmentReading> segments;
  SenseOptions options;
};

// Splits x into floor(N / segment_length) segments (tail remainder dropped)
// and reports the eigenvalue ratio and occupancy decision per segment.
// Segments are processed in parallel; the report is ordered by index.
SensingReport sense(const TimeSeries& x, const SenseOptions& options);

// Geometric mean of the two class medians of labeled calibration ratios.
double calibrate_threshold(std::span<const double> ratios,
                           std::span<const std::uint8_t> occupied_labels);

}  // namespace ssa
