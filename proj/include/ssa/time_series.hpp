#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace ssa {

// Uniformly sampled real-valued signal.  With sample_rate 1.0 all
// frequencies are normalized (cycles per sample, Nyquist at 0.5).
struct TimeSeries {
  std::vector<double> samples;
  double sample_rate = 1.0;

  std::size_t size() const { return samples.size(); }
  double nyquist() const { return 0.5 * sample_rate; }
};

inline void validate(const TimeSeries& x) {
  if (x.samples.empty())
    throw std::invalid_argument("time series must hold at least one sample");
  if (!(x.sample_rate > 0.0) || !std::isfinite(x.sample_rate))
    throw std::invalid_argument("sample rate must be positive and finite");
  for (double v : x.samples)
    if (!std::isfinite(v))
      throw std::invalid_argument("time series contains non-finite samples");
}

}  // namespace ssa
