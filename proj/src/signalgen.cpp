#include "ssa/signalgen.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ssa/rng.hpp"

namespace ssa {

namespace {

void check_tones(const GenSpec& spec) {
  for (const Tone& t : spec.tones) {
    if (!(t.frequency >= 0.0) || t.frequency > 0.5 * spec.sample_rate)
      throw std::invalid_argument("tone frequency must lie in [0, sample_rate/2]");
    if (!std::isfinite(t.amplitude))
      throw std::invalid_argument("tone amplitude must be finite");
  }
}

// Phase is reduced modulo one cycle before scaling by 2*pi, which keeps
// tones with exactly representable cycle counts exactly periodic.
inline double tone_sample(const Tone& t, double cycles_per_sample, std::size_t n) {
  const double phase = std::fmod(cycles_per_sample * static_cast<double>(n), 1.0);
  return t.amplitude * std::sin(2.0 * std::numbers::pi * phase);
}

}  // namespace

TimeSeries generate(const GenSpec& spec) {
  if (!(spec.sample_rate > 0.0))
    throw std::invalid_argument("sample rate must be positive");
  if (!(spec.noise_sigma >= 0.0) || !std::isfinite(spec.noise_sigma))
    throw std::invalid_argument("noise sigma must be non-negative");
  check_tones(spec);

  TimeSeries x;
  x.sample_rate = spec.sample_rate;

  switch (spec.kind) {
    case GenKind::SineMix:
    case GenKind::WhiteNoise: {
      if (spec.length == 0) throw std::invalid_argument("length must be positive");
      x.samples.assign(spec.length, 0.0);
      if (spec.kind == GenKind::SineMix) {
        for (const Tone& t : spec.tones) {
          const double cps = t.frequency / spec.sample_rate;
          for (std::size_t n = 0; n < spec.length; ++n)
            x.samples[n] += tone_sample(t, cps, n);
        }
      }
      break;
    }
    case GenKind::ToneBursts: {
      if (spec.burst_length == 0)
        throw std::invalid_argument("burst length must be positive");
      if (spec.occupancy.empty())
        throw std::invalid_argument("occupancy mask must be non-empty");
      const std::size_t n = spec.burst_length * spec.occupancy.size();
      if (spec.length != 0 && spec.length != n)
        throw std::invalid_argument(
            "length must equal burst_length * occupancy size (or be 0)");
      x.samples.assign(n, 0.0);
      for (std::size_t s = 0; s < spec.occupancy.size(); ++s) {
        if (!spec.occupancy[s]) continue;
        const std::size_t start = s * spec.burst_length;
        for (const Tone& t : spec.tones) {
          const double cps = t.frequency / spec.sample_rate;
          // phase restarts at the segment boundary
          for (std::size_t i = 0; i < spec.burst_length; ++i)
            x.samples[start + i] += tone_sample(t, cps, i);
        }
      }
      break;
    }
  }

  if (spec.noise_sigma > 0.0) {
    GaussianSampler gauss(spec.seed);
    for (double& v : x.samples) v += spec.noise_sigma * gauss.next();
  }
  return x;
}

}  // namespace ssa
