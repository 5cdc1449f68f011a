#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ssa/time_series.hpp"

namespace ssa {

enum class GenKind { SineMix, WhiteNoise, ToneBursts };

struct Tone {
  double amplitude = 1.0;
  double frequency = 0.0;  // Hz (cycles per sample when sample_rate is 1)
};

// Deterministic synthetic-signal description: the seed fully determines the
// output (SplitMix64 + Box-Muller, see rng.hpp).
struct GenSpec {
  GenKind kind = GenKind::SineMix;
  std::vector<Tone> tones;
  double noise_sigma = 0.0;
  std::size_t length = 0;  // ToneBursts: burst_length * occupancy.size()
  std::uint64_t seed = 0;
  double sample_rate = 1.0;
  // ToneBursts only: tone present in segment s iff occupancy[s] != 0; tone
  // phase restarts at each segment boundary.
  std::size_t burst_length = 0;
  std::vector<std::uint8_t> occupancy;
};

TimeSeries generate(const GenSpec& spec);

}  // namespace ssa
