#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ssa/filterbank.hpp"
#include "ssa/time_series.hpp"

namespace ssa {

enum class Estimator { AutocorrDft, EigenSpectrum, Welch };
enum class WelchWindow { Hamming, Hann, Rectangular };

struct SpectrumEstimate {
  std::vector<double> frequencies;  // ascending (EigenSpectrum: non-decreasing)
  std::vector<double> powers;
  Estimator estimator = Estimator::AutocorrDft;
  // metadata
  std::size_t window = 0;          // M for AutocorrDft / EigenSpectrum
  std::size_t segment_length = 0;  // Welch
  double overlap = 0.0;            // Welch
  std::string window_name;         // Welch
};

// DFT of the raw autocorrelation sums: S(w_k) = r[0] + sum 2 r[m] cos(m w_k)
// on the one-sided nfft grid.  Finite-window leakage can make values
// slightly negative; they are reported as-is.
SpectrumEstimate autocorr_psd(const TimeSeries& x, std::size_t window, std::size_t nfft);

// (peak frequency, eigenvalue) pairs in ascending-frequency order; powers
// are exactly the model eigenvalues.
SpectrumEstimate eigen_spectrum(const SsaModel& model);

// Averaged periodogram over overlapping windowed segments, one-sided density
// scaling: total one-sided power (sum of powers times fs/nfft) matches the
// signal variance for white noise.
SpectrumEstimate welch_psd(const TimeSeries& x, std::size_t segment_length,
                           double overlap, std::size_t nfft,
                           WelchWindow window = WelchWindow::Hamming);

const char* welch_window_name(WelchWindow window);
std::vector<double> welch_window_values(WelchWindow window, std::size_t length);

}  // namespace ssa
