#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace ssa {

constexpr bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// In-place iterative radix-2 FFT; a.size() must be a power of two.
void fft_pow2(std::vector<std::complex<double>>& a);

}  // namespace ssa
