#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "ssa/time_series.hpp"

namespace ssa::io {

// Shortest decimal representation that round-trips to the same double.
std::string format_double(double v);

// Write-to-temp-then-rename so readers never observe partial files.
void write_text_atomic(const std::filesystem::path& path, const std::string& text);
void write_bytes_atomic(const std::filesystem::path& path, const void* data,
                        std::size_t size);

// Signal files.  Paths ending in ".f64" are raw little-endian IEEE doubles
// with a "<path>.meta.json" sidecar carrying samples and sample_rate;
// anything else is text, one sample per line, with an optional
// "# sample_rate=..." header line.
TimeSeries read_signal(const std::filesystem::path& path);
void write_signal(const std::filesystem::path& path, const TimeSeries& x);

// CSV with a header row; columns all have equal length.
void write_csv(const std::filesystem::path& path,
               const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns);

}  // namespace ssa::io
