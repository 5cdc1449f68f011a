#include "ssa/io.hpp"

#include <bit>
#include <charconv>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <system_error>

#include <nlohmann/json.hpp>

#include "ssa/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "binary signal files are defined as little-endian");

namespace ssa::io {

namespace {

using nlohmann::json;

std::filesystem::path temp_name(const std::filesystem::path& path) {
  return path.string() + ".tmp";
}

void rename_into_place(const std::filesystem::path& tmp,
                       const std::filesystem::path& path) {
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw io_error("cannot move " + tmp.string() + " to " + path.string());
  }
}

bool is_binary_signal(const std::filesystem::path& path) {
  return path.extension() == ".f64";
}

std::filesystem::path sidecar_path(const std::filesystem::path& path) {
  return path.string() + ".meta.json";
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_text_atomic(const std::filesystem::path& path, const std::string& text) {
  write_bytes_atomic(path, text.data(), text.size());
}

void write_bytes_atomic(const std::filesystem::path& path, const void* data,
                        std::size_t size) {
  const std::filesystem::path tmp = temp_name(path);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("cannot open " + tmp.string() + " for writing");
    out.write(static_cast<const char*>(data), static_cast<std::streamsize>(size));
    if (!out) throw io_error("short write to " + tmp.string());
  }
  rename_into_place(tmp, path);
}

TimeSeries read_signal(const std::filesystem::path& path) {
  if (is_binary_signal(path)) {
    std::ifstream meta(sidecar_path(path));
    if (!meta) throw io_error("missing sidecar " + sidecar_path(path).string());
    json j;
    try {
      meta >> j;
    } catch (const json::exception& e) {
      throw io_error("bad sidecar " + sidecar_path(path).string() + ": " + e.what());
    }
    const auto samples = j.at("samples").get<std::size_t>();
    TimeSeries x;
    x.sample_rate = j.at("sample_rate").get<double>();
    x.samples.resize(samples);
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open " + path.string());
    in.read(reinterpret_cast<char*>(x.samples.data()),
            static_cast<std::streamsize>(samples * sizeof(double)));
    if (in.gcount() != static_cast<std::streamsize>(samples * sizeof(double)))
      throw io_error("truncated signal file " + path.string());
    return x;
  }

  std::ifstream in(path);
  if (!in) throw io_error("cannot open " + path.string());
  TimeSeries x;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto pos = line.find("sample_rate=");
      if (pos != std::string::npos) x.sample_rate = std::stod(line.substr(pos + 12));
      continue;
    }
    try {
      x.samples.push_back(std::stod(line));
    } catch (const std::exception&) {
      throw io_error(path.string() + ":" + std::to_string(lineno) +
                     ": not a number: " + line);
    }
  }
  if (x.samples.empty()) throw io_error(path.string() + ": no samples");
  return x;
}

void write_signal(const std::filesystem::path& path, const TimeSeries& x) {
  if (is_binary_signal(path)) {
    write_bytes_atomic(path, x.samples.data(), x.samples.size() * sizeof(double));
    json j;
    j["samples"] = x.samples.size();
    j["sample_rate"] = x.sample_rate;
    write_text_atomic(sidecar_path(path), j.dump(2) + "\n");
    return;
  }
  std::string text;
  text.reserve(x.samples.size() * 20 + 32);
  text += "# sample_rate=" + format_double(x.sample_rate) + "\n";
  for (double v : x.samples) {
    text += format_double(v);
    text += '\n';
  }
  write_text_atomic(path, text);
}

void write_csv(const std::filesystem::path& path,
               const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns) {
  if (header.size() != columns.size())
    throw std::invalid_argument("header and column counts disagree");
  const std::size_t rows = columns.empty() ? 0 : columns[0].size();
  for (const auto& c : columns)
    if (c.size() != rows) throw std::invalid_argument("columns must have equal length");

  std::string text;
  for (std::size_t j = 0; j < header.size(); ++j) {
    if (j) text += ',';
    text += header[j];
  }
  text += '\n';
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (j) text += ',';
      text += format_double(columns[j][i]);
    }
    text += '\n';
  }
  write_text_atomic(path, text);
}

}  // namespace ssa::io
