// Command-line front end: signal generation and I/O, decomposition,
// spectrum estimation, band grouping, and eigenvalue-ratio sensing.
// Exit codes: 0 success, 2 usage/validation/I/O, 3 numeric failure.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ssa/applications.hpp"
#include "ssa/core.hpp"
#include "ssa/errors.hpp"
#include "ssa/filterbank.hpp"
#include "ssa/io.hpp"
#include "ssa/signalgen.hpp"
#include "ssa/spectra.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

// ---------------------------------------------------------------- options

struct InputFlags {
  std::string input_path;
  std::string gen_kind;
  std::vector<double> amps;
  std::vector<double> freqs;
  double sigma = 0.0;
  std::size_t length = 0;
  std::uint64_t seed = 0;
  std::size_t burst_length = 0;
  std::string mask;
  double fs = 0.0;  // 0: keep the file's rate (files default to 1)
};

struct PipelineFlags {
  std::size_t window = 0;  // M
  std::string mode = "toeplitz";
  std::string order = "peak";
  std::size_t nfft = 4096;
  std::string weights = "all";
};

void add_input_options(CLI::App* cmd, InputFlags& in, bool generator_only) {
  if (!generator_only) cmd->add_option("--input", in.input_path, "signal file (.f64 or text)");
  cmd->add_option("--gen", in.gen_kind, "generator kind: sinemix|whitenoise|tonebursts");
  cmd->add_option("--amps", in.amps, "tone amplitudes")->delimiter(',');
  cmd->add_option("--freqs", in.freqs, "tone frequencies")->delimiter(',');
  cmd->add_option("--sigma", in.sigma, "noise standard deviation");
  cmd->add_option("--n", in.length, "sample count");
  cmd->add_option("--seed", in.seed, "generator seed");
  cmd->add_option("--burst-len", in.burst_length, "tonebursts: samples per segment");
  cmd->add_option("--mask", in.mask, "tonebursts: occupancy mask, e.g. 010101");
  cmd->add_option("--fs", in.fs, "sample rate (overrides the input file's)");
}

void add_pipeline_options(CLI::App* cmd, PipelineFlags& p, bool with_order_weights) {
  cmd->add_option("--M", p.window, "embedding dimension / filter length")->required();
  cmd->add_option("--mode", p.mode, "correlation estimate: embedding|toeplitz");
  cmd->add_option("--nfft", p.nfft, "frequency grid size (even)");
  if (with_order_weights) {
    cmd->add_option("--order", p.order, "component ordering: eigenvalue|peak");
    cmd->add_option("--weights", p.weights, "all | topL=<k> | noise=<k>");
  }
}

std::vector<std::uint8_t> parse_mask(const std::string& mask) {
  std::vector<std::uint8_t> m;
  m.reserve(mask.size());
  for (char c : mask) {
    if (c == '0')
      m.push_back(0);
    else if (c == '1')
      m.push_back(1);
    else
      throw std::invalid_argument("mask must contain only 0 and 1");
  }
  return m;
}

ssa::GenSpec make_gen_spec(const InputFlags& in) {
  ssa::GenSpec spec;
  if (in.gen_kind == "sinemix")
    spec.kind = ssa::GenKind::SineMix;
  else if (in.gen_kind == "whitenoise")
    spec.kind = ssa::GenKind::WhiteNoise;
  else if (in.gen_kind == "tonebursts")
    spec.kind = ssa::GenKind::ToneBursts;
  else
    throw std::invalid_argument("unknown generator kind: " + in.gen_kind);

  if (!in.freqs.empty()) {
    std::vector<double> amps = in.amps;
    if (amps.empty()) amps.assign(in.freqs.size(), 1.0);
    if (amps.size() != in.freqs.size())
      throw std::invalid_argument("--amps and --freqs must have equal length");
    for (std::size_t i = 0; i < in.freqs.size(); ++i)
      spec.tones.push_back({amps[i], in.freqs[i]});
  } else if (!in.amps.empty()) {
    throw std::invalid_argument("--amps given without --freqs");
  }
  spec.noise_sigma = in.sigma;
  spec.length = in.length;
  spec.seed = in.seed;
  spec.sample_rate = (in.fs > 0.0) ? in.fs : 1.0;
  spec.burst_length = in.burst_length;
  if (!in.mask.empty()) spec.occupancy = parse_mask(in.mask);
  return spec;
}

ssa::TimeSeries resolve_input(const InputFlags& in, json& manifest) {
  if (!in.input_path.empty() && !in.gen_kind.empty())
    throw std::invalid_argument("--input and --gen are mutually exclusive");
  if (!in.input_path.empty()) {
    ssa::TimeSeries x = ssa::io::read_signal(in.input_path);
    if (in.fs > 0.0) x.sample_rate = in.fs;
    ssa::validate(x);
    manifest["input"] = {{"path", in.input_path},
                         {"samples", x.size()},
                         {"sample_rate", x.sample_rate}};
    return x;
  }
  if (in.gen_kind.empty())
    throw std::invalid_argument("one of --input or --gen is required");
  const ssa::GenSpec spec = make_gen_spec(in);
  ssa::TimeSeries x = ssa::generate(spec);
  json tones = json::array();
  for (const auto& t : spec.tones)
    tones.push_back({{"amplitude", t.amplitude}, {"frequency", t.frequency}});
  manifest["input"] = {{"generator", in.gen_kind}, {"tones", tones},
                       {"sigma", spec.noise_sigma}, {"n", x.size()},
                       {"seed", spec.seed}, {"sample_rate", spec.sample_rate}};
  if (spec.kind == ssa::GenKind::ToneBursts) {
    manifest["input"]["burst_length"] = spec.burst_length;
    manifest["input"]["mask"] = in.mask;
  }
  return x;
}

ssa::CorrelationMode parse_mode(const std::string& mode) {
  if (mode == "embedding") return ssa::CorrelationMode::Embedding;
  if (mode == "toeplitz") return ssa::CorrelationMode::Toeplitz;
  throw std::invalid_argument("mode must be embedding or toeplitz");
}

ssa::Ordering parse_order(const std::string& order) {
  if (order == "eigenvalue") return ssa::Ordering::ByEigenvalue;
  if (order == "peak") return ssa::Ordering::ByPeakFrequency;
  throw std::invalid_argument("order must be eigenvalue or peak");
}

// Weight specs rank components by eigenvalue regardless of the model's
// storage order, so topL/noise keep their meaning for peak-ordered models.
ssa::WeightVector parse_weights(const std::string& spec, const ssa::SsaModel& model) {
  const std::size_t m = model.window;
  if (spec == "all") return ssa::WeightVector::ones(m);

  auto parse_count = [&](const std::string& body) {
    std::size_t k = 0;
    try {
      k = static_cast<std::size_t>(std::stoull(body));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad weight count in --weights: " + body);
    }
    if (k == 0 || k > m) throw std::invalid_argument("weight count must be in [1, M]");
    return k;
  };

  std::vector<std::size_t> rank(m);  // rank[i] = component index of i-th largest
  std::iota(rank.begin(), rank.end(), 0);
  std::stable_sort(rank.begin(), rank.end(), [&](std::size_t a, std::size_t b) {
    return model.eigenvalues[a] > model.eigenvalues[b];
  });

  ssa::WeightVector w{std::vector<double>(m, 0.0)};
  if (spec.rfind("topL=", 0) == 0) {
    const std::size_t k = parse_count(spec.substr(5));
    for (std::size_t i = 0; i < k; ++i) w.weights[rank[i]] = 1.0;
    return w;
  }
  if (spec.rfind("noise=", 0) == 0) {
    const std::size_t k = parse_count(spec.substr(6));
    std::vector<double> sorted(m);
    for (std::size_t i = 0; i < m; ++i) sorted[i] = model.eigenvalues[rank[i]];
    const ssa::WeightVector descending = ssa::noise_weights(sorted, k);
    for (std::size_t i = 0; i < m; ++i) w.weights[rank[i]] = descending.weights[i];
    return w;
  }
  throw std::invalid_argument("--weights must be all, topL=<k>, or noise=<k>");
}

ssa::BandSpec parse_bands(const std::string& text) {
  ssa::BandSpec spec;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string item =
        text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    const std::size_t colon = item.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("band must look like lo:hi, got " + item);
    try {
      spec.bands.emplace_back(std::stod(item.substr(0, colon)),
                              std::stod(item.substr(colon + 1)));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad band edges: " + item);
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (spec.bands.empty()) throw std::invalid_argument("--bands must list at least one band");
  ssa::validate(spec);
  return spec;
}

// ---------------------------------------------------------------- outputs

const char* mode_name(ssa::CorrelationMode mode) {
  return mode == ssa::CorrelationMode::Embedding ? "embedding" : "toeplitz";
}

const char* order_name(ssa::Ordering o) {
  return o == ssa::Ordering::ByPeakFrequency ? "peak" : "eigenvalue";
}

json model_to_json(const ssa::SsaModel& model) {
  json j;
  j["M"] = model.window;
  j["N"] = model.signal_length;
  j["mode"] = mode_name(model.mode);
  j["ordering"] = order_name(model.ordering);
  j["nfft"] = model.nfft;
  j["sample_rate"] = model.sample_rate;
  j["eigenvalues"] = model.eigenvalues;
  j["peak_frequencies"] = model.peak_frequencies;
  return j;
}

void write_manifest(const fs::path& out_dir, json& manifest,
                    std::vector<std::string> outputs) {
  manifest["outputs"] = outputs;
  ssa::io::write_text_atomic(out_dir / "manifest.json", manifest.dump(2) + "\n");
}

void write_spectrum_file(const fs::path& path, const ssa::SpectrumEstimate& est) {
  ssa::io::write_csv(path, {"frequency", "power"}, {est.frequencies, est.powers});
}

fs::path prepare_out_dir(const std::string& out) {
  if (out.empty()) throw std::invalid_argument("--out is required");
  fs::path dir(out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ssa::io_error("cannot create output directory " + dir.string());
  return dir;
}

// ---------------------------------------------------------------- commands

int cmd_gen(const InputFlags& in, const std::string& out, const std::string& format) {
  if (in.gen_kind.empty()) throw std::invalid_argument("--gen is required");
  if (format != "csv" && format != "f64")
    throw std::invalid_argument("--format must be csv or f64");
  const fs::path dir = prepare_out_dir(out);

  json manifest;
  manifest["command"] = "gen";
  const ssa::TimeSeries x = resolve_input(in, manifest);
  manifest["parameters"] = {{"format", format}};
  const std::string name = (format == "csv") ? "signal.csv" : "signal.f64";
  ssa::io::write_signal(dir / name, x);

  std::vector<std::string> outputs{name};
  if (format == "f64") outputs.push_back(name + ".meta.json");
  write_manifest(dir, manifest, outputs);
  return 0;
}

int cmd_decompose(const InputFlags& in, const PipelineFlags& p, const std::string& out) {
  const fs::path dir = prepare_out_dir(out);

  json manifest;
  manifest["command"] = "decompose";
  const ssa::TimeSeries x = resolve_input(in, manifest);
  const ssa::SsaModel model =
      ssa::build_model(x, p.window, parse_mode(p.mode), parse_order(p.order), p.nfft);
  const ssa::WeightVector w = parse_weights(p.weights, model);
  const ssa::ComponentSet comps = ssa::extract_components(x, model, w);

  manifest["parameters"] = {{"M", p.window},     {"mode", p.mode},
                            {"order", p.order},  {"nfft", p.nfft},
                            {"weights", p.weights}, {"sample_rate", x.sample_rate}};

  json mj = model_to_json(model);
  mj["weights"] = w.weights;
  ssa::io::write_text_atomic(dir / "model.json", mj.dump(2) + "\n");

  std::vector<std::string> header{"index"};
  std::vector<std::vector<double>> columns;
  std::vector<double> index(x.size());
  std::iota(index.begin(), index.end(), 0.0);
  columns.push_back(std::move(index));
  for (std::size_t m = 0; m < comps.size(); ++m) {
    header.push_back("comp_" + std::to_string(m + 1));
    columns.push_back(comps.components[m]);
  }
  ssa::io::write_csv(dir / "components.csv", header, columns);

  write_manifest(dir, manifest, {"model.json", "components.csv"});
  return 0;
}

int cmd_spectrum(const InputFlags& in, const PipelineFlags& p,
                 const std::vector<std::string>& estimators, std::size_t seg_len,
                 double overlap, const std::string& window_name,
                 const std::string& out) {
  const fs::path dir = prepare_out_dir(out);

  json manifest;
  manifest["command"] = "spectrum";
  const ssa::TimeSeries x = resolve_input(in, manifest);
  manifest["parameters"] = {{"M", p.window},          {"mode", p.mode},
                            {"nfft", p.nfft},         {"estimators", estimators},
                            {"segment_length", seg_len}, {"overlap", overlap},
                            {"window", window_name},  {"sample_rate", x.sample_rate}};

  ssa::WelchWindow welch_window;
  if (window_name == "hamming")
    welch_window = ssa::WelchWindow::Hamming;
  else if (window_name == "hann")
    welch_window = ssa::WelchWindow::Hann;
  else if (window_name == "rectangular")
    welch_window = ssa::WelchWindow::Rectangular;
  else
    throw std::invalid_argument("--window must be hamming, hann, or rectangular");

  // compute everything first so that failures leave no partial output
  std::vector<std::pair<std::string, ssa::SpectrumEstimate>> results;
  for (const std::string& e : estimators) {
    if (e == "autocorr") {
      results.emplace_back(e, ssa::autocorr_psd(x, p.window, p.nfft));
    } else if (e == "eigen") {
      const ssa::SsaModel model = ssa::build_model(
          x, p.window, parse_mode(p.mode), ssa::Ordering::ByPeakFrequency, p.nfft);
      results.emplace_back(e, ssa::eigen_spectrum(model));
    } else if (e == "welch") {
      if (seg_len == 0) throw std::invalid_argument("--seg-len is required for welch");
      results.emplace_back(e, ssa::welch_psd(x, seg_len, overlap, p.nfft, welch_window));
    } else {
      throw std::invalid_argument("estimator must be autocorr, eigen, or welch");
    }
  }

  std::vector<std::string> outputs;
  for (const auto& [name, est] : results) {
    const std::string file = "spectrum_" + name + ".csv";
    write_spectrum_file(dir / file, est);
    outputs.push_back(file);
  }
  write_manifest(dir, manifest, outputs);
  return 0;
}

int cmd_sense(const InputFlags& in, const PipelineFlags& p, std::size_t seg_len,
              double threshold, const std::string& calibration_mask, bool emit_spectra,
              const std::string& out) {
  const fs::path dir = prepare_out_dir(out);

  json manifest;
  manifest["command"] = "sense";
  const ssa::TimeSeries x = resolve_input(in, manifest);

  if (threshold <= 0.0 && calibration_mask.empty())
    throw std::invalid_argument("either --threshold or --calibrate-mask is required");

  ssa::SenseOptions opt;
  opt.segment_length = seg_len;
  opt.window = p.window;
  opt.mode = parse_mode(p.mode);
  opt.emit_spectra = emit_spectra;
  opt.nfft = p.nfft;
  opt.threshold = (threshold > 0.0) ? threshold : 1.0;  // placeholder when calibrating

  ssa::SensingReport report = ssa::sense(x, opt);

  if (threshold <= 0.0) {
    const std::vector<std::uint8_t> labels = parse_mask(calibration_mask);
    if (labels.size() != report.segments.size())
      throw std::invalid_argument("calibration mask length must equal the segment count");
    std::vector<double> ratios(report.segments.size());
    for (std::size_t i = 0; i < ratios.size(); ++i) ratios[i] = report.segments[i].ratio;
    opt.threshold = ssa::calibrate_threshold(ratios, labels);
    report.options.threshold = opt.threshold;
    for (auto& seg : report.segments) seg.occupied = seg.ratio > opt.threshold;
  }

  manifest["parameters"] = {{"M", p.window},
                            {"mode", p.mode},
                            {"segment_length", seg_len},
                            {"threshold", opt.threshold},
                            {"calibrated", threshold <= 0.0},
                            {"emit_spectra", emit_spectra},
                            {"nfft", p.nfft},
                            {"segments", report.segments.size()},
                            {"sample_rate", x.sample_rate}};

  std::vector<double> index, ratio, ratio_db, occupied;
  for (const auto& seg : report.segments) {
    index.push_back(static_cast<double>(seg.index));
    ratio.push_back(seg.ratio);
    ratio_db.push_back(seg.ratio_db);
    occupied.push_back(seg.occupied ? 1.0 : 0.0);
  }
  ssa::io::write_csv(dir / "report.csv", {"segment", "ratio", "ratio_db", "occupied"},
                     {index, ratio, ratio_db, occupied});

  std::vector<std::string> outputs{"report.csv"};
  if (emit_spectra) {
    char name[64];
    for (const auto& seg : report.segments) {
      std::snprintf(name, sizeof(name), "segment_%04zu_spectrum.csv", seg.index);
      write_spectrum_file(dir / name, *seg.spectrum);
      outputs.emplace_back(name);
    }
  }
  write_manifest(dir, manifest, outputs);
  return 0;
}

int cmd_group(const InputFlags& in, const PipelineFlags& p, const std::string& bands_text,
              const std::string& out) {
  const fs::path dir = prepare_out_dir(out);

  json manifest;
  manifest["command"] = "group";
  const ssa::TimeSeries x = resolve_input(in, manifest);
  const ssa::BandSpec bands = parse_bands(bands_text);

  // grouping keys on filter peaks, so the model is always peak-ordered
  const ssa::SsaModel model = ssa::build_model(x, p.window, parse_mode(p.mode),
                                               ssa::Ordering::ByPeakFrequency, p.nfft);
  const ssa::WeightVector w = parse_weights(p.weights, model);
  const ssa::ComponentSet comps = ssa::extract_components(x, model, w);
  const ssa::GroupedComponents grouped =
      ssa::group_components(comps, model.peak_frequencies, bands);

  manifest["parameters"] = {{"M", p.window},       {"mode", p.mode},
                            {"nfft", p.nfft},      {"weights", p.weights},
                            {"bands", bands_text}, {"sample_rate", x.sample_rate}};

  std::vector<std::string> header{"index"};
  std::vector<std::vector<double>> columns;
  std::vector<double> index(x.size());
  std::iota(index.begin(), index.end(), 0.0);
  columns.push_back(std::move(index));
  for (std::size_t b = 0; b < grouped.band_signals.size(); ++b) {
    header.push_back("band_" + std::to_string(b + 1));
    columns.push_back(grouped.band_signals[b]);
  }
  header.push_back("leftover");
  columns.push_back(grouped.leftover);
  ssa::io::write_csv(dir / "grouped.csv", header, columns);

  json membership;
  membership["bands"] = json::array();
  for (std::size_t b = 0; b < bands.bands.size(); ++b) {
    membership["bands"].push_back({{"lo", bands.bands[b].first},
                                   {"hi", bands.bands[b].second},
                                   {"count", grouped.members[b].size()},
                                   {"members", grouped.members[b]}});
  }
  membership["leftover"] = {{"count", grouped.leftover_members.size()},
                            {"members", grouped.leftover_members}};
  ssa::io::write_text_atomic(dir / "membership.json", membership.dump(2) + "\n");

  write_manifest(dir, manifest, {"grouped.csv", "membership.json"});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Singular-spectrum filter-bank analysis"};
  app.require_subcommand(1);

  InputFlags in;
  PipelineFlags pipe;
  std::string out;
  std::string format = "csv";
  std::vector<std::string> estimators{"autocorr", "eigen", "welch"};
  std::size_t seg_len = 0;
  double overlap = 0.5;
  std::string window_name = "hamming";
  double threshold = 0.0;
  std::string calibration_mask;
  bool emit_spectra = false;
  std::string bands_text;

  CLI::App* gen = app.add_subcommand("gen", "generate a synthetic signal file");
  add_input_options(gen, in, true);
  gen->add_option("--format", format, "signal file format: csv|f64");
  gen->add_option("--out", out, "output directory")->required();

  CLI::App* decompose =
      app.add_subcommand("decompose", "eigen filter-bank decomposition into components");
  add_input_options(decompose, in, false);
  add_pipeline_options(decompose, pipe, true);
  decompose->add_option("--out", out, "output directory")->required();

  CLI::App* spectrum = app.add_subcommand("spectrum", "power-spectrum estimates");
  add_input_options(spectrum, in, false);
  add_pipeline_options(spectrum, pipe, false);
  spectrum->add_option("--estimators", estimators, "autocorr,eigen,welch")->delimiter(',');
  spectrum->add_option("--seg-len", seg_len, "welch segment length");
  spectrum->add_option("--overlap", overlap, "welch overlap fraction [0,1)");
  spectrum->add_option("--window", window_name, "welch window: hamming|hann|rectangular");
  spectrum->add_option("--out", out, "output directory")->required();

  CLI::App* sense = app.add_subcommand("sense", "segment-wise occupancy detection");
  add_input_options(sense, in, false);
  add_pipeline_options(sense, pipe, false);
  sense->add_option("--segment-len", seg_len, "samples per segment")->required();
  sense->add_option("--threshold", threshold, "occupancy ratio threshold");
  sense->add_option("--calibrate-mask", calibration_mask,
                    "ground-truth labels used to derive the threshold");
  sense->add_flag("--emit-spectra", emit_spectra, "write one eigen-spectrum per segment");
  sense->add_option("--out", out, "output directory")->required();

  CLI::App* group = app.add_subcommand("group", "band grouping of components");
  add_input_options(group, in, false);
  add_pipeline_options(group, pipe, true);
  group->add_option("--bands", bands_text, "half-open bands, lo:hi,lo:hi,...")->required();
  group->add_option("--out", out, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (gen->parsed()) return cmd_gen(in, out, format);
    if (decompose->parsed()) return cmd_decompose(in, pipe, out);
    if (spectrum->parsed())
      return cmd_spectrum(in, pipe, estimators, seg_len, overlap, window_name, out);
    if (sense->parsed())
      return cmd_sense(in, pipe, seg_len, threshold, calibration_mask, emit_spectra, out);
    if (group->parsed()) return cmd_group(in, pipe, bands_text, out);
  } catch (const ssa::numeric_error& e) {
    std::fprintf(stderr, "error: %s (after %zu iterations)\n", e.what(), e.iterations());
    return 3;
  } catch (const ssa::io_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 2;
}
