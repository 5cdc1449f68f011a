// End-to-end checks of the command-line tool: exit codes, file contracts,
// and rerun determinism.  SSA_CLI_PATH is injected by the build.

#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
  const std::string cmd = std::string(SSA_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "ssa_cli_test" / name;
  fs::remove_all(dir);
  fs::create_directories(dir.parent_path());
  return dir;
}

std::vector<std::vector<double>> read_csv(const fs::path& path,
                                          std::vector<std::string>* header = nullptr) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::string line;
  REQUIRE(std::getline(in, line));
  std::vector<std::string> head;
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) head.push_back(cell);
  }
  if (header) *header = head;
  std::vector<std::vector<double>> columns(head.size());
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::size_t j = 0;
    while (std::getline(ss, cell, ',')) columns.at(j++).push_back(std::stod(cell));
    REQUIRE(j == head.size());
  }
  return columns;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("decompose writes components whose sums reproduce the input") {
  const fs::path dir = fresh_dir("decompose");
  CHECK(run("decompose --gen sinemix --amps 2,4 --freqs 0.1,0.4 --sigma 1 --n 512 "
            "--seed 1 --M 30 --out " + dir.string()) == 0);
  CHECK(fs::exists(dir / "manifest.json"));
  CHECK(fs::exists(dir / "model.json"));

  const fs::path sig = fresh_dir("decompose_sig");
  CHECK(run("gen --gen sinemix --amps 2,4 --freqs 0.1,0.4 --sigma 1 --n 512 --seed 1 "
            "--out " + sig.string()) == 0);
  std::ifstream in(sig / "signal.csv");
  std::string line;
  std::getline(in, line);  // header
  std::vector<double> x;
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '#') x.push_back(std::stod(line));
  REQUIRE(x.size() == 512);

  const auto columns = read_csv(dir / "components.csv");
  REQUIRE(columns.size() == 31);  // index + 30 components
  REQUIRE(columns[0].size() == 512);
  for (std::size_t n = 29; n < 512 - 29; ++n) {
    double acc = 0.0;
    for (std::size_t c = 1; c < columns.size(); ++c) acc += columns[c][n];
    CHECK(std::abs(acc - x[n]) <= 1e-9 * std::max(1.0, std::abs(x[n])));
  }
}

TEST_CASE("invalid dimensions exit 2 and leave no partial files") {
  const fs::path dir = fresh_dir("invalid");
  CHECK(run("decompose --gen whitenoise --sigma 1 --n 16 --M 17 --out " + dir.string()) == 2);
  CHECK(!fs::exists(dir / "model.json"));
  CHECK(!fs::exists(dir / "components.csv"));
  CHECK(!fs::exists(dir / "manifest.json"));
}

TEST_CASE("a delta input splits into components that sum to the delta") {
  const fs::path sig = fresh_dir("delta_sig");
  fs::create_directories(sig);
  {
    std::ofstream out(sig / "delta.csv");
    out << "1\n0\n0\n0\n0\n0\n0\n0\n0\n0\n0\n0\n";
  }
  const fs::path dir = fresh_dir("delta");
  CHECK(run("decompose --input " + (sig / "delta.csv").string() +
            " --M 4 --out " + dir.string()) == 0);
  const auto columns = read_csv(dir / "components.csv");
  REQUIRE(columns.size() == 5);
  for (std::size_t n = 3; n < 12 - 3; ++n) {
    double acc = 0.0;
    for (std::size_t c = 1; c < 5; ++c) acc += columns[c][n];
    CHECK(std::abs(acc - (n == 0 ? 1.0 : 0.0)) <= 1e-10);
  }
}

TEST_CASE("spectrum emits one file per estimator with the stated shapes") {
  const fs::path dir = fresh_dir("spectrum");
  CHECK(run("spectrum --gen sinemix --amps 2,4 --freqs 0.1,0.4 --sigma 1 --n 1024 "
            "--seed 2 --M 30 --seg-len 256 --out " + dir.string()) == 0);

  const auto eigen = read_csv(dir / "spectrum_eigen.csv");
  REQUIRE(eigen.size() == 2);
  CHECK(eigen[0].size() == 30);
  for (std::size_t i = 1; i < 30; ++i) CHECK(eigen[0][i] >= eigen[0][i - 1]);

  CHECK(fs::exists(dir / "spectrum_autocorr.csv"));
  CHECK(fs::exists(dir / "spectrum_welch.csv"));
}

TEST_CASE("autocorr spectrum of a delta is a constant column") {
  const fs::path sig = fresh_dir("delta2_sig");
  fs::create_directories(sig);
  {
    std::ofstream out(sig / "delta.csv");
    out << "1\n";
    for (int i = 0; i < 31; ++i) out << "0\n";
  }
  const fs::path dir = fresh_dir("delta2");
  CHECK(run("spectrum --input " + (sig / "delta.csv").string() +
            " --estimators autocorr --M 8 --out " + dir.string()) == 0);
  const auto ac = read_csv(dir / "spectrum_autocorr.csv");
  for (double p : ac[1]) CHECK(p == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("sense matches the generating mask at a calibrated threshold") {
  const fs::path dir = fresh_dir("sense");
  const std::string mask = "0101010101";
  CHECK(run("sense --gen tonebursts --freqs 0.2 --amps 2 --sigma 1 --seed 3 "
            "--burst-len 2000 --mask " + mask +
            " --M 50 --segment-len 2000 --calibrate-mask " + mask +
            " --emit-spectra --out " + dir.string()) == 0);

  const auto report = read_csv(dir / "report.csv");
  REQUIRE(report.size() == 4);
  REQUIRE(report[0].size() == 10);
  for (std::size_t s = 0; s < 10; ++s)
    CHECK(report[3][s] == (mask[s] == '1' ? 1.0 : 0.0));

  // one eigen-spectrum per segment
  for (std::size_t s = 0; s < 10; ++s) {
    char name[64];
    std::snprintf(name, sizeof(name), "segment_%04zu_spectrum.csv", s);
    CHECK(fs::exists(dir / name));
  }
}

TEST_CASE("sense without threshold or calibration labels exits 2") {
  const fs::path dir = fresh_dir("sense_nothr");
  CHECK(run("sense --gen whitenoise --sigma 1 --n 4000 --M 20 --segment-len 1000 "
            "--out " + dir.string()) == 2);
  CHECK(!fs::exists(dir / "report.csv"));
}

TEST_CASE("group writes band signals equal to the reconstruction for full cover") {
  const fs::path dir = fresh_dir("group");
  CHECK(run("group --gen sinemix --amps 1 --freqs 0.1 --sigma 0.5 --n 400 --seed 4 "
            "--M 12 --bands 0:0.51 --out " + dir.string()) == 0);
  const auto grouped = read_csv(dir / "grouped.csv");
  REQUIRE(grouped.size() == 3);  // index, band_1, leftover
  for (double v : grouped[2]) CHECK(v == 0.0);

  const fs::path dec = fresh_dir("group_ref");
  CHECK(run("decompose --gen sinemix --amps 1 --freqs 0.1 --sigma 0.5 --n 400 --seed 4 "
            "--M 12 --out " + dec.string()) == 0);
  const auto comps = read_csv(dec / "components.csv");
  for (std::size_t n = 0; n < 400; ++n) {
    double acc = 0.0;
    for (std::size_t c = 1; c < comps.size(); ++c) acc += comps[c][n];
    CHECK(std::abs(grouped[1][n] - acc) <= 1e-12 * std::max(1.0, std::abs(acc)));
  }
}

TEST_CASE("overlapping bands exit 2") {
  const fs::path dir = fresh_dir("group_bad");
  CHECK(run("group --gen whitenoise --sigma 1 --n 200 --M 8 --bands 0:0.2,0.1:0.3 "
            "--out " + dir.string()) == 2);
  CHECK(!fs::exists(dir / "grouped.csv"));
}

TEST_CASE("reruns with identical parameters produce identical bytes") {
  const fs::path a = fresh_dir("rerun_a"), b = fresh_dir("rerun_b");
  const std::string args =
      "decompose --gen sinemix --amps 2,4 --freqs 0.1,0.4 --sigma 1 --n 256 --seed 5 "
      "--M 10 --out ";
  CHECK(run(args + a.string()) == 0);
  CHECK(run(args + b.string()) == 0);
  for (const char* name : {"model.json", "components.csv"})
    CHECK(slurp(a / name) == slurp(b / name));
}

TEST_CASE("gen writes signals that read back losslessly in both formats") {
  const fs::path a = fresh_dir("gen_csv");
  CHECK(run("gen --gen whitenoise --sigma 1 --n 64 --seed 6 --fs 1000 --format csv "
            "--out " + a.string()) == 0);
  CHECK(fs::exists(a / "signal.csv"));
  CHECK(fs::exists(a / "manifest.json"));

  const fs::path b = fresh_dir("gen_f64");
  CHECK(run("gen --gen whitenoise --sigma 1 --n 64 --seed 6 --fs 1000 --format f64 "
            "--out " + b.string()) == 0);
  CHECK(fs::exists(b / "signal.f64"));
  CHECK(fs::exists(b / "signal.f64.meta.json"));

  // both formats must decompose to byte-identical outputs
  const fs::path da = fresh_dir("gen_csv_dec"), db = fresh_dir("gen_f64_dec");
  CHECK(run("decompose --input " + (a / "signal.csv").string() + " --M 6 --out " +
            da.string()) == 0);
  CHECK(run("decompose --input " + (b / "signal.f64").string() + " --M 6 --out " +
            db.string()) == 0);
  CHECK(slurp(da / "components.csv") == slurp(db / "components.csv"));
}

TEST_CASE("weight specs keep the strongest components by eigenvalue") {
  const fs::path dir = fresh_dir("weights_top");
  CHECK(run("decompose --gen sinemix --amps 2,4 --freqs 0.1,0.4 --sigma 0.5 --n 400 "
            "--seed 7 --M 12 --weights topL=4 --out " + dir.string()) == 0);
  const auto columns = read_csv(dir / "components.csv");
  std::size_t nonzero_columns = 0;
  for (std::size_t c = 1; c < columns.size(); ++c) {
    bool any = false;
    for (double v : columns[c])
      if (v != 0.0) any = true;
    nonzero_columns += any;
  }
  CHECK(nonzero_columns == 4);

  const fs::path noise = fresh_dir("weights_noise");
  CHECK(run("decompose --gen sinemix --amps 2,4 --freqs 0.1,0.4 --sigma 0.5 --n 400 "
            "--seed 7 --M 12 --weights noise=4 --out " + noise.string()) == 0);
  CHECK(fs::exists(noise / "components.csv"));

  const fs::path bad = fresh_dir("weights_bad");
  CHECK(run("decompose --gen whitenoise --sigma 1 --n 100 --M 8 --weights noise=9 "
            "--out " + bad.string()) == 2);
}

TEST_CASE("estimator subsets, windows, modes, and orderings are accepted") {
  const fs::path dir = fresh_dir("variants");
  CHECK(run("spectrum --gen whitenoise --sigma 1 --n 2048 --seed 8 --M 16 "
            "--estimators welch --seg-len 256 --window hann --overlap 0.25 "
            "--out " + dir.string()) == 0);
  CHECK(fs::exists(dir / "spectrum_welch.csv"));
  CHECK(!fs::exists(dir / "spectrum_autocorr.csv"));
  CHECK(!fs::exists(dir / "spectrum_eigen.csv"));

  const fs::path dir2 = fresh_dir("variants2");
  CHECK(run("decompose --gen whitenoise --sigma 1 --n 256 --seed 8 --M 8 "
            "--mode embedding --order eigenvalue --out " + dir2.string()) == 0);
  const std::string model = slurp(dir2 / "model.json");
  CHECK(model.find("\"mode\": \"embedding\"") != std::string::npos);
  CHECK(model.find("\"ordering\": \"eigenvalue\"") != std::string::npos);

  CHECK(run("spectrum --gen whitenoise --sigma 1 --n 256 --seed 8 --M 8 "
            "--estimators fourier --out " + fresh_dir("variants3").string()) == 2);
  CHECK(run("spectrum --gen whitenoise --sigma 1 --n 256 --seed 8 --M 8 "
            "--estimators welch --seg-len 256 --window blackman --out " +
            fresh_dir("variants4").string()) == 2);
}

TEST_CASE("unknown flags and missing subcommands exit 2") {
  CHECK(run("decompose --does-not-exist") == 2);
  CHECK(run("") == 2);
}
