// Timing comparison of the OpenMP kernels against the serial reference
// implementations, plus a whole-pipeline sensing run.

#include <omp.h>

#include <cstdio>
#include <functional>
#include <vector>

#include "ssa/applications.hpp"
#include "ssa/kernels.hpp"
#include "ssa/reference.hpp"
#include "ssa/rng.hpp"
#include "ssa/signalgen.hpp"
#include "ssa/spectra.hpp"

namespace {

std::vector<double> random_signal(std::size_t n, std::uint64_t seed) {
  ssa::GaussianSampler g(seed);
  std::vector<double> x(n);
  for (double& v : x) v = g.next();
  return x;
}

double time_best_of(int reps, const std::function<void()>& fn) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const double t0 = omp_get_wtime();
    fn();
    const double t1 = omp_get_wtime();
    if (t1 - t0 < best) best = t1 - t0;
  }
  return best;
}

void report(const char* name, double serial, double parallel) {
  std::printf("%-28s %10.4f ms %10.4f ms %8.2fx\n", name, serial * 1e3, parallel * 1e3,
              serial / parallel);
}

}  // namespace

int main() {
  std::printf("threads: %d\n", omp_get_max_threads());
  std::printf("%-28s %13s %13s %9s\n", "kernel", "serial", "openmp", "speedup");

  const int reps = 3;

  {
    const std::size_t n = 8192, m = 128;
    ssa::TimeSeries x{random_signal(n, 1), 1.0};
    const ssa::TrajectoryMatrix traj = ssa::embed(x, m);
    report("gram (N=8192, M=128)",
           time_best_of(reps, [&] { ssa::reference::gram(traj.entries); }),
           time_best_of(reps, [&] { ssa::kernels::gram(traj.entries); }));
  }

  {
    const std::size_t n = 1 << 16;
    const std::vector<double> x = random_signal(n, 2);
    report("autocorr (N=65536, 512 lags)",
           time_best_of(reps, [&] { ssa::reference::autocorr(x, 512); }),
           time_best_of(reps, [&] { ssa::kernels::autocorr(x, 512); }));
  }

  {
    const std::size_t m = 201;
    ssa::TimeSeries x{random_signal(4096, 3), 1.0};
    const ssa::EigenBasis basis =
        ssa::eig_sym(ssa::correlation_matrix(x, m, ssa::CorrelationMode::Toeplitz));
    const ssa::Matrix taps_ref = ssa::reference::filter_bank(basis.eigenvectors);
    report("filter_bank (M=201)",
           time_best_of(reps, [&] { ssa::reference::filter_bank(basis.eigenvectors); }),
           time_best_of(reps, [&] { ssa::kernels::filter_bank(basis.eigenvectors); }));
    report("response_grid (M=201, 4096)",
           time_best_of(reps, [&] { ssa::reference::response_grid(taps_ref, 4096); }),
           time_best_of(reps, [&] { ssa::kernels::response_grid(taps_ref, 4096); }));

    const std::vector<double> w(m, 1.0);
    report("components (N=4096, M=201)",
           time_best_of(reps,
                        [&] { ssa::reference::zero_phase_components(x.samples, taps_ref, w); }),
           time_best_of(reps,
                        [&] { ssa::kernels::zero_phase_components(x.samples, taps_ref, w); }));
  }

  {
    const std::size_t n = 1 << 16, seg = 1024;
    const std::vector<double> x = random_signal(n, 4);
    const std::vector<double> w =
        ssa::welch_window_values(ssa::WelchWindow::Hamming, seg);
    report("welch periodograms (N=2^16)",
           time_best_of(reps,
                        [&] { ssa::reference::segment_periodograms(x, seg, seg / 2, w, 2048); }),
           time_best_of(reps,
                        [&] { ssa::kernels::segment_periodograms(x, seg, seg / 2, w, 2048); }));
  }

  {
    // whole pipeline: 20 segments of the LTE-shaped sensing fixture
    ssa::GenSpec spec;
    spec.kind = ssa::GenKind::ToneBursts;
    spec.tones = {{2.0, 0.2}};
    spec.noise_sigma = 1.0;
    spec.seed = 7;
    spec.burst_length = 5000;
    spec.occupancy.assign(20, 0);
    for (std::size_t s = 1; s < 20; s += 2) spec.occupancy[s] = 1;
    const ssa::TimeSeries x = ssa::generate(spec);

    ssa::SenseOptions opt;
    opt.segment_length = 5000;
    opt.window = 100;
    opt.threshold = 10.0;
    const double t0 = omp_get_wtime();
    const ssa::SensingReport rep = ssa::sense(x, opt);
    const double t1 = omp_get_wtime();
    std::printf("%-28s %10.4f ms (%zu segments, OpenMP over segments)\n",
                "sense (20 x N=5000, M=100)", (t1 - t0) * 1e3, rep.segments.size());
  }

  return 0;
}
