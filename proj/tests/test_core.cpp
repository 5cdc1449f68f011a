#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "ssa/core.hpp"
#include "ssa/errors.hpp"
#include "ssa/kernels.hpp"
#include "test_helpers.hpp"

using ssa::AveragingMode;
using ssa::CorrelationMatrix;
using ssa::CorrelationMode;
using ssa::Matrix;
using ssa::TimeSeries;

TEST_CASE("embed lays out lagged windows per the trajectory pattern") {
  const TimeSeries x{{1, 2, 3, 4, 5}, 1.0};
  const auto traj = ssa::embed(x, 2);
  REQUIRE(traj.entries.rows() == 2);
  REQUIRE(traj.entries.cols() == 4);
  const std::vector<double> row0{2, 3, 4, 5}, row1{1, 2, 3, 4};
  for (std::size_t j = 0; j < 4; ++j) {
    CHECK(traj.entries(0, j) == row0[j]);
    CHECK(traj.entries(1, j) == row1[j]);
  }
}

TEST_CASE("embed of a zero signal is a zero matrix") {
  const auto traj = ssa::embed({{0, 0, 0}, 1.0}, 2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) CHECK(traj.entries(i, j) == 0.0);
}

TEST_CASE("embed rejects invalid dimensions") {
  const TimeSeries x{{1, 2, 3}, 1.0};
  CHECK_THROWS_AS((void)ssa::embed(x, 4), std::invalid_argument);
  CHECK_THROWS_AS((void)ssa::embed(x, 0), std::invalid_argument);
}

TEST_CASE("every descending diagonal of a trajectory matrix is constant") {
  const TimeSeries x = testing::gaussian_signal(64, 11);
  const auto traj = ssa::embed(x, 8);
  const std::size_t m = traj.entries.rows(), k = traj.entries.cols();
  for (std::size_t i = 1; i < m; ++i)
    for (std::size_t j = 1; j < k; ++j)
      CHECK(traj.entries(i, j) == traj.entries(i - 1, j - 1));
}

TEST_CASE("autocorrelation raw sums on hand examples") {
  const auto r1 = ssa::autocorrelation({{1, 1, 1, 1}, 1.0}, 1);
  CHECK(r1 == std::vector<double>{4, 3});

  const auto r2 = ssa::autocorrelation({{1, -1, 1, -1}, 1.0}, 1);
  CHECK(r2 == std::vector<double>{4, -3});

  const auto r3 = ssa::autocorrelation({{1, 0, 0, 0}, 1.0}, 2);
  CHECK(r3 == std::vector<double>{1, 0, 0});

  CHECK_THROWS_AS((void)ssa::autocorrelation({{1, 2}, 1.0}, 2), std::invalid_argument);
}

TEST_CASE("toeplitz correlation matrix is filled from the lag sums") {
  // x = [1,1] has r = [2,1]
  const auto r = ssa::correlation_matrix({{1, 1}, 1.0}, 2, CorrelationMode::Toeplitz);
  CHECK(r.entries(0, 0) == 2.0);
  CHECK(r.entries(0, 1) == 1.0);
  CHECK(r.entries(1, 0) == 1.0);
  CHECK(r.entries(1, 1) == 2.0);
}

TEST_CASE("embedding correlation matrix is X X^T") {
  const auto r = ssa::correlation_matrix({{1, 2, 3}, 1.0}, 2, CorrelationMode::Embedding);
  CHECK(r.entries(0, 0) == 13.0);
  CHECK(r.entries(0, 1) == 8.0);
  CHECK(r.entries(1, 0) == 8.0);
  CHECK(r.entries(1, 1) == 5.0);
}

TEST_CASE("both correlation modes give symmetric PSD matrices") {
  const TimeSeries x = testing::gaussian_signal(256, 3);
  for (const auto mode : {CorrelationMode::Embedding, CorrelationMode::Toeplitz}) {
    const auto r = ssa::correlation_matrix(x, 16, mode);
    double trace = 0.0;
    for (std::size_t i = 0; i < 16; ++i) trace += r.entries(i, i);
    for (std::size_t i = 0; i < 16; ++i)
      for (std::size_t j = 0; j < 16; ++j)
        CHECK(std::abs(r.entries(i, j) - r.entries(j, i)) <= 1e-12 * trace);
    const auto basis = ssa::eig_sym(r);
    for (double lambda : basis.eigenvalues) CHECK(lambda >= -1e-9 * trace);
  }
}

TEST_CASE("eig_sym solves the analytic 2x2 with the sign convention") {
  CorrelationMatrix r{Matrix(2, 2), CorrelationMode::Toeplitz};
  r.entries(0, 0) = 2; r.entries(0, 1) = 1; r.entries(1, 0) = 1; r.entries(1, 1) = 2;
  const auto basis = ssa::eig_sym(r);
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(basis.eigenvalues[0] == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(basis.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(basis.eigenvectors(0, 0) == doctest::Approx(s).epsilon(1e-14));
  CHECK(basis.eigenvectors(1, 0) == doctest::Approx(s).epsilon(1e-14));
  // tie in magnitude resolves to the earliest index, which must be positive
  CHECK(basis.eigenvectors(0, 1) == doctest::Approx(s).epsilon(1e-14));
  CHECK(basis.eigenvectors(1, 1) == doctest::Approx(-s).epsilon(1e-14));
}

TEST_CASE("eig_sym of the identity returns unit eigenvalues") {
  CorrelationMatrix r{Matrix::identity(5), CorrelationMode::Toeplitz};
  const auto basis = ssa::eig_sym(r);
  for (double lambda : basis.eigenvalues) CHECK(lambda == 1.0);
}

TEST_CASE("eig_sym reconstructs a random symmetric matrix") {
  const std::size_t n = 20;
  ssa::GaussianSampler g(5);
  CorrelationMatrix r{Matrix(n, n), CorrelationMode::Toeplitz};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const double v = g.next();
      r.entries(i, j) = v;
      r.entries(j, i) = v;
    }
  const auto basis = ssa::eig_sym(r);

  // eigenvalues descending
  for (std::size_t i = 1; i < n; ++i)
    CHECK(basis.eigenvalues[i] <= basis.eigenvalues[i - 1]);

  // U Lambda U^T == R within 1e-10 relative Frobenius
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t c = 0; c < n; ++c)
        acc += basis.eigenvectors(i, c) * basis.eigenvalues[c] * basis.eigenvectors(j, c);
      const double d = acc - r.entries(i, j);
      num += d * d;
      den += r.entries(i, j) * r.entries(i, j);
    }
  CHECK(std::sqrt(num / den) <= 1e-10);

  // U^T U == I within 1e-10
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        acc += basis.eigenvectors(i, a) * basis.eigenvectors(i, b);
      CHECK(std::abs(acc - (a == b ? 1.0 : 0.0)) <= 1e-10);
    }
}

TEST_CASE("eig_sym is deterministic across calls") {
  const TimeSeries x = testing::gaussian_signal(128, 17);
  const auto r = ssa::correlation_matrix(x, 12, CorrelationMode::Embedding);
  const auto a = ssa::eig_sym(r);
  const auto b = ssa::eig_sym(r);
  CHECK(a.eigenvalues == b.eigenvalues);
  CHECK(a.eigenvectors == b.eigenvectors);
}

TEST_CASE("eig_sym rejects asymmetric input") {
  CorrelationMatrix r{Matrix(2, 2), CorrelationMode::Toeplitz};
  r.entries(0, 0) = 1; r.entries(0, 1) = 2; r.entries(1, 0) = 0; r.entries(1, 1) = 1;
  CHECK_THROWS_AS((void)ssa::eig_sym(r), std::invalid_argument);
}

TEST_CASE("projections pick rows for unit vectors and vanish on zero input") {
  const TimeSeries x{{1, 2, 3}, 1.0};
  const auto traj = ssa::embed(x, 2);
  ssa::EigenBasis basis;
  basis.eigenvalues = {1.0, 1.0};
  basis.eigenvectors = Matrix::identity(2);
  const Matrix y = ssa::project(traj, basis);
  CHECK(y(0, 0) == 2.0);
  CHECK(y(0, 1) == 3.0);
  CHECK(y(1, 0) == 1.0);
  CHECK(y(1, 1) == 2.0);

  const auto zero = ssa::embed({{0, 0, 0, 0}, 1.0}, 2);
  const Matrix yz = ssa::project(zero, basis);
  for (std::size_t i = 0; i < yz.rows(); ++i)
    for (std::size_t j = 0; j < yz.cols(); ++j) CHECK(yz(i, j) == 0.0);
}

TEST_CASE("embedding-mode projections are uncorrelated with energy lambda") {
  for (const std::size_t m : {4ul, 8ul, 16ul}) {
    const TimeSeries x = testing::gaussian_signal(512, 23 + m);
    const auto traj = ssa::embed(x, m);
    const auto r = ssa::correlation_matrix(x, m, CorrelationMode::Embedding);
    const auto basis = ssa::eig_sym(r);
    const Matrix y = ssa::project(traj, basis);
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = a; b < m; ++b) {
        double acc = 0.0;
        for (std::size_t k = 0; k < y.cols(); ++k) acc += y(a, k) * y(b, k);
        if (a == b)
          CHECK(std::abs(acc - basis.eigenvalues[a]) <= 1e-9 * basis.eigenvalues[0]);
        else
          CHECK(std::abs(acc) <=
                1e-8 * std::sqrt(basis.eigenvalues[a] * basis.eigenvalues[b]));
      }
  }
}

TEST_CASE("project and reconstruct reject mismatched dimensions") {
  const TimeSeries x = testing::gaussian_signal(64, 29);
  const auto traj = ssa::embed(x, 6);
  ssa::EigenBasis basis;
  basis.eigenvalues = {1, 1, 1, 1};
  basis.eigenvectors = Matrix::identity(4);
  CHECK_THROWS_AS((void)ssa::project(traj, basis), std::invalid_argument);
  CHECK_THROWS_AS(
      (void)ssa::reconstruct_matrix(basis, ssa::WeightVector::ones(4), traj),
      std::invalid_argument);
}

TEST_CASE("noise weights follow the discarded-eigenvalue mean") {
  const std::vector<double> lambda{4, 2, 1, 1};
  const auto w = ssa::noise_weights(lambda, 2);
  CHECK(w.weights[0] == doctest::Approx(std::sqrt(3.0 / 4.0)).epsilon(1e-15));
  CHECK(w.weights[1] == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
  CHECK(w.weights[2] == 0.0);
  CHECK(w.weights[3] == 0.0);

  const auto all = ssa::noise_weights(lambda, 4);
  CHECK(all.weights == std::vector<double>{1, 1, 1, 1});

  const auto clamped = ssa::noise_weights(std::vector<double>{1, 1, 1, 1}, 2);
  CHECK(clamped.weights == std::vector<double>{0, 0, 0, 0});

  CHECK_THROWS_AS((void)ssa::noise_weights(lambda, 0), std::invalid_argument);
  CHECK_THROWS_AS((void)ssa::noise_weights(lambda, 5), std::invalid_argument);
}

TEST_CASE("all-ones weights reproduce the trajectory matrix") {
  for (const auto mode : {CorrelationMode::Embedding, CorrelationMode::Toeplitz}) {
    const TimeSeries x = testing::gaussian_signal(200, 31);
    const auto traj = ssa::embed(x, 10);
    const auto basis = ssa::eig_sym(ssa::correlation_matrix(x, 10, mode));
    const Matrix xhat =
        ssa::reconstruct_matrix(basis, ssa::WeightVector::ones(10), traj);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < xhat.rows(); ++i)
      for (std::size_t j = 0; j < xhat.cols(); ++j) {
        const double d = xhat(i, j) - traj.entries(i, j);
        num += d * d;
        den += traj.entries(i, j) * traj.entries(i, j);
      }
    CHECK(std::sqrt(num / den) <= 1e-10);
  }
}

TEST_CASE("rank-one reconstruction of a DC signal needs one eigenvector") {
  const TimeSeries x{std::vector<double>(1024, 3.0), 1.0};
  const std::size_t m = 4;
  const auto traj = ssa::embed(x, m);
  const auto basis = ssa::eig_sym(ssa::correlation_matrix(x, m, CorrelationMode::Toeplitz));

  // the dominant eigenvector of the DC correlation matrix is near-uniform
  double lo = 1e300, hi = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    lo = std::min(lo, basis.eigenvectors(i, 0));
    hi = std::max(hi, basis.eigenvectors(i, 0));
  }
  CHECK(lo > 0.0);
  CHECK(lo >= 0.99 * hi);
  CHECK(basis.eigenvalues[1] <= 1e-3 * basis.eigenvalues[0]);

  const Matrix xhat = ssa::reconstruct_matrix(basis, ssa::WeightVector::top(m, 1), traj);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < xhat.rows(); ++i)
    for (std::size_t j = 0; j < xhat.cols(); ++j) {
      const double d = xhat(i, j) - traj.entries(i, j);
      num += d * d;
      den += traj.entries(i, j) * traj.entries(i, j);
    }
  CHECK(std::sqrt(num / den) <= 1e-2);
}

TEST_CASE("binary-weight reconstruction matches a brute-force triple loop") {
  const TimeSeries x = testing::gaussian_signal(96, 41);
  const std::size_t m = 6;
  const auto traj = ssa::embed(x, m);
  const auto basis = ssa::eig_sym(ssa::correlation_matrix(x, m, CorrelationMode::Embedding));
  ssa::WeightVector w{std::vector<double>{1, 0, 1, 1, 0, 1}};

  const Matrix got = ssa::reconstruct_matrix(basis, w, traj);

  // independent oracle: accumulate u_m u_m^T X term by term
  Matrix want(traj.entries.rows(), traj.entries.cols());
  for (std::size_t c = 0; c < m; ++c) {
    if (w.weights[c] == 0.0) continue;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t k = 0; k < traj.entries.cols(); ++k) {
        double dot = 0.0;
        for (std::size_t t = 0; t < m; ++t)
          dot += basis.eigenvectors(t, c) * traj.entries(t, k);
        want(i, k) += basis.eigenvectors(i, c) * dot;
      }
  }
  double worst = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < got.cols(); ++k) {
      worst = std::max(worst, std::abs(got(i, k) - want(i, k)));
      scale = std::max(scale, std::abs(want(i, k)));
    }
  CHECK(worst <= 1e-10 * std::max(1.0, scale));
}

TEST_CASE("diagonal averaging reproduces constant diagonals in both modes") {
  const TimeSeries x = testing::gaussian_signal(32, 43);
  const auto traj = ssa::embed(x, 5);
  for (const auto mode : {AveragingMode::Mean, AveragingMode::FilterBank}) {
    const auto back = ssa::diagonal_average(traj.entries, mode);
    REQUIRE(back.size() == x.size());
    // averaging k identical values rounds at the last bit, nothing more
    if (mode == AveragingMode::Mean) {
      for (std::size_t n = 0; n < x.size(); ++n)
        CHECK(back.samples[n] == doctest::Approx(x.samples[n]).epsilon(1e-14));
    } else {
      // FilterBank mode scales edge diagonals by count/M
      for (std::size_t n = 4; n + 4 < x.size(); ++n)
        CHECK(back.samples[n] == doctest::Approx(x.samples[n]).epsilon(1e-14));
    }
  }
}

TEST_CASE("diagonal averaging hand example distinguishes the two modes") {
  Matrix xhat(2, 2);
  xhat(0, 0) = 1; xhat(0, 1) = 2; xhat(1, 0) = 3; xhat(1, 1) = 4;
  const auto mean = ssa::diagonal_average(xhat, AveragingMode::Mean);
  CHECK(mean.samples == std::vector<double>{3, 2.5, 2});
  const auto fb = ssa::diagonal_average(xhat, AveragingMode::FilterBank);
  CHECK(fb.samples == std::vector<double>{1.5, 2.5, 1});
}

TEST_CASE("both averaging modes agree on interior samples") {
  const std::size_t m = 7, k = 40;
  ssa::GaussianSampler g(47);
  Matrix xhat(m, k);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < k; ++j) xhat(i, j) = g.next();
  const auto a = ssa::diagonal_average(xhat, AveragingMode::Mean);
  const auto b = ssa::diagonal_average(xhat, AveragingMode::FilterBank);
  const std::size_t n = m + k - 1;
  for (std::size_t i = m - 1; i + m <= n; ++i) CHECK(a.samples[i] == b.samples[i]);
}

TEST_CASE("toeplitz eigenvalues lie within the finite-lag spectrum extremes") {
  const std::size_t m = 12, nfft = 4096;
  const TimeSeries x = testing::gaussian_signal(1024, 53);
  const auto r = ssa::correlation_matrix(x, m, CorrelationMode::Toeplitz);
  const auto basis = ssa::eig_sym(r);

  const auto lags = ssa::autocorrelation(x, m - 1);
  const auto s = ssa::kernels::cosine_series_grid(lags, nfft);
  double smin = s[0], smax = s[0], sabs = std::abs(s[0]);
  for (double v : s) {
    smin = std::min(smin, v);
    smax = std::max(smax, v);
    sabs = std::max(sabs, std::abs(v));
  }
  const double eps = 1e-6 * sabs;
  for (double lambda : basis.eigenvalues) {
    CHECK(lambda >= smin - eps);
    CHECK(lambda <= smax + eps);
  }
}
