#include "ssa/reference.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "ssa/fft.hpp"

// Plain serial twins of ssa::kernels.  Per-element arithmetic and summation
// order match the parallel versions exactly; the test suite compares outputs
// bit for bit.

namespace ssa::reference {

Matrix gram(const Matrix& x) {
  const std::size_t k = x.cols();
  Matrix r(x.rows(), x.rows());
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (std::size_t j = i; j < x.rows(); ++j) {
      const double* a = x.data() + i * k;
      const double* b = x.data() + j * k;
      double acc = 0.0;
      for (std::size_t t = 0; t < k; ++t) acc += a[t] * b[t];
      r(i, j) = acc;
      r(j, i) = acc;
    }
  }
  return r;
}

std::vector<double> autocorr(std::span<const double> x, std::size_t max_lag) {
  if (max_lag >= x.size())
    throw std::invalid_argument("autocorrelation lag must be below the signal length");
  std::vector<double> r(max_lag + 1, 0.0);
  for (std::size_t lag = 0; lag <= max_lag; ++lag) {
    double acc = 0.0;
    for (std::size_t n = 0; n + lag < x.size(); ++n) acc += x[n] * x[n + lag];
    r[lag] = acc;
  }
  return r;
}

Matrix filter_bank(const Matrix& u) {
  const std::size_t m = u.rows();
  Matrix taps(u.cols(), 2 * m - 1);
  for (std::size_t mc = 0; mc < u.cols(); ++mc) {
    for (std::size_t k = 0; k < m; ++k) {
      double acc = 0.0;
      for (std::size_t i = k; i < m; ++i) acc += u(i, mc) * u(i - k, mc);
      const double t = acc / static_cast<double>(m);
      taps(mc, m - 1 + k) = t;
      taps(mc, m - 1 - k) = t;
    }
  }
  return taps;
}

namespace {

std::vector<double> cos_table(std::size_t nfft) {
  std::vector<double> tab(nfft);
  for (std::size_t i = 0; i < nfft; ++i)
    tab[i] = std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                      static_cast<double>(nfft));
  return tab;
}

inline double cosine_series_point(const double* c, std::size_t len,
                                  const double* tab, std::size_t nfft,
                                  std::size_t j) {
  double acc = c[0];
  for (std::size_t k = 1; k < len; ++k)
    acc += 2.0 * c[k] * tab[(k * j) % nfft];
  return acc;
}

void check_grid(std::size_t nfft, std::size_t coeff_len) {
  if (nfft < 2 || nfft % 2 != 0)
    throw std::invalid_argument("nfft must be even and at least 2");
  if (coeff_len > 0 && nfft < 2 * (coeff_len - 1) + 1)
    throw std::invalid_argument("nfft too small for the coefficient sequence");
}

}  // namespace

std::vector<double> cosine_series_grid(std::span<const double> coeffs, std::size_t nfft) {
  check_grid(nfft, coeffs.size());
  const std::vector<double> tab = cos_table(nfft);
  std::vector<double> out(nfft / 2 + 1);
  for (std::size_t j = 0; j < out.size(); ++j)
    out[j] = cosine_series_point(coeffs.data(), coeffs.size(), tab.data(), nfft, j);
  return out;
}

Matrix response_grid(const Matrix& taps, std::size_t nfft) {
  const std::size_t m = (taps.cols() + 1) / 2;
  check_grid(nfft, m);
  const std::vector<double> tab = cos_table(nfft);
  Matrix out(taps.rows(), nfft / 2 + 1);
  for (std::size_t row = 0; row < taps.rows(); ++row) {
    const double* c = taps.data() + row * taps.cols() + (m - 1);
    for (std::size_t j = 0; j <= nfft / 2; ++j)
      out(row, j) = cosine_series_point(c, m, tab.data(), nfft, j);
  }
  return out;
}

Matrix project(const Matrix& u, const Matrix& x) {
  if (u.rows() != x.rows())
    throw std::invalid_argument("eigenvector and trajectory dimensions disagree");
  const std::size_t k = x.cols();
  Matrix y(u.cols(), k);
  for (std::size_t mc = 0; mc < u.cols(); ++mc) {
    for (std::size_t t = 0; t < k; ++t) {
      double acc = 0.0;
      for (std::size_t i = 0; i < u.rows(); ++i) acc += u(i, mc) * x(i, t);
      y(mc, t) = acc;
    }
  }
  return y;
}

Matrix rank_one_reconstruct(const Matrix& u, std::span<const double> w, const Matrix& x) {
  if (w.size() != u.cols())
    throw std::invalid_argument("weight count must match the eigenvector count");
  const Matrix y = project(u, x);
  Matrix out(x.rows(), x.cols());
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (std::size_t t = 0; t < x.cols(); ++t) {
      double acc = 0.0;
      for (std::size_t mc = 0; mc < u.cols(); ++mc)
        acc += u(i, mc) * w[mc] * y(mc, t);
      out(i, t) = acc;
    }
  }
  return out;
}

std::vector<double> diag_average(const Matrix& xhat, bool divide_by_window) {
  const std::size_t m = xhat.rows();
  const std::size_t k = xhat.cols();
  if (m == 0 || k == 0) throw std::invalid_argument("empty matrix");
  const std::size_t n = k + m - 1;
  std::vector<double> out(n);
  for (std::size_t s = 0; s < n; ++s) {
    const std::size_t ilo = (s + 1 >= m) ? 0 : (m - 1 - s);
    const std::size_t ihi = (n - 1 - s < m - 1) ? (n - 1 - s) : (m - 1);
    double acc = 0.0;
    for (std::size_t i = ilo; i <= ihi; ++i) acc += xhat(i, s + i + 1 - m);
    const double divisor =
        divide_by_window ? static_cast<double>(m) : static_cast<double>(ihi - ilo + 1);
    out[s] = acc / divisor;
  }
  return out;
}

Matrix zero_phase_components(std::span<const double> x, const Matrix& taps,
                             std::span<const double> w) {
  if (w.size() != taps.rows())
    throw std::invalid_argument("weight count must match the filter count");
  const std::size_t m = (taps.cols() + 1) / 2;
  const std::size_t n = x.size();
  Matrix out(taps.rows(), n);
  for (std::size_t mc = 0; mc < taps.rows(); ++mc) {
    const double* c = taps.data() + mc * taps.cols();
    for (std::size_t t = 0; t < n; ++t) {
      const std::size_t jlo = (t + 1 >= m) ? 0 : (m - 1 - t);
      const std::size_t jhi = (n - 1 - t < m - 1) ? (m - 1 + (n - 1 - t)) : (2 * m - 2);
      double acc = 0.0;
      for (std::size_t j = jlo; j <= jhi; ++j) acc += c[j] * x[t + j + 1 - m];
      out(mc, t) = w[mc] * acc;
    }
  }
  return out;
}

Matrix segment_periodograms(std::span<const double> x, std::size_t segment_length,
                            std::size_t step, std::span<const double> window,
                            std::size_t nfft) {
  if (segment_length == 0 || segment_length > x.size())
    throw std::invalid_argument("segment length must be in [1, N]");
  if (step == 0) throw std::invalid_argument("segment step must be positive");
  if (window.size() != segment_length)
    throw std::invalid_argument("window length must equal the segment length");
  if (!is_pow2(nfft) || nfft < segment_length)
    throw std::invalid_argument("nfft must be a power of two >= segment length");
  const std::size_t count = 1 + (x.size() - segment_length) / step;
  Matrix out(count, nfft / 2 + 1);
  for (std::size_t s = 0; s < count; ++s) {
    const std::size_t start = s * step;
    std::vector<std::complex<double>> buf(nfft, {0.0, 0.0});
    for (std::size_t i = 0; i < segment_length; ++i)
      buf[i] = x[start + i] * window[i];
    fft_pow2(buf);
    for (std::size_t j = 0; j <= nfft / 2; ++j) out(s, j) = std::norm(buf[j]);
  }
  return out;
}

}  // namespace ssa::reference
