#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "ssa/core.hpp"
#include "ssa/errors.hpp"

namespace ssa {

namespace {

constexpr std::size_t kMaxSweeps = 100;
constexpr double kOffDiagShrink = 1e-12;  // relative to the initial off-diagonal norm

double offdiag_norm(const Matrix& a) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j) acc += 2.0 * a(i, j) * a(i, j);
  return std::sqrt(acc);
}

double frobenius_norm(const Matrix& a) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) acc += a(i, j) * a(i, j);
  return std::sqrt(acc);
}

void rotate(Matrix& a, Matrix& v, std::size_t p, std::size_t q) {
  const double apq = a(p, q);
  if (apq == 0.0) return;

  const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
  double t;
  if (std::abs(theta) > 1e150) {
    t = 1.0 / (2.0 * theta);  // avoids overflow in theta^2
  } else {
    t = ((theta >= 0.0) ? 1.0 : -1.0) /
        (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  }
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;

  const std::size_t n = a.rows();
  for (std::size_t i = 0; i < n; ++i) {
    const double aip = a(i, p);
    const double aiq = a(i, q);
    a(i, p) = c * aip - s * aiq;
    a(i, q) = s * aip + c * aiq;
  }
  for (std::size_t j = 0; j < n; ++j) {
    const double apj = a(p, j);
    const double aqj = a(q, j);
    a(p, j) = c * apj - s * aqj;
    a(q, j) = s * apj + c * aqj;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double vip = v(i, p);
    const double viq = v(i, q);
    v(i, p) = c * vip - s * viq;
    v(i, q) = s * vip + c * viq;
  }
}

}  // namespace

EigenBasis eig_sym(const CorrelationMatrix& r) {
  const Matrix& m = r.entries;
  const std::size_t n = m.rows();
  if (n == 0 || m.cols() != n) throw std::invalid_argument("matrix must be square");

  double max_abs = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) max_abs = std::max(max_abs, std::abs(m(i, j)));
  const double sym_tol = 1e-12 * std::max(1.0, max_abs);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(m(i, j) - m(j, i)) > sym_tol)
        throw std::invalid_argument("matrix is not symmetric within tolerance");

  Matrix a = m;
  Matrix v = Matrix::identity(n);

  // the relative target cannot drop below the rounding floor of the whole
  // matrix, or nearly-diagonal inputs would never terminate
  const double target = std::max(kOffDiagShrink * offdiag_norm(a),
                                 1e-15 * frobenius_norm(a));
  if (offdiag_norm(a) > 0.0) {
    std::size_t sweep = 0;
    while (true) {
      ++sweep;
      for (std::size_t p = 0; p + 1 < n; ++p)
        for (std::size_t q = p + 1; q < n; ++q) rotate(a, v, p, q);
      if (offdiag_norm(a) <= target) break;
      if (sweep >= kMaxSweeps)
        throw numeric_error("jacobi eigendecomposition did not converge", sweep);
    }
  }

  // descending eigenvalues, ties kept in original column order
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x) > a(y, y); });

  EigenBasis basis;
  basis.eigenvalues.resize(n);
  basis.eigenvectors = Matrix(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    const std::size_t src = order[c];
    basis.eigenvalues[c] = a(src, src);

    // sign convention: the entry of largest magnitude is positive
    std::size_t arg = 0;
    double best = std::abs(v(0, src));
    for (std::size_t i = 1; i < n; ++i) {
      const double cand = std::abs(v(i, src));
      if (cand > best) {
        best = cand;
        arg = i;
      }
    }
    const double sign = (v(arg, src) < 0.0) ? -1.0 : 1.0;
    for (std::size_t i = 0; i < n; ++i) basis.eigenvectors(i, c) = sign * v(i, src);
  }
  return basis;
}

}  // namespace ssa
