#include "weylmod/linalg.hpp"

#include <stdexcept>

#include "weylmod/errors.hpp"

namespace weylmod {

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Scalar> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) throw DomainError("matrix: entry count does not match shape");
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw DomainError("matrix product: dimension mismatch");
  Matrix r(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Scalar& x = a(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += x * b(k, j);
    }
  return r;
}

namespace {

std::size_t weight(const Scalar& s) {
  std::size_t w = 0;
  for (const auto& [m, c] : s.terms())
    w += 1 + mpz_sizeinbase(c.get_num().get_mpz_t(), 2) + mpz_sizeinbase(c.get_den().get_mpz_t(), 2);
  return w;
}

}  // namespace

LinearSolution solve_linear(const Matrix& m, const Matrix& rhs) {
  if (rhs.rows() != m.rows() && !(rhs.cols() == 0))
    throw DomainError("solve_linear: rhs row count does not match matrix");
  const std::size_t n = m.rows();
  const std::size_t c = m.cols();
  const std::size_t k = rhs.cols();
  const std::size_t w = c + k;

  std::vector<std::vector<Scalar>> a(n, std::vector<Scalar>(w));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < c; ++j) a[i][j] = m(i, j);
    for (std::size_t j = 0; j < k; ++j) a[i][c + j] = rhs(i, j);
  }

  LinearSolution out;
  Scalar prev(1);
  std::size_t r = 0;
  for (std::size_t col = 0; col < c && r < n; ++col) {
    std::optional<std::size_t> best;
    for (std::size_t i = r; i < n; ++i) {
      if (a[i][col].is_zero()) continue;
      if (!best || weight(a[i][col]) < weight(a[*best][col])) best = i;
    }
    if (!best) continue;
    std::swap(a[r], a[*best]);
    const Scalar piv = a[r][col];
    for (std::size_t i = 0; i < n; ++i) {
      if (i == r) continue;
      const Scalar f = a[i][col];
      for (std::size_t j = 0; j < w; ++j) {
        if (j == col) continue;
        Scalar v = piv * a[i][j];
        if (!f.is_zero() && !a[r][j].is_zero()) v -= f * a[r][j];
        if (v.is_zero()) {
          a[i][j] = Scalar();
          continue;
        }
        auto q = divide_exact(v, prev);
        if (!q) throw std::logic_error("solve_linear: inexact fraction-free division");
        a[i][j] = std::move(*q);
      }
      a[i][col] = Scalar();
    }
    prev = piv;
    out.pivot_columns.push_back(col);
    ++r;
  }
  out.rank = r;
  const Scalar d = r > 0 ? prev : Scalar(1);

  // After the sweep every pivot equals d and the matrix is d * RREF.
  std::vector<bool> is_pivot(c, false);
  for (std::size_t col : out.pivot_columns) is_pivot[col] = true;
  for (std::size_t f = 0; f < c; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Scalar> x(c);
    x[f] = d;
    for (std::size_t i = 0; i < r; ++i) x[out.pivot_columns[i]] = -a[i][f];
    make_primitive(x);
    out.nullspace.push_back(std::move(x));
  }
  for (std::size_t j = 0; j < k; ++j) {
    bool consistent = true;
    for (std::size_t i = r; i < n; ++i)
      if (!a[i][c + j].is_zero()) consistent = false;
    if (!consistent) {
      out.particular.emplace_back(std::nullopt);
      continue;
    }
    FracVector fv;
    fv.num.assign(c, Scalar());
    fv.den = d;
    for (std::size_t i = 0; i < r; ++i) fv.num[out.pivot_columns[i]] = a[i][c + j];
    out.particular.emplace_back(std::move(fv));
  }
  return out;
}

}  // namespace weylmod
