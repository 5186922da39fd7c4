#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "weylmod/scalar.hpp"

namespace weylmod {

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<Scalar> data);

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

/// A vector over the fraction field written as numerators over one common
/// denominator. Compare two of these by cross-multiplication.
struct FracVector {
  std::vector<Scalar> num;
  Scalar den{1};
};

struct LinearSolution {
  std::size_t rank = 0;
  /// Basis of {x : M x = 0}; entries are ring elements (no denominators).
  std::vector<std::vector<Scalar>> nullspace;
  /// One entry per rhs column; nullopt when that column is inconsistent.
  std::vector<std::optional<FracVector>> particular;
  std::vector<std::size_t> pivot_columns;
};

/// Exact rank, nullspace and particular solutions of M x = rhs over the
/// fraction field of the parameter ring. Fraction-free Gauss-Jordan with
/// exact division by the previous pivot; no rational functions are formed.
/// rhs may have zero columns. Throws DomainError on a dimension mismatch.
LinearSolution solve_linear(const Matrix& m, const Matrix& rhs);

/// Incrementally maintained row-echelon basis of a subspace of the sparse
/// vector space with coordinates indexed by Key. Rows are kept primitive
/// (see make_primitive). Key order is given by Compare; a row's pivot is its
/// first key, so the rows whose pivot lies past some cutoff span exactly the
/// vectors of the subspace that vanish on every coordinate before it.
template <class Key, class Compare = std::less<Key>>
class Echelon {
 public:
  using Vector = std::map<Key, Scalar, Compare>;

  explicit Echelon(Compare cmp = Compare()) : rows_(cmp), cmp_(cmp) {}

  /// Normal form of v modulo the span; zero iff v lies in the span.
  Vector reduce(Vector v) const {
    auto it = v.begin();
    while (it != v.end()) {
      auto row = rows_.find(it->first);
      if (row == rows_.end()) {
        ++it;
        continue;
      }
      const Key key = it->first;
      const Scalar factor = it->second;
      const Scalar& pivot = row->second.begin()->second;
      // v <- pivot*v - factor*row; entries before key are untouched.
      for (auto& [k, s] : v) s = pivot * s;
      for (const auto& [k, s] : row->second) {
        Scalar& dst = v[k];
        dst -= factor * s;
      }
      std::erase_if(v, [](const auto& kv) { return kv.second.is_zero(); });
      normalize_(v);
      it = v.upper_bound(key);
    }
    return v;
  }

  /// Adds v to the span. Returns the reduced row if it was new.
  std::optional<Vector> insert(const Vector& v) {
    Vector r = reduce(v);
    if (r.empty()) return std::nullopt;
    rows_.emplace(r.begin()->first, r);
    return r;
  }

  bool contains(const Vector& v) const { return reduce(v).empty(); }
  std::size_t rank() const { return rows_.size(); }
  /// Rows keyed by pivot, in key order.
  const std::map<Key, Vector, Compare>& rows() const { return rows_; }

 private:
  static void normalize_(Vector& v) {
    if (v.empty()) return;
    std::vector<Scalar> entries;
    entries.reserve(v.size());
    for (auto& [k, s] : v) entries.push_back(std::move(s));
    make_primitive(entries);
    std::size_t i = 0;
    for (auto& [k, s] : v) s = std::move(entries[i++]);
  }

  std::map<Key, Vector, Compare> rows_;
  Compare cmp_;
};

/// Closes span(seeds) under the linear maps op(0..nops-1), intersected with
/// the bounded region. Compare must place every key outside the region before
/// every key inside it; only rows whose pivot is inside (i.e. rows lying
/// wholly in the region) are fed to the maps again. The result is a subspace
/// of the true closure, so anything it reaches is genuinely reached.
template <class Key, class Compare, class Apply, class InBounds>
Echelon<Key, Compare> bounded_closure(const std::vector<typename Echelon<Key, Compare>::Vector>& seeds,
                                      std::size_t nops, Apply op, InBounds in_bounds,
                                      Compare cmp = Compare()) {
  using Vector = typename Echelon<Key, Compare>::Vector;
  Echelon<Key, Compare> span(cmp);
  std::vector<Vector> work;
  auto add = [&](const Vector& v) {
    if (auto r = span.insert(v); r && in_bounds(r->begin()->first)) work.push_back(std::move(*r));
  };
  for (const auto& s : seeds) add(s);
  while (!work.empty()) {
    Vector v = std::move(work.back());
    work.pop_back();
    for (std::size_t i = 0; i < nops; ++i) add(op(i, v));
  }
  return span;
}

}  // namespace weylmod
