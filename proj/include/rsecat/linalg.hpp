#pragma once
// Exact sparse linear algebra over Q.
//
// Vectors are sorted coordinate lists without explicit zeros. Matrices are stored
// column-wise, one sparse vector per column, since every map in this library is
// assembled column by column from the images of basis elements.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "rsecat/errors.hpp"

namespace rsecat {

using Rational = mpq_class;

inline std::string to_string(const Rational& q) { return q.get_str(); }

using SparseVec = std::vector<std::pair<std::size_t, Rational>>;

namespace vec {

inline Rational get(const SparseVec& v, std::size_t i) {
  auto it = std::lower_bound(v.begin(), v.end(), i,
                             [](const auto& e, std::size_t key) { return e.first < key; });
  if (it != v.end() && it->first == i) return it->second;
  return Rational(0);
}

/// v + c·w
inline SparseVec axpy(const SparseVec& v, const Rational& c, const SparseVec& w) {
  if (c == 0) return v;
  SparseVec out;
  out.reserve(v.size() + w.size());
  auto a = v.begin();
  auto b = w.begin();
  while (a != v.end() || b != w.end()) {
    if (b == w.end() || (a != v.end() && a->first < b->first)) {
      out.push_back(*a++);
    } else if (a == v.end() || b->first < a->first) {
      out.emplace_back(b->first, c * b->second);
      ++b;
    } else {
      Rational s = a->second + c * b->second;
      if (s != 0) out.emplace_back(a->first, std::move(s));
      ++a;
      ++b;
    }
  }
  return out;
}

inline SparseVec add(const SparseVec& v, const SparseVec& w) { return axpy(v, Rational(1), w); }
inline SparseVec sub(const SparseVec& v, const SparseVec& w) { return axpy(v, Rational(-1), w); }

inline SparseVec scale(const SparseVec& v, const Rational& c) {
  if (c == 0) return {};
  SparseVec out = v;
  for (auto& e : out) e.second *= c;
  return out;
}

inline SparseVec unit(std::size_t i) { return {{i, Rational(1)}}; }

/// Builds a sparse vector from unsorted (index, value) contributions, summing duplicates.
inline SparseVec from_terms(std::vector<std::pair<std::size_t, Rational>> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  SparseVec out;
  for (auto& t : terms) {
    if (!out.empty() && out.back().first == t.first) {
      out.back().second += t.second;
      if (out.back().second == 0) out.pop_back();
    } else if (t.second != 0) {
      out.push_back(std::move(t));
    }
  }
  return out;
}

inline std::vector<Rational> to_dense(const SparseVec& v, std::size_t n) {
  std::vector<Rational> d(n, Rational(0));
  for (const auto& [i, x] : v) d.at(i) = x;
  return d;
}

inline SparseVec from_dense(const std::vector<Rational>& d) {
  SparseVec v;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d[i] != 0) v.emplace_back(i, d[i]);
  return v;
}

inline std::string format(const SparseVec& v) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& [i, x] : v) {
    if (!first) os << ", ";
    first = false;
    os << i << ':' << x.get_str();
  }
  os << '}';
  return os.str();
}

}  // namespace vec

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), columns_(cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.columns_[i] = vec::unit(i);
    return m;
  }

  static Matrix from_columns(std::size_t rows, std::vector<SparseVec> columns) {
    Matrix m(rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
      for (const auto& e : columns[j])
        if (e.first >= rows) throw InvalidArgument("Matrix::from_columns: row index out of range");
      m.columns_[j] = std::move(columns[j]);
    }
    return m;
  }

  static Matrix from_dense(const std::vector<std::vector<Rational>>& rows_data) {
    std::size_t r = rows_data.size();
    std::size_t c = r ? rows_data.front().size() : 0;
    Matrix m(r, c);
    for (std::size_t j = 0; j < c; ++j)
      for (std::size_t i = 0; i < r; ++i)
        if (rows_data[i].at(j) != 0) m.columns_[j].emplace_back(i, rows_data[i][j]);
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const SparseVec& column(std::size_t j) const { return columns_.at(j); }
  const std::vector<SparseVec>& columns() const noexcept { return columns_; }
  void set_column(std::size_t j, SparseVec v) { columns_.at(j) = std::move(v); }

  Rational at(std::size_t i, std::size_t j) const { return vec::get(columns_.at(j), i); }

  bool is_zero() const {
    return std::all_of(columns_.begin(), columns_.end(), [](const SparseVec& c) { return c.empty(); });
  }

  SparseVec apply(const SparseVec& x) const {
    SparseVec out;
    for (const auto& [j, c] : x) out = vec::axpy(out, c, columns_.at(j));
    return out;
  }

  Matrix transpose() const {
    std::vector<std::vector<std::pair<std::size_t, Rational>>> t(rows_);
    for (std::size_t j = 0; j < cols_; ++j)
      for (const auto& [i, x] : columns_[j]) t[i].emplace_back(j, x);
    Matrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) m.columns_[i] = std::move(t[i]);
    return m;
  }

  Matrix scaled(const Rational& c) const {
    Matrix m = *this;
    for (auto& col : m.columns_) col = vec::scale(col, c);
    return m;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw InvalidArgument("Matrix product: dimension mismatch");
    Matrix m(a.rows_, b.cols_);
    for (std::size_t j = 0; j < b.cols_; ++j) m.columns_[j] = a.apply(b.columns_[j]);
    return m;
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InvalidArgument("Matrix difference: shape mismatch");
    Matrix m(a.rows_, a.cols_);
    for (std::size_t j = 0; j < a.cols_; ++j) m.columns_[j] = vec::sub(a.columns_[j], b.columns_[j]);
    return m;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.columns_ == b.columns_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<SparseVec> columns_;
};

/// Incrementally built span of vectors in Q^n, supporting membership tests and
/// coordinates with respect to the vectors that were accepted as independent.
///
/// Column reduction: each accepted vector is stored reduced against earlier ones,
/// keyed by its first nonzero row, together with the combination of accepted
/// vectors it equals.
class Span {
 public:
  explicit Span(std::size_t ambient_dim = 0) : n_(ambient_dim) {}

  std::size_t ambient_dim() const noexcept { return n_; }
  std::size_t rank() const noexcept { return basis_.size(); }
  const std::vector<SparseVec>& basis() const noexcept { return basis_; }

  /// Adds v if it is independent of the current span. Returns true iff added.
  bool add(const SparseVec& v) {
    auto [residue, combo] = reduce(v);
    if (residue.empty()) return false;
    std::size_t id = basis_.size();
    combo = vec::axpy(combo, Rational(1), vec::unit(id));
    Rational lead = residue.front().second;
    pivots_.emplace(residue.front().first, Reduced{vec::scale(residue, 1 / lead), vec::scale(combo, 1 / lead)});
    basis_.push_back(v);
    return true;
  }

  bool contains(const SparseVec& v) const { return reduce(v).first.empty(); }

  /// Coordinates of v in terms of the accepted vectors, or nullopt if v is outside the span.
  std::optional<SparseVec> coordinates(const SparseVec& v) const {
    auto [residue, combo] = reduce(v);
    if (!residue.empty()) return std::nullopt;
    return vec::scale(combo, Rational(-1));
  }

 private:
  struct Reduced {
    SparseVec vector;  // leading entry 1
    SparseVec combo;   // vector = Σ combo[i]·basis_[i]
  };

  // Returns (residue, c) with residue = v + Σ c_i·basis_i.
  std::pair<SparseVec, SparseVec> reduce(const SparseVec& v) const {
    SparseVec r = v;
    SparseVec combo;
    std::size_t pos = 0;
    while (pos < r.size()) {
      auto it = pivots_.find(r[pos].first);
      if (it == pivots_.end()) {
        ++pos;
        continue;
      }
      Rational c = -r[pos].second;
      r = vec::axpy(r, c, it->second.vector);
      combo = vec::axpy(combo, c, it->second.combo);
    }
    return {std::move(r), std::move(combo)};
  }

  std::size_t n_;
  std::map<std::size_t, Reduced> pivots_;
  std::vector<SparseVec> basis_;
};

struct EchelonResult {
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_columns;
  std::vector<SparseVec> kernel_basis;  // vectors in Q^cols
  std::vector<SparseVec> image_basis;   // original pivot columns, vectors in Q^rows
};

/// Column echelon decomposition. Columns are scanned left to right; a column is a
/// pivot column iff it is independent of the columns before it. The kernel basis
/// has one vector per non-pivot column j, with coefficient 1 at j and support in
/// the pivot columns before j, so the output depends only on the matrix.
inline EchelonResult echelon(const Matrix& m) {
  EchelonResult out;
  std::map<std::size_t, std::pair<SparseVec, SparseVec>> pivots;  // lead row -> (vec, combo over columns)
  for (std::size_t j = 0; j < m.cols(); ++j) {
    SparseVec r = m.column(j);
    SparseVec combo = vec::unit(j);
    std::size_t pos = 0;
    while (pos < r.size()) {
      auto it = pivots.find(r[pos].first);
      if (it == pivots.end()) {
        ++pos;
        continue;
      }
      Rational c = -r[pos].second;
      r = vec::axpy(r, c, it->second.first);
      combo = vec::axpy(combo, c, it->second.second);
    }
    if (r.empty()) {
      out.kernel_basis.push_back(std::move(combo));
    } else {
      Rational lead = r.front().second;
      std::size_t row = r.front().first;
      pivots.emplace(row, std::make_pair(vec::scale(r, 1 / lead), vec::scale(combo, 1 / lead)));
      out.pivot_columns.push_back(j);
      out.image_basis.push_back(m.column(j));
    }
  }
  out.rank = out.pivot_columns.size();
  return out;
}

inline std::size_t rank(const Matrix& m) { return echelon(m).rank; }

/// Reduced row echelon basis of span(vectors): leading entries 1 at increasing
/// positions, every pivot coordinate cleared in all other rows. Unique per subspace.
inline std::vector<SparseVec> canonical_basis(const std::vector<SparseVec>& vectors) {
  std::map<std::size_t, SparseVec> rows;  // pivot index -> row
  for (const auto& v0 : vectors) {
    SparseVec v = v0;
    for (const auto& [p, row] : rows) {
      Rational c = vec::get(v, p);
      if (c != 0) v = vec::axpy(v, -c, row);
    }
    if (v.empty()) continue;
    std::size_t p = v.front().first;
    v = vec::scale(v, 1 / v.front().second);
    for (auto& [q, row] : rows) {
      Rational c = vec::get(row, p);
      if (c != 0) row = vec::axpy(row, -c, v);
    }
    rows.emplace(p, std::move(v));
  }
  std::vector<SparseVec> out;
  out.reserve(rows.size());
  for (auto& [p, row] : rows) out.push_back(std::move(row));
  return out;
}

/// Solves m·x = b, returning one solution (free variables zero) or nullopt.
inline std::optional<SparseVec> solve(const Matrix& m, const SparseVec& b) {
  Span span(m.rows());
  std::vector<std::size_t> used;
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (span.add(m.column(j))) used.push_back(j);
  auto coords = span.coordinates(b);
  if (!coords) return std::nullopt;
  SparseVec x;
  for (const auto& [i, c] : *coords) x.emplace_back(used[i], c);
  return x;
}

}  // namespace rsecat
