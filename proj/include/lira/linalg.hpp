#pragma once

#include "lira/matrix.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace lira {

/// Incremental reduced-row-echelon accumulator. Rows are kept normalized
/// (leading 1), fully reduced above and below, sorted by pivot column, so the
/// extracted basis is the canonical RREF of everything inserted so far.
class RrefBuilder {
 public:
  explicit RrefBuilder(std::size_t cols) : cols_(cols) {}

  std::size_t cols() const { return cols_; }
  std::size_t rank() const { return rows_.size(); }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  const std::vector<Vec>& rows() const { return rows_; }

  /// Residual of v after elimination against the current basis.
  Vec reduce(Vec v) const {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const Rational& c = v[pivots_[k]];
      if (!c.is_zero()) add_scaled(v, -c, rows_[k]);
    }
    return v;
  }

  bool contains(const Vec& v) const { return is_zero_vec(reduce(v)); }

  /// Inserts v; returns true when the rank grew.
  bool insert(Vec v) {
    v = reduce(std::move(v));
    std::size_t lead = cols_;
    for (std::size_t j = 0; j < cols_; ++j)
      if (!v[j].is_zero()) {
        lead = j;
        break;
      }
    if (lead == cols_) return false;
    if (v[lead] != 1) {
      const Rational inv = Rational(1) / v[lead];
      for (auto& x : v) x *= inv;
    }
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const Rational c = rows_[k][lead];
      if (!c.is_zero()) add_scaled(rows_[k], -c, v);
    }
    const auto pos = std::upper_bound(pivots_.begin(), pivots_.end(), lead) - pivots_.begin();
    pivots_.insert(pivots_.begin() + pos, lead);
    rows_.insert(rows_.begin() + pos, std::move(v));
    return true;
  }

  Matrix to_matrix() const { return Matrix::from_rows(rows_, cols_); }

 private:
  std::size_t cols_;
  std::vector<std::size_t> pivots_;
  std::vector<Vec> rows_;
};

/// Canonical RREF with the original shape (zero rows kept) and pivot columns.
inline std::pair<Matrix, std::vector<std::size_t>> rref(const Matrix& m) {
  RrefBuilder b(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) b.insert(m.row(i));
  Matrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < b.rank(); ++i) out.set_row(i, b.rows()[i]);
  return {out, b.pivots()};
}

/// A linear subspace of K^n held by its canonical RREF basis.
struct Subspace {
  std::size_t ambient_dim = 0;
  Matrix basis;                     // rank x ambient_dim, RREF, no zero rows
  std::vector<std::size_t> pivots;  // strictly increasing

  static Subspace zero(std::size_t ambient) {
    Subspace s;
    s.ambient_dim = ambient;
    s.basis = Matrix(0, ambient);
    return s;
  }

  static Subspace full(std::size_t ambient) {
    Subspace s;
    s.ambient_dim = ambient;
    s.basis = Matrix::identity(ambient);
    for (std::size_t i = 0; i < ambient; ++i) s.pivots.push_back(i);
    return s;
  }

  static Subspace from_builder(const RrefBuilder& b) {
    Subspace s;
    s.ambient_dim = b.cols();
    s.basis = b.to_matrix();
    s.pivots = b.pivots();
    return s;
  }

  static Subspace from_rows(std::size_t ambient, const std::vector<Vec>& rows) {
    RrefBuilder b(ambient);
    for (const auto& r : rows) b.insert(r);
    return from_builder(b);
  }

  std::size_t rank() const { return basis.rows(); }

  Vec reduce(Vec v) const {
    for (std::size_t k = 0; k < rank(); ++k) {
      const Rational& c = v[pivots[k]];
      if (!c.is_zero()) add_scaled(v, -c, basis.row(k));
    }
    return v;
  }

  bool contains(const Vec& v) const { return is_zero_vec(reduce(v)); }

  bool contains(const Subspace& other) const {
    for (std::size_t i = 0; i < other.rank(); ++i)
      if (!contains(other.basis.row(i))) return false;
    return true;
  }

  /// Coefficients of v in the basis, or nullopt when v is outside the span.
  std::optional<Vec> coordinates(const Vec& v) const {
    Vec c(rank());
    Vec r = v;
    for (std::size_t k = 0; k < rank(); ++k) {
      c[k] = r[pivots[k]];
      if (!c[k].is_zero()) add_scaled(r, -c[k], basis.row(k));
    }
    if (!is_zero_vec(r)) return std::nullopt;
    return c;
  }

  Subspace sum(const Subspace& other) const {
    RrefBuilder b(ambient_dim);
    for (std::size_t i = 0; i < rank(); ++i) b.insert(basis.row(i));
    for (std::size_t i = 0; i < other.rank(); ++i) b.insert(other.basis.row(i));
    return from_builder(b);
  }

  Subspace intersect(const Subspace& other) const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_dim == b.ambient_dim && a.basis == b.basis;
  }
};

/// Null space of m, as a subspace of the domain K^cols.
inline Subspace kernel(const Matrix& m) {
  auto [r, piv] = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : piv) is_pivot[p] = true;
  std::vector<Vec> rows;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vec v(m.cols());
    v[f] = 1;
    for (std::size_t k = 0; k < piv.size(); ++k) v[piv[k]] = -r(k, f);
    rows.push_back(std::move(v));
  }
  return Subspace::from_rows(m.cols(), rows);
}

/// Column space of m, as a subspace of the codomain K^rows.
inline Subspace image(const Matrix& m) {
  std::vector<Vec> rows;
  for (std::size_t j = 0; j < m.cols(); ++j) rows.push_back(m.col(j));
  return Subspace::from_rows(m.rows(), rows);
}

/// Image of a subspace under a linear map.
inline Subspace apply(const Matrix& m, const Subspace& s) {
  std::vector<Vec> rows;
  for (std::size_t i = 0; i < s.rank(); ++i) rows.push_back(m * s.basis.row(i));
  return Subspace::from_rows(m.rows(), rows);
}

inline Subspace Subspace::intersect(const Subspace& other) const {
  if (ambient_dim != other.ambient_dim)
    throw std::invalid_argument("intersect: ambient mismatch");
  // (c, d) with c*B1 = d*B2  <=>  [B1^T | -B2^T] (c;d)^T = 0.
  Matrix stacked(ambient_dim, rank() + other.rank());
  for (std::size_t i = 0; i < rank(); ++i)
    for (std::size_t j = 0; j < ambient_dim; ++j) stacked(j, i) = basis(i, j);
  for (std::size_t i = 0; i < other.rank(); ++i)
    for (std::size_t j = 0; j < ambient_dim; ++j)
      stacked(j, rank() + i) = -other.basis(i, j);
  Subspace ker = kernel(stacked);
  std::vector<Vec> rows;
  for (std::size_t i = 0; i < ker.rank(); ++i) {
    Vec v(ambient_dim);
    for (std::size_t k = 0; k < rank(); ++k) add_scaled(v, ker.basis(i, k), basis.row(k));
    rows.push_back(std::move(v));
  }
  return Subspace::from_rows(ambient_dim, rows);
}

/// One solution of A x = b, or nullopt when inconsistent.
inline std::optional<Vec> solve(const Matrix& a, const Vec& b) {
  RrefBuilder builder(a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Vec row(a.cols() + 1);
    for (std::size_t j = 0; j < a.cols(); ++j) row[j] = a(i, j);
    row[a.cols()] = b[i];
    builder.insert(std::move(row));
  }
  Vec x(a.cols());
  for (std::size_t k = 0; k < builder.rank(); ++k) {
    if (builder.pivots()[k] == a.cols()) return std::nullopt;  // 0 = 1 row
    x[builder.pivots()[k]] = builder.rows()[k][a.cols()];
  }
  return x;
}

/// Pivot-based right inverse of a surjective map; throws when g is not onto.
inline Matrix right_inverse(const Matrix& g) {
  // Row-reduce [g | I]; rows come out as [R | E] with R = E g in RREF.
  RrefBuilder builder(g.cols() + g.rows());
  for (std::size_t i = 0; i < g.rows(); ++i) {
    Vec row(g.cols() + g.rows());
    for (std::size_t j = 0; j < g.cols(); ++j) row[j] = g(i, j);
    row[g.cols() + i] = 1;
    builder.insert(std::move(row));
  }
  std::vector<std::size_t> piv;
  for (auto p : builder.pivots())
    if (p < g.cols()) piv.push_back(p);
  if (piv.size() != g.rows()) throw std::invalid_argument("right_inverse: map not surjective");
  Matrix s(g.cols(), g.rows());
  for (std::size_t k = 0; k < piv.size(); ++k)
    for (std::size_t i = 0; i < g.rows(); ++i)
      s(piv[k], i) = builder.rows()[k][g.cols() + i];
  return s;
}

inline bool is_invertible(const Matrix& m) {
  if (m.rows() != m.cols()) return false;
  return rref(m).second.size() == m.rows();
}

inline Matrix inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse: not square");
  Matrix inv = right_inverse(m);
  if (!(inv * m == Matrix::identity(m.cols()))) throw std::invalid_argument("inverse: singular");
  return inv;
}

/// Canonical presentation of K^n / relations. The quotient coordinates are the
/// non-pivot coordinates of the relation RREF, in ascending order.
struct QuotientPresentation {
  std::size_t ambient_dim = 0;
  Subspace relations;
  Matrix projection;  // q x n
  Matrix section;     // n x q
  std::vector<std::size_t> free_cols;

  std::size_t quotient_dim() const { return projection.rows(); }
  Vec project(const Vec& v) const { return projection * v; }
  Vec lift(const Vec& v) const { return section * v; }
};

inline QuotientPresentation quotient(std::size_t ambient_dim, const Subspace& relations) {
  if (relations.ambient_dim != ambient_dim)
    throw std::invalid_argument("quotient: ambient mismatch");
  QuotientPresentation q;
  q.ambient_dim = ambient_dim;
  q.relations = relations;
  std::vector<bool> is_pivot(ambient_dim, false);
  for (auto p : relations.pivots) is_pivot[p] = true;
  for (std::size_t j = 0; j < ambient_dim; ++j)
    if (!is_pivot[j]) q.free_cols.push_back(j);
  const std::size_t qd = q.free_cols.size();
  q.projection = Matrix(qd, ambient_dim);
  for (std::size_t j = 0; j < qd; ++j) q.projection(j, q.free_cols[j]) = 1;
  // Reducing e_p for a pivot column p leaves minus the free part of its row.
  for (std::size_t k = 0; k < relations.rank(); ++k)
    for (std::size_t j = 0; j < qd; ++j)
      q.projection(j, relations.pivots[k]) = -relations.basis(k, q.free_cols[j]);
  q.section = Matrix(ambient_dim, qd);
  for (std::size_t j = 0; j < qd; ++j) q.section(q.free_cols[j], j) = 1;
  return q;
}

/// Smallest subspace containing seed and stable under every operator.
inline Subspace close_under(const Subspace& seed, const std::vector<Matrix>& operators) {
  RrefBuilder b(seed.ambient_dim);
  for (std::size_t i = 0; i < seed.rank(); ++i) b.insert(seed.basis.row(i));
  bool grew = true;
  while (grew) {
    grew = false;
    const auto snapshot = b.rows();
    for (const auto& op : operators)
      for (const auto& r : snapshot)
        if (b.insert(op * r)) grew = true;
  }
  return Subspace::from_builder(b);
}

}  // namespace lira
