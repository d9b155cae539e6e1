#pragma once

#include "lira/linalg.hpp"
#include "lira/matrix.hpp"
#include "lira/validation.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace lira {

/// Finite-dimensional unital commutative algebra over the rationals, given by
/// structure constants: e_i * e_j = sum_k mult(i,j,k) e_k.
struct CommAlgebra {
  std::size_t dim = 0;
  Vec unit;
  Tensor3 mult;

  Vec multiply(const Vec& a, const Vec& b) const {
    Vec r(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      if (a[i].is_zero()) continue;
      for (std::size_t j = 0; j < dim; ++j) {
        if (b[j].is_zero()) continue;
        const Rational c = a[i] * b[j];
        for (std::size_t k = 0; k < dim; ++k)
          if (!mult(i, j, k).is_zero()) r[k] += c * mult(i, j, k);
      }
    }
    return r;
  }

  /// Multiplication operator b -> a*b.
  Matrix mult_operator(const Vec& a) const {
    Matrix m(dim, dim);
    for (std::size_t j = 0; j < dim; ++j) m.set_col(j, multiply(a, unit_vec(dim, j)));
    return m;
  }

  static CommAlgebra rationals() {
    CommAlgebra a;
    a.dim = 1;
    a.unit = {Rational(1)};
    a.mult = Tensor3(1, 1, 1);
    a.mult(0, 0, 0) = 1;
    return a;
  }

  /// Q[eps]/(eps^2), basis (1, eps).
  static CommAlgebra dual_numbers() {
    CommAlgebra a;
    a.dim = 2;
    a.unit = {Rational(1), Rational(0)};
    a.mult = Tensor3(2, 2, 2);
    a.mult(0, 0, 0) = 1;
    a.mult(0, 1, 1) = 1;
    a.mult(1, 0, 1) = 1;
    return a;
  }

  friend bool operator==(const CommAlgebra& a, const CommAlgebra& b) {
    return a.dim == b.dim && a.unit == b.unit && a.mult == b.mult;
  }
};

inline ValidationReport validate_comm_algebra(const CommAlgebra& a) {
  ValidationReport rep;
  if (a.unit.size() != a.dim || a.mult.d0 != a.dim || a.mult.d1 != a.dim || a.mult.d2 != a.dim)
    throw std::invalid_argument("validate_comm_algebra: dimension mismatch");
  for (std::size_t j = 0; j < a.dim; ++j)
    if (a.multiply(a.unit, unit_vec(a.dim, j)) != unit_vec(a.dim, j)) rep.add("unit", {j});
  for (std::size_t i = 0; i < a.dim; ++i)
    for (std::size_t j = i + 1; j < a.dim; ++j)
      if (a.mult.slice(i, j) != a.mult.slice(j, i)) rep.add("commutativity", {i, j});
  for (std::size_t i = 0; i < a.dim; ++i)
    for (std::size_t j = 0; j < a.dim; ++j)
      for (std::size_t k = 0; k < a.dim; ++k) {
        const Vec lhs = a.multiply(a.mult.slice(i, j), unit_vec(a.dim, k));
        const Vec rhs = a.multiply(unit_vec(a.dim, i), a.mult.slice(j, k));
        if (lhs != rhs) rep.add("associativity", {i, j, k});
      }
  return rep;
}

/// Basis of Der_K(A): solutions D of D(e_i e_j) = e_i D(e_j) + D(e_i) e_j.
inline std::vector<Matrix> derivations_of(const CommAlgebra& a) {
  const std::size_t n = a.dim;
  // Unknowns D(r,c), r = output coordinate, c = input basis index.
  std::vector<Vec> constraint_rows;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      // D applied to the product e_i e_j, minus the Leibniz expansion.
      // Row per output coordinate k.
      const Vec prod = a.mult.slice(i, j);
      for (std::size_t k = 0; k < n; ++k) {
        Vec row(n * n);
        for (std::size_t c = 0; c < n; ++c)
          if (!prod[c].is_zero()) row[k * n + c] += prod[c];  // D(e_i e_j)_k
        // e_i * D(e_j): D(e_j) = sum_r D(r,j) e_r, contributes mult(i,r,k).
        for (std::size_t r = 0; r < n; ++r) {
          if (!a.mult(i, r, k).is_zero()) row[r * n + j] -= a.mult(i, r, k);
          if (!a.mult(j, r, k).is_zero()) row[r * n + i] -= a.mult(j, r, k);
        }
        constraint_rows.push_back(std::move(row));
      }
    }
  const Subspace sol = kernel(Matrix::from_rows(constraint_rows, n * n));
  std::vector<Matrix> basis;
  for (std::size_t b = 0; b < sol.rank(); ++b) {
    Matrix d(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) d(r, c) = sol.basis(b, r * n + c);
    if (!is_zero_vec(d * a.unit))
      throw std::logic_error("derivations_of: derivation does not kill the unit");
    basis.push_back(std::move(d));
  }
  return basis;
}

inline ValidationReport validate_derivation(const CommAlgebra& a, const Matrix& d) {
  ValidationReport rep;
  for (std::size_t i = 0; i < a.dim; ++i)
    for (std::size_t j = i; j < a.dim; ++j) {
      const Vec lhs = d * a.mult.slice(i, j);
      const Vec rhs = vec_add(a.multiply(unit_vec(a.dim, i), d * unit_vec(a.dim, j)),
                              a.multiply(unit_vec(a.dim, j), d * unit_vec(a.dim, i)));
      if (lhs != rhs) rep.add("leibniz", {i, j});
    }
  if (!is_zero_vec(d * a.unit)) rep.add("kills-unit", {});
  return rep;
}

/// Nilradical, computed as the radical of the trace form (char 0).
inline Subspace nilradical(const CommAlgebra& a) {
  Matrix gram(a.dim, a.dim);
  std::vector<Matrix> ops;
  for (std::size_t i = 0; i < a.dim; ++i) ops.push_back(a.mult_operator(unit_vec(a.dim, i)));
  for (std::size_t i = 0; i < a.dim; ++i)
    for (std::size_t j = 0; j < a.dim; ++j) {
      const Matrix prod = ops[i] * ops[j];
      for (std::size_t k = 0; k < a.dim; ++k) gram(i, j) += prod(k, k);
    }
  return kernel(gram);
}

/// Coordinates of the algebra character A -> A/nilradical = Q, when the
/// residue algebra is one-dimensional. chi(x) = sum_i chi[i] x_i.
inline std::optional<Vec> residue_character(const CommAlgebra& a) {
  const Subspace rad = nilradical(a);
  if (rad.rank() + 1 != a.dim) return std::nullopt;
  const QuotientPresentation q = quotient(a.dim, rad);
  const Vec unit_class = q.project(a.unit);
  if (unit_class[0].is_zero()) return std::nullopt;
  Vec chi(a.dim);
  for (std::size_t i = 0; i < a.dim; ++i)
    chi[i] = q.project(unit_vec(a.dim, i))[0] / unit_class[0];
  return chi;
}

}  // namespace lira
