#pragma once

#include "lira/comm_algebra.hpp"
#include "lira/linalg.hpp"
#include "lira/matrix.hpp"
#include "lira/validation.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace lira {

/// Lie-Rinehart algebra over CommAlgebra base: an A-module with a K-Lie
/// bracket and an anchor into Der_K(A), all by structure constants.
///   a_action(i,j,*) = a_i . x_j      bracket(i,j,*) = [x_i, x_j]
///   anchor[i]       = alpha(x_i) as a dim(A) x dim(A) matrix
struct LieRinehartAlgebra {
  CommAlgebra base;
  std::size_t dim = 0;
  Tensor3 a_action;
  Tensor3 bracket;
  std::vector<Matrix> anchor;

  Vec act(const Vec& a, const Vec& x) const {
    Vec r(dim);
    for (std::size_t i = 0; i < base.dim; ++i) {
      if (a[i].is_zero()) continue;
      for (std::size_t j = 0; j < dim; ++j) {
        if (x[j].is_zero()) continue;
        const Rational c = a[i] * x[j];
        for (std::size_t k = 0; k < dim; ++k)
          if (!a_action(i, j, k).is_zero()) r[k] += c * a_action(i, j, k);
      }
    }
    return r;
  }

  Matrix act_operator(const Vec& a) const {
    Matrix m(dim, dim);
    for (std::size_t j = 0; j < dim; ++j) m.set_col(j, act(a, unit_vec(dim, j)));
    return m;
  }

  Vec brk(const Vec& x, const Vec& y) const {
    Vec r(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      if (x[i].is_zero()) continue;
      for (std::size_t j = 0; j < dim; ++j) {
        if (y[j].is_zero()) continue;
        const Rational c = x[i] * y[j];
        for (std::size_t k = 0; k < dim; ++k)
          if (!bracket(i, j, k).is_zero()) r[k] += c * bracket(i, j, k);
      }
    }
    return r;
  }

  /// ad(x): y -> [x, y].
  Matrix ad(const Vec& x) const {
    Matrix m(dim, dim);
    for (std::size_t j = 0; j < dim; ++j) m.set_col(j, brk(x, unit_vec(dim, j)));
    return m;
  }

  Matrix anchor_of(const Vec& x) const {
    Matrix m(base.dim, base.dim);
    for (std::size_t i = 0; i < dim; ++i)
      if (!x[i].is_zero()) m = m + x[i] * anchor[i];
    return m;
  }

  /// x(a) = alpha(x)(a).
  Vec apply_anchor(const Vec& x, const Vec& a) const { return anchor_of(x) * a; }

  bool has_zero_anchor() const {
    for (const auto& m : anchor)
      if (!m.is_zero()) return false;
    return true;
  }

  friend bool operator==(const LieRinehartAlgebra& a, const LieRinehartAlgebra& b) {
    return a.base == b.base && a.dim == b.dim && a.a_action == b.a_action &&
           a.bracket == b.bracket && a.anchor == b.anchor;
  }
};

inline void check_shapes(const LieRinehartAlgebra& l) {
  if (l.a_action.d0 != l.base.dim || l.a_action.d1 != l.dim || l.a_action.d2 != l.dim ||
      l.bracket.d0 != l.dim || l.bracket.d1 != l.dim || l.bracket.d2 != l.dim ||
      l.anchor.size() != l.dim)
    throw std::invalid_argument("lie-rinehart algebra: dimension mismatch");
  for (const auto& m : l.anchor)
    if (m.rows() != l.base.dim || m.cols() != l.base.dim)
      throw std::invalid_argument("lie-rinehart algebra: anchor shape mismatch");
}

/// Checks every axiom on basis instances; multilinearity makes that complete.
inline ValidationReport validate_lr(const LieRinehartAlgebra& l) {
  check_shapes(l);
  ValidationReport rep;
  const std::size_t na = l.base.dim, nl = l.dim;
  auto e = [&](std::size_t j) { return unit_vec(nl, j); };
  auto ea = [&](std::size_t i) { return unit_vec(na, i); };

  for (std::size_t j = 0; j < nl; ++j)
    if (l.act(l.base.unit, e(j)) != e(j)) rep.add("module-unit", {j});
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j)
      for (std::size_t k = 0; k < nl; ++k)
        if (l.act(l.base.mult.slice(i, j), e(k)) != l.act(ea(i), l.act(ea(j), e(k))))
          rep.add("module-assoc", {i, j, k});
  for (std::size_t i = 0; i < nl; ++i)
    for (std::size_t j = i; j < nl; ++j)
      if (!is_zero_vec(vec_add(l.bracket.slice(i, j), l.bracket.slice(j, i))))
        rep.add("antisymmetry", {i, j});
  for (std::size_t i = 0; i < nl; ++i)
    for (std::size_t j = i + 1; j < nl; ++j)
      for (std::size_t k = j + 1; k < nl; ++k) {
        Vec s = l.brk(l.bracket.slice(i, j), e(k));
        s = vec_add(s, l.brk(l.bracket.slice(j, k), e(i)));
        s = vec_add(s, l.brk(l.bracket.slice(k, i), e(j)));
        if (!is_zero_vec(s)) rep.add("jacobi", {i, j, k});
      }
  for (std::size_t i = 0; i < nl; ++i) {
    const ValidationReport der = validate_derivation(l.base, l.anchor[i]);
    if (!der.ok()) rep.add("anchor-derivation", {i});
  }
  for (std::size_t i = 0; i < nl; ++i)
    for (std::size_t j = i + 1; j < nl; ++j)
      if (!(l.anchor_of(l.bracket.slice(i, j)) == commutator_matrix(l.anchor[i], l.anchor[j])))
        rep.add("anchor-lie", {i, j});
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < nl; ++j)
      if (!(l.anchor_of(l.a_action.slice(i, j)) == l.base.mult_operator(ea(i)) * l.anchor[j]))
        rep.add("anchor-a-linear", {i, j});
  for (std::size_t i = 0; i < nl; ++i)
    for (std::size_t j = 0; j < na; ++j)
      for (std::size_t k = 0; k < nl; ++k) {
        const Vec lhs = l.brk(e(i), l.act(ea(j), e(k)));
        const Vec rhs = vec_add(l.act(ea(j), l.bracket.slice(i, k)),
                                l.act(l.anchor[i] * ea(j), e(k)));
        if (lhs != rhs) rep.add("leibniz", {i, j, k});
      }
  return rep;
}

/// Z_A(L) = { z : [a z, w] = 0 for all a, w }.
inline Subspace center(const LieRinehartAlgebra& l) {
  std::vector<Vec> rows;
  for (std::size_t i = 0; i < l.base.dim; ++i) {
    const Matrix act_i = l.act_operator(unit_vec(l.base.dim, i));
    for (std::size_t j = 0; j < l.dim; ++j) {
      // z -> [a_i z, x_j], row per output coordinate.
      Matrix op(l.dim, l.dim);
      for (std::size_t c = 0; c < l.dim; ++c)
        op.set_col(c, l.brk(act_i.col(c), unit_vec(l.dim, j)));
      for (std::size_t k = 0; k < l.dim; ++k) rows.push_back(op.row(k));
    }
  }
  if (rows.empty()) return Subspace::full(l.dim);
  return kernel(Matrix::from_rows(rows, l.dim));
}

/// {M, N}: the K-span of a[x, y], a in A, x in M, y in N.
inline Subspace commutator(const LieRinehartAlgebra& l, const Subspace& m, const Subspace& n) {
  std::vector<Vec> rows;
  for (std::size_t i = 0; i < l.base.dim; ++i)
    for (std::size_t r = 0; r < m.rank(); ++r)
      for (std::size_t s = 0; s < n.rank(); ++s)
        rows.push_back(l.act(unit_vec(l.base.dim, i), l.brk(m.basis.row(r), n.basis.row(s))));
  return Subspace::from_rows(l.dim, rows);
}

inline Subspace derived_subspace(const LieRinehartAlgebra& l) {
  const Subspace full = Subspace::full(l.dim);
  return commutator(l, full, full);
}

/// L^ab = L / {L, L} as an A-module.
inline QuotientPresentation abelianize(const LieRinehartAlgebra& l) {
  std::vector<Matrix> ops;
  for (std::size_t i = 0; i < l.base.dim; ++i) ops.push_back(l.act_operator(unit_vec(l.base.dim, i)));
  return quotient(l.dim, close_under(derived_subspace(l), ops));
}

// -------- morphisms --------

struct LRMorphism {
  LieRinehartAlgebra source;
  LieRinehartAlgebra target;
  Matrix matrix;  // dim(target) x dim(source)

  Vec apply(const Vec& x) const { return matrix * x; }
};

inline LRMorphism identity_morphism(const LieRinehartAlgebra& l) {
  return {l, l, Matrix::identity(l.dim)};
}

inline LRMorphism compose(const LRMorphism& g, const LRMorphism& f) {
  if (!(g.source.dim == f.target.dim && g.matrix.cols() == f.matrix.rows()))
    throw std::invalid_argument("compose: dimension mismatch");
  return {f.source, g.target, g.matrix * f.matrix};
}

inline ValidationReport validate_morphism(const LRMorphism& f) {
  const auto& s = f.source;
  const auto& t = f.target;
  if (!(s.base == t.base)) throw std::invalid_argument("morphism: different base algebras");
  if (f.matrix.rows() != t.dim || f.matrix.cols() != s.dim)
    throw std::invalid_argument("morphism: matrix shape mismatch");
  ValidationReport rep;
  for (std::size_t i = 0; i < s.base.dim; ++i)
    for (std::size_t j = 0; j < s.dim; ++j)
      if (f.apply(s.act(unit_vec(s.base.dim, i), unit_vec(s.dim, j))) !=
          t.act(unit_vec(s.base.dim, i), f.apply(unit_vec(s.dim, j))))
        rep.add("a-linear", {i, j});
  for (std::size_t i = 0; i < s.dim; ++i)
    for (std::size_t j = i + 1; j < s.dim; ++j)
      if (f.apply(s.bracket.slice(i, j)) !=
          t.brk(f.apply(unit_vec(s.dim, i)), f.apply(unit_vec(s.dim, j))))
        rep.add("bracket", {i, j});
  for (std::size_t j = 0; j < s.dim; ++j)
    if (!(t.anchor_of(f.apply(unit_vec(s.dim, j))) == s.anchor[j])) rep.add("anchor", {j});
  return rep;
}

inline bool is_surjective(const LRMorphism& f) { return image(f.matrix).rank() == f.target.dim; }

// -------- modules --------

/// Left (A,L)-module: l_action(i,j,*) = x_i . m_j, a_action(i,j,*) = a_i . m_j.
struct LeftLRModule {
  std::size_t dim = 0;
  Tensor3 a_action;
  Tensor3 l_action;

  Matrix a_op(std::size_t i) const {
    Matrix m(dim, dim);
    for (std::size_t j = 0; j < dim; ++j) m.set_col(j, a_action.slice(i, j));
    return m;
  }
  Matrix a_op(const Vec& a) const {
    Matrix m(dim, dim);
    for (std::size_t i = 0; i < a.size(); ++i)
      if (!a[i].is_zero()) m = m + a[i] * a_op(i);
    return m;
  }
  Matrix l_op(std::size_t i) const {
    Matrix m(dim, dim);
    for (std::size_t j = 0; j < dim; ++j) m.set_col(j, l_action.slice(i, j));
    return m;
  }
  Matrix l_op(const Vec& x) const {
    Matrix m(dim, dim);
    for (std::size_t i = 0; i < x.size(); ++i)
      if (!x[i].is_zero()) m = m + x[i] * l_op(i);
    return m;
  }
};

/// Right (A,L)-module: r_action(j,i,*) = m_j . x_i.
struct RightLRModule {
  std::size_t dim = 0;
  Tensor3 a_action;  // a x m -> m
  Tensor3 r_action;  // m x x -> m

  Matrix a_op(std::size_t i) const {
    Matrix m(dim, dim);
    for (std::size_t j = 0; j < dim; ++j) m.set_col(j, a_action.slice(i, j));
    return m;
  }
  Matrix a_op(const Vec& a) const {
    Matrix m(dim, dim);
    for (std::size_t i = 0; i < a.size(); ++i)
      if (!a[i].is_zero()) m = m + a[i] * a_op(i);
    return m;
  }
  /// Operator m -> m x_i.
  Matrix r_op(std::size_t i) const {
    Matrix m(dim, dim);
    for (std::size_t j = 0; j < dim; ++j) m.set_col(j, r_action.slice(j, i));
    return m;
  }
  Matrix r_op(const Vec& x) const {
    Matrix m(dim, dim);
    for (std::size_t i = 0; i < x.size(); ++i)
      if (!x[i].is_zero()) m = m + x[i] * r_op(i);
    return m;
  }
};

namespace detail {

inline ValidationReport validate_a_module(const CommAlgebra& a,
                                          const std::vector<Matrix>& ops,
                                          const Matrix& unit_op) {
  ValidationReport rep;
  const std::size_t na = a.dim;
  auto op_of = [&](const Vec& v) {
    Matrix m(unit_op.rows(), unit_op.cols());
    for (std::size_t i = 0; i < na; ++i)
      if (!v[i].is_zero()) m = m + v[i] * ops[i];
    return m;
  };
  if (!(op_of(a.unit) == Matrix::identity(unit_op.rows()))) rep.add("module-unit", {});
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j)
      if (!(op_of(a.mult.slice(i, j)) == ops[i] * ops[j])) rep.add("module-assoc", {i, j});
  return rep;
}

}  // namespace detail

inline ValidationReport validate_left_module(const LieRinehartAlgebra& l, const LeftLRModule& m) {
  ValidationReport rep;
  const std::size_t na = l.base.dim, nl = l.dim;
  std::vector<Matrix> aops;
  for (std::size_t i = 0; i < na; ++i) aops.push_back(m.a_op(i));
  rep.merge(detail::validate_a_module(l.base, aops, Matrix::identity(m.dim)));
  for (std::size_t i = 0; i < nl; ++i)
    for (std::size_t j = 0; j < nl; ++j)
      if (!(m.l_op(l.bracket.slice(i, j)) == commutator_matrix(m.l_op(i), m.l_op(j))))
        rep.add("lie-module", {i, j});
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < nl; ++j) {
      if (!(m.l_op(l.a_action.slice(i, j)) == aops[i] * m.l_op(j))) rep.add("ax-law", {i, j});
      // x(am) = a(xm) + x(a)m
      if (!(m.l_op(j) * aops[i] == aops[i] * m.l_op(j) + m.a_op(l.anchor[j] * unit_vec(na, i))))
        rep.add("x-am-law", {i, j});
    }
  return rep;
}

inline ValidationReport validate_right_module(const LieRinehartAlgebra& l, const RightLRModule& m) {
  ValidationReport rep;
  const std::size_t na = l.base.dim, nl = l.dim;
  std::vector<Matrix> aops;
  for (std::size_t i = 0; i < na; ++i) aops.push_back(m.a_op(i));
  rep.merge(detail::validate_a_module(l.base, aops, Matrix::identity(m.dim)));
  // m[x,y] = (mx)y - (my)x
  for (std::size_t i = 0; i < nl; ++i)
    for (std::size_t j = 0; j < nl; ++j)
      if (!(m.r_op(l.bracket.slice(i, j)) == m.r_op(j) * m.r_op(i) - m.r_op(i) * m.r_op(j)))
        rep.add("lie-right-module", {i, j});
  // (am)x = m(ax) = a(mx) - x(a)m
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < nl; ++j) {
      const Matrix lhs = m.r_op(j) * aops[i];
      if (!(lhs == m.r_op(l.a_action.slice(i, j)))) rep.add("right-mixed-ax", {i, j});
      if (!(lhs == aops[i] * m.r_op(j) - m.a_op(l.anchor[j] * unit_vec(na, i))))
        rep.add("right-mixed-anchor", {i, j});
    }
  return rep;
}

/// K^d with zero L-action; A acts through the residue character of A.
inline LeftLRModule trivial_left_module(const LieRinehartAlgebra& l, std::size_t d) {
  const auto chi = residue_character(l.base);
  if (!chi)
    throw std::invalid_argument("trivial module: base has no 1-dimensional residue algebra");
  LeftLRModule m;
  m.dim = d;
  m.a_action = Tensor3(l.base.dim, d, d);
  for (std::size_t i = 0; i < l.base.dim; ++i)
    for (std::size_t j = 0; j < d; ++j) m.a_action(i, j, j) = (*chi)[i];
  m.l_action = Tensor3(l.dim, d, d);
  return m;
}

/// Legal only for zero anchor: the right-module law forces x(a)m = 0.
inline RightLRModule trivial_right_module(const LieRinehartAlgebra& l, std::size_t d) {
  if (!l.has_zero_anchor())
    throw std::invalid_argument("trivial right module requires a zero anchor");
  const auto chi = residue_character(l.base);
  if (!chi)
    throw std::invalid_argument("trivial module: base has no 1-dimensional residue algebra");
  RightLRModule m;
  m.dim = d;
  m.a_action = Tensor3(l.base.dim, d, d);
  for (std::size_t i = 0; i < l.base.dim; ++i)
    for (std::size_t j = 0; j < d; ++j) m.a_action(i, j, j) = (*chi)[i];
  m.r_action = Tensor3(d, l.dim, d);
  return m;
}

/// A itself as a left (A,L)-module through the anchor.
inline LeftLRModule base_as_left_module(const LieRinehartAlgebra& l) {
  LeftLRModule m;
  m.dim = l.base.dim;
  m.a_action = l.base.mult;
  m.l_action = Tensor3(l.dim, l.base.dim, l.base.dim);
  for (std::size_t i = 0; i < l.dim; ++i)
    for (std::size_t j = 0; j < l.base.dim; ++j)
      m.l_action.set_slice(i, j, l.anchor[i] * unit_vec(l.base.dim, j));
  return m;
}

}  // namespace lira
