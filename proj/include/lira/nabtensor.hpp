#pragma once

#include "lira/constructions.hpp"
#include "lira/uce.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lira {

namespace tensor_detail {

/// Ambient space A (x) L (x) M for the non-abelian tensor product; index
/// layout ((i * dimL) + j) * dimM + k.
struct Ambient {
  const LieRinehartAlgebra* l;
  const LieRinehartAlgebra* m;
  const Tensor3* l_on_m;  // (i,j,*) = ^{x_i} m_j
  const Tensor3* m_on_l;  // (i,j,*) = ^{m_i} x_j
  std::size_t na, nl, nm, dim;

  Ambient(const LieRinehartAlgebra& la, const LieRinehartAlgebra& ma, const Tensor3& lom,
          const Tensor3& mol)
      : l(&la), m(&ma), l_on_m(&lom), m_on_l(&mol), na(la.base.dim), nl(la.dim), nm(ma.dim),
        dim(la.base.dim * la.dim * ma.dim) {}

  std::size_t idx(std::size_t i, std::size_t j, std::size_t k) const {
    return (i * nl + j) * nm + k;
  }

  void add_tensor(Vec& out, const Rational& c, const Vec& a, const Vec& x, const Vec& mm) const {
    if (c.is_zero()) return;
    for (std::size_t i = 0; i < na; ++i) {
      if (a[i].is_zero()) continue;
      for (std::size_t j = 0; j < nl; ++j) {
        if (x[j].is_zero()) continue;
        const Rational cij = c * a[i] * x[j];
        for (std::size_t k = 0; k < nm; ++k)
          if (!mm[k].is_zero()) out[idx(i, j, k)] += cij * mm[k];
      }
    }
  }

  Vec act_l_on_m(const Vec& x, const Vec& mm) const {
    Vec out(nm);
    for (std::size_t i = 0; i < nl; ++i) {
      if (x[i].is_zero()) continue;
      for (std::size_t j = 0; j < nm; ++j)
        if (!mm[j].is_zero()) add_scaled(out, x[i] * mm[j], l_on_m->slice(i, j));
    }
    return out;
  }

  Vec act_m_on_l(const Vec& mm, const Vec& x) const {
    Vec out(nl);
    for (std::size_t i = 0; i < nm; ++i) {
      if (mm[i].is_zero()) continue;
      for (std::size_t j = 0; j < nl; ++j)
        if (!x[j].is_zero()) add_scaled(out, mm[i] * x[j], m_on_l->slice(i, j));
    }
    return out;
  }

  /// [alpha_L(x_j), alpha_M(m_k)].
  Matrix pair_derivation(std::size_t j, std::size_t k) const {
    return commutator_matrix(l->anchor[j], m->anchor[k]);
  }

  /// Relation (4):
  /// [a(x(x)m), b(y(x)n)] = -ab(^m x (x) ^y n) + a w_u(b)(y(x)n) - w_v(a) b (x(x)m)
  /// with w_u = [alpha x, alpha m], w_v = [alpha y, alpha n].
  Vec bracket_pure(std::size_t i, std::size_t j, std::size_t k, std::size_t p, std::size_t q,
                   std::size_t r) const {
    Vec out(dim);
    const Vec mx = m_on_l->slice(k, j);   // ^{m_k} x_j
    const Vec yn = l_on_m->slice(q, r);   // ^{y_q} n_r
    add_tensor(out, Rational(-1), l->base.mult.slice(i, p), mx, yn);
    const Matrix wu = pair_derivation(j, k);
    const Matrix wv = pair_derivation(q, r);
    add_tensor(out, Rational(1),
               l->base.multiply(unit_vec(na, i), wu * unit_vec(na, p)),
               unit_vec(nl, q), unit_vec(nm, r));
    add_tensor(out, Rational(-1),
               l->base.multiply(wv * unit_vec(na, i), unit_vec(na, p)),
               unit_vec(nl, j), unit_vec(nm, k));
    return out;
  }

  Vec bracket_vec_pure(const Vec& v, std::size_t p, std::size_t q, std::size_t r,
                       bool pure_on_right) const {
    Vec out(dim);
    for (std::size_t i = 0; i < na; ++i)
      for (std::size_t j = 0; j < nl; ++j)
        for (std::size_t k = 0; k < nm; ++k) {
          const Rational& c = v[idx(i, j, k)];
          if (c.is_zero()) continue;
          add_scaled(out, c,
                     pure_on_right ? bracket_pure(i, j, k, p, q, r)
                                   : bracket_pure(p, q, r, i, j, k));
        }
    return out;
  }

  Matrix anchor_pure(std::size_t i, std::size_t j, std::size_t k) const {
    return l->base.mult_operator(unit_vec(na, i)) * pair_derivation(j, k);
  }

  std::vector<Matrix> a_operators() const {
    std::vector<Matrix> ops;
    const std::size_t block = nl * nm;
    for (std::size_t q = 0; q < na; ++q) {
      Matrix op(dim, dim);
      for (std::size_t i = 0; i < na; ++i) {
        const Vec prod = l->base.mult.slice(q, i);
        for (std::size_t r = 0; r < na; ++r)
          if (!prod[r].is_zero())
            for (std::size_t t = 0; t < block; ++t) op(r * block + t, i * block + t) = prod[r];
      }
      ops.push_back(std::move(op));
    }
    return ops;
  }
};

}  // namespace tensor_detail

/// One-sided action of L on M in the sense of the three action axioms
/// (Leibniz over A, Lie-action law, derivation of the bracket).
inline ValidationReport validate_action(const LieRinehartAlgebra& l, const LieRinehartAlgebra& m,
                                        const Tensor3& act) {
  if (!(l.base == m.base)) throw std::invalid_argument("validate_action: different bases");
  if (act.d0 != l.dim || act.d1 != m.dim || act.d2 != m.dim)
    throw std::invalid_argument("validate_action: tensor shape mismatch");
  ValidationReport rep;
  const std::size_t na = l.base.dim;
  auto op = [&](std::size_t i) {
    Matrix r(m.dim, m.dim);
    for (std::size_t j = 0; j < m.dim; ++j) r.set_col(j, act.slice(i, j));
    return r;
  };
  auto op_of = [&](const Vec& x) {
    Matrix r(m.dim, m.dim);
    for (std::size_t i = 0; i < l.dim; ++i)
      if (!x[i].is_zero()) r = r + x[i] * op(i);
    return r;
  };
  for (std::size_t i = 0; i < l.dim; ++i)
    for (std::size_t q = 0; q < na; ++q) {
      // ^x(am) = a(^x m) + x(a) m
      const Matrix lhs = op(i) * m.act_operator(unit_vec(na, q));
      const Matrix rhs = m.act_operator(unit_vec(na, q)) * op(i) +
                         m.act_operator(l.anchor[i] * unit_vec(na, q));
      if (!(lhs == rhs)) rep.add("action-leibniz", {i, q});
    }
  for (std::size_t i = 0; i < l.dim; ++i)
    for (std::size_t j = i + 1; j < l.dim; ++j)
      if (!(op_of(l.bracket.slice(i, j)) == commutator_matrix(op(i), op(j))))
        rep.add("action-lie", {i, j});
  for (std::size_t i = 0; i < l.dim; ++i)
    for (std::size_t j = 0; j < m.dim; ++j)
      for (std::size_t k = j + 1; k < m.dim; ++k) {
        const Vec lhs = op(i) * m.bracket.slice(j, k);
        const Vec rhs = vec_add(m.brk(op(i) * unit_vec(m.dim, j), unit_vec(m.dim, k)),
                                m.brk(unit_vec(m.dim, j), op(i) * unit_vec(m.dim, k)));
        if (lhs != rhs) rep.add("action-bracket-derivation", {i, j, k});
      }
  return rep;
}

/// Mutual actions of L and M.
struct ActionPair {
  Tensor3 l_on_m;  // (i,j,*) = ^{x_i} m_j
  Tensor3 m_on_l;  // (i,j,*) = ^{m_i} x_j
};

/// Bracket actions of an algebra on itself (both directions).
inline ActionPair bracket_actions(const LieRinehartAlgebra& l) {
  return {l.bracket, l.bracket};
}

inline ValidationReport check_compatible(const LieRinehartAlgebra& l,
                                         const LieRinehartAlgebra& m, const ActionPair& pair) {
  ValidationReport rep;
  rep.merge(validate_action(l, m, pair.l_on_m), "l-on-m-");
  rep.merge(validate_action(m, l, pair.m_on_l), "m-on-l-");
  const tensor_detail::Ambient amb(l, m, pair.l_on_m, pair.m_on_l);
  for (std::size_t i = 0; i < l.dim; ++i)
    for (std::size_t j = 0; j < m.dim; ++j) {
      const Matrix lhs = Rational(-1) * l.anchor_of(pair.m_on_l.slice(j, i));
      const Matrix mid = m.anchor_of(pair.l_on_m.slice(i, j));
      const Matrix rhs = amb.pair_derivation(i, j);
      if (!(lhs == mid) || !(mid == rhs)) rep.add("compat-anchor", {i, j});
    }
  // ^{(^m x)} n = [n, ^x m]
  for (std::size_t j = 0; j < m.dim; ++j)
    for (std::size_t i = 0; i < l.dim; ++i)
      for (std::size_t k = 0; k < m.dim; ++k) {
        const Vec lhs = amb.act_l_on_m(pair.m_on_l.slice(j, i), unit_vec(m.dim, k));
        const Vec rhs = m.brk(unit_vec(m.dim, k), pair.l_on_m.slice(i, j));
        if (lhs != rhs) rep.add("compat-mxn", {j, i, k});
      }
  // ^{(^x m)} y = [y, ^m x]
  for (std::size_t i = 0; i < l.dim; ++i)
    for (std::size_t j = 0; j < m.dim; ++j)
      for (std::size_t k = 0; k < l.dim; ++k) {
        const Vec lhs = amb.act_m_on_l(pair.l_on_m.slice(i, j), unit_vec(l.dim, k));
        const Vec rhs = l.brk(unit_vec(l.dim, k), pair.m_on_l.slice(j, i));
        if (lhs != rhs) rep.add("compat-xmy", {i, j, k});
      }
  return rep;
}

// -------- crossed modules --------

/// boundary : R -> L for a Lie A-algebra R (zero anchor) carried by an action
/// of L on R.
struct CrossedModule {
  LieRinehartAlgebra l;
  LieRinehartAlgebra r;
  Matrix boundary;  // dim L x dim R
  Tensor3 action;   // (i,j,*) = x_i o r_j
};

inline ValidationReport validate_crossed_module(const CrossedModule& xm) {
  ValidationReport rep;
  rep.merge(validate_lr_action(xm.l, xm.r, xm.action), "action-");
  const std::size_t nr = xm.r.dim, nl = xm.l.dim, na = xm.l.base.dim;
  auto op = [&](std::size_t i) {
    Matrix m(nr, nr);
    for (std::size_t j = 0; j < nr; ++j) m.set_col(j, xm.action.slice(i, j));
    return m;
  };
  auto op_of = [&](const Vec& x) {
    Matrix m(nr, nr);
    for (std::size_t i = 0; i < nl; ++i)
      if (!x[i].is_zero()) m = m + x[i] * op(i);
    return m;
  };
  // (1) boundary(x o r) = [x, boundary(r)]
  for (std::size_t i = 0; i < nl; ++i)
    if (!(xm.boundary * op(i) == xm.l.ad(unit_vec(nl, i)) * xm.boundary))
      rep.add("equivariance", {i});
  // (2) boundary(r') o r = [r', r]
  for (std::size_t j = 0; j < nr; ++j)
    if (!(op_of(xm.boundary.col(j)) == xm.r.ad(unit_vec(nr, j)))) rep.add("peiffer", {j});
  // (3) boundary(a r) = a boundary(r)
  for (std::size_t q = 0; q < na; ++q)
    if (!(xm.boundary * xm.r.act_operator(unit_vec(na, q)) ==
          xm.l.act_operator(unit_vec(na, q)) * xm.boundary))
      rep.add("a-linearity", {q});
  // (4) boundary(r)(a) = 0
  for (std::size_t j = 0; j < nr; ++j)
    if (!xm.l.anchor_of(xm.boundary.col(j)).is_zero()) rep.add("anchor-trivial", {j});
  return rep;
}

/// Mutual actions of R1 and R2 through their crossed modules into the same N.
inline ActionPair actions_from_crossed_modules(const CrossedModule& xm1,
                                               const CrossedModule& xm2) {
  const std::size_t n1 = xm1.r.dim, n2 = xm2.r.dim;
  ActionPair pair;
  pair.l_on_m = Tensor3(n1, n2, n2);
  pair.m_on_l = Tensor3(n2, n1, n1);
  for (std::size_t i = 0; i < n1; ++i) {
    const Vec img = xm1.boundary.col(i);  // in N
    for (std::size_t j = 0; j < n2; ++j) {
      Vec out(n2);
      for (std::size_t t = 0; t < img.size(); ++t)
        if (!img[t].is_zero()) add_scaled(out, img[t], xm2.action.slice(t, j));
      pair.l_on_m.set_slice(i, j, out);
    }
  }
  for (std::size_t i = 0; i < n2; ++i) {
    const Vec img = xm2.boundary.col(i);
    for (std::size_t j = 0; j < n1; ++j) {
      Vec out(n1);
      for (std::size_t t = 0; t < img.size(); ++t)
        if (!img[t].is_zero()) add_scaled(out, img[t], xm1.action.slice(t, j));
      pair.m_on_l.set_slice(i, j, out);
    }
  }
  return pair;
}

// -------- the non-abelian tensor product --------

struct TensorAlgebra {
  QuotientPresentation presentation;
  LieRinehartAlgebra algebra;
  LRMorphism mu;  // into L
  LRMorphism nu;  // into M
};

namespace tensor_detail {

inline Subspace tensor_relations(const Ambient& amb, const std::vector<Vec>& extra_rows) {
  RrefBuilder b(amb.dim);
  const std::size_t na = amb.na, nl = amb.nl, nm = amb.nm;
  // (3a)  a (x) [x,y] (x) m - a (x) x (x) ^y m + a (x) y (x) ^x m
  for (std::size_t i = 0; i < na; ++i) {
    const Vec ea = unit_vec(na, i);
    for (std::size_t j = 0; j < nl; ++j)
      for (std::size_t k = j + 1; k < nl; ++k)
        for (std::size_t mm = 0; mm < nm; ++mm) {
          Vec v(amb.dim);
          amb.add_tensor(v, Rational(1), ea, amb.l->bracket.slice(j, k), unit_vec(nm, mm));
          amb.add_tensor(v, Rational(-1), ea, unit_vec(nl, j), amb.l_on_m->slice(k, mm));
          amb.add_tensor(v, Rational(1), ea, unit_vec(nl, k), amb.l_on_m->slice(j, mm));
          b.insert(std::move(v));
        }
    // (3b)  a (x) x (x) [m,n] - a (x) ^n x (x) m + a (x) ^m x (x) n
    for (std::size_t j = 0; j < nl; ++j)
      for (std::size_t k = 0; k < nm; ++k)
        for (std::size_t mm = k + 1; mm < nm; ++mm) {
          Vec v(amb.dim);
          amb.add_tensor(v, Rational(1), ea, unit_vec(nl, j), amb.m->bracket.slice(k, mm));
          amb.add_tensor(v, Rational(-1), ea, amb.m_on_l->slice(mm, j), unit_vec(nm, k));
          amb.add_tensor(v, Rational(1), ea, amb.m_on_l->slice(k, j), unit_vec(nm, mm));
          b.insert(std::move(v));
        }
  }
  for (const auto& row : extra_rows) b.insert(row);
  return close_under(Subspace::from_builder(b), amb.a_operators());
}

inline TensorAlgebra build_tensor(const LieRinehartAlgebra& l, const LieRinehartAlgebra& m,
                                  const ActionPair& pair, const std::vector<Vec>& extra_rows,
                                  bool check_well_defined) {
  const tensor_detail::Ambient amb(l, m, pair.l_on_m, pair.m_on_l);
  const Subspace rels = tensor_relations(amb, extra_rows);
  TensorAlgebra t;
  t.presentation = quotient(amb.dim, rels);
  const auto& pres = t.presentation;
  const std::size_t qd = pres.quotient_dim();
  std::vector<std::size_t> ti(qd), tj(qd), tk(qd);
  for (std::size_t s = 0; s < qd; ++s) {
    const std::size_t flat = pres.free_cols[s];
    ti[s] = flat / (amb.nl * amb.nm);
    tj[s] = (flat / amb.nm) % amb.nl;
    tk[s] = flat % amb.nm;
  }
  LieRinehartAlgebra& e = t.algebra;
  e.base = l.base;
  e.dim = qd;
  e.a_action = Tensor3(l.base.dim, qd, qd);
  e.bracket = Tensor3(qd, qd, qd);
  e.anchor.assign(qd, Matrix(l.base.dim, l.base.dim));
  const std::vector<Matrix> aops = amb.a_operators();
  for (std::size_t s = 0; s < qd; ++s) {
    e.anchor[s] = amb.anchor_pure(ti[s], tj[s], tk[s]);
    for (std::size_t s2 = 0; s2 < qd; ++s2)
      e.bracket.set_slice(
          s, s2, pres.project(amb.bracket_pure(ti[s], tj[s], tk[s], ti[s2], tj[s2], tk[s2])));
    for (std::size_t p = 0; p < l.base.dim; ++p)
      e.a_action.set_slice(p, s, pres.project(aops[p].col(pres.free_cols[s])));
  }
  // mu(a(x (x) m)) = -a(^m x),  nu(a(x (x) m)) = a(^x m)
  Matrix mu(l.dim, qd), nu(m.dim, qd);
  for (std::size_t s = 0; s < qd; ++s) {
    mu.set_col(s, scaled(l.act(unit_vec(amb.na, ti[s]), pair.m_on_l.slice(tk[s], tj[s])),
                         Rational(-1)));
    nu.set_col(s, m.act(unit_vec(amb.na, ti[s]), pair.l_on_m.slice(tj[s], tk[s])));
  }
  t.mu = {e, l, mu};
  t.nu = {e, m, nu};

  if (check_well_defined) {
    for (std::size_t r = 0; r < rels.rank(); ++r) {
      const Vec rel = rels.basis.row(r);
      for (std::size_t s = 0; s < qd; ++s) {
        if (!rels.contains(amb.bracket_vec_pure(rel, ti[s], tj[s], tk[s], true)))
          throw std::logic_error("tensor_product: bracket not well-defined (left)");
        if (!rels.contains(amb.bracket_vec_pure(rel, ti[s], tj[s], tk[s], false)))
          throw std::logic_error("tensor_product: bracket not well-defined (right)");
      }
      // anchor, mu and nu vanish on the relations
      Matrix anc(l.base.dim, l.base.dim);
      Vec muv(l.dim), nuv(m.dim);
      for (std::size_t i = 0; i < amb.na; ++i)
        for (std::size_t j = 0; j < amb.nl; ++j)
          for (std::size_t k = 0; k < amb.nm; ++k) {
            const Rational& cc = rel[amb.idx(i, j, k)];
            if (cc.is_zero()) continue;
            anc = anc + cc * amb.anchor_pure(i, j, k);
            add_scaled(muv, -cc, l.act(unit_vec(amb.na, i), pair.m_on_l.slice(k, j)));
            add_scaled(nuv, cc, m.act(unit_vec(amb.na, i), pair.l_on_m.slice(j, k)));
          }
      if (!anc.is_zero()) throw std::logic_error("tensor_product: anchor not well-defined");
      if (!is_zero_vec(muv)) throw std::logic_error("tensor_product: mu not well-defined");
      if (!is_zero_vec(nuv)) throw std::logic_error("tensor_product: nu not well-defined");
    }
    ValidationReport rep = validate_lr(e);
    if (!rep.ok()) throw std::logic_error("tensor_product: axioms fail: " + rep.summary());
    rep = validate_morphism(t.mu);
    if (!rep.ok()) throw std::logic_error("tensor_product: mu not a morphism: " + rep.summary());
    rep = validate_morphism(t.nu);
    if (!rep.ok()) throw std::logic_error("tensor_product: nu not a morphism: " + rep.summary());
  }
  return t;
}

}  // namespace tensor_detail

/// L (x) M for a compatible action pair.
inline TensorAlgebra tensor_product(const LieRinehartAlgebra& l, const LieRinehartAlgebra& m,
                                    const ActionPair& pair, bool check_well_defined = true) {
  const ValidationReport compat = check_compatible(l, m, pair);
  if (!compat.ok())
    throw std::invalid_argument("tensor_product: incompatible actions: " + compat.summary());
  return tensor_detail::build_tensor(l, m, pair, {}, check_well_defined);
}

/// K-bilinear pairing values g(x_i, m_j) with coordinates in a target algebra.
struct Pairing {
  Tensor3 values;  // (i,j,*) in target coordinates
};

inline ValidationReport validate_pairing(const LieRinehartAlgebra& l,
                                         const LieRinehartAlgebra& m, const ActionPair& pair,
                                         const LieRinehartAlgebra& target, const Pairing& f) {
  ValidationReport rep;
  const tensor_detail::Ambient amb(l, m, pair.l_on_m, pair.m_on_l);
  auto eval = [&](const Vec& x, const Vec& mm) {
    Vec out(target.dim);
    for (std::size_t i = 0; i < l.dim; ++i) {
      if (x[i].is_zero()) continue;
      for (std::size_t j = 0; j < m.dim; ++j)
        if (!mm[j].is_zero()) add_scaled(out, x[i] * mm[j], f.values.slice(i, j));
    }
    return out;
  };
  // (1) anchor condition
  for (std::size_t i = 0; i < l.dim; ++i)
    for (std::size_t j = 0; j < m.dim; ++j)
      if (!(target.anchor_of(f.values.slice(i, j)) == amb.pair_derivation(i, j)))
        rep.add("pairing-anchor", {i, j});
  // (2) f([x,y], m) = f(x, ^y m) - f(y, ^x m)
  for (std::size_t i = 0; i < l.dim; ++i)
    for (std::size_t j = i + 1; j < l.dim; ++j)
      for (std::size_t k = 0; k < m.dim; ++k) {
        const Vec lhs = eval(l.bracket.slice(i, j), unit_vec(m.dim, k));
        const Vec rhs = vec_sub(eval(unit_vec(l.dim, i), pair.l_on_m.slice(j, k)),
                                eval(unit_vec(l.dim, j), pair.l_on_m.slice(i, k)));
        if (lhs != rhs) rep.add("pairing-bracket-left", {i, j, k});
      }
  // (3) f(x, [m,n]) = f(^n x, m) - f(^m x, n)
  for (std::size_t i = 0; i < l.dim; ++i)
    for (std::size_t j = 0; j < m.dim; ++j)
      for (std::size_t k = j + 1; k < m.dim; ++k) {
        const Vec lhs = eval(unit_vec(l.dim, i), m.bracket.slice(j, k));
        const Vec rhs = vec_sub(eval(pair.m_on_l.slice(k, i), unit_vec(m.dim, j)),
                                eval(pair.m_on_l.slice(j, i), unit_vec(m.dim, k)));
        if (lhs != rhs) rep.add("pairing-bracket-right", {i, j, k});
      }
  // (4) f(a(^m x), b(^y n)) = -ab [f(x,m), f(y,n)] - a[ax,am](b) f(y,n)
  //     + [ay,an](a) b f(x,m)
  for (std::size_t qa = 0; qa < l.base.dim; ++qa)
    for (std::size_t i = 0; i < l.dim; ++i)
      for (std::size_t j = 0; j < m.dim; ++j)
        for (std::size_t qb = 0; qb < l.base.dim; ++qb)
          for (std::size_t k = 0; k < l.dim; ++k)
            for (std::size_t n = 0; n < m.dim; ++n) {
              const Vec ea = unit_vec(l.base.dim, qa), eb = unit_vec(l.base.dim, qb);
              const Vec lhs = eval(l.act(ea, pair.m_on_l.slice(j, i)),
                                   m.act(eb, pair.l_on_m.slice(k, n)));
              Vec rhs(target.dim);
              const Vec fxm = f.values.slice(i, j), fyn = f.values.slice(k, n);
              add_scaled(rhs, Rational(-1),
                         target.act(l.base.mult.slice(qa, qb), target.brk(fxm, fyn)));
              const Matrix wu = amb.pair_derivation(i, j);
              const Matrix wv = amb.pair_derivation(k, n);
              add_scaled(rhs, Rational(-1),
                         target.act(l.base.multiply(ea, wu * eb), fyn));
              add_scaled(rhs, Rational(1),
                         target.act(l.base.multiply(wv * ea, eb), fxm));
              if (lhs != rhs) rep.add("pairing-quadratic", {qa, i, j, qb, k, n});
            }
  return rep;
}

/// Factors a validated pairing through the tensor product: the unique
/// morphism T -> target with a(x (x) m) -> a f(x, m).
inline LRMorphism factor_pairing(const LieRinehartAlgebra& l, const LieRinehartAlgebra& m,
                                 const ActionPair& pair, const TensorAlgebra& t,
                                 const LieRinehartAlgebra& target, const Pairing& f) {
  const ValidationReport pv = validate_pairing(l, m, pair, target, f);
  if (!pv.ok())
    throw std::invalid_argument("factor_pairing: not a pairing: " + pv.summary());
  const tensor_detail::Ambient amb(l, m, pair.l_on_m, pair.m_on_l);
  auto value = [&](std::size_t i, std::size_t j, std::size_t k) {
    return target.act(unit_vec(amb.na, i), f.values.slice(j, k));
  };
  const std::size_t qd = t.presentation.quotient_dim();
  Matrix out(target.dim, qd);
  for (std::size_t s = 0; s < qd; ++s) {
    const std::size_t flat = t.presentation.free_cols[s];
    out.set_col(s, value(flat / (amb.nl * amb.nm), (flat / amb.nm) % amb.nl, flat % amb.nm));
  }
  const auto& rels = t.presentation.relations;
  for (std::size_t r = 0; r < rels.rank(); ++r) {
    const Vec rel = rels.basis.row(r);
    Vec img(target.dim);
    for (std::size_t i = 0; i < amb.na; ++i)
      for (std::size_t j = 0; j < amb.nl; ++j)
        for (std::size_t k = 0; k < amb.nm; ++k) {
          const Rational& c = rel[amb.idx(i, j, k)];
          if (!c.is_zero()) add_scaled(img, c, value(i, j, k));
        }
    if (!is_zero_vec(img))
      throw std::invalid_argument("factor_pairing: pairing does not kill the relations");
  }
  LRMorphism phi{t.algebra, target, out};
  const ValidationReport rep = validate_morphism(phi);
  if (!rep.ok())
    throw std::logic_error("factor_pairing: induced map not a morphism: " + rep.summary());
  return phi;
}

/// The symmetry isomorphism L (x) M -> M (x) L induced by the pairing
/// (x, m) -> -(m (x) x); the unsigned flip does not satisfy the quadratic
/// pairing axiom. Returns the pair of mutually inverse morphisms.
inline std::pair<LRMorphism, LRMorphism> symmetry_iso(const LieRinehartAlgebra& l,
                                                      const LieRinehartAlgebra& m,
                                                      const ActionPair& pair,
                                                      const TensorAlgebra& t_lm,
                                                      const TensorAlgebra& t_ml) {
  const ActionPair flipped{pair.m_on_l, pair.l_on_m};
  const tensor_detail::Ambient amb_ml(m, l, flipped.l_on_m, flipped.m_on_l);
  Pairing fwd;
  fwd.values = Tensor3(l.dim, m.dim, t_ml.algebra.dim);
  for (std::size_t j = 0; j < l.dim; ++j)
    for (std::size_t k = 0; k < m.dim; ++k) {
      Vec v(amb_ml.dim);
      amb_ml.add_tensor(v, Rational(-1), l.base.unit, unit_vec(m.dim, k), unit_vec(l.dim, j));
      fwd.values.set_slice(j, k, t_ml.presentation.project(v));
    }
  const LRMorphism to = factor_pairing(l, m, pair, t_lm, t_ml.algebra, fwd);
  const tensor_detail::Ambient amb_lm(l, m, pair.l_on_m, pair.m_on_l);
  Pairing bwd;
  bwd.values = Tensor3(m.dim, l.dim, t_lm.algebra.dim);
  for (std::size_t j = 0; j < m.dim; ++j)
    for (std::size_t k = 0; k < l.dim; ++k) {
      Vec v(amb_lm.dim);
      amb_lm.add_tensor(v, Rational(-1), l.base.unit, unit_vec(l.dim, k), unit_vec(m.dim, j));
      bwd.values.set_slice(j, k, t_lm.presentation.project(v));
    }
  const LRMorphism from = factor_pairing(m, l, flipped, t_ml, t_lm.algebra, bwd);
  if (!(from.matrix * to.matrix == Matrix::identity(t_lm.algebra.dim)) ||
      !(to.matrix * from.matrix == Matrix::identity(t_ml.algebra.dim)))
    throw std::logic_error("symmetry_iso: maps are not mutually inverse");
  return {to, from};
}

// -------- hat tensor and the uce comparison --------

struct HatTensorResult {
  TensorAlgebra tensor;
  UceAlgebra uce;
  LRMorphism from_uce;  // uce_A(L) -> L hat(x) L
  LRMorphism to_uce;    // L hat(x) L -> uce_A(L)
  bool central = false;
  bool iso = false;
  bool kernels_match = false;
};

/// L hat(x) L: the self tensor square with bracket actions plus the extra
/// relation family; for perfect L it is isomorphic to uce_A(L), certified by
/// explicit mutually inverse morphisms.
inline HatTensorResult hat_tensor(const LieRinehartAlgebra& l, bool check_well_defined = true) {
  if (!is_perfect(l)) throw std::invalid_argument("hat_tensor: L is not perfect");
  const ActionPair pair = bracket_actions(l);
  const ValidationReport compat = check_compatible(l, l, pair);
  if (!compat.ok())
    throw std::logic_error("hat_tensor: bracket actions incompatible: " + compat.summary());
  const tensor_detail::Ambient amb(l, l, pair.l_on_m, pair.m_on_l);
  const std::size_t na = amb.na, nl = amb.nl;

  std::vector<Vec> hat_rows;
  std::vector<Vec> bracket_span;
  {
    RrefBuilder bs(nl);
    for (std::size_t j = 0; j < nl; ++j)
      for (std::size_t k = j + 1; k < nl; ++k) bs.insert(l.bracket.slice(j, k));
    bracket_span = bs.rows();
  }
  if (l.has_zero_anchor()) {
    // a[x,y] (x) b[x',y'] = ab([x,y] (x) [x',y']); linear in u = [x,y] and
    // v = [x',y'].
    for (std::size_t i = 0; i < na; ++i)
      for (std::size_t p = 0; p < na; ++p) {
        const Vec ea = unit_vec(na, i), eb = unit_vec(na, p);
        if (ea == l.base.unit && eb == l.base.unit) continue;
        for (const auto& u : bracket_span)
          for (const auto& v : bracket_span) {
            Vec g(amb.dim);
            amb.add_tensor(g, Rational(1), l.base.unit, l.act(ea, u), l.act(eb, v));
            amb.add_tensor(g, Rational(-1), l.base.mult.slice(i, p), u, v);
            hat_rows.push_back(std::move(g));
          }
      }
  } else {
    // Full six-slot instantiation: the raw x (x) y and x' (x) y' terms block
    // any compression when the anchor is nonzero.
    for (std::size_t i = 0; i < na; ++i)
      for (std::size_t p = 0; p < na; ++p)
        for (std::size_t j = 0; j < nl; ++j)
          for (std::size_t k = 0; k < nl; ++k)
            for (std::size_t q = 0; q < nl; ++q)
              for (std::size_t r = 0; r < nl; ++r) {
                const Vec ea = unit_vec(na, i), eb = unit_vec(na, p);
                const Vec u = l.bracket.slice(j, k), v = l.bracket.slice(q, r);
                Vec g(amb.dim);
                amb.add_tensor(g, Rational(1), l.base.unit, l.act(ea, u), l.act(eb, v));
                amb.add_tensor(g, Rational(-1), l.base.mult.slice(i, p), u, v);
                amb.add_tensor(g, Rational(1), l.base.multiply(eb, l.anchor_of(v) * ea),
                               unit_vec(nl, j), unit_vec(nl, k));
                amb.add_tensor(g, Rational(-1), l.base.multiply(ea, l.anchor_of(u) * eb),
                               unit_vec(nl, q), unit_vec(nl, r));
                hat_rows.push_back(std::move(g));
              }
  }

  HatTensorResult res;
  res.tensor = tensor_detail::build_tensor(l, l, pair, hat_rows, check_well_defined);
  res.uce = build_uce(l, check_well_defined);
  res.central = is_central(res.tensor.mu).central();
  res.from_uce = universal_lift(identity_morphism(l), res.tensor.mu, res.uce);
  Pairing uce_pairing;
  uce_pairing.values = Tensor3(nl, nl, res.uce.algebra.dim);
  for (std::size_t j = 0; j < nl; ++j)
    for (std::size_t k = 0; k < nl; ++k) {
      Vec ambv(res.uce.presentation.ambient_dim);
      const uce_detail::Ambient uamb(l);
      uamb.add_tensor(ambv, Rational(1), l.base.unit, unit_vec(nl, j), unit_vec(nl, k));
      uce_pairing.values.set_slice(j, k, res.uce.presentation.project(ambv));
    }
  res.to_uce = factor_pairing(l, l, pair, res.tensor, res.uce.algebra, uce_pairing);
  res.iso =
      res.to_uce.matrix * res.from_uce.matrix == Matrix::identity(res.uce.algebra.dim) &&
      res.from_uce.matrix * res.to_uce.matrix == Matrix::identity(res.tensor.algebra.dim);
  res.kernels_match =
      apply(res.from_uce.matrix, res.uce.uce_kernel) == kernel(res.tensor.mu.matrix) &&
      res.uce.uce_kernel.rank() == kernel(res.tensor.mu.matrix).rank();
  return res;
}

// -------- right-exactness of - (x) P --------

struct TensorExactness {
  bool hypotheses = false;
  bool composite_zero = false;
  bool surjective = false;
  bool exact = false;

  bool ok() const { return hypotheses && composite_zero && surjective && exact; }
};

/// For an exact pair L -f-> M -g->> N and compatible P-actions preserved by
/// f and g, checks exactness of L(x)P -> M(x)P -> N(x)P.
inline TensorExactness tensor_exactness(const LRMorphism& f, const LRMorphism& g,
                                        const LieRinehartAlgebra& p, const ActionPair& lp,
                                        const ActionPair& mp, const ActionPair& np) {
  TensorExactness rep;
  const auto& l = f.source;
  const auto& m = g.source;
  const auto& n = g.target;
  bool hyp = validate_morphism(f).ok() && validate_morphism(g).ok() && is_surjective(g) &&
             image(f.matrix) == kernel(g.matrix);
  hyp = hyp && check_compatible(l, p, lp).ok() && check_compatible(m, p, mp).ok() &&
        check_compatible(n, p, np).ok();
  // f and g preserve the actions in both directions.
  for (std::size_t q = 0; q < p.dim && hyp; ++q) {
    Matrix pl(l.dim, l.dim), pm(m.dim, m.dim), pn(n.dim, n.dim);
    for (std::size_t j = 0; j < l.dim; ++j) pl.set_col(j, lp.m_on_l.slice(q, j));
    for (std::size_t j = 0; j < m.dim; ++j) pm.set_col(j, mp.m_on_l.slice(q, j));
    for (std::size_t j = 0; j < n.dim; ++j) pn.set_col(j, np.m_on_l.slice(q, j));
    if (!(f.matrix * pl == pm * f.matrix)) hyp = false;
    if (!(g.matrix * pm == pn * g.matrix)) hyp = false;
  }
  for (std::size_t j = 0; j < l.dim && hyp; ++j) {
    // ^{x} p = ^{f(x)} p
    Matrix via_f(p.dim, p.dim);
    const Vec fx = f.matrix.col(j);
    for (std::size_t t = 0; t < m.dim; ++t)
      if (!fx[t].is_zero())
        for (std::size_t c = 0; c < p.dim; ++c) {
          const Vec img = mp.l_on_m.slice(t, c);
          for (std::size_t rr = 0; rr < p.dim; ++rr) via_f(rr, c) += fx[t] * img[rr];
        }
    Matrix direct(p.dim, p.dim);
    for (std::size_t c = 0; c < p.dim; ++c) direct.set_col(c, lp.l_on_m.slice(j, c));
    if (!(via_f == direct)) hyp = false;
  }
  for (std::size_t j = 0; j < m.dim && hyp; ++j) {
    Matrix via_g(p.dim, p.dim);
    const Vec gx = g.matrix.col(j);
    for (std::size_t t = 0; t < n.dim; ++t)
      if (!gx[t].is_zero())
        for (std::size_t c = 0; c < p.dim; ++c) {
          const Vec img = np.l_on_m.slice(t, c);
          for (std::size_t rr = 0; rr < p.dim; ++rr) via_g(rr, c) += gx[t] * img[rr];
        }
    Matrix direct(p.dim, p.dim);
    for (std::size_t c = 0; c < p.dim; ++c) direct.set_col(c, mp.l_on_m.slice(j, c));
    if (!(via_g == direct)) hyp = false;
  }
  rep.hypotheses = hyp;
  if (!hyp) return rep;

  const TensorAlgebra tl = tensor_detail::build_tensor(l, p, lp, {}, false);
  const TensorAlgebra tm = tensor_detail::build_tensor(m, p, mp, {}, false);
  const TensorAlgebra tn = tensor_detail::build_tensor(n, p, np, {}, false);
  const tensor_detail::Ambient ambl(l, p, lp.l_on_m, lp.m_on_l);
  const tensor_detail::Ambient ambm(m, p, mp.l_on_m, mp.m_on_l);
  const tensor_detail::Ambient ambn(n, p, np.l_on_m, np.m_on_l);
  auto induced = [&](const TensorAlgebra& src, const tensor_detail::Ambient& asrc,
                     const TensorAlgebra& dst, const tensor_detail::Ambient& adst,
                     const Matrix& map) {
    const std::size_t qd = src.presentation.quotient_dim();
    Matrix out(dst.presentation.quotient_dim(), qd);
    for (std::size_t s = 0; s < qd; ++s) {
      const std::size_t flat = src.presentation.free_cols[s];
      const std::size_t i = flat / (asrc.nl * asrc.nm);
      const std::size_t j = (flat / asrc.nm) % asrc.nl;
      const std::size_t k = flat % asrc.nm;
      Vec img(adst.dim);
      adst.add_tensor(img, Rational(1), unit_vec(asrc.na, i), map.col(j),
                      unit_vec(asrc.nm, k));
      out.set_col(s, dst.presentation.project(img));
    }
    // relation rows must land in the target relations
    const auto& rels = src.presentation.relations;
    for (std::size_t r = 0; r < rels.rank(); ++r) {
      const Vec rel = rels.basis.row(r);
      Vec img(adst.dim);
      for (std::size_t i = 0; i < asrc.na; ++i)
        for (std::size_t j = 0; j < asrc.nl; ++j)
          for (std::size_t k = 0; k < asrc.nm; ++k) {
            const Rational& c = rel[asrc.idx(i, j, k)];
            if (!c.is_zero())
              adst.add_tensor(img, c, unit_vec(asrc.na, i), map.col(j),
                              unit_vec(asrc.nm, k));
          }
      if (!dst.presentation.relations.contains(img))
        throw std::logic_error("tensor_exactness: relations not preserved");
    }
    return out;
  };
  const Matrix f1 = induced(tl, ambl, tm, ambm, f.matrix);
  const Matrix g1 = induced(tm, ambm, tn, ambn, g.matrix);
  rep.composite_zero = (g1 * f1).is_zero();
  rep.surjective = image(g1).rank() == tn.presentation.quotient_dim();
  rep.exact = image(f1) == kernel(g1);
  return rep;
}

/// The module-style tensor of two A-modules presented over A (x) V (x) W; the
/// trivial-action comparison target L^ab (x)_mod M^ab.
inline std::size_t module_tensor_dim(const CommAlgebra& a, std::size_t v, std::size_t w) {
  return a.dim * v * w;
}

}  // namespace lira
