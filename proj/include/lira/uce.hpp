#pragma once

#include "lira/constructions.hpp"
#include "lira/lie_rinehart.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lira {

// The ambient space of uce_A(L) is A (x) L (x) L with basis tensors
// a_i (x) x_j (x) x_k, flattened as ((i * dimL) + j) * dimL + k.

namespace uce_detail {

struct Ambient {
  const LieRinehartAlgebra* l;
  std::size_t na, nl, dim;

  explicit Ambient(const LieRinehartAlgebra& alg)
      : l(&alg), na(alg.base.dim), nl(alg.dim), dim(alg.base.dim * alg.dim * alg.dim) {}

  std::size_t idx(std::size_t i, std::size_t j, std::size_t k) const {
    return (i * nl + j) * nl + k;
  }

  /// Adds c * (a (x) x (x) y) for coordinate vectors a, x, y.
  void add_tensor(Vec& out, const Rational& c, const Vec& a, const Vec& x, const Vec& y) const {
    if (c.is_zero()) return;
    for (std::size_t i = 0; i < na; ++i) {
      if (a[i].is_zero()) continue;
      for (std::size_t j = 0; j < nl; ++j) {
        if (x[j].is_zero()) continue;
        const Rational cij = c * a[i] * x[j];
        for (std::size_t k = 0; k < nl; ++k)
          if (!y[k].is_zero()) out[idx(i, j, k)] += cij * y[k];
      }
    }
  }

  /// uce(a (x) x (x) y) = a [x, y], extended linearly.
  Vec uce_value(const Vec& v) const {
    Vec out(nl);
    for (std::size_t i = 0; i < na; ++i)
      for (std::size_t j = 0; j < nl; ++j)
        for (std::size_t k = 0; k < nl; ++k) {
          const Rational& c = v[idx(i, j, k)];
          if (!c.is_zero())
            add_scaled(out, c, l->act(unit_vec(na, i), l->bracket.slice(j, k)));
        }
    return out;
  }

  /// Bracket of a pure tensor with a pure tensor:
  /// [(a,x,y),(a',x',y')] = (aa',[x,y],[x',y']) + (a[x,y](a'), x',y')
  ///                        - ([x',y'](a) a', x, y).
  Vec bracket_pure(std::size_t i, std::size_t j, std::size_t k, std::size_t p, std::size_t q,
                   std::size_t r) const {
    Vec out(dim);
    const Vec bjk = l->bracket.slice(j, k);
    const Vec bqr = l->bracket.slice(q, r);
    const Vec ea = unit_vec(na, i), eap = unit_vec(na, p);
    add_tensor(out, Rational(1), l->base.mult.slice(i, p), bjk, bqr);
    add_tensor(out, Rational(1), l->base.multiply(ea, l->anchor_of(bjk) * eap),
               unit_vec(nl, q), unit_vec(nl, r));
    add_tensor(out, Rational(-1), l->base.multiply(l->anchor_of(bqr) * ea, eap),
               unit_vec(nl, j), unit_vec(nl, k));
    return out;
  }

  /// Bracket of an arbitrary ambient vector with a pure tensor (and the
  /// reverse), by bilinearity.
  Vec bracket_vec_pure(const Vec& v, std::size_t p, std::size_t q, std::size_t r,
                       bool pure_on_right) const {
    Vec out(dim);
    for (std::size_t i = 0; i < na; ++i)
      for (std::size_t j = 0; j < nl; ++j)
        for (std::size_t k = 0; k < nl; ++k) {
          const Rational& c = v[idx(i, j, k)];
          if (c.is_zero()) continue;
          const Vec term = pure_on_right ? bracket_pure(i, j, k, p, q, r)
                                         : bracket_pure(p, q, r, i, j, k);
          add_scaled(out, c, term);
        }
    return out;
  }

  /// Anchor of a pure tensor: b -> a ([x,y](b)).
  Matrix anchor_pure(std::size_t i, std::size_t j, std::size_t k) const {
    return l->base.mult_operator(unit_vec(na, i)) * l->anchor_of(l->bracket.slice(j, k));
  }

  /// A-action operators on the ambient space (multiplication on the A slot).
  std::vector<Matrix> a_operators() const {
    std::vector<Matrix> ops;
    const std::size_t nll = nl * nl;
    for (std::size_t q = 0; q < na; ++q) {
      Matrix op(dim, dim);
      for (std::size_t i = 0; i < na; ++i) {
        const Vec prod = l->base.mult.slice(q, i);
        for (std::size_t r = 0; r < na; ++r)
          if (!prod[r].is_zero())
            for (std::size_t t = 0; t < nll; ++t) op(r * nll + t, i * nll + t) = prod[r];
      }
      ops.push_back(std::move(op));
    }
    return ops;
  }
};

}  // namespace uce_detail

/// M_A L: the A-submodule of A (x) L (x) L spanned by the four generator
/// families, closed under the A-action.
struct RelationSpan {
  std::size_t ambient_dim = 0;
  Subspace span;
};

inline RelationSpan relation_span(const LieRinehartAlgebra& l) {
  const uce_detail::Ambient amb(l);
  const std::size_t na = amb.na, nl = amb.nl;
  RrefBuilder b(amb.dim);

  // (1)  a (x) x (x) x  on the basis diagonal; cross terms come from (2)
  //      by polarization in characteristic zero.
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < nl; ++j) {
      Vec v(amb.dim);
      v[amb.idx(i, j, j)] = 1;
      b.insert(std::move(v));
    }
  // (2)  a (x) x (x) y + a (x) y (x) x
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < nl; ++j)
      for (std::size_t k = j + 1; k < nl; ++k) {
        Vec v(amb.dim);
        v[amb.idx(i, j, k)] = 1;
        v[amb.idx(i, k, j)] = 1;
        b.insert(std::move(v));
      }
  // (3)  a (x) x (x) [y,z] + a (x) y (x) [z,x] + a (x) z (x) [x,y]
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < nl; ++j)
      for (std::size_t k = j + 1; k < nl; ++k)
        for (std::size_t m = k + 1; m < nl; ++m) {
          Vec v(amb.dim);
          const Vec ea = unit_vec(na, i);
          amb.add_tensor(v, Rational(1), ea, unit_vec(nl, j), l.bracket.slice(k, m));
          amb.add_tensor(v, Rational(1), ea, unit_vec(nl, k), l.bracket.slice(m, j));
          amb.add_tensor(v, Rational(1), ea, unit_vec(nl, m), l.bracket.slice(j, k));
          b.insert(std::move(v));
        }
  // (4)  a (x) [x,y] (x) [x',y'] + [x,y](a) (x) x' (x) y'
  //      - 1 (x) [x,y] (x) a[x',y'].
  // The family is linear in u = [x,y], so u runs over a basis of the K-span
  // of bracket values; with a zero anchor it is also linear in v = [x',y'].
  std::vector<Vec> bracket_span;
  {
    RrefBuilder bs(nl);
    for (std::size_t j = 0; j < nl; ++j)
      for (std::size_t k = j + 1; k < nl; ++k) bs.insert(l.bracket.slice(j, k));
    bracket_span = bs.rows();
  }
  if (l.has_zero_anchor()) {
    for (std::size_t i = 0; i < na; ++i) {
      const Vec ea = unit_vec(na, i);
      if (ea == l.base.unit) continue;
      for (const auto& u : bracket_span)
        for (const auto& v : bracket_span) {
          Vec g(amb.dim);
          amb.add_tensor(g, Rational(1), ea, u, v);
          amb.add_tensor(g, Rational(-1), l.base.unit, u, l.act(ea, v));
          b.insert(std::move(g));
        }
    }
  } else {
    for (std::size_t i = 0; i < na; ++i) {
      const Vec ea = unit_vec(na, i);
      for (const auto& u : bracket_span) {
        const Matrix du = l.anchor_of(u);
        for (std::size_t p = 0; p < nl; ++p)
          for (std::size_t q = p + 1; q < nl; ++q) {
            Vec g(amb.dim);
            const Vec v = l.bracket.slice(p, q);
            amb.add_tensor(g, Rational(1), ea, u, v);
            amb.add_tensor(g, Rational(1), du * ea, unit_vec(nl, p), unit_vec(nl, q));
            amb.add_tensor(g, Rational(-1), l.base.unit, u, l.act(ea, v));
            b.insert(std::move(g));
          }
      }
    }
  }
  RelationSpan rs;
  rs.ambient_dim = amb.dim;
  rs.span = close_under(Subspace::from_builder(b), amb.a_operators());
  return rs;
}

/// uce_A(L) = (A (x) L (x) L) / M_A L with the induced bracket, anchor and
/// A-action, together with the map uce into L.
struct UceAlgebra {
  QuotientPresentation presentation;
  LieRinehartAlgebra algebra;
  LRMorphism uce_morphism;  // uce_A(L) -> L
  Subspace uce_kernel;      // Ker uce, in quotient coordinates
};

inline UceAlgebra build_uce(const LieRinehartAlgebra& l, bool check_well_defined = true) {
  const uce_detail::Ambient amb(l);
  const RelationSpan rs = relation_span(l);
  UceAlgebra u;
  u.presentation = quotient(amb.dim, rs.span);
  const auto& pres = u.presentation;
  const std::size_t qd = pres.quotient_dim();

  // Every section column is a pure basis tensor (canonical complement).
  std::vector<std::size_t> ti(qd), tj(qd), tk(qd);
  for (std::size_t t = 0; t < qd; ++t) {
    const std::size_t flat = pres.free_cols[t];
    ti[t] = flat / (amb.nl * amb.nl);
    tj[t] = (flat / amb.nl) % amb.nl;
    tk[t] = flat % amb.nl;
  }

  LieRinehartAlgebra& e = u.algebra;
  e.base = l.base;
  e.dim = qd;
  e.a_action = Tensor3(l.base.dim, qd, qd);
  e.bracket = Tensor3(qd, qd, qd);
  e.anchor.assign(qd, Matrix(l.base.dim, l.base.dim));
  const std::vector<Matrix> aops = amb.a_operators();
  for (std::size_t t = 0; t < qd; ++t) {
    e.anchor[t] = amb.anchor_pure(ti[t], tj[t], tk[t]);
    for (std::size_t s = 0; s < qd; ++s)
      e.bracket.set_slice(t, s,
                          pres.project(amb.bracket_pure(ti[t], tj[t], tk[t], ti[s], tj[s], tk[s])));
    for (std::size_t p = 0; p < l.base.dim; ++p)
      e.a_action.set_slice(p, t, pres.project(aops[p].col(pres.free_cols[t])));
  }

  Matrix uce_mat(l.dim, qd);
  for (std::size_t t = 0; t < qd; ++t)
    uce_mat.set_col(t, l.act(unit_vec(l.base.dim, ti[t]), l.bracket.slice(tj[t], tk[t])));
  u.uce_morphism = {e, l, uce_mat};
  u.uce_kernel = kernel(uce_mat);

  if (check_well_defined) {
    // Mechanized "easy, but tedious calculation": the ambient bracket maps
    // (M_A L, pure tensor) pairs into M_A L on both sides, the A-action
    // operators stabilize M_A L, and uce vanishes on M_A L.
    for (std::size_t rrow = 0; rrow < rs.span.rank(); ++rrow) {
      const Vec rel = rs.span.basis.row(rrow);
      if (!is_zero_vec(amb.uce_value(rel)))
        throw std::logic_error("build_uce: uce does not vanish on M_A L");
      for (std::size_t t = 0; t < qd; ++t) {
        if (!rs.span.contains(amb.bracket_vec_pure(rel, ti[t], tj[t], tk[t], true)))
          throw std::logic_error("build_uce: bracket not well-defined (left)");
        if (!rs.span.contains(amb.bracket_vec_pure(rel, ti[t], tj[t], tk[t], false)))
          throw std::logic_error("build_uce: bracket not well-defined (right)");
      }
      for (const auto& op : aops)
        if (!rs.span.contains(op * rel))
          throw std::logic_error("build_uce: A-action not well-defined");
    }
    const ValidationReport rep = validate_lr(e);
    if (!rep.ok())
      throw std::logic_error("build_uce: quotient fails axioms: " + rep.summary());
    const ValidationReport mor = validate_morphism(u.uce_morphism);
    if (!mor.ok())
      throw std::logic_error("build_uce: uce is not a morphism: " + mor.summary());
  }
  return u;
}

/// uce_A(f) : uce_A(L) -> uce_A(M), (a,x,y) -> (a, f(x), f(y)).
inline LRMorphism uce_on_morphism(const LRMorphism& f, const UceAlgebra& ul,
                                  const UceAlgebra& um) {
  const uce_detail::Ambient ambl(f.source);
  const uce_detail::Ambient ambm(f.target);
  const std::size_t qd = ul.presentation.quotient_dim();
  Matrix out(um.presentation.quotient_dim(), qd);
  for (std::size_t t = 0; t < qd; ++t) {
    const std::size_t flat = ul.presentation.free_cols[t];
    const std::size_t i = flat / (ambl.nl * ambl.nl);
    const std::size_t j = (flat / ambl.nl) % ambl.nl;
    const std::size_t k = flat % ambl.nl;
    Vec img(ambm.dim);
    ambm.add_tensor(img, Rational(1), unit_vec(ambl.na, i), f.matrix.col(j), f.matrix.col(k));
    out.set_col(t, um.presentation.project(img));
  }
  // Ambient map sends M_A L into M_A M; checked on the relation basis.
  for (std::size_t r = 0; r < ul.presentation.relations.rank(); ++r) {
    const Vec rel = ul.presentation.relations.basis.row(r);
    Vec img(ambm.dim);
    for (std::size_t i = 0; i < ambl.na; ++i)
      for (std::size_t j = 0; j < ambl.nl; ++j)
        for (std::size_t k = 0; k < ambl.nl; ++k) {
          const Rational& c = rel[ambl.idx(i, j, k)];
          if (!c.is_zero())
            ambm.add_tensor(img, c, unit_vec(ambl.na, i), f.matrix.col(j), f.matrix.col(k));
        }
    if (!um.presentation.relations.contains(img))
      throw std::logic_error("uce_on_morphism: relations not preserved");
  }
  LRMorphism uf{ul.algebra, um.algebra, out};
  if (!(um.uce_morphism.matrix * uf.matrix == f.matrix * ul.uce_morphism.matrix))
    throw std::logic_error("uce_on_morphism: naturality square does not commute");
  return uf;
}

inline LRMorphism uce_on_morphism(const LRMorphism& f) {
  const UceAlgebra ul = build_uce(f.source, false);
  const UceAlgebra um = build_uce(f.target, false);
  return uce_on_morphism(f, ul, um);
}

inline bool is_perfect(const LieRinehartAlgebra& l) {
  return derived_subspace(l).rank() == l.dim;
}

/// Central-extension check; throws when p is not surjective.
inline CentralExtensionWitness is_central(const LRMorphism& p) {
  if (!is_surjective(p)) throw std::invalid_argument("is_central: morphism is not surjective");
  return centrality_witness(p);
}

/// The lift of Proposition-style diagrams: given f : L -> M and a central
/// extension g : M' ->> M, produces  uce_A(L) -> M',
/// (a,x,y) -> a [s f(x), s f(y)]  for the pivot-based linear section s of g.
inline LRMorphism universal_lift(const LRMorphism& f, const LRMorphism& g, const UceAlgebra& ul) {
  const CentralExtensionWitness w = is_central(g);
  if (!w.central())
    throw std::invalid_argument("universal_lift: g is not central: " + w.centrality.summary());
  if (!(f.target.dim == g.target.dim))
    throw std::invalid_argument("universal_lift: mismatched targets");
  const Matrix s = right_inverse(g.matrix);
  const auto& mp = g.source;
  const uce_detail::Ambient ambl(f.source);
  auto value = [&](std::size_t i, std::size_t j, std::size_t k) {
    return mp.act(unit_vec(ambl.na, i),
                  mp.brk(s * (f.matrix.col(j)), s * (f.matrix.col(k))));
  };
  const std::size_t qd = ul.presentation.quotient_dim();
  Matrix out(mp.dim, qd);
  for (std::size_t t = 0; t < qd; ++t) {
    const std::size_t flat = ul.presentation.free_cols[t];
    out.set_col(t, value(flat / (ambl.nl * ambl.nl), (flat / ambl.nl) % ambl.nl,
                         flat % ambl.nl));
  }
  // The map vanishes on M_A L.
  for (std::size_t r = 0; r < ul.presentation.relations.rank(); ++r) {
    const Vec rel = ul.presentation.relations.basis.row(r);
    Vec img(mp.dim);
    for (std::size_t i = 0; i < ambl.na; ++i)
      for (std::size_t j = 0; j < ambl.nl; ++j)
        for (std::size_t k = 0; k < ambl.nl; ++k) {
          const Rational& c = rel[ambl.idx(i, j, k)];
          if (!c.is_zero()) add_scaled(img, c, value(i, j, k));
        }
    if (!is_zero_vec(img))
      throw std::logic_error("universal_lift: map does not vanish on M_A L");
  }
  LRMorphism lift{ul.algebra, mp, out};
  if (!(g.matrix * lift.matrix == f.matrix * ul.uce_morphism.matrix))
    throw std::logic_error("universal_lift: diagram does not commute");
  return lift;
}

inline LRMorphism universal_lift(const LRMorphism& f, const LRMorphism& g) {
  const UceAlgebra ul = build_uce(f.source, false);
  return universal_lift(f, g, ul);
}

/// Dimension of { d : E' -> Ker p, A-linear, vanishing on {E', E'} }. Zero
/// means any two morphism lifts into the central extension p agree (the
/// central trick); E' is the lift source.
inline std::size_t lift_ambiguity_dim(const LieRinehartAlgebra& source, const LRMorphism& p) {
  const Subspace ker = kernel(p.matrix);
  const Subspace comm = derived_subspace(source);
  const std::size_t kr = ker.rank();
  const std::size_t un = kr * source.dim;  // d = K * t, t : source -> K^kr
  std::vector<Vec> rows;
  // A-linearity: t(a_q x_j) = (A-action on Ker p in kernel coordinates) t(x_j)
  for (std::size_t q = 0; q < p.source.base.dim; ++q) {
    // kernel is A-stable (it is an ideal); express action in kernel coords
    Matrix kact(kr, kr);
    for (std::size_t t = 0; t < kr; ++t) {
      const auto coords =
          ker.coordinates(p.source.act(unit_vec(p.source.base.dim, q), ker.basis.row(t)));
      if (!coords) throw std::logic_error("lift_ambiguity_dim: kernel not A-stable");
      kact.set_col(t, *coords);
    }
    for (std::size_t j = 0; j < source.dim; ++j) {
      const Vec ax = source.a_action.slice(q, j);
      for (std::size_t k = 0; k < kr; ++k) {
        Vec row(un);
        for (std::size_t c = 0; c < source.dim; ++c)
          if (!ax[c].is_zero()) row[k * source.dim + c] += ax[c];
        for (std::size_t r = 0; r < kr; ++r)
          if (!kact(k, r).is_zero()) row[r * source.dim + j] -= kact(k, r);
        rows.push_back(std::move(row));
      }
    }
  }
  // Vanishing on the derived subspace.
  for (std::size_t c = 0; c < comm.rank(); ++c) {
    const Vec v = comm.basis.row(c);
    for (std::size_t k = 0; k < kr; ++k) {
      Vec row(un);
      for (std::size_t j = 0; j < source.dim; ++j)
        if (!v[j].is_zero()) row[k * source.dim + j] = v[j];
      rows.push_back(std::move(row));
    }
  }
  if (rows.empty()) return un;
  return kernel(Matrix::from_rows(rows, un)).rank();
}

// -------- characterization battery (Theorem on unique splitting) --------

struct BatteryItem {
  std::string name;
  bool central = false;
  bool split_found = false;
  bool split_unique = false;
  bool lemma_sum = false;     // E = {E,E} + Ker p
  bool lemma_center = false;  // Z_A(E) = p^{-1}(Z_A(L))

  bool ok() const { return central && split_found && split_unique && lemma_sum && lemma_center; }
};

struct CharacterizationReport {
  std::vector<BatteryItem> items;
  bool uce_perfect = false;
  bool kernel_central = false;

  bool ok() const {
    if (!uce_perfect || !kernel_central) return false;
    for (const auto& item : items)
      if (!item.ok()) return false;
    return !items.empty();
  }
};

/// L x K_chi: the trivial product central extension with a one-dimensional
/// abelian kernel carried by the residue character.
inline LRMorphism product_with_line(const LieRinehartAlgebra& l) {
  const auto chi = residue_character(l.base);
  if (!chi) throw std::invalid_argument("product_with_line: no residue character");
  LieRinehartAlgebra e;
  e.base = l.base;
  e.dim = l.dim + 1;
  e.a_action = Tensor3(l.base.dim, e.dim, e.dim);
  e.bracket = Tensor3(e.dim, e.dim, e.dim);
  e.anchor.assign(e.dim, Matrix(l.base.dim, l.base.dim));
  for (std::size_t q = 0; q < l.base.dim; ++q) {
    for (std::size_t j = 0; j < l.dim; ++j) {
      Vec v(e.dim);
      const Vec av = l.a_action.slice(q, j);
      for (std::size_t k = 0; k < l.dim; ++k) v[k] = av[k];
      e.a_action.set_slice(q, j, v);
    }
    Vec v(e.dim);
    v[l.dim] = (*chi)[q];
    e.a_action.set_slice(q, l.dim, v);
  }
  for (std::size_t i = 0; i < l.dim; ++i) {
    e.anchor[i] = l.anchor[i];
    for (std::size_t j = 0; j < l.dim; ++j) {
      Vec v(e.dim);
      const Vec bv = l.bracket.slice(i, j);
      for (std::size_t k = 0; k < l.dim; ++k) v[k] = bv[k];
      e.bracket.set_slice(i, j, v);
    }
  }
  const ValidationReport rep = validate_lr(e);
  if (!rep.ok()) throw std::logic_error("product_with_line: invalid: " + rep.summary());
  Matrix p(l.dim, e.dim);
  for (std::size_t i = 0; i < l.dim; ++i) p(i, i) = 1;
  return {e, l, p};
}

inline BatteryItem run_battery_item(const std::string& name, const LRMorphism& p,
                                    const UceAlgebra& u, const LieRinehartAlgebra& l) {
  BatteryItem item;
  item.name = name;
  const CentralExtensionWitness w = is_central(p);
  item.central = w.central();
  if (!item.central) return item;
  // Unique splitting against uce_A: f with p f = uce.
  const LRMorphism lift = universal_lift(identity_morphism(l), p, u);
  item.split_found = validate_morphism(lift).ok();
  item.split_unique = lift_ambiguity_dim(u.algebra, p) == 0;
  // Lemma (a): E = {E,E} + Ker p.
  item.lemma_sum =
      derived_subspace(p.source).sum(w.kernel_space) == Subspace::full(p.source.dim);
  // Lemma (b): Z_A(E) = p^{-1}(Z_A(L)).
  const Subspace zl = center(l);
  const QuotientPresentation zq = quotient(l.dim, zl);
  item.lemma_center = kernel(zq.projection * p.matrix) == center(p.source);
  return item;
}

/// Verifies the unique-splitting characterization for perfect L over a finite
/// battery of central extensions of L: the trivial product with a line,
/// pullbacks of uce along supplied automorphisms, and quotients of uce_A(L)
/// by subspaces of Ker uce.
inline CharacterizationReport verify_characterization(
    const LieRinehartAlgebra& l, const std::vector<Matrix>& automorphisms = {}) {
  if (!is_perfect(l)) throw std::invalid_argument("verify_characterization: L is not perfect");
  CharacterizationReport rep;
  const UceAlgebra u = build_uce(l);
  rep.uce_perfect = is_perfect(u.algebra);
  rep.kernel_central = center(u.algebra).contains(u.uce_kernel);

  if (residue_character(l.base))
    rep.items.push_back(run_battery_item("product-with-line", product_with_line(l), u, l));

  std::vector<Matrix> autos = automorphisms;
  autos.push_back(Matrix::identity(l.dim));
  for (std::size_t i = 0; i < autos.size(); ++i) {
    LRMorphism h{l, l, autos[i]};
    const ValidationReport hv = validate_morphism(h);
    if (!hv.ok() || !is_invertible(autos[i]))
      throw std::invalid_argument("verify_characterization: sampled map is not an automorphism");
    const PullbackExtension pb = pullback_extension(u.uce_morphism, h);
    rep.items.push_back(run_battery_item("pullback-of-uce[" + std::to_string(i) + "]",
                                         pb.p_left.p, u, l));
  }

  // Quotients of uce_A(L) by subspaces of Ker uce (in quotient coordinates).
  std::vector<std::pair<std::string, Subspace>> ws;
  ws.emplace_back("quotient-by-0", Subspace::zero(u.algebra.dim));
  for (std::size_t i = 0; i < u.uce_kernel.rank(); ++i)
    ws.emplace_back("quotient-by-line" + std::to_string(i),
                    Subspace::from_rows(u.algebra.dim, {u.uce_kernel.basis.row(i)}));
  if (u.uce_kernel.rank() > 1) ws.emplace_back("quotient-by-kernel", u.uce_kernel);
  for (const auto& [name, w] : ws) {
    const QuotientAlgebra qa = quotient_algebra(u.algebra, w);
    // Induced map onto L: uce factors through the quotient.
    const Matrix sect = right_inverse(qa.projection.matrix);
    const Matrix induced = u.uce_morphism.matrix * sect;
    if (!(induced * qa.projection.matrix == u.uce_morphism.matrix))
      throw std::logic_error("verify_characterization: uce does not factor through quotient");
    rep.items.push_back(run_battery_item(name, {qa.algebra, l, induced}, u, l));
  }
  return rep;
}

}  // namespace lira
