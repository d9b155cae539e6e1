#pragma once

#include "lira/constructions.hpp"
#include "lira/uce.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lira {

/// Derivation of a Lie-Rinehart algebra: a pair (delta, delta0) with
///   delta(ax) = a delta(x) + delta0(a) x
///   delta0(x(a)) = x(delta0(a)) + delta(x)(a)
/// and delta a K-Lie derivation of the bracket.
struct DerivationPair {
  Matrix delta;   // dim L x dim L
  Matrix delta0;  // dim A x dim A
};

inline ValidationReport validate_derivation_pair(const LieRinehartAlgebra& l,
                                                 const DerivationPair& d) {
  ValidationReport rep;
  const std::size_t na = l.base.dim, nl = l.dim;
  rep.merge(validate_derivation(l.base, d.delta0), "delta0-");
  for (std::size_t i = 0; i < nl; ++i)
    for (std::size_t j = i + 1; j < nl; ++j) {
      const Vec lhs = d.delta * l.bracket.slice(i, j);
      const Vec rhs = vec_add(l.brk(d.delta.col(i), unit_vec(nl, j)),
                              l.brk(unit_vec(nl, i), d.delta.col(j)));
      if (lhs != rhs) rep.add("lie-derivation", {i, j});
    }
  for (std::size_t q = 0; q < na; ++q)
    for (std::size_t j = 0; j < nl; ++j) {
      const Vec lhs = d.delta * l.a_action.slice(q, j);
      const Vec rhs = vec_add(l.act(unit_vec(na, q), d.delta.col(j)),
                              l.act(d.delta0 * unit_vec(na, q), unit_vec(nl, j)));
      if (lhs != rhs) rep.add("module-twist", {q, j});
    }
  for (std::size_t j = 0; j < nl; ++j) {
    // delta0 alpha(x_j) - alpha(x_j) delta0 = alpha(delta(x_j))
    if (!(commutator_matrix(d.delta0, l.anchor[j]) == l.anchor_of(d.delta.col(j))))
      rep.add("anchor-twist", {j});
  }
  return rep;
}

/// Basis of Der_Rin(L), by solving the joint linear system over (delta, delta0).
inline std::vector<DerivationPair> rinehart_derivations(const LieRinehartAlgebra& l) {
  const std::size_t na = l.base.dim, nl = l.dim;
  const std::size_t un = nl * nl + na * na;
  auto lidx = [&](std::size_t r, std::size_t c) { return r * nl + c; };
  auto aidx = [&](std::size_t r, std::size_t c) { return nl * nl + r * na + c; };
  std::vector<Vec> rows;
  // delta0 Leibniz on A
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = i; j < na; ++j) {
      const Vec prod = l.base.mult.slice(i, j);
      for (std::size_t k = 0; k < na; ++k) {
        Vec row(un);
        for (std::size_t c = 0; c < na; ++c)
          if (!prod[c].is_zero()) row[aidx(k, c)] += prod[c];
        for (std::size_t r = 0; r < na; ++r) {
          if (!l.base.mult(i, r, k).is_zero()) row[aidx(r, j)] -= l.base.mult(i, r, k);
          if (!l.base.mult(j, r, k).is_zero()) row[aidx(r, i)] -= l.base.mult(j, r, k);
        }
        rows.push_back(std::move(row));
      }
    }
  // delta Lie derivation: delta[x_i,x_j] = [delta x_i, x_j] + [x_i, delta x_j]
  for (std::size_t i = 0; i < nl; ++i)
    for (std::size_t j = i + 1; j < nl; ++j) {
      const Vec br = l.bracket.slice(i, j);
      for (std::size_t k = 0; k < nl; ++k) {
        Vec row(un);
        for (std::size_t c = 0; c < nl; ++c)
          if (!br[c].is_zero()) row[lidx(k, c)] += br[c];
        for (std::size_t r = 0; r < nl; ++r) {
          const Vec b1 = l.bracket.slice(r, j);  // [x_r, x_j]
          if (!b1[k].is_zero()) row[lidx(r, i)] -= b1[k];
          const Vec b2 = l.bracket.slice(i, r);  // [x_i, x_r]
          if (!b2[k].is_zero()) row[lidx(r, j)] -= b2[k];
        }
        rows.push_back(std::move(row));
      }
    }
  // delta(a_q x_j) = a_q delta(x_j) + delta0(a_q) x_j
  for (std::size_t q = 0; q < na; ++q) {
    const Matrix aop = l.act_operator(unit_vec(na, q));
    for (std::size_t j = 0; j < nl; ++j) {
      const Vec ax = l.a_action.slice(q, j);
      for (std::size_t k = 0; k < nl; ++k) {
        Vec row(un);
        for (std::size_t c = 0; c < nl; ++c)
          if (!ax[c].is_zero()) row[lidx(k, c)] += ax[c];
        for (std::size_t r = 0; r < nl; ++r)
          if (!aop(k, r).is_zero()) row[lidx(r, j)] -= aop(k, r);
        // delta0(a_q) x_j: coefficient of delta0(r,q) is (e_r . x_j)_k
        for (std::size_t r = 0; r < na; ++r)
          if (!l.a_action(r, j, k).is_zero()) row[aidx(r, q)] -= l.a_action(r, j, k);
        rows.push_back(std::move(row));
      }
    }
  }
  // delta0(x_j(a_q)) = x_j(delta0(a_q)) + delta(x_j)(a_q)
  for (std::size_t j = 0; j < nl; ++j)
    for (std::size_t q = 0; q < na; ++q) {
      const Vec xa = l.anchor[j] * unit_vec(na, q);
      for (std::size_t k = 0; k < na; ++k) {
        Vec row(un);
        for (std::size_t c = 0; c < na; ++c)
          if (!xa[c].is_zero()) row[aidx(k, c)] += xa[c];
        for (std::size_t r = 0; r < na; ++r)
          if (!l.anchor[j](k, r).is_zero()) row[aidx(r, q)] -= l.anchor[j](k, r);
        // delta(x_j)(a_q) = sum_r delta(r, j) (anchor[x_r](a_q))
        for (std::size_t r = 0; r < nl; ++r) {
          const Rational c = (l.anchor[r] * unit_vec(na, q))[k];
          if (!c.is_zero()) row[lidx(r, j)] -= c;
        }
        rows.push_back(std::move(row));
      }
    }
  const Subspace sol =
      rows.empty() ? Subspace::full(un) : kernel(Matrix::from_rows(rows, un));
  std::vector<DerivationPair> out;
  for (std::size_t b = 0; b < sol.rank(); ++b) {
    DerivationPair d{Matrix(nl, nl), Matrix(na, na)};
    for (std::size_t r = 0; r < nl; ++r)
      for (std::size_t c = 0; c < nl; ++c) d.delta(r, c) = sol.basis(b, lidx(r, c));
    for (std::size_t r = 0; r < na; ++r)
      for (std::size_t c = 0; c < na; ++c) d.delta0(r, c) = sol.basis(b, aidx(r, c));
    out.push_back(std::move(d));
  }
  // Closure under the bracket ([d,d'], [d0,d0']).
  auto flat = [&](const DerivationPair& d) {
    Vec v(un);
    for (std::size_t r = 0; r < nl; ++r)
      for (std::size_t c = 0; c < nl; ++c) v[lidx(r, c)] = d.delta(r, c);
    for (std::size_t r = 0; r < na; ++r)
      for (std::size_t c = 0; c < na; ++c) v[aidx(r, c)] = d.delta0(r, c);
    return v;
  };
  for (const auto& d1 : out)
    for (const auto& d2 : out)
      if (!sol.contains(flat({commutator_matrix(d1.delta, d2.delta),
                              commutator_matrix(d1.delta0, d2.delta0)})))
        throw std::logic_error("rinehart_derivations: not closed under bracket");
  return out;
}

/// delta^uce on uce_A(L): (a,x,y) -> (delta0 a, x, y) + (a, delta x, y) +
/// (a, x, delta y); descends to the quotient.
inline DerivationPair uce_derivation(const LieRinehartAlgebra& l, const UceAlgebra& u,
                                     const DerivationPair& d) {
  const uce_detail::Ambient amb(l);
  auto apply_ambient = [&](const Vec& v) {
    Vec out(amb.dim);
    for (std::size_t i = 0; i < amb.na; ++i)
      for (std::size_t j = 0; j < amb.nl; ++j)
        for (std::size_t k = 0; k < amb.nl; ++k) {
          const Rational& c = v[amb.idx(i, j, k)];
          if (c.is_zero()) continue;
          amb.add_tensor(out, c, d.delta0 * unit_vec(amb.na, i), unit_vec(amb.nl, j),
                         unit_vec(amb.nl, k));
          amb.add_tensor(out, c, unit_vec(amb.na, i), d.delta.col(j), unit_vec(amb.nl, k));
          amb.add_tensor(out, c, unit_vec(amb.na, i), unit_vec(amb.nl, j), d.delta.col(k));
        }
    return out;
  };
  const auto& rels = u.presentation.relations;
  for (std::size_t r = 0; r < rels.rank(); ++r)
    if (!rels.contains(apply_ambient(rels.basis.row(r))))
      throw std::logic_error("uce_derivation: M_A L not preserved");
  const std::size_t qd = u.presentation.quotient_dim();
  Matrix delta_uce(qd, qd);
  for (std::size_t t = 0; t < qd; ++t)
    delta_uce.set_col(t, u.presentation.project(apply_ambient(u.presentation.section.col(t))));
  DerivationPair out{delta_uce, d.delta0};
  const ValidationReport rep = validate_derivation_pair(u.algebra, out);
  if (!rep.ok())
    throw std::logic_error("uce_derivation: lifted pair invalid: " + rep.summary());
  // uce delta^uce = delta uce, and Ker uce stays invariant.
  if (!(u.uce_morphism.matrix * delta_uce == d.delta * u.uce_morphism.matrix))
    throw std::logic_error("uce_derivation: square with uce does not commute");
  for (std::size_t i = 0; i < u.uce_kernel.rank(); ++i)
    if (!u.uce_kernel.contains(delta_uce * u.uce_kernel.basis.row(i)))
      throw std::logic_error("uce_derivation: Ker uce not invariant");
  return out;
}

/// A covering f : L' ->> L (central, L' perfect) with the §4 data:
/// ff = uce_A(f) (an isomorphism), q = uce' ff^{-1} : uce_A(L) -> L', and
/// C = ff(Ker uce') = Ker q.
struct Covering {
  LRMorphism f;
  UceAlgebra uce_source;  // uce_A(L')
  UceAlgebra uce_target;  // uce_A(L)
  LRMorphism f_uce;       // uce_A(f)
  Matrix q;               // uce' ff^{-1} : uce_A(L) -> L'
  Subspace c;             // inside uce_A(L)
};

inline Covering make_covering(const LRMorphism& f) {
  if (!is_perfect(f.source)) throw std::invalid_argument("covering: source not perfect");
  const CentralExtensionWitness w = is_central(f);
  if (!w.central())
    throw std::invalid_argument("covering: not central: " + w.centrality.summary());
  Covering cov;
  cov.f = f;
  cov.uce_source = build_uce(f.source, false);
  cov.uce_target = build_uce(f.target, false);
  cov.f_uce = uce_on_morphism(f, cov.uce_source, cov.uce_target);
  if (!is_invertible(cov.f_uce.matrix))
    throw std::logic_error("covering: uce_A(f) is not an isomorphism");
  const Matrix finv = inverse(cov.f_uce.matrix);
  cov.q = cov.uce_source.uce_morphism.matrix * finv;
  cov.c = apply(cov.f_uce.matrix, cov.uce_source.uce_kernel);
  if (!(kernel(cov.q) == cov.c)) throw std::logic_error("covering: Ker q != C");
  return cov;
}

struct LiftResult {
  bool lifted = false;
  std::optional<Matrix> lift;
  std::optional<Vec> witness;  // vector separating uce_A(h)(C) from C
};

/// Lifts an automorphism h of L along the covering; succeeds iff
/// uce_A(h)(C) = C, in which case the lift is the unique h' with f h' = h f
/// and h'(Ker f) = Ker f.
inline LiftResult lift_automorphism(const Covering& cov, const LRMorphism& h) {
  const ValidationReport hv = validate_morphism(h);
  if (!hv.ok() || !is_invertible(h.matrix))
    throw std::invalid_argument("lift_automorphism: h is not an automorphism");
  const LRMorphism uh = uce_on_morphism(h, cov.uce_target, cov.uce_target);
  const Subspace moved = apply(uh.matrix, cov.c);
  LiftResult res;
  if (!(moved == cov.c)) {
    for (std::size_t i = 0; i < moved.rank(); ++i)
      if (!cov.c.contains(moved.basis.row(i))) {
        res.witness = moved.basis.row(i);
        break;
      }
    if (!res.witness)
      for (std::size_t i = 0; i < cov.c.rank(); ++i)
        if (!moved.contains(cov.c.basis.row(i))) {
          res.witness = cov.c.basis.row(i);
          break;
        }
    return res;
  }
  // h' q = q uce_A(h); q is onto with kernel C, preserved by uce_A(h).
  const Matrix qplus = right_inverse(cov.q);
  const Matrix hprime = cov.q * uh.matrix * qplus;
  if (!(hprime * cov.q == cov.q * uh.matrix))
    throw std::logic_error("lift_automorphism: descent failed");
  const LRMorphism lifted{cov.f.source, cov.f.source, hprime};
  const ValidationReport lv = validate_morphism(lifted);
  if (!lv.ok()) throw std::logic_error("lift_automorphism: lift is not a morphism");
  if (!(cov.f.matrix * hprime == h.matrix * cov.f.matrix))
    throw std::logic_error("lift_automorphism: f h' != h f");
  const Subspace kf = kernel(cov.f.matrix);
  if (!(apply(hprime, kf) == kf))
    throw std::logic_error("lift_automorphism: Ker f not preserved");
  res.lifted = true;
  res.lift = hprime;
  return res;
}

/// Lifts a derivation (delta, delta0) of L along the covering; succeeds iff
/// delta^uce(C) is contained in C.
inline LiftResult lift_derivation(const Covering& cov, const DerivationPair& d) {
  const ValidationReport dv = validate_derivation_pair(cov.f.target, d);
  if (!dv.ok())
    throw std::invalid_argument("lift_derivation: invalid derivation: " + dv.summary());
  const DerivationPair duce = uce_derivation(cov.f.target, cov.uce_target, d);
  LiftResult res;
  for (std::size_t i = 0; i < cov.c.rank(); ++i) {
    const Vec img = duce.delta * cov.c.basis.row(i);
    if (!cov.c.contains(img)) {
      res.witness = img;
      return res;
    }
  }
  const Matrix qplus = right_inverse(cov.q);
  const Matrix dprime = cov.q * duce.delta * qplus;
  if (!(dprime * cov.q == cov.q * duce.delta))
    throw std::logic_error("lift_derivation: descent failed");
  const DerivationPair lifted{dprime, d.delta0};
  const ValidationReport lv = validate_derivation_pair(cov.f.source, lifted);
  if (!lv.ok()) throw std::logic_error("lift_derivation: lift is not a derivation");
  if (!(cov.f.matrix * dprime == d.delta * cov.f.matrix))
    throw std::logic_error("lift_derivation: f delta' != delta f");
  const Subspace kf = kernel(cov.f.matrix);
  for (std::size_t i = 0; i < kf.rank(); ++i)
    if (!kf.contains(dprime * kf.basis.row(i)))
      throw std::logic_error("lift_derivation: Ker f not invariant");
  res.lifted = true;
  res.lift = dprime;
  return res;
}

// -------- split exact sequences of perfect algebras --------

struct SplitUceReport {
  bool hypotheses = false;       // exactness, sections, perfectness
  bool retraction = false;       // uce_A(g) uce_A(s) = id
  bool sum_decomposition = false;  // im phi + im sigma = uce_A(M)
  bool phi_part_is_kernel = false; // im phi = Ker uce_A(g)
  bool phi_part_ideal = false;
  bool kernel_direct_sum = false;  // Ker uce_M = phi(Ker uce_L) (+) sigma(Ker uce_N)
  bool direct_product_case = false;  // [f(L), s(N)] = 0
  bool product_iso = false;          // uce_A(L x N) = uce_A(L) x uce_A(N)

  bool ok() const {
    return hypotheses && retraction && sum_decomposition && phi_part_is_kernel &&
           phi_part_ideal && kernel_direct_sum && (!direct_product_case || product_iso);
  }
};

/// Checks the split-exact-sequence theorem for L -f-> M -g->> N with section s.
inline SplitUceReport split_uce_check(const LRMorphism& f, const LRMorphism& g,
                                      const LRMorphism& s) {
  SplitUceReport rep;
  const bool exact = image(f.matrix) == kernel(g.matrix);
  const bool section_ok = g.matrix * s.matrix == Matrix::identity(g.target.dim);
  const bool injective = kernel(f.matrix).rank() == 0;
  const bool perfect_all =
      is_perfect(f.source) && is_perfect(g.source) && is_perfect(g.target);
  const bool morphisms_ok = validate_morphism(f).ok() && validate_morphism(g).ok() &&
                            validate_morphism(s).ok() && is_surjective(g);
  rep.hypotheses = exact && section_ok && injective && perfect_all && morphisms_ok;
  if (!rep.hypotheses) return rep;

  const UceAlgebra ul = build_uce(f.source, false);
  const UceAlgebra um = build_uce(g.source, false);
  const UceAlgebra un = build_uce(g.target, false);
  const LRMorphism phi = uce_on_morphism(f, ul, um);
  const LRMorphism ga = uce_on_morphism(g, um, un);
  const LRMorphism si = uce_on_morphism(s, un, um);

  rep.retraction = ga.matrix * si.matrix == Matrix::identity(un.algebra.dim);
  const Subspace im_phi = image(phi.matrix);
  const Subspace im_si = image(si.matrix);
  rep.sum_decomposition = im_phi.sum(im_si) == Subspace::full(um.algebra.dim);
  rep.phi_part_is_kernel = im_phi == kernel(ga.matrix);
  {
    std::vector<Matrix> ops;
    for (std::size_t j = 0; j < um.algebra.dim; ++j)
      ops.push_back(um.algebra.ad(unit_vec(um.algebra.dim, j)));
    for (std::size_t q = 0; q < um.algebra.base.dim; ++q)
      ops.push_back(um.algebra.act_operator(unit_vec(um.algebra.base.dim, q)));
    rep.phi_part_ideal = close_under(im_phi, ops) == im_phi;
  }
  const Subspace k_phi = apply(phi.matrix, ul.uce_kernel);
  const Subspace k_si = apply(si.matrix, un.uce_kernel);
  rep.kernel_direct_sum = k_phi.sum(k_si) == um.uce_kernel &&
                          k_phi.intersect(k_si).rank() == 0;

  // Direct product case: [f(L), s(N)] = 0.
  bool commute = true;
  for (std::size_t i = 0; i < f.source.dim && commute; ++i)
    for (std::size_t j = 0; j < g.target.dim && commute; ++j)
      if (!is_zero_vec(g.source.brk(f.matrix.col(i), s.matrix.col(j)))) commute = false;
  rep.direct_product_case = commute;
  if (commute) {
    // (u, v) -> phi(u) + sigma(v) on the product uce_A(L) x_Der uce_A(N).
    const FiberProduct prod = fiber_product(ul.algebra, un.algebra);
    Matrix joint(um.algebra.dim, prod.algebra.dim);
    for (std::size_t j = 0; j < prod.algebra.dim; ++j)
      joint.set_col(j, vec_add(phi.matrix * prod.proj_left.matrix.col(j),
                               si.matrix * prod.proj_right.matrix.col(j)));
    const LRMorphism cmp{prod.algebra, um.algebra, joint};
    rep.product_iso = validate_morphism(cmp).ok() && is_invertible(joint);
  }
  return rep;
}

}  // namespace lira
