#pragma once

#include "lira/lie_rinehart.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lira {

// -------- plain K-Lie algebras --------

struct LieAlgebraOverK {
  std::size_t dim = 0;
  Tensor3 bracket;

  Vec brk(const Vec& x, const Vec& y) const {
    Vec r(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      if (x[i].is_zero()) continue;
      for (std::size_t j = 0; j < dim; ++j)
        if (!y[j].is_zero()) add_scaled(r, x[i] * y[j], bracket.slice(i, j));
    }
    return r;
  }
};

inline ValidationReport validate_lie_algebra(const LieAlgebraOverK& g) {
  ValidationReport rep;
  for (std::size_t i = 0; i < g.dim; ++i)
    for (std::size_t j = i; j < g.dim; ++j)
      if (!is_zero_vec(vec_add(g.bracket.slice(i, j), g.bracket.slice(j, i))))
        rep.add("antisymmetry", {i, j});
  for (std::size_t i = 0; i < g.dim; ++i)
    for (std::size_t j = i + 1; j < g.dim; ++j)
      for (std::size_t k = j + 1; k < g.dim; ++k) {
        Vec s = g.brk(g.bracket.slice(i, j), unit_vec(g.dim, k));
        s = vec_add(s, g.brk(g.bracket.slice(j, k), unit_vec(g.dim, i)));
        s = vec_add(s, g.brk(g.bracket.slice(k, i), unit_vec(g.dim, j)));
        if (!is_zero_vec(s)) rep.add("jacobi", {i, j, k});
      }
  return rep;
}

/// sl2 with basis (e, f, h): [e,f] = h, [h,e] = 2e, [h,f] = -2f.
inline LieAlgebraOverK sl2_lie() {
  LieAlgebraOverK g;
  g.dim = 3;
  g.bracket = Tensor3(3, 3, 3);
  auto set = [&](std::size_t i, std::size_t j, std::size_t k, int c) {
    g.bracket(i, j, k) = c;
    g.bracket(j, i, k) = -c;
  };
  set(0, 1, 2, 1);   // [e,f] = h
  set(2, 0, 0, 2);   // [h,e] = 2e
  set(2, 1, 1, -2);  // [h,f] = -2f
  return g;
}

/// Heisenberg h3 with basis (x, y, z): [x,y] = z.
inline LieAlgebraOverK heisenberg_lie() {
  LieAlgebraOverK g;
  g.dim = 3;
  g.bracket = Tensor3(3, 3, 3);
  g.bracket(0, 1, 2) = 1;
  g.bracket(1, 0, 2) = -1;
  return g;
}

inline LieAlgebraOverK abelian_lie(std::size_t n) {
  LieAlgebraOverK g;
  g.dim = n;
  g.bracket = Tensor3(n, n, n);
  return g;
}

/// A K-Lie algebra seen as a Lie-Rinehart algebra over A = Q.
inline LieRinehartAlgebra lr_from_lie(const LieAlgebraOverK& g) {
  LieRinehartAlgebra l;
  l.base = CommAlgebra::rationals();
  l.dim = g.dim;
  l.bracket = g.bracket;
  l.a_action = Tensor3(1, g.dim, g.dim);
  for (std::size_t j = 0; j < g.dim; ++j) l.a_action(0, j, j) = 1;
  l.anchor.assign(g.dim, Matrix(1, 1));
  return l;
}

// -------- transformation algebra A (x) g --------

/// L = A (x) g with bracket
///   [a(x)g, a'(x)g'] = aa' (x) [g,g'] + a gamma(g)(a') (x) g' - a' gamma(g')(a) (x) g
/// and anchor alpha(a(x)g) = a . gamma(g). gamma must be a Lie map g -> Der(A).
inline LieRinehartAlgebra transformation_algebra(const LieAlgebraOverK& g, const CommAlgebra& a,
                                                 const std::vector<Matrix>& gamma) {
  if (gamma.size() != g.dim) throw std::invalid_argument("transformation_algebra: gamma size");
  auto gamma_of = [&](const Vec& x) {
    Matrix m(a.dim, a.dim);
    for (std::size_t i = 0; i < g.dim; ++i)
      if (!x[i].is_zero()) m = m + x[i] * gamma[i];
    return m;
  };
  for (std::size_t i = 0; i < g.dim; ++i)
    if (!validate_derivation(a, gamma[i]).ok())
      throw std::invalid_argument("transformation_algebra: gamma is not derivation-valued");
  for (std::size_t i = 0; i < g.dim; ++i)
    for (std::size_t j = i + 1; j < g.dim; ++j)
      if (!(gamma_of(g.bracket.slice(i, j)) == commutator_matrix(gamma[i], gamma[j])))
        throw std::invalid_argument("transformation_algebra: gamma is not a Lie map");

  const std::size_t na = a.dim, ng = g.dim, nl = na * ng;
  auto idx = [&](std::size_t p, std::size_t j) { return p * ng + j; };
  LieRinehartAlgebra l;
  l.base = a;
  l.dim = nl;
  l.a_action = Tensor3(na, nl, nl);
  l.bracket = Tensor3(nl, nl, nl);
  l.anchor.assign(nl, Matrix(na, na));

  for (std::size_t q = 0; q < na; ++q)
    for (std::size_t p = 0; p < na; ++p) {
      const Vec prod = a.mult.slice(q, p);
      for (std::size_t j = 0; j < ng; ++j) {
        Vec out(nl);
        for (std::size_t r = 0; r < na; ++r) out[idx(r, j)] = prod[r];
        l.a_action.set_slice(q, idx(p, j), out);
      }
    }

  auto embed = [&](const Vec& coeff_a, std::size_t gj, Vec& out, const Rational& scale) {
    for (std::size_t r = 0; r < na; ++r)
      if (!coeff_a[r].is_zero()) out[idx(r, gj)] += scale * coeff_a[r];
  };
  for (std::size_t p = 0; p < na; ++p)
    for (std::size_t j = 0; j < ng; ++j) {
      l.anchor[idx(p, j)] = a.mult_operator(unit_vec(na, p)) * gamma[j];
      for (std::size_t q = 0; q < na; ++q)
        for (std::size_t k = 0; k < ng; ++k) {
          Vec out(nl);
          const Vec prod = a.mult.slice(p, q);
          const Vec gbr = g.bracket.slice(j, k);
          for (std::size_t r = 0; r < na; ++r)
            if (!prod[r].is_zero())
              for (std::size_t m = 0; m < ng; ++m)
                if (!gbr[m].is_zero()) out[idx(r, m)] += prod[r] * gbr[m];
          embed(a.multiply(unit_vec(na, p), gamma[j] * unit_vec(na, q)), k, out, Rational(1));
          embed(a.multiply(unit_vec(na, q), gamma[k] * unit_vec(na, p)), j, out, Rational(-1));
          l.bracket.set_slice(idx(p, j), idx(q, k), out);
        }
    }
  return l;
}

// -------- restriction of an ambient structure to a subalgebra --------

namespace detail {

struct AmbientLR {
  std::size_t dim = 0;
  std::function<Vec(const Vec&, const Vec&)> bracket;       // (x, y) -> [x,y]
  std::function<Vec(const Vec&, const Vec&)> act;           // (a, x) -> a.x
  std::function<Matrix(const Vec&)> anchor;                 // x -> alpha(x)
};

/// Builds the Lie-Rinehart algebra carried by a subspace closed under the
/// ambient operations; throws when the subspace is not closed.
inline LieRinehartAlgebra restrict_to(const CommAlgebra& base, const AmbientLR& amb,
                                      const Subspace& s, const char* what) {
  LieRinehartAlgebra l;
  l.base = base;
  l.dim = s.rank();
  l.a_action = Tensor3(base.dim, l.dim, l.dim);
  l.bracket = Tensor3(l.dim, l.dim, l.dim);
  l.anchor.assign(l.dim, Matrix(base.dim, base.dim));
  auto coords = [&](const Vec& v) {
    auto c = s.coordinates(v);
    if (!c) throw std::invalid_argument(std::string(what) + ": subspace not closed");
    return *c;
  };
  for (std::size_t i = 0; i < l.dim; ++i) {
    const Vec bi = s.basis.row(i);
    l.anchor[i] = amb.anchor(bi);
    for (std::size_t j = 0; j < l.dim; ++j)
      l.bracket.set_slice(i, j, coords(amb.bracket(bi, s.basis.row(j))));
    for (std::size_t q = 0; q < base.dim; ++q)
      l.a_action.set_slice(q, i, coords(amb.act(unit_vec(base.dim, q), bi)));
  }
  return l;
}

}  // namespace detail

// -------- Atiyah algebra --------

/// Plain A-module data (no Lie action).
struct AModule {
  std::size_t dim = 0;
  Tensor3 a_action;

  Matrix a_op(const CommAlgebra& base, const Vec& a) const {
    Matrix m(dim, dim);
    for (std::size_t i = 0; i < base.dim; ++i) {
      if (a[i].is_zero()) continue;
      for (std::size_t j = 0; j < dim; ++j) add_scaled_col(m, j, a[i], a_action.slice(i, j));
    }
    return m;
  }

 private:
  static void add_scaled_col(Matrix& m, std::size_t j, const Rational& c, const Vec& v) {
    for (std::size_t i = 0; i < v.size(); ++i)
      if (!v[i].is_zero()) m(i, j) += c * v[i];
  }
};

/// Pairs (f, D) in End(M) + End(A) with f(am) = a f(m) + D(a) m, D a
/// derivation; bracket componentwise commutators, anchor the D part.
inline LieRinehartAlgebra atiyah_algebra(const CommAlgebra& a, const AModule& mod) {
  const std::size_t nm = mod.dim, na = a.dim;
  const std::size_t amb = nm * nm + na * na;
  auto fidx = [&](std::size_t r, std::size_t c) { return r * nm + c; };
  auto didx = [&](std::size_t r, std::size_t c) { return nm * nm + r * na + c; };

  std::vector<Vec> rows;
  // D Leibniz on A.
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = i; j < na; ++j) {
      const Vec prod = a.mult.slice(i, j);
      for (std::size_t k = 0; k < na; ++k) {
        Vec row(amb);
        for (std::size_t c = 0; c < na; ++c)
          if (!prod[c].is_zero()) row[didx(k, c)] += prod[c];
        for (std::size_t r = 0; r < na; ++r) {
          if (!a.mult(i, r, k).is_zero()) row[didx(r, j)] -= a.mult(i, r, k);
          if (!a.mult(j, r, k).is_zero()) row[didx(r, i)] -= a.mult(j, r, k);
        }
        rows.push_back(std::move(row));
      }
    }
  // f(a_q m_s) = a_q f(m_s) + D(a_q) m_s.
  for (std::size_t q = 0; q < na; ++q)
    for (std::size_t s = 0; s < nm; ++s) {
      const Vec am = mod.a_action.slice(q, s);
      for (std::size_t k = 0; k < nm; ++k) {
        Vec row(amb);
        for (std::size_t c = 0; c < nm; ++c)
          if (!am[c].is_zero()) row[fidx(k, c)] += am[c];
        for (std::size_t r = 0; r < nm; ++r)
          if (!mod.a_action(q, r, k).is_zero()) row[fidx(r, s)] -= mod.a_action(q, r, k);
        for (std::size_t r = 0; r < na; ++r)
          if (!mod.a_action(r, s, k).is_zero()) row[didx(r, q)] -= mod.a_action(r, s, k);
        rows.push_back(std::move(row));
      }
    }
  const Subspace sol =
      rows.empty() ? Subspace::full(amb) : kernel(Matrix::from_rows(rows, amb));

  auto split = [&](const Vec& v) {
    Matrix f(nm, nm), d(na, na);
    for (std::size_t r = 0; r < nm; ++r)
      for (std::size_t c = 0; c < nm; ++c) f(r, c) = v[fidx(r, c)];
    for (std::size_t r = 0; r < na; ++r)
      for (std::size_t c = 0; c < na; ++c) d(r, c) = v[didx(r, c)];
    return std::make_pair(f, d);
  };
  auto join = [&](const Matrix& f, const Matrix& d) {
    Vec v(amb);
    for (std::size_t r = 0; r < nm; ++r)
      for (std::size_t c = 0; c < nm; ++c) v[fidx(r, c)] = f(r, c);
    for (std::size_t r = 0; r < na; ++r)
      for (std::size_t c = 0; c < na; ++c) v[didx(r, c)] = d(r, c);
    return v;
  };

  detail::AmbientLR amb_lr;
  amb_lr.dim = amb;
  amb_lr.bracket = [=](const Vec& u, const Vec& v) {
    auto [f, d] = split(u);
    auto [f2, d2] = split(v);
    return join(commutator_matrix(f, f2), commutator_matrix(d, d2));
  };
  amb_lr.act = [=, &a](const Vec& av, const Vec& u) {
    auto [f, d] = split(u);
    return join(mod.a_op(a, av) * f, a.mult_operator(av) * d);
  };
  amb_lr.anchor = [=](const Vec& u) { return split(u).second; };
  return detail::restrict_to(a, amb_lr, sol, "atiyah_algebra");
}

// -------- Der(A) as a Lie-Rinehart algebra (identity anchor) --------

inline LieRinehartAlgebra der_algebra(const CommAlgebra& a) {
  const std::vector<Matrix> ders = derivations_of(a);
  const std::size_t amb = a.dim * a.dim;
  std::vector<Vec> rows;
  for (const auto& d : ders) {
    Vec v(amb);
    for (std::size_t r = 0; r < a.dim; ++r)
      for (std::size_t c = 0; c < a.dim; ++c) v[r * a.dim + c] = d(r, c);
    rows.push_back(std::move(v));
  }
  const Subspace s = Subspace::from_rows(amb, rows);
  auto as_matrix = [&](const Vec& v) {
    Matrix m(a.dim, a.dim);
    for (std::size_t r = 0; r < a.dim; ++r)
      for (std::size_t c = 0; c < a.dim; ++c) m(r, c) = v[r * a.dim + c];
    return m;
  };
  auto as_vec = [&](const Matrix& m) {
    Vec v(amb);
    for (std::size_t r = 0; r < a.dim; ++r)
      for (std::size_t c = 0; c < a.dim; ++c) v[r * a.dim + c] = m(r, c);
    return v;
  };
  detail::AmbientLR amb_lr;
  amb_lr.dim = amb;
  amb_lr.bracket = [=](const Vec& u, const Vec& v) {
    return as_vec(commutator_matrix(as_matrix(u), as_matrix(v)));
  };
  amb_lr.act = [=, &a](const Vec& av, const Vec& u) {
    return as_vec(a.mult_operator(av) * as_matrix(u));
  };
  amb_lr.anchor = [=](const Vec& u) { return as_matrix(u); };
  return detail::restrict_to(a, amb_lr, s, "der_algebra");
}

// -------- semidirect product --------

/// Action of L on a Lie A-algebra R (zero anchor), as action(i,j,*) = x_i o r_j.
inline ValidationReport validate_lr_action(const LieRinehartAlgebra& l,
                                           const LieRinehartAlgebra& r, const Tensor3& action) {
  if (!(l.base == r.base)) throw std::invalid_argument("action: different bases");
  if (!r.has_zero_anchor()) throw std::invalid_argument("action target must have zero anchor");
  if (action.d0 != l.dim || action.d1 != r.dim || action.d2 != r.dim)
    throw std::invalid_argument("action: tensor shape mismatch");
  ValidationReport rep;
  const std::size_t na = l.base.dim;
  auto op = [&](std::size_t i) {
    Matrix m(r.dim, r.dim);
    for (std::size_t j = 0; j < r.dim; ++j) m.set_col(j, action.slice(i, j));
    return m;
  };
  auto op_of = [&](const Vec& x) {
    Matrix m(r.dim, r.dim);
    for (std::size_t i = 0; i < l.dim; ++i)
      if (!x[i].is_zero()) m = m + x[i] * op(i);
    return m;
  };
  for (std::size_t i = 0; i < l.dim; ++i)
    for (std::size_t j = 0; j < l.dim; ++j)
      if (!(op_of(l.bracket.slice(i, j)) == commutator_matrix(op(i), op(j))))
        rep.add("action-lie", {i, j});
  for (std::size_t i = 0; i < l.dim; ++i)
    for (std::size_t j = 0; j < r.dim; ++j)
      for (std::size_t k = 0; k < r.dim; ++k) {
        const Vec lhs = op(i) * r.bracket.slice(j, k);
        const Vec rhs = vec_add(r.brk(op(i) * unit_vec(r.dim, j), unit_vec(r.dim, k)),
                                r.brk(unit_vec(r.dim, j), op(i) * unit_vec(r.dim, k)));
        if (lhs != rhs) rep.add("action-derivation", {i, j, k});
      }
  for (std::size_t q = 0; q < na; ++q)
    for (std::size_t i = 0; i < l.dim; ++i) {
      if (!(op_of(l.a_action.slice(q, i)) == r.act_operator(unit_vec(na, q)) * op(i)))
        rep.add("action-ax", {q, i});
      const Matrix lhs = op(i) * r.act_operator(unit_vec(na, q));
      const Matrix rhs = r.act_operator(unit_vec(na, q)) * op(i) +
                         r.act_operator(l.anchor[i] * unit_vec(na, q));
      if (!(lhs == rhs)) rep.add("action-leibniz", {q, i});
    }
  return rep;
}

/// L |x R with bracket [(x,r),(y,r')] = ([x,y], [r,r'] + x o r' - y o r).
inline LieRinehartAlgebra semidirect(const LieRinehartAlgebra& l, const LieRinehartAlgebra& r,
                                     const Tensor3& action) {
  const ValidationReport rep = validate_lr_action(l, r, action);
  if (!rep.ok()) throw std::invalid_argument("semidirect: invalid action: " + rep.summary());
  const std::size_t nl = l.dim, nr = r.dim, n = nl + nr, na = l.base.dim;
  LieRinehartAlgebra out;
  out.base = l.base;
  out.dim = n;
  out.a_action = Tensor3(na, n, n);
  out.bracket = Tensor3(n, n, n);
  out.anchor.assign(n, Matrix(na, na));
  auto setpair = [&](Vec& dst, const Vec& lv, const Vec& rv) {
    for (std::size_t i = 0; i < nl; ++i) dst[i] = lv[i];
    for (std::size_t i = 0; i < nr; ++i) dst[nl + i] = rv[i];
  };
  for (std::size_t q = 0; q < na; ++q) {
    for (std::size_t i = 0; i < nl; ++i) {
      Vec v(n);
      setpair(v, l.a_action.slice(q, i), Vec(nr));
      out.a_action.set_slice(q, i, v);
    }
    for (std::size_t i = 0; i < nr; ++i) {
      Vec v(n);
      setpair(v, Vec(nl), r.a_action.slice(q, i));
      out.a_action.set_slice(q, nl + i, v);
    }
  }
  for (std::size_t i = 0; i < nl; ++i) out.anchor[i] = l.anchor[i];
  for (std::size_t i = 0; i < nr; ++i) out.anchor[nl + i] = Matrix(na, na);
  for (std::size_t i = 0; i < nl; ++i)
    for (std::size_t j = 0; j < nl; ++j) {
      Vec v(n);
      setpair(v, l.bracket.slice(i, j), Vec(nr));
      out.bracket.set_slice(i, j, v);
    }
  for (std::size_t i = 0; i < nl; ++i)
    for (std::size_t j = 0; j < nr; ++j) {
      Vec v(n);
      setpair(v, Vec(nl), action.slice(i, j));
      out.bracket.set_slice(i, nl + j, v);
      Vec w(n);
      setpair(w, Vec(nl), scaled(action.slice(i, j), Rational(-1)));
      out.bracket.set_slice(nl + j, i, w);
    }
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nr; ++j) {
      Vec v(n);
      setpair(v, Vec(nl), r.bracket.slice(i, j));
      out.bracket.set_slice(nl + i, nl + j, v);
    }
  return out;
}

// -------- fiber product and pullbacks --------

namespace detail {

inline AmbientLR direct_sum_ambient(const LieRinehartAlgebra& l, const LieRinehartAlgebra& m) {
  AmbientLR amb;
  const std::size_t nl = l.dim, nm = m.dim;
  amb.dim = nl + nm;
  auto split_l = [nl](const Vec& v) { return Vec(v.begin(), v.begin() + nl); };
  auto split_m = [nl](const Vec& v) { return Vec(v.begin() + nl, v.end()); };
  amb.bracket = [=, &l, &m](const Vec& u, const Vec& v) {
    const Vec bl = l.brk(split_l(u), split_l(v));
    const Vec bm = m.brk(split_m(u), split_m(v));
    Vec out(nl + nm);
    for (std::size_t i = 0; i < nl; ++i) out[i] = bl[i];
    for (std::size_t i = 0; i < nm; ++i) out[nl + i] = bm[i];
    return out;
  };
  amb.act = [=, &l, &m](const Vec& a, const Vec& u) {
    const Vec al = l.act(a, split_l(u));
    const Vec am = m.act(a, split_m(u));
    Vec out(nl + nm);
    for (std::size_t i = 0; i < nl; ++i) out[i] = al[i];
    for (std::size_t i = 0; i < nm; ++i) out[nl + i] = am[i];
    return out;
  };
  amb.anchor = [=, &l](const Vec& u) { return l.anchor_of(split_l(u)); };
  return amb;
}

}  // namespace detail

struct FiberProduct {
  LieRinehartAlgebra algebra;
  LRMorphism proj_left;
  LRMorphism proj_right;
  Matrix inclusion;  // (dim L + dim M) x dim P
};

/// L x_{Der(A)} M = {(l, m) : alpha_L(l) = alpha_M(m)}.
inline FiberProduct fiber_product(const LieRinehartAlgebra& l, const LieRinehartAlgebra& m) {
  if (!(l.base == m.base)) throw std::invalid_argument("fiber_product: different bases");
  const std::size_t na = l.base.dim, nl = l.dim, nm = m.dim;
  std::vector<Vec> rows;
  for (std::size_t r = 0; r < na; ++r)
    for (std::size_t c = 0; c < na; ++c) {
      Vec row(nl + nm);
      for (std::size_t i = 0; i < nl; ++i) row[i] = l.anchor[i](r, c);
      for (std::size_t i = 0; i < nm; ++i) row[nl + i] = -m.anchor[i](r, c);
      rows.push_back(std::move(row));
    }
  const Subspace s = kernel(Matrix::from_rows(rows, nl + nm));
  const auto amb = detail::direct_sum_ambient(l, m);
  FiberProduct fp;
  fp.algebra = detail::restrict_to(l.base, amb, s, "fiber_product");
  fp.inclusion = s.basis.transpose();
  Matrix pl(nl, fp.algebra.dim), pm(nm, fp.algebra.dim);
  for (std::size_t j = 0; j < fp.algebra.dim; ++j) {
    for (std::size_t i = 0; i < nl; ++i) pl(i, j) = fp.inclusion(i, j);
    for (std::size_t i = 0; i < nm; ++i) pm(i, j) = fp.inclusion(nl + i, j);
  }
  fp.proj_left = {fp.algebra, l, pl};
  fp.proj_right = {fp.algebra, m, pm};
  return fp;
}

// -------- quotient by an ideal --------

struct QuotientAlgebra {
  LieRinehartAlgebra algebra;
  LRMorphism projection;
  QuotientPresentation presentation;
};

inline ValidationReport validate_ideal(const LieRinehartAlgebra& l, const Subspace& w) {
  ValidationReport rep;
  for (std::size_t i = 0; i < w.rank(); ++i) {
    const Vec wv = w.basis.row(i);
    if (!l.anchor_of(wv).is_zero()) rep.add("ideal-anchor", {i});
    for (std::size_t j = 0; j < l.dim; ++j)
      if (!w.contains(l.brk(unit_vec(l.dim, j), wv))) rep.add("ideal-bracket", {j, i});
    for (std::size_t q = 0; q < l.base.dim; ++q)
      if (!w.contains(l.act(unit_vec(l.base.dim, q), wv))) rep.add("ideal-a-stable", {q, i});
  }
  return rep;
}

/// L / W for an ideal W (anchor vanishing on W, per the ideal reading).
inline QuotientAlgebra quotient_algebra(const LieRinehartAlgebra& l, const Subspace& w) {
  const ValidationReport rep = validate_ideal(l, w);
  if (!rep.ok()) throw std::invalid_argument("quotient_algebra: not an ideal: " + rep.summary());
  QuotientAlgebra out;
  out.presentation = quotient(l.dim, w);
  const auto& q = out.presentation;
  LieRinehartAlgebra& e = out.algebra;
  e.base = l.base;
  e.dim = q.quotient_dim();
  e.a_action = Tensor3(l.base.dim, e.dim, e.dim);
  e.bracket = Tensor3(e.dim, e.dim, e.dim);
  e.anchor.assign(e.dim, Matrix(l.base.dim, l.base.dim));
  for (std::size_t i = 0; i < e.dim; ++i) {
    const Vec li = q.section.col(i);
    e.anchor[i] = l.anchor_of(li);
    for (std::size_t j = 0; j < e.dim; ++j)
      e.bracket.set_slice(i, j, q.project(l.brk(li, q.section.col(j))));
    for (std::size_t p = 0; p < l.base.dim; ++p)
      e.a_action.set_slice(p, i, q.project(l.act(unit_vec(l.base.dim, p), li)));
  }
  out.projection = {l, e, q.projection};
  return out;
}

// -------- central extensions --------

struct CentralExtensionWitness {
  LRMorphism p;
  Subspace kernel_space;
  ValidationReport centrality;

  bool central() const { return centrality.ok(); }
};

inline CentralExtensionWitness centrality_witness(const LRMorphism& p) {
  CentralExtensionWitness w;
  w.p = p;
  w.kernel_space = kernel(p.matrix);
  const Subspace z = center(p.source);
  for (std::size_t i = 0; i < w.kernel_space.rank(); ++i) {
    const Vec k = w.kernel_space.basis.row(i);
    if (z.contains(k)) continue;
    bool found = false;
    for (std::size_t q = 0; q < p.source.base.dim && !found; ++q)
      for (std::size_t j = 0; j < p.source.dim && !found; ++j)
        if (!is_zero_vec(
                p.source.brk(p.source.act(unit_vec(p.source.base.dim, q), k),
                             unit_vec(p.source.dim, j)))) {
          w.centrality.add("kernel-not-central", {i, q, j});
          found = true;
        }
  }
  return w;
}

/// Lie-Rinehart morphism lift search: all h with c h = f, h A-linear and
/// bracket-preserving. Because Ker c is central the bracket constraint is
/// affine-linear over the solution space of the linear part.
struct LiftSearch {
  bool found = false;
  Matrix lift;  // h with c h = f, valid LR morphism
};

inline LiftSearch find_lift(const LRMorphism& c, const LRMorphism& f) {
  if (!(c.target.dim == f.target.dim))
    throw std::invalid_argument("find_lift: mismatched targets");
  const auto& n = c.source;  // h : f.source -> n
  const auto& l = f.source;
  const std::size_t un = n.dim * l.dim;  // unknowns h(r, c)
  auto hidx = [&](std::size_t r, std::size_t cc) { return r * l.dim + cc; };
  std::vector<Vec> rows;
  Vec rhs_flat;
  auto push_eq = [&](const Vec& coeffs, const Rational& rhs) {
    rows.push_back(coeffs);
    rhs_flat.push_back(rhs);
  };
  // c h = f
  for (std::size_t j = 0; j < l.dim; ++j)
    for (std::size_t k = 0; k < c.target.dim; ++k) {
      Vec row(un);
      for (std::size_t r = 0; r < n.dim; ++r)
        if (!c.matrix(k, r).is_zero()) row[hidx(r, j)] = c.matrix(k, r);
      push_eq(row, f.matrix(k, j));
    }
  // h(a_q x_j) = a_q h(x_j)
  for (std::size_t q = 0; q < l.base.dim; ++q) {
    const Matrix act_n = n.act_operator(unit_vec(l.base.dim, q));
    for (std::size_t j = 0; j < l.dim; ++j) {
      const Vec ax = l.a_action.slice(q, j);
      for (std::size_t k = 0; k < n.dim; ++k) {
        Vec row(un);
        for (std::size_t cc = 0; cc < l.dim; ++cc)
          if (!ax[cc].is_zero()) row[hidx(k, cc)] += ax[cc];
        for (std::size_t r = 0; r < n.dim; ++r)
          if (!act_n(k, r).is_zero()) row[hidx(r, j)] -= act_n(k, r);
        push_eq(row, Rational(0));
      }
    }
  }
  Matrix sys = Matrix::from_rows(rows, un);
  const auto h0_flat = solve(sys, rhs_flat);
  LiftSearch out;
  if (!h0_flat) return out;
  const Subspace hom_kernel = kernel(sys);
  auto unflatten = [&](const Vec& v) {
    Matrix h(n.dim, l.dim);
    for (std::size_t r = 0; r < n.dim; ++r)
      for (std::size_t cc = 0; cc < l.dim; ++cc) h(r, cc) = v[hidx(r, cc)];
    return h;
  };
  const Matrix h0 = unflatten(*h0_flat);
  // Bracket condition, linear in the kernel directions d (they map into the
  // central Ker c): h0[x,y] + d([x,y]) = [h0 x, h0 y].
  std::vector<Matrix> dirs;
  for (std::size_t t = 0; t < hom_kernel.rank(); ++t)
    dirs.push_back(unflatten(hom_kernel.basis.row(t)));
  std::vector<Vec> brows;
  Vec brhs;
  for (std::size_t i = 0; i < l.dim; ++i)
    for (std::size_t j = i + 1; j < l.dim; ++j) {
      const Vec bx = l.bracket.slice(i, j);
      const Vec target = vec_sub(n.brk(h0.col(i), h0.col(j)), h0 * bx);
      std::vector<Vec> dir_images;
      for (const auto& d : dirs) dir_images.push_back(d * bx);
      for (std::size_t k = 0; k < n.dim; ++k) {
        Vec row(hom_kernel.rank());
        for (std::size_t t = 0; t < hom_kernel.rank(); ++t) row[t] = dir_images[t][k];
        brows.push_back(std::move(row));
        brhs.push_back(target[k]);
      }
    }
  Vec coeff(hom_kernel.rank());
  if (!brows.empty()) {
    const auto t = solve(Matrix::from_rows(brows, hom_kernel.rank()), brhs);
    if (!t) return out;
    coeff = *t;
  } else if (!is_zero_vec(brhs)) {
    return out;
  }
  Matrix h = h0;
  for (std::size_t t = 0; t < hom_kernel.rank(); ++t)
    if (!coeff[t].is_zero()) h = h + coeff[t] * dirs[t];
  out.found = true;
  out.lift = h;
  return out;
}

struct PullbackExtension {
  LieRinehartAlgebra total;
  CentralExtensionWitness p_left;
  LRMorphism p_right;
  bool splits = false;
  std::optional<Matrix> splitting_lift;  // h : L -> N with c h = f
};

/// P = {(l, n) in L x_{Der} N : f(l) = c(n)}; p_left is central. Splits iff a
/// morphism h with c h = f exists.
inline PullbackExtension pullback_extension(const LRMorphism& c, const LRMorphism& f) {
  const CentralExtensionWitness cw = centrality_witness(c);
  if (!cw.central() || !is_surjective(c))
    throw std::invalid_argument("pullback_extension: c is not a central extension");
  if (!(f.target.dim == c.target.dim))
    throw std::invalid_argument("pullback_extension: mismatched targets");
  const auto& l = f.source;
  const auto& n = c.source;
  const std::size_t na = l.base.dim;
  std::vector<Vec> rows;
  for (std::size_t r = 0; r < na; ++r)
    for (std::size_t cc = 0; cc < na; ++cc) {
      Vec row(l.dim + n.dim);
      for (std::size_t i = 0; i < l.dim; ++i) row[i] = l.anchor[i](r, cc);
      for (std::size_t i = 0; i < n.dim; ++i) row[l.dim + i] = -n.anchor[i](r, cc);
      rows.push_back(std::move(row));
    }
  for (std::size_t k = 0; k < f.target.dim; ++k) {
    Vec row(l.dim + n.dim);
    for (std::size_t i = 0; i < l.dim; ++i) row[i] = f.matrix(k, i);
    for (std::size_t i = 0; i < n.dim; ++i) row[l.dim + i] = -c.matrix(k, i);
    rows.push_back(std::move(row));
  }
  const Subspace s = kernel(Matrix::from_rows(rows, l.dim + n.dim));
  const auto amb = detail::direct_sum_ambient(l, n);
  PullbackExtension out;
  out.total = detail::restrict_to(l.base, amb, s, "pullback_extension");
  const Matrix inc = s.basis.transpose();
  Matrix pl(l.dim, out.total.dim), pn(n.dim, out.total.dim);
  for (std::size_t j = 0; j < out.total.dim; ++j) {
    for (std::size_t i = 0; i < l.dim; ++i) pl(i, j) = inc(i, j);
    for (std::size_t i = 0; i < n.dim; ++i) pn(i, j) = inc(l.dim + i, j);
  }
  out.p_left = centrality_witness({out.total, l, pl});
  out.p_right = {out.total, n, pn};
  const LiftSearch h = find_lift(c, f);
  out.splits = h.found;
  if (h.found) out.splitting_lift = h.lift;
  return out;
}

// -------- builtin corpus --------

inline LieRinehartAlgebra dual_numbers_lr() {
  LieRinehartAlgebra l;
  l.base = CommAlgebra::dual_numbers();
  l.dim = 2;
  l.a_action = l.base.mult;
  l.bracket = Tensor3(2, 2, 2);
  l.bracket(0, 1, 1) = 1;   // [1, eps] = eps
  l.bracket(1, 0, 1) = -1;
  Matrix ad1(2, 2);
  ad1(1, 1) = 1;  // ad_1 : 1 -> 0, eps -> eps
  l.anchor = {ad1, Matrix(2, 2)};
  return l;
}

inline LieRinehartAlgebra der_plus_a() {
  const CommAlgebra a = CommAlgebra::dual_numbers();
  const LieRinehartAlgebra der = der_algebra(a);
  // R = A as an abelian Lie A-algebra with zero anchor.
  LieRinehartAlgebra r;
  r.base = a;
  r.dim = a.dim;
  r.a_action = a.mult;
  r.bracket = Tensor3(a.dim, a.dim, a.dim);
  r.anchor.assign(a.dim, Matrix(a.dim, a.dim));
  // Action D o a = D(a); derivation matrices are the anchors of der.
  Tensor3 action(der.dim, r.dim, r.dim);
  for (std::size_t i = 0; i < der.dim; ++i)
    for (std::size_t j = 0; j < r.dim; ++j)
      action.set_slice(i, j, der.anchor[i] * unit_vec(a.dim, j));
  return semidirect(der, r, action);
}

inline std::optional<std::size_t> parse_abelian_name(const std::string& name) {
  if (name.size() < 9 || name.substr(0, 8) != "abelian(" || name.back() != ')')
    return std::nullopt;
  const std::string inner = name.substr(8, name.size() - 9);
  if (inner.empty()) return std::nullopt;
  std::size_t n = 0;
  for (char ch : inner) {
    if (ch < '0' || ch > '9') return std::nullopt;
    n = n * 10 + static_cast<std::size_t>(ch - '0');
  }
  return n;
}

struct UnknownBuiltin : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline LieRinehartAlgebra builtin(const std::string& name) {
  if (name == "dual_numbers") return dual_numbers_lr();
  if (name == "der_plus_a") return der_plus_a();
  if (name == "sl2") return lr_from_lie(sl2_lie());
  if (name == "heisenberg") return lr_from_lie(heisenberg_lie());
  if (name == "transformation(sl2,dual_numbers,0)" ||
      name == "transformation(sl2, dual_numbers, 0)") {
    const CommAlgebra a = CommAlgebra::dual_numbers();
    return transformation_algebra(sl2_lie(), a, std::vector<Matrix>(3, Matrix(2, 2)));
  }
  if (const auto n = parse_abelian_name(name)) return lr_from_lie(abelian_lie(*n));
  throw UnknownBuiltin("unknown builtin algebra: " + name);
}

inline std::vector<std::string> builtin_names() {
  return {"dual_numbers", "der_plus_a",  "sl2",
          "heisenberg",   "abelian(n)",  "transformation(sl2,dual_numbers,0)"};
}

}  // namespace lira
