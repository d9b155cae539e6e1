#pragma once

#include "lira/constructions.hpp"
#include "lira/lie_rinehart.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace lira {

/// Basis bookkeeping for Lambda^n of a dim-dimensional space: strictly
/// increasing index tuples plus sorted lookup with sign.
struct WedgeBasis {
  std::size_t arity = 0;
  std::size_t dim = 0;
  std::vector<std::vector<std::size_t>> tuples;
  std::map<std::vector<std::size_t>, std::size_t> index;

  static WedgeBasis make(std::size_t dim, std::size_t arity) {
    WedgeBasis wb;
    wb.arity = arity;
    wb.dim = dim;
    std::vector<std::size_t> cur;
    build(wb, cur, 0);
    for (std::size_t i = 0; i < wb.tuples.size(); ++i) wb.index[wb.tuples[i]] = i;
    return wb;
  }

  std::size_t count() const { return tuples.size(); }

  /// Sign and index of the sorted tuple; nullopt when an index repeats.
  std::optional<std::pair<int, std::size_t>> locate(std::vector<std::size_t> t) const {
    int sign = 1;
    for (std::size_t i = 1; i < t.size(); ++i)
      for (std::size_t j = i; j > 0 && t[j - 1] >= t[j]; --j) {
        if (t[j - 1] == t[j]) return std::nullopt;
        std::swap(t[j - 1], t[j]);
        sign = -sign;
      }
    const auto it = index.find(t);
    if (it == index.end()) throw std::logic_error("WedgeBasis::locate: tuple out of range");
    return std::make_pair(sign, it->second);
  }

 private:
  static void build(WedgeBasis& wb, std::vector<std::size_t>& cur, std::size_t from) {
    if (cur.size() == wb.arity) {
      wb.tuples.push_back(cur);
      return;
    }
    for (std::size_t i = from; i < wb.dim; ++i) {
      cur.push_back(i);
      build(wb, cur, i + 1);
      cur.pop_back();
    }
  }
};

namespace hom_detail {

inline void weakly_increasing_tuples(std::size_t dim, std::size_t arity,
                                     std::vector<std::vector<std::size_t>>& out) {
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t from) -> void {
    if (cur.size() == arity) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = from; i < dim; ++i) {
      cur.push_back(i);
      self(self, i);
      cur.pop_back();
    }
  };
  rec(rec, 0);
}

}  // namespace hom_detail

/// C^n_A(L, M) realized as alternating A-multilinear maps L^n -> M. A map is
/// stored by its values on increasing basis tuples: coordinate layout
/// idx = tuple * dim(M) + out.
struct CochainSpace {
  std::size_t degree = 0;
  std::size_t module_dim = 0;
  WedgeBasis wb;
  Subspace maps;  // basis of the admissible maps inside the free coordinates

  std::size_t dim() const { return maps.rank(); }
  std::size_t coord_dim() const { return wb.count() * module_dim; }

  /// Value of the map with free coordinates f at an arbitrary basis tuple.
  Vec eval(const Vec& f, const std::vector<std::size_t>& tuple) const {
    Vec out(module_dim);
    const auto loc = wb.locate(tuple);
    if (!loc) return out;
    for (std::size_t m = 0; m < module_dim; ++m) {
      const Rational& c = f[loc->second * module_dim + m];
      if (!c.is_zero()) out[m] = loc->first < 0 ? -c : c;
    }
    return out;
  }
};

inline CochainSpace cochain_space(const LieRinehartAlgebra& l, const LeftLRModule& m,
                                  std::size_t n) {
  CochainSpace cs;
  cs.degree = n;
  cs.module_dim = m.dim;
  cs.wb = WedgeBasis::make(l.dim, n);
  const std::size_t coords = cs.wb.count() * m.dim;
  if (n == 0) {
    cs.maps = Subspace::full(coords);
    return cs;
  }
  // A-multilinearity in every slot, on weakly increasing tuples (signs make
  // the remaining instances redundant; repeated-index tuples are needed).
  std::vector<std::vector<std::size_t>> tuples;
  hom_detail::weakly_increasing_tuples(l.dim, n, tuples);
  RrefBuilder rows(coords);
  std::vector<Matrix> aops;
  for (std::size_t q = 0; q < l.base.dim; ++q) aops.push_back(m.a_op(q));
  for (const auto& t : tuples)
    for (std::size_t s = 0; s < n; ++s)
      for (std::size_t q = 0; q < l.base.dim; ++q) {
        // f(..., a_q e_{t_s}, ...) - a_q f(t) = 0, row per output coordinate.
        std::vector<Vec> lhs_rows(m.dim, Vec(coords));
        const Vec ax = l.a_action.slice(q, t[s]);
        for (std::size_t k = 0; k < l.dim; ++k) {
          if (ax[k].is_zero()) continue;
          auto tt = t;
          tt[s] = k;
          const auto loc = cs.wb.locate(tt);
          if (!loc) continue;
          for (std::size_t out = 0; out < m.dim; ++out)
            lhs_rows[out][loc->second * m.dim + out] +=
                loc->first < 0 ? -ax[k] : ax[k];
        }
        const auto tloc = cs.wb.locate(t);
        if (tloc) {
          for (std::size_t out = 0; out < m.dim; ++out)
            for (std::size_t mm = 0; mm < m.dim; ++mm)
              if (!aops[q](out, mm).is_zero())
                lhs_rows[out][tloc->second * m.dim + mm] -=
                    tloc->first < 0 ? -aops[q](out, mm) : aops[q](out, mm);
        }
        for (auto& r : lhs_rows) rows.insert(std::move(r));
      }
  cs.maps = kernel(rows.to_matrix());
  return cs;
}

/// Matrix of the Rinehart coboundary C^n -> C^{n+1} in the canonical bases
/// (columns over the C^n basis, rows over the C^{n+1} basis).
inline Matrix coboundary(const LieRinehartAlgebra& l, const LeftLRModule& m,
                         const CochainSpace& cn, const CochainSpace& cnp1) {
  const std::size_t n1 = cn.degree + 1;
  Matrix delta(cnp1.dim(), cn.dim());
  for (std::size_t b = 0; b < cn.dim(); ++b) {
    const Vec f = cn.maps.basis.row(b);
    Vec df(cnp1.coord_dim());
    for (std::size_t t = 0; t < cnp1.wb.count(); ++t) {
      const auto& tuple = cnp1.wb.tuples[t];
      Vec val(m.dim);
      for (std::size_t i = 0; i < n1; ++i) {
        std::vector<std::size_t> rest;
        for (std::size_t s = 0; s < n1; ++s)
          if (s != i) rest.push_back(tuple[s]);
        const Vec inner = cn.eval(f, rest);
        const Vec acted = m.l_op(tuple[i]) * inner;
        add_scaled(val, Rational(i % 2 == 0 ? 1 : -1), acted);
      }
      for (std::size_t j = 0; j < n1; ++j)
        for (std::size_t k = j + 1; k < n1; ++k) {
          std::vector<std::size_t> rest;
          rest.push_back(0);  // placeholder for the bracket slot
          for (std::size_t s = 0; s < n1; ++s)
            if (s != j && s != k) rest.push_back(tuple[s]);
          const Vec br = l.bracket.slice(tuple[j], tuple[k]);
          // 1-based (j+1)+(k+1) keeps the parity of j+k.
          const Rational sign(((j + k) % 2 == 0) ? 1 : -1);
          for (std::size_t c = 0; c < l.dim; ++c) {
            if (br[c].is_zero()) continue;
            rest[0] = c;
            add_scaled(val, sign * br[c], cn.eval(f, rest));
          }
        }
      for (std::size_t out = 0; out < m.dim; ++out) df[t * m.dim + out] = val[out];
    }
    const auto coords = cnp1.maps.coordinates(df);
    if (!coords)
      throw std::logic_error("coboundary: image is not A-multilinear alternating");
    delta.set_col(b, *coords);
  }
  return delta;
}

struct CochainComplex {
  std::vector<CochainSpace> spaces;  // degrees 0..max
  std::vector<Matrix> deltas;        // deltas[n] : C^n -> C^{n+1}
};

inline CochainComplex cochain_complex(const LieRinehartAlgebra& l, const LeftLRModule& m,
                                      std::size_t max_degree) {
  CochainComplex cc;
  for (std::size_t n = 0; n <= max_degree; ++n) cc.spaces.push_back(cochain_space(l, m, n));
  for (std::size_t n = 0; n + 1 <= max_degree; ++n)
    cc.deltas.push_back(coboundary(l, m, cc.spaces[n], cc.spaces[n + 1]));
  return cc;
}

struct CohomologyResult {
  std::size_t dim = 0;
  std::vector<Vec> representatives;  // cocycles in C^n free coordinates
};

inline CohomologyResult cohomology(const CochainComplex& cc, std::size_t n) {
  if (n >= cc.deltas.size())
    throw std::invalid_argument("cohomology: complex not built through degree n+1");
  const Subspace cocycles = kernel(cc.deltas[n]);
  RrefBuilder im(cc.spaces[n].dim());
  if (n > 0)
    for (std::size_t j = 0; j < cc.deltas[n - 1].cols(); ++j)
      im.insert(cc.deltas[n - 1].col(j));
  CohomologyResult res;
  const std::size_t brank = im.rank();
  for (std::size_t i = 0; i < cocycles.rank(); ++i)
    if (im.insert(cocycles.basis.row(i))) {
      // independent modulo coboundaries: a representative
      Vec rep(cc.spaces[n].coord_dim());
      for (std::size_t k = 0; k < cc.spaces[n].dim(); ++k)
        add_scaled(rep, cocycles.basis(i, k), cc.spaces[n].maps.basis.row(k));
      res.representatives.push_back(std::move(rep));
    }
  res.dim = im.rank() - brank;
  return res;
}

inline CohomologyResult cohomology(const LieRinehartAlgebra& l, const LeftLRModule& m,
                                   std::size_t n) {
  return cohomology(cochain_complex(l, m, n + 1), n);
}

// -------- chains --------

/// C_n = M (x)_A Lambda^n_A L as a quotient of M (x) Lambda^n_K L.
/// Ambient layout: idx = m * wedge_count + tuple.
struct ChainSpace {
  std::size_t degree = 0;
  std::size_t module_dim = 0;
  WedgeBasis wb;
  QuotientPresentation pres;

  std::size_t dim() const { return pres.quotient_dim(); }
  std::size_t coord_dim() const { return wb.count() * module_dim; }
  std::size_t idx(std::size_t m, std::size_t t) const { return m * wb.count() + t; }
};

inline ChainSpace chain_space(const LieRinehartAlgebra& l, const RightLRModule& m,
                              std::size_t n) {
  ChainSpace cs;
  cs.degree = n;
  cs.module_dim = m.dim;
  cs.wb = WedgeBasis::make(l.dim, n);
  const std::size_t amb = cs.coord_dim();
  if (n == 0) {
    cs.pres = quotient(amb, Subspace::zero(amb));
    return cs;
  }
  RrefBuilder rels(amb);
  // Both balancing families are multilinear in the wedge slots, so they are
  // instantiated on weakly increasing tuples; the instances with repeated
  // indices are needed (the diagonal slot-balance x ^ (a x) does not come
  // from the strictly increasing ones).
  std::vector<std::vector<std::size_t>> tuples;
  hom_detail::weakly_increasing_tuples(l.dim, n, tuples);
  for (const auto& tuple : tuples) {
    // Slot balancing inside Lambda_A: a in slot s equals a in slot s'.
    for (std::size_t s = 0; s + 1 < n; ++s)
      for (std::size_t s2 = s + 1; s2 < n; ++s2)
        for (std::size_t q = 0; q < l.base.dim; ++q)
          for (std::size_t mi = 0; mi < m.dim; ++mi) {
            Vec rel(amb);
            auto put = [&](std::size_t slot, const Rational& scale) {
              const Vec ax = l.a_action.slice(q, tuple[slot]);
              for (std::size_t k = 0; k < l.dim; ++k) {
                if (ax[k].is_zero()) continue;
                auto tt = tuple;
                tt[slot] = k;
                if (const auto loc = cs.wb.locate(tt))
                  rel[cs.idx(mi, loc->second)] +=
                      (loc->first < 0 ? -scale : scale) * ax[k];
              }
            };
            put(s, Rational(1));
            put(s2, Rational(-1));
            rels.insert(std::move(rel));
          }
    // A-balancing: (a m) (x) w - m (x) (a . slot 0) w.
    const auto tloc = cs.wb.locate(tuple);
    for (std::size_t q = 0; q < l.base.dim; ++q)
      for (std::size_t mi = 0; mi < m.dim; ++mi) {
        Vec rel(amb);
        if (tloc) {
          const Vec am = m.a_action.slice(q, mi);
          for (std::size_t r = 0; r < m.dim; ++r)
            if (!am[r].is_zero())
              rel[cs.idx(r, tloc->second)] += tloc->first < 0 ? -am[r] : am[r];
        }
        const Vec ax = l.a_action.slice(q, tuple[0]);
        for (std::size_t k = 0; k < l.dim; ++k) {
          if (ax[k].is_zero()) continue;
          auto tt = tuple;
          tt[0] = k;
          if (const auto loc = cs.wb.locate(tt))
            rel[cs.idx(mi, loc->second)] -= (loc->first < 0 ? -ax[k] : ax[k]);
        }
        rels.insert(std::move(rel));
      }
  }
  cs.pres = quotient(amb, Subspace::from_builder(rels));
  return cs;
}

/// Ambient boundary M (x) Lambda^n -> M (x) Lambda^{n-1} on pure tensors.
inline Matrix ambient_boundary(const LieRinehartAlgebra& l, const RightLRModule& m,
                               const ChainSpace& cn, const ChainSpace& cnm1) {
  const std::size_t n = cn.degree;
  Matrix d(cnm1.coord_dim(), cn.coord_dim());
  for (std::size_t mi = 0; mi < m.dim; ++mi)
    for (std::size_t t = 0; t < cn.wb.count(); ++t) {
      const auto& tuple = cn.wb.tuples[t];
      Vec out(cnm1.coord_dim());
      for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::size_t> rest;
        for (std::size_t s = 0; s < n; ++s)
          if (s != i) rest.push_back(tuple[s]);
        const auto loc = cnm1.wb.locate(rest);
        if (!loc) continue;
        const Vec mx = m.r_op(tuple[i]) * unit_vec(m.dim, mi);
        const Rational sign(i % 2 == 0 ? 1 : -1);
        for (std::size_t r = 0; r < m.dim; ++r)
          if (!mx[r].is_zero())
            out[cnm1.idx(r, loc->second)] += (loc->first < 0 ? -sign : sign) * mx[r];
      }
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k) {
          std::vector<std::size_t> rest;
          rest.push_back(0);
          for (std::size_t s = 0; s < n; ++s)
            if (s != j && s != k) rest.push_back(tuple[s]);
          const Vec br = l.bracket.slice(tuple[j], tuple[k]);
          const Rational sign(((j + k) % 2 == 0) ? 1 : -1);
          for (std::size_t c = 0; c < l.dim; ++c) {
            if (br[c].is_zero()) continue;
            rest[0] = c;
            if (const auto loc = cnm1.wb.locate(rest))
              out[cnm1.idx(mi, loc->second)] +=
                  (loc->first < 0 ? -sign : sign) * br[c];
          }
        }
      d.set_col(cn.idx(mi, t), out);
    }
  return d;
}

struct ChainComplex {
  std::vector<ChainSpace> spaces;   // degrees 0..max
  std::vector<Matrix> boundaries;   // boundaries[n] : C_{n+1} -> C_n (on quotients)
};

inline ChainComplex chain_complex(const LieRinehartAlgebra& l, const RightLRModule& m,
                                  std::size_t max_degree, bool check_well_defined = true) {
  const ValidationReport mv = validate_right_module(l, m);
  if (!mv.ok()) throw std::invalid_argument("chain_complex: invalid right module: " + mv.summary());
  ChainComplex cc;
  for (std::size_t n = 0; n <= max_degree; ++n) cc.spaces.push_back(chain_space(l, m, n));
  for (std::size_t n = 0; n + 1 <= max_degree; ++n) {
    const Matrix amb = ambient_boundary(l, m, cc.spaces[n + 1], cc.spaces[n]);
    if (check_well_defined) {
      const auto& rels = cc.spaces[n + 1].pres.relations;
      for (std::size_t r = 0; r < rels.rank(); ++r)
        if (!cc.spaces[n].pres.relations.contains(amb * rels.basis.row(r)))
          throw std::logic_error("chain boundary not well-defined on the quotient");
    }
    cc.boundaries.push_back(cc.spaces[n].pres.projection * amb * cc.spaces[n + 1].pres.section);
  }
  return cc;
}

inline std::size_t homology_dim(const ChainComplex& cc, std::size_t n) {
  if (n >= cc.boundaries.size())
    throw std::invalid_argument("homology: complex not built through degree n+1");
  const Subspace cycles =
      n == 0 ? Subspace::full(cc.spaces[0].dim())
             : kernel(cc.boundaries[n - 1]);  // boundaries[n-1] : C_n -> C_{n-1}
  const Subspace boundaries = image(cc.boundaries[n]);
  if (!cycles.contains(boundaries)) throw std::logic_error("homology: d*d != 0");
  return cycles.rank() - boundaries.rank();
}

inline std::size_t homology_dim(const LieRinehartAlgebra& l, const RightLRModule& m,
                                std::size_t n) {
  return homology_dim(chain_complex(l, m, n + 1), n);
}

// -------- Chevalley-Eilenberg oracle (plain K-Lie algebras) --------

/// g-module for the CE complex: action(i,j,*) = g_i . m_j.
struct CEModule {
  std::size_t dim = 0;
  Tensor3 action;

  Matrix op(std::size_t i) const {
    Matrix m(dim, dim);
    for (std::size_t j = 0; j < dim; ++j) m.set_col(j, action.slice(i, j));
    return m;
  }
};

inline ValidationReport validate_ce_module(const LieAlgebraOverK& g, const CEModule& m) {
  ValidationReport rep;
  auto op_of = [&](const Vec& x) {
    Matrix r(m.dim, m.dim);
    for (std::size_t i = 0; i < g.dim; ++i)
      if (!x[i].is_zero()) r = r + x[i] * m.op(i);
    return r;
  };
  for (std::size_t i = 0; i < g.dim; ++i)
    for (std::size_t j = i + 1; j < g.dim; ++j)
      if (!(op_of(g.bracket.slice(i, j)) == commutator_matrix(m.op(i), m.op(j))))
        rep.add("lie-module", {i, j});
  return rep;
}

/// Raw Chevalley-Eilenberg coboundary on Hom(Lambda^n g, M); the independent
/// pipeline backing every transformation-algebra comparison.
inline Matrix ce_coboundary(const LieAlgebraOverK& g, const CEModule& m, std::size_t n) {
  const WedgeBasis wn = WedgeBasis::make(g.dim, n);
  const WedgeBasis wn1 = WedgeBasis::make(g.dim, n + 1);
  Matrix delta(wn1.count() * m.dim, wn.count() * m.dim);
  for (std::size_t t = 0; t < wn1.count(); ++t) {
    const auto& tuple = wn1.tuples[t];
    // first sum: (-1)^i x_i . f(tuple minus i)
    for (std::size_t i = 0; i < n + 1; ++i) {
      std::vector<std::size_t> rest;
      for (std::size_t s = 0; s < n + 1; ++s)
        if (s != i) rest.push_back(tuple[s]);
      const auto loc = wn.locate(rest);
      if (!loc) continue;
      const Matrix op = m.op(tuple[i]);
      const Rational sign(i % 2 == 0 ? 1 : -1);
      for (std::size_t out = 0; out < m.dim; ++out)
        for (std::size_t in = 0; in < m.dim; ++in)
          if (!op(out, in).is_zero())
            delta(t * m.dim + out, loc->second * m.dim + in) +=
                (loc->first < 0 ? -sign : sign) * op(out, in);
    }
    // second sum: (-1)^{j+k} f([x_j,x_k], ...)
    for (std::size_t j = 0; j < n + 1; ++j)
      for (std::size_t k = j + 1; k < n + 1; ++k) {
        std::vector<std::size_t> rest;
        rest.push_back(0);
        for (std::size_t s = 0; s < n + 1; ++s)
          if (s != j && s != k) rest.push_back(tuple[s]);
        const Vec br = g.bracket.slice(tuple[j], tuple[k]);
        const Rational sign(((j + k) % 2 == 0) ? 1 : -1);
        for (std::size_t c = 0; c < g.dim; ++c) {
          if (br[c].is_zero()) continue;
          rest[0] = c;
          if (const auto loc = wn.locate(rest))
            for (std::size_t out = 0; out < m.dim; ++out)
              delta(t * m.dim + out, loc->second * m.dim + out) +=
                  (loc->first < 0 ? -sign : sign) * br[c];
        }
      }
  }
  return delta;
}

inline std::size_t ce_cohomology_dim(const LieAlgebraOverK& g, const CEModule& m, std::size_t n) {
  const Matrix dn = ce_coboundary(g, m, n);
  const std::size_t cocycles = kernel(dn).rank();
  if (n == 0) return cocycles;
  const Matrix dprev = ce_coboundary(g, m, n - 1);
  return cocycles - image(dprev).rank();
}

// -------- Der_A(L, M) and the low-degree exact sequence --------

struct DerModule {
  Subspace der;   // coordinates d(r, c), flattened r * dimL + c
  Subspace ider;  // inner derivations d_m
  std::size_t h0 = 0;
  std::size_t h1 = 0;
  std::size_t invariants_dim = 0;  // computed directly as a kernel
  bool sequence_identity = false;  // dim Der = (dim M - dim H0) + dim H1
  bool h1_is_der_mod_ider = false;

  std::size_t dim() const { return der.rank(); }
};

inline DerModule der_module(const LieRinehartAlgebra& l, const LeftLRModule& m) {
  const std::size_t un = m.dim * l.dim;
  auto didx = [&](std::size_t r, std::size_t c) { return r * l.dim + c; };
  std::vector<Vec> rows;
  // d(a_q x_j) = a_q d(x_j)
  for (std::size_t q = 0; q < l.base.dim; ++q) {
    const Matrix aop = m.a_op(q);
    for (std::size_t j = 0; j < l.dim; ++j) {
      const Vec ax = l.a_action.slice(q, j);
      for (std::size_t k = 0; k < m.dim; ++k) {
        Vec row(un);
        for (std::size_t c = 0; c < l.dim; ++c)
          if (!ax[c].is_zero()) row[didx(k, c)] += ax[c];
        for (std::size_t r = 0; r < m.dim; ++r)
          if (!aop(k, r).is_zero()) row[didx(r, j)] -= aop(k, r);
        rows.push_back(std::move(row));
      }
    }
  }
  // d([x_i, x_j]) = x_i d(x_j) - x_j d(x_i)
  for (std::size_t i = 0; i < l.dim; ++i)
    for (std::size_t j = i + 1; j < l.dim; ++j) {
      const Vec br = l.bracket.slice(i, j);
      const Matrix xi = m.l_op(i), xj = m.l_op(j);
      for (std::size_t k = 0; k < m.dim; ++k) {
        Vec row(un);
        for (std::size_t c = 0; c < l.dim; ++c)
          if (!br[c].is_zero()) row[didx(k, c)] += br[c];
        for (std::size_t r = 0; r < m.dim; ++r) {
          if (!xi(k, r).is_zero()) row[didx(r, j)] -= xi(k, r);
          if (!xj(k, r).is_zero()) row[didx(r, i)] += xj(k, r);
        }
        rows.push_back(std::move(row));
      }
    }
  DerModule dm;
  dm.der = rows.empty() ? Subspace::full(un) : kernel(Matrix::from_rows(rows, un));
  std::vector<Vec> inner;
  for (std::size_t mm = 0; mm < m.dim; ++mm) {
    Vec v(un);
    for (std::size_t j = 0; j < l.dim; ++j) {
      const Vec xm = m.l_action.slice(j, mm);
      for (std::size_t r = 0; r < m.dim; ++r) v[didx(r, j)] = xm[r];
    }
    inner.push_back(std::move(v));
  }
  dm.ider = Subspace::from_rows(un, inner);
  if (!dm.der.contains(dm.ider)) throw std::logic_error("der_module: IDer not inside Der");
  // invariants, directly
  std::vector<Vec> inv_rows;
  for (std::size_t j = 0; j < l.dim; ++j) {
    const Matrix op = m.l_op(j);
    for (std::size_t k = 0; k < m.dim; ++k) inv_rows.push_back(op.row(k));
  }
  dm.invariants_dim =
      inv_rows.empty() ? m.dim : kernel(Matrix::from_rows(inv_rows, m.dim)).rank();
  const CochainComplex cc = cochain_complex(l, m, 2);
  dm.h0 = cohomology(cc, 0).dim;
  dm.h1 = cohomology(cc, 1).dim;
  dm.sequence_identity = dm.der.rank() == (m.dim - dm.h0) + dm.h1;
  dm.h1_is_der_mod_ider = dm.h1 == dm.der.rank() - dm.ider.rank();
  return dm;
}

// -------- transformation-algebra comparison --------

struct CeComparison {
  std::vector<std::size_t> rinehart_dims;
  std::vector<std::size_t> ce_dims;
  bool equal = false;
};

/// The g-module carried by an (A, A(x)g)-module via g = 1 (x) g.
inline CEModule restrict_to_lie(const LieAlgebraOverK& g, const CommAlgebra& a,
                                const LeftLRModule& m) {
  CEModule cm;
  cm.dim = m.dim;
  cm.action = Tensor3(g.dim, m.dim, m.dim);
  for (std::size_t j = 0; j < g.dim; ++j) {
    Matrix op(m.dim, m.dim);
    for (std::size_t p = 0; p < a.dim; ++p)
      if (!a.unit[p].is_zero()) op = op + a.unit[p] * m.l_op(p * g.dim + j);
    for (std::size_t c = 0; c < m.dim; ++c) cm.action.set_slice(j, c, op.col(c));
  }
  return cm;
}

/// dim H^n_Rin(A (x) g, M) vs dim H^n_CE(g, M) for n = 0..max_degree,
/// computed by the two independent pipelines.
inline CeComparison rinehart_vs_ce(const LieAlgebraOverK& g, const CommAlgebra& a,
                                   const std::vector<Matrix>& gamma, const LeftLRModule& m,
                                   std::size_t max_degree) {
  const LieRinehartAlgebra l = transformation_algebra(g, a, gamma);
  const ValidationReport mv = validate_left_module(l, m);
  if (!mv.ok())
    throw std::invalid_argument("rinehart_vs_ce: invalid module: " + mv.summary());
  CeComparison cmp;
  const CochainComplex cc = cochain_complex(l, m, max_degree + 1);
  const CEModule cm = restrict_to_lie(g, a, m);
  const ValidationReport cv = validate_ce_module(g, cm);
  if (!cv.ok()) throw std::invalid_argument("rinehart_vs_ce: restricted module invalid");
  for (std::size_t n = 0; n <= max_degree; ++n) {
    cmp.rinehart_dims.push_back(cohomology(cc, n).dim);
    cmp.ce_dims.push_back(ce_cohomology_dim(g, cm, n));
  }
  cmp.equal = cmp.rinehart_dims == cmp.ce_dims;
  return cmp;
}

}  // namespace lira
