#include "lira/lifting.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace lira;

namespace {

Matrix chevalley() {
  Matrix m(3, 3);
  m(1, 0) = -1;
  m(0, 1) = -1;
  m(2, 2) = -1;
  return m;
}

Matrix torus(const Rational& t) {
  Matrix m(3, 3);
  m(0, 0) = t;
  m(1, 1) = Rational(1) / t;
  m(2, 2) = 1;
  return m;
}

Matrix exp_ad(const LieRinehartAlgebra& l, const Vec& x) {
  // exponential of a nilpotent adjoint; callers pick nilpotent x
  const Matrix ad = l.ad(x);
  Matrix term = Matrix::identity(l.dim);
  Matrix sum = term;
  for (std::size_t k = 1; k <= l.dim; ++k) {
    term = Rational(1, static_cast<long>(k)) * (ad * term);
    if (term.is_zero()) break;
    sum = sum + term;
  }
  return sum;
}

LieRinehartAlgebra sl2_two_naturals() {
  const auto sl2 = builtin("sl2");
  LieRinehartAlgebra r = lr_from_lie(abelian_lie(4));
  Tensor3 act(3, 4, 4);
  for (std::size_t copy = 0; copy < 2; ++copy) {
    const std::size_t v1 = 2 * copy, v2 = 2 * copy + 1;
    act(0, v2, v1) = 1;
    act(1, v1, v2) = 1;
    act(2, v1, v1) = 1;
    act(2, v2, v2) = -1;
  }
  return semidirect(sl2, r, act);
}

}  // namespace

TEST_CASE("rinehart derivations of the corpus") {
  // abelian with zero anchor over Q: all of End(L)
  CHECK(rinehart_derivations(builtin("abelian(2)")).size() == 4);

  // sl2: all derivations inner
  const auto sl2 = builtin("sl2");
  const auto ders = rinehart_derivations(sl2);
  REQUIRE(ders.size() == 3);
  std::vector<Vec> inner, found;
  auto flatten = [&](const Matrix& m) {
    Vec v;
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t c = 0; c < 3; ++c) v.push_back(m(r, c));
    return v;
  };
  for (std::size_t j = 0; j < 3; ++j) inner.push_back(flatten(sl2.ad(unit_vec(3, j))));
  for (const auto& d : ders) found.push_back(flatten(d.delta));
  CHECK(Subspace::from_rows(9, inner) == Subspace::from_rows(9, found));

  // dual numbers: dimension 2 (computed by the solver, frozen here)
  CHECK(rinehart_derivations(builtin("dual_numbers")).size() == 2);

  for (const auto* name : {"sl2", "dual_numbers", "der_plus_a", "heisenberg"}) {
    const auto l = builtin(name);
    for (const auto& d : rinehart_derivations(l)) {
      CHECK(validate_derivation_pair(l, d).ok());
      CHECK(validate_derivation(l.base, d.delta0).ok());
    }
  }
}

TEST_CASE("uce lifts of derivations") {
  const auto sl2 = builtin("sl2");
  const auto u = build_uce(sl2);

  const DerivationPair zero{Matrix(3, 3), Matrix(1, 1)};
  CHECK(uce_derivation(sl2, u, zero).delta.is_zero());

  // ad h lifts to the adjoint of the preimage of h under the uce isomorphism
  const DerivationPair adh{sl2.ad(unit_vec(3, 2)), Matrix(1, 1)};
  const DerivationPair lifted = uce_derivation(sl2, u, adh);
  const Matrix uinv = inverse(u.uce_morphism.matrix);
  CHECK(lifted.delta == u.algebra.ad(uinv * unit_vec(3, 2)));

  // functoriality: f delta_L = delta_M f implies the same square after uce
  const LRMorphism chev{sl2, sl2, chevalley()};
  for (std::size_t j = 0; j < 3; ++j) {
    const DerivationPair dl{sl2.ad(unit_vec(3, j)), Matrix(1, 1)};
    const DerivationPair dm{sl2.ad(chevalley() * unit_vec(3, j)), Matrix(1, 1)};
    REQUIRE(chev.matrix * dl.delta == dm.delta * chev.matrix);
    const LRMorphism uchev = uce_on_morphism(chev, u, u);
    CHECK(uchev.matrix * uce_derivation(sl2, u, dl).delta ==
          uce_derivation(sl2, u, dm).delta * uchev.matrix);
  }
}

TEST_CASE("lifting automorphisms along the uce covering of sl2") {
  const auto sl2 = builtin("sl2");
  const auto u = build_uce(sl2);
  const Covering cov = make_covering(u.uce_morphism);
  CHECK(cov.c.rank() == 0);  // the uce covering has C = 0

  std::vector<Matrix> autos = {Matrix::identity(3), chevalley(), torus(Rational(2)),
                               torus(Rational(3)), torus(Rational(1, 2)),
                               exp_ad(sl2, unit_vec(3, 0)), exp_ad(sl2, unit_vec(3, 1)),
                               exp_ad(sl2, scaled(unit_vec(3, 0), Rational(1, 2))),
                               chevalley() * torus(Rational(2)),
                               exp_ad(sl2, unit_vec(3, 0)) * chevalley(),
                               torus(Rational(5)) * exp_ad(sl2, unit_vec(3, 1))};
  for (const auto& h : autos) {
    const LiftResult res = lift_automorphism(cov, {sl2, sl2, h});
    CHECK(res.lifted);
    REQUIRE(res.lift.has_value());
    CHECK(cov.f.matrix * *res.lift == h * cov.f.matrix);
    // uniqueness: no nonzero A-linear map into Ker f vanishing on {L', L'}
    CHECK(lift_ambiguity_dim(cov.f.source, cov.f) == 0);
  }
}

TEST_CASE("lifting bijectivity on the quotient covering") {
  const auto l7 = sl2_two_naturals();
  REQUIRE(is_perfect(l7));
  const auto u7 = build_uce(l7);
  REQUIRE(u7.uce_kernel.rank() == 3);

  // the swap of the two natural copies
  Matrix swap(7, 7);
  for (std::size_t i = 0; i < 3; ++i) swap(i, i) = 1;
  swap(5, 3) = 1;
  swap(3, 5) = 1;
  swap(6, 4) = 1;
  swap(4, 6) = 1;
  const LRMorphism h{l7, l7, swap};
  REQUIRE(validate_morphism(h).ok());

  // pick a kernel line moved by uce(swap) and quotient by it
  const LRMorphism uswap = uce_on_morphism(h, u7, u7);
  std::size_t moved = u7.uce_kernel.rank();
  for (std::size_t i = 0; i < u7.uce_kernel.rank(); ++i) {
    const Subspace line = Subspace::from_rows(u7.algebra.dim, {u7.uce_kernel.basis.row(i)});
    if (!line.contains(uswap.matrix * u7.uce_kernel.basis.row(i))) {
      moved = i;
      break;
    }
  }
  REQUIRE(moved < u7.uce_kernel.rank());
  const Subspace w =
      Subspace::from_rows(u7.algebra.dim, {u7.uce_kernel.basis.row(moved)});
  const auto qa = quotient_algebra(u7.algebra, w);
  const Matrix induced = u7.uce_morphism.matrix * right_inverse(qa.projection.matrix);
  const Covering cov = make_covering({qa.algebra, l7, induced});
  CHECK(cov.c == w);

  // the swap is refused with a witness; the identity still lifts
  const LiftResult refused = lift_automorphism(cov, h);
  CHECK_FALSE(refused.lifted);
  REQUIRE(refused.witness.has_value());
  CHECK_FALSE(cov.c.contains(*refused.witness));
  CHECK(lift_automorphism(cov, identity_morphism(l7)).lifted);

  // bijectivity, sampled both ways: a lift h' descends back to h, and an
  // automorphism g of the source preserving Ker f descends to an h whose
  // lift is g again
  for (const Matrix& m : {Matrix::identity(7), swap * swap}) {
    const LiftResult res = lift_automorphism(cov, {l7, l7, m});
    REQUIRE(res.lifted);
    CHECK(cov.f.matrix * *res.lift == m * cov.f.matrix);
    const Matrix g = *res.lift;
    CHECK(apply(g, kernel(cov.f.matrix)) == kernel(cov.f.matrix));
    const Matrix descended = cov.f.matrix * g * right_inverse(cov.f.matrix);
    CHECK(descended * cov.f.matrix == cov.f.matrix * g);
    const LiftResult relift = lift_automorphism(cov, {l7, l7, descended});
    REQUIRE(relift.lifted);
    CHECK(*relift.lift == g);
  }

  // derivations: at least one refusal, the rest lift with f d' = d f
  std::size_t refusals = 0;
  for (const auto& d : rinehart_derivations(l7)) {
    const LiftResult res = lift_derivation(cov, d);
    if (!res.lifted) {
      ++refusals;
      REQUIRE(res.witness.has_value());
      CHECK_FALSE(cov.c.contains(*res.witness));
    } else {
      CHECK(cov.f.matrix * *res.lift == d.delta * cov.f.matrix);
    }
  }
  CHECK(refusals >= 1);
}

TEST_CASE("lifting derivations along the uce covering of sl2") {
  const auto sl2 = builtin("sl2");
  const Covering cov = make_covering(build_uce(sl2).uce_morphism);
  const DerivationPair zero{Matrix(3, 3), Matrix(1, 1)};
  const LiftResult r0 = lift_derivation(cov, zero);
  CHECK(r0.lifted);
  CHECK(r0.lift->is_zero());
  const DerivationPair ade{sl2.ad(unit_vec(3, 0)), Matrix(1, 1)};
  const LiftResult r1 = lift_derivation(cov, ade);
  CHECK(r1.lifted);
  CHECK(cov.f.matrix * *r1.lift == ade.delta * cov.f.matrix);
}

TEST_CASE("split exact sequences of perfect algebras") {
  // degenerate: N = 0
  const auto sl2 = builtin("sl2");
  const auto zero = builtin("abelian(0)");
  {
    const LRMorphism f = identity_morphism(sl2);
    const LRMorphism g{sl2, zero, Matrix(0, 3)};
    const LRMorphism s{zero, sl2, Matrix(3, 0)};
    const auto rep = split_uce_check(f, g, s);
    CHECK(rep.ok());
  }

  // sl2 x sl2 with the two canonical embeddings
  const auto fp = fiber_product(sl2, sl2);
  const auto& m = fp.algebra;
  Matrix stacked(6, 6);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 6; ++j) {
      stacked(i, j) = fp.proj_left.matrix(i, j);
      stacked(3 + i, j) = fp.proj_right.matrix(i, j);
    }
  Matrix fmat(6, 3), smat(6, 3);
  for (std::size_t j = 0; j < 3; ++j) {
    Vec rhs(6);
    rhs[j] = 1;
    fmat.set_col(j, *solve(stacked, rhs));
    Vec rhs2(6);
    rhs2[3 + j] = 1;
    smat.set_col(j, *solve(stacked, rhs2));
  }
  const auto rep = split_uce_check({sl2, m, fmat}, fp.proj_right, {sl2, m, smat});
  CHECK(rep.hypotheses);
  CHECK(rep.sum_decomposition);
  CHECK(rep.phi_part_is_kernel);
  CHECK(rep.phi_part_ideal);
  CHECK(rep.kernel_direct_sum);
  CHECK(rep.direct_product_case);
  CHECK(rep.product_iso);
  CHECK(rep.ok());

  // product of two copies of A (x) sl2 over the dual numbers
  const auto t = builtin("transformation(sl2,dual_numbers,0)");
  const auto fpt = fiber_product(t, t);
  const auto& mt = fpt.algebra;
  Matrix stacked2(12, 12);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 12; ++j) {
      stacked2(i, j) = fpt.proj_left.matrix(i, j);
      stacked2(6 + i, j) = fpt.proj_right.matrix(i, j);
    }
  Matrix fmat2(12, 6), smat2(12, 6);
  for (std::size_t j = 0; j < 6; ++j) {
    Vec rhs(12);
    rhs[j] = 1;
    fmat2.set_col(j, *solve(stacked2, rhs));
    Vec rhs2(12);
    rhs2[6 + j] = 1;
    smat2.set_col(j, *solve(stacked2, rhs2));
  }
  const auto rep2 = split_uce_check({t, mt, fmat2}, fpt.proj_right, {t, mt, smat2});
  CHECK(rep2.ok());
}
