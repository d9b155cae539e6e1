#include "lira/homology.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace lira;

namespace {

LieRinehartAlgebra abelian2_over_dual() {
  LieRinehartAlgebra l;
  l.base = CommAlgebra::dual_numbers();
  l.dim = 2;
  l.a_action = Tensor3(2, 2, 2);
  for (std::size_t j = 0; j < 2; ++j) l.a_action(0, j, j) = 1;
  l.a_action(1, 0, 1) = 1;  // eps . x1 = x2
  l.bracket = Tensor3(2, 2, 2);
  l.anchor.assign(2, Matrix(2, 2));
  return l;
}

CEModule trivial_ce_module(std::size_t gdim, std::size_t d) {
  CEModule m;
  m.dim = d;
  m.action = Tensor3(gdim, d, d);
  return m;
}

}  // namespace

TEST_CASE("cochain space dimensions") {
  const auto sl2 = builtin("sl2");
  const auto m = trivial_left_module(sl2, 1);
  CHECK(cochain_space(sl2, m, 0).dim() == 1);  // C^0 = M
  CHECK(cochain_space(sl2, m, 2).dim() == 3);  // Lambda^2 sl2
  const auto m2 = trivial_left_module(sl2, 2);
  CHECK(cochain_space(sl2, m2, 0).dim() == 2);

  // A-linearity cuts the dimension over the dual numbers
  const auto l = abelian2_over_dual();
  REQUIRE(validate_lr(l).ok());
  const auto mt = trivial_left_module(l, 1);
  CHECK(cochain_space(l, mt, 1).dim() == 1);  // K-linear would give 2
}

TEST_CASE("coboundary squares to zero and matches Chevalley-Eilenberg over Q") {
  for (const auto* name : {"sl2", "heisenberg", "abelian(2)", "dual_numbers", "der_plus_a",
                           "transformation(sl2,dual_numbers,0)"}) {
    const auto l = builtin(name);
    const auto m = trivial_left_module(l, 1);
    const auto cc = cochain_complex(l, m, 4);
    for (std::size_t n = 0; n + 1 < cc.deltas.size(); ++n)
      CHECK((cc.deltas[n + 1] * cc.deltas[n]).is_zero());
  }
  // over A = Q with a trivial module the two pipelines produce the same
  // matrices (the full space of alternating maps, identity bases)
  const auto sl2 = builtin("sl2");
  const auto cc = cochain_complex(sl2, trivial_left_module(sl2, 1), 3);
  const auto cm = trivial_ce_module(3, 1);
  for (std::size_t n = 0; n + 1 <= 3; ++n)
    CHECK(cc.deltas[n] == ce_coboundary(sl2_lie(), cm, n));
}

TEST_CASE("cohomology of the corpus") {
  const auto sl2 = builtin("sl2");
  const auto m = trivial_left_module(sl2, 1);
  const auto cc = cochain_complex(sl2, m, 4);
  CHECK(cohomology(cc, 0).dim == 1);
  CHECK(cohomology(cc, 1).dim == 0);
  CHECK(cohomology(cc, 2).dim == 0);
  CHECK(cohomology(cc, 3).dim == 1);  // the invariant cubic form

  // delta^1 for sl2 has full rank 3
  CHECK(image(cc.deltas[1]).rank() == 3);

  const auto ab1 = builtin("abelian(1)");
  CHECK(cohomology(ab1, trivial_left_module(ab1, 1), 1).dim == 1);

  const auto h3 = builtin("heisenberg");
  CHECK(cohomology(h3, trivial_left_module(h3, 1), 1).dim == 2);
}

TEST_CASE("H^0 equals the invariant subspace computed directly") {
  for (const auto* name : {"sl2", "heisenberg", "dual_numbers", "der_plus_a"}) {
    const auto l = builtin(name);
    for (std::size_t d : {std::size_t(1), std::size_t(2)}) {
      const auto m = trivial_left_module(l, d);
      std::vector<Vec> rows;
      for (std::size_t j = 0; j < l.dim; ++j) {
        const Matrix op = m.l_op(j);
        for (std::size_t k = 0; k < m.dim; ++k) rows.push_back(op.row(k));
      }
      const std::size_t invariants = kernel(Matrix::from_rows(rows, m.dim)).rank();
      CHECK(cohomology(l, m, 0).dim == invariants);
    }
    const auto ma = base_as_left_module(l);
    std::vector<Vec> rows;
    for (std::size_t j = 0; j < l.dim; ++j) {
      const Matrix op = ma.l_op(j);
      for (std::size_t k = 0; k < ma.dim; ++k) rows.push_back(op.row(k));
    }
    const std::size_t invariants = kernel(Matrix::from_rows(rows, ma.dim)).rank();
    CHECK(cohomology(l, ma, 0).dim == invariants);
  }
}

TEST_CASE("chain complexes") {
  // trivial right module over a zero-anchor algebra: boundary_1 vanishes
  const auto ab2 = builtin("abelian(2)");
  const auto rm = trivial_right_module(ab2, 1);
  const auto cc = chain_complex(ab2, rm, 2);
  CHECK(cc.boundaries[0].is_zero());
  CHECK(homology_dim(cc, 0) == 1);  // H_0 = M / M L = M
  CHECK(homology_dim(cc, 1) == 2);

  // H_1 = M (x)_A L^ab for trivial coefficients: sl2 is perfect, so 0
  const auto sl2 = builtin("sl2");
  CHECK(homology_dim(sl2, trivial_right_module(sl2, 1), 1) == 0);

  // boundary squares to zero on the zero-anchor corpus
  for (const auto* name : {"sl2", "heisenberg", "abelian(3)",
                           "transformation(sl2,dual_numbers,0)"}) {
    const auto l = builtin(name);
    const auto m = trivial_right_module(l, 1);
    const auto c = chain_complex(l, m, 3);
    for (std::size_t n = 0; n + 1 < c.boundaries.size(); ++n)
      CHECK((c.boundaries[n] * c.boundaries[n + 1]).is_zero());
  }

  // H_1 over the dual-numbers transformation algebra: M (x)_A L^ab = 0
  const auto t = builtin("transformation(sl2,dual_numbers,0)");
  CHECK(homology_dim(t, trivial_right_module(t, 1), 1) == 0);
}

TEST_CASE("chevalley-eilenberg oracle") {
  const auto cm = trivial_ce_module(3, 1);
  CHECK(ce_cohomology_dim(sl2_lie(), cm, 0) == 1);
  CHECK(ce_cohomology_dim(sl2_lie(), cm, 1) == 0);
  CHECK(ce_cohomology_dim(sl2_lie(), cm, 2) == 0);
  CHECK(ce_cohomology_dim(heisenberg_lie(), cm, 1) == 2);
  CHECK(ce_cohomology_dim(abelian_lie(1), trivial_ce_module(1, 1), 1) == 1);
}

TEST_CASE("Der_A(L, M) and the low-degree exact sequence") {
  const auto sl2 = builtin("sl2");
  const auto dm = der_module(sl2, trivial_left_module(sl2, 1));
  CHECK(dm.dim() == 0);  // Hom_A(L^ab, M) = 0 for perfect sl2
  CHECK(dm.sequence_identity);
  CHECK(dm.h1_is_der_mod_ider);

  const auto ab2 = builtin("abelian(2)");
  const auto dm2 = der_module(ab2, trivial_left_module(ab2, 1));
  CHECK(dm2.dim() == 2);
  CHECK(dm2.ider.rank() == 0);
  CHECK(dm2.h1 == 2);
  CHECK(dm2.sequence_identity);

  // the identity dim Der = (dim M - dim H^0) + dim H^1 across the corpus
  for (const auto* name : {"dual_numbers", "der_plus_a", "sl2", "heisenberg", "abelian(3)",
                           "transformation(sl2,dual_numbers,0)"}) {
    const auto l = builtin(name);
    for (std::size_t d : {std::size_t(1), std::size_t(2)}) {
      const auto dmx = der_module(l, trivial_left_module(l, d));
      CHECK(dmx.sequence_identity);
      CHECK(dmx.h1_is_der_mod_ider);
      CHECK(dmx.h0 == dmx.invariants_dim);
    }
    const auto dma = der_module(l, base_as_left_module(l));
    CHECK(dma.sequence_identity);
    CHECK(dma.h1_is_der_mod_ider);
  }
}

TEST_CASE("transformation-algebra comparison") {
  const std::vector<std::pair<std::string, LieAlgebraOverK>> gs = {
      {"sl2", sl2_lie()}, {"heisenberg", heisenberg_lie()}, {"abelian2", abelian_lie(2)}};
  const std::vector<CommAlgebra> bases = {CommAlgebra::rationals(),
                                          CommAlgebra::dual_numbers()};
  for (const auto& [name, g] : gs)
    for (const auto& a : bases) {
      const std::vector<Matrix> gamma(g.dim, Matrix(a.dim, a.dim));
      const auto l = transformation_algebra(g, a, gamma);
      const auto m = trivial_left_module(l, 1);
      const auto cmp = rinehart_vs_ce(g, a, gamma, m, 2);
      INFO(name << " over dim-" << a.dim << " base");
      CHECK(cmp.equal);
    }
  // over Q the pipelines agree degree by degree with the stated sl2 values
  const auto cmp = rinehart_vs_ce(sl2_lie(), CommAlgebra::rationals(),
                                  {Matrix(1, 1), Matrix(1, 1), Matrix(1, 1)},
                                  trivial_left_module(builtin("sl2"), 1), 2);
  CHECK(cmp.rinehart_dims == std::vector<std::size_t>{1, 0, 0});
}
