#include "lira/constructions.hpp"
#include "lira/lie_rinehart.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace lira;

namespace {

CommAlgebra split_pair() {  // Q x Q by idempotents
  CommAlgebra a;
  a.dim = 2;
  a.unit = {Rational(1), Rational(1)};
  a.mult = Tensor3(2, 2, 2);
  a.mult(0, 0, 0) = 1;
  a.mult(1, 1, 1) = 1;
  return a;
}

}  // namespace

TEST_CASE("commutative algebra validation") {
  CHECK(validate_comm_algebra(CommAlgebra::rationals()).ok());
  CHECK(validate_comm_algebra(CommAlgebra::dual_numbers()).ok());
  CHECK(validate_comm_algebra(split_pair()).ok());

  // eps^2 := eps gives Q[x]/(x^2-x), still a valid commutative algebra; the
  // damage only shows once the dual-numbers Lie-Rinehart structure sits on
  // top of the mutated base.
  LieRinehartAlgebra l = builtin("dual_numbers");
  l.base.mult(1, 1, 1) = 1;
  CHECK(validate_comm_algebra(l.base).ok());
  ValidationReport rep = validate_comm_algebra(l.base);
  rep.merge(validate_lr(l));
  CHECK_FALSE(rep.ok());
  CHECK(rep.has("module-assoc"));
}

TEST_CASE("derivations of small algebras") {
  CHECK(derivations_of(CommAlgebra::rationals()).empty());
  const auto ders = derivations_of(CommAlgebra::dual_numbers());
  REQUIRE(ders.size() == 1);
  CHECK(is_zero_vec(ders[0] * Vec{Rational(1), Rational(0)}));
  // D(eps) is a multiple of eps; normalized basis gives D(eps) = eps
  const Vec deps = ders[0] * Vec{Rational(0), Rational(1)};
  CHECK(deps[0] == 0);
  CHECK(deps[1] != 0);
  CHECK(derivations_of(split_pair()).empty());
}

TEST_CASE("derivations form a Lie subalgebra") {
  for (const auto* name : {"dual_numbers", "der_plus_a"}) {
    const CommAlgebra a = builtin(name).base;
    const auto ders = derivations_of(a);
    std::vector<Vec> flat;
    for (const auto& d : ders) {
      Vec v;
      for (std::size_t r = 0; r < a.dim; ++r)
        for (std::size_t c = 0; c < a.dim; ++c) v.push_back(d(r, c));
      flat.push_back(std::move(v));
    }
    const Subspace span = Subspace::from_rows(a.dim * a.dim, flat);
    for (const auto& d1 : ders)
      for (const auto& d2 : ders) {
        const Matrix comm = commutator_matrix(d1, d2);
        Vec v;
        for (std::size_t r = 0; r < a.dim; ++r)
          for (std::size_t c = 0; c < a.dim; ++c) v.push_back(comm(r, c));
        CHECK(span.contains(v));
      }
  }
}

TEST_CASE("builtin algebras validate") {
  for (const auto* name : {"dual_numbers", "der_plus_a", "sl2", "heisenberg", "abelian(3)",
                           "transformation(sl2,dual_numbers,0)"}) {
    const LieRinehartAlgebra l = builtin(name);
    CHECK(validate_comm_algebra(l.base).ok());
    CHECK(validate_lr(l).ok());
  }
}

TEST_CASE("perturbed sl2 reports a jacobi violation") {
  LieRinehartAlgebra l = builtin("sl2");
  // keep antisymmetry, break jacobi: [e,f] := h + e
  l.bracket(0, 1, 0) += 1;
  l.bracket(1, 0, 0) -= 1;
  const ValidationReport rep = validate_lr(l);
  CHECK_FALSE(rep.ok());
  CHECK(rep.has("jacobi"));
}

TEST_CASE("center") {
  CHECK(center(builtin("abelian(3)")).rank() == 3);
  CHECK(center(builtin("sl2")).rank() == 0);
  CHECK(center(builtin("dual_numbers")).rank() == 0);
  CHECK(center(builtin("heisenberg")).rank() == 1);
}

TEST_CASE("commutator and abelianization") {
  const auto ab = builtin("abelian(3)");
  CHECK(derived_subspace(ab).rank() == 0);
  CHECK(abelianize(ab).quotient_dim() == 3);

  const auto sl2 = builtin("sl2");
  CHECK(derived_subspace(sl2).rank() == 3);
  CHECK(abelianize(sl2).quotient_dim() == 0);

  const auto dn = builtin("dual_numbers");
  const Subspace c = derived_subspace(dn);
  REQUIRE(c.rank() == 1);
  CHECK(c.contains(Vec{Rational(0), Rational(1)}));  // the line Q.eps
  CHECK(abelianize(dn).quotient_dim() == 1);

  const auto h3 = builtin("heisenberg");
  CHECK(derived_subspace(h3) == center(h3));
}

TEST_CASE("commutator span is already stable under the A-action") {
  for (const auto* name : {"dual_numbers", "der_plus_a", "sl2",
                           "transformation(sl2,dual_numbers,0)"}) {
    const LieRinehartAlgebra l = builtin(name);
    const Subspace c = derived_subspace(l);
    std::vector<Matrix> ops;
    for (std::size_t q = 0; q < l.base.dim; ++q)
      ops.push_back(l.act_operator(unit_vec(l.base.dim, q)));
    CHECK(close_under(c, ops) == c);
  }
}

TEST_CASE("center is killed by every adjoint operator") {
  for (const auto* name : {"heisenberg", "dual_numbers", "der_plus_a"}) {
    const LieRinehartAlgebra l = builtin(name);
    const Subspace z = center(l);
    for (std::size_t j = 0; j < l.dim; ++j)
      for (std::size_t i = 0; i < z.rank(); ++i)
        CHECK(is_zero_vec(l.brk(unit_vec(l.dim, j), z.basis.row(i))));
  }
}

TEST_CASE("morphism validation") {
  const auto sl2 = builtin("sl2");
  CHECK(validate_morphism(identity_morphism(sl2)).ok());
  CHECK(validate_morphism({sl2, sl2, Matrix(3, 3)}).ok());  // zero map

  Matrix swap_ef(3, 3);  // e <-> f without signs breaks the bracket
  swap_ef(1, 0) = 1;
  swap_ef(0, 1) = 1;
  swap_ef(2, 2) = 1;
  const ValidationReport rep = validate_morphism({sl2, sl2, swap_ef});
  CHECK_FALSE(rep.ok());
  CHECK(rep.has("bracket"));

  CHECK_THROWS_AS(validate_morphism({sl2, sl2, Matrix(2, 3)}), std::invalid_argument);
}

TEST_CASE("left modules") {
  const auto sl2 = builtin("sl2");
  CHECK(validate_left_module(sl2, base_as_left_module(sl2)).ok());
  CHECK(validate_left_module(sl2, trivial_left_module(sl2, 2)).ok());
  const auto dn = builtin("dual_numbers");
  CHECK(validate_left_module(dn, base_as_left_module(dn)).ok());
  CHECK(validate_left_module(dn, trivial_left_module(dn, 1)).ok());
}

TEST_CASE("right modules and the canonical-structure remark") {
  const auto sl2 = builtin("sl2");
  CHECK(validate_right_module(sl2, trivial_right_module(sl2, 1)).ok());

  // A with the zero right action over the dual-numbers algebra: the law
  // (am)x = a(mx) - x(a)m forces x(a)m = 0, which fails here.
  const auto dn = builtin("dual_numbers");
  RightLRModule m;
  m.dim = 2;
  m.a_action = dn.base.mult;
  m.r_action = Tensor3(2, 2, 2);
  const ValidationReport rep = validate_right_module(dn, m);
  CHECK_FALSE(rep.ok());
  CHECK(rep.has("right-mixed-anchor"));

  // and the convenience constructor refuses a nonzero anchor outright
  CHECK_THROWS_AS(trivial_right_module(dn, 1), std::invalid_argument);
}
