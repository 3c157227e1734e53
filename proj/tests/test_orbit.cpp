#include <catch2/catch_amalgamated.hpp>

#include "s2star/abc_poly.hpp"
#include "s2star/free_poly.hpp"
#include "s2star/rng.hpp"
#include "s2star/topology.hpp"

using namespace s2star;

namespace {

FreePoly mono(unsigned eu, unsigned eub, unsigned ev, unsigned evb, long c = 1) {
  return FreePoly::monomial(Mono4{eu, eub, ev, evb}, Scalar(Rat(c)));
}

} // namespace

TEST_CASE("sphere reduction", "[orbit]") {
  // U Ubar -> 1 - V Vbar
  REQUIRE(reduce_sphere(mono(1, 1, 0, 0)).poly == FreePoly::one() - mono(0, 0, 1, 1));
  // U^2 Ubar -> U - U V Vbar
  REQUIRE(reduce_sphere(mono(2, 1, 0, 0)).poly == mono(1, 0, 0, 0) - mono(1, 0, 1, 1));
  // V^3 is already normal
  REQUIRE(reduce_sphere(mono(0, 0, 3, 0)).poly == mono(0, 0, 3, 0));
  // Reduction is a ring homomorphism on the quotient.
  Rng rng(3);
  for (int t = 0; t < 20; ++t) {
    FreePoly p = rng.free_poly(4, 3), q = rng.free_poly(4, 3);
    REQUIRE(reduce_sphere(p * q) ==
            reduce_sphere(reduce_sphere(p).poly * reduce_sphere(q).poly));
  }
}

TEST_CASE("invariant reduction", "[orbit]") {
  REQUIRE(reduce_invariant(AbcPoly::A() * AbcPoly::A()).poly ==
          AbcPoly::one() - (AbcPoly::B() * AbcPoly::C()).scaled(Scalar(4)));
  // A^3 -> A - 4 A B C
  AbcPoly a3 = AbcPoly::A() * AbcPoly::A() * AbcPoly::A();
  AbcPoly expect = AbcPoly::A() - (AbcPoly::A() * AbcPoly::B() * AbcPoly::C()).scaled(Scalar(4));
  REQUIRE(reduce_invariant(a3).poly == expect);
  REQUIRE(reduce_invariant(AbcPoly::B() * AbcPoly::C()).poly == AbcPoly::B() * AbcPoly::C());
}

TEST_CASE("left-invariant derivations", "[orbit]") {
  REQUIRE(leftinv(Gen::X, FreePoly::Ubar()) == FreePoly::V());
  REQUIRE(leftinv(Gen::X, FreePoly::Vbar()) == -FreePoly::U());
  REQUIRE(leftinv(Gen::Y, FreePoly::U()) == -FreePoly::Vbar());
  REQUIRE(leftinv(Gen::Y, FreePoly::V()) == FreePoly::Ubar());
  // Y~(Ubar V) = Ubar^2
  REQUIRE(leftinv(Gen::Y, mono(0, 1, 1, 0)) == mono(0, 2, 0, 0));
  // X~(U V) = 0
  REQUIRE(leftinv(Gen::X, mono(1, 0, 1, 0)).is_zero());
}

TEST_CASE("right invariance grading", "[orbit]") {
  REQUIRE(is_right_invariant(mono(1, 1, 0, 0)));
  REQUIRE_FALSE(is_right_invariant(mono(1, 0, 0, 0)));
  REQUIRE(is_right_invariant(embed_free(AbcPoly::A())));
}

TEST_CASE("conversion to the invariant generators", "[orbit]") {
  // U Ubar -> (1 + A)/2
  InvariantPoly half_plus{AbcPoly::one().scaled(Scalar(Rat(1, 2))) +
                          AbcPoly::A().scaled(Scalar(Rat(1, 2)))};
  REQUIRE(to_ABC(reduce_sphere(mono(1, 1, 0, 0)), 4) == half_plus);
  // Ubar V -> B
  REQUIRE(to_ABC(reduce_sphere(mono(0, 1, 1, 0)), 4) == InvariantPoly{AbcPoly::B()});
  // (V Vbar)^2 -> (1 - A)/2 - BC
  InvariantPoly expect{AbcPoly::one().scaled(Scalar(Rat(1, 2))) -
                       AbcPoly::A().scaled(Scalar(Rat(1, 2))) -
                       AbcPoly::B() * AbcPoly::C()};
  REQUIRE(to_ABC(reduce_sphere(mono(2, 0, 0, 0) * mono(0, 2, 0, 0)), 4) ==
          to_ABC(reduce_sphere(mono(2, 2, 0, 0)), 4));
  REQUIRE(to_ABC(reduce_sphere(mono(0, 0, 2, 2)), 4) == expect);
  // Non-invariant input is rejected.
  REQUIRE_THROWS_AS(to_ABC(reduce_sphere(mono(1, 0, 0, 0)), 4), MathError);
  // Bound too small raises the bound error.
  InvariantPoly big{(AbcPoly::B() * AbcPoly::C()).scaled(Scalar(1))};
  REQUIRE_THROWS_AS(to_ABC(embed(big), 2), MathError);
}

TEST_CASE("quotient bijection maps", "[orbit]") {
  // f(A) = U Ubar - V Vbar
  REQUIRE(quot_map_f(AbcPoly::A()) == mono(1, 1, 0, 0) - mono(0, 0, 1, 1));
  // g(U Ubar) = (1 + A)/2, g(U Vbar) = C
  AbcPoly half_plus = AbcPoly::one().scaled(Scalar(Rat(1, 2))) +
                      AbcPoly::A().scaled(Scalar(Rat(1, 2)));
  REQUIRE(quot_map_g(mono(1, 1, 0, 0)) == half_plus);
  REQUIRE(quot_map_g(mono(1, 0, 0, 1)) == AbcPoly::C());
  REQUIRE_THROWS_AS(quot_map_g(mono(1, 0, 0, 0)), MathError);
  // g is a section of f on the quotient: reduce(g(f(m))) = reduce(m).
  Rng rng(17);
  for (int t = 0; t < 25; ++t) {
    AbcPoly m = AbcPoly::monomial(
        MonoAbc{static_cast<unsigned>(rng.small_int(0, 3)),
                static_cast<unsigned>(rng.small_int(0, 2)),
                static_cast<unsigned>(rng.small_int(0, 2))});
    REQUIRE(reduce_invariant(quot_map_g(reduce_sphere(quot_map_f(m)).poly)) ==
            reduce_invariant(m));
  }
  // The g-route conversion agrees with the linear-solve route.
  for (int t = 0; t < 15; ++t) {
    InvariantPoly p = rng.invariant_poly(3, 3);
    SpherePoly s = embed(p);
    REQUIRE(reduce_invariant(quot_map_g(s.poly)) == to_ABC(s, 2 * p.degree() + 2));
  }
}

TEST_CASE("group action on functions", "[orbit]") {
  Rng rng(29);
  FreePoly p = rng.free_poly(3, 3);
  REQUIRE(group_action(GroupElement::identity(), p) == p);
  GroupElement k(GaussRat(0), GaussRat(1));
  REQUIRE(group_action(k, FreePoly::U()) == FreePoly::V());
  REQUIRE(group_action(k, FreePoly::V()) == -FreePoly::U());
  // Action on the embedded A gives -A.
  REQUIRE(reduce_sphere(group_action(k, embed_free(AbcPoly::A()))).poly ==
          reduce_sphere(-embed_free(AbcPoly::A())).poly);
  // Automorphism property and invariance preservation.
  for (int t = 0; t < 15; ++t) {
    GroupElement g = rng.group_element();
    FreePoly a = rng.free_poly(3, 2), b = rng.free_poly(3, 2);
    REQUIRE(group_action(g, a * b) == group_action(g, a) * group_action(g, b));
    FreePoly inv = FreePoly::monomial(rng.invariant_mono4(4));
    REQUIRE(is_right_invariant(group_action(g, inv)));
  }
}

TEST_CASE("evaluation at group points", "[orbit]") {
  InvariantPoly A{AbcPoly::A()};
  REQUIRE(evaluate(A, GroupElement(GaussRat(1), GaussRat(0))) == GaussRat(1));
  REQUIRE(evaluate(A, GroupElement(GaussRat(Rat(3, 5)), GaussRat(Rat(4, 5)))) ==
          GaussRat(Rat(-7, 25)));
  // The defining relation vanishes everywhere.
  FreePoly rel = mono(1, 1, 0, 0) + mono(0, 0, 1, 1) - FreePoly::one();
  Rng rng(41);
  for (int t = 0; t < 10; ++t)
    REQUIRE(evaluate(rel, rng.group_element()) == GaussRat(0));
  // Both quotient relations are respected by evaluation.
  for (int t = 0; t < 10; ++t) {
    GroupElement k = rng.group_element();
    FreePoly p = rng.free_poly(3, 2);
    REQUIRE(evaluate(p, k) == evaluate(reduce_sphere(p).poly, k));
  }
}

TEST_CASE("linear functions of the orbit", "[orbit]") {
  OrbitParams params;
  auto fs = linear_functions(params);
  Scalar il = Scalar::i() * Scalar(Rat(8));
  REQUIRE(fs[0].poly == AbcPoly::A().scaled(il));
  REQUIRE(fs[1].poly == AbcPoly::B().scaled(il));
  REQUIRE(fs[2].poly == AbcPoly::C().scaled(il));
}

TEST_CASE("sample points satisfy the group constraint", "[orbit]") {
  auto pts = sample_group_elements(20);
  REQUIRE(pts.size() == 20);
  for (auto &k : pts)
    REQUIRE(k.u.norm() + k.v.norm() == Rat(1));
  auto nonzero_u = sample_group_elements(10, true);
  for (auto &k : nonzero_u)
    REQUIRE_FALSE(k.u.is_zero());
}
