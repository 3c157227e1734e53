#include <catch2/catch_amalgamated.hpp>

#include "s2star/rng.hpp"
#include "s2star/star.hpp"

using namespace s2star;

namespace {

const OrbitParams params{};
const StarConfig cfg{params};
const InvariantPoly A{AbcPoly::A()};
const InvariantPoly B{AbcPoly::B()};
const InvariantPoly C{AbcPoly::C()};
const InvariantPoly one{AbcPoly::one()};

Scalar h_over_lambda() { return Scalar::h() / Scalar(Rat(8)); }

} // namespace

TEST_CASE("generator products", "[star]") {
  // A * A = 1 - 4(1 - h/lambda) BC
  AbcPoly expect = AbcPoly::one() +
                   (AbcPoly::B() * AbcPoly::C())
                       .scaled(Scalar(-4) + Scalar(4) * h_over_lambda());
  REQUIRE(star(A, A, cfg).poly == expect);
  // B * C = BC + (h/lambda)((1+A)/2 - BC)
  AbcPoly expect_bc =
      AbcPoly::B() * AbcPoly::C() +
      (AbcPoly::one().scaled(Scalar(Rat(1, 2))) + AbcPoly::A().scaled(Scalar(Rat(1, 2))) -
       AbcPoly::B() * AbcPoly::C())
          .scaled(h_over_lambda());
  REQUIRE(star(B, C, cfg).poly == expect_bc);
  REQUIRE(star(one, B, cfg) == B);
  REQUIRE(star(B, one, cfg) == B);
}

TEST_CASE("commutators", "[star]") {
  REQUIRE(commutator(A, B, cfg).poly == AbcPoly::B().scaled(Scalar(2) * h_over_lambda()));
  REQUIRE(commutator(B, C, cfg).poly == AbcPoly::A().scaled(h_over_lambda()));
  REQUIRE(commutator(A, C, cfg).poly == AbcPoly::C().scaled(Scalar(-2) * h_over_lambda()));
  REQUIRE(commutator(B, B, cfg).is_zero());
}

TEST_CASE("numeric mode and pole guard", "[star]") {
  StarConfig at_third(params, GaussRat(Rat(1, 3)));
  InvariantPoly prod = star(A, A, at_third);
  // coefficient -4(1 - (1/3)/8) = -23/6
  AbcPoly expect = AbcPoly::one() +
                   (AbcPoly::B() * AbcPoly::C())
                       .scaled(Scalar(GaussRat(Rat(-23, 6))));
  REQUIRE(prod.poly == expect);
  // B^2 against C^2 uses c_2, whose pole sits at lambda.
  InvariantPoly B2{AbcPoly::B() * AbcPoly::B()}, C2{AbcPoly::C() * AbcPoly::C()};
  StarConfig at_lambda(params, GaussRat(Rat(8)));
  REQUIRE_THROWS_AS(star(B2, C2, at_lambda), MathError);
  // The same point is harmless when the truncation never reaches c_2.
  REQUIRE_NOTHROW(star(A, A, at_lambda));
  // h = 0 is admissible and gives the commutative product.
  StarConfig at_zero(params, GaussRat(0));
  REQUIRE(star(B2, C2, at_zero) == reduce_invariant(B2.poly * C2.poly));
}

TEST_CASE("formal expansion", "[star]") {
  FormalProduct f = formal_expand(A, A, 2, params);
  REQUIRE(f.orders[0].poly ==
          AbcPoly::one() - (AbcPoly::B() * AbcPoly::C()).scaled(Scalar(4)));
  REQUIRE(f.orders[1].poly ==
          (AbcPoly::B() * AbcPoly::C()).scaled(Scalar(Rat(1, 2))));
  REQUIRE(f.orders[2].is_zero());
  // C_1(B, C) - C_1(C, B) = (1/lambda) A
  FormalProduct bc = formal_expand(B, C, 1, params);
  FormalProduct cb = formal_expand(C, B, 1, params);
  REQUIRE(bc.orders[1].poly - cb.orders[1].poly ==
          AbcPoly::A().scaled(Scalar(Rat(1, 8))));
}

TEST_CASE("poisson bracket values", "[star]") {
  // {A, B} = -(2i/lambda) B
  REQUIRE(poisson(A, B, params).poly ==
          AbcPoly::B().scaled(Scalar(GaussRat(Rat(0), Rat(-1, 4)))));
  REQUIRE(poisson(B, B, params).is_zero());
  // Leibniz: {A, BC} = {A,B} C + B {A,C}
  InvariantPoly BC = reduce_invariant(B.poly * C.poly);
  InvariantPoly lhs = poisson(A, BC, params);
  InvariantPoly rhs{reduce_invariant(poisson(A, B, params).poly * C.poly).poly +
                    reduce_invariant(B.poly * poisson(A, C, params).poly).poly};
  REQUIRE(lhs == rhs);
}

TEST_CASE("pole sets of products", "[star]") {
  REQUIRE(product_poles(A, A, params).roots.empty());
  InvariantPoly B2{AbcPoly::B() * AbcPoly::B()}, C2{AbcPoly::C() * AbcPoly::C()};
  auto ps = product_poles(B2, C2, params);
  REQUIRE(ps.contains_root(Rat(8)));
  REQUIRE(ps.factors.empty());
  REQUIRE(product_poles(one, B2, params).roots.empty());
}

TEST_CASE("hermitian property at numeric points", "[star]") {
  REQUIRE(hermitian_check(A, B, GaussRat(Rat(1, 3)), params));
  REQUIRE(hermitian_check(B, C, GaussRat(Rat(0), Rat(1, 5)), params));
  REQUIRE(hermitian_check(one, one, GaussRat(Rat(2, 7)), params));
}

TEST_CASE("associativity on random monomials", "[star]") {
  Rng rng(71);
  for (int t = 0; t < 20; ++t) {
    InvariantPoly p{AbcPoly::monomial(rng.mono_abc(3))};
    InvariantPoly q{AbcPoly::monomial(rng.mono_abc(3))};
    InvariantPoly r{AbcPoly::monomial(rng.mono_abc(3))};
    REQUIRE(star(star(p, q, cfg), r, cfg) == star(p, star(q, r, cfg), cfg));
  }
}

TEST_CASE("truncation is exact", "[star]") {
  // Adding terms beyond min(deg p, deg q) never changes the product: compare
  // against a one-order-deeper application by hand.
  Rng rng(73);
  for (int t = 0; t < 10; ++t) {
    InvariantPoly p{AbcPoly::monomial(rng.mono_abc(2))};
    InvariantPoly q{AbcPoly::monomial(rng.mono_abc(2))};
    SpherePoly ph = embed(p), qh = embed(q);
    unsigned order = std::min(ph.degree(), qh.degree());
    FreePoly yp = ph.poly, xq = qh.poly;
    for (unsigned n = 0; n < order + 1; ++n) {
      yp = leftinv(Gen::Y, yp);
      xq = leftinv(Gen::X, xq);
    }
    REQUIRE((yp.is_zero() || xq.is_zero()));
  }
}
