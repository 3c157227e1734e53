#include <catch2/catch_amalgamated.hpp>

#include "s2star/rng.hpp"
#include "s2star/topology.hpp"

using namespace s2star;

namespace {
const OrbitParams params{};
}

TEST_CASE("seminorm values", "[topology]") {
  // Monomial U Ubar with R = 1, C = 2: 2! * 2^2 = 8 exactly.
  SeminormParams sp(Rat(1), Rat(2));
  QInterval v = seminorm(FreePoly::monomial(Mono4{1, 1, 0, 0}), sp);
  REQUIRE(v.lo == Rat(8));
  REQUIRE(v.hi == Rat(8));
  // (1+i) A with R = 0, C = 1 encloses sqrt(2).
  SeminormParams sp0(Rat(0), Rat(1), SeminormBasis::ThreeGenABC);
  QInterval w = seminorm(AbcPoly::A().scaled(Scalar(GaussRat(Rat(1), Rat(1)))), sp0);
  REQUIRE(w.lo * w.lo <= Rat(2));
  REQUIRE(w.hi * w.hi >= Rat(2));
  REQUIRE(w.hi - w.lo < Rat(1, 1000000));
  // Zero polynomial.
  REQUIRE(seminorm(FreePoly::zero(), sp).hi == Rat(0));
  // h-dependent coefficients are rejected.
  REQUIRE_THROWS_AS(seminorm(FreePoly::one().scaled(Scalar::h()), sp), MathError);
}

TEST_CASE("fractional R goes through certified enclosures", "[topology]") {
  SeminormParams sp(Rat(1, 2), Rat(1));
  QInterval v = seminorm(FreePoly::monomial(Mono4{2, 1, 0, 0}), sp);
  // (3!)^(1/2) = sqrt(6)
  REQUIRE(v.lo * v.lo <= Rat(6));
  REQUIRE(v.hi * v.hi >= Rat(6));
}

TEST_CASE("lift star", "[topology]") {
  StarConfig cfg(params);
  // lift(U, Ubar) = U Ubar + (h/8) V Vbar
  FreePoly lift = lift_star(FreePoly::U(), FreePoly::Ubar(), cfg);
  REQUIRE(lift == FreePoly::monomial(Mono4{1, 1, 0, 0}) +
                      FreePoly::monomial(Mono4{0, 0, 1, 1}, Scalar::h() / Scalar(Rat(8))));
  // lift(1, q) = q
  Rng rng(201);
  FreePoly q = rng.free_poly(3, 3);
  REQUIRE(lift_star(FreePoly::one(), q, cfg) == q);
  // Descent: reduce(lift(p, q)) = embed(star(p', q')).
  for (int t = 0; t < 20; ++t) {
    InvariantPoly p = rng.invariant_poly(2, 2), r = rng.invariant_poly(2, 2);
    FreePoly lifted = lift_star(embed(p).poly, embed(r).poly, cfg);
    REQUIRE(reduce_sphere(lifted) == embed(star(p, r, cfg)));
  }
}

TEST_CASE("disc constants", "[topology]") {
  // z0 = 1/2, r = 1/4, delta = 1: the bound |z| >= 1/4 gives C_- = 1/4.
  auto d1 = disc_constants(GaussRat(Rat(1, 2)), Rat(1, 4), 1);
  REQUIRE(d1.c_minus.hi <= Rat(1, 4));
  REQUIRE(d1.c_minus.lo > Rat(0));
  // Far from the naturals: C_- >= 9 for z0 = -10, r = 1.
  auto far = disc_constants(GaussRat(Rat(-10)), Rat(1), 1);
  REQUIRE(far.c_minus.lo >= Rat(9));
  // Any valid disc: C_- <= C_+.
  auto d12 = disc_constants(GaussRat(Rat(1, 2)), Rat(1, 4), 12);
  REQUIRE(d12.c_minus.lo <= d12.c_plus.hi);
  // Interval bound really certifies the product bound for delta <= max.
  Rat cm = d12.c_minus_lb();
  // |z(z-1)| at z = 1/2 is 1/4 >= 2! cm^2.
  REQUIRE(Rat(1, 4) >= Rat(2) * cm * cm);
  // Discs touching the naturals are rejected.
  REQUIRE_THROWS_AS(disc_constants(GaussRat(Rat(1, 2)), Rat(1, 2), 2), MathError);
}

TEST_CASE("continuity verification", "[topology]") {
  auto disc = disc_constants(GaussRat(Rat(1, 2)), Rat(1, 4), 6);
  auto rep = continuity_report(6, SeminormParams(Rat(0), Rat(1)), disc);
  REQUIRE(rep.all_pass);
  // Every monomial pair with both degrees <= 6 is covered: (#monomials)^2
  // with C(10, 4) = 210 monomials of degree <= 6 in four generators.
  REQUIRE(rep.pairs_covered == 210ull * 210ull);
  REQUIRE(rep.worst.has_value());
  // R = 1 passes as well.
  auto rep1 = continuity_report(6, SeminormParams(Rat(1), Rat(1)), disc);
  REQUIRE(rep1.all_pass);
}

TEST_CASE("honest per-pair bound matches the class bound", "[topology]") {
  auto disc = disc_constants(GaussRat(Rat(1, 2)), Rat(1, 4), 5);
  SeminormParams sp(Rat(0), Rat(1));
  Rat cm = disc.c_minus_lb();
  auto rep = continuity_report(5, sp, disc);
  Rng rng(207);
  for (int t = 0; t < 40; ++t) {
    Mono4 m1 = rng.mono4(5), m2 = rng.mono4(5);
    QInterval honest =
        continuity_lhs_bound(FreePoly::monomial(m1), FreePoly::monomial(m2), sp, cm);
    bool found = false;
    for (auto &e : rep.entries) {
      if (e.d1 == m1.degree() && e.unbarred1 == m1.k_up() && e.d2 == m2.degree() &&
          e.barred2 == m2.k_down()) {
        REQUIRE(honest.hi == e.lhs_ub);
        found = true;
        break;
      }
    }
    REQUIRE(found);
  }
}

TEST_CASE("the paper's literal constant would fail", "[topology]") {
  // With C' = 2^(2+R) C C_- (no reciprocal) the right side shrinks below the
  // left for small C_-; the reciprocal is the workable constant.
  auto disc = disc_constants(GaussRat(Rat(1, 2)), Rat(1, 4), 4);
  Rat cm = disc.c_minus_lb();
  Rat c_prime_literal = Rat(4) * cm; // 2^{2+0} * 1 * C_-
  // LHS for the pair (U^4, Ubar^4) at n = 4 alone already exceeds RHS.
  Rat falling4 = Rat(4 * 3 * 2 * 1);
  Rat lhs_term = falling4 * falling4 / (Rat(24) * Rat(24) * cm * cm * cm * cm);
  Rat rhs(1);
  for (int k = 0; k < 8; ++k)
    rhs *= c_prime_literal;
  REQUIRE(lhs_term > rhs);
}

TEST_CASE("quotient equivalence estimates", "[topology]") {
  for (Rat C : {Rat(1), Rat(2)}) {
    for (Rat R : {Rat(0), Rat(1)}) {
      auto rep = quot_equivalence_report(5, C, R);
      REQUIRE(rep.all_pass);
      REQUIRE(rep.checked_f > 0);
      REQUIRE(rep.checked_g > 0);
    }
  }
  // Spot values: f(A) has seminorm 2 <= 2^(2R+1) C^2 at degree 1.
  SeminormParams sp(Rat(0), Rat(1));
  REQUIRE(seminorm(quot_map_f(AbcPoly::A()), sp).hi == Rat(2));
}

TEST_CASE("holomorphy probe", "[topology]") {
  auto pts = sample_group_elements(4, true);
  InvariantPoly A{AbcPoly::A()};
  auto probe = holomorphy_probe(A, A, pts[1], GaussRat(Rat(1, 2)), Rat(1, 4), 5, params);
  REQUIRE(probe.samples.size() == 5);
  REQUIRE(probe.all_match);
  // A pair that actually uses c_2 shows the pole at lambda.
  InvariantPoly B2{AbcPoly::B() * AbcPoly::B()}, C2{AbcPoly::C() * AbcPoly::C()};
  auto probe2 = holomorphy_probe(B2, C2, pts[0], GaussRat(Rat(1, 2)), Rat(1, 4), 5, params);
  REQUIRE(probe2.all_match);
  bool has_lambda_pole = false;
  for (auto &[root, mult] : probe2.value_poles.roots)
    if (root == GaussRat(8))
      has_lambda_pole = true;
  // The value at a generic point keeps the lambda pole of c_2 (unless the
  // evaluation point kills that coefficient, which these sample points do not).
  REQUIRE(has_lambda_pole);
}
