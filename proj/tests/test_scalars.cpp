#include <catch2/catch_amalgamated.hpp>

#include "s2star/rng.hpp"
#include "s2star/scalar.hpp"

using namespace s2star;

namespace {

Scalar make(const QPoly &num, const QPoly &den) { return Scalar(num, den); }
QPoly h_poly() { return QPoly::var(); }

} // namespace

TEST_CASE("gaussian rational arithmetic is exact", "[scalars]") {
  GaussRat a(Rat(1, 2), Rat(3, 4));
  GaussRat b(Rat(-2, 3), Rat(1, 5));
  REQUIRE((a + b) - b == a);
  REQUIRE((a * b) / b == a);
  REQUIRE(a * a.conj() == GaussRat(a.norm()));
  REQUIRE_THROWS_AS(a / GaussRat(0), MathError);
  REQUIRE(GaussRat::i() * GaussRat::i() == GaussRat(-1));
}

TEST_CASE("normalization cancels common factors", "[scalars]") {
  // (h^2 - h)/h -> h - 1
  QPoly num = h_poly() * h_poly() - h_poly();
  Scalar s = make(num, h_poly());
  REQUIRE(s == Scalar(h_poly() - QPoly::one()));
  // (2h)/4 -> numerator h/2, denominator 1 (monic convention)
  Scalar t = make(h_poly().scaled(GaussRat(2)), QPoly(GaussRat(4)));
  REQUIRE(t.den() == QPoly::one());
  REQUIRE(t.num() == h_poly().scaled(GaussRat(Rat(1, 2))));
  // (-h/8)^2 = h^2/64
  Scalar c1 = make(-h_poly(), QPoly(GaussRat(8)));
  REQUIRE(c1 * c1 == make(h_poly() * h_poly(), QPoly(GaussRat(64))));
}

TEST_CASE("field axioms on random values", "[scalars]") {
  Rng rng(11);
  for (int t = 0; t < 40; ++t) {
    Scalar a = rng.scalar(), b = rng.scalar(), c = rng.scalar();
    REQUIRE((a + b) * c == a * c + b * c);
    REQUIRE(a - a == Scalar::zero());
    if (!b.is_zero())
      REQUIRE((a / b) * b == a);
  }
  REQUIRE_THROWS_AS(Scalar::one() / Scalar::zero(), MathError);
}

TEST_CASE("evaluation", "[scalars]") {
  Scalar c1 = make(-h_poly(), QPoly(GaussRat(8)));
  REQUIRE(c1.eval(GaussRat(8)) == GaussRat(-1));
  Scalar c2 = make(h_poly() * h_poly(),
                   QPoly(GaussRat(16)) * (QPoly(GaussRat(8)) - h_poly()));
  REQUIRE_THROWS_AS(c2.eval(GaussRat(8)), MathError);
  REQUIRE(Scalar::zero().eval(GaussRat(Rat(7, 3))) == GaussRat(0));
  try {
    c2.eval(GaussRat(8));
  } catch (const MathError &e) {
    REQUIRE(e.code() == MathError::Code::EvalAtPole);
  }
}

TEST_CASE("taylor expansion at zero", "[scalars]") {
  // 1/(8 - h) = 1/8 + h/64 + h^2/512 + ...
  Scalar s = make(QPoly::one(), QPoly(GaussRat(8)) - h_poly());
  auto t = s.taylor(3);
  REQUIRE(t[0] == GaussRat(Rat(1, 8)));
  REQUIRE(t[1] == GaussRat(Rat(1, 64)));
  REQUIRE(t[2] == GaussRat(Rat(1, 512)));
  // h^2/(16(8-h)) at order 3: [0, 0, 1/128, 1/1024]
  Scalar c2 = make(h_poly() * h_poly(),
                   QPoly(GaussRat(16)) * (QPoly(GaussRat(8)) - h_poly()));
  auto tc = c2.taylor(3);
  REQUIRE(tc[0] == GaussRat(0));
  REQUIRE(tc[1] == GaussRat(0));
  REQUIRE(tc[2] == GaussRat(Rat(1, 128)));
  REQUIRE(tc[3] == GaussRat(Rat(1, 1024)));
  // constants
  auto t5 = Scalar(5).taylor(2);
  REQUIRE(t5[0] == GaussRat(5));
  REQUIRE(t5[1] == GaussRat(0));
  // not regular at zero
  Scalar pole = make(QPoly::one(), h_poly());
  REQUIRE_THROWS_AS(pole.taylor(1), MathError);
}

TEST_CASE("pole extraction", "[scalars]") {
  // den 16(8-h): root 8
  Scalar c2 = make(h_poly() * h_poly(),
                   QPoly(GaussRat(16)) * (QPoly(GaussRat(8)) - h_poly()));
  auto rep = c2.poles();
  REQUIRE(rep.roots.size() == 1);
  REQUIRE(rep.roots[0].first == GaussRat(8));
  // den 8(8-h)(8-2h): roots 8, 4
  QPoly den = QPoly(GaussRat(8)) * (QPoly(GaussRat(8)) - h_poly()) *
              (QPoly(GaussRat(8)) - h_poly().scaled(GaussRat(2)));
  auto rep3 = make(QPoly::one(), den).poles();
  REQUIRE(rep3.root_set() == std::set<std::pair<Rat, Rat>>{{Rat(8), Rat(0)}, {Rat(4), Rat(0)}});
  // polynomial scalar: no poles
  REQUIRE(Scalar(h_poly()).poles().empty());
  // gaussian roots of a quadratic: h^2 + 64 = (h - 8i)(h + 8i)
  auto repg = make(QPoly::one(), h_poly() * h_poly() + QPoly(GaussRat(64))).poles();
  REQUIRE(repg.roots.size() == 2);
  REQUIRE(repg.root_set() ==
          std::set<std::pair<Rat, Rat>>{{Rat(0), Rat(8)}, {Rat(0), Rat(-8)}});
}

TEST_CASE("poles with multiplicity and leftover factors", "[scalars]") {
  // (h-1)^2 (h^3 + h + 7): the cubic has no rational root
  QPoly lin = h_poly() - QPoly::one();
  QPoly cubic = h_poly() * h_poly() * h_poly() + h_poly() + QPoly(GaussRat(7));
  auto rep = make(QPoly::one(), lin * lin * cubic).poles();
  REQUIRE(rep.roots.size() == 1);
  REQUIRE(rep.roots[0].second == 2);
  REQUIRE(rep.factors.size() == 1);
  REQUIRE(rep.factors[0].degree() == 3);
}

TEST_CASE("conjugation of coefficients", "[scalars]") {
  Rng rng(5);
  for (int t = 0; t < 20; ++t) {
    Scalar a = rng.scalar();
    REQUIRE(a.conj_coeffs().conj_coeffs() == a);
    GaussRat x = rng.gauss(3, 2);
    try {
      REQUIRE(a.conj_coeffs().eval(x.conj()) == a.eval(x).conj());
    } catch (const MathError &) {
    }
  }
}
