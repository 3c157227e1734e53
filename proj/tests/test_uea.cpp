#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <vector>

#include "s2star/expr.hpp"
#include "s2star/pbw.hpp"
#include "s2star/rng.hpp"
#include "s2star/sfunction.hpp"

using namespace s2star;

namespace {

EnvElement Hgen() { return EnvElement::gen(Gen::H); }
EnvElement Xgen() { return EnvElement::gen(Gen::X); }
EnvElement Ygen() { return EnvElement::gen(Gen::Y); }

/// Free-algebra oracle: represents elements as integer combinations of words
/// over {Y, H, X} and normal-orders by exhaustive single-swap rewriting with
/// the bracket relations. Independent of the production mono_product path.
struct WordOracle {
  using Word = std::vector<char>; // entries 'Y', 'H', 'X'
  std::map<Word, Rat> terms;

  static WordOracle from_mono(const Mono3 &m, Rat coeff = Rat(1)) {
    Word w;
    for (unsigned i = 0; i < m.a; ++i)
      w.push_back('Y');
    for (unsigned i = 0; i < m.b; ++i)
      w.push_back('H');
    for (unsigned i = 0; i < m.c; ++i)
      w.push_back('X');
    WordOracle o;
    o.terms[w] = coeff;
    return o;
  }

  void add(const Word &w, const Rat &c) {
    auto it = terms.find(w);
    if (it == terms.end())
      terms.emplace(w, c);
    else {
      it->second += c;
      if (it->second == 0)
        terms.erase(it);
    }
  }

  static int rank(char g) { return g == 'Y' ? 0 : (g == 'H' ? 1 : 2); }

  /// One pass: find the first out-of-order adjacent pair and swap it using
  /// a b = b a + [a, b].
  bool step() {
    for (auto &[w, c] : terms) {
      for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        if (rank(w[i]) <= rank(w[i + 1]))
          continue;
        Word swapped = w;
        std::swap(swapped[i], swapped[i + 1]);
        // Bracket [w[i], w[i+1]] as a linear combination of single letters.
        std::vector<std::pair<char, long>> bracket;
        char a = w[i], b = w[i + 1];
        if (a == 'H' && b == 'Y')
          bracket = {{'Y', -2}};
        else if (a == 'X' && b == 'Y')
          bracket = {{'H', 1}};
        else if (a == 'X' && b == 'H')
          bracket = {{'X', -2}};
        Word shorter(w.begin(), w.begin() + static_cast<long>(i));
        Word tail(w.begin() + static_cast<long>(i) + 2, w.end());
        Rat coeff = c;
        // Remove the offending term, add the rewritten ones.
        terms.erase(w);
        add(swapped, coeff);
        for (auto &[g, f] : bracket) {
          Word mid = shorter;
          mid.push_back(g);
          mid.insert(mid.end(), tail.begin(), tail.end());
          add(mid, coeff * Rat(f));
        }
        return true;
      }
    }
    return false;
  }

  EnvElement normalize() {
    while (step()) {
    }
    EnvElement out;
    for (auto &[w, c] : terms) {
      Mono3 m{};
      for (char g : w) {
        if (g == 'Y')
          ++m.a;
        else if (g == 'H')
          ++m.b;
        else
          ++m.c;
      }
      out.add_term(m, Scalar(Rat(c)));
    }
    return out;
  }

  static WordOracle concat(const Mono3 &l, const Mono3 &r) {
    Word w;
    auto push = [&w](const Mono3 &m) {
      for (unsigned i = 0; i < m.a; ++i)
        w.push_back('Y');
      for (unsigned i = 0; i < m.b; ++i)
        w.push_back('H');
      for (unsigned i = 0; i < m.c; ++i)
        w.push_back('X');
    };
    push(l);
    push(r);
    WordOracle o;
    o.terms[w] = 1;
    return o;
  }
};

} // namespace

TEST_CASE("bracket table satisfies antisymmetry and Jacobi", "[uea]") {
  auto as_env = [](Gen g) { return EnvElement::gen(g); };
  auto bracket = [&](Gen a, Gen b) {
    auto c = bracket_coeffs(a, b);
    EnvElement e;
    e += as_env(Gen::H).scaled(Scalar(Rat(c[0])));
    e += as_env(Gen::X).scaled(Scalar(Rat(c[1])));
    e += as_env(Gen::Y).scaled(Scalar(Rat(c[2])));
    return e;
  };
  for (Gen a : {Gen::H, Gen::X, Gen::Y})
    for (Gen b : {Gen::H, Gen::X, Gen::Y}) {
      REQUIRE(bracket(a, b) == -bracket(b, a));
      REQUIRE(bracket(a, b) == pbw_mul(as_env(a), as_env(b)) - pbw_mul(as_env(b), as_env(a)));
    }
  // Jacobi: [a,[b,c]] + [b,[c,a]] + [c,[a,b]] = 0 via the associative algebra.
  auto comm = [](const EnvElement &x, const EnvElement &y) {
    return pbw_mul(x, y) - pbw_mul(y, x);
  };
  for (Gen a : {Gen::H, Gen::X, Gen::Y})
    for (Gen b : {Gen::H, Gen::X, Gen::Y})
      for (Gen c : {Gen::H, Gen::X, Gen::Y}) {
        EnvElement total = comm(as_env(a), comm(as_env(b), as_env(c))) +
                           comm(as_env(b), comm(as_env(c), as_env(a))) +
                           comm(as_env(c), comm(as_env(a), as_env(b)));
        REQUIRE(total.is_zero());
      }
}

TEST_CASE("pbw products of generators", "[uea]") {
  // X Y = YX + H
  EnvElement xy = pbw_mul(Xgen(), Ygen());
  EnvElement expect;
  expect.add_term(Mono3{1, 0, 1}, Scalar(1));
  expect.add_term(Mono3{0, 1, 0}, Scalar(1));
  REQUIRE(xy == expect);
  // X H = HX - 2X
  EnvElement xh = pbw_mul(Xgen(), Hgen());
  EnvElement expect2;
  expect2.add_term(Mono3{0, 1, 1}, Scalar(1));
  expect2.add_term(Mono3{0, 0, 1}, Scalar(-2));
  REQUIRE(xh == expect2);
  // X Y^2 = Y^2 X + 2 Y H - 2 Y
  EnvElement xy2 = pbw_mul(Xgen(), pbw_mul(Ygen(), Ygen()));
  EnvElement expect3;
  expect3.add_term(Mono3{2, 0, 1}, Scalar(1));
  expect3.add_term(Mono3{1, 1, 0}, Scalar(2));
  expect3.add_term(Mono3{1, 0, 0}, Scalar(-2));
  REQUIRE(xy2 == expect3);
}

TEST_CASE("pbw products agree with the word-rewriting oracle", "[uea]") {
  Rng rng(23);
  for (int t = 0; t < 60; ++t) {
    Mono3 l{static_cast<unsigned>(rng.small_int(0, 3)),
            static_cast<unsigned>(rng.small_int(0, 2)),
            static_cast<unsigned>(rng.small_int(0, 3))};
    Mono3 r{static_cast<unsigned>(rng.small_int(0, 3)),
            static_cast<unsigned>(rng.small_int(0, 2)),
            static_cast<unsigned>(rng.small_int(0, 3))};
    EnvElement expect = WordOracle::concat(l, r).normalize();
    EnvElement got = pbw_mul(EnvElement::monomial(l), EnvElement::monomial(r));
    REQUIRE(got == expect);
  }
}

TEST_CASE("antipode", "[uea]") {
  REQUIRE(antipode(Xgen()) == -Xgen());
  // S(XY) = YX = XY - H, normal form {(1,0,1): 1}
  EnvElement sxy = antipode(pbw_mul(Xgen(), Ygen()));
  REQUIRE(sxy == EnvElement::monomial(Mono3{1, 0, 1}));
  Rng rng(31);
  for (int t = 0; t < 50; ++t) {
    EnvElement a = rng.env(4, 3);
    REQUIRE(antipode(antipode(a)) == a);
  }
  // Anti-homomorphism on random pairs.
  for (int t = 0; t < 20; ++t) {
    EnvElement a = rng.env(3, 2), b = rng.env(3, 2);
    REQUIRE(antipode(pbw_mul(a, b)) == pbw_mul(antipode(b), antipode(a)));
  }
}

TEST_CASE("projection to the Cartan part", "[uea]") {
  EnvElement x2y2 = pbw_mul(EnvElement::monomial(Mono3{0, 0, 2}),
                            EnvElement::monomial(Mono3{2, 0, 0}));
  EnvElement expect;
  expect.add_term(Mono3{0, 2, 0}, Scalar(2));
  expect.add_term(Mono3{0, 1, 0}, Scalar(-2));
  REQUIRE(project0(x2y2) == expect);
  REQUIRE(project0(Ygen()).is_zero());
  REQUIRE(project0(EnvElement::monomial(Mono3{0, 3, 0})) ==
          EnvElement::monomial(Mono3{0, 3, 0}));
}

TEST_CASE("character of U(h)", "[uea]") {
  Scalar s = OrbitParams().lambda_over_h();
  REQUIRE(character(EnvElement::monomial(Mono3{0, 2, 0}), s) == s * s);
  // chi(2H(H-1)) = 2 s (s - 1)
  EnvElement hh1 = pbw_mul(Hgen(), Hgen() - EnvElement::one()).scaled(Scalar(2));
  REQUIRE(character(hh1, s) == Scalar(2) * s * (s - Scalar::one()));
  REQUIRE(character(EnvElement::one(), s) == Scalar::one());
  REQUIRE_THROWS_AS(character(Xgen(), s), MathError);
}

TEST_CASE("pairing values and preconditions", "[uea]") {
  OrbitParams params;
  Scalar z = params.lambda_over_h();
  REQUIRE(pairing(Ygen(), Xgen(), params) == -z);
  REQUIRE(pairing(pbw_mul(Ygen(), Ygen()), Xgen(), params).is_zero());
  REQUIRE(pairing(pbw_mul(Ygen(), Ygen()), pbw_mul(Xgen(), Xgen()), params) ==
          Scalar(2) * z * (z - Scalar::one()));
  REQUIRE_THROWS_AS(pairing(Hgen(), Xgen(), params), MathError);
  REQUIRE_THROWS_AS(pairing(Ygen(), Hgen(), params), MathError);
}

TEST_CASE("dual basis blocks", "[uea]") {
  OrbitParams params;
  Scalar z = params.lambda_over_h();
  auto b0 = dual_basis_block(0, params);
  REQUIRE(b0.gram[0][0] == Scalar::one());
  auto b1 = dual_basis_block(1, params);
  REQUIRE(b1.gram[0][0] == -z);
  REQUIRE(b1.inverse[0][0] == -(Scalar::one() / z));
  auto b3 = dual_basis_block(3, params);
  REQUIRE(b3.gram[0][0] ==
          Scalar(-6) * z * (z - Scalar::one()) * (z - Scalar(2)));
}

TEST_CASE("twist coefficients", "[uea]") {
  OrbitParams params;
  TwistElement t = twist(4, params);
  REQUIRE(t.c(0) == Scalar::one());
  REQUIRE(t.c(1) == -(Scalar::h() / Scalar(Rat(8))));
  // c_2 = h^2 / (2*8*(8-h))
  Scalar c2(QPoly::var() * QPoly::var(),
            QPoly(GaussRat(16)) * (QPoly(GaussRat(8)) - QPoly::var()));
  REQUIRE(t.c(2) == c2);
  for (unsigned n = 0; n <= 4; ++n)
    REQUIRE(t.c(n) == twist_coefficient_closed_form(n, params));
}

TEST_CASE("adjoint action of group elements", "[uea]") {
  Rng rng(47);
  EnvElement a = rng.env(3, 3);
  REQUIRE(ad_group(GroupElement::identity(), a) == a);
  // k = (u=0, v=1): Ad_k X = -Y
  GroupElement k(GaussRat(0), GaussRat(1));
  REQUIRE(ad_group(k, Xgen()) == -Ygen());
  for (int t = 0; t < 10; ++t) {
    GroupElement g = rng.group_element();
    REQUIRE(ad_group(g, pbw_mul(Xgen(), Ygen())) ==
            pbw_mul(ad_group(g, Xgen()), ad_group(g, Ygen())));
  }
}

TEST_CASE("flow exponentials", "[uea]") {
  // exp(t ad_X) H = H - 2tX
  auto flow_h = ad_exp_poly(Gen::X, Hgen());
  REQUIRE(flow_h.size() == 2);
  REQUIRE(flow_h[0] == Hgen());
  REQUIRE(flow_h[1] == Xgen().scaled(Scalar(-2)));
  // exp(t ad_X) Y = Y + tH - t^2 X
  auto flow_y = ad_exp_poly(Gen::X, Ygen());
  REQUIRE(flow_y.size() == 3);
  REQUIRE(flow_y[0] == Ygen());
  REQUIRE(flow_y[1] == Hgen());
  REQUIRE(flow_y[2] == -Xgen());
  // t = 0 gives back the argument by construction (order-zero coefficient).
  Rng rng(3);
  EnvElement a = rng.env(3, 2);
  REQUIRE(ad_exp_poly(Gen::Y, a)[0] == a);
  REQUIRE_THROWS_AS(ad_exp_poly(Gen::H, a), MathError);
}

TEST_CASE("s-function at points", "[uea]") {
  OrbitParams params;
  Scalar z = params.lambda_over_h();
  REQUIRE(s_function(Hgen(), GroupElement::identity(), z) == z);
  REQUIRE(s_function(Xgen(), GroupElement::identity(), z).is_zero());
  GroupElement k(GaussRat(0), GaussRat(1));
  REQUIRE(s_function(Hgen(), k, z) == -z);
}

TEST_CASE("symbolic s-function", "[uea]") {
  OrbitParams params;
  Scalar z = params.lambda_over_h();
  // s(H) = z * (U Ubar - V Vbar), in sphere normal form z * (1 - 2 V Vbar)
  SpherePoly sh = s_function_symbolic(Hgen(), z);
  FreePoly expect = FreePoly::monomial(Mono4{1, 1, 0, 0}).scaled(z) -
                    FreePoly::monomial(Mono4{0, 0, 1, 1}).scaled(z);
  REQUIRE(sh == reduce_sphere(expect));
  REQUIRE(to_ABC(sh, 4).poly == AbcPoly::A().scaled(z));
  REQUIRE(s_function_symbolic(EnvElement::one(), z).poly == FreePoly::one());
  // Pointwise consistency on rational points.
  Rng rng(7);
  for (int t = 0; t < 20; ++t) {
    EnvElement a = rng.env(3, 2);
    SpherePoly sym = s_function_symbolic(a, z);
    GroupElement k = rng.group_element();
    GaussRat h(Rat(1, 3));
    REQUIRE(evaluate(sym.poly, k, h) == s_function(a, k, z).eval(h));
  }
}

TEST_CASE("enveloping element text round trip", "[uea]") {
  Rng rng(13);
  for (int t = 0; t < 25; ++t) {
    EnvElement a = rng.env(4, 3);
    REQUIRE(parse_env(to_string(a)) == a);
  }
  REQUIRE(parse_env("X*Y") == pbw_mul(EnvElement::gen(Gen::X), EnvElement::gen(Gen::Y)));
}
