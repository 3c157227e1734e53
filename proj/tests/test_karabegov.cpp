#include <catch2/catch_amalgamated.hpp>

#include "s2star/karabegov.hpp"
#include "s2star/rng.hpp"

using namespace s2star;

namespace {

const OrbitParams params{};

KarabegovConfig config() {
  static KarabegovConfig cfg = make_karabegov_config(params);
  return cfg;
}

} // namespace

TEST_CASE("fundamental vector fields", "[karabegov]") {
  auto vh = fundamental_field(gen_matrix(Gen::H));
  REQUIRE(vh.P == ChartFunction(Poly2::z().scaled(Scalar(2)), 0));
  auto vx = fundamental_field(gen_matrix(Gen::X));
  REQUIRE(vx.P == ChartFunction(Poly2::z().pow(2), 0));
  auto vy = fundamental_field(gen_matrix(Gen::Y));
  REQUIRE(vy.P == ChartFunction(-Poly2::one(), 0));
  // Q is the conjugate rule applied to the same entries.
  REQUIRE(vx.Q == ChartFunction(Poly2::one(), 0));
  REQUIRE(vy.Q == ChartFunction(-Poly2::zbar().pow(2), 0));
  std::array<GaussRat, 4> not_tracefree{GaussRat(1), GaussRat(0), GaussRat(0), GaussRat(1)};
  REQUIRE_THROWS_AS(fundamental_field(not_tracefree), MathError);
}

TEST_CASE("chart functions reduce and evaluate", "[karabegov]") {
  // (1 + z zbar) / (1 + z zbar)^2 reduces to m = 1.
  Poly2 disc = Poly2::one() + Poly2::monomial(Mono2{1, 1});
  ChartFunction f(disc, 2);
  REQUIRE(f.m == 1);
  REQUIRE(f.num == Poly2::one());
  // A + B + C at z = 1: A = 0, B = C = 1/2.
  ChartFunction abc = chart_A() + chart_B() + chart_C();
  REQUIRE(abc.eval(GaussRat(1)) == Scalar(GaussRat(1)));
  // derivative quotient rule spot check: d/dz (z/(1+z zbar))
  ChartFunction b = chart_B();
  ChartFunction db = b.d_z();
  // at z = 1: (1*(2) - 1*1)/4 = 1/4
  REQUIRE(db.eval(GaussRat(1)) == Scalar(GaussRat(Rat(1, 4))));
}

TEST_CASE("orientation selection is unambiguous", "[karabegov]") {
  auto cfg = config();
  // The validated orientation takes zbar as the (1,0)-direction, matching a
  // complex structure opposite to the Kaehler one.
  REQUIRE(cfg.orientation == ChartOrientation::ZbarIsHolomorphic);
  // Validation identities at the base point.
  Scalar z = params.lambda_over_h();
  REQUIRE(Opl(EnvElement::gen(Gen::H), cfg.orientation, params).eval(GaussRat(0)) == z);
  REQUIRE(Opl(EnvElement::gen(Gen::Y), cfg.orientation, params).eval(GaussRat(0)).is_zero());
}

TEST_CASE("opl is a representation commuting with opr", "[karabegov]") {
  auto cfg = config();
  Rng rng(101);
  for (int t = 0; t < 5; ++t) {
    ChartFunction f = rng.chart_function();
    // [opl_H, opl_X] = 2 opl_X
    ChartFunction lhs = opl_gen(Gen::H, opl_gen(Gen::X, f, cfg.orientation, params),
                                cfg.orientation, params) -
                        opl_gen(Gen::X, opl_gen(Gen::H, f, cfg.orientation, params),
                                cfg.orientation, params);
    REQUIRE(lhs == opl_gen(Gen::X, f, cfg.orientation, params).scaled(Scalar(2)));
    for (Gen a : {Gen::H, Gen::X, Gen::Y})
      for (Gen b : {Gen::H, Gen::X, Gen::Y}) {
        ChartFunction lr = opl_gen(a, opr_gen(b, f, cfg.orientation, params),
                                   cfg.orientation, params);
        ChartFunction rl = opr_gen(b, opl_gen(a, f, cfg.orientation, params),
                                   cfg.orientation, params);
        REQUIRE(lr == rl);
      }
  }
}

TEST_CASE("L map values", "[karabegov]") {
  auto cfg = config();
  REQUIRE(L_map(EnvElement::one(), cfg).poly == AbcPoly::one());
  REQUIRE(L_map(EnvElement::gen(Gen::H), cfg).poly ==
          AbcPoly::A().scaled(params.lambda_over_h()));
  // L(Y^n) has zero constant term for n >= 1.
  for (unsigned n = 1; n <= 3; ++n) {
    InvariantPoly l = L_map(EnvElement::monomial(Mono3{n, 0, 0}), cfg);
    for (auto &[m, c] : l.poly.terms())
      REQUIRE(m.degree() >= 1);
  }
  // Chart cross-check: the chart form of L(u) is Opl(u).
  Rng rng(103);
  for (int t = 0; t < 8; ++t) {
    EnvElement u = rng.env(3, 2);
    REQUIRE(chart_of(L_map(u, cfg)) == Opl(u, cfg.orientation, params));
  }
}

TEST_CASE("preimages of the L map", "[karabegov]") {
  auto cfg = config();
  // 1 -> 1
  auto p1 = solve_preimage(InvariantPoly{AbcPoly::one()}, 2, cfg);
  REQUIRE(p1.element == EnvElement::one());
  // A -> (h/lambda) H
  auto pa = solve_preimage(InvariantPoly{AbcPoly::A()}, 2, cfg);
  REQUIRE(pa.element == EnvElement::gen(Gen::H).scaled(Scalar::h() / Scalar(Rat(8))));
  // BC -> something of filtration 2 with the right image.
  InvariantPoly bc{AbcPoly::B() * AbcPoly::C()};
  auto pbc = solve_preimage(bc, 4, cfg);
  REQUIRE(pbc.element.filtration() == 2);
  REQUIRE(L_map(pbc.element, cfg) == bc);
  // Degree bound failure is signalled.
  REQUIRE_THROWS_AS(solve_preimage(bc, 1, cfg), MathError);
}

TEST_CASE("karabegov product agrees with the twist product", "[karabegov]") {
  auto cfg = config();
  StarConfig scfg(params);
  InvariantPoly A{AbcPoly::A()}, B{AbcPoly::B()}, C{AbcPoly::C()}, one{AbcPoly::one()};
  REQUIRE(karabegov_star(A, A, cfg) == star(A, A, scfg));
  REQUIRE(karabegov_star(B, C, cfg) == star(B, C, scfg));
  REQUIRE(karabegov_star(one, C, cfg) == C);
  Rng rng(107);
  for (int t = 0; t < 6; ++t) {
    InvariantPoly p{AbcPoly::monomial(rng.mono_abc(2))};
    InvariantPoly q{AbcPoly::monomial(rng.mono_abc(2))};
    REQUIRE(karabegov_star(p, q, cfg) == star(p, q, scfg));
  }
}

TEST_CASE("lie derivative identities", "[karabegov]") {
  // u = H, tuple (X): both sides vanish.
  REQUIRE(lie_derivative_identity_check(EnvElement::gen(Gen::H), 1, Gen::X, params));
  // u = Y, tuple (X): both sides equal -lambda/h.
  REQUIRE(lie_derivative_identity_check(EnvElement::gen(Gen::Y), 1, Gen::X, params));
  // u = 1, any tuple: both sides vanish.
  for (unsigned L = 1; L <= 4; ++L) {
    REQUIRE(lie_derivative_identity_check(EnvElement::one(), L, Gen::X, params));
    REQUIRE(lie_derivative_identity_check(EnvElement::one(), L, Gen::Y, params));
  }
  Rng rng(109);
  for (int t = 0; t < 10; ++t) {
    EnvElement u = rng.env(3, 2);
    unsigned L = static_cast<unsigned>(rng.small_int(1, 4));
    REQUIRE(lie_derivative_identity_check(u, L, Gen::X, params));
    REQUIRE(lie_derivative_identity_check(u, L, Gen::Y, params));
  }
}

TEST_CASE("antipode relation between left and right operators", "[karabegov]") {
  auto cfg = config();
  Rng rng(113);
  for (int t = 0; t < 8; ++t) {
    EnvElement u = rng.env(3, 2);
    REQUIRE(Opl(u, cfg.orientation, params) ==
            Opr(antipode(u), cfg.orientation, params));
  }
}
