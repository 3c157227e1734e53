#pragma once

#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "s2star/expr.hpp"
#include "s2star/karabegov.hpp"
#include "s2star/rng.hpp"
#include "s2star/topology.hpp"

namespace s2star {

struct CheckResult {
  std::string name;
  bool pass = true;
  std::string detail;
};

namespace checks {

inline void fail(CheckResult &r, const std::string &what) {
  r.pass = false;
  if (r.detail.empty())
    r.detail = what;
}

/// Enumerate ABC normal-form monomials of degree <= max_degree.
inline std::vector<MonoAbc> abc_monomials(unsigned max_degree) {
  std::vector<MonoAbc> out;
  for (unsigned d = 0; d <= max_degree; ++d)
    for (unsigned ea = 0; ea <= std::min(1u, d); ++ea)
      for (unsigned eb = 0; ea + eb <= d; ++eb)
        out.push_back(MonoAbc{ea, eb, d - ea - eb});
  return out;
}

inline std::vector<Mono4> free_monomials(unsigned max_degree) {
  std::vector<Mono4> out;
  for (unsigned d = 0; d <= max_degree; ++d)
    for (unsigned eu = 0; eu <= d; ++eu)
      for (unsigned eub = 0; eu + eub <= d; ++eub)
        for (unsigned ev = 0; eu + eub + ev <= d; ++ev)
          out.push_back(Mono4{eu, eub, ev, d - eu - eub - ev});
  return out;
}

// ---------------------------------------------------------------- scalars

inline CheckResult scalar_normalization(Rng &rng) {
  CheckResult r{"scalars/normalized-products"};
  for (int t = 0; t < 50; ++t) {
    Scalar a = rng.scalar(), b = rng.scalar();
    Scalar p = a * b;
    if (QPoly::gcd(p.num(), p.den()).degree() > 0)
      fail(r, "common factor survived normalization: " + to_string(p));
    if (!p.is_zero() && p.den().lead() != GaussRat(1))
      fail(r, "denominator not monic: " + to_string(p));
  }
  return r;
}

inline CheckResult scalar_taylor_cauchy(Rng &rng) {
  CheckResult r{"scalars/taylor-cauchy-product"};
  for (int t = 0; t < 30; ++t) {
    Scalar a = rng.scalar_regular_at_zero(), b = rng.scalar_regular_at_zero();
    const unsigned order = 6;
    auto ta = a.taylor(order), tb = b.taylor(order), tab = (a * b).taylor(order);
    for (unsigned k = 0; k <= order; ++k) {
      GaussRat conv;
      for (unsigned j = 0; j <= k; ++j)
        conv += ta[j] * tb[k - j];
      if (conv != tab[k])
        fail(r, "Cauchy product mismatch at order " + std::to_string(k));
    }
  }
  return r;
}

inline CheckResult scalar_eval_homomorphism(Rng &rng) {
  CheckResult r{"scalars/eval-commutes-with-arithmetic"};
  for (int t = 0; t < 50; ++t) {
    Scalar a = rng.scalar(), b = rng.scalar();
    GaussRat x = rng.gauss(3, 3);
    try {
      GaussRat va = a.eval(x), vb = b.eval(x);
      if ((a + b).eval(x) != va + vb)
        fail(r, "eval(a+b) mismatch");
      if ((a * b).eval(x) != va * vb)
        fail(r, "eval(a*b) mismatch");
      if (!vb.is_zero() && !b.is_zero() && (a / b).eval(x) != va / vb)
        fail(r, "eval(a/b) mismatch");
    } catch (const MathError &) {
      // x hit a pole of a, b or of a normalized combination; not this test's
      // business.
      continue;
    }
  }
  return r;
}

inline CheckResult twist_pole_containment(const OrbitParams &params) {
  CheckResult r{"scalars/twist-poles-in-lambda-over-j"};
  for (unsigned n = 0; n <= 12; ++n) {
    auto rep = twist_coefficient_closed_form(n, params).poles();
    if (!rep.factors.empty())
      fail(r, "unexpected irreducible factor in c_" + std::to_string(n));
    for (auto &[root, mult] : rep.roots) {
      bool ok = false;
      for (unsigned j = 1; j + 1 <= n; ++j)
        if (root == GaussRat(Rat(params.lambda / Rat(static_cast<long>(j)))))
          ok = true;
      if (!ok)
        fail(r, "pole of c_" + std::to_string(n) + " outside {lambda/j}: " + to_string(root));
    }
  }
  return r;
}

// ---------------------------------------------------------------- uea

inline CheckResult pbw_associativity(Rng &rng) {
  CheckResult r{"uea/pbw-associativity"};
  for (int t = 0; t < 100; ++t) {
    EnvElement a = rng.env(4, 2), b = rng.env(4, 2), c = rng.env(4, 2);
    if (pbw_mul(pbw_mul(a, b), c) != pbw_mul(a, pbw_mul(b, c)))
      fail(r, "associativity violated at trial " + std::to_string(t));
  }
  return r;
}

inline CheckResult golden_projection_lemma() {
  CheckResult r{"uea/projection-of-XnYn"};
  for (unsigned n = 1; n <= 12; ++n) {
    EnvElement lhs = project0(
        pbw_mul(EnvElement::monomial(Mono3{0, 0, n}), EnvElement::monomial(Mono3{n, 0, 0})));
    // n! H(H-1)...(H-n+1)
    EnvElement rhs = EnvElement::one();
    for (unsigned j = 0; j < n; ++j) {
      EnvElement factor = EnvElement::gen(Gen::H) -
                          EnvElement::one().scaled(Scalar(Rat(static_cast<long>(j))));
      rhs = pbw_mul(rhs, factor);
    }
    rhs = rhs.scaled(Scalar(factorial_rat(n)));
    if (lhs != rhs)
      fail(r, "projection lemma fails at n = " + std::to_string(n));
  }
  return r;
}

inline CheckResult pairing_table(const OrbitParams &params) {
  CheckResult r{"uea/pairing-closed-form"};
  Scalar z = params.lambda_over_h();
  for (unsigned n = 0; n <= 12; ++n) {
    Scalar expect = Scalar::one();
    for (unsigned j = 0; j < n; ++j)
      expect *= z - Scalar(Rat(static_cast<long>(j)));
    expect *= Scalar(factorial_rat(n));
    if (n % 2)
      expect = -expect;
    Scalar got = pairing(EnvElement::monomial(Mono3{n, 0, 0}),
                         EnvElement::monomial(Mono3{0, 0, n}), params);
    if (got != expect)
      fail(r, "diagonal pairing mismatch at n = " + std::to_string(n));
  }
  for (unsigned m = 0; m <= 6; ++m)
    for (unsigned n = 0; n <= 6; ++n) {
      if (m == n)
        continue;
      Scalar got = pairing(EnvElement::monomial(Mono3{m, 0, 0}),
                           EnvElement::monomial(Mono3{0, 0, n}), params);
      if (!got.is_zero())
        fail(r, "off-diagonal pairing nonzero at (" + std::to_string(m) + ", " +
                    std::to_string(n) + ")");
    }
  return r;
}

inline CheckResult twist_matches_closed_form(const OrbitParams &params) {
  CheckResult r{"uea/twist-closed-form"};
  TwistElement t = twist(12, params);
  for (unsigned n = 0; n <= 12; ++n)
    if (t.c(n) != twist_coefficient_closed_form(n, params))
      fail(r, "twist coefficient differs from closed form at n = " + std::to_string(n));
  return r;
}

inline CheckResult ad_group_properties(Rng &rng) {
  CheckResult r{"uea/ad-group-composition"};
  for (int t = 0; t < 20; ++t) {
    GroupElement k1 = rng.group_element(), k2 = rng.group_element();
    EnvElement a = rng.env(3, 2);
    if (ad_group(k1 * k2, a) != ad_group(k1, ad_group(k2, a)))
      fail(r, "Ad_{k1 k2} != Ad_{k1} Ad_{k2}");
    if (ad_group(k1, a).filtration() > a.filtration())
      fail(r, "Ad raised the filtration degree");
    EnvElement x = EnvElement::gen(Gen::X), y = EnvElement::gen(Gen::Y);
    if (ad_group(k1, pbw_mul(x, y)) != pbw_mul(ad_group(k1, x), ad_group(k1, y)))
      fail(r, "Ad is not an algebra homomorphism");
  }
  return r;
}

inline CheckResult antipode_involution(Rng &rng) {
  CheckResult r{"uea/antipode-involution"};
  for (int t = 0; t < 50; ++t) {
    EnvElement a = rng.env(4, 3);
    if (antipode(antipode(a)) != a)
      fail(r, "S(S(a)) != a");
  }
  return r;
}

inline CheckResult s_symbolic_invariance(Rng &rng, const OrbitParams &params) {
  CheckResult r{"uea/s-function-right-invariance"};
  for (int t = 0; t < 20; ++t) {
    EnvElement a = rng.env(3, 2);
    SpherePoly s = s_function_symbolic(a, params.lambda_over_h());
    if (!is_right_invariant(s.poly))
      fail(r, "s-function output not right invariant");
  }
  return r;
}

// ---------------------------------------------------------------- orbit

inline CheckResult sphere_reduction_confluence(Rng &rng) {
  CheckResult r{"orbit/sphere-reduction-confluence"};
  for (int t = 0; t < 30; ++t) {
    FreePoly p = rng.free_poly(5, 3);
    SpherePoly normal = reduce_sphere(p);
    if (reduce_sphere(normal.poly) != normal)
      fail(r, "reduce_sphere not idempotent");
    // Reduce by single steps in random order; must land on the same form.
    FreePoly work = p;
    for (;;) {
      std::vector<Mono4> reducible;
      for (auto &[m, c] : work.terms())
        if (m.eu >= 1 && m.eub >= 1)
          reducible.push_back(m);
      if (reducible.empty())
        break;
      rewrite_sphere_step(
          work, reducible[static_cast<std::size_t>(
                    rng.small_int(0, static_cast<long>(reducible.size()) - 1))]);
    }
    if (work != normal.poly)
      fail(r, "randomized reduction order changed the normal form");
  }
  return r;
}

inline CheckResult invariant_reduction_confluence(Rng &rng) {
  CheckResult r{"orbit/invariant-reduction-confluence"};
  for (int t = 0; t < 30; ++t) {
    AbcPoly p;
    for (int j = 0; j < 3; ++j) {
      unsigned ea = static_cast<unsigned>(rng.small_int(0, 4));
      unsigned eb = static_cast<unsigned>(rng.small_int(0, 2));
      unsigned ec = static_cast<unsigned>(rng.small_int(0, 2));
      p.add_term(MonoAbc{ea, eb, ec}, Scalar(rng.gauss(3, 2)));
    }
    InvariantPoly normal = reduce_invariant(p);
    AbcPoly work = p;
    for (;;) {
      std::vector<MonoAbc> reducible;
      for (auto &[m, c] : work.terms())
        if (m.ea >= 2)
          reducible.push_back(m);
      if (reducible.empty())
        break;
      rewrite_invariant_step(
          work, reducible[static_cast<std::size_t>(
                    rng.small_int(0, static_cast<long>(reducible.size()) - 1))]);
    }
    if (work != normal.poly)
      fail(r, "randomized reduction order changed the normal form");
  }
  return r;
}

inline CheckResult leftinv_leibniz(Rng &rng) {
  CheckResult r{"orbit/leftinv-leibniz"};
  for (int t = 0; t < 100; ++t) {
    FreePoly p = rng.free_poly(3, 2), q = rng.free_poly(3, 2);
    for (Gen z : {Gen::X, Gen::Y}) {
      FreePoly lhs = leftinv(z, p * q);
      FreePoly rhs = leftinv(z, p) * q + p * leftinv(z, q);
      if (lhs != rhs)
        fail(r, "Leibniz rule violated");
    }
  }
  for (const FreePoly &gen :
       {FreePoly::U(), FreePoly::Ubar(), FreePoly::V(), FreePoly::Vbar()}) {
    if (!leftinv(Gen::X, leftinv(Gen::X, gen)).is_zero() ||
        !leftinv(Gen::Y, leftinv(Gen::Y, gen)).is_zero())
      fail(r, "second derivative of a generator nonzero");
  }
  return r;
}

inline CheckResult degree_kill(Rng &rng) {
  CheckResult r{"orbit/degree-kill"};
  for (int t = 0; t < 40; ++t) {
    Mono4 m = rng.mono4(4);
    unsigned d = m.degree();
    FreePoly p = FreePoly::monomial(m), q = FreePoly::monomial(m);
    for (unsigned n = 0; n <= d; ++n) {
      p = leftinv(Gen::Y, p);
      q = leftinv(Gen::X, q);
    }
    if (!p.is_zero() || !q.is_zero())
      fail(r, "derivative of order degree+1 did not vanish");
  }
  return r;
}

inline CheckResult invariant_product_of_derivatives(Rng &rng) {
  CheckResult r{"orbit/derivative-product-invariance"};
  for (int t = 0; t < 30; ++t) {
    FreePoly p = FreePoly::monomial(rng.invariant_mono4(4));
    FreePoly q = FreePoly::monomial(rng.invariant_mono4(4));
    for (unsigned n = 1; n <= 4; ++n) {
      FreePoly yp = p, xq = q;
      for (unsigned j = 0; j < n; ++j) {
        yp = leftinv(Gen::Y, yp);
        xq = leftinv(Gen::X, xq);
      }
      if (yp.is_zero() || xq.is_zero())
        break;
      // The factors themselves are generally not invariant; their product is.
      if (!is_right_invariant(yp * xq))
        fail(r, "product of derivatives lost right invariance");
    }
  }
  return r;
}

inline CheckResult to_abc_round_trip(Rng &rng) {
  CheckResult r{"orbit/to_ABC-embed-identity"};
  for (int t = 0; t < 25; ++t) {
    InvariantPoly p = rng.invariant_poly(3, 3);
    if (to_ABC(embed(p), 2 * p.degree() + 2) != p)
      fail(r, "to_ABC(embed(p)) != p");
  }
  return r;
}

inline CheckResult evaluation_bounded_by_seminorm(Rng &rng) {
  CheckResult r{"orbit/evaluation-functional-bound"};
  SeminormParams sp(Rat(0), Rat(1), SeminormBasis::FourGen);
  for (int t = 0; t < 25; ++t) {
    FreePoly p = rng.free_poly(3, 3);
    GroupElement k = rng.group_element();
    GaussRat v = evaluate(p, k);
    QInterval lhs = abs_enclosure(v);
    QInterval rhs = seminorm(p, sp);
    if (lhs.lo > rhs.hi)
      fail(r, "|p(k)| exceeded the 1-norm");
  }
  return r;
}

// ---------------------------------------------------------------- star

inline CheckResult star_unit(Rng &rng, const StarConfig &cfg) {
  CheckResult r{"star/unit"};
  InvariantPoly one{AbcPoly::one()};
  for (int t = 0; t < 10; ++t) {
    InvariantPoly p = rng.invariant_poly(3, 3);
    if (star(one, p, cfg) != p || star(p, one, cfg) != p)
      fail(r, "1 is not a unit for the product");
  }
  return r;
}

inline CheckResult star_associativity_sample(Rng &rng, const StarConfig &cfg,
                                             int trials = 15, unsigned max_degree = 3) {
  CheckResult r{"star/associativity"};
  for (int t = 0; t < trials; ++t) {
    InvariantPoly p{AbcPoly::monomial(rng.mono_abc(max_degree))};
    InvariantPoly q{AbcPoly::monomial(rng.mono_abc(max_degree))};
    InvariantPoly s{AbcPoly::monomial(rng.mono_abc(max_degree))};
    if (star(star(p, q, cfg), s, cfg) != star(p, star(q, s, cfg), cfg))
      fail(r, "(p*q)*r != p*(q*r) for " + to_string(p) + ", " + to_string(q) + ", " +
                  to_string(s));
  }
  return r;
}

inline CheckResult star_k_invariance(Rng &rng, const StarConfig &cfg, int elements = 6,
                                     unsigned max_degree = 2) {
  CheckResult r{"star/K-invariance"};
  auto action = [&](const GroupElement &k, const InvariantPoly &p) {
    return to_ABC(reduce_sphere(group_action(k, embed(p).poly)), 2 * p.degree() + 2);
  };
  auto pts = sample_group_elements(static_cast<std::size_t>(elements));
  for (auto &k : pts) {
    InvariantPoly p{AbcPoly::monomial(rng.mono_abc(max_degree))};
    InvariantPoly q{AbcPoly::monomial(rng.mono_abc(max_degree))};
    if (action(k, star(p, q, cfg)) != star(action(k, p), action(k, q), cfg))
      fail(r, "group action does not commute with the product at k = " + to_string(k));
  }
  return r;
}

inline CheckResult expansion_zeroth_order(Rng &rng, const OrbitParams &params) {
  CheckResult r{"star/zeroth-order-is-product"};
  for (int t = 0; t < 12; ++t) {
    InvariantPoly p = rng.invariant_poly(2, 2), q = rng.invariant_poly(2, 2);
    FormalProduct f = formal_expand(p, q, 1, params);
    if (f.orders[0] != reduce_invariant(p.poly * q.poly))
      fail(r, "C_0(p, q) != p q");
  }
  return r;
}

inline CheckResult poisson_properties(Rng &rng, const OrbitParams &params) {
  CheckResult r{"star/poisson-bracket"};
  InvariantPoly A{AbcPoly::A()}, B{AbcPoly::B()}, C{AbcPoly::C()};
  auto add = [](const InvariantPoly &x, const InvariantPoly &y) {
    return InvariantPoly{x.poly + y.poly};
  };
  auto pb = [&](const InvariantPoly &x, const InvariantPoly &y) {
    return poisson(x, y, params);
  };
  // Antisymmetry and the generator triangle.
  for (auto &[x, y] : {std::pair{A, B}, {B, C}, {A, C}}) {
    if (pb(x, y).poly != -pb(y, x).poly)
      fail(r, "bracket not antisymmetric");
    if (!pb(x, x).is_zero())
      fail(r, "{p, p} != 0");
  }
  // Leibniz and Jacobi on generators and random triples.
  auto leibniz = [&](const InvariantPoly &x, const InvariantPoly &y,
                     const InvariantPoly &z) {
    InvariantPoly yz = reduce_invariant(y.poly * z.poly);
    InvariantPoly lhs = pb(x, yz);
    InvariantPoly rhs = add(reduce_invariant(pb(x, y).poly * z.poly),
                             reduce_invariant(y.poly * pb(x, z).poly));
    return lhs == rhs;
  };
  auto jacobi = [&](const InvariantPoly &x, const InvariantPoly &y, const InvariantPoly &z) {
    InvariantPoly total = add(add(pb(x, pb(y, z)), pb(y, pb(z, x))), pb(z, pb(x, y)));
    return total.is_zero();
  };
  if (!leibniz(A, B, C) || !jacobi(A, B, C))
    fail(r, "Leibniz/Jacobi fails on generators");
  for (int t = 0; t < 10; ++t) {
    InvariantPoly x{AbcPoly::monomial(rng.mono_abc(2))};
    InvariantPoly y{AbcPoly::monomial(rng.mono_abc(2))};
    InvariantPoly z{AbcPoly::monomial(rng.mono_abc(2))};
    if (!leibniz(x, y, z))
      fail(r, "Leibniz fails on random triple");
    if (!jacobi(x, y, z))
      fail(r, "Jacobi fails on random triple");
  }
  return r;
}

inline CheckResult wick_separation(const StarConfig &cfg) {
  CheckResult r{"star/wick-separation"};
  // Barred-only left factors are killed by Y~, unbarred-only right factors
  // by X~; the lifted product must then be the plain product.
  std::vector<Mono4> barred{{0, 1, 0, 0}, {0, 2, 0, 1}, {0, 0, 0, 3}};
  std::vector<Mono4> unbarred{{1, 0, 0, 0}, {2, 0, 1, 0}, {0, 0, 3, 0}};
  std::vector<Mono4> any{{1, 1, 0, 0}, {1, 0, 2, 1}, {2, 1, 1, 0}};
  for (auto &b : barred)
    for (auto &m : any) {
      FreePoly lhs = lift_star(FreePoly::monomial(b), FreePoly::monomial(m), cfg);
      if (lhs != FreePoly::monomial(b) * FreePoly::monomial(m))
        fail(r, "antiholomorphic left factor saw a correction");
    }
  for (auto &m : any)
    for (auto &u : unbarred) {
      FreePoly lhs = lift_star(FreePoly::monomial(m), FreePoly::monomial(u), cfg);
      if (lhs != FreePoly::monomial(m) * FreePoly::monomial(u))
        fail(r, "holomorphic right factor saw a correction");
    }
  return r;
}

inline CheckResult pole_containment_sample(Rng &rng, const OrbitParams &params) {
  CheckResult r{"star/pole-containment"};
  for (int t = 0; t < 10; ++t) {
    InvariantPoly p{AbcPoly::monomial(rng.mono_abc(3))};
    InvariantPoly q{AbcPoly::monomial(rng.mono_abc(3))};
    unsigned dmin = std::min(embed(p).degree(), embed(q).degree());
    PoleSet poles = product_poles(p, q, params);
    if (!poles.factors.empty())
      fail(r, "irreducible pole factor appeared");
    for (auto &[re, im] : poles.roots) {
      bool ok = false;
      for (unsigned j = 1; j + 1 <= dmin; ++j)
        if (im == 0 && re == params.lambda / Rat(static_cast<long>(j)))
          ok = true;
      if (!ok)
        fail(r, "pole outside {lambda/j : j <= min degree - 1}");
    }
  }
  return r;
}

// ---------------------------------------------------------------- karabegov

inline CheckResult karabegov_agreement(const KarabegovConfig &kcfg, unsigned max_total_degree = 2) {
  CheckResult r{"karabegov/agreement-with-twist-product"};
  StarConfig scfg(kcfg.params);
  auto monos = abc_monomials(max_total_degree);
  for (auto &m1 : monos)
    for (auto &m2 : monos) {
      if (m1.degree() + m2.degree() > max_total_degree)
        continue;
      InvariantPoly p{AbcPoly::monomial(m1)}, q{AbcPoly::monomial(m2)};
      if (karabegov_star(p, q, kcfg) != star(p, q, scfg))
        fail(r, "products differ at (" + mono_to_string(m1) + ", " + mono_to_string(m2) + ")");
    }
  return r;
}

inline CheckResult opl_representation(Rng &rng, const KarabegovConfig &kcfg) {
  CheckResult r{"karabegov/opl-representation"};
  auto comm_ok = [&](Gen a, Gen b, const ChartFunction &f) {
    ChartFunction lhs = opl_gen(a, opl_gen(b, f, kcfg.orientation, kcfg.params),
                                kcfg.orientation, kcfg.params) -
                        opl_gen(b, opl_gen(a, f, kcfg.orientation, kcfg.params),
                                kcfg.orientation, kcfg.params);
    auto br = bracket_coeffs(a, b);
    ChartFunction rhs = ChartFunction::zero();
    if (br[0])
      rhs = rhs + opl_gen(Gen::H, f, kcfg.orientation, kcfg.params)
                      .scaled(Scalar(Rat(br[0])));
    if (br[1])
      rhs = rhs + opl_gen(Gen::X, f, kcfg.orientation, kcfg.params)
                      .scaled(Scalar(Rat(br[1])));
    if (br[2])
      rhs = rhs + opl_gen(Gen::Y, f, kcfg.orientation, kcfg.params)
                      .scaled(Scalar(Rat(br[2])));
    return lhs == rhs;
  };
  for (int t = 0; t < 10; ++t) {
    ChartFunction f = rng.chart_function();
    for (Gen a : {Gen::H, Gen::X, Gen::Y})
      for (Gen b : {Gen::H, Gen::X, Gen::Y}) {
        if (!comm_ok(a, b, f))
          fail(r, "[opl_a, opl_b] != opl_[a,b]");
        ChartFunction lr = opl_gen(a, opr_gen(b, f, kcfg.orientation, kcfg.params),
                                   kcfg.orientation, kcfg.params);
        ChartFunction rl = opr_gen(b, opl_gen(a, f, kcfg.orientation, kcfg.params),
                                   kcfg.orientation, kcfg.params);
        if (lr != rl)
          fail(r, "[opl, opr] != 0");
      }
  }
  return r;
}

inline CheckResult s_identity_chart(const KarabegovConfig &kcfg, unsigned max_filtration = 3,
                                    std::size_t points = 6) {
  CheckResult r{"karabegov/opl-pullback-is-s-function"};
  Scalar s = kcfg.params.lambda_over_h();
  auto pts = sample_group_elements(points, /*require_u_nonzero=*/true);
  for (unsigned a = 0; a + 0 <= max_filtration; ++a)
    for (unsigned b = 0; a + b <= max_filtration; ++b)
      for (unsigned c = 0; a + b + c <= max_filtration; ++c) {
        EnvElement u = EnvElement::monomial(Mono3{a, b, c});
        ChartFunction cf = Opl(u, kcfg.orientation, kcfg.params);
        for (auto &k : pts)
          if (cf.eval(chart_point(k)) != s_function(u, k, s))
            fail(r, "chart Opl disagrees with the s-function");
      }
  return r;
}

inline CheckResult opl_antipode_relation(const KarabegovConfig &kcfg, unsigned max_filtration = 3) {
  CheckResult r{"karabegov/Opl-equals-Opr-of-antipode"};
  for (unsigned a = 0; a <= max_filtration; ++a)
    for (unsigned b = 0; a + b <= max_filtration; ++b)
      for (unsigned c = 0; a + b + c <= max_filtration; ++c) {
        EnvElement u = EnvElement::monomial(Mono3{a, b, c});
        if (Opl(u, kcfg.orientation, kcfg.params) !=
            Opr(antipode(u), kcfg.orientation, kcfg.params))
          fail(r, "Opl(u) != Opr(S u) at " + to_string(u));
      }
  return r;
}

inline CheckResult preimage_round_trip(Rng &rng, const KarabegovConfig &kcfg) {
  CheckResult r{"karabegov/preimage-round-trip"};
  for (int t = 0; t < 8; ++t) {
    InvariantPoly p = rng.invariant_poly(2, 2);
    auto pre = solve_preimage(p, kcfg.max_degree, kcfg);
    if (L_map(pre.element, kcfg) != p)
      fail(r, "L(solve_preimage(p)) != p");
  }
  return r;
}

inline CheckResult kernel_ideal_indirect(const KarabegovConfig &kcfg) {
  CheckResult r{"karabegov/kernel-preimage-independence"};
  // Degree 2 has a nontrivial nullspace; distinct preimages must give the
  // same product.
  InvariantPoly p{AbcPoly::B() * AbcPoly::C()};
  auto pre = solve_preimage(p, 2, kcfg);
  if (pre.kernel.empty()) {
    fail(r, "expected a nontrivial kernel witness at degree 2");
    return r;
  }
  InvariantPoly q{AbcPoly::A()};
  ChartFunction qc = chart_of(q);
  ChartFunction r1 = opl(pre.element, qc, kcfg.orientation, kcfg.params);
  for (auto &kelem : pre.kernel) {
    if (!L_map(kelem, kcfg).is_zero()) {
      fail(r, "kernel witness not in ker L");
      continue;
    }
    EnvElement other = pre.element + kelem;
    ChartFunction r2 = opl(other, qc, kcfg.orientation, kcfg.params);
    if (r1 != r2)
      fail(r, "two preimages of p gave different products");
  }
  return r;
}

// ---------------------------------------------------------------- topology

inline CheckResult seminorm_axioms(Rng &rng) {
  CheckResult r{"topology/seminorm-axioms"};
  SeminormParams sp(Rat(1, 2), Rat(2), SeminormBasis::FourGen);
  for (int t = 0; t < 20; ++t) {
    FreePoly p = rng.free_poly(3, 3), q = rng.free_poly(3, 3);
    QInterval np = seminorm(p, sp), nq = seminorm(q, sp), npq = seminorm(p + q, sp);
    // Certified in the non-refutation direction: lb(lhs) <= ub(rhs).
    if (npq.lo > (np + nq).hi)
      fail(r, "triangle inequality refuted");
    GaussRat c = rng.nonzero_gauss(3, 2);
    QInterval lhs = seminorm(p.scaled(Scalar(c)), sp);
    QInterval rhs = abs_enclosure(c) * np;
    if (lhs.lo > rhs.hi || rhs.lo > lhs.hi)
      fail(r, "homogeneity refuted");
  }
  return r;
}

inline CheckResult seminorm_submultiplicative(Rng &rng) {
  CheckResult r{"topology/one-norm-submultiplicative"};
  SeminormParams sp(Rat(0), Rat(1), SeminormBasis::FourGen);
  for (int t = 0; t < 20; ++t) {
    FreePoly p = rng.free_poly(3, 3), q = rng.free_poly(3, 3);
    if (seminorm(p * q, sp).lo > (seminorm(p, sp) * seminorm(q, sp)).hi)
      fail(r, "submultiplicativity refuted");
  }
  return r;
}

inline CheckResult lift_descent(Rng &rng, const StarConfig &cfg) {
  CheckResult r{"topology/lift-star-descends"};
  for (int t = 0; t < 25; ++t) {
    InvariantPoly p = rng.invariant_poly(2, 2), q = rng.invariant_poly(2, 2);
    FreePoly lifted = lift_star(embed(p).poly, embed(q).poly, cfg);
    if (reduce_sphere(lifted) != embed(star(p, q, cfg)))
      fail(r, "reduce(lift_star) != embed(star)");
  }
  return r;
}

inline CheckResult continuity_class_bound_cross_check() {
  CheckResult r{"topology/continuity-class-bound-vs-honest"};
  auto disc = disc_constants(GaussRat(Rat(1, 2)), Rat(1, 4), 6);
  SeminormParams sp(Rat(0), Rat(1), SeminormBasis::FourGen);
  Rat cm = disc.c_minus_lb();
  auto monos = free_monomials(4);
  for (auto &m1 : monos)
    for (auto &m2 : monos) {
      if (m1.degree() > 3 || m2.degree() > 3)
        continue;
      QInterval honest = continuity_lhs_bound(FreePoly::monomial(m1), FreePoly::monomial(m2), sp, cm);
      // The class-based series must equal the honest bound for monomials.
      Rat series(0), cm_pow(1);
      std::vector<std::vector<Rat>> falling(13, std::vector<Rat>(13, Rat(0)));
      for (unsigned x = 0; x <= 12; ++x) {
        falling[x][0] = 1;
        for (unsigned n = 1; n <= 12; ++n)
          falling[x][n] =
              n <= x ? falling[x][n - 1] * Rat(static_cast<long>(x - n + 1)) : Rat(0);
      }
      for (unsigned n = 0; n <= std::min(m1.degree(), m2.degree()); ++n) {
        Rat fac = factorial_rat(n);
        series += falling[m1.k_up()][n] * falling[m2.k_down()][n] / (fac * fac * cm_pow);
        cm_pow *= cm;
      }
      Rat cpow(1);
      for (unsigned k = 0; k < m1.degree() + m2.degree(); ++k)
        cpow *= sp.C;
      Rat class_bound = series * cpow;
      if (honest.lo != class_bound || honest.hi != class_bound)
        fail(r, "class bound differs from the honest per-pair bound");
    }
  return r;
}

inline CheckResult continuity_small(const OrbitParams &params) {
  CheckResult r{"topology/continuity-report-small"};
  auto disc = disc_constants(GaussRat(Rat(1, 2)), Rat(1, 4), 4);
  auto rep = continuity_report(4, SeminormParams(Rat(0), Rat(1)), disc);
  if (!rep.all_pass)
    fail(r, "continuity estimate failed at degree 4");
  (void)params;
  return r;
}

inline CheckResult quot_equiv_small() {
  CheckResult r{"topology/quotient-equivalence-small"};
  auto rep = quot_equivalence_report(4, Rat(1), Rat(0));
  if (!rep.all_pass)
    fail(r, "equivalence estimate failed at degree 4");
  return r;
}

inline CheckResult holomorphy_sample(Rng &rng, const OrbitParams &params) {
  CheckResult r{"topology/holomorphy-probe"};
  auto pts = sample_group_elements(4, true);
  for (int t = 0; t < 3; ++t) {
    InvariantPoly p = rng.invariant_poly(2, 2), q = rng.invariant_poly(2, 2);
    auto probe = holomorphy_probe(p, q, pts[static_cast<std::size_t>(t) % pts.size()],
                                  GaussRat(Rat(1, 2)), Rat(1, 4), 4, params);
    if (!probe.all_match || probe.samples.size() < 4)
      fail(r, "sampled values disagree with the symbolic rational function");
  }
  return r;
}

// ---------------------------------------------------------------- cli

inline CheckResult round_trip_printing(Rng &rng) {
  CheckResult r{"cli/print-parse-round-trip"};
  for (int t = 0; t < 30; ++t) {
    Scalar s = rng.scalar();
    if (parse_scalar(to_string(s)) != s)
      fail(r, "scalar round trip failed: " + to_string(s));
    EnvElement e = rng.env(3, 3);
    if (parse_env(to_string(e)) != e)
      fail(r, "enveloping element round trip failed: " + to_string(e));
    InvariantPoly p = rng.invariant_poly(3, 3, false);
    auto back = parse_poly_expr(to_string(p));
    if (!std::holds_alternative<InvariantPoly>(back) ||
        std::get<InvariantPoly>(back) != p)
      fail(r, "invariant polynomial round trip failed: " + to_string(p));
    FreePoly f = rng.free_poly(3, 3);
    auto back_f = parse_poly_expr(to_string(f));
    // A constant expression is classified as invariant; compare semantically.
    bool ok = std::holds_alternative<FreePoly>(back_f)
                  ? std::get<FreePoly>(back_f) == f
                  : embed_free(std::get<InvariantPoly>(back_f).poly) == f;
    if (!ok)
      fail(r, "free polynomial round trip failed: " + to_string(f));
    GroupElement k = rng.group_element();
    if (!(parse_group(to_string(k)) == k))
      fail(r, "group element round trip failed: " + to_string(k));
  }
  return r;
}

} // namespace checks

/// The full invariant suite, deterministic in the seed.
inline std::vector<CheckResult> run_all_checks(std::uint64_t seed,
                                               const OrbitParams &params = OrbitParams()) {
  Rng rng(seed);
  StarConfig cfg(params);
  KarabegovConfig kcfg = make_karabegov_config(params);
  std::vector<CheckResult> out;
  out.push_back(checks::scalar_normalization(rng));
  out.push_back(checks::scalar_taylor_cauchy(rng));
  out.push_back(checks::scalar_eval_homomorphism(rng));
  out.push_back(checks::twist_pole_containment(params));
  out.push_back(checks::pbw_associativity(rng));
  out.push_back(checks::golden_projection_lemma());
  out.push_back(checks::pairing_table(params));
  out.push_back(checks::twist_matches_closed_form(params));
  out.push_back(checks::ad_group_properties(rng));
  out.push_back(checks::antipode_involution(rng));
  out.push_back(checks::s_symbolic_invariance(rng, params));
  out.push_back(checks::sphere_reduction_confluence(rng));
  out.push_back(checks::invariant_reduction_confluence(rng));
  out.push_back(checks::leftinv_leibniz(rng));
  out.push_back(checks::degree_kill(rng));
  out.push_back(checks::invariant_product_of_derivatives(rng));
  out.push_back(checks::to_abc_round_trip(rng));
  out.push_back(checks::evaluation_bounded_by_seminorm(rng));
  out.push_back(checks::star_unit(rng, cfg));
  out.push_back(checks::star_associativity_sample(rng, cfg));
  out.push_back(checks::star_k_invariance(rng, cfg));
  out.push_back(checks::expansion_zeroth_order(rng, params));
  out.push_back(checks::poisson_properties(rng, params));
  out.push_back(checks::wick_separation(cfg));
  out.push_back(checks::pole_containment_sample(rng, params));
  out.push_back(checks::karabegov_agreement(kcfg));
  out.push_back(checks::opl_representation(rng, kcfg));
  out.push_back(checks::s_identity_chart(kcfg));
  out.push_back(checks::opl_antipode_relation(kcfg));
  out.push_back(checks::preimage_round_trip(rng, kcfg));
  out.push_back(checks::kernel_ideal_indirect(kcfg));
  out.push_back(checks::seminorm_axioms(rng));
  out.push_back(checks::seminorm_submultiplicative(rng));
  out.push_back(checks::lift_descent(rng, cfg));
  out.push_back(checks::continuity_class_bound_cross_check());
  out.push_back(checks::continuity_small(params));
  out.push_back(checks::quot_equiv_small());
  out.push_back(checks::holomorphy_sample(rng, params));
  out.push_back(checks::round_trip_printing(rng));
  return out;
}

} // namespace s2star
