#pragma once

#include <optional>
#include <set>
#include <vector>

#include "s2star/abc_poly.hpp"
#include "s2star/free_poly.hpp"
#include "s2star/pbw.hpp"

namespace s2star {

/// Configuration of the product: orbit parameter and the mode of h.
/// hbar == nullopt means fully symbolic coefficients in Q(i)(h); a numeric
/// value is checked against the poles of the twist coefficients actually
/// used at the active truncation.
struct StarConfig {
  OrbitParams params;
  std::optional<GaussRat> hbar;

  StarConfig() : params(), hbar(std::nullopt) {}
  explicit StarConfig(OrbitParams p, std::optional<GaussRat> h = std::nullopt)
      : params(std::move(p)), hbar(std::move(h)) {}
};

namespace detail {

/// The twist coefficient in the active mode. The pole guard only fires for
/// coefficients that are actually used: callers request c_n lazily after
/// checking that the n-th term survives.
inline Scalar twist_coeff_at(const StarConfig &cfg, unsigned n) {
  Scalar c = twist_coefficient_closed_form(n, cfg.params);
  if (!cfg.hbar)
    return c;
  GaussRat d = c.den().eval(*cfg.hbar);
  if (d.is_zero())
    throw MathError(MathError::Code::HbarAtPole,
                    "h = " + to_string(*cfg.hbar) +
                        " is a pole of the twist coefficient c_" + std::to_string(n));
  return Scalar(c.num().eval(*cfg.hbar) / d);
}

/// The surviving bidifferential terms (Y~^n p)(X~^n q), n = 0, 1, ...; the
/// list stops once a derivative vanishes (degree-kill makes the sum finite).
inline std::vector<FreePoly> twist_terms(const FreePoly &p, const FreePoly &q) {
  std::vector<FreePoly> terms{p * q};
  unsigned order = std::min(p.degree(), q.degree());
  FreePoly yp = p, xq = q;
  for (unsigned n = 1; n <= order; ++n) {
    yp = leftinv(Gen::Y, yp);
    xq = leftinv(Gen::X, xq);
    if (yp.is_zero() || xq.is_zero())
      break;
    terms.push_back(yp * xq);
  }
  return terms;
}

/// sum_n c_n terms[n]. The symbolic mode accumulates numerators over the
/// common denominator N! lambda (lambda - h) ... (lambda - (N-1) h) so that
/// each output coefficient is normalized exactly once.
template <class PolyT>
PolyT combine_with_twist(const std::vector<PolyT> &terms, const StarConfig &cfg) {
  PolyT acc;
  if (terms.empty())
    return acc;
  if (cfg.hbar) {
    for (unsigned n = 0; n < terms.size(); ++n)
      acc += terms[n].scaled(twist_coeff_at(cfg, n));
    return acc;
  }
  std::size_t N = terms.size() - 1;
  QPoly den(GaussRat(factorial_rat(N)));
  std::vector<QPoly> tails(N + 1, QPoly::one());
  for (std::size_t n = N; n-- > 0;) {
    QPoly factor = QPoly(GaussRat(cfg.params.lambda)) -
                   QPoly::monomial(GaussRat(Rat(static_cast<long>(n))), 1);
    tails[n] = tails[n + 1] * factor;
  }
  den *= tails[0];
  for (unsigned n = 0; n < terms.size(); ++n) {
    // c_n = mult_n / den with mult_n = (-1)^n h^n (N!/n!) prod_{j>=n} factors.
    Int ratio;
    mpz_fac_ui(ratio.get_mpz_t(), static_cast<unsigned long>(N));
    Int nf;
    mpz_fac_ui(nf.get_mpz_t(), n);
    ratio /= nf;
    QPoly mult = QPoly::monomial(GaussRat(Rat((n % 2) ? -ratio : ratio)), n) * tails[n];
    acc += terms[n].scaled(Scalar(mult));
  }
  return acc.scaled(Scalar::one() / Scalar(den));
}

/// The twist applied to reduced representatives, before any quotient
/// reduction: sum_n c_n (Y~^n p)(X~^n q). The truncation min(deg p, deg q)
/// is exact by the degree-kill lemma.
inline FreePoly apply_twist(const FreePoly &p, const FreePoly &q, const StarConfig &cfg) {
  return combine_with_twist(twist_terms(p, q), cfg);
}

} // namespace detail

/// Verified twist coefficients of the active configuration: the generic
/// dual-basis construction, asserted in tests to match the closed form.
inline TwistElement star_twist(const StarConfig &cfg, unsigned order) {
  return twist(order, cfg.params);
}

/// The Wick-type product p *_h q on the invariant algebra.
inline InvariantPoly star(const InvariantPoly &p, const InvariantPoly &q,
                          const StarConfig &cfg) {
  SpherePoly ph = embed(p), qh = embed(q);
  FreePoly lifted = detail::apply_twist(ph.poly, qh.poly, cfg);
  SpherePoly reduced = reduce_sphere(lifted);
  // Conversion to ABC normal form through the quotient bijection; equality
  // with the linear-solve route is covered by tests.
  return reduce_invariant(quot_map_g(reduced.poly));
}

inline InvariantPoly commutator(const InvariantPoly &p, const InvariantPoly &q,
                                const StarConfig &cfg) {
  InvariantPoly ab = star(p, q, cfg), ba = star(q, p, cfg);
  return InvariantPoly{ab.poly - ba.poly};
}

/// Asymptotic expansion: the list of bidifferential outputs C_r(p, q) as the
/// r-th Taylor coefficients at h = 0 of the symbolic product.
struct FormalProduct {
  std::vector<InvariantPoly> orders;

  const InvariantPoly &order(std::size_t r) const { return orders.at(r); }
};

inline FormalProduct formal_expand(const InvariantPoly &p, const InvariantPoly &q,
                                   unsigned order, const OrbitParams &params) {
  StarConfig cfg(params);
  InvariantPoly prod = star(p, q, cfg);
  FormalProduct out;
  out.orders.assign(order + 1, InvariantPoly{});
  for (auto &[m, c] : prod.poly.terms()) {
    // Every coefficient of the symbolic product is regular at h = 0.
    auto series = c.taylor(order);
    for (unsigned r = 0; r <= order; ++r)
      out.orders[r].poly.add_term(m, Scalar(series[r]));
  }
  return out;
}

/// Poisson bracket as the antisymmetrized first-order term:
/// {p, q} = -i (C_1(p,q) - C_1(q,p)).
inline InvariantPoly poisson(const InvariantPoly &p, const InvariantPoly &q,
                             const OrbitParams &params) {
  FormalProduct pq = formal_expand(p, q, 1, params);
  FormalProduct qp = formal_expand(q, p, 1, params);
  AbcPoly diff = pq.orders[1].poly - qp.orders[1].poly;
  return InvariantPoly{diff.scaled(-Scalar::i())};
}

struct PoleSet {
  std::set<std::pair<Rat, Rat>> roots;
  std::vector<QPoly> factors;

  bool contains_root(const Rat &re, const Rat &im = Rat(0)) const {
    return roots.count({re, im}) > 0;
  }
};

/// Union of the exact pole locations over all coefficients of the symbolic
/// product. Computed on the reduced sphere representative, whose coefficient
/// family is an exact rational-linear image of the ABC coefficients (equal
/// pole sets).
inline PoleSet product_poles(const InvariantPoly &p, const InvariantPoly &q,
                             const OrbitParams &params) {
  StarConfig cfg(params);
  SpherePoly reduced =
      reduce_sphere(detail::apply_twist(embed(p).poly, embed(q).poly, cfg));
  PoleSet out;
  for (auto &[m, c] : reduced.poly.terms()) {
    auto rep = c.poles();
    for (auto &[root, mult] : rep.roots)
      out.roots.insert({root.re, root.im});
    for (auto &f : rep.factors)
      out.factors.push_back(f);
  }
  return out;
}

/// Hermitian property at a numeric point: conj(p *_h q) = conj(q) *_conj(h)
/// conj(p), exactly.
inline bool hermitian_check(const InvariantPoly &p, const InvariantPoly &q,
                            const GaussRat &h, const OrbitParams &params) {
  StarConfig at_h(params, h);
  StarConfig at_hc(params, h.conj());
  InvariantPoly lhs = conj(star(p, q, at_h));
  InvariantPoly rhs = star(conj(q), conj(p), at_hc);
  return lhs == rhs;
}

} // namespace s2star
