#pragma once

#include <optional>
#include <vector>

#include "s2star/interval.hpp"
#include "s2star/star.hpp"

namespace s2star {

/// Which generator basis the 1-norm refers to.
enum class SeminormBasis { FourGen, ThreeGenABC, ThreeGenF };

/// Parameters of the seminorm (C ||.||_1)_R.
struct SeminormParams {
  Rat R;
  Rat C;
  SeminormBasis basis = SeminormBasis::FourGen;

  SeminormParams(Rat r = Rat(0), Rat c = Rat(1),
                 SeminormBasis b = SeminormBasis::FourGen)
      : R(std::move(r)), C(std::move(c)), basis(b) {
    if (R < 0 || C < 1)
      throw MathError(MathError::Code::InvalidArgument,
                      "seminorm needs R >= 0 and C >= 1");
  }
};

/// Certified enclosure of sum_I (|I|!)^R C^|I| |a_I| over (degree,
/// coefficient) pairs. Exact whenever R is an integer and all coefficients
/// are real or purely imaginary.
inline QInterval seminorm_terms(const std::vector<std::pair<unsigned, GaussRat>> &terms,
                                const SeminormParams &sp, unsigned bits = 96) {
  QInterval total(Rat(0));
  for (auto &[deg, coeff] : terms) {
    QInterval mag = abs_enclosure(coeff, bits);
    QInterval fac = factorial_pow(deg, sp.R, bits);
    Rat cpow(1);
    for (unsigned k = 0; k < deg; ++k)
      cpow *= sp.C;
    total += mag * fac * QInterval(cpow);
  }
  return total;
}

namespace detail {

inline GaussRat constant_coeff(const Scalar &c) {
  if (!c.is_constant())
    throw MathError(MathError::Code::NotConstant,
                    "seminorm requires constant coefficients; evaluate at a numeric h first");
  return c.constant();
}

} // namespace detail

inline QInterval seminorm(const FreePoly &p, const SeminormParams &sp, unsigned bits = 96) {
  std::vector<std::pair<unsigned, GaussRat>> terms;
  terms.reserve(p.terms().size());
  for (auto &[m, c] : p.terms())
    terms.push_back({m.degree(), detail::constant_coeff(c)});
  return seminorm_terms(terms, sp, bits);
}

inline QInterval seminorm(const AbcPoly &p, const SeminormParams &sp, unsigned bits = 96) {
  std::vector<std::pair<unsigned, GaussRat>> terms;
  terms.reserve(p.terms().size());
  for (auto &[m, c] : p.terms())
    terms.push_back({m.degree(), detail::constant_coeff(c)});
  return seminorm_terms(terms, sp, bits);
}

/// Certified constants of the falling-factorial bound on a disc D_r(z0)
/// avoiding the naturals:
///   delta! C_-^delta <= |z (z-1) ... (z-delta+1)| <= delta! C_+^delta
/// for all z in the disc and delta <= delta_max.
struct DiscConstants {
  GaussRat center;
  Rat radius;
  unsigned delta_max;
  QInterval c_minus;
  QInterval c_plus;

  /// The certified lower bound actually used in estimates.
  const Rat &c_minus_lb() const { return c_minus.lo; }
};

inline DiscConstants disc_constants(const GaussRat &z0, const Rat &r, unsigned delta_max,
                                    unsigned bits = 96) {
  if (delta_max < 1)
    throw MathError(MathError::Code::InvalidArgument, "delta_max must be >= 1");
  // The disc must stay clear of every natural number it can see.
  for (unsigned j = 0; j < delta_max; ++j) {
    GaussRat diff = z0 - GaussRat(Rat(static_cast<long>(j)));
    if (diff.norm() <= r * r)
      throw MathError(MathError::Code::DiscTouchesNaturals,
                      "disc touches " + std::to_string(j));
  }
  QInterval cm, cp;
  bool first = true;
  Rat prod_lo(1), prod_hi(1);
  for (unsigned delta = 1; delta <= delta_max; ++delta) {
    unsigned j = delta - 1;
    GaussRat diff = z0 - GaussRat(Rat(static_cast<long>(j)));
    QInterval dist = abs_enclosure(diff, bits);
    Rat lo = dist.lo - r;
    Rat hi = dist.hi + r;
    if (lo <= 0)
      throw MathError(MathError::Code::Inconclusive,
                      "disc margin too small at this precision");
    prod_lo *= lo;
    prod_hi *= hi;
    Rat fac = factorial_rat(delta);
    QInterval m_lo = nth_root_enclosure(prod_lo / fac, delta, bits);
    QInterval m_hi = nth_root_enclosure(prod_hi / fac, delta, bits);
    if (first) {
      cm = m_lo;
      cp = m_hi;
      first = false;
    } else {
      cm = QInterval(std::min(cm.lo, m_lo.lo), std::min(cm.hi, m_lo.hi));
      cp = QInterval(std::max(cp.lo, m_hi.lo), std::max(cp.hi, m_hi.hi));
    }
  }
  return DiscConstants{z0, r, delta_max, cm, cp};
}

/// The twist applied on the free algebra without quotient reduction; descends
/// to the star product under reduce_sphere.
inline FreePoly lift_star(const FreePoly &p, const FreePoly &q, const StarConfig &cfg) {
  return detail::apply_twist(p, q, cfg);
}

/// Honest per-pair certified upper bound of the continuity chain:
/// sum_n |c_n|-bound * seminorm(Y~^n p * X~^n q), with |c_n| <= 1/((n!)^2 cm^n).
inline QInterval continuity_lhs_bound(const FreePoly &p, const FreePoly &q,
                                      const SeminormParams &sp, const Rat &c_minus_lb,
                                      unsigned bits = 96) {
  QInterval total(Rat(0));
  FreePoly yp = p, xq = q;
  unsigned order = std::min(p.degree(), q.degree());
  for (unsigned n = 0; n <= order; ++n) {
    if (n > 0) {
      yp = leftinv(Gen::Y, yp);
      xq = leftinv(Gen::X, xq);
      if (yp.is_zero() || xq.is_zero())
        break;
    }
    Rat fac = factorial_rat(n);
    Rat cn_bound(1);
    cn_bound /= fac * fac;
    for (unsigned k = 0; k < n; ++k)
      cn_bound /= c_minus_lb;
    total += seminorm(yp * xq, sp, bits).scaled(cn_bound);
  }
  return total;
}

/// Verification record for one equivalence class of monomial pairs. The
/// certified bound depends on a monomial only through (degree, #unbarred)
/// on the left and (degree, #barred) on the right, so one check covers the
/// whole class; pair_count says how many pairs it certifies.
struct ContinuityEntry {
  unsigned d1, unbarred1, d2, barred2;
  Rat lhs_ub;
  Rat rhs_lb;
  bool pass;
  unsigned long long pair_count;
};

struct ContinuityReport {
  unsigned degree;
  SeminormParams sp;
  Rat c_minus_used;
  /// The proof constant C' = 2^(2+R) C / C_-; lower bound of its enclosure.
  Rat c_prime_lb;
  unsigned long long pairs_covered = 0;
  std::size_t classes_checked = 0;
  bool all_pass = true;
  std::vector<ContinuityEntry> failures;
  std::optional<ContinuityEntry> worst; // largest lhs/rhs ratio
  std::vector<ContinuityEntry> entries; // every class, in scan order
};

/// Certified verification of the continuity estimate
///   (C ||.||)_R (p lift* q)  <=  (C' ||.||)_R (p) (C' ||.||)_R (q)
/// for all monomial pairs with both degrees <= D, against the disc bound on
/// lambda/h. All quantities are rational once R is an integer; rational R
/// goes through outward-rounded enclosures.
inline ContinuityReport continuity_report(unsigned D, const SeminormParams &sp,
                                          const DiscConstants &disc, unsigned bits = 96) {
  if (disc.delta_max < D)
    throw MathError(MathError::Code::InvalidArgument,
                    "disc constants certified below the requested degree");
  ContinuityReport rep;
  rep.degree = D;
  rep.sp = sp;
  rep.c_minus_used = disc.c_minus_lb();
  QInterval two_pow = pow_enclosure(Rat(2), sp.R + 2, bits);
  QInterval c_prime = two_pow * QInterval(sp.C / rep.c_minus_used);
  rep.c_prime_lb = c_prime.lo;

  // Falling factorials [x]_n for x, n <= D.
  std::vector<std::vector<Rat>> falling(D + 1, std::vector<Rat>(D + 1, Rat(0)));
  for (unsigned x = 0; x <= D; ++x) {
    falling[x][0] = 1;
    for (unsigned n = 1; n <= D; ++n)
      falling[x][n] = n <= x ? falling[x][n - 1] * Rat(static_cast<long>(x - n + 1)) : Rat(0);
  }
  // (C' ||.||)_R of a degree-d monomial: (d!)^R C'^d, as enclosures.
  std::vector<QInterval> rhs_mono(D + 1);
  std::vector<QInterval> fac_pow(2 * D + 1);
  for (unsigned d = 0; d <= 2 * D; ++d)
    fac_pow[d] = factorial_pow(d, sp.R, bits);
  for (unsigned d = 0; d <= D; ++d) {
    QInterval cp(Rat(1));
    for (unsigned k = 0; k < d; ++k)
      cp *= c_prime;
    rhs_mono[d] = fac_pow[d] * cp;
  }
  std::vector<Rat> cpow(2 * D + 1);
  cpow[0] = 1;
  for (unsigned d = 1; d <= 2 * D; ++d)
    cpow[d] = cpow[d - 1] * sp.C;

  for (unsigned d1 = 0; d1 <= D; ++d1)
    for (unsigned u1 = 0; u1 <= d1; ++u1)
      for (unsigned d2 = 0; d2 <= D; ++d2)
        for (unsigned w2 = 0; w2 <= d2; ++w2) {
          unsigned long long count =
              static_cast<unsigned long long>(u1 + 1) * (d1 - u1 + 1) * (w2 + 1) *
              (d2 - w2 + 1);
          // LHS chain: sum_n [u1]_n [w2]_n / ((n!)^2 cm^n) * ((d1+d2)!)^R C^(d1+d2).
          Rat series(0);
          Rat cm_pow(1);
          unsigned nmax = std::min(d1, d2);
          for (unsigned n = 0; n <= nmax; ++n) {
            Rat fac = factorial_rat(n);
            series += falling[u1][n] * falling[w2][n] / (fac * fac * cm_pow);
            cm_pow *= rep.c_minus_used;
          }
          QInterval lhs = fac_pow[d1 + d2] * QInterval(series * cpow[d1 + d2]);
          QInterval rhs = rhs_mono[d1] * rhs_mono[d2];
          ContinuityEntry e{d1, u1, d2, w2, lhs.hi, rhs.lo,
                            certified_le(lhs, rhs) == CertifiedCompare::True, count};
          rep.pairs_covered += count;
          ++rep.classes_checked;
          if (!e.pass) {
            rep.all_pass = false;
            rep.failures.push_back(e);
          }
          if (e.rhs_lb > 0) {
            if (!rep.worst ||
                e.lhs_ub * rep.worst->rhs_lb > rep.worst->lhs_ub * e.rhs_lb)
              rep.worst = e;
          }
          rep.entries.push_back(e);
        }
  return rep;
}

/// One verified estimate of the quotient/reduction topology equivalence.
struct QuotEquivEntry {
  std::string monomial;
  Rat lhs_ub;
  Rat rhs_lb;
  bool pass;
};

struct QuotEquivReport {
  unsigned degree;
  Rat R, C;
  bool all_pass = true;
  std::size_t checked_f = 0, checked_g = 0;
  std::vector<QuotEquivEntry> failures;
  std::vector<QuotEquivEntry> entries;
};

/// Verifies, on monomials up to degree D, the two continuity estimates of
/// the maps f: Sym(W) -> P^inv and g: P^inv -> Sym(W):
///   (C ||.||)_R (f(m))   <= (2^(2R+1) C^2 ||.||')_{2R} (m)
///   (C ||.||')_{2R}(g(m')) <= (C^(1/2) ||.||)_R (m')
inline QuotEquivReport quot_equivalence_report(unsigned D, const Rat &C, const Rat &R,
                                               unsigned bits = 96) {
  if (C < 1)
    throw MathError(MathError::Code::InvalidArgument, "C must be >= 1");
  QuotEquivReport rep;
  rep.degree = D;
  rep.R = R;
  rep.C = C;
  SeminormParams sp_free(R, C, SeminormBasis::FourGen);
  SeminormParams sp_abc_2r(R * 2, C, SeminormBasis::ThreeGenABC);

  auto record = [&rep](std::string name, const QInterval &lhs, const QInterval &rhs) {
    QuotEquivEntry e{std::move(name), lhs.hi, rhs.lo,
                     certified_le(lhs, rhs) == CertifiedCompare::True};
    if (!e.pass) {
      rep.all_pass = false;
      rep.failures.push_back(e);
    }
    rep.entries.push_back(e);
  };

  // Estimate for f over all ABC monomials (A-power unrestricted).
  QInterval big = pow_enclosure(Rat(2), R * 2 + 1, bits) * QInterval(C * C);
  for (unsigned d = 0; d <= D; ++d)
    for (unsigned ea = 0; ea <= d; ++ea)
      for (unsigned eb = 0; ea + eb <= d; ++eb) {
        MonoAbc m{ea, eb, d - ea - eb};
        FreePoly fm = quot_map_f(AbcPoly::monomial(m));
        QInterval lhs = seminorm(fm, sp_free, bits);
        QInterval rhs = factorial_pow(d, R * 2, bits);
        for (unsigned k = 0; k < d; ++k)
          rhs *= big;
        record("f(" + mono_to_string(m) + ")", lhs, rhs);
        ++rep.checked_f;
      }

  // Estimate for g over right-invariant four-generator monomials.
  for (unsigned d = 0; d <= D; d += 2)
    for (unsigned eu = 0; eu <= d; ++eu)
      for (unsigned eub = 0; eu + eub <= d; ++eub)
        for (unsigned ev = 0; eu + eub + ev <= d; ++ev) {
          Mono4 m{eu, eub, ev, d - eu - eub - ev};
          if (!m.right_invariant())
            continue;
          AbcPoly gm = quot_map_g(FreePoly::monomial(m));
          QInterval lhs = seminorm(gm, sp_abc_2r, bits);
          QInterval rhs = factorial_pow(d, R, bits) * pow_enclosure(C, Rat(d, 2), bits);
          record("g(" + mono_to_string(m) + ")", lhs, rhs);
          ++rep.checked_g;
        }
  return rep;
}

/// Numeric evaluations of (p *_h q)(x) must match the exact symbolic rational
/// function bit for bit; the probe certifies rationality and pole placement.
struct HolomorphyProbe {
  Scalar symbolic_value;
  Scalar::PoleReport value_poles;
  std::vector<std::pair<GaussRat, bool>> samples;
  bool all_match = true;
};

inline HolomorphyProbe holomorphy_probe(const InvariantPoly &p, const InvariantPoly &q,
                                        const GroupElement &x, const GaussRat &disc_center,
                                        const Rat &disc_radius, unsigned samples,
                                        const OrbitParams &params) {
  StarConfig sym_cfg(params);
  InvariantPoly prod = star(p, q, sym_cfg);
  Scalar value = Scalar::zero();
  {
    GaussRat a = GaussRat(Rat(x.u.norm() - x.v.norm()));
    GaussRat b = x.u.conj() * x.v;
    GaussRat c = x.u * x.v.conj();
    for (auto &[m, coeff] : prod.poly.terms()) {
      GaussRat mono(1);
      for (unsigned i = 0; i < m.ea; ++i)
        mono *= a;
      for (unsigned i = 0; i < m.eb; ++i)
        mono *= b;
      for (unsigned i = 0; i < m.ec; ++i)
        mono *= c;
      value += Scalar(mono) * coeff;
    }
  }
  HolomorphyProbe probe;
  probe.symbolic_value = value;
  probe.value_poles = value.poles();
  // Deterministic interior points center + r(2j - n)/n; refine the grid until
  // enough of them dodge the finitely many poles.
  unsigned found = 0;
  std::set<std::pair<Rat, Rat>> seen;
  for (unsigned den = samples + 1; found < samples && den < 64 * (samples + 2);
       den = 2 * den + 1) {
    for (unsigned j = 1; j < den && found < samples; ++j) {
      Rat offset = disc_radius * Rat(2 * static_cast<long>(j) - static_cast<long>(den),
                                     static_cast<long>(den));
      offset.canonicalize();
      GaussRat hv = disc_center + GaussRat(offset);
      if (!seen.insert({hv.re, hv.im}).second)
        continue;
      try {
        StarConfig num_cfg(params, hv);
        InvariantPoly at_h = star(p, q, num_cfg);
        GaussRat lhs = evaluate(at_h, x);
        GaussRat rhs = value.eval(hv);
        bool match = (lhs == rhs);
        probe.samples.push_back({hv, match});
        probe.all_match = probe.all_match && match;
        ++found;
      } catch (const MathError &) {
        continue; // pole hit; take the next grid point
      }
    }
  }
  return probe;
}

} // namespace s2star
