#pragma once

#include <compare>
#include <map>
#include <vector>

#include "s2star/group.hpp"
#include "s2star/pbw.hpp"
#include "s2star/scalar.hpp"

namespace s2star {

/// Monomial U^eu Ubar^eub V^ev Vbar^evb in the free commutative algebra on
/// the four coordinate functions of SU(2).
struct Mono4 {
  unsigned eu = 0, eub = 0, ev = 0, evb = 0;

  friend auto operator<=>(const Mono4 &, const Mono4 &) = default;

  unsigned degree() const { return eu + eub + ev + evb; }
  /// Number of unbarred generators.
  unsigned k_up() const { return eu + ev; }
  /// Number of barred generators.
  unsigned k_down() const { return eub + evb; }
  bool right_invariant() const { return k_up() == k_down(); }
};

class FreePoly {
public:
  FreePoly() = default;

  static FreePoly zero() { return FreePoly(); }
  static FreePoly one() { return monomial(Mono4{}); }
  static FreePoly monomial(Mono4 m, Scalar c = Scalar::one()) {
    FreePoly p;
    if (!c.is_zero())
      p.t_[m] = std::move(c);
    return p;
  }
  static FreePoly U() { return monomial(Mono4{1, 0, 0, 0}); }
  static FreePoly Ubar() { return monomial(Mono4{0, 1, 0, 0}); }
  static FreePoly V() { return monomial(Mono4{0, 0, 1, 0}); }
  static FreePoly Vbar() { return monomial(Mono4{0, 0, 0, 1}); }

  const std::map<Mono4, Scalar> &terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }

  unsigned degree() const {
    unsigned d = 0;
    for (auto &[m, c] : t_)
      d = std::max(d, m.degree());
    return d;
  }

  void add_term(const Mono4 &m, const Scalar &c) {
    if (c.is_zero())
      return;
    auto it = t_.find(m);
    if (it == t_.end()) {
      t_.emplace(m, c);
    } else {
      it->second += c;
      if (it->second.is_zero())
        t_.erase(it);
    }
  }

  FreePoly operator-() const {
    FreePoly r;
    for (auto &[m, c] : t_)
      r.t_.emplace(m, -c);
    return r;
  }
  friend FreePoly operator+(const FreePoly &a, const FreePoly &b) {
    FreePoly r(a);
    for (auto &[m, c] : b.t_)
      r.add_term(m, c);
    return r;
  }
  friend FreePoly operator-(const FreePoly &a, const FreePoly &b) { return a + (-b); }
  friend FreePoly operator*(const FreePoly &a, const FreePoly &b) {
    FreePoly r;
    for (auto &[ma, ca] : a.t_)
      for (auto &[mb, cb] : b.t_)
        r.add_term(Mono4{ma.eu + mb.eu, ma.eub + mb.eub, ma.ev + mb.ev,
                         ma.evb + mb.evb},
                   ca * cb);
    return r;
  }
  FreePoly &operator+=(const FreePoly &b) { return *this = *this + b; }
  FreePoly &operator-=(const FreePoly &b) { return *this = *this - b; }
  FreePoly &operator*=(const FreePoly &b) { return *this = *this * b; }

  FreePoly scaled(const Scalar &s) const {
    FreePoly r;
    if (s.is_zero())
      return r;
    for (auto &[m, c] : t_)
      r.t_.emplace(m, c * s);
    return r;
  }

  FreePoly pow(unsigned e) const {
    FreePoly r = one();
    for (unsigned i = 0; i < e; ++i)
      r *= *this;
    return r;
  }

  friend bool operator==(const FreePoly &a, const FreePoly &b) { return a.t_ == b.t_; }
  friend bool operator!=(const FreePoly &a, const FreePoly &b) { return !(a == b); }

  /// Complex conjugation of the function: swaps U <-> Ubar, V <-> Vbar and
  /// conjugates coefficients.
  FreePoly conj() const {
    FreePoly r;
    for (auto &[m, c] : t_)
      r.add_term(Mono4{m.eub, m.eu, m.evb, m.ev}, c.conj_coeffs());
    return r;
  }

private:
  std::map<Mono4, Scalar> t_;
};

inline bool is_right_invariant(const FreePoly &p) {
  for (auto &[m, c] : p.terms())
    if (!m.right_invariant())
      return false;
  return true;
}

/// Left-invariant derivations: the generator tables are
///   X~: U -> 0,  V -> 0,  Ubar -> V,  Vbar -> -U
///   Y~: U -> -Vbar,  V -> Ubar,  Ubar -> 0,  Vbar -> 0
/// extended by the Leibniz rule.
inline FreePoly leftinv(Gen z, const FreePoly &p) {
  if (z == Gen::H)
    throw MathError(MathError::Code::InvalidArgument,
                    "leftinv is defined for X and Y only");
  FreePoly r;
  for (auto &[m, c] : p.terms()) {
    if (z == Gen::X) {
      if (m.eub >= 1)
        r.add_term(Mono4{m.eu, m.eub - 1, m.ev + 1, m.evb},
                   c * Scalar(Rat(m.eub)));
      if (m.evb >= 1)
        r.add_term(Mono4{m.eu + 1, m.eub, m.ev, m.evb - 1},
                   c * Scalar(Rat(-static_cast<long>(m.evb))));
    } else {
      if (m.eu >= 1)
        r.add_term(Mono4{m.eu - 1, m.eub, m.ev, m.evb + 1},
                   c * Scalar(Rat(-static_cast<long>(m.eu))));
      if (m.ev >= 1)
        r.add_term(Mono4{m.eu, m.eub + 1, m.ev - 1, m.evb},
                   c * Scalar(Rat(m.ev)));
    }
  }
  return r;
}

/// Normal form modulo U Ubar + V Vbar = 1: no monomial carries both a U and
/// a Ubar. Wrapper type records that the representative is reduced.
struct SpherePoly {
  FreePoly poly;

  bool is_zero() const { return poly.is_zero(); }
  unsigned degree() const { return poly.degree(); }
  friend bool operator==(const SpherePoly &a, const SpherePoly &b) {
    return a.poly == b.poly;
  }
  friend bool operator!=(const SpherePoly &a, const SpherePoly &b) { return !(a == b); }
};

/// Unique remainder under the confluent rewrite U Ubar -> 1 - V Vbar.
/// Closed form per monomial: with k = min(eu, eub),
/// (U Ubar)^k rest -> sum_j C(k,j) (-1)^j (V Vbar)^j rest.
inline SpherePoly reduce_sphere(const FreePoly &p) {
  FreePoly out;
  for (auto &[m, c] : p.terms()) {
    unsigned k = std::min(m.eu, m.eub);
    if (k == 0) {
      out.add_term(m, c);
      continue;
    }
    Mono4 rest{m.eu - k, m.eub - k, m.ev, m.evb};
    Int binom;
    for (unsigned j = 0; j <= k; ++j) {
      mpz_bin_uiui(binom.get_mpz_t(), k, j);
      Rat coeff(binom);
      if (j % 2)
        coeff = -coeff;
      out.add_term(Mono4{rest.eu, rest.eub, rest.ev + j, rest.evb + j},
                   c * Scalar(coeff));
    }
  }
  return SpherePoly{out};
}

/// One left-to-right rewrite step, used by the confluence tests to reduce in
/// arbitrary order.
inline bool rewrite_sphere_step(FreePoly &p, const Mono4 &which) {
  auto it = p.terms().find(which);
  if (it == p.terms().end() || which.eu == 0 || which.eub == 0)
    return false;
  Scalar c = it->second;
  FreePoly repl;
  repl.add_term(Mono4{which.eu - 1, which.eub - 1, which.ev, which.evb}, c);
  repl.add_term(Mono4{which.eu - 1, which.eub - 1, which.ev + 1, which.evb + 1}, -c);
  p.add_term(which, -c);
  p += repl;
  return true;
}

/// Left translation action (k |> f)(g) = f(k^{-1} g): the linear generator
/// substitution induced by the first column of k^{-1} g.
inline FreePoly group_action(const GroupElement &k, const FreePoly &p) {
  GroupElement ki = k.inverse();
  // (k |> U)(g) = (k^{-1} g)_11 = ki_11 U(g) + ki_12 V(g), and similarly for
  // the other entries of the first column; barred generators by conjugation.
  auto m = ki.matrix();
  FreePoly img_u = FreePoly::U().scaled(Scalar(m[0])) + FreePoly::V().scaled(Scalar(m[1]));
  FreePoly img_v = FreePoly::U().scaled(Scalar(m[2])) + FreePoly::V().scaled(Scalar(m[3]));
  FreePoly img_ub =
      FreePoly::Ubar().scaled(Scalar(m[0].conj())) + FreePoly::Vbar().scaled(Scalar(m[1].conj()));
  FreePoly img_vb =
      FreePoly::Ubar().scaled(Scalar(m[2].conj())) + FreePoly::Vbar().scaled(Scalar(m[3].conj()));
  // Image powers are shared across monomials.
  auto powers_of = [&p](const FreePoly &base, unsigned Mono4::*field) {
    unsigned max = 0;
    for (auto &[mono, c] : p.terms())
      max = std::max(max, mono.*field);
    std::vector<FreePoly> pows{FreePoly::one()};
    for (unsigned e = 1; e <= max; ++e)
      pows.push_back(pows.back() * base);
    return pows;
  };
  auto pu = powers_of(img_u, &Mono4::eu), pub = powers_of(img_ub, &Mono4::eub);
  auto pv = powers_of(img_v, &Mono4::ev), pvb = powers_of(img_vb, &Mono4::evb);
  FreePoly out;
  for (auto &[mono, c] : p.terms()) {
    FreePoly term = pu[mono.eu] * pub[mono.eub];
    term *= pv[mono.ev];
    term *= pvb[mono.evb];
    out += term.scaled(c);
  }
  return out;
}

/// Exact evaluation at the point psi(k). Coefficients depending on h require
/// a numeric value that is not one of their poles.
inline GaussRat evaluate(const FreePoly &p, const GroupElement &k,
                         const std::optional<GaussRat> &h = std::nullopt) {
  GaussRat out;
  GaussRat uc = k.u.conj(), vc = k.v.conj();
  for (auto &[m, c] : p.terms()) {
    GaussRat cv;
    if (c.is_constant())
      cv = c.constant();
    else if (h)
      cv = c.eval(*h);
    else
      throw MathError(MathError::Code::NotConstant,
                      "evaluation requires a numeric h for h-dependent coefficients");
    GaussRat mono(1);
    for (unsigned i = 0; i < m.eu; ++i)
      mono *= k.u;
    for (unsigned i = 0; i < m.eub; ++i)
      mono *= uc;
    for (unsigned i = 0; i < m.ev; ++i)
      mono *= k.v;
    for (unsigned i = 0; i < m.evb; ++i)
      mono *= vc;
    out += cv * mono;
  }
  return out;
}

/// Canonical monomial text for the four-generator algebra.
inline std::string mono_to_string(const Mono4 &m) {
  std::string s;
  auto app = [&s](const char *name, unsigned e) {
    if (!e)
      return;
    if (!s.empty())
      s += "*";
    s += name;
    if (e > 1)
      s += "^" + std::to_string(e);
  };
  app("U", m.eu);
  app("Ubar", m.eub);
  app("V", m.ev);
  app("Vbar", m.evb);
  return s;
}

inline std::string to_string(const FreePoly &p) {
  if (p.is_zero())
    return "(0)/(1)";
  std::string out;
  for (auto &[m, c] : p.terms()) {
    if (!out.empty())
      out += " + ";
    out += to_string(c);
    std::string ms = mono_to_string(m);
    if (!ms.empty())
      out += "*" + ms;
  }
  return out;
}

inline std::string to_string(const SpherePoly &p) { return to_string(p.poly); }

} // namespace s2star
