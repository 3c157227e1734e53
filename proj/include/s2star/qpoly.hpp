#pragma once

#include <algorithm>
#include <cassert>
#include <ostream>
#include <utility>
#include <vector>

#include "s2star/gaussrat.hpp"

namespace s2star {

/// Dense univariate polynomial over Q(i), coefficient k = coefficient of h^k.
/// Zero is the empty coefficient list. Degrees stay small here, so the dense
/// representation is the right trade.
class QPoly {
public:
  QPoly() = default;
  explicit QPoly(GaussRat c) {
    if (!c.is_zero())
      c_.push_back(std::move(c));
  }
  explicit QPoly(std::vector<GaussRat> coeffs) : c_(std::move(coeffs)) { trim(); }

  static QPoly zero() { return QPoly(); }
  static QPoly one() { return QPoly(GaussRat(1)); }
  /// The variable h itself.
  static QPoly var() { return monomial(GaussRat(1), 1); }
  static QPoly monomial(GaussRat c, std::size_t k) {
    QPoly p;
    if (!c.is_zero()) {
      p.c_.assign(k + 1, GaussRat());
      p.c_[k] = std::move(c);
    }
    return p;
  }

  bool is_zero() const { return c_.empty(); }
  /// Degree of the zero polynomial is -1 by convention.
  long degree() const { return static_cast<long>(c_.size()) - 1; }

  const std::vector<GaussRat> &coeffs() const { return c_; }
  GaussRat coeff(std::size_t k) const { return k < c_.size() ? c_[k] : GaussRat(); }
  const GaussRat &lead() const {
    assert(!c_.empty());
    return c_.back();
  }

  bool is_constant() const { return c_.size() <= 1; }
  GaussRat constant() const { return coeff(0); }

  QPoly operator-() const {
    QPoly r(*this);
    for (auto &x : r.c_)
      x = -x;
    return r;
  }

  friend QPoly operator+(const QPoly &a, const QPoly &b) {
    QPoly r;
    r.c_.resize(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t k = 0; k < r.c_.size(); ++k)
      r.c_[k] = a.coeff(k) + b.coeff(k);
    r.trim();
    return r;
  }
  friend QPoly operator-(const QPoly &a, const QPoly &b) { return a + (-b); }
  friend QPoly operator*(const QPoly &a, const QPoly &b) {
    if (a.is_zero() || b.is_zero())
      return QPoly();
    QPoly r;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, GaussRat());
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero())
        continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j)
        r.c_[i + j] += a.c_[i] * b.c_[j];
    }
    r.trim();
    return r;
  }
  QPoly &operator+=(const QPoly &b) { return *this = *this + b; }
  QPoly &operator-=(const QPoly &b) { return *this = *this - b; }
  QPoly &operator*=(const QPoly &b) { return *this = *this * b; }

  friend bool operator==(const QPoly &a, const QPoly &b) { return a.c_ == b.c_; }
  friend bool operator!=(const QPoly &a, const QPoly &b) { return !(a == b); }

  QPoly scaled(const GaussRat &s) const {
    if (s.is_zero())
      return QPoly();
    QPoly r(*this);
    for (auto &x : r.c_)
      x *= s;
    return r;
  }

  /// Euclidean division; the divisor must be nonzero.
  static std::pair<QPoly, QPoly> divmod(const QPoly &a, const QPoly &b) {
    assert(!b.is_zero());
    QPoly q, r(a);
    GaussRat lead_inv = b.lead().inverse();
    while (!r.is_zero() && r.degree() >= b.degree()) {
      std::size_t shift = static_cast<std::size_t>(r.degree() - b.degree());
      GaussRat f = r.lead() * lead_inv;
      q += monomial(f, shift);
      r -= b * monomial(f, shift);
    }
    return {q, r};
  }

  friend QPoly operator/(const QPoly &a, const QPoly &b) { return divmod(a, b).first; }
  friend QPoly operator%(const QPoly &a, const QPoly &b) { return divmod(a, b).second; }

  bool divides(const QPoly &a) const { return (a % *this).is_zero(); }

  QPoly monic() const {
    if (is_zero())
      return *this;
    return scaled(lead().inverse());
  }

  /// Monic gcd over the field Q(i).
  static QPoly gcd(QPoly a, QPoly b) {
    while (!b.is_zero()) {
      QPoly r = a % b;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

  QPoly derivative() const {
    QPoly r;
    if (c_.size() <= 1)
      return r;
    r.c_.resize(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k)
      r.c_[k - 1] = c_[k] * GaussRat(Rat(static_cast<long>(k)));
    r.trim();
    return r;
  }

  GaussRat eval(const GaussRat &x) const {
    GaussRat v;
    for (std::size_t k = c_.size(); k-- > 0;)
      v = v * x + c_[k];
    return v;
  }

  QPoly pow(unsigned e) const {
    QPoly r = one();
    QPoly base(*this);
    while (e) {
      if (e & 1u)
        r *= base;
      base *= base;
      e >>= 1u;
    }
    return r;
  }

  QPoly conj_coeffs() const {
    QPoly r(*this);
    for (auto &x : r.c_)
      x = x.conj();
    return r;
  }

private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero())
      c_.pop_back();
  }

  std::vector<GaussRat> c_;
};

/// Canonical polynomial text: ascending powers, explicit coefficients,
/// complex coefficients parenthesized. "0" for the zero polynomial.
inline std::string to_string(const QPoly &p) {
  if (p.is_zero())
    return "0";
  std::string out;
  bool first = true;
  for (std::size_t k = 0; k < static_cast<std::size_t>(p.degree()) + 1; ++k) {
    GaussRat c = p.coeff(k);
    if (c.is_zero())
      continue;
    std::string cs;
    bool negated = false;
    if (c.is_real()) {
      if (!first && c.re < 0) {
        negated = true;
        c = -c;
      }
      cs = to_string(c);
    } else {
      cs = "(" + to_string(c) + ")";
    }
    std::string term;
    if (k == 0)
      term = cs;
    else if (k == 1)
      term = cs + "*h";
    else
      term = cs + "*h^" + std::to_string(k);
    if (first) {
      out = term;
      first = false;
    } else {
      out += (negated ? " - " : " + ") + term;
    }
  }
  return out;
}

inline std::ostream &operator<<(std::ostream &os, const QPoly &p) {
  return os << to_string(p);
}

} // namespace s2star
