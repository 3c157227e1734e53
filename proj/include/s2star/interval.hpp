#pragma once

#include <algorithm>
#include <cassert>
#include <ostream>

#include "s2star/gaussrat.hpp"

namespace s2star {

/// Closed rational interval [lo, hi] enclosing a real number. All derived
/// quantities round outward, so containment of the true value is preserved.
struct QInterval {
  Rat lo, hi;

  QInterval() : lo(0), hi(0) {}
  explicit QInterval(Rat v) : lo(v), hi(std::move(v)) {}
  QInterval(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) { assert(lo <= hi); }

  static QInterval point(const Rat &v) { return QInterval(v); }

  bool is_point() const { return lo == hi; }

  friend QInterval operator+(const QInterval &a, const QInterval &b) {
    return QInterval(a.lo + b.lo, a.hi + b.hi);
  }
  friend QInterval operator-(const QInterval &a, const QInterval &b) {
    return QInterval(a.lo - b.hi, a.hi - b.lo);
  }
  friend QInterval operator*(const QInterval &a, const QInterval &b) {
    Rat p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
    return QInterval(std::min(std::min(p1, p2), std::min(p3, p4)),
                     std::max(std::max(p1, p2), std::max(p3, p4)));
  }
  QInterval &operator+=(const QInterval &b) { return *this = *this + b; }
  QInterval &operator*=(const QInterval &b) { return *this = *this * b; }

  /// Reciprocal; requires the interval to exclude zero.
  QInterval reciprocal() const {
    assert(lo > 0 || hi < 0);
    return QInterval(Rat(1) / hi, Rat(1) / lo);
  }

  QInterval scaled(const Rat &c) const {
    if (c >= 0)
      return QInterval(lo * c, hi * c);
    return QInterval(hi * c, lo * c);
  }
};

/// Certified comparison outcomes. Overlapping intervals are inconclusive and
/// call for precision escalation, not failure.
enum class CertifiedCompare { True, False, Inconclusive };

inline CertifiedCompare certified_le(const QInterval &a, const QInterval &b) {
  if (a.hi <= b.lo)
    return CertifiedCompare::True;
  if (a.lo > b.hi)
    return CertifiedCompare::False;
  return CertifiedCompare::Inconclusive;
}

/// Enclosure of sqrt(x) for x >= 0 with width <= 2^-bits relative scale.
inline QInterval sqrt_enclosure(const Rat &x, unsigned bits = 96) {
  assert(x >= 0);
  if (x == 0)
    return QInterval(Rat(0));
  // sqrt(p/q) = sqrt(p*q)/q; scale by 4^bits so the integer sqrt carries
  // the requested precision.
  Int p = x.get_num(), q = x.get_den();
  Int scaled = p * q;
  mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), 2 * bits);
  Int root;
  mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
  Int denom = q;
  mpz_mul_2exp(denom.get_mpz_t(), denom.get_mpz_t(), bits);
  Rat lo(root, denom), hi(root + 1, denom);
  lo.canonicalize();
  hi.canonicalize();
  return QInterval(lo, hi);
}

/// Enclosure of x^(1/n) for x >= 0, n >= 1.
inline QInterval nth_root_enclosure(const Rat &x, unsigned long n, unsigned bits = 96) {
  assert(x >= 0 && n >= 1);
  if (n == 1)
    return QInterval(x);
  if (x == 0)
    return QInterval(Rat(0));
  // (p/q)^(1/n) = (p*q^(n-1))^(1/n) / q.
  Int p = x.get_num(), q = x.get_den();
  Int inner = p;
  for (unsigned long k = 0; k + 1 < n; ++k)
    inner *= q;
  mpz_mul_2exp(inner.get_mpz_t(), inner.get_mpz_t(), n * bits);
  Int root;
  mpz_root(root.get_mpz_t(), inner.get_mpz_t(), n);
  Int denom = q;
  mpz_mul_2exp(denom.get_mpz_t(), denom.get_mpz_t(), bits);
  Rat lo(root, denom), hi(root + 1, denom);
  lo.canonicalize();
  hi.canonicalize();
  return QInterval(lo, hi);
}

/// Enclosure of |z| for z in Q(i). Exact when z is real or purely imaginary.
inline QInterval abs_enclosure(const GaussRat &z, unsigned bits = 96) {
  if (z.im == 0)
    return QInterval(abs(z.re));
  if (z.re == 0)
    return QInterval(abs(z.im));
  return sqrt_enclosure(z.norm(), bits);
}

/// Enclosure of base^e for base > 0 and rational exponent e >= 0.
inline QInterval pow_enclosure(const Rat &base, const Rat &e, unsigned bits = 96) {
  assert(base > 0 && e >= 0);
  Int p = e.get_num(), q = e.get_den();
  // base^p exactly, then the q-th root.
  unsigned long pe = mpz_get_ui(p.get_mpz_t());
  Int n, d;
  mpz_pow_ui(n.get_mpz_t(), base.get_num().get_mpz_t(), pe);
  mpz_pow_ui(d.get_mpz_t(), base.get_den().get_mpz_t(), pe);
  Rat powed(n, d);
  powed.canonicalize();
  if (q == 1)
    return QInterval(powed);
  return nth_root_enclosure(powed, mpz_get_ui(q.get_mpz_t()), bits);
}

/// (n!)^R for rational R >= 0; exact point interval when R is an integer.
inline QInterval factorial_pow(unsigned long n, const Rat &R, unsigned bits = 96) {
  return pow_enclosure(factorial_rat(n), R, bits);
}

inline std::ostream &operator<<(std::ostream &os, const QInterval &iv) {
  return os << "[" << rat_to_string(iv.lo) << ", " << rat_to_string(iv.hi) << "]";
}

} // namespace s2star
