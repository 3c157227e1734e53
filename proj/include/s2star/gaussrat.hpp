#pragma once

#include <gmpxx.h>

#include <ostream>
#include <sstream>
#include <string>

#include "s2star/errors.hpp"

namespace s2star {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

/// Element of Q(i): exact Gaussian rational. mpq_class keeps both parts in
/// lowest terms with positive denominators.
struct GaussRat {
  Rat re;
  Rat im;

  GaussRat() : re(0), im(0) {}
  GaussRat(long r) : re(r), im(0) {}
  GaussRat(const Rat &r) : re(r), im(0) {}
  GaussRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

  static GaussRat i() { return GaussRat(Rat(0), Rat(1)); }

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }

  GaussRat conj() const { return GaussRat(re, -im); }

  /// re^2 + im^2, the square of the complex modulus.
  Rat norm() const { return re * re + im * im; }

  GaussRat operator-() const { return GaussRat(-re, -im); }

  GaussRat &operator+=(const GaussRat &o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GaussRat &operator-=(const GaussRat &o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  GaussRat &operator*=(const GaussRat &o) {
    Rat r = re * o.re - im * o.im;
    Rat i = re * o.im + im * o.re;
    re = r;
    im = i;
    return *this;
  }
  GaussRat &operator/=(const GaussRat &o) {
    if (o.is_zero())
      throw MathError(MathError::Code::DivisionByZero, "division by zero in Q(i)");
    Rat n = o.norm();
    Rat r = (re * o.re + im * o.im) / n;
    Rat i = (im * o.re - re * o.im) / n;
    re = r;
    im = i;
    return *this;
  }

  friend GaussRat operator+(GaussRat a, const GaussRat &b) { return a += b; }
  friend GaussRat operator-(GaussRat a, const GaussRat &b) { return a -= b; }
  friend GaussRat operator*(GaussRat a, const GaussRat &b) { return a *= b; }
  friend GaussRat operator/(GaussRat a, const GaussRat &b) { return a /= b; }

  friend bool operator==(const GaussRat &a, const GaussRat &b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussRat &a, const GaussRat &b) { return !(a == b); }

  GaussRat inverse() const {
    GaussRat one(1);
    return one / *this;
  }
};

inline std::string rat_to_string(const Rat &r) {
  std::ostringstream os;
  os << r.get_num();
  if (r.get_den() != 1)
    os << "/" << r.get_den();
  return os.str();
}

/// Canonical textual form: "p/q" for real values, "p/q+r/s*i" otherwise
/// (with "-" absorbed into the numerators). Round-trips through the parser.
inline std::string to_string(const GaussRat &g) {
  if (g.im == 0)
    return rat_to_string(g.re);
  std::string s = rat_to_string(g.re);
  if (g.im > 0)
    s += "+" + rat_to_string(g.im) + "*i";
  else
    s += "-" + rat_to_string(-g.im) + "*i";
  return s;
}

inline std::ostream &operator<<(std::ostream &os, const GaussRat &g) {
  return os << to_string(g);
}

/// n! as an exact rational.
inline Rat factorial_rat(unsigned long n) {
  Int f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return Rat(f);
}

/// Exact square root in Q, if one exists.
inline bool rat_sqrt(const Rat &x, Rat &out) {
  if (x < 0)
    return false;
  Int n = x.get_num(), d = x.get_den();
  if (mpz_perfect_square_p(n.get_mpz_t()) == 0 || mpz_perfect_square_p(d.get_mpz_t()) == 0)
    return false;
  Int sn, sd;
  mpz_sqrt(sn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(sd.get_mpz_t(), d.get_mpz_t());
  out = Rat(sn, sd);
  out.canonicalize();
  return true;
}

/// Exact square root in Q(i), if one exists: solves (p+qi)^2 = a+bi.
inline bool gauss_sqrt(const GaussRat &x, GaussRat &out) {
  Rat mod2 = x.norm();
  Rat mod;
  if (!rat_sqrt(mod2, mod))
    return false;
  // p^2 = (a + |x|)/2, q^2 = (|x| - a)/2, sign of q from b.
  Rat p2 = (x.re + mod) / 2;
  Rat q2 = (mod - x.re) / 2;
  Rat p, q;
  if (!rat_sqrt(p2, p) || !rat_sqrt(q2, q))
    return false;
  if (x.im < 0)
    q = -q;
  out = GaussRat(p, q);
  if (out * out == x)
    return true;
  return false;
}

} // namespace s2star
