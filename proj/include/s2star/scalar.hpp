#pragma once

#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "s2star/errors.hpp"
#include "s2star/qpoly.hpp"

namespace s2star {

/// Element of the rational-function field K = Q(i)(h), kept normalized:
/// gcd(num, den) = 1 over Q(i)[h] and den monic. Zero is 0/1.
class Scalar {
public:
  Scalar() : num_(), den_(QPoly::one()) {}
  Scalar(long v) : num_(GaussRat(v)), den_(QPoly::one()) {}
  Scalar(const GaussRat &v) : num_(v), den_(QPoly::one()) {}
  Scalar(const Rat &v) : num_(GaussRat(v)), den_(QPoly::one()) {}
  Scalar(QPoly num, QPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero())
      throw MathError(MathError::Code::DivisionByZero, "zero denominator in Q(i)(h)");
    normalize();
  }
  explicit Scalar(QPoly num) : num_(std::move(num)), den_(QPoly::one()) {}

  static Scalar zero() { return Scalar(); }
  static Scalar one() { return Scalar(1); }
  static Scalar h() { return Scalar(QPoly::var()); }
  static Scalar i() { return Scalar(GaussRat::i()); }

  const QPoly &num() const { return num_; }
  const QPoly &den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return den_.is_constant() && num_.is_constant(); }
  /// den == 1 (always true for polynomials in h).
  bool den_trivial() const { return den_.is_constant(); }
  GaussRat constant() const {
    if (!is_constant())
      throw MathError(MathError::Code::NotConstant, "scalar depends on h");
    return num_.constant();
  }

  Scalar operator-() const {
    Scalar r(*this);
    r.num_ = -r.num_;
    return r;
  }

  friend Scalar operator+(const Scalar &a, const Scalar &b) {
    if (a.den_trivial() && b.den_trivial()) {
      Scalar r;
      r.num_ = a.num_ + b.num_;
      return r;
    }
    return Scalar(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Scalar operator-(const Scalar &a, const Scalar &b) {
    if (a.den_trivial() && b.den_trivial()) {
      Scalar r;
      r.num_ = a.num_ - b.num_;
      return r;
    }
    return Scalar(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Scalar operator*(const Scalar &a, const Scalar &b) {
    // Scaling a normalized fraction by a nonzero constant keeps it
    // normalized; zero collapses to the canonical zero.
    if (b.is_constant()) {
      Scalar r;
      if (b.is_zero())
        return r;
      r.num_ = a.num_.scaled(b.num_.constant());
      r.den_ = a.den_;
      if (r.num_.is_zero())
        r.den_ = QPoly::one();
      return r;
    }
    if (a.is_constant())
      return b * a;
    return Scalar(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend Scalar operator/(const Scalar &a, const Scalar &b) {
    if (b.is_zero())
      throw MathError(MathError::Code::DivisionByZero, "division by zero scalar");
    if (b.is_constant())
      return a * Scalar(b.num_.constant().inverse());
    return Scalar(a.num_ * b.den_, a.den_ * b.num_);
  }
  Scalar &operator+=(const Scalar &b) { return *this = *this + b; }
  Scalar &operator-=(const Scalar &b) { return *this = *this - b; }
  Scalar &operator*=(const Scalar &b) { return *this = *this * b; }
  Scalar &operator/=(const Scalar &b) { return *this = *this / b; }

  friend bool operator==(const Scalar &a, const Scalar &b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Scalar &a, const Scalar &b) { return !(a == b); }
  /// Ordering for use as map key; not a numeric order.
  friend bool operator<(const Scalar &a, const Scalar &b) {
    auto key = [](const QPoly &p) {
      std::vector<std::pair<std::pair<Rat, Rat>, int>> k;
      for (auto &c : p.coeffs())
        k.push_back({{c.re, c.im}, 0});
      return k;
    };
    auto ka = std::make_pair(key(a.num_), key(a.den_));
    auto kb = std::make_pair(key(b.num_), key(b.den_));
    return ka < kb;
  }

  Scalar inverse() const { return one() / *this; }

  /// Coefficient-wise complex conjugation; as a function this is
  /// h |-> conj(f(conj(h))).
  Scalar conj_coeffs() const {
    Scalar r;
    r.num_ = num_.conj_coeffs();
    r.den_ = den_.conj_coeffs();
    r.normalize();
    return r;
  }

  bool regular_at_zero() const { return !den_.coeff(0).is_zero(); }

  GaussRat eval(const GaussRat &x) const {
    GaussRat d = den_.eval(x);
    if (d.is_zero())
      throw MathError(MathError::Code::EvalAtPole,
                      "evaluation at pole h = " + to_string(x));
    return num_.eval(x) / d;
  }

  /// Power-series coefficients at h = 0 up to the given order (inclusive).
  std::vector<GaussRat> taylor(std::size_t order) const {
    if (!regular_at_zero())
      throw MathError(MathError::Code::NotRegularAtZero,
                      "denominator vanishes at h = 0");
    std::vector<GaussRat> out(order + 1);
    GaussRat d0_inv = den_.coeff(0).inverse();
    for (std::size_t r = 0; r <= order; ++r) {
      GaussRat acc = num_.coeff(r);
      for (std::size_t j = 1; j <= r; ++j)
        acc -= den_.coeff(j) * out[r - j];
      out[r] = acc * d0_inv;
    }
    return out;
  }

  struct PoleReport {
    /// Exact roots of den with multiplicities.
    std::vector<std::pair<GaussRat, unsigned>> roots;
    /// Rootless remainder factors, reported unevaluated.
    std::vector<QPoly> factors;

    bool empty() const { return roots.empty() && factors.empty(); }
    std::set<std::pair<Rat, Rat>> root_set() const {
      std::set<std::pair<Rat, Rat>> s;
      for (auto &[r, m] : roots)
        s.insert({r.re, r.im});
      return s;
    }
  };

  /// Exact pole locations: rational and Gaussian-rational roots of den are
  /// reported exactly (linear/quadratic remainders resolved), anything left
  /// is returned as an unevaluated factor.
  PoleReport poles() const {
    PoleReport rep;
    QPoly d = den_;
    if (d.is_constant())
      return rep;

    auto divide_out = [&](const GaussRat &root) {
      QPoly lin = QPoly::var() - QPoly(root);
      unsigned mult = 0;
      while (lin.divides(d)) {
        d = d / lin;
        ++mult;
      }
      if (mult)
        rep.roots.push_back({root, mult});
      return mult > 0;
    };

    for (const GaussRat &cand : rational_root_candidates(d)) {
      if (d.is_constant())
        break;
      if (d.eval(cand).is_zero())
        divide_out(cand);
    }
    // Resolve what remains by exact low-degree factor analysis.
    while (d.degree() == 1) {
      GaussRat root = -(d.coeff(0) / d.coeff(1));
      divide_out(root);
    }
    if (d.degree() == 2) {
      GaussRat a = d.coeff(2), b = d.coeff(1), c = d.coeff(0);
      GaussRat disc = b * b - GaussRat(4) * a * c, sq;
      if (gauss_sqrt(disc, sq)) {
        GaussRat two_a = GaussRat(2) * a;
        divide_out((-b + sq) / two_a);
        divide_out((-b - sq) / two_a);
      }
    }
    if (!d.is_constant())
      rep.factors.push_back(d.monic());
    return rep;
  }

private:
  /// Candidates p/q (real rationals) via the rational root theorem applied to
  /// an integer multiple of whichever of Re(den), Im(den) is nonzero.
  static std::vector<GaussRat> rational_root_candidates(const QPoly &d) {
    // Build integer coefficient lists for real and imaginary parts.
    Int common(1);
    for (auto &c : d.coeffs()) {
      common = lcm(common, c.re.get_den());
      common = lcm(common, c.im.get_den());
    }
    std::vector<Int> re_c, im_c;
    bool re_nonzero = false, im_nonzero = false;
    for (auto &c : d.coeffs()) {
      Rat r = c.re * Rat(common), i = c.im * Rat(common);
      re_c.push_back(r.get_num());
      im_c.push_back(i.get_num());
      re_nonzero = re_nonzero || r != 0;
      im_nonzero = im_nonzero || i != 0;
    }
    const std::vector<Int> &cs = re_nonzero ? re_c : im_c;
    if (!re_nonzero && !im_nonzero)
      return {};
    // Strip powers of the variable (root 0 handled separately).
    std::size_t lo = 0;
    while (lo < cs.size() && cs[lo] == 0)
      ++lo;
    std::vector<GaussRat> out;
    out.push_back(GaussRat(0));
    if (lo >= cs.size())
      return out;
    Int a0 = abs(cs[lo]);
    Int an = abs(cs.back());
    std::vector<Int> ps = divisors(a0), qs = divisors(an);
    for (const Int &p : ps)
      for (const Int &q : qs) {
        Rat cand(p, q);
        cand.canonicalize();
        out.push_back(GaussRat(cand));
        out.push_back(GaussRat(-cand));
      }
    return out;
  }

  static Int lcm(const Int &a, const Int &b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return a / g * b;
  }

  static std::vector<Int> divisors(Int n) {
    std::vector<Int> out;
    if (n == 0)
      return out;
    n = abs(n);
    for (Int d(1); d * d <= n; ++d) {
      if (n % d == 0) {
        out.push_back(d);
        out.push_back(n / d);
      }
    }
    return out;
  }

  void normalize() {
    if (num_.is_zero()) {
      den_ = QPoly::one();
      return;
    }
    if (den_.is_constant()) {
      num_ = num_.scaled(den_.constant().inverse());
      den_ = QPoly::one();
      return;
    }
    QPoly g = QPoly::gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = num_ / g;
      den_ = den_ / g;
    }
    GaussRat lead_inv = den_.lead().inverse();
    num_ = num_.scaled(lead_inv);
    den_ = den_.scaled(lead_inv);
  }

  QPoly num_;
  QPoly den_;
};

/// Canonical scalar text, always "(<num>)/(<den>)".
inline std::string to_string(const Scalar &s) {
  return "(" + to_string(s.num()) + ")/(" + to_string(s.den()) + ")";
}

inline std::ostream &operator<<(std::ostream &os, const Scalar &s) {
  return os << to_string(s);
}

} // namespace s2star
