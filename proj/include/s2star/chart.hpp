#pragma once

#include <array>
#include <compare>
#include <map>

#include "s2star/abc_poly.hpp"
#include "s2star/group.hpp"
#include "s2star/scalar.hpp"

namespace s2star {

/// Monomial z^i zbar^j.
struct Mono2 {
  unsigned i = 0, j = 0;
  friend auto operator<=>(const Mono2 &, const Mono2 &) = default;
  unsigned degree() const { return i + j; }
};

/// Polynomial in the chart coordinates (z, zbar) over K.
class Poly2 {
public:
  Poly2() = default;
  static Poly2 zero() { return Poly2(); }
  static Poly2 one() { return monomial(Mono2{}); }
  static Poly2 z() { return monomial(Mono2{1, 0}); }
  static Poly2 zbar() { return monomial(Mono2{0, 1}); }
  static Poly2 monomial(Mono2 m, Scalar c = Scalar::one()) {
    Poly2 p;
    if (!c.is_zero())
      p.t_[m] = std::move(c);
    return p;
  }

  const std::map<Mono2, Scalar> &terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }

  void add_term(const Mono2 &m, const Scalar &c) {
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

  Poly2 operator-() const {
    Poly2 r;
    for (auto &[m, c] : t_)
      r.t_.emplace(m, -c);
    return r;
  }
  friend Poly2 operator+(const Poly2 &a, const Poly2 &b) {
    Poly2 r(a);
    for (auto &[m, c] : b.t_)
      r.add_term(m, c);
    return r;
  }
  friend Poly2 operator-(const Poly2 &a, const Poly2 &b) { return a + (-b); }
  friend Poly2 operator*(const Poly2 &a, const Poly2 &b) {
    Poly2 r;
    for (auto &[ma, ca] : a.t_)
      for (auto &[mb, cb] : b.t_)
        r.add_term(Mono2{ma.i + mb.i, ma.j + mb.j}, ca * cb);
    return r;
  }
  Poly2 &operator+=(const Poly2 &b) { return *this = *this + b; }
  Poly2 &operator-=(const Poly2 &b) { return *this = *this - b; }
  Poly2 &operator*=(const Poly2 &b) { return *this = *this * b; }

  Poly2 scaled(const Scalar &s) const {
    Poly2 r;
    if (s.is_zero())
      return r;
    for (auto &[m, c] : t_)
      r.t_.emplace(m, c * s);
    return r;
  }

  Poly2 pow(unsigned e) const {
    Poly2 r = one();
    for (unsigned i = 0; i < e; ++i)
      r *= *this;
    return r;
  }

  friend bool operator==(const Poly2 &a, const Poly2 &b) { return a.t_ == b.t_; }
  friend bool operator!=(const Poly2 &a, const Poly2 &b) { return !(a == b); }

  Poly2 d_z() const {
    Poly2 r;
    for (auto &[m, c] : t_)
      if (m.i >= 1)
        r.add_term(Mono2{m.i - 1, m.j}, c * Scalar(Rat(m.i)));
    return r;
  }
  Poly2 d_zbar() const {
    Poly2 r;
    for (auto &[m, c] : t_)
      if (m.j >= 1)
        r.add_term(Mono2{m.i, m.j - 1}, c * Scalar(Rat(m.j)));
    return r;
  }

  /// Exact division by 1 + z zbar if possible.
  bool try_divide_disc(Poly2 &quotient) const {
    // Reduce by D = z zbar + 1 with leading term z zbar; the remainder has
    // only pure powers of z or zbar, so divisibility means remainder zero.
    Poly2 rem(*this), quot;
    while (!rem.is_zero()) {
      auto it = rem.t_.end();
      bool found = false;
      for (auto jt = rem.t_.begin(); jt != rem.t_.end(); ++jt)
        if (jt->first.i >= 1 && jt->first.j >= 1) {
          it = jt;
          found = true;
          break;
        }
      if (!found)
        break;
      Mono2 m = it->first;
      Scalar c = it->second;
      Mono2 qm{m.i - 1, m.j - 1};
      quot.add_term(qm, c);
      rem.add_term(m, -c);
      rem.add_term(qm, -c);
    }
    if (!rem.is_zero())
      return false;
    quotient = quot;
    return true;
  }

  /// Evaluation at a Gaussian-rational point with zbar = conj(z); the result
  /// stays in K because coefficients may depend on h.
  Scalar eval(const GaussRat &z) const {
    GaussRat zb = z.conj();
    Scalar out = Scalar::zero();
    for (auto &[m, c] : t_) {
      GaussRat mono(1);
      for (unsigned k = 0; k < m.i; ++k)
        mono *= z;
      for (unsigned k = 0; k < m.j; ++k)
        mono *= zb;
      out += c * Scalar(mono);
    }
    return out;
  }

private:
  std::map<Mono2, Scalar> t_;
};

/// Function on the chart (sphere minus a point): num / (1 + z zbar)^m, kept
/// reduced so that 1 + z zbar does not divide num.
struct ChartFunction {
  Poly2 num;
  unsigned m = 0;

  ChartFunction() = default;
  ChartFunction(Poly2 n, unsigned mm) : num(std::move(n)), m(mm) { reduce(); }

  static ChartFunction zero() { return ChartFunction(); }
  static ChartFunction one() { return ChartFunction(Poly2::one(), 0); }
  static ChartFunction constant(const Scalar &s) {
    return ChartFunction(Poly2::one().scaled(s), 0);
  }

  bool is_zero() const { return num.is_zero(); }

  void reduce() {
    if (num.is_zero()) {
      m = 0;
      return;
    }
    Poly2 q;
    while (m > 0 && num.try_divide_disc(q)) {
      num = q;
      --m;
    }
  }

  friend ChartFunction operator+(const ChartFunction &a, const ChartFunction &b) {
    unsigned mm = std::max(a.m, b.m);
    Poly2 disc = Poly2::one() + Poly2::monomial(Mono2{1, 1});
    Poly2 na = a.num * disc.pow(mm - a.m);
    Poly2 nb = b.num * disc.pow(mm - b.m);
    return ChartFunction(na + nb, mm);
  }
  friend ChartFunction operator-(const ChartFunction &a, const ChartFunction &b) {
    return a + b.scaled(Scalar(-1));
  }
  friend ChartFunction operator*(const ChartFunction &a, const ChartFunction &b) {
    return ChartFunction(a.num * b.num, a.m + b.m);
  }

  ChartFunction scaled(const Scalar &s) const {
    ChartFunction r;
    r.num = num.scaled(s);
    r.m = s.is_zero() ? 0 : m;
    return r;
  }

  friend bool operator==(const ChartFunction &a, const ChartFunction &b) {
    return a.m == b.m && a.num == b.num;
  }
  friend bool operator!=(const ChartFunction &a, const ChartFunction &b) {
    return !(a == b);
  }

  /// d/dz of num/(1+z zbar)^m.
  ChartFunction d_z() const {
    Poly2 disc = Poly2::one() + Poly2::monomial(Mono2{1, 1});
    Poly2 n = num.d_z() * disc - Poly2::monomial(Mono2{0, 1}, Scalar(Rat(m))) * num;
    return ChartFunction(n, m + 1);
  }
  ChartFunction d_zbar() const {
    Poly2 disc = Poly2::one() + Poly2::monomial(Mono2{1, 1});
    Poly2 n = num.d_zbar() * disc - Poly2::monomial(Mono2{1, 0}, Scalar(Rat(m))) * num;
    return ChartFunction(n, m + 1);
  }

  /// Exact value at a chart point (zbar = conj z).
  Scalar eval(const GaussRat &z) const {
    GaussRat disc = GaussRat(1) + z * z.conj();
    Scalar d = Scalar::one();
    for (unsigned k = 0; k < m; ++k)
      d *= Scalar(disc);
    return num.eval(z) / d;
  }
};

/// Chart coordinate of a group element: z = v/u (defined when u != 0).
inline GaussRat chart_point(const GroupElement &k) {
  if (k.u.is_zero())
    throw MathError(MathError::Code::InvalidArgument,
                    "chart point undefined at u = 0");
  return k.v / k.u;
}

/// Chart realizations A = (1 - z zbar)/(1 + z zbar), B = z/(1 + z zbar),
/// C = zbar/(1 + z zbar).
inline ChartFunction chart_A() {
  return ChartFunction(Poly2::one() - Poly2::monomial(Mono2{1, 1}), 1);
}
inline ChartFunction chart_B() { return ChartFunction(Poly2::z(), 1); }
inline ChartFunction chart_C() { return ChartFunction(Poly2::zbar(), 1); }

/// Chart form of an invariant polynomial.
inline ChartFunction chart_of(const InvariantPoly &p) {
  ChartFunction out = ChartFunction::zero();
  ChartFunction a = chart_A(), b = chart_B(), c = chart_C();
  for (auto &[mono, coeff] : p.poly.terms()) {
    ChartFunction term = ChartFunction::one().scaled(coeff);
    for (unsigned i = 0; i < mono.ea; ++i)
      term = term * a;
    for (unsigned i = 0; i < mono.eb; ++i)
      term = term * b;
    for (unsigned i = 0; i < mono.ec; ++i)
      term = term * c;
    out = out + term;
  }
  return out;
}

/// Vector field P d/dz + Q d/dzbar with chart-function coefficients.
struct ChartVectorField {
  ChartFunction P, Q;

  ChartFunction apply(const ChartFunction &f) const {
    return P * f.d_z() + Q * f.d_zbar();
  }
};

/// Fundamental vector field v_Z = d/dt|_0 exp(-tZ).z of the Moebius action,
/// extended complex-linearly from the compact real form:
///   P = -Z21 + (Z11 - Z22) z + Z12 z^2,
///   Q =  Z12 - (Z11 - Z22) zbar - Z21 zbar^2.
inline ChartVectorField fundamental_field(const std::array<GaussRat, 4> &Z) {
  if (!(Z[0] + Z[3]).is_zero())
    throw MathError(MathError::Code::NotTraceFree, "fundamental_field needs trace zero");
  Poly2 p = Poly2::one().scaled(Scalar(-Z[2])) +
            Poly2::z().scaled(Scalar(Z[0] - Z[3])) +
            Poly2::z().pow(2).scaled(Scalar(Z[1]));
  Poly2 q = Poly2::one().scaled(Scalar(Z[1])) +
            Poly2::zbar().scaled(Scalar(-(Z[0] - Z[3]))) +
            Poly2::zbar().pow(2).scaled(Scalar(-Z[2]));
  return ChartVectorField{ChartFunction(p, 0), ChartFunction(q, 0)};
}

/// Which chart direction spans T^(1,0) for the complex structure in use.
/// Selected by validation, not fixed a priori.
enum class ChartOrientation { ZIsHolomorphic, ZbarIsHolomorphic };

} // namespace s2star
