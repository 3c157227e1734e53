#pragma once

#include <atomic>
#include <compare>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <utility>
#include <vector>

#include "s2star/errors.hpp"
#include "s2star/group.hpp"
#include "s2star/scalar.hpp"

namespace s2star {

/// Basis of sl2 with the standard bracket table
///   [H,X] = 2X,  [H,Y] = -2Y,  [X,Y] = H.
/// Note: the convention fixes [H,Y] = -2Y; the projection identity
/// (X^n Y^n)_0 = n! H(H-1)...(H-n+1) is consistent only with this table.
enum class Gen { H, X, Y };

/// Bracket of two basis elements as a coefficient triple (cH, cX, cY).
inline std::array<long, 3> bracket_coeffs(Gen a, Gen b) {
  // Order (H, X, Y) in the output triple.
  if (a == b)
    return {0, 0, 0};
  if (a == Gen::H && b == Gen::X)
    return {0, 2, 0};
  if (a == Gen::X && b == Gen::H)
    return {0, -2, 0};
  if (a == Gen::H && b == Gen::Y)
    return {0, 0, -2};
  if (a == Gen::Y && b == Gen::H)
    return {0, 0, 2};
  if (a == Gen::X && b == Gen::Y)
    return {1, 0, 0};
  return {-1, 0, 0}; // [Y, X] = -H
}

/// 2x2 matrix of a basis element (row-major), H = diag(1,-1), X = E12, Y = E21.
inline std::array<GaussRat, 4> gen_matrix(Gen g) {
  switch (g) {
  case Gen::H: return {GaussRat(1), GaussRat(0), GaussRat(0), GaussRat(-1)};
  case Gen::X: return {GaussRat(0), GaussRat(1), GaussRat(0), GaussRat(0)};
  case Gen::Y: return {GaussRat(0), GaussRat(0), GaussRat(1), GaussRat(0)};
  }
  return {};
}

/// PBW monomial Y^a H^b X^c.
struct Mono3 {
  unsigned a = 0, b = 0, c = 0;

  friend auto operator<=>(const Mono3 &, const Mono3 &) = default;

  unsigned filtration() const { return a + b + c; }
  /// Grading: X counts +1, Y counts -1.
  long grading() const { return static_cast<long>(c) - static_cast<long>(a); }
};

namespace detail {

using IntTerms = std::vector<std::pair<Int, Mono3>>;

inline void add_term(IntTerms &t, Int coeff, Mono3 m) {
  for (auto &[c0, m0] : t)
    if (m0 == m) {
      c0 += coeff;
      return;
    }
  t.push_back({std::move(coeff), m});
}

/// m * Y in PBW normal form. Uses X^c Y = Y X^c + (cH - c(c-1)) X^{c-1}
/// and H^b Y = Y (H-2)^b.
inline IntTerms mul_gen_Y(const Mono3 &m) {
  IntTerms out;
  // Y^a H^b X^c * Y -> Y^{a+1} (H-2)^b X^c + c Y^a H^{b+1} X^{c-1}
  //                    - c(c-1) Y^a H^b X^{c-1}
  Int binom;
  for (unsigned k = 0; k <= m.b; ++k) {
    mpz_bin_uiui(binom.get_mpz_t(), m.b, k);
    Int coeff = binom;
    Int mink2;
    mpz_ui_pow_ui(mink2.get_mpz_t(), 2, m.b - k);
    coeff *= mink2;
    if ((m.b - k) % 2 == 1)
      coeff = -coeff;
    add_term(out, coeff, Mono3{m.a + 1, k, m.c});
  }
  if (m.c >= 1) {
    add_term(out, Int(m.c), Mono3{m.a, m.b + 1, m.c - 1});
    if (m.c >= 2)
      add_term(out, -Int(m.c) * Int(m.c - 1), Mono3{m.a, m.b, m.c - 1});
  }
  return out;
}

/// m * H: uses X^c H = (H - 2c) X^c.
inline IntTerms mul_gen_H(const Mono3 &m) {
  IntTerms out;
  add_term(out, Int(1), Mono3{m.a, m.b + 1, m.c});
  if (m.c)
    add_term(out, Int(-2) * Int(m.c), m);
  return out;
}

inline IntTerms mul_gen_X(const Mono3 &m) {
  return {{Int(1), Mono3{m.a, m.b, m.c + 1}}};
}

struct PbwCache {
  std::map<std::pair<Mono3, Mono3>, IntTerms> table;
  std::shared_mutex mutex;
  std::atomic<bool> enabled{true};
};

inline PbwCache &pbw_cache() {
  static PbwCache cache;
  return cache;
}

} // namespace detail

/// Enable/disable the internal memoization of monomial products. The cache is
/// synchronized for concurrent use either way.
inline void set_pbw_cache_enabled(bool on) { detail::pbw_cache().enabled = on; }

/// Structure constants of U(sl2): the normal-form expansion of the product of
/// two PBW monomials, with exact integer coefficients. Memoized.
inline detail::IntTerms mono_product(const Mono3 &l, const Mono3 &r) {
  auto &cache = detail::pbw_cache();
  if (cache.enabled) {
    std::shared_lock lock(cache.mutex);
    auto it = cache.table.find({l, r});
    if (it != cache.table.end())
      return it->second;
  }
  detail::IntTerms terms{{Int(1), l}};
  auto apply = [&terms](auto &&gen_mul, unsigned times) {
    for (unsigned i = 0; i < times; ++i) {
      detail::IntTerms next;
      for (auto &[coeff, m] : terms)
        for (auto &[c2, m2] : gen_mul(m))
          detail::add_term(next, coeff * c2, m2);
      terms = std::move(next);
    }
  };
  apply(detail::mul_gen_Y, r.a);
  apply(detail::mul_gen_H, r.b);
  apply(detail::mul_gen_X, r.c);
  if (cache.enabled) {
    std::unique_lock lock(cache.mutex);
    cache.table.emplace(std::make_pair(l, r), terms);
  }
  return terms;
}

/// Element of U(sl2) in PBW normal form: finite sum of Y^a H^b X^c with
/// Scalar coefficients. Immutable value semantics; no stored zeros.
class EnvElement {
public:
  EnvElement() = default;

  static EnvElement zero() { return EnvElement(); }
  static EnvElement one() { return monomial(Mono3{0, 0, 0}); }
  static EnvElement gen(Gen g) {
    switch (g) {
    case Gen::H: return monomial(Mono3{0, 1, 0});
    case Gen::X: return monomial(Mono3{0, 0, 1});
    case Gen::Y: return monomial(Mono3{1, 0, 0});
    }
    return zero();
  }
  static EnvElement monomial(Mono3 m, Scalar coeff = Scalar::one()) {
    EnvElement e;
    if (!coeff.is_zero())
      e.terms_[m] = std::move(coeff);
    return e;
  }

  const std::map<Mono3, Scalar> &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  unsigned filtration() const {
    unsigned d = 0;
    for (auto &[m, c] : terms_)
      d = std::max(d, m.filtration());
    return d;
  }

  void add_term(const Mono3 &m, const Scalar &coeff) {
    if (coeff.is_zero())
      return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, coeff);
    } else {
      it->second += coeff;
      if (it->second.is_zero())
        terms_.erase(it);
    }
  }

  EnvElement operator-() const {
    EnvElement r;
    for (auto &[m, c] : terms_)
      r.terms_.emplace(m, -c);
    return r;
  }

  friend EnvElement operator+(const EnvElement &a, const EnvElement &b) {
    EnvElement r(a);
    for (auto &[m, c] : b.terms_)
      r.add_term(m, c);
    return r;
  }
  friend EnvElement operator-(const EnvElement &a, const EnvElement &b) {
    return a + (-b);
  }
  EnvElement &operator+=(const EnvElement &b) { return *this = *this + b; }
  EnvElement &operator-=(const EnvElement &b) { return *this = *this - b; }

  EnvElement scaled(const Scalar &s) const {
    EnvElement r;
    if (s.is_zero())
      return r;
    for (auto &[m, c] : terms_)
      r.terms_.emplace(m, c * s);
    return r;
  }

  friend bool operator==(const EnvElement &a, const EnvElement &b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const EnvElement &a, const EnvElement &b) { return !(a == b); }

private:
  std::map<Mono3, Scalar> terms_;
};

/// Associative product in PBW normal form.
inline EnvElement pbw_mul(const EnvElement &a, const EnvElement &b) {
  EnvElement r;
  for (auto &[ma, ca] : a.terms())
    for (auto &[mb, cb] : b.terms()) {
      Scalar cc = ca * cb;
      for (auto &[ic, m] : mono_product(ma, mb))
        r.add_term(m, cc * Scalar(GaussRat(Rat(ic))));
    }
  return r;
}

inline EnvElement pbw_pow(const EnvElement &a, unsigned e) {
  EnvElement r = EnvElement::one();
  for (unsigned i = 0; i < e; ++i)
    r = pbw_mul(r, a);
  return r;
}

/// Antipode: the anti-automorphism with S(Z) = -Z on Lie elements.
/// S(Y^a H^b X^c) = (-1)^{a+b+c} X^c H^b Y^a, re-normal-ordered.
inline EnvElement antipode(const EnvElement &a) {
  EnvElement r;
  for (auto &[m, c] : a.terms()) {
    EnvElement prod = EnvElement::monomial(Mono3{0, 0, m.c});
    prod = pbw_mul(prod, EnvElement::monomial(Mono3{0, m.b, 0}));
    prod = pbw_mul(prod, EnvElement::monomial(Mono3{m.a, 0, 0}));
    Scalar sign = (m.filtration() % 2) ? -c : c;
    r += prod.scaled(sign);
  }
  return r;
}

/// Projection onto U(h) in U(g) = (N_- U + U N_+) (+) U(h): keeps exactly the
/// monomials with a = c = 0.
inline EnvElement project0(const EnvElement &a) {
  EnvElement r;
  for (auto &[m, c] : a.terms())
    if (m.a == 0 && m.c == 0)
      r.add_term(m, c);
  return r;
}

/// Algebra character of U(h) sending H to s. Requires Cartan support.
inline Scalar character(const EnvElement &a, const Scalar &s) {
  Scalar out = Scalar::zero();
  for (auto &[m, c] : a.terms()) {
    if (m.a != 0 || m.c != 0)
      throw MathError(MathError::Code::NotInCartanPart,
                      "character applied outside U(h)");
    Scalar p = Scalar::one();
    for (unsigned k = 0; k < m.b; ++k)
      p *= s;
    out += c * p;
  }
  return out;
}

struct OrbitParams {
  Rat lambda;

  explicit OrbitParams(Rat l = Rat(8)) : lambda(std::move(l)) {
    if (lambda <= 0)
      throw MathError(MathError::Code::InvalidArgument, "lambda must be positive");
  }

  /// The character value lambda/h as a Scalar.
  Scalar lambda_over_h() const {
    return Scalar(QPoly(GaussRat(lambda)), QPoly::var());
  }
};

/// Shapovalov-type pairing (y, x) = chi_{lambda/h}((S(x) y)_0) between U(N_-)
/// and U(N_+).
inline Scalar pairing(const EnvElement &y, const EnvElement &x, const OrbitParams &params) {
  for (auto &[m, c] : y.terms())
    if (m.b != 0 || m.c != 0)
      throw MathError(MathError::Code::NotInNilpotentPart,
                      "pairing: left argument not in U(N_-)");
  for (auto &[m, c] : x.terms())
    if (m.a != 0 || m.b != 0)
      throw MathError(MathError::Code::NotInNilpotentPart,
                      "pairing: right argument not in U(N_+)");
  return character(project0(pbw_mul(antipode(x), y)), params.lambda_over_h());
}

/// Adjoint action of a group element, generator-wise by exact 2x2
/// conjugation, extended as an algebra homomorphism and re-normal-ordered.
inline EnvElement ad_group(const GroupElement &k, const EnvElement &a) {
  // Images of the generators: Ad_k Z = k Z k^{-1}, decomposed back into
  // the (H, X, Y) basis from ((p, q), (r, -p)) -> pH + qX + rY.
  auto km = k.matrix();
  auto ki = k.inverse().matrix();
  auto image = [&](Gen g) {
    auto zm = gen_matrix(g);
    std::array<GaussRat, 4> t{}, res{};
    // t = k * Z
    t[0] = km[0] * zm[0] + km[1] * zm[2];
    t[1] = km[0] * zm[1] + km[1] * zm[3];
    t[2] = km[2] * zm[0] + km[3] * zm[2];
    t[3] = km[2] * zm[1] + km[3] * zm[3];
    // res = t * k^{-1}
    res[0] = t[0] * ki[0] + t[1] * ki[2];
    res[1] = t[0] * ki[1] + t[1] * ki[3];
    res[2] = t[2] * ki[0] + t[3] * ki[2];
    res[3] = t[2] * ki[1] + t[3] * ki[3];
    EnvElement e;
    e += EnvElement::gen(Gen::H).scaled(Scalar(res[0]));
    e += EnvElement::gen(Gen::X).scaled(Scalar(res[1]));
    e += EnvElement::gen(Gen::Y).scaled(Scalar(res[2]));
    return e;
  };
  EnvElement img_h = image(Gen::H), img_x = image(Gen::X), img_y = image(Gen::Y);
  EnvElement out;
  for (auto &[m, c] : a.terms()) {
    EnvElement prod = EnvElement::one();
    for (unsigned i = 0; i < m.a; ++i)
      prod = pbw_mul(prod, img_y);
    for (unsigned i = 0; i < m.b; ++i)
      prod = pbw_mul(prod, img_h);
    for (unsigned i = 0; i < m.c; ++i)
      prod = pbw_mul(prod, img_x);
    out += prod.scaled(c);
  }
  return out;
}

/// ad_Z as a linear map on U(sl2): ad_Z(a) = Z a - a Z.
inline EnvElement ad_gen(Gen z, const EnvElement &a) {
  EnvElement zg = EnvElement::gen(z);
  return pbw_mul(zg, a) - pbw_mul(a, zg);
}

/// exp(t ad_Z) a for nilpotent Z in {X, Y}: returns the coefficients of t^k.
/// The expansion terminates because ad_X, ad_Y are locally nilpotent.
inline std::vector<EnvElement> ad_exp_poly(Gen z, const EnvElement &a) {
  if (z == Gen::H)
    throw MathError(MathError::Code::NotNilpotent,
                    "ad_H is semisimple; exp(t ad_H) is not polynomial in t");
  std::vector<EnvElement> out;
  EnvElement cur = a;
  unsigned long k = 0;
  while (!cur.is_zero()) {
    out.push_back(cur);
    ++k;
    cur = ad_gen(z, cur).scaled(Scalar(GaussRat(Rat(1, static_cast<long>(k)))));
  }
  if (out.empty())
    out.push_back(EnvElement::zero());
  return out;
}

/// s_lambda u(k) = <s, (Ad_{k^{-1}} u)_0> with character value s.
inline Scalar s_function(const EnvElement &a, const GroupElement &k, const Scalar &s) {
  return character(project0(ad_group(k.inverse(), a)), s);
}

/// Per-degree Gram block of the pairing and its inverse over K. For sl2 the
/// homogeneous components are spanned by Y^n and X^n, so blocks are 1x1; the
/// generic solve is kept so the construction reads like the general case.
struct DualBasisBlock {
  std::vector<std::vector<Scalar>> gram;
  std::vector<std::vector<Scalar>> inverse;
};

DualBasisBlock dual_basis_block(unsigned degree, const OrbitParams &params);

/// Truncation of the twist element F_h: coefficients c_n of Y^n (x) X^n.
struct TwistElement {
  std::vector<std::pair<unsigned, Scalar>> coeffs;

  const Scalar &c(unsigned n) const { return coeffs.at(n).second; }
  unsigned order() const { return coeffs.empty() ? 0 : coeffs.back().first; }
};

TwistElement twist(unsigned order, const OrbitParams &params);

} // namespace s2star

#include "s2star/linsolve.hpp"

namespace s2star {

inline DualBasisBlock dual_basis_block(unsigned degree, const OrbitParams &params) {
  DualBasisBlock block;
  // Homogeneous bases of degree -degree and +degree.
  std::vector<EnvElement> lower{EnvElement::monomial(Mono3{degree, 0, 0})};
  std::vector<EnvElement> upper{EnvElement::monomial(Mono3{0, 0, degree})};
  std::size_t n = lower.size();
  block.gram.assign(n, std::vector<Scalar>(n, Scalar::zero()));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      block.gram[i][j] = pairing(lower[i], upper[j], params);
  auto inv = invert_matrix(block.gram);
  if (!inv)
    throw MathError(MathError::Code::SingularBlock,
                    "pairing block at degree " + std::to_string(degree) +
                        " is singular over K");
  block.inverse = *inv;
  return block;
}

inline TwistElement twist(unsigned order, const OrbitParams &params) {
  TwistElement t;
  for (unsigned n = 0; n <= order; ++n) {
    if (n == 0) {
      t.coeffs.push_back({0, Scalar::one()});
      continue;
    }
    t.coeffs.push_back({n, dual_basis_block(n, params).inverse[0][0]});
  }
  return t;
}

/// Closed form (-1)^n h^n / (n! lambda (lambda-h) ... (lambda-(n-1)h));
/// the twist coefficients must match this exactly.
inline Scalar twist_coefficient_closed_form(unsigned n, const OrbitParams &params) {
  QPoly num = QPoly::monomial(GaussRat(Rat((n % 2) ? -1 : 1)), n);
  Int fac;
  mpz_fac_ui(fac.get_mpz_t(), n);
  QPoly den = QPoly(GaussRat(Rat(fac)));
  for (unsigned j = 0; j < n; ++j) {
    // (lambda - j h)
    QPoly factor = QPoly(GaussRat(params.lambda)) -
                   QPoly::monomial(GaussRat(Rat(static_cast<long>(j))), 1);
    den *= factor;
  }
  return Scalar(num, den);
}

} // namespace s2star
