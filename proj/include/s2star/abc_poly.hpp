#pragma once

#include <array>
#include <compare>
#include <map>
#include <vector>

#include "s2star/free_poly.hpp"
#include "s2star/linsolve.hpp"

namespace s2star {

/// Monomial A^ea B^eb C^ec.
struct MonoAbc {
  unsigned ea = 0, eb = 0, ec = 0;

  friend auto operator<=>(const MonoAbc &, const MonoAbc &) = default;
  unsigned degree() const { return ea + eb + ec; }
};

/// Free commutative polynomial in the invariant generators A, B, C. This is
/// Sym(W) in the quotient-topology picture; no relation is imposed here.
class AbcPoly {
public:
  AbcPoly() = default;

  static AbcPoly zero() { return AbcPoly(); }
  static AbcPoly one() { return monomial(MonoAbc{}); }
  static AbcPoly monomial(MonoAbc m, Scalar c = Scalar::one()) {
    AbcPoly p;
    if (!c.is_zero())
      p.t_[m] = std::move(c);
    return p;
  }
  static AbcPoly A() { return monomial(MonoAbc{1, 0, 0}); }
  static AbcPoly B() { return monomial(MonoAbc{0, 1, 0}); }
  static AbcPoly C() { return monomial(MonoAbc{0, 0, 1}); }

  const std::map<MonoAbc, Scalar> &terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }

  unsigned degree() const {
    unsigned d = 0;
    for (auto &[m, c] : t_)
      d = std::max(d, m.degree());
    return d;
  }

  void add_term(const MonoAbc &m, const Scalar &c) {
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

  AbcPoly operator-() const {
    AbcPoly r;
    for (auto &[m, c] : t_)
      r.t_.emplace(m, -c);
    return r;
  }
  friend AbcPoly operator+(const AbcPoly &a, const AbcPoly &b) {
    AbcPoly r(a);
    for (auto &[m, c] : b.t_)
      r.add_term(m, c);
    return r;
  }
  friend AbcPoly operator-(const AbcPoly &a, const AbcPoly &b) { return a + (-b); }
  friend AbcPoly operator*(const AbcPoly &a, const AbcPoly &b) {
    AbcPoly r;
    for (auto &[ma, ca] : a.t_)
      for (auto &[mb, cb] : b.t_)
        r.add_term(MonoAbc{ma.ea + mb.ea, ma.eb + mb.eb, ma.ec + mb.ec}, ca * cb);
    return r;
  }
  AbcPoly &operator+=(const AbcPoly &b) { return *this = *this + b; }
  AbcPoly &operator-=(const AbcPoly &b) { return *this = *this - b; }
  AbcPoly &operator*=(const AbcPoly &b) { return *this = *this * b; }

  AbcPoly scaled(const Scalar &s) const {
    AbcPoly r;
    if (s.is_zero())
      return r;
    for (auto &[m, c] : t_)
      r.t_.emplace(m, c * s);
    return r;
  }

  AbcPoly pow(unsigned e) const {
    AbcPoly r = one();
    for (unsigned i = 0; i < e; ++i)
      r *= *this;
    return r;
  }

  friend bool operator==(const AbcPoly &a, const AbcPoly &b) { return a.t_ == b.t_; }
  friend bool operator!=(const AbcPoly &a, const AbcPoly &b) { return !(a == b); }

private:
  std::map<MonoAbc, Scalar> t_;
};

/// Normal form modulo A^2 = 1 - 4BC: every monomial has A-exponent <= 1.
struct InvariantPoly {
  AbcPoly poly;

  bool is_zero() const { return poly.is_zero(); }
  unsigned degree() const { return poly.degree(); }
  friend bool operator==(const InvariantPoly &a, const InvariantPoly &b) {
    return a.poly == b.poly;
  }
  friend bool operator!=(const InvariantPoly &a, const InvariantPoly &b) {
    return !(a == b);
  }
};

/// Unique remainder under A^2 -> 1 - 4BC. Closed form per monomial:
/// A^(2q+r) = (1 - 4BC)^q A^r.
inline InvariantPoly reduce_invariant(const AbcPoly &p) {
  AbcPoly out;
  for (auto &[m, c] : p.terms()) {
    unsigned q = m.ea / 2, r = m.ea % 2;
    if (q == 0) {
      out.add_term(m, c);
      continue;
    }
    Int binom;
    for (unsigned j = 0; j <= q; ++j) {
      mpz_bin_uiui(binom.get_mpz_t(), q, j);
      Int pw;
      mpz_ui_pow_ui(pw.get_mpz_t(), 4, j);
      Rat coeff(binom * pw);
      if (j % 2)
        coeff = -coeff;
      out.add_term(MonoAbc{r, m.eb + j, m.ec + j}, c * Scalar(coeff));
    }
  }
  return InvariantPoly{out};
}

/// One rewrite step for the confluence tests.
inline bool rewrite_invariant_step(AbcPoly &p, const MonoAbc &which) {
  auto it = p.terms().find(which);
  if (it == p.terms().end() || which.ea < 2)
    return false;
  Scalar c = it->second;
  p.add_term(which, -c);
  p.add_term(MonoAbc{which.ea - 2, which.eb, which.ec}, c);
  p.add_term(MonoAbc{which.ea - 2, which.eb + 1, which.ec + 1}, c * Scalar(-4));
  return true;
}

/// The defining embeddings A = U Ubar - V Vbar, B = Ubar V, C = U Vbar.
inline FreePoly embed_free(const AbcPoly &p) {
  FreePoly a = FreePoly::monomial(Mono4{1, 1, 0, 0}) -
               FreePoly::monomial(Mono4{0, 0, 1, 1});
  FreePoly b = FreePoly::monomial(Mono4{0, 1, 1, 0});
  FreePoly c = FreePoly::monomial(Mono4{1, 0, 0, 1});
  FreePoly out;
  for (auto &[m, coeff] : p.terms()) {
    FreePoly term = FreePoly::one().scaled(coeff);
    term *= a.pow(m.ea);
    term *= b.pow(m.eb);
    term *= c.pow(m.ec);
    out += term;
  }
  return out;
}

/// Canonical sphere representative of an invariant polynomial.
inline SpherePoly embed(const InvariantPoly &p) { return reduce_sphere(embed_free(p.poly)); }

/// Exact linear solve of embed(w) = p against the embedded ABC normal-form
/// monomials of embedded degree <= bound. Unique when it exists.
inline InvariantPoly to_ABC(const SpherePoly &p, unsigned bound) {
  if (!is_right_invariant(p.poly))
    throw MathError(MathError::Code::NotInvariant,
                    "to_ABC requires a right-invariant polynomial");
  // Candidate monomials in normal form (ea <= 1), embedded degree 2*deg.
  std::vector<MonoAbc> basis;
  for (unsigned d = 0; 2 * d <= bound; ++d)
    for (unsigned ea = 0; ea <= std::min(1u, d); ++ea)
      for (unsigned eb = 0; ea + eb <= d; ++eb)
        basis.push_back(MonoAbc{ea, eb, d - ea - eb});
  std::map<Mono4, std::size_t> row_of;
  auto row_index = [&row_of](const Mono4 &m) {
    auto it = row_of.find(m);
    if (it != row_of.end())
      return it->second;
    std::size_t idx = row_of.size();
    row_of.emplace(m, idx);
    return idx;
  };
  std::vector<SpherePoly> cols;
  cols.reserve(basis.size());
  for (auto &m : basis) {
    cols.push_back(embed(InvariantPoly{AbcPoly::monomial(m)}));
    for (auto &[mono, c] : cols.back().poly.terms())
      row_index(mono);
  }
  for (auto &[mono, c] : p.poly.terms())
    row_index(mono);
  SMat A(row_of.size(), SVec(basis.size(), Scalar::zero()));
  SVec rhs(row_of.size(), Scalar::zero());
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (auto &[mono, c] : cols[j].poly.terms())
      A[row_of[mono]][j] = c;
  for (auto &[mono, c] : p.poly.terms())
    rhs[row_of[mono]] = c;
  auto sol = solve_linear(std::move(A), std::move(rhs));
  if (!sol.solvable)
    throw MathError(MathError::Code::NoPreimageWithinBound,
                    "no ABC preimage within embedded degree " + std::to_string(bound));
  AbcPoly out;
  for (std::size_t j = 0; j < basis.size(); ++j)
    out.add_term(basis[j], sol.particular[j]);
  return InvariantPoly{out};
}

/// The invariant images of the Killing-dual linear functions:
/// f_H -> i*lambda*A, f_X -> i*lambda*B, f_Y -> i*lambda*C.
inline std::array<InvariantPoly, 3> linear_functions(const OrbitParams &params) {
  Scalar il = Scalar::i() * Scalar(params.lambda);
  return {InvariantPoly{AbcPoly::A().scaled(il)}, InvariantPoly{AbcPoly::B().scaled(il)},
          InvariantPoly{AbcPoly::C().scaled(il)}};
}

/// Complex conjugation on the sphere algebra: A -> A, B <-> C, coefficients
/// conjugated.
inline InvariantPoly conj(const InvariantPoly &p) {
  AbcPoly out;
  for (auto &[m, c] : p.poly.terms())
    out.add_term(MonoAbc{m.ea, m.ec, m.eb}, c.conj_coeffs());
  return InvariantPoly{out};
}

inline GaussRat evaluate(const InvariantPoly &p, const GroupElement &k,
                         const std::optional<GaussRat> &h = std::nullopt) {
  GaussRat a = GaussRat(Rat(k.u.norm() - k.v.norm()));
  GaussRat b = k.u.conj() * k.v;
  GaussRat c = k.u * k.v.conj();
  GaussRat out;
  for (auto &[m, coeff] : p.poly.terms()) {
    GaussRat cv;
    if (coeff.is_constant())
      cv = coeff.constant();
    else if (h)
      cv = coeff.eval(*h);
    else
      throw MathError(MathError::Code::NotConstant,
                      "evaluation requires a numeric h for h-dependent coefficients");
    GaussRat mono(1);
    for (unsigned i = 0; i < m.ea; ++i)
      mono *= a;
    for (unsigned i = 0; i < m.eb; ++i)
      mono *= b;
    for (unsigned i = 0; i < m.ec; ++i)
      mono *= c;
    out += cv * mono;
  }
  return out;
}

/// The substitution f: Sym(W) -> P^inv, A^a B^b C^c |->
/// (U Ubar - V Vbar)^a (Ubar V)^b (U Vbar)^c, extended linearly.
inline FreePoly quot_map_f(const AbcPoly &p) { return embed_free(p); }

/// The min-exponent formula g: right-invariant monomials of P^inv ->
/// Sym(W),
///   U^al Ubar^be V^ga Vbar^de |->
///   ((1+A)/2)^(al - al^de) ((1-A)/2)^(de - al^de) B^(be^ga) C^(al^de)
/// with m^n = min(m, n), extended linearly.
inline AbcPoly quot_map_g(const FreePoly &p) {
  AbcPoly half_plus;
  half_plus.add_term(MonoAbc{0, 0, 0}, Scalar(Rat(1, 2)));
  half_plus.add_term(MonoAbc{1, 0, 0}, Scalar(Rat(1, 2)));
  AbcPoly half_minus;
  half_minus.add_term(MonoAbc{0, 0, 0}, Scalar(Rat(1, 2)));
  half_minus.add_term(MonoAbc{1, 0, 0}, Scalar(Rat(-1, 2)));
  AbcPoly out;
  for (auto &[m, c] : p.terms()) {
    if (!m.right_invariant())
      throw MathError(MathError::Code::NotInvariant,
                      "quot_map_g requires right-invariant monomials");
    unsigned ad = std::min(m.eu, m.evb);
    unsigned bg = std::min(m.eub, m.ev);
    AbcPoly term = half_plus.pow(m.eu - ad) * half_minus.pow(m.evb - ad);
    term *= AbcPoly::monomial(MonoAbc{0, bg, ad});
    out += term.scaled(c);
  }
  return out;
}

inline std::string mono_to_string(const MonoAbc &m) {
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
  app("A", m.ea);
  app("B", m.eb);
  app("C", m.ec);
  return s;
}

/// Canonical text: monomials in lexicographic exponent order, scalar
/// coefficients in their canonical form.
inline std::string to_string(const AbcPoly &p) {
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

inline std::string to_string(const InvariantPoly &p) { return to_string(p.poly); }

} // namespace s2star
