#pragma once

#include <map>

#include "s2star/abc_poly.hpp"
#include "s2star/free_poly.hpp"
#include "s2star/pbw.hpp"

namespace s2star {

namespace detail {

/// Element of U(sl2) with FreePoly coefficients, enough machinery to carry
/// the symbolic adjoint action. The PBW structure constants are coefficient
/// independent, so this reuses mono_product.
struct EnvOverFree {
  std::map<Mono3, FreePoly> terms;

  void add(const Mono3 &m, const FreePoly &p) {
    if (p.is_zero())
      return;
    auto it = terms.find(m);
    if (it == terms.end()) {
      terms.emplace(m, p);
    } else {
      it->second += p;
      if (it->second.is_zero())
        terms.erase(it);
    }
  }

  /// Right-multiply by an sl2 element written as coefficients of (H, X, Y).
  EnvOverFree mul_lie(const std::array<FreePoly, 3> &z) const {
    EnvOverFree out;
    static const Mono3 gens[3] = {Mono3{0, 1, 0}, Mono3{0, 0, 1}, Mono3{1, 0, 0}};
    for (auto &[m, p] : terms)
      for (int g = 0; g < 3; ++g) {
        if (z[g].is_zero())
          continue;
        FreePoly coeff = p * z[g];
        for (auto &[ic, mono] : mono_product(m, gens[g]))
          out.add(mono, coeff.scaled(Scalar(GaussRat(Rat(ic)))));
      }
    return out;
  }
};

/// Symbolic images of the generators under Ad_{k^{-1}}, with the entries of
/// k read as the coordinate functions:
///   Ad_{k^{-1}} H = (U Ubar - V Vbar) H - 2 Ubar Vbar X - 2 U V Y
///   Ad_{k^{-1}} X = (Ubar V) H + Ubar^2 X - V^2 Y
///   Ad_{k^{-1}} Y = (U Vbar) H - Vbar^2 X + U^2 Y
inline std::array<FreePoly, 3> symbolic_ad_inv(Gen g) {
  auto mono = [](unsigned a, unsigned b, unsigned c, unsigned d, long s = 1) {
    return FreePoly::monomial(Mono4{a, b, c, d}, Scalar(Rat(s)));
  };
  switch (g) {
  case Gen::H:
    return {mono(1, 1, 0, 0) - mono(0, 0, 1, 1), mono(0, 1, 0, 1, -2),
            mono(1, 0, 1, 0, -2)};
  case Gen::X:
    return {mono(0, 1, 1, 0), mono(0, 2, 0, 0), mono(0, 0, 2, 0, -1)};
  case Gen::Y:
    return {mono(1, 0, 0, 1), mono(0, 0, 0, 2, -1), mono(2, 0, 0, 0)};
  }
  return {};
}

} // namespace detail

/// s_s a as a polynomial on the group: conjugate symbolically by k^{-1},
/// project to U(h), and apply the character H -> s. The result is always
/// right invariant.
inline SpherePoly s_function_symbolic(const EnvElement &a, const Scalar &s) {
  using detail::EnvOverFree;
  auto img_h = detail::symbolic_ad_inv(Gen::H);
  auto img_x = detail::symbolic_ad_inv(Gen::X);
  auto img_y = detail::symbolic_ad_inv(Gen::Y);
  FreePoly out;
  for (auto &[m, coeff] : a.terms()) {
    EnvOverFree acc;
    acc.add(Mono3{0, 0, 0}, FreePoly::one());
    for (unsigned i = 0; i < m.a; ++i)
      acc = acc.mul_lie(img_y);
    for (unsigned i = 0; i < m.b; ++i)
      acc = acc.mul_lie(img_h);
    for (unsigned i = 0; i < m.c; ++i)
      acc = acc.mul_lie(img_x);
    // Project to U(h) and apply the character.
    FreePoly val;
    for (auto &[mono, p] : acc.terms) {
      if (mono.a != 0 || mono.c != 0)
        continue;
      Scalar sp = Scalar::one();
      for (unsigned k = 0; k < mono.b; ++k)
        sp *= s;
      val += p.scaled(sp);
    }
    out += val.scaled(coeff);
  }
  return reduce_sphere(out);
}

} // namespace s2star
