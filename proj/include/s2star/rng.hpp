#pragma once

#include <random>

#include "s2star/abc_poly.hpp"
#include "s2star/chart.hpp"
#include "s2star/free_poly.hpp"
#include "s2star/pbw.hpp"

namespace s2star {

/// Deterministic value generator for the property suites. Same seed, same
/// sequence, on every platform (mt19937_64 is specified exactly).
class Rng {
public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t raw() { return eng_(); }

  long small_int(long lo, long hi) {
    std::uniform_int_distribution<long> d(lo, hi);
    return d(eng_);
  }

  Rat rational(long max_abs_num = 6, long max_den = 4) {
    long num = small_int(-max_abs_num, max_abs_num);
    long den = small_int(1, max_den);
    Rat r(num, den);
    r.canonicalize();
    return r;
  }

  Rat nonzero_rational(long max_abs_num = 6, long max_den = 4) {
    for (;;) {
      Rat r = rational(max_abs_num, max_den);
      if (r != 0)
        return r;
    }
  }

  GaussRat gauss(long max_abs_num = 6, long max_den = 4) {
    return GaussRat(rational(max_abs_num, max_den), rational(max_abs_num, max_den));
  }

  GaussRat nonzero_gauss(long max_abs_num = 6, long max_den = 4) {
    for (;;) {
      GaussRat g = gauss(max_abs_num, max_den);
      if (!g.is_zero())
        return g;
    }
  }

  /// Random polynomial in h of degree <= max_deg.
  QPoly qpoly(unsigned max_deg = 2) {
    std::vector<GaussRat> c(max_deg + 1);
    for (auto &x : c)
      x = gauss(4, 3);
    return QPoly(std::move(c));
  }

  Scalar scalar(unsigned max_deg = 2) {
    QPoly den;
    do {
      den = qpoly(max_deg);
    } while (den.is_zero());
    return Scalar(qpoly(max_deg), den);
  }

  /// Scalar that is regular at h = 0.
  Scalar scalar_regular_at_zero(unsigned max_deg = 2) {
    for (;;) {
      Scalar s = scalar(max_deg);
      if (s.regular_at_zero())
        return s;
    }
  }

  EnvElement env(unsigned max_filtration = 3, unsigned max_terms = 3) {
    EnvElement e;
    unsigned terms = static_cast<unsigned>(small_int(1, max_terms));
    for (unsigned t = 0; t < terms; ++t) {
      unsigned a = static_cast<unsigned>(small_int(0, max_filtration));
      unsigned b = static_cast<unsigned>(small_int(0, max_filtration - a));
      unsigned c = static_cast<unsigned>(small_int(0, max_filtration - a - b));
      e.add_term(Mono3{a, b, c}, Scalar(gauss(4, 3)));
    }
    return e;
  }

  Mono4 mono4(unsigned max_degree = 4) {
    unsigned d = static_cast<unsigned>(small_int(0, max_degree));
    unsigned eu = static_cast<unsigned>(small_int(0, d));
    unsigned eub = static_cast<unsigned>(small_int(0, d - eu));
    unsigned ev = static_cast<unsigned>(small_int(0, d - eu - eub));
    return Mono4{eu, eub, ev, d - eu - eub - ev};
  }

  FreePoly free_poly(unsigned max_degree = 4, unsigned max_terms = 3, bool gauss_coeffs = true) {
    FreePoly p;
    unsigned terms = static_cast<unsigned>(small_int(1, max_terms));
    for (unsigned t = 0; t < terms; ++t)
      p.add_term(mono4(max_degree), Scalar(gauss_coeffs ? gauss(4, 3) : GaussRat(rational(4, 3))));
    return p;
  }

  /// Random right-invariant monomial of even degree <= max_degree.
  Mono4 invariant_mono4(unsigned max_degree = 4) {
    unsigned half = static_cast<unsigned>(small_int(0, max_degree / 2));
    unsigned eu = static_cast<unsigned>(small_int(0, half));
    unsigned eub = static_cast<unsigned>(small_int(0, half));
    return Mono4{eu, eub, half - eu, half - eub};
  }

  MonoAbc mono_abc(unsigned max_degree = 3) {
    unsigned d = static_cast<unsigned>(small_int(0, max_degree));
    unsigned ea = static_cast<unsigned>(small_int(0, std::min(1u, d)));
    unsigned eb = static_cast<unsigned>(small_int(0, d - ea));
    return MonoAbc{ea, eb, d - ea - eb};
  }

  InvariantPoly invariant_poly(unsigned max_degree = 3, unsigned max_terms = 3,
                               bool constant_coeffs = true) {
    AbcPoly p;
    unsigned terms = static_cast<unsigned>(small_int(1, max_terms));
    for (unsigned t = 0; t < terms; ++t)
      p.add_term(mono_abc(max_degree),
                 constant_coeffs ? Scalar(gauss(4, 3)) : scalar(2));
    return InvariantPoly{p};
  }

  GroupElement group_element() {
    static const std::vector<GroupElement> pool = sample_group_elements(64);
    return pool[static_cast<std::size_t>(small_int(0, static_cast<long>(pool.size()) - 1))];
  }

  ChartFunction chart_function(unsigned max_degree = 2, unsigned max_m = 2,
                               unsigned max_terms = 3) {
    Poly2 num;
    unsigned terms = static_cast<unsigned>(small_int(1, max_terms));
    for (unsigned t = 0; t < terms; ++t) {
      unsigned i = static_cast<unsigned>(small_int(0, max_degree));
      unsigned j = static_cast<unsigned>(small_int(0, max_degree));
      num.add_term(Mono2{i, j}, Scalar(gauss(3, 2)));
    }
    return ChartFunction(num, static_cast<unsigned>(small_int(0, max_m)));
  }

private:
  std::mt19937_64 eng_;
};

} // namespace s2star
