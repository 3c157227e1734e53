#pragma once

#include <array>
#include <vector>

#include "s2star/errors.hpp"
#include "s2star/gaussrat.hpp"

namespace s2star {

/// Element of SU(2) with exact Gaussian-rational entries,
///   k = ( u  -conj(v) ; v  conj(u) ),   |u|^2 + |v|^2 = 1.
struct GroupElement {
  GaussRat u, v;

  GroupElement() : u(1), v(0) {}
  GroupElement(GaussRat u_, GaussRat v_) : u(std::move(u_)), v(std::move(v_)) {
    if (u.norm() + v.norm() != 1)
      throw MathError(MathError::Code::InvalidArgument,
                      "group element violates |u|^2 + |v|^2 = 1");
  }

  static GroupElement identity() { return GroupElement(); }

  GroupElement inverse() const {
    GroupElement k;
    k.u = u.conj();
    k.v = -v;
    return k;
  }

  /// Matrix entries, row-major.
  std::array<GaussRat, 4> matrix() const { return {u, -v.conj(), v, u.conj()}; }

  friend GroupElement operator*(const GroupElement &a, const GroupElement &b) {
    GroupElement k;
    k.u = a.u * b.u - a.v.conj() * b.v;
    k.v = a.v * b.u + a.u.conj() * b.v;
    return k;
  }

  friend bool operator==(const GroupElement &a, const GroupElement &b) {
    return a.u == b.u && a.v == b.v;
  }
};

/// Deterministic rational points of SU(2): integer quadruples (a,b,c,d) with
/// a^2+b^2+c^2+d^2 a perfect square N^2 give u = (a+bi)/N, v = (c+di)/N.
/// Enumeration is by increasing max-norm shell, then lexicographic.
inline std::vector<GroupElement> sample_group_elements(std::size_t count,
                                                       bool require_u_nonzero = false) {
  std::vector<GroupElement> out;
  for (long shell = 1; out.size() < count && shell <= 64; ++shell) {
    for (long a = -shell; a <= shell && out.size() < count; ++a)
      for (long b = -shell; b <= shell && out.size() < count; ++b)
        for (long c = -shell; c <= shell && out.size() < count; ++c)
          for (long d = -shell; d <= shell && out.size() < count; ++d) {
            if (std::max(std::max(labs(a), labs(b)), std::max(labs(c), labs(d))) != shell)
              continue;
            Int s = Int(a) * a + Int(b) * b + Int(c) * c + Int(d) * d;
            if (s == 0 || mpz_perfect_square_p(s.get_mpz_t()) == 0)
              continue;
            Int n;
            mpz_sqrt(n.get_mpz_t(), s.get_mpz_t());
            if (require_u_nonzero && a == 0 && b == 0)
              continue;
            GaussRat u(Rat(Int(a), n), Rat(Int(b), n));
            GaussRat v(Rat(Int(c), n), Rat(Int(d), n));
            u.re.canonicalize();
            u.im.canonicalize();
            v.re.canonicalize();
            v.im.canonicalize();
            GroupElement k(u, v);
            bool dup = false;
            for (auto &e : out)
              if (e == k) {
                dup = true;
                break;
              }
            if (!dup)
              out.push_back(k);
          }
  }
  return out;
}

inline std::string to_string(const GroupElement &k) {
  return "(" + to_string(k.u) + ", " + to_string(k.v) + ")";
}

} // namespace s2star
