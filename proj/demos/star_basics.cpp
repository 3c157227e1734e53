// Walks through the basic product computations: generator products,
// commutators, the asymptotic expansion, and the Poisson bracket.

#include <iostream>

#include "s2star/star.hpp"

using namespace s2star;

int main() {
  OrbitParams params;
  StarConfig cfg(params);
  InvariantPoly A{AbcPoly::A()}, B{AbcPoly::B()}, C{AbcPoly::C()};

  std::cout << "A * A   = " << to_string(star(A, A, cfg)) << "\n";
  std::cout << "B * C   = " << to_string(star(B, C, cfg)) << "\n";
  std::cout << "[A, B]  = " << to_string(commutator(A, B, cfg)) << "\n";
  std::cout << "[B, C]  = " << to_string(commutator(B, C, cfg)) << "\n";

  FormalProduct f = formal_expand(A, A, 2, params);
  for (unsigned r = 0; r < f.orders.size(); ++r)
    std::cout << "C_" << r << "(A, A) = " << to_string(f.orders[r]) << "\n";

  std::cout << "{A, B}  = " << to_string(poisson(A, B, params)) << "\n";
  std::cout << "{B, C}  = " << to_string(poisson(B, C, params)) << "\n";

  // The product at a numeric admissible h stays exact.
  StarConfig at_third(params, GaussRat(Rat(1, 3)));
  std::cout << "A * A at h = 1/3: " << to_string(star(A, A, at_third)) << "\n";
  return 0;
}
