// Prints the twist coefficients c_n, their power series at h = 0, and their
// pole sets for a chosen lambda.

#include <iostream>

#include "s2star/pbw.hpp"

using namespace s2star;

int main(int argc, char **argv) {
  OrbitParams params(argc > 1 ? Rat(std::stol(argv[1])) : Rat(8));
  unsigned order = argc > 2 ? static_cast<unsigned>(std::stoul(argv[2])) : 8;
  std::cout << "lambda = " << rat_to_string(params.lambda) << "\n";
  TwistElement t = twist(order, params);
  for (auto &[n, c] : t.coeffs) {
    std::cout << "c_" << n << " = " << c << "\n";
    auto series = c.taylor(order + 2);
    std::cout << "     series:";
    for (auto &s : series)
      std::cout << " " << to_string(s);
    std::cout << "\n     poles:";
    for (auto &[root, mult] : c.poles().roots)
      std::cout << " " << to_string(root) << (mult > 1 ? "^" + std::to_string(mult) : "");
    std::cout << "\n";
  }
  return 0;
}
