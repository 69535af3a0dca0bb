// Searches for a diagonal pencil diag(a) / diag(b) in P^4 whose reduction
// modulo a small prime has all 16 lines rational, and prints the first hit.
// The result is pinned in tests/test_fforacle.cpp and acceptance.cpp.
#include <iostream>

#include "pencillab/ff/fforacle.hpp"
#include "pencillab/generate.hpp"

using namespace pencillab;

int main() {
  for (std::uint32_t p : {7U, 11U, 13U, 17U, 19U, 23U, 29U, 31U}) {
    auto field = std::make_shared<const ff::Field>(ff::Field::prime(p));
    SeededRng rng(p);
    for (int trial = 0; trial < 400; ++trial) {
      std::vector<Rat> a(5), b(5);
      for (std::size_t i = 0; i < 5; ++i) {
        a[i] = rng.nonzero(3);
        b[i] = rng.uniform(-9, 9);
      }
      const QuadricPencil pencil(SymMat::diagonal(a), SymMat::diagonal(b));
      if (!validate_smooth(pencil).smooth) continue;
      ff::FqPencil fp;
      try {
        fp = ff::reduce_pencil(pencil, field);
      } catch (const BadReduction&) {
        continue;
      }
      const auto census = ff::census_planes(fp, 1);
      if (census.total != 16) continue;
      std::cout << "p = " << p << "\na =";
      for (const auto& x : a) std::cout << ' ' << x;
      std::cout << "\nb =";
      for (const auto& x : b) std::cout << ' ' << x;
      std::cout << "\nlines = " << census.total << "\n";
      return 0;
    }
  }
  std::cerr << "no split example found\n";
  return 1;
}
