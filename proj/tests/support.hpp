#pragma once

// Shared helpers for the test suites: seeded random rationals and matrices,
// plus independent oracles that do not go through the library's algorithms.

#include <cstdint>
#include <random>
#include <vector>

#include "pencillab/matrix.hpp"

namespace testsupport {

using pencillab::Matrix;
using pencillab::Rat;
using pencillab::SymMat;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : g_(seed) {}
  long integer(long lo, long hi) {
    return lo + static_cast<long>(g_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  Rat rational(long span = 5, long max_den = 3) {
    Rat r(pencillab::Int(integer(-span, span)), pencillab::Int(integer(1, max_den)));
    r.canonicalize();
    return r;
  }
  std::mt19937_64& engine() { return g_; }

 private:
  std::mt19937_64 g_;
};

inline SymMat random_sym(Rng& rng, std::size_t n, long span = 4) {
  SymMat m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) m.set(i, j, rng.rational(span));
  return m;
}

inline Matrix random_invertible(Rng& rng, std::size_t n) {
  for (;;) {
    Matrix p(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) p(i, j) = rng.rational(3);
    if (pencillab::determinant(p) != 0) return p;
  }
}

/// Characteristic polynomial det(xI - A) by Faddeev-LeVerrier, ascending.
inline std::vector<Rat> charpoly(const Matrix& a) {
  const std::size_t n = a.rows();
  std::vector<Rat> c(n + 1);
  c[n] = 1;
  Matrix m(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    Matrix am = a * m;
    for (std::size_t i = 0; i < n; ++i) am(i, i) += c[n - k + 1];
    m = am;
    Matrix t = a * m;
    Rat tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += t(i, i);
    c[n - k] = -tr / static_cast<long>(k);
  }
  return c;
}

/// Inertia of a symmetric matrix from Descartes' rule, which is exact for
/// real-rooted polynomials.
struct Inertia {
  std::size_t pos = 0, neg = 0, zero = 0;
};
inline Inertia inertia_by_descartes(const Matrix& a) {
  auto c = charpoly(a);
  Inertia in;
  while (in.zero < c.size() && c[in.zero] == 0) ++in.zero;
  auto changes = [](const std::vector<Rat>& v) {
    std::size_t ch = 0;
    int last = 0;
    for (const auto& x : v) {
      const int s = sgn(x);
      if (s == 0) continue;
      if (last != 0 && s != last) ++ch;
      last = s;
    }
    return ch;
  };
  in.pos = changes(c);
  std::vector<Rat> neg = c;
  for (std::size_t k = 1; k < neg.size(); k += 2) neg[k] = -neg[k];
  in.neg = changes(neg);
  return in;
}

}  // namespace testsupport
