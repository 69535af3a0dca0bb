#pragma once

#include <compare>
#include <cstddef>
#include <ostream>

#include "pencillab/matrix.hpp"

namespace pencillab {

struct Signature {
  std::size_t positives = 0;
  std::size_t negatives = 0;
  std::size_t corank = 0;

  [[nodiscard]] std::size_t dim() const { return positives + negatives + corank; }
  friend auto operator<=>(const Signature&, const Signature&) = default;
  friend std::ostream& operator<<(std::ostream& os, const Signature& s) {
    return os << '(' << s.positives << ',' << s.negatives << ',' << s.corank << ')';
  }
};

/// Exact inertia by symmetric elimination over Q.
///
/// Each step either splits off a nonzero diagonal pivot a (contributing its
/// sign), or, when the remaining diagonal vanishes but some a = A[i][j] != 0,
/// splits off the hyperbolic block on {i, j}, which contributes (1, 1). The
/// Schur complement of that block is A_rest - (A_ri A_jr + A_rj A_ir) / a.
inline Signature signature_of(const SymMat& input) {
  Matrix a = input.matrix();
  std::size_t n = a.rows();
  Signature sig;
  std::vector<std::size_t> live(n);
  for (std::size_t i = 0; i < n; ++i) live[i] = i;

  auto drop = [&live](std::size_t idx) { live.erase(live.begin() + static_cast<std::ptrdiff_t>(idx)); };

  while (!live.empty()) {
    std::size_t pivot = live.size();
    for (std::size_t k = 0; k < live.size(); ++k)
      if (a(live[k], live[k]) != 0) {
        pivot = k;
        break;
      }
    if (pivot < live.size()) {
      const std::size_t p = live[pivot];
      const Rat d = a(p, p);
      (sgn(d) > 0 ? sig.positives : sig.negatives)++;
      drop(pivot);
      for (auto i : live) {
        if (a(i, p) == 0) continue;
        const Rat f = a(i, p) / d;
        for (auto j : live) a(i, j) -= f * a(p, j);
      }
      continue;
    }
    // Zero diagonal: look for an off-diagonal entry.
    std::size_t bi = live.size(), bj = live.size();
    for (std::size_t x = 0; x < live.size() && bi == live.size(); ++x)
      for (std::size_t y = x + 1; y < live.size(); ++y)
        if (a(live[x], live[y]) != 0) {
          bi = x;
          bj = y;
          break;
        }
    if (bi == live.size()) {
      sig.corank += live.size();
      break;
    }
    const std::size_t i = live[bi], j = live[bj];
    const Rat h = a(i, j);
    sig.positives++;
    sig.negatives++;
    drop(bj);
    drop(bi);
    // Diagonal entries of the block are zero, so its inverse is [[0,1/h],[1/h,0]].
    std::vector<Rat> ci, cj;
    for (auto r : live) {
      ci.push_back(a(r, i));
      cj.push_back(a(r, j));
    }
    for (std::size_t x = 0; x < live.size(); ++x)
      for (std::size_t y = 0; y < live.size(); ++y)
        a(live[x], live[y]) -= (ci[x] * cj[y] + cj[x] * ci[y]) / h;
  }
  return sig;
}

}  // namespace pencillab
