#pragma once

#include <cstddef>
#include <vector>

#include "pencillab/poly.hpp"

namespace pencillab {

/// Open interval (lo, hi) with f(lo), f(hi) nonzero.
struct Interval {
  Rat lo;
  Rat hi;
  [[nodiscard]] Rat mid() const { return (lo + hi) / 2; }
  [[nodiscard]] Rat width() const { return hi - lo; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Real roots of a binary form on P^1(R). `intervals` isolate the roots of
/// f(u, 1) in increasing order of u = s/t; the root [1:0] is a separate flag.
struct RootIsolation {
  std::vector<Interval> intervals;
  bool squarefree = true;
  bool root_at_infinity = false;
  [[nodiscard]] std::size_t count() const { return intervals.size() + (root_at_infinity ? 1 : 0); }
};

/// Sturm chain g, g', -rem, ... with every member rescaled by a positive
/// rational (sign patterns are unaffected).
class SturmChain {
 public:
  explicit SturmChain(const UniPoly& g) {
    if (g.is_zero()) throw InvalidArgument("Sturm chain of the zero polynomial");
    chain_.push_back(g.positive_rescale());
    UniPoly next = g.derivative().positive_rescale();
    while (!next.is_zero()) {
      chain_.push_back(next);
      next = (-(chain_[chain_.size() - 2] % chain_.back())).positive_rescale();
    }
  }

  [[nodiscard]] std::size_t variations_at(const Rat& x) const {
    std::size_t v = 0;
    int last = 0;
    for (const auto& p : chain_) {
      const int s = p.sign_at(x);
      if (s == 0) continue;
      if (last != 0 && s != last) ++v;
      last = s;
    }
    return v;
  }
  /// Variations at +infinity (positive) or -infinity (negative).
  [[nodiscard]] std::size_t variations_at_infinity(bool positive) const {
    std::size_t v = 0;
    int last = 0;
    for (const auto& p : chain_) {
      int s = sgn(p.lead());
      if (!positive && p.degree() % 2 == 1) s = -s;
      if (last != 0 && s != last) ++v;
      last = s;
    }
    return v;
  }
  /// Distinct real roots in (a, b], for a < b.
  [[nodiscard]] std::size_t count_in(const Rat& a, const Rat& b) const {
    return variations_at(a) - variations_at(b);
  }
  [[nodiscard]] std::size_t count_real() const {
    return variations_at_infinity(false) - variations_at_infinity(true);
  }
  [[nodiscard]] const std::vector<UniPoly>& members() const { return chain_; }

 private:
  std::vector<UniPoly> chain_;
};

/// A power of two strictly exceeding every |root| (Cauchy bound).
inline Rat root_bound(const UniPoly& g) {
  Rat m = 0;
  for (int k = 0; k < g.degree(); ++k) {
    Rat q = abs(g.coeff(static_cast<std::size_t>(k)) / g.lead());
    if (q > m) m = q;
  }
  Rat b = 1;
  while (b <= m + 1) b *= 2;
  return b;
}

/// Isolates the real roots of a squarefree polynomial g.
inline std::vector<Interval> isolate_affine_roots(const UniPoly& g) {
  std::vector<Interval> out;
  if (g.degree() <= 0) return out;
  const SturmChain sc(g);
  const Rat b = root_bound(g);
  struct Job {
    Rat lo, hi;
    std::size_t n;
  };
  std::vector<Job> stack{{-b, b, sc.count_in(-b, b)}};
  while (!stack.empty()) {
    Job j = stack.back();
    stack.pop_back();
    if (j.n == 0) continue;
    if (j.n == 1) {
      out.push_back({j.lo, j.hi});
      continue;
    }
    Rat m = (j.lo + j.hi) / 2;
    while (g.sign_at(m) == 0) m = (j.lo + m) / 2;
    const std::size_t left = sc.count_in(j.lo, m);
    // Push right first so the left half is processed first.
    stack.push_back({m, j.hi, j.n - left});
    stack.push_back({j.lo, m, left});
  }
  return out;
}

inline RootIsolation isolate_real_roots(const BinaryForm& f) {
  if (!is_squarefree(f)) throw InvalidArgument("root isolation needs a squarefree form");
  RootIsolation iso;
  iso.root_at_infinity = f.coeffs().front() == 0;
  iso.intervals = isolate_affine_roots(f.dehomogenize());
  return iso;
}

/// Shrinks an isolating interval of g below the given width.
inline Interval refine(const UniPoly& g, Interval iv, const Rat& max_width) {
  const int s_lo = g.sign_at(iv.lo);
  while (iv.width() >= max_width) {
    const Rat m = iv.mid();
    const int s = g.sign_at(m);
    if (s == 0) {
      iv = {(iv.lo + m) / 2, (m + iv.hi) / 2};
      continue;
    }
    if (s == s_lo)
      iv.lo = m;
    else
      iv.hi = m;
  }
  return iv;
}

}  // namespace pencillab
