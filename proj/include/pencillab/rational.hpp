#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

#include "pencillab/error.hpp"

namespace pencillab {

/// Arbitrary-precision rational. gmpxx keeps results of arithmetic in lowest
/// terms with a positive denominator; values built from strings go through
/// parse_rat, which canonicalizes.
using Rat = mpq_class;
using Int = mpz_class;

/// Parses "p/q" or "p" (optional leading sign, decimal digits only).
inline Rat parse_rat(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw ParseError("empty rational literal");
  auto digits_ok = [](std::string_view d) {
    if (d.empty()) return false;
    std::size_t i = (d[0] == '-' || d[0] == '+') ? 1 : 0;
    if (i == d.size()) return false;
    for (; i < d.size(); ++i)
      if (d[i] < '0' || d[i] > '9') return false;
    return true;
  };
  const auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!digits_ok(num) || !digits_ok(den) || den[0] == '-' || den[0] == '+')
    throw ParseError("malformed rational literal '" + s + "'");
  if (num[0] == '+') num.erase(0, 1);
  Rat r;
  r.get_num() = Int(num, 10);
  r.get_den() = Int(den, 10);
  if (r.get_den() == 0) throw ParseError("zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rat& r) { return r.get_str(); }

inline int sign(const Rat& r) { return sgn(r); }

/// Least common multiple of denominators.
inline Int common_denominator(const std::vector<Rat>& v) {
  Int l = 1;
  for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  return l;
}

/// Scales v by a positive rational so that the entries are coprime integers.
/// Returns the zero vector unchanged.
inline std::vector<Rat> primitive_part(std::vector<Rat> v) {
  const Int l = common_denominator(v);
  Int g = 0;
  for (auto& x : v) {
    x *= l;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_num_mpz_t());
  }
  if (g == 0) return v;
  for (auto& x : v) x /= g;
  return v;
}

}  // namespace pencillab
