#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pencillab/error.hpp"
#include "pencillab/rational.hpp"

namespace pencillab::ff {

using Elem = std::uint32_t;

/// F_p or F_{p^2} = F_p(sqrt(nu)) for the least quadratic non-residue nu.
/// Elements are indices 0..q-1; a + b*sqrt(nu) has index a + b*p, so F_p sits
/// inside as the indices below p. Arithmetic runs on precomputed tables.
class Field {
 public:
  static constexpr std::uint32_t max_order = 1024;

  static Field prime(std::uint32_t p) { return Field(p, 1); }
  static Field quadratic(std::uint32_t p) { return Field(p, 2); }
  static Field of_degree(std::uint32_t p, unsigned degree) {
    if (degree != 1 && degree != 2) throw InvalidArgument("only F_p and F_{p^2} are supported");
    return Field(p, degree);
  }

  [[nodiscard]] std::uint32_t characteristic() const { return p_; }
  [[nodiscard]] unsigned degree() const { return degree_; }
  [[nodiscard]] std::uint32_t order() const { return q_; }
  /// The non-residue adjoined in the quadratic case (0 for a prime field).
  [[nodiscard]] std::uint32_t nonresidue() const { return nu_; }

  [[nodiscard]] Elem add(Elem a, Elem b) const { return add_[a * q_ + b]; }
  [[nodiscard]] Elem mul(Elem a, Elem b) const { return mul_[a * q_ + b]; }
  [[nodiscard]] Elem neg(Elem a) const { return neg_[a]; }
  [[nodiscard]] Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  [[nodiscard]] Elem inv(Elem a) const {
    if (a == 0) throw InvalidArgument("division by zero in F_q");
    return inv_[a];
  }

  [[nodiscard]] Elem from_int(long v) const {
    const long p = p_;
    return static_cast<Elem>(((v % p) + p) % p);
  }
  [[nodiscard]] Elem from_int(const Int& v) const {
    Int m = v % Int(p_);
    if (m < 0) m += p_;
    return static_cast<Elem>(m.get_ui());
  }
  /// Image of a rational whose denominator is prime to p.
  [[nodiscard]] Elem from_rat(const Rat& v) const {
    const Elem den = from_int(Int(v.get_den()));
    if (den == 0) throw BadReduction("denominator of " + v.get_str() + " is divisible by " + std::to_string(p_));
    return mul(from_int(Int(v.get_num())), inv(den));
  }

  [[nodiscard]] std::string str(Elem a) const {
    if (degree_ == 1) return std::to_string(a);
    return std::to_string(a % p_) + "+" + std::to_string(a / p_) + "w";
  }

 private:
  Field(std::uint32_t p, unsigned degree) : p_(p), degree_(degree) {
    if (p < 3) throw InvalidArgument("the characteristic must be an odd prime");
    for (std::uint32_t d = 2; d * d <= p; ++d)
      if (p % d == 0) throw InvalidArgument(std::to_string(p) + " is not prime");
    q_ = degree == 1 ? p : p * p;
    if (q_ > max_order) throw InvalidArgument("field order " + std::to_string(q_) + " is above the table limit");
    if (degree == 2) {
      std::vector<bool> square(p, false);
      for (std::uint32_t x = 1; x < p; ++x) square[(x * x) % p] = true;
      nu_ = 2;
      while (square[nu_]) ++nu_;
    }
    add_.resize(std::size_t{q_} * q_);
    mul_.resize(std::size_t{q_} * q_);
    neg_.resize(q_);
    inv_.assign(q_, 0);
    for (Elem a = 0; a < q_; ++a) {
      const auto [a0, a1] = split(a);
      neg_[a] = join((p - a0) % p, (p - a1) % p);
      for (Elem b = 0; b < q_; ++b) {
        const auto [b0, b1] = split(b);
        add_[a * q_ + b] = join((a0 + b0) % p, (a1 + b1) % p);
        // (a0 + a1 w)(b0 + b1 w) with w^2 = nu.
        const std::uint64_t c0 = (std::uint64_t{a0} * b0 + std::uint64_t{a1} * b1 % p * nu_) % p;
        const std::uint64_t c1 = (std::uint64_t{a0} * b1 + std::uint64_t{a1} * b0) % p;
        const Elem c = join(static_cast<std::uint32_t>(c0), static_cast<std::uint32_t>(c1));
        mul_[a * q_ + b] = c;
        if (c == 1) inv_[a] = b;
      }
    }
  }

  [[nodiscard]] std::pair<std::uint32_t, std::uint32_t> split(Elem a) const { return {a % p_, a / p_}; }
  [[nodiscard]] Elem join(std::uint32_t a0, std::uint32_t a1) const { return a0 + a1 * p_; }

  std::uint32_t p_;
  unsigned degree_;
  std::uint32_t q_ = 0;
  std::uint32_t nu_ = 0;
  std::vector<Elem> add_, mul_, neg_, inv_;
};

/// Dense univariate polynomial over a Field, ascending coefficients, trimmed.
using FPoly = std::vector<Elem>;

inline void trim(FPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

inline FPoly poly_sub(const Field& F, FPoly a, const FPoly& b) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = F.sub(a[i], b[i]);
  trim(a);
  return a;
}

inline FPoly poly_mul(const Field& F, const FPoly& a, const FPoly& b) {
  if (a.empty() || b.empty()) return {};
  FPoly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = F.add(c[i + j], F.mul(a[i], b[j]));
  trim(c);
  return c;
}

inline FPoly poly_add(const Field& F, FPoly a, const FPoly& b) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = F.add(a[i], b[i]);
  trim(a);
  return a;
}

/// Remainder of a by b (b nonzero).
inline FPoly poly_mod(const Field& F, FPoly a, const FPoly& b) {
  if (b.empty()) throw InvalidArgument("polynomial division by zero");
  const Elem lead_inv = F.inv(b.back());
  while (a.size() >= b.size()) {
    const Elem c = F.mul(a.back(), lead_inv);
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = F.sub(a[shift + i], F.mul(c, b[i]));
    trim(a);
  }
  return a;
}

inline FPoly poly_gcd(const Field& F, FPoly a, FPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    FPoly r = poly_mod(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

inline FPoly poly_derivative(const Field& F, const FPoly& f) {
  FPoly d;
  for (std::size_t i = 1; i < f.size(); ++i) d.push_back(F.mul(F.from_int(static_cast<long>(i)), f[i]));
  trim(d);
  return d;
}

inline Elem poly_eval(const Field& F, const FPoly& f, Elem x) {
  Elem acc = 0;
  for (std::size_t i = f.size(); i-- > 0;) acc = F.add(F.mul(acc, x), f[i]);
  return acc;
}

/// Multiplicity of x as a root of a nonzero polynomial.
inline unsigned root_multiplicity(const Field& F, FPoly f, Elem x) {
  trim(f);
  if (f.empty()) throw InvalidArgument("zero polynomial has no root multiplicity");
  unsigned m = 0;
  while (poly_eval(F, f, x) == 0) {
    // Synthetic division by (u - x).
    FPoly q(f.size() - 1, 0);
    Elem carry = 0;
    for (std::size_t i = f.size(); i-- > 1;) {
      carry = F.add(F.mul(carry, x), f[i]);
      q[i - 1] = carry;
    }
    f = std::move(q);
    trim(f);
    ++m;
  }
  return m;
}

}  // namespace pencillab::ff
