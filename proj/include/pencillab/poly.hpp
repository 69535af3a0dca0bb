#pragma once

#include <cstddef>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "pencillab/matrix.hpp"

namespace pencillab {

/// Univariate polynomial over Q, ascending coefficients, no trailing zeros.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rat> ascending) : c_(std::move(ascending)) { trim(); }
  static UniPoly constant(const Rat& a) { return UniPoly(std::vector<Rat>{a}); }
  static UniPoly x() { return UniPoly(std::vector<Rat>{0, 1}); }

  [[nodiscard]] bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  [[nodiscard]] int degree() const { return static_cast<int>(c_.size()) - 1; }
  [[nodiscard]] const std::vector<Rat>& coeffs() const { return c_; }
  [[nodiscard]] Rat coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Rat(0); }
  [[nodiscard]] const Rat& lead() const { return c_.back(); }

  [[nodiscard]] Rat operator()(const Rat& x) const {
    Rat acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }
  [[nodiscard]] int sign_at(const Rat& x) const { return sgn((*this)(x)); }

  [[nodiscard]] UniPoly derivative() const {
    std::vector<Rat> d;
    for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(c_[k] * static_cast<long>(k));
    return UniPoly(std::move(d));
  }

  /// Positive rational multiple with coprime integer coefficients and positive
  /// leading coefficient.
  [[nodiscard]] UniPoly primitive() const {
    if (is_zero()) return *this;
    auto v = primitive_part(c_);
    if (sgn(v.back()) < 0)
      for (auto& x : v) x = -x;
    return UniPoly(std::move(v));
  }
  /// Same as primitive() but keeps the sign of the leading coefficient.
  [[nodiscard]] UniPoly positive_rescale() const {
    if (is_zero()) return *this;
    return UniPoly(primitive_part(c_));
  }

  friend bool operator==(const UniPoly&, const UniPoly&) = default;

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
    std::vector<Rat> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t k = 0; k < r.size(); ++k) r[k] = a.coeff(k) + b.coeff(k);
    return UniPoly(std::move(r));
  }
  friend UniPoly operator-(const UniPoly& a) {
    auto r = a.c_;
    for (auto& x : r) x = -x;
    return UniPoly(std::move(r));
  }
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + (-b); }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rat> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return UniPoly(std::move(r));
  }
  friend UniPoly operator*(const Rat& s, const UniPoly& a) {
    auto r = a.c_;
    for (auto& x : r) x *= s;
    return UniPoly(std::move(r));
  }

  /// Euclidean division: a = q*b + r with deg r < deg b.
  friend std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
    if (b.is_zero()) throw InvalidArgument("polynomial division by zero");
    std::vector<Rat> rem = a.c_;
    if (a.degree() < b.degree()) return {UniPoly{}, a};
    std::vector<Rat> quo(static_cast<std::size_t>(a.degree() - b.degree() + 1));
    const Rat& lb = b.lead();
    for (int k = a.degree() - b.degree(); k >= 0; --k) {
      const auto top = static_cast<std::size_t>(k + b.degree());
      const Rat f = rem[top] / lb;
      quo[static_cast<std::size_t>(k)] = f;
      if (f == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) rem[static_cast<std::size_t>(k) + j] -= f * b.c_[j];
    }
    return {UniPoly(std::move(quo)), UniPoly(std::move(rem))};
  }
  friend UniPoly operator%(const UniPoly& a, const UniPoly& b) { return divmod(a, b).second; }
  friend UniPoly operator/(const UniPoly& a, const UniPoly& b) { return divmod(a, b).first; }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rat> c_;
};

/// Greatest common divisor, normalized by primitive(). gcd(0, 0) = 0.
inline UniPoly gcd(UniPoly a, UniPoly b) {
  while (!b.is_zero()) {
    UniPoly r = (a % b).positive_rescale();
    a = std::move(b);
    b = std::move(r);
  }
  return a.primitive();
}

/// Product of the distinct irreducible factors.
inline UniPoly squarefree_part(const UniPoly& g) {
  if (g.degree() <= 0) return g.is_zero() ? g : UniPoly::constant(1);
  return (g / gcd(g, g.derivative())).primitive();
}

/// Binary form of degree d; coefficient i multiplies s^(d-i) t^i.
class BinaryForm {
 public:
  BinaryForm() = default;
  BinaryForm(std::size_t degree, std::vector<Rat> coeffs) : d_(degree), c_(std::move(coeffs)) {
    if (c_.size() != d_ + 1) throw InvalidArgument("binary form needs degree+1 coefficients");
  }

  /// t^m * t^deg(g) g(s/t): the form of degree deg(g)+m whose affine part is g
  /// and which vanishes to order m at [1:0].
  static BinaryForm homogenize(const UniPoly& g, std::size_t m_inf) {
    if (g.is_zero()) throw InvalidArgument("cannot homogenize the zero polynomial");
    const auto dg = static_cast<std::size_t>(g.degree());
    const std::size_t d = dg + m_inf;
    std::vector<Rat> c(d + 1);
    for (std::size_t k = 0; k <= dg; ++k) c[d - k] = g.coeff(k);
    return {d, std::move(c)};
  }

  [[nodiscard]] std::size_t degree() const { return d_; }
  [[nodiscard]] const std::vector<Rat>& coeffs() const { return c_; }
  [[nodiscard]] bool is_zero() const {
    for (const auto& x : c_)
      if (x != 0) return false;
    return true;
  }

  [[nodiscard]] Rat operator()(const Rat& s, const Rat& t) const {
    Rat acc = 0;
    // Horner in s with t-powers accumulated.
    Rat tp = 1;
    std::vector<Rat> tpow(d_ + 1);
    for (std::size_t i = 0; i <= d_; ++i) {
      tpow[i] = tp;
      tp *= t;
    }
    for (std::size_t i = 0; i <= d_; ++i) acc = acc * s + c_[i] * tpow[i];
    return acc;
  }

  /// f(u, 1) as a polynomial in u.
  [[nodiscard]] UniPoly dehomogenize() const {
    std::vector<Rat> a(d_ + 1);
    for (std::size_t i = 0; i <= d_; ++i) a[d_ - i] = c_[i];
    return UniPoly(std::move(a));
  }
  /// Order of vanishing at [1:0] (number of leading zero coefficients).
  [[nodiscard]] std::size_t multiplicity_at_infinity() const {
    if (is_zero()) throw InvalidArgument("zero form has no multiplicity");
    std::size_t m = 0;
    while (c_[m] == 0) ++m;
    return m;
  }

  /// Scaled to coprime integer coefficients with the first nonzero one positive.
  [[nodiscard]] BinaryForm normalized() const {
    if (is_zero()) return *this;
    auto v = primitive_part(c_);
    for (const auto& x : v)
      if (x != 0) {
        if (sgn(x) < 0)
          for (auto& y : v) y = -y;
        break;
      }
    return {d_, std::move(v)};
  }

  friend bool operator==(const BinaryForm&, const BinaryForm&) = default;

  friend BinaryForm operator*(const BinaryForm& a, const BinaryForm& b) {
    std::vector<Rat> c(a.d_ + b.d_ + 1);
    for (std::size_t i = 0; i <= a.d_; ++i)
      for (std::size_t j = 0; j <= b.d_; ++j) c[i + j] += a.c_[i] * b.c_[j];
    return {a.d_ + b.d_, std::move(c)};
  }

  /// Human-readable, e.g. "s^3 + 6*s^2*t - t^3".
  [[nodiscard]] std::string str() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i <= d_; ++i) {
      const Rat& a = c_[i];
      if (a == 0) continue;
      const std::size_t es = d_ - i, et = i;
      Rat mag = abs(a);
      if (first) {
        if (sgn(a) < 0) os << '-';
      } else {
        os << (sgn(a) < 0 ? " - " : " + ");
      }
      first = false;
      bool need_star = false;
      if (mag != 1 || (es == 0 && et == 0)) {
        os << mag.get_str();
        need_star = true;
      }
      auto var = [&](char v, std::size_t e) {
        if (e == 0) return;
        if (need_star) os << '*';
        os << v;
        if (e > 1) os << '^' << e;
        need_star = true;
      };
      var('s', es);
      var('t', et);
    }
    if (first) os << '0';
    return os.str();
  }

 private:
  std::size_t d_ = 0;
  std::vector<Rat> c_{Rat(0)};
};

/// det(sA + tB), by interpolation: the s^n coefficient is det A (the point
/// [1:0]); the rest comes from f(x, 1) - det(A) x^n at x = 0, 1, ..., n-1.
inline BinaryForm binary_det(const SymMat& a, const SymMat& b) {
  if (a.dim() != b.dim()) throw InvalidArgument("pencil matrices differ in dimension");
  const std::size_t n = a.dim();
  const Rat c0 = determinant(a.matrix());
  if (n == 0) return {0, {Rat(1)}};

  std::vector<Rat> xs(n), ys(n);
  for (std::size_t j = 0; j < n; ++j) {
    xs[j] = static_cast<long>(j);
    Rat xn = 1;
    for (std::size_t k = 0; k < n; ++k) xn *= xs[j];
    ys[j] = determinant((xs[j] * a.matrix()) + b.matrix()) - c0 * xn;
  }
  // Newton divided differences, then expand to the monomial basis.
  std::vector<Rat> dd = ys;
  for (std::size_t k = 1; k < n; ++k)
    for (std::size_t j = n - 1; j >= k; --j) {
      dd[j] = (dd[j] - dd[j - 1]) / (xs[j] - xs[j - k]);
      if (j == k) break;
    }
  UniPoly h = UniPoly::constant(dd[n - 1]);
  for (std::size_t k = n - 1; k-- > 0;) h = h * UniPoly(std::vector<Rat>{-xs[k], 1}) + UniPoly::constant(dd[k]);

  std::vector<Rat> c(n + 1);
  c[0] = c0;
  for (std::size_t i = 1; i <= n; ++i) c[i] = h.coeff(n - i);
  return {n, std::move(c)};
}

inline void require_nonzero(const BinaryForm& f) {
  if (f.is_zero()) throw InvalidArgument("the zero binary form is not allowed here");
}

/// No repeated factor over the algebraic closure, including at [1:0].
inline bool is_squarefree(const BinaryForm& f) {
  require_nonzero(f);
  const UniPoly g = f.dehomogenize();
  return gcd(g, g.derivative()).degree() <= 0 && f.multiplicity_at_infinity() <= 1;
}

inline BinaryForm squarefree_part(const BinaryForm& f) {
  require_nonzero(f);
  const std::size_t m = f.multiplicity_at_infinity();
  return BinaryForm::homogenize(squarefree_part(f.dehomogenize()), m > 0 ? 1 : 0).normalized();
}

/// Product of the repeated irreducible factors of f, each to its full
/// multiplicity; constant 1 when f is squarefree.
inline BinaryForm repeated_part(const BinaryForm& f) {
  require_nonzero(f);
  const UniPoly g = f.dehomogenize();
  const UniPoly r = gcd(g, g.derivative());
  const UniPoly rep = r.degree() <= 0 ? UniPoly::constant(1) : (r * squarefree_part(r)).primitive();
  const std::size_t m = f.multiplicity_at_infinity();
  return BinaryForm::homogenize(rep, m >= 2 ? m : 0).normalized();
}

}  // namespace pencillab
