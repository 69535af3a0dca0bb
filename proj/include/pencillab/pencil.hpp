#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "pencillab/poly.hpp"
#include "pencillab/signature.hpp"

namespace pencillab {

/// The pencil s*q0 + t*q1 of quadrics in P^N.
class QuadricPencil {
 public:
  QuadricPencil(SymMat q0, SymMat q1) : q0_(std::move(q0)), q1_(std::move(q1)) {
    if (q0_.dim() != q1_.dim()) throw MalformedPencil("q0 and q1 differ in size");
    if (q0_.dim() < 3) throw MalformedPencil("pencil needs N >= 2");
  }

  [[nodiscard]] std::size_t N() const { return q0_.dim() - 1; }
  [[nodiscard]] const SymMat& q0() const { return q0_; }
  [[nodiscard]] const SymMat& q1() const { return q1_; }
  [[nodiscard]] SymMat fiber(const Rat& s, const Rat& t) const { return combine(s, q0_, t, q1_); }
  [[nodiscard]] BinaryForm discriminant() const { return binary_det(q0_, q1_); }

  friend bool operator==(const QuadricPencil&, const QuadricPencil&) = default;

 private:
  SymMat q0_;
  SymMat q1_;
};

/// An r-plane, spanned by the rows of an (r+1) x (N+1) matrix of full rank.
class LinearSubspace {
 public:
  explicit LinearSubspace(Matrix basis) : basis_(std::move(basis)) {
    if (basis_.rows() == 0) throw InvalidArgument("subspace basis is empty");
    if (rank(basis_) != basis_.rows()) throw InvalidArgument("subspace basis is rank-deficient");
  }
  [[nodiscard]] std::size_t r() const { return basis_.rows() - 1; }
  [[nodiscard]] std::size_t ambient() const { return basis_.cols() - 1; }
  [[nodiscard]] const Matrix& basis() const { return basis_; }

 private:
  Matrix basis_;
};

struct SmoothnessReport {
  bool smooth = false;
  BinaryForm discriminant;
  /// Repeated factors of the discriminant at full multiplicity; 1 when smooth.
  BinaryForm witness;
};

/// X = {q0 = q1 = 0} is smooth iff det(s q0 + t q1) is squarefree of degree N+1.
inline SmoothnessReport validate_smooth(const QuadricPencil& p) {
  SmoothnessReport rep;
  rep.discriminant = p.discriminant();
  if (rep.discriminant.is_zero()) throw MalformedPencil("det(s*q0 + t*q1) vanishes identically");
  rep.smooth = is_squarefree(rep.discriminant);
  rep.witness = repeated_part(rep.discriminant);
  return rep;
}

inline void require_smooth(const QuadricPencil& p) {
  const auto rep = validate_smooth(p);
  if (!rep.smooth) throw SingularPencil("pencil is singular; repeated factor " + rep.witness.str());
}

inline bool contains_subspace(const QuadricPencil& p, const LinearSubspace& ell) {
  if (ell.ambient() != p.N()) throw InvalidArgument("subspace and pencil live in different spaces");
  return p.q0().restrict_rows(ell.basis()).matrix().is_zero() &&
         p.q1().restrict_rows(ell.basis()).matrix().is_zero();
}

/// Coordinates in which the plane is {x_{r+1} = ... = x_N = 0}. Writing
/// y = (x_{r+1}, ..., x_N), each quadric becomes
///   Q_i = sum_{j<=r} x_j * l_ij(y) + q_i(y).
struct StandardPosition {
  std::size_t N = 0;
  std::size_t r = 0;
  /// Rows are the new basis vectors; the new Gram matrices are T Q_i T^T.
  Matrix change_of_basis;
  /// l_forms[i][j] holds the coefficients of l_ij on y (length N - r).
  std::vector<std::vector<std::vector<Rat>>> l_forms;
  /// Gram matrices of q_0, q_1 on y.
  std::vector<SymMat> q_forms;
};

/// Rebuilds T Q_i T^T from the standard-position forms.
inline std::pair<SymMat, SymMat> reassemble(const StandardPosition& sp) {
  const std::size_t n = sp.N + 1, r1 = sp.r + 1;
  std::vector<SymMat> out;
  for (std::size_t i = 0; i < 2; ++i) {
    SymMat g(n);
    for (std::size_t j = 0; j < r1; ++j)
      for (std::size_t k = 0; k < n - r1; ++k) g.set(j, r1 + k, sp.l_forms[i][j][k] / 2);
    for (std::size_t a = 0; a < n - r1; ++a)
      for (std::size_t b = a; b < n - r1; ++b) g.set(r1 + a, r1 + b, sp.q_forms[i](a, b));
    out.push_back(std::move(g));
  }
  return {out[0], out[1]};
}

/// Change of basis whose first r+1 rows are the reduced echelon basis of the
/// plane and whose remaining rows are unit vectors on the non-pivot columns.
/// Its determinant is +-1, so it stays invertible modulo every prime.
inline Matrix standard_basis_change(const LinearSubspace& ell) {
  const auto [red, pivots] = rref(ell.basis());
  const std::size_t n = ell.ambient() + 1;
  Matrix t = red;
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivots) is_pivot[c] = true;
  for (std::size_t c = 0; c < n; ++c) {
    if (is_pivot[c]) continue;
    std::vector<Rat> e(n);
    e[c] = 1;
    t.append_row(e);
  }
  return t;
}

inline StandardPosition to_standard_position(const QuadricPencil& p, const LinearSubspace& ell) {
  require_smooth(p);
  if (!contains_subspace(p, ell)) throw PlaneNotOnX("plane does not lie on X");
  StandardPosition sp;
  sp.N = p.N();
  sp.r = ell.r();
  sp.change_of_basis = standard_basis_change(ell);
  const std::size_t n = sp.N + 1, r1 = sp.r + 1;
  sp.l_forms.assign(2, std::vector<std::vector<Rat>>(r1, std::vector<Rat>(n - r1)));
  for (std::size_t i = 0; i < 2; ++i) {
    const SymMat g = (i == 0 ? p.q0() : p.q1()).restrict_rows(sp.change_of_basis);
    for (std::size_t j = 0; j < r1; ++j)
      for (std::size_t k = 0; k < n - r1; ++k) sp.l_forms[i][j][k] = 2 * g(j, r1 + k);
    sp.q_forms.push_back(SymMat(g.matrix().block(r1, r1, n - r1, n - r1)));
  }
  return sp;
}

/// A term c * s^e0 t^e1 y_{r+1}^e2 ... of a polynomial over Q.
struct Term {
  std::vector<unsigned> exps;
  Rat coef;
  friend bool operator==(const Term&, const Term&) = default;
};
using Polynomial = std::vector<Term>;

/// Sorts terms lexicographically descending and rescales to coprime integer
/// coefficients with a positive leading term.
inline Polynomial normalize(Polynomial poly) {
  std::erase_if(poly, [](const Term& t) { return t.coef == 0; });
  std::sort(poly.begin(), poly.end(), [](const Term& a, const Term& b) { return a.exps > b.exps; });
  if (poly.empty()) return poly;
  std::vector<Rat> cs;
  for (const auto& t : poly) cs.push_back(t.coef);
  cs = primitive_part(std::move(cs));
  if (sgn(cs.front()) < 0)
    for (auto& c : cs) c = -c;
  for (std::size_t k = 0; k < poly.size(); ++k) poly[k].coef = cs[k];
  return poly;
}

inline Rat evaluate(const Polynomial& poly, const std::vector<Rat>& point) {
  Rat acc = 0;
  for (const auto& t : poly) {
    Rat m = t.coef;
    for (std::size_t v = 0; v < t.exps.size(); ++v)
      for (unsigned e = 0; e < t.exps[v]; ++e) m *= point[v];
    acc += m;
  }
  return acc;
}

/// Equations of the reduced fibration inside P^1 x P^{N-r-1}, in variables
/// (s, t, y_{r+1}, ..., y_N): s*l_0j + t*l_1j for j = 0..r, then s*q_0 + t*q_1.
struct ReducedPencil {
  std::size_t N = 0;
  std::size_t r = 0;
  std::vector<std::string> variables;
  std::vector<Polynomial> equations;
};

inline ReducedPencil reduce_form(const StandardPosition& sp) {
  ReducedPencil rp;
  rp.N = sp.N;
  rp.r = sp.r;
  const std::size_t m = sp.N - sp.r;  // number of y variables
  rp.variables = {"s", "t"};
  for (std::size_t k = 0; k < m; ++k) rp.variables.push_back("y" + std::to_string(sp.r + 1 + k));
  auto mono = [&](std::size_t st, std::vector<std::size_t> ys) {
    std::vector<unsigned> e(2 + m, 0);
    e[st] = 1;
    for (auto y : ys) e[2 + y]++;
    return e;
  };
  for (std::size_t j = 0; j <= sp.r; ++j) {
    Polynomial eq;
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t k = 0; k < m; ++k) eq.push_back({mono(i, {k}), sp.l_forms[i][j][k]});
    rp.equations.push_back(normalize(std::move(eq)));
  }
  Polynomial last;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = a; b < m; ++b) {
        const Rat& g = sp.q_forms[i](a, b);
        last.push_back({mono(i, {a, b}), a == b ? g : Rat(2 * g)});
      }
  rp.equations.push_back(normalize(std::move(last)));
  return rp;
}

inline ReducedPencil hyperbolic_reduce(const QuadricPencil& p, const LinearSubspace& ell) {
  return reduce_form(to_standard_position(p, ell));
}

struct ReducedFiber {
  Rat s;
  Rat t;
  SymMat gram;
  /// Rows span a complement of the plane inside its orthogonal space.
  Matrix basis_used;
};

/// Restriction of s*q0 + t*q1 to a complement of the plane inside the
/// plane's orthogonal space for that form.
inline ReducedFiber reduced_fiber(const QuadricPencil& p, const LinearSubspace& ell, const Rat& s,
                                  const Rat& t) {
  if (s == 0 && t == 0) throw InvalidArgument("[0:0] is not a point of P^1");
  if (!contains_subspace(p, ell)) throw PlaneNotOnX("plane does not lie on X");
  const SymMat m = p.fiber(s, t);
  const Matrix& b = ell.basis();
  const Matrix bm = b * m.matrix();
  if (rank(bm) < b.rows())
    throw DegenerateConfiguration("the plane meets the kernel of the fiber; not a simple degeneration");
  const Matrix perp = kernel(bm);
  Matrix chosen = b;
  Matrix w(0, b.cols());
  std::size_t have = rank(chosen);
  for (std::size_t k = 0; k < perp.rows(); ++k) {
    Matrix trial = chosen;
    trial.append_row(perp.row(k));
    const std::size_t rk = rank(trial);
    if (rk > have) {
      chosen = std::move(trial);
      have = rk;
      w.append_row(perp.row(k));
    }
  }
  SymMat gram = w.rows() == 0 ? SymMat(std::size_t{0}) : m.restrict_rows(w);
  return {s, t, std::move(gram), std::move(w)};
}

}  // namespace pencillab
