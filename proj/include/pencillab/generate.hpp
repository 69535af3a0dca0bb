#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "pencillab/pencil.hpp"

namespace pencillab {

/// Deterministic integer source. Draws use plain modulo reduction of the raw
/// 64-bit output so sequences do not depend on the standard library's
/// distribution implementations.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : g_(seed) {}
  long uniform(long lo, long hi) {
    return lo + static_cast<long>(g_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  long nonzero(long span) {
    const long v = uniform(1, span);
    return uniform(0, 1) ? v : -v;
  }

 private:
  std::mt19937_64 g_;
};

/// Integer matrix with integer inverse: (unit lower) * (unit upper) * permutation.
struct Unimodular {
  Matrix p;
  Matrix p_inv;
};

inline Unimodular random_unimodular(SeededRng& rng, std::size_t n) {
  Matrix l = Matrix::identity(n), u = Matrix::identity(n), perm(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) {
      l(i, j) = rng.uniform(-1, 1);
      u(j, i) = rng.uniform(-1, 1);
    }
  std::vector<std::size_t> sigma(n);
  for (std::size_t i = 0; i < n; ++i) sigma[i] = i;
  for (std::size_t i = n; i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(i) - 1));
    std::swap(sigma[i - 1], sigma[j]);
  }
  for (std::size_t i = 0; i < n; ++i) perm(i, sigma[i]) = 1;
  Matrix p = l * u * perm;
  return {p, *inverse(p)};
}

/// Columns [c0, c0+k) of m, as the rows of a k x n matrix.
inline Matrix columns_as_rows(const Matrix& m, std::size_t c0, std::size_t k) {
  return m.block(0, c0, m.rows(), k).transpose();
}

struct GeneratedPencil {
  QuadricPencil pencil;
  LinearSubspace plane;
  /// A second rational r-plane on X, disjoint from `plane`.
  LinearSubspace partner;
};

/// Smooth pencil containing a known rational r-plane.
///
/// In block coordinates (x, y, z) with |x| = |y| = r+1 the base pencil is
///   q0 = [[0, I, 0], [I, 0, 0], [0, 0, D]],
///   q1 = [[0, M, C], [M, 0, E], [C^T, E^T, F]],
/// with D nonzero diagonal and M diagonal with distinct entries, so both the
/// x-plane and the y-plane lie on X. A random unimodular congruence hides the
/// block structure. Singular draws are rejected and redrawn.
inline GeneratedPencil generate_test_pencil(std::size_t N, std::size_t r, std::uint64_t seed) {
  if (N < 2) throw InvalidArgument("generate_test_pencil needs N >= 2");
  if (2 * r + 2 > N) throw InvalidArgument("r must satisfy r <= floor(N/2) - 1");
  SeededRng rng(seed);
  const std::size_t n = N + 1, r1 = r + 1, k = n - 2 * r1;
  for (;;) {
    SymMat q0(n), q1(n);
    std::vector<long> diag_m;
    while (diag_m.size() < r1) {
      const long v = rng.uniform(-5, 5);
      if (std::find(diag_m.begin(), diag_m.end(), v) == diag_m.end()) diag_m.push_back(v);
    }
    for (std::size_t j = 0; j < r1; ++j) {
      q0.set(j, r1 + j, 1);
      q1.set(j, r1 + j, diag_m[j]);
    }
    for (std::size_t a = 0; a < k; ++a) q0.set(2 * r1 + a, 2 * r1 + a, rng.nonzero(2));
    for (std::size_t j = 0; j < 2 * r1; ++j)
      for (std::size_t a = 0; a < k; ++a) q1.set(j, 2 * r1 + a, rng.uniform(-2, 2));
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = a; b < k; ++b) q1.set(2 * r1 + a, 2 * r1 + b, rng.uniform(-3, 3));

    QuadricPencil base(q0, q1);
    if (!validate_smooth(base).smooth) continue;
    const Unimodular u = random_unimodular(rng, n);
    QuadricPencil pencil(q0.congruent(u.p), q1.congruent(u.p));
    return {std::move(pencil), LinearSubspace(columns_as_rows(u.p_inv, 0, r1)),
            LinearSubspace(columns_as_rows(u.p_inv, r1, r1))};
  }
}

/// Smooth pencil with small random integer entries and no planted structure.
inline QuadricPencil random_generic_pencil(std::size_t N, std::uint64_t seed, long span = 3) {
  SeededRng rng(seed);
  const std::size_t n = N + 1;
  for (;;) {
    SymMat q0(n), q1(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        q0.set(i, j, rng.uniform(-span, span));
        q1.set(i, j, rng.uniform(-span, span));
      }
    QuadricPencil p(q0, q1);
    if (validate_smooth(p).smooth) return p;
  }
}

/// Largest r for which diagonal_built_pencil can plant an r-plane.
inline std::size_t diagonal_built_max_r(std::size_t N) {
  // Blocks of 5 coordinates carry 2 plane directions, blocks of 3 carry 1.
  const std::size_t n = N + 1;
  return (n / 5) * 2 + ((n % 5) >= 3 ? 1 : 0) - 1;
}

struct DiagonalBuiltPencil {
  QuadricPencil pencil;
  LinearSubspace plane;
  /// Roots [s:t] of the discriminant, one per coordinate.
  std::vector<std::pair<Rat, Rat>> roots;
};

/// Pencil congruent to (diag(a), diag(b)), so every root of the discriminant is
/// rational, together with a rational r-plane on X.
///
/// Coordinates are split into blocks of 2m+1 (m = 1 or 2) plus singletons. On a
/// block, m random integer vectors u_1..u_m are fixed and (a, b) are drawn from
/// the 2-dimensional space of weights w with sum_i w_i u_k,i u_l,i = 0 for all
/// k <= l, which makes span(u_1..u_m) isotropic for both forms.
inline DiagonalBuiltPencil diagonal_built_pencil(std::size_t N, std::size_t r, std::uint64_t seed) {
  if (N < 2 || r > diagonal_built_max_r(N))
    throw InvalidArgument("diagonal-built pencils support r <= " + std::to_string(diagonal_built_max_r(N)));
  SeededRng rng(seed);
  const std::size_t n = N + 1;
  // Choose block sizes: as many 5-blocks as needed, then 3-blocks.
  std::vector<std::size_t> ms;
  std::size_t dirs = 0;
  while (dirs < r + 1) {
    const std::size_t m = (r + 1 - dirs >= 2) ? 2 : 1;
    ms.push_back(m);
    dirs += m;
  }
  std::size_t used = 0;
  for (auto m : ms) used += 2 * m + 1;
  if (used > n) throw InvalidArgument("not enough coordinates for the requested plane");

  for (;;) {
    std::vector<Rat> a(n), b(n);
    Matrix plane(0, n);
    std::size_t off = 0;
    bool ok = true;
    for (auto m : ms) {
      const std::size_t w = 2 * m + 1;
      std::vector<std::vector<long>> u(m, std::vector<long>(w));
      for (auto& vec : u)
        for (auto& x : vec) x = rng.uniform(-2, 2);
      Matrix cond(0, w);
      for (std::size_t k = 0; k < m; ++k)
        for (std::size_t l = k; l < m; ++l) {
          std::vector<Rat> row(w);
          for (std::size_t i = 0; i < w; ++i) row[i] = u[k][i] * u[l][i];
          cond.append_row(row);
        }
      const Matrix ker = kernel(cond);
      if (ker.rows() != 2) {
        ok = false;
        break;
      }
      const long c[4] = {rng.nonzero(3), rng.uniform(-3, 3), rng.uniform(-3, 3), rng.nonzero(3)};
      for (std::size_t i = 0; i < w; ++i) {
        a[off + i] = c[0] * ker(0, i) + c[1] * ker(1, i);
        b[off + i] = c[2] * ker(0, i) + c[3] * ker(1, i);
      }
      for (std::size_t k = 0; k < m; ++k) {
        std::vector<Rat> row(n);
        for (std::size_t i = 0; i < w; ++i) row[off + i] = u[k][i];
        plane.append_row(row);
      }
      off += w;
    }
    if (!ok || rank(plane) != r + 1) continue;
    for (std::size_t i = off; i < n; ++i) {
      a[i] = rng.uniform(-4, 4);
      b[i] = rng.uniform(-4, 4);
    }
    // Distinct points [-b_i : a_i] of P^1, none of them [0:0].
    for (std::size_t i = 0; i < n && ok; ++i) {
      if (a[i] == 0 && b[i] == 0) ok = false;
      for (std::size_t j = 0; j < i && ok; ++j)
        if (a[i] * b[j] == a[j] * b[i]) ok = false;
    }
    if (!ok) continue;
    const Unimodular u = random_unimodular(rng, n);
    const SymMat q0 = SymMat::diagonal(a).congruent(u.p), q1 = SymMat::diagonal(b).congruent(u.p);
    // Plane vectors v (original coordinates) become p_inv v.
    const Matrix moved = (u.p_inv * plane.transpose()).transpose();
    DiagonalBuiltPencil out{QuadricPencil(q0, q1), LinearSubspace(moved), {}};
    for (std::size_t i = 0; i < n; ++i) out.roots.emplace_back(-b[i], a[i]);
    return out;
  }
}

}  // namespace pencillab
