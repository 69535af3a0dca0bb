#pragma once

#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <iomanip>
#include <sstream>
#include <thread>
#include <vector>

#include "pencillab/ff/field.hpp"
#include "pencillab/generate.hpp"
#include "pencillab/pencil.hpp"

namespace pencillab::ff {

using FVec = std::vector<Elem>;
using FMat = std::vector<FVec>;  // list of rows

inline constexpr double default_ceiling = 1e8;

/// Number of k-dimensional subspaces of F_q^n.
inline Int gaussian_binomial(std::size_t n, std::size_t k, std::uint64_t q) {
  if (k > n) return 0;
  Int num = 1, den = 1;
  for (std::size_t i = 0; i < k; ++i) {
    Int a, b;
    mpz_ui_pow_ui(a.get_mpz_t(), q, n - i);
    mpz_ui_pow_ui(b.get_mpz_t(), q, i + 1);
    num *= a - 1;
    den *= b - 1;
  }
  return num / den;
}

inline std::size_t rank_of(const Field& F, FMat m) {
  std::size_t rk = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && rk < m.size(); ++c) {
    std::size_t piv = rk;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[rk]);
    const Elem inv = F.inv(m[rk][c]);
    for (auto& x : m[rk]) x = F.mul(x, inv);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == rk || m[i][c] == 0) continue;
      const Elem f = m[i][c];
      for (std::size_t j = 0; j < cols; ++j) m[i][j] = F.sub(m[i][j], F.mul(f, m[rk][j]));
    }
    ++rk;
  }
  return rk;
}

inline Elem det_of(const Field& F, FMat m) {
  const std::size_t n = m.size();
  Elem det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = F.neg(det);
    }
    det = F.mul(det, m[c][c]);
    const Elem inv = F.inv(m[c][c]);
    for (std::size_t i = c + 1; i < n; ++i) {
      const Elem f = F.mul(m[i][c], inv);
      if (f == 0) continue;
      for (std::size_t j = c; j < n; ++j) m[i][j] = F.sub(m[i][j], F.mul(f, m[c][j]));
    }
  }
  return det;
}

inline FMat reduce_matrix(const Field& F, const Matrix& m) {
  FMat out(m.rows(), FVec(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = F.from_rat(m(i, j));
  return out;
}

/// A pencil reduced modulo p, viewed over F_p or F_{p^2}.
struct FqPencil {
  std::shared_ptr<const Field> field;
  std::size_t N = 0;
  FMat gram[2];
  /// Discriminant coefficients; index i holds the coefficient of s^{N+1-i} t^i.
  FVec discriminant;

  [[nodiscard]] const Field& F() const { return *field; }
  [[nodiscard]] Elem bilinear(int i, const FVec& u, const FVec& v) const {
    const Field& f = *field;
    Elem acc = 0;
    for (std::size_t a = 0; a <= N; ++a) {
      if (u[a] == 0) continue;
      Elem row = 0;
      for (std::size_t b = 0; b <= N; ++b)
        if (v[b] != 0) row = f.add(row, f.mul(gram[i][a][b], v[b]));
      acc = f.add(acc, f.mul(u[a], row));
    }
    return acc;
  }
  [[nodiscard]] bool on_x(const FVec& v) const { return bilinear(0, v, v) == 0 && bilinear(1, v, v) == 0; }
};

/// Roots over the field of the discriminant, counting [1:0]; distinct since
/// the discriminant is squarefree.
inline std::size_t discriminant_roots(const FqPencil& fp) {
  const Field& F = fp.F();
  const std::size_t d = fp.discriminant.size() - 1;
  std::size_t count = fp.discriminant[0] == 0 ? 1 : 0;
  FPoly g(d + 1);
  for (std::size_t i = 0; i <= d; ++i) g[d - i] = fp.discriminant[i];
  trim(g);
  for (Elem x = 0; x < F.order(); ++x)
    if (poly_eval(F, g, x) == 0) ++count;
  return count;
}

/// Reduces a pencil modulo the field's characteristic. Rejects entries with
/// the prime in a denominator and primes where the discriminant stops being
/// squarefree of degree N+1.
inline FqPencil reduce_pencil(const QuadricPencil& p, std::shared_ptr<const Field> field) {
  const Field& F = *field;
  FqPencil fp;
  fp.field = field;
  fp.N = p.N();
  fp.gram[0] = reduce_matrix(F, p.q0().matrix());
  fp.gram[1] = reduce_matrix(F, p.q1().matrix());
  const BinaryForm delta = p.discriminant();
  for (std::size_t i = 0; i <= delta.degree(); ++i) fp.discriminant.push_back(F.from_rat(delta.coeffs()[i]));
  const std::string at = " modulo " + std::to_string(F.characteristic());
  std::size_t m_inf = 0;
  while (m_inf < fp.discriminant.size() && fp.discriminant[m_inf] == 0) ++m_inf;
  if (m_inf == fp.discriminant.size()) throw BadReduction("discriminant vanishes identically" + at);
  if (m_inf > 1) throw BadReduction("discriminant has a repeated root at [1:0]" + at);
  const std::size_t d = fp.discriminant.size() - 1;
  FPoly g(d + 1);
  for (std::size_t i = 0; i <= d; ++i) g[d - i] = fp.discriminant[i];
  trim(g);
  if (poly_gcd(F, g, poly_derivative(F, g)).size() > 1) throw BadReduction("discriminant is not squarefree" + at);
  return fp;
}

inline FMat reduce_subspace(const FqPencil& fp, const LinearSubspace& ell) {
  FMat m = reduce_matrix(fp.F(), ell.basis());
  if (rank_of(fp.F(), m) != m.size()) throw BadReduction("plane basis loses rank modulo the prime");
  for (const auto& u : m)
    for (const auto& v : m)
      if (fp.bilinear(0, u, v) != 0 || fp.bilinear(1, u, v) != 0)
        throw PlaneNotOnX("plane does not lie on X over the finite field");
  return m;
}

/// Calls fn on the normalized representative (first nonzero entry 1) of every
/// point of P^{n-1}; stops when fn returns false.
template <class Fn>
bool for_each_projective_point(const Field& F, std::size_t n, Fn&& fn) {
  FVec v(n, 0);
  for (std::size_t lead = 0; lead < n; ++lead) {
    std::fill(v.begin(), v.end(), 0);
    v[lead] = 1;
    for (;;) {
      if (!fn(static_cast<const FVec&>(v))) return false;
      bool wrapped = true;
      for (std::size_t k = n; k-- > lead + 1;) {
        if (++v[k] < F.order()) {
          wrapped = false;
          break;
        }
        v[k] = 0;
      }
      if (wrapped) break;
    }
  }
  return true;
}

inline std::vector<std::vector<std::size_t>> pivot_sets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t from) -> void {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t c = from; c + (k - cur.size()) <= n; ++c) {
      cur.push_back(c);
      self(self, c + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

/// Depth-first walk over the reduced-row-echelon bases with the given pivot
/// columns. accept(rows, candidate) prunes a row before descending; visit(rows)
/// sees each complete basis and returns false to stop. Returns false if stopped.
template <class Accept, class Visit>
bool walk_echelon(const Field& F, std::size_t n, const std::vector<std::size_t>& pivots, Accept&& accept,
                  Visit&& visit) {
  const std::size_t k = pivots.size();
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<std::size_t>> free_cols(k);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t c = pivots[a] + 1; c < n; ++c)
      if (!is_pivot[c]) free_cols[a].push_back(c);
  FMat rows;
  auto rec = [&](auto&& self, std::size_t a) -> bool {
    if (a == k) return visit(static_cast<const FMat&>(rows));
    FVec v(n, 0);
    v[pivots[a]] = 1;
    const auto& fc = free_cols[a];
    for (;;) {
      if (accept(static_cast<const FMat&>(rows), static_cast<const FVec&>(v))) {
        rows.push_back(v);
        const bool go_on = self(self, a + 1);
        rows.pop_back();
        if (!go_on) return false;
      }
      std::size_t i = 0;
      for (; i < fc.size(); ++i) {
        if (++v[fc[i]] < F.order()) break;
        v[fc[i]] = 0;
      }
      if (i == fc.size()) return true;
    }
  };
  return rec(rec, 0);
}

/// Pruning predicate: the candidate row is a point of X orthogonal to every
/// earlier row for both forms.
inline auto isotropic_row(const FqPencil& fp) {
  return [&fp](const FMat& rows, const FVec& v) {
    if (!fp.on_x(v)) return false;
    for (const auto& u : rows)
      if (fp.bilinear(0, u, v) != 0 || fp.bilinear(1, u, v) != 0) return false;
    return true;
  };
}

inline void check_ceiling(const Int& estimate, double ceiling, const std::string& what) {
  const double est = estimate.get_d();
  if (est > ceiling) {
    std::ostringstream os;
    os << what << ": about " << std::setprecision(4) << est << " subspaces to visit, above the ceiling " << ceiling;
    throw CeilingExceeded(os.str(), est);
  }
}

/// Number of points of X over the field.
inline std::uint64_t count_points(const FqPencil& fp, double ceiling = default_ceiling) {
  check_ceiling(gaussian_binomial(fp.N + 1, 1, fp.F().order()), ceiling, "point count");
  std::uint64_t count = 0;
  for_each_projective_point(fp.F(), fp.N + 1, [&](const FVec& v) {
    count += fp.on_x(v) ? 1 : 0;
    return true;
  });
  return count;
}

struct CensusCell {
  std::uint64_t span_in_x = 0;
  std::uint64_t span_not_in_x = 0;
  [[nodiscard]] std::uint64_t total() const { return span_in_x + span_not_in_x; }
};

/// r-planes on X over the field, partitioned by the projective dimension of
/// their intersection with a reference plane (-1 when disjoint) and by whether
/// the span of the two lies on X.
struct PlaneCensus {
  std::uint32_t q = 0;
  std::size_t r = 0;
  std::uint64_t total = 0;
  FMat reference;  // empty when X has no r-plane
  std::map<int, CensusCell> by_meet;

  [[nodiscard]] std::uint64_t partition_sum() const {
    std::uint64_t s = 0;
    for (const auto& [d, c] : by_meet) s += c.total();
    return s;
  }
};

/// First r-plane on X in enumeration order. Throws CeilingExceeded once more
/// than `ceiling` candidate rows have been examined.
inline std::optional<FMat> find_plane(const FqPencil& fp, std::size_t r, double ceiling = default_ceiling) {
  const std::size_t n = fp.N + 1;
  if (r + 1 > n) return std::nullopt;
  std::optional<FMat> found;
  double visits = 0;
  auto base = isotropic_row(fp);
  auto accept = [&](const FMat& rows, const FVec& v) {
    if (++visits > ceiling) throw CeilingExceeded("plane search exceeded the visit ceiling", visits);
    return base(rows, v);
  };
  for (const auto& piv : pivot_sets(n, r + 1)) {
    const bool finished = walk_echelon(fp.F(), n, piv, accept, [&](const FMat& rows) {
      found = rows;
      return false;
    });
    if (!finished) break;
  }
  return found;
}

/// Census of r-planes on X. Without a reference plane the first plane found is
/// used. `jobs` threads split the pivot patterns.
inline PlaneCensus census_planes(const FqPencil& fp, std::size_t r, const std::optional<FMat>& ell = std::nullopt,
                                 double ceiling = default_ceiling, unsigned jobs = 1) {
  const Field& F = fp.F();
  const std::size_t n = fp.N + 1;
  PlaneCensus census;
  census.q = F.order();
  census.r = r;
  if (r + 1 > n) return census;
  check_ceiling(gaussian_binomial(n, r + 1, F.order()), ceiling, "plane census");
  if (ell) {
    if (ell->size() != r + 1) throw InvalidArgument("reference plane has the wrong dimension");
    census.reference = *ell;
  } else if (auto first = find_plane(fp, r, ceiling)) {
    census.reference = *first;
  }
  const FMat& ref = census.reference;

  const auto patterns = pivot_sets(n, r + 1);
  std::atomic<std::size_t> next{0};
  std::mutex merge;
  auto worker = [&]() {
    PlaneCensus local;
    auto accept = isotropic_row(fp);
    for (std::size_t idx = next++; idx < patterns.size(); idx = next++) {
      walk_echelon(F, n, patterns[idx], accept, [&](const FMat& m) {
        ++local.total;
        if (!ref.empty()) {
          FMat both = ref;
          both.insert(both.end(), m.begin(), m.end());
          const int meet = static_cast<int>(2 * (r + 1) - rank_of(F, both)) - 1;
          bool span_in_x = true;
          for (const auto& u : ref)
            for (const auto& v : m)
              if (fp.bilinear(0, u, v) != 0 || fp.bilinear(1, u, v) != 0) span_in_x = false;
          auto& cell = local.by_meet[meet];
          (span_in_x ? cell.span_in_x : cell.span_not_in_x)++;
        }
        return true;
      });
    }
    std::lock_guard<std::mutex> lock(merge);
    census.total += local.total;
    for (const auto& [d, c] : local.by_meet) {
      census.by_meet[d].span_in_x += c.span_in_x;
      census.by_meet[d].span_not_in_x += c.span_not_in_x;
    }
  };
  const unsigned threads = std::max(1U, std::min<unsigned>(jobs, static_cast<unsigned>(patterns.size())));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return census;
}

/// A polynomial from the reduced pencil with coefficients in the field.
struct FTerm {
  std::vector<unsigned> exps;
  Elem coef;
};
using FPolynomial = std::vector<FTerm>;

inline FPolynomial reduce_polynomial(const Field& F, const Polynomial& poly) {
  FPolynomial out;
  for (const auto& t : poly)
    if (Elem c = F.from_rat(t.coef); c != 0) out.push_back({t.exps, c});
  return out;
}

inline Elem evaluate(const Field& F, const FPolynomial& poly, const FVec& x) {
  Elem acc = 0;
  for (const auto& t : poly) {
    Elem m = t.coef;
    for (std::size_t v = 0; v < t.exps.size(); ++v)
      for (unsigned e = 0; e < t.exps[v]; ++e) m = F.mul(m, x[v]);
    acc = F.add(acc, m);
  }
  return acc;
}

inline Elem partial(const Field& F, const FPolynomial& poly, std::size_t var, const FVec& x) {
  Elem acc = 0;
  for (const auto& t : poly) {
    if (t.exps[var] == 0) continue;
    Elem m = F.mul(t.coef, F.from_int(static_cast<long>(t.exps[var])));
    for (std::size_t v = 0; v < t.exps.size(); ++v)
      for (unsigned e = 0; e < t.exps[v] - (v == var ? 1U : 0U); ++e) m = F.mul(m, x[v]);
    acc = F.add(acc, m);
  }
  return acc;
}

/// The reduced fibration over the field: equations in (s, t, y) plus the
/// linear forms l_ij read off the first r+1 equations.
struct FReducedPencil {
  std::size_t N = 0;
  std::size_t r = 0;
  std::vector<FPolynomial> equations;
  /// l[i][j][k]: coefficient of (s if i = 0 else t) * y_k in equation j.
  std::vector<std::vector<FVec>> l;
};

/// Reduces the emitted equations modulo p and checks that each one is a unit
/// multiple of the reduction of the standard-position forms, so that the
/// normalization over Q did not change the scheme at p.
inline FReducedPencil reduce_reduced_pencil(const Field& F, const ReducedPencil& rp, const StandardPosition& sp) {
  FReducedPencil out;
  out.N = rp.N;
  out.r = rp.r;
  const std::size_t m = rp.N - rp.r;
  for (const auto& eq : rp.equations) out.equations.push_back(reduce_polynomial(F, eq));
  out.l.assign(2, std::vector<FVec>(rp.r + 1, FVec(m, 0)));
  for (std::size_t j = 0; j <= rp.r; ++j)
    for (const auto& t : out.equations[j])
      for (std::size_t k = 0; k < m; ++k)
        if (t.exps[2 + k] == 1) out.l[t.exps[0] == 1 ? 0 : 1][j][k] = t.coef;
  // Compare against l_ij and q_i reduced directly.
  auto proportional = [&](const FVec& a, const FVec& b) {
    std::optional<Elem> ratio;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if ((a[i] == 0) != (b[i] == 0)) return false;
      if (a[i] == 0) continue;
      const Elem rt = F.mul(a[i], F.inv(b[i]));
      if (ratio && *ratio != rt) return false;
      ratio = rt;
    }
    return true;
  };
  for (std::size_t j = 0; j <= rp.r; ++j) {
    FVec emitted, direct;
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t k = 0; k < m; ++k) {
        emitted.push_back(out.l[i][j][k]);
        direct.push_back(F.from_rat(sp.l_forms[i][j][k]));
      }
    if (!proportional(emitted, direct)) throw BadReduction("reduced equation " + std::to_string(j) + " degenerates mod p");
  }
  {
    FVec emitted, direct;
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a; b < m; ++b) {
          std::vector<unsigned> e(2 + m, 0);
          e[i] = 1;
          e[2 + a]++;
          e[2 + b]++;
          Elem c = 0;
          for (const auto& t : out.equations.back())
            if (t.exps == e) c = t.coef;
          emitted.push_back(c);
          const Rat g = sp.q_forms[i](a, b);
          direct.push_back(F.from_rat(a == b ? g : Rat(2 * g)));
        }
    if (!proportional(emitted, direct)) throw BadReduction("reduced quadric degenerates mod p");
  }
  return out;
}

/// Calls fn([s:t] ++ y) for every point of P^1 x P^{m-1} lying on all equations.
template <class Fn>
void for_each_reduced_point(const Field& F, const FReducedPencil& rp, Fn&& fn) {
  const std::size_t m = rp.N - rp.r;
  std::vector<std::pair<Elem, Elem>> line;
  for (Elem u = 0; u < F.order(); ++u) line.emplace_back(1, u);
  line.emplace_back(0, 1);
  for_each_projective_point(F, m, [&](const FVec& y) {
    FVec x(2 + m);
    std::copy(y.begin(), y.end(), x.begin() + 2);
    for (const auto& [s, t] : line) {
      x[0] = s;
      x[1] = t;
      bool on = true;
      for (const auto& eq : rp.equations)
        if (evaluate(F, eq, x) != 0) {
          on = false;
          break;
        }
      if (on) fn(static_cast<const FVec&>(x));
    }
    return true;
  });
}

struct BijectionCounts {
  /// Points of the reduced fibration off {l_ij = 0 : i = 0,1, j = 0..r}.
  std::uint64_t lhs = 0;
  /// Same with the excluded locus taken over j = 1..r only (empty set of
  /// conditions for r = 0, so nothing survives).
  std::uint64_t lhs_alt = 0;
  /// r-planes m with dim(ell cap m) = r-1 whose span with ell is not on X.
  std::uint64_t rhs = 0;
  PlaneCensus census;
};

inline BijectionCounts check_reduction_bijection(const QuadricPencil& p, const LinearSubspace& ell,
                                                 std::shared_ptr<const Field> field,
                                                 double ceiling = default_ceiling, unsigned jobs = 1) {
  const Field& F = *field;
  const FqPencil fp = reduce_pencil(p, field);
  const FMat ell_q = reduce_subspace(fp, ell);
  const StandardPosition sp = to_standard_position(p, ell);
  const ReducedPencil rp = reduce_form(sp);
  const FReducedPencil frp = reduce_reduced_pencil(F, rp, sp);
  const std::size_t m = p.N() - ell.r();
  check_ceiling(gaussian_binomial(m, 1, F.order()) * (F.order() + 1), ceiling, "reduced point count");

  BijectionCounts out;
  auto all_vanish = [&](const FVec& x, std::size_t j0) {
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = j0; j <= ell.r(); ++j) {
        Elem acc = 0;
        for (std::size_t k = 0; k < m; ++k) acc = F.add(acc, F.mul(frp.l[i][j][k], x[2 + k]));
        if (acc != 0) return false;
      }
    return true;
  };
  for_each_reduced_point(F, frp, [&](const FVec& x) {
    if (!all_vanish(x, 0)) ++out.lhs;
    if (!all_vanish(x, 1)) ++out.lhs_alt;
  });
  out.census = census_planes(fp, ell.r(), ell_q, ceiling, jobs);
  const int meet = static_cast<int>(ell.r()) - 1;
  if (auto it = out.census.by_meet.find(meet); it != out.census.by_meet.end()) out.rhs = it->second.span_not_in_x;
  return out;
}

/// Local length of the zero-dimensional reduced scheme at a point when the
/// Jacobian test fails: near the point the linear equations cut out a section
/// y(u) of P^1 x P^g given by signed maximal minors, and the length is the
/// order of vanishing of the quadric along that section.
inline unsigned section_multiplicity(const Field& F, const FReducedPencil& rp, const FVec& x) {
  const std::size_t m = rp.N - rp.r, rows = rp.r + 1;
  if (m != rows + 1) throw InvalidArgument("section multiplicity needs N = 2g and r = g - 1");
  const bool s_chart = x[0] != 0;
  const Elem u0 = s_chart ? F.mul(x[1], F.inv(x[0])) : 0;
  // In the chart, (s, t) = (1, u) or (u, 1).
  const FPoly S = s_chart ? FPoly{1} : FPoly{0, 1};
  const FPoly T = s_chart ? FPoly{0, 1} : FPoly{1};
  std::vector<std::vector<FPoly>> L(rows, std::vector<FPoly>(m));
  for (std::size_t j = 0; j < rows; ++j)
    for (std::size_t k = 0; k < m; ++k) {
      FPoly a = S, b = T;
      for (auto& c : a) c = F.mul(c, rp.l[0][j][k]);
      for (auto& c : b) c = F.mul(c, rp.l[1][j][k]);
      L[j][k] = poly_add(F, a, b);
      trim(L[j][k]);
    }
  auto poly_det = [&](auto&& self, const std::vector<std::vector<FPoly>>& a) -> FPoly {
    const std::size_t n = a.size();
    if (n == 0) return {1};
    FPoly acc;
    for (std::size_t c = 0; c < n; ++c) {
      std::vector<std::vector<FPoly>> minor;
      for (std::size_t i = 1; i < n; ++i) {
        std::vector<FPoly> row;
        for (std::size_t j = 0; j < n; ++j)
          if (j != c) row.push_back(a[i][j]);
        minor.push_back(std::move(row));
      }
      FPoly term = poly_mul(F, a[0][c], self(self, minor));
      acc = c % 2 == 0 ? poly_add(F, acc, term) : poly_sub(F, acc, term);
    }
    return acc;
  };
  std::vector<FPoly> y(m);
  for (std::size_t k = 0; k < m; ++k) {
    std::vector<std::vector<FPoly>> sub(rows);
    for (std::size_t j = 0; j < rows; ++j)
      for (std::size_t c = 0; c < m; ++c)
        if (c != k) sub[j].push_back(L[j][c]);
    y[k] = poly_det(poly_det, sub);
    if (k % 2 == 1) y[k] = poly_sub(F, {}, y[k]);
  }
  FVec y0(m);
  bool nonzero = false;
  for (std::size_t k = 0; k < m; ++k) {
    y0[k] = poly_eval(F, y[k], u0);
    nonzero = nonzero || y0[k] != 0;
  }
  if (!nonzero) throw Inconsistency("linear equations drop rank at a point of the reduced scheme");
  // Evaluate the quadric along the section.
  FPoly c;
  for (const auto& t : rp.equations.back()) {
    FPoly term{t.coef};
    for (unsigned e = 0; e < t.exps[0]; ++e) term = poly_mul(F, term, S);
    for (unsigned e = 0; e < t.exps[1]; ++e) term = poly_mul(F, term, T);
    for (std::size_t k = 0; k < m; ++k)
      for (unsigned e = 0; e < t.exps[2 + k]; ++e) term = poly_mul(F, term, y[k]);
    c = poly_add(F, c, term);
  }
  if (c.empty()) throw Inconsistency("quadric vanishes along the section; scheme is not zero-dimensional");
  return root_multiplicity(F, c, u0);
}

/// Jacobian test in the affine chart of the point: 1 if the equations have
/// independent differentials there, 0 otherwise.
inline bool jacobian_full_rank(const Field& F, const FReducedPencil& rp, const FVec& x) {
  const std::size_t fixed_st = x[0] != 0 ? 0 : 1;
  std::size_t fixed_y = 2;
  while (x[fixed_y] == 0) ++fixed_y;
  std::vector<std::size_t> vars;
  for (std::size_t v = 0; v < x.size(); ++v)
    if (v != fixed_st && v != fixed_y) vars.push_back(v);
  if (vars.size() != rp.equations.size()) return false;
  // Dehomogenize by scaling so the fixed coordinates equal 1.
  FVec z = x;
  const Elem is = F.inv(x[fixed_st]), iy = F.inv(x[fixed_y]);
  z[0] = F.mul(z[0], is);
  z[1] = F.mul(z[1], is);
  for (std::size_t k = 2; k < z.size(); ++k) z[k] = F.mul(z[k], iy);
  FMat jac(rp.equations.size(), FVec(vars.size()));
  for (std::size_t e = 0; e < rp.equations.size(); ++e)
    for (std::size_t v = 0; v < vars.size(); ++v) jac[e][v] = partial(F, rp.equations[e], vars[v], z);
  return det_of(F, jac) != 0;
}

struct SchemeLength {
  std::size_t g = 0;
  std::size_t points_base = 0;
  std::size_t length_base = 0;
  std::size_t points_ext = 0;
  std::size_t length_ext = 0;
  /// Points where the Jacobian test failed and the section fallback was used.
  std::size_t fallback_points = 0;
  /// The discriminant splits into linear factors over F_{p^2}.
  bool split = false;
  /// length_ext is only a lower bound for the geometric length.
  [[nodiscard]] bool lower_bound() const { return !split; }
};

/// Length of the zero-dimensional reduced fibration for N = 2g and a
/// (g-1)-plane, counted over F_p and F_{p^2} with multiplicity.
inline SchemeLength reduced_scheme_length(const QuadricPencil& p, const LinearSubspace& ell, std::uint32_t prime) {
  const std::size_t N = p.N();
  if (N % 2 != 0 || ell.r() + 1 != N / 2) throw InvalidArgument("reduced scheme length needs N = 2g and a (g-1)-plane");
  SchemeLength out;
  out.g = N / 2;
  const StandardPosition sp = to_standard_position(p, ell);
  const ReducedPencil rp = reduce_form(sp);
  for (unsigned degree : {1U, 2U}) {
    auto field = std::make_shared<const Field>(Field::of_degree(prime, degree));
    const FqPencil fp = reduce_pencil(p, field);
    reduce_subspace(fp, ell);
    const FReducedPencil frp = reduce_reduced_pencil(*field, rp, sp);
    std::size_t points = 0, length = 0;
    for_each_reduced_point(*field, frp, [&](const FVec& x) {
      ++points;
      if (jacobian_full_rank(*field, frp, x)) {
        ++length;
      } else {
        if (degree == 2) ++out.fallback_points;
        length += section_multiplicity(*field, frp, x);
      }
    });
    if (degree == 1) {
      out.points_base = points;
      out.length_base = length;
    } else {
      out.points_ext = points;
      out.length_ext = length;
      out.split = discriminant_roots(fp) == N + 1;
    }
  }
  return out;
}

struct SeededReduction {
  GeneratedPencil generated;
  std::uint64_t seed = 0;
};

/// First generated pencil (seeds from `seed` upward) with a planted r-plane
/// that reduces well modulo p, together with its plane and reduced equations.
/// With `split`, the discriminant must also split into linear factors over
/// F_{p^2}.
inline SeededReduction seeded_good_reduction(std::size_t N, std::size_t r, std::uint32_t p, std::uint64_t seed,
                                             bool split = false, std::uint64_t attempts = 500) {
  auto base = std::make_shared<const Field>(Field::prime(p));
  std::shared_ptr<const Field> ext;
  if (split) ext = std::make_shared<const Field>(Field::quadratic(p));
  for (std::uint64_t s = seed; s < seed + attempts; ++s) {
    GeneratedPencil g = generate_test_pencil(N, r, s);
    try {
      const FqPencil fp = reduce_pencil(g.pencil, base);
      reduce_subspace(fp, g.plane);
      const StandardPosition sp = to_standard_position(g.pencil, g.plane);
      reduce_reduced_pencil(*base, reduce_form(sp), sp);
      if (split && discriminant_roots(reduce_pencil(g.pencil, ext)) != N + 1) continue;
    } catch (const BadReduction&) {
      continue;
    }
    return {std::move(g), s};
  }
  throw BadReduction("no seed in range reduces well modulo " + std::to_string(p));
}

}  // namespace pencillab::ff
