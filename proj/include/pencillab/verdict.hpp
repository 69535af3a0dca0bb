#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <functional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "pencillab/krasnov.hpp"

namespace pencillab {

struct IsotopyClass {
  KrasnovInvariant invariant;
  HeightFrequency hf;
};

/// Every isotopy class of smooth real complete intersections of two quadrics
/// in P^N: odd compositions of each r <= N+1 with r = N+1 mod 2, up to
/// rotation and reversal (the empty composition when N is odd). Sorted by
/// number of runs, then sum, then runs descending.
inline std::vector<IsotopyClass> enumerate_isotopy(std::size_t N) {
  if (N < 3) throw InvalidArgument("isotopy classification needs N >= 3");
  std::set<std::vector<unsigned>> seen;
  for (std::size_t total = (N + 1) % 2; total <= N + 1; total += 2) {
    if (total == 0) {
      seen.insert(std::vector<unsigned>{});
      continue;
    }
    // Compositions of `total` correspond to subsets of the total-1 gaps.
    for (unsigned long mask = 0; mask < (1UL << (total - 1)); ++mask) {
      std::vector<unsigned> parts;
      unsigned cur = 1;
      for (std::size_t g = 0; g + 1 < total; ++g) {
        if (mask & (1UL << g)) {
          parts.push_back(cur);
          cur = 1;
        } else {
          ++cur;
        }
      }
      parts.push_back(cur);
      if (parts.size() % 2 == 1) seen.insert(canonical_runs(parts));
    }
  }
  std::vector<IsotopyClass> out;
  for (const auto& runs : seen) {
    KrasnovInvariant inv(N, runs);
    out.push_back({inv, height_frequency(inv)});
  }
  std::sort(out.begin(), out.end(), [](const IsotopyClass& a, const IsotopyClass& b) {
    const auto& x = a.invariant.runs();
    const auto& y = b.invariant.runs();
    if (x.size() != y.size()) return x.size() < y.size();
    if (a.invariant.real_roots() != b.invariant.real_roots()) return a.invariant.real_roots() < b.invariant.real_roots();
    return x > y;
  });
  return out;
}

enum class Tri { yes, no, unknown };

inline std::string_view to_string(Tri t) {
  switch (t) {
    case Tri::yes: return "yes";
    case Tri::no: return "no";
    case Tri::unknown: return "unknown";
  }
  return "unknown";
}

/// A decided cell and the rule that decided it. Rule names:
///   real-point-height          F_r(R) nonempty iff h <= N-2r-1
///   connected-height-frequency Q^(r)(R) nonempty and connected iff
///                              F_r(R) nonempty and (h <= N-2r-3 or f = 1)
///   rational-from-higher-plane F_{r+1}(R) nonempty makes F_r and Q^(r) rational
///   unirational-iff-real-point non-maximal F_r is unirational iff it has a real point
///   even-second-maximal        N = 2g, r = g-2: rational iff real locus nonempty, connected
///   odd-second-maximal         N = 2g+1, r = g-2: Q^(r) rational iff F_{g-1}(R) nonempty
///   hkt-fourfold               N = 6: X rational iff X(R) nonempty and connected
///   reduction-birational       X is birational to Q^(0)
///   no-real-point-obstruction  no real point: neither rational nor unirational
///   connected-locus-obstruction a rational variety has a connected real locus
///   implied                    rational implies unirational
///   open                       no rule applies
struct Verdict {
  Tri value = Tri::unknown;
  std::string rule = "open";
  friend bool operator==(const Verdict&, const Verdict&) = default;
};

struct LevelVerdicts {
  std::size_t r = 0;
  Verdict fano_real_point;
  /// F_r(R) nonempty and Q^(r)(R) nonempty and connected.
  Verdict q_real_connected;
  /// F_r(R) nonempty and Q^(r) is R-rational.
  Verdict q_rational;
  Verdict fano_rational;
  Verdict fano_unirational;
};

struct VerdictTable {
  std::size_t N = 0;
  KrasnovInvariant invariant;
  HeightFrequency hf;
  std::vector<LevelVerdicts> levels;  // r = 0 .. floor(N/2) - 1
  /// N even: F_{g-1}(R) empty, F_{g-2}(R) nonempty, Q^(g-2) rational (h = 3, f = 1).
  bool even_maximal_fails = false;
  /// N even: F_{g-2} unirational but not rational (h = 3, f > 1).
  bool even_unirational_not_rational = false;
  /// N odd: Q^(g-2)(R) nonempty and connected but Q^(g-2) irrational (h = 4, f = 1).
  bool odd_connected_irrational = false;
};

inline VerdictTable decide(std::size_t N, const KrasnovInvariant& inv) {
  if (N < 3) throw InvalidArgument("verdicts need N >= 3");
  if (inv.N() != N) throw InvalidInvariant("invariant was built for a different N");
  VerdictTable t{N, inv, height_frequency(inv), {}, false, false, false};
  const long h = static_cast<long>(t.hf.h), n = static_cast<long>(N);
  const std::size_t f = t.hf.f;
  const std::size_t top = N / 2 - 1;
  const bool even = N % 2 == 0;
  const std::size_t g = N / 2;  // N = 2g or 2g+1

  for (std::size_t r = 0; r <= top; ++r) {
    const long rr = static_cast<long>(r);
    const bool point = h <= n - 2 * rr - 1;
    const bool next_point = r < top && h <= n - 2 * rr - 3;
    const bool connected = point && (h <= n - 2 * rr - 3 || f == 1);
    const bool positive_rel_dim = n - 2 * rr - 2 >= 1;
    const bool even_second = even && g >= 2 && r == g - 2;
    const bool odd_second = !even && g >= 2 && r == g - 2;
    const auto yn = [](bool b, const char* rule) { return Verdict{b ? Tri::yes : Tri::no, rule}; };

    LevelVerdicts L;
    L.r = r;
    L.fano_real_point = yn(point, "real-point-height");

    if (!point)
      L.q_real_connected = {Tri::no, "real-point-height"};
    else if (positive_rel_dim)
      L.q_real_connected = yn(connected, "connected-height-frequency");

    if (!point) {
      L.q_rational = {Tri::no, "no-real-point-obstruction"};
    } else if (next_point) {
      L.q_rational = {Tri::yes, "rational-from-higher-plane"};
    } else if (even_second) {
      L.q_rational = yn(connected, "even-second-maximal");
    } else if (odd_second) {
      L.q_rational = yn(h <= 2, "odd-second-maximal");
    } else if (N == 6 && r == 0) {
      L.q_rational = yn(connected, "hkt-fourfold");
    } else if (positive_rel_dim && !connected) {
      L.q_rational = {Tri::no, "connected-locus-obstruction"};
    }

    if (!point) {
      L.fano_rational = {Tri::no, "no-real-point-obstruction"};
    } else if (next_point) {
      L.fano_rational = {Tri::yes, "rational-from-higher-plane"};
    } else if (even_second) {
      L.fano_rational = yn(connected, "even-second-maximal");
    } else if (N == 6 && r == 0) {
      L.fano_rational = yn(connected, "hkt-fourfold");
    } else if (r == 0 && L.q_rational.value != Tri::unknown) {
      L.fano_rational = {L.q_rational.value, "reduction-birational"};
    }

    if (!point)
      L.fano_unirational = {Tri::no, "no-real-point-obstruction"};
    else if (r + 2 <= g)
      L.fano_unirational = {Tri::yes, "unirational-iff-real-point"};
    else if (L.fano_rational.value == Tri::yes)
      L.fano_unirational = {Tri::yes, "implied"};

    t.levels.push_back(L);
  }
  if (even) {
    t.even_maximal_fails = h == 3 && f == 1;
    t.even_unirational_not_rational = h == 3 && f > 1;
  } else {
    t.odd_connected_irrational = g >= 2 && h == 4 && f == 1;
  }
  return t;
}

/// A named yes/no question about a table, as used by the CLI filters.
using Predicate = std::function<bool(const VerdictTable&)>;

/// Parses a predicate name. Accepted forms:
///   f<r>-real-point, f<r>-rational, f<r>-unirational,
///   q<r>-connected, q<r>-rational,
///   x-real-point, x-rational, x-unirational (the r = 0 cells),
///   even-maximal-fails, even-unirational-not-rational, odd-connected-irrational,
///   and comma-separated conditions on h and f such as "h=4,f=1" or "f>1".
inline Predicate parse_predicate(std::string_view text) {
  std::string s(text);
  std::erase(s, ' ');
  auto cell = [](std::size_t r, Verdict LevelVerdicts::*field) -> Predicate {
    return [r, field](const VerdictTable& t) { return r < t.levels.size() && (t.levels[r].*field).value == Tri::yes; };
  };
  if (s == "even-maximal-fails") return [](const VerdictTable& t) { return t.even_maximal_fails; };
  if (s == "even-unirational-not-rational")
    return [](const VerdictTable& t) { return t.even_unirational_not_rational; };
  if (s == "odd-connected-irrational") return [](const VerdictTable& t) { return t.odd_connected_irrational; };
  if (s.size() > 2 && s[1] == '-' && s[0] == 'x') s = "f0" + s.substr(1);
  if (s.size() > 2 && (s[0] == 'f' || s[0] == 'q') && std::isdigit(static_cast<unsigned char>(s[1]))) {
    const auto dash = s.find('-');
    if (dash != std::string::npos) {
      const std::string num = s.substr(1, dash - 1), what = s.substr(dash + 1);
      if (!num.empty() && num.find_first_not_of("0123456789") == std::string::npos) {
        const std::size_t r = std::stoul(num);
        if (s[0] == 'f' && what == "real-point") return cell(r, &LevelVerdicts::fano_real_point);
        if (s[0] == 'f' && what == "rational") return cell(r, &LevelVerdicts::fano_rational);
        if (s[0] == 'f' && what == "unirational") return cell(r, &LevelVerdicts::fano_unirational);
        if (s[0] == 'q' && what == "connected") return cell(r, &LevelVerdicts::q_real_connected);
        if (s[0] == 'q' && what == "rational") return cell(r, &LevelVerdicts::q_rational);
      }
    }
  }
  // Conjunction of comparisons on h and f.
  std::vector<Predicate> parts;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const auto comma = s.find(',', pos);
    const std::string item = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    pos = comma == std::string::npos ? s.size() + 1 : comma + 1;
    if (item.size() < 3 || (item[0] != 'h' && item[0] != 'f'))
      throw InvalidArgument("unknown predicate '" + std::string(text) + "'");
    std::string op = item.substr(1, 1);
    std::size_t vpos = 2;
    if (item.size() > 3 && item[2] == '=') {
      op += '=';
      vpos = 3;
    }
    const std::string val = item.substr(vpos);
    if (val.empty() || val.find_first_not_of("0123456789") != std::string::npos ||
        (op != "=" && op != "<" && op != ">" && op != "<=" && op != ">="))
      throw InvalidArgument("unknown predicate '" + std::string(text) + "'");
    const std::size_t v = std::stoul(val);
    const bool is_h = item[0] == 'h';
    parts.push_back([is_h, op, v](const VerdictTable& t) {
      const std::size_t x = is_h ? t.hf.h : t.hf.f;
      if (op == "=") return x == v;
      if (op == "<") return x < v;
      if (op == ">") return x > v;
      if (op == "<=") return x <= v;
      return x >= v;
    });
  }
  return [parts](const VerdictTable& t) {
    return std::all_of(parts.begin(), parts.end(), [&](const Predicate& p) { return p(t); });
  };
}

struct ClassificationReport {
  std::size_t N = 0;
  std::vector<VerdictTable> rows;
  /// Invariants satisfying a predicate, in enumeration order.
  [[nodiscard]] std::vector<std::string> matching(const Predicate& p) const {
    std::vector<std::string> out;
    for (const auto& row : rows)
      if (p(row)) out.push_back(row.invariant.str());
    return out;
  }
  [[nodiscard]] std::vector<std::string> matching(std::string_view name) const {
    return matching(parse_predicate(name));
  }
};

inline ClassificationReport table_for_N(std::size_t N) {
  ClassificationReport rep;
  rep.N = N;
  for (const auto& c : enumerate_isotopy(N)) rep.rows.push_back(decide(N, c.invariant));
  return rep;
}

}  // namespace pencillab
