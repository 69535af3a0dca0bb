#pragma once

#include <algorithm>
#include <cstddef>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pencillab/pencil.hpp"
#include "pencillab/roots.hpp"

namespace pencillab {

/// A real root of the discriminant lifted to the circle of (s, t).
/// The first half of the circle is {t > 0} together with (1, 0); `lift` is +1
/// there and -1 on the antipodal copy.
struct Crossing {
  bool at_infinity = false;  // the root [1:0]
  Interval interval;         // isolates s/t when !at_infinity
  int lift = 1;
};

/// Arcs a_0..a_{2m-1} of the circle cut out by the 2m crossings, counter-
/// clockwise from angle 0; arc a_j ends at crossing c_j. With no real roots
/// there is a single arc and no crossing.
struct SignatureWalk {
  std::size_t N = 0;
  std::vector<Crossing> crossings;
  std::vector<Signature> arcs;
  /// Exact sample point (s, t) of each arc; empty for a reconstructed walk.
  std::vector<std::pair<Rat, Rat>> samples;
  /// steps[j] = p(a_{j+1}) - p(a_j), indices mod 2m.
  std::vector<int> steps;
};

/// Describes every violated walk invariant; empty when the walk is sound.
inline std::vector<std::string> walk_violations(const SignatureWalk& w) {
  std::vector<std::string> bad;
  const std::size_t k = w.steps.size();
  if (k % 2 != 0) bad.push_back("odd number of crossings");
  if (k == 0 && w.arcs.size() != 1) bad.push_back("a walk without crossings has exactly one arc");
  if (k > 0 && w.arcs.size() != k) bad.push_back("arc count differs from crossing count");
  if (!w.crossings.empty() && w.crossings.size() != k) bad.push_back("crossing count differs from step count");
  for (const auto& a : w.arcs)
    if (a.corank != 0 || a.positives + a.negatives != w.N + 1) bad.push_back("degenerate arc signature");
  for (std::size_t j = 0; j < k && w.arcs.size() == k; ++j) {
    const long d = static_cast<long>(w.arcs[(j + 1) % k].positives) - static_cast<long>(w.arcs[j].positives);
    if (d != w.steps[j] || (d != 1 && d != -1)) bad.push_back("step " + std::to_string(j) + " is not +-1");
  }
  const std::size_t m = k / 2;
  for (std::size_t j = 0; j < m && w.arcs.size() == k; ++j)
    if (w.arcs[j + m].positives != w.arcs[j].negatives) bad.push_back("antipodal arcs do not swap signature");
  if (k == 0 && w.arcs.size() == 1 && w.arcs[0].positives != w.arcs[0].negatives)
    bad.push_back("single arc is not balanced");
  return bad;
}

/// Signature walk of a smooth pencil around the circle of (s, t).
inline SignatureWalk compute_walk(const QuadricPencil& p) {
  const auto rep = validate_smooth(p);
  if (!rep.smooth) throw SingularPencil("pencil is singular; repeated factor " + rep.witness.str());
  const RootIsolation iso = isolate_real_roots(rep.discriminant);

  SignatureWalk w;
  w.N = p.N();
  // First-half crossings in angular order: [1:0], then s/t descending.
  std::vector<Interval> desc(iso.intervals.rbegin(), iso.intervals.rend());
  if (iso.root_at_infinity) w.crossings.push_back({true, {}, 1});
  for (const auto& iv : desc) w.crossings.push_back({false, iv, 1});
  const std::size_t m = w.crossings.size();

  if (m == 0) {
    w.samples.emplace_back(1, 0);
  } else {
    // a_0 ends at c_0 and starts at the antipode of the last crossing.
    if (!iso.root_at_infinity)
      w.samples.emplace_back(1, 0);
    else if (desc.empty())
      w.samples.emplace_back(0, -1);
    else
      w.samples.emplace_back(-(desc.back().lo - 1), -1);
    // a_j for 1 <= j < m lies between c_{j-1} and c_j.
    for (std::size_t j = 1; j < m; ++j) {
      const Crossing& prev = w.crossings[j - 1];
      const Crossing& next = w.crossings[j];
      const Rat u = prev.at_infinity ? Rat(next.interval.hi + 1) : Rat((next.interval.hi + prev.interval.lo) / 2);
      w.samples.emplace_back(u, 1);
    }
    for (std::size_t j = 0; j < m; ++j) {
      auto c = w.crossings[j];
      c.lift = -1;
      w.crossings.push_back(c);
      w.samples.emplace_back(-w.samples[j].first, -w.samples[j].second);
    }
  }
  for (const auto& [s, t] : w.samples) w.arcs.push_back(signature_of(p.fiber(s, t)));
  const std::size_t k = w.arcs.size();
  if (k > 1)
    for (std::size_t j = 0; j < k; ++j)
      w.steps.push_back(static_cast<int>(w.arcs[(j + 1) % k].positives) - static_cast<int>(w.arcs[j].positives));
  if (auto bad = walk_violations(w); !bad.empty()) throw Inconsistency("signature walk: " + bad.front());
  return w;
}

/// Lexicographically largest sequence among all rotations and reversals.
inline std::vector<unsigned> canonical_runs(const std::vector<unsigned>& runs) {
  std::vector<unsigned> best = runs;
  for (int dir = 0; dir < 2; ++dir) {
    std::vector<unsigned> v = runs;
    if (dir == 1) std::reverse(v.begin(), v.end());
    for (std::size_t k = 0; k < v.size(); ++k) {
      std::rotate(v.begin(), v.begin() + 1, v.end());
      best = std::max(best, v);
    }
  }
  return best;
}

inline std::string runs_to_string(const std::vector<unsigned>& runs) {
  std::string s = "(";
  for (std::size_t i = 0; i < runs.size(); ++i) s += (i ? "," : "") + std::to_string(runs[i]);
  return s + ")";
}

/// Lengths of the maximal runs of + around the circle, in canonical form.
class KrasnovInvariant {
 public:
  KrasnovInvariant(std::size_t N, std::vector<unsigned> runs) : N_(N), runs_(canonical_runs(runs)) {
    std::size_t sum = 0;
    for (auto r : runs_) {
      if (r == 0) throw InvalidInvariant("runs must be positive");
      sum += r;
    }
    if (!runs_.empty() && runs_.size() % 2 == 0) throw InvalidInvariant("number of runs must be odd");
    if (sum % 2 != (N + 1) % 2) throw InvalidInvariant("sum of runs must have the parity of N+1");
    if (sum > N + 1) throw InvalidInvariant("sum of runs exceeds N+1");
  }

  /// Parses "(3,1,1)", "3,1,1" or "()".
  static KrasnovInvariant parse(std::size_t N, std::string_view text) {
    std::string s;
    for (char c : text)
      if (c != ' ' && c != '(' && c != ')') s += c;
    std::vector<unsigned> runs;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
        throw InvalidInvariant("malformed invariant '" + std::string(text) + "'");
      runs.push_back(static_cast<unsigned>(std::stoul(item)));
    }
    return {N, std::move(runs)};
  }

  [[nodiscard]] std::size_t N() const { return N_; }
  [[nodiscard]] const std::vector<unsigned>& runs() const { return runs_; }
  [[nodiscard]] std::size_t real_roots() const {
    std::size_t s = 0;
    for (auto r : runs_) s += r;
    return s;
  }
  [[nodiscard]] std::string str() const { return runs_to_string(runs_); }

  friend bool operator==(const KrasnovInvariant&, const KrasnovInvariant&) = default;

 private:
  std::size_t N_;
  std::vector<unsigned> runs_;
};

inline KrasnovInvariant krasnov_of(const SignatureWalk& w) {
  const std::size_t k = w.steps.size();
  std::vector<unsigned> runs;
  if (k > 0) {
    std::size_t start = 0;
    while (start < k && !(w.steps[start] > 0 && w.steps[(start + k - 1) % k] < 0)) ++start;
    if (start == k) throw Inconsistency("step sequence has no run of +");
    unsigned cur = 0;
    for (std::size_t i = 0; i < k; ++i) {
      const int s = w.steps[(start + i) % k];
      if (s > 0) {
        ++cur;
      } else if (cur > 0) {
        runs.push_back(cur);
        cur = 0;
      }
    }
    if (cur > 0) runs.push_back(cur);
  }
  return {w.N, std::move(runs)};
}

/// The full cyclic step sequence of an invariant r_0..r_{2u}:
///   +r_0 -r_{u+1} +r_1 -r_{u+2} ... -r_{2u} +r_u, followed by the same
/// pattern with every sign flipped.
inline std::vector<int> steps_of(const KrasnovInvariant& inv) {
  const auto& r = inv.runs();
  std::vector<int> half;
  if (r.empty()) return half;
  const std::size_t u = (r.size() - 1) / 2;
  for (std::size_t i = 0; i <= u; ++i) {
    half.insert(half.end(), r[i], 1);
    if (i < u) half.insert(half.end(), r[i + u + 1], -1);
  }
  std::vector<int> all = half;
  for (int s : half) all.push_back(-s);
  return all;
}

/// Walk with abstract crossings determined by an invariant. Antipodal
/// symmetry p_{j+m} = N+1 - p_j forces p_j = (N+1 - S_j)/2, where S_j is the
/// sum of the m steps starting at j.
inline SignatureWalk reconstruct_walk(const KrasnovInvariant& inv) {
  SignatureWalk w;
  w.N = inv.N();
  w.steps = steps_of(inv);
  const std::size_t k = w.steps.size(), m = k / 2;
  const long n1 = static_cast<long>(w.N) + 1;
  if (k == 0) {
    if (n1 % 2 != 0) throw InvalidInvariant("empty invariant needs odd N");
    w.arcs.push_back({static_cast<std::size_t>(n1 / 2), static_cast<std::size_t>(n1 / 2), 0});
    return w;
  }
  for (std::size_t j = 0; j < k; ++j) {
    long sj = 0;
    for (std::size_t i = 0; i < m; ++i) sj += w.steps[(j + i) % k];
    if ((n1 - sj) % 2 != 0) throw InvalidInvariant("step sums have the wrong parity");
    const long pj = (n1 - sj) / 2;
    w.arcs.push_back({static_cast<std::size_t>(pj), static_cast<std::size_t>(n1 - pj), 0});
  }
  if (auto bad = walk_violations(w); !bad.empty()) throw InvalidInvariant("reconstruction: " + bad.front());
  return w;
}

struct HeightFrequency {
  std::size_t i_min = 0;
  std::size_t h = 0;
  std::size_t f = 0;
  friend bool operator==(const HeightFrequency&, const HeightFrequency&) = default;
};

/// I_min is the least negative count over arcs, h = N+1 - 2 I_min, and f the
/// number of arcs of the circle attaining I_min.
inline HeightFrequency height_frequency(const SignatureWalk& w) {
  HeightFrequency hf;
  hf.i_min = w.N + 1;
  for (const auto& a : w.arcs) hf.i_min = std::min(hf.i_min, a.negatives);
  for (const auto& a : w.arcs) hf.f += a.negatives == hf.i_min ? 1 : 0;
  hf.h = w.N + 1 - 2 * hf.i_min;
  return hf;
}

inline HeightFrequency height_frequency(const KrasnovInvariant& inv) {
  return height_frequency(reconstruct_walk(inv));
}

struct KrasnovResult {
  SignatureWalk walk;
  KrasnovInvariant invariant;
  HeightFrequency hf;
};

/// Measures the invariant of a pencil. (h, f) is taken from the measured walk
/// and cross-checked against the walk rebuilt from the invariant.
inline KrasnovResult krasnov_of_pencil(const QuadricPencil& p) {
  SignatureWalk w = compute_walk(p);
  KrasnovInvariant inv = krasnov_of(w);
  const HeightFrequency direct = height_frequency(w);
  if (direct != height_frequency(inv))
    throw Inconsistency("height/frequency of the walk disagree with the invariant " + inv.str());
  return {std::move(w), std::move(inv), direct};
}

}  // namespace pencillab
