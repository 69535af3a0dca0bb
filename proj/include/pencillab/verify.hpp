#pragma once

// Property batteries run by `pencillab verify`. Each battery draws its own
// seeded inputs, so batteries can run on separate threads and the summary is
// a pure function of (seed, trials).

#include <atomic>
#include <cstdint>
#include <functional>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "pencillab/ff/fforacle.hpp"
#include "pencillab/generate.hpp"
#include "pencillab/verdict.hpp"

namespace pencillab::verify {

struct PropertyResult {
  std::string name;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::string first_failure;
};

struct Options {
  std::uint64_t seed = 1;
  std::size_t trials = 50;
  unsigned jobs = 1;
  /// Negates the antipodal check so the harness can be seen to fail.
  bool inject_fault = false;
};

namespace detail {

class Tally {
 public:
  explicit Tally(std::string name) { res_.name = std::move(name); }
  void check(bool ok, const std::string& what) {
    if (ok) {
      ++res_.passed;
    } else {
      if (res_.failed == 0) res_.first_failure = what;
      ++res_.failed;
    }
  }
  /// Runs one trial, turning an exception into a failure.
  template <class Fn>
  void trial(const std::string& label, Fn&& fn) {
    try {
      fn();
    } catch (const std::exception& e) {
      check(false, label + ": " + e.what());
    }
  }
  PropertyResult result() && { return std::move(res_); }

 private:
  PropertyResult res_;
};

inline std::pair<Rat, Rat> generic_point(const BinaryForm& delta, SeededRng& rng) {
  for (;;) {
    Rat s(rng.uniform(-7, 7), rng.uniform(1, 4)), t(rng.uniform(-7, 7), rng.uniform(1, 4));
    s.canonicalize();
    t.canonicalize();
    if ((s != 0 || t != 0) && delta(s, t) != 0) return {s, t};
  }
}

inline std::uint64_t mix(std::uint64_t seed, std::uint64_t k) { return seed * 1000003ULL + k * 7919ULL; }

inline Matrix random_invertible(SeededRng& rng, std::size_t n) {
  for (;;) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = rng.uniform(-3, 3);
    if (determinant(m) != 0) return m;
  }
}

}  // namespace detail

inline PropertyResult reduction_signature_law(const Options& o) {
  detail::Tally tally("reduction-signature-law");
  SeededRng rng(detail::mix(o.seed, 1));
  for (std::size_t k = 0; k < o.trials; ++k) {
    const std::size_t N = 4 + k % 6, r = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(N / 2) - 1));
    const std::string label = "N=" + std::to_string(N) + " r=" + std::to_string(r) + " trial " + std::to_string(k);
    tally.trial(label, [&] {
      const auto g = generate_test_pencil(N, r, detail::mix(o.seed, 100 + k));
      const auto [s, t] = detail::generic_point(g.pencil.discriminant(), rng);
      const Signature big = signature_of(g.pencil.fiber(s, t));
      const Signature small = signature_of(reduced_fiber(g.pencil, g.plane, s, t).gram);
      tally.check(big.positives == small.positives + r + 1 && big.negatives == small.negatives + r + 1 &&
                      big.corank == small.corank,
                  label);
    });
  }
  return std::move(tally).result();
}

inline PropertyResult degeneracy_preservation(const Options& o) {
  detail::Tally tally("degeneracy-preservation");
  SeededRng rng(detail::mix(o.seed, 2));
  for (std::size_t k = 0; k < o.trials; ++k) {
    const std::size_t N = 4 + k % 5;
    const std::string label = "N=" + std::to_string(N) + " trial " + std::to_string(k);
    tally.trial(label, [&] {
      const auto d = diagonal_built_pencil(N, diagonal_built_max_r(N), detail::mix(o.seed, 200 + k));
      bool ok = true;
      for (const auto& [s, t] : d.roots) ok = ok && signature_of(reduced_fiber(d.pencil, d.plane, s, t).gram).corank == 1;
      const auto [s, t] = detail::generic_point(d.pencil.discriminant(), rng);
      ok = ok && signature_of(reduced_fiber(d.pencil, d.plane, s, t).gram).corank == 0;
      tally.check(ok, label);
    });
  }
  return std::move(tally).result();
}

inline PropertyResult plane_independence(const Options& o) {
  detail::Tally tally("reduction-plane-independence");
  SeededRng rng(detail::mix(o.seed, 3));
  for (std::size_t k = 0; k < o.trials; ++k) {
    const std::size_t N = 4 + k % 5, r = N / 2 - 1;
    const std::string label = "N=" + std::to_string(N) + " trial " + std::to_string(k);
    tally.trial(label, [&] {
      const auto g = generate_test_pencil(N, r, detail::mix(o.seed, 300 + k));
      const auto [s, t] = detail::generic_point(g.pencil.discriminant(), rng);
      tally.check(signature_of(reduced_fiber(g.pencil, g.plane, s, t).gram) ==
                      signature_of(reduced_fiber(g.pencil, g.partner, s, t).gram),
                  label);
    });
  }
  return std::move(tally).result();
}

inline PropertyResult walk_antipodal(const Options& o) {
  detail::Tally tally("walk-antipodal");
  for (std::size_t k = 0; k < o.trials; ++k) {
    const std::size_t N = 3 + k % 6;
    const std::string label = "N=" + std::to_string(N) + " trial " + std::to_string(k);
    tally.trial(label, [&] {
      const SignatureWalk w = compute_walk(random_generic_pencil(N, detail::mix(o.seed, 400 + k)));
      const std::size_t m = w.steps.size() / 2;
      bool ok = w.steps.size() % 2 == 0;
      for (std::size_t j = 0; ok && m > 0 && j < m; ++j)
        ok = w.arcs[j].positives == w.arcs[j + m].negatives && w.arcs[j].negatives == w.arcs[j + m].positives &&
             w.steps[j] == -w.steps[j + m];
      if (m == 0) ok = ok && w.arcs.size() == 1 && w.arcs[0].positives == w.arcs[0].negatives;
      if (o.inject_fault) ok = !ok;
      tally.check(ok, label);
    });
  }
  return std::move(tally).result();
}

inline PropertyResult krasnov_roundtrip(const Options& o) {
  detail::Tally tally("krasnov-roundtrip");
  for (std::size_t k = 0; k < o.trials; ++k) {
    const std::size_t N = 3 + k % 6;
    const std::string label = "N=" + std::to_string(N) + " trial " + std::to_string(k);
    tally.trial(label, [&] {
      const std::uint64_t s = detail::mix(o.seed, 500 + k);
      const QuadricPencil p = k % 2 ? random_generic_pencil(N, s) : generate_test_pencil(N, 0, s).pencil;
      const SignatureWalk w = compute_walk(p);
      const KrasnovInvariant inv = krasnov_of(w);
      const SignatureWalk rec = reconstruct_walk(inv);
      tally.check(walk_violations(w).empty() && height_frequency(w) == height_frequency(rec) &&
                      krasnov_of(rec) == inv && inv.real_roots() * 2 == w.steps.size(),
                  label);
    });
  }
  return std::move(tally).result();
}

inline PropertyResult krasnov_invariance(const Options& o) {
  detail::Tally tally("krasnov-reparametrization-invariance");
  SeededRng rng(detail::mix(o.seed, 6));
  for (std::size_t k = 0; k < o.trials; ++k) {
    const std::size_t N = 3 + k % 6;
    const std::string label = "N=" + std::to_string(N) + " trial " + std::to_string(k);
    tally.trial(label, [&] {
      const QuadricPencil p = random_generic_pencil(N, detail::mix(o.seed, 600 + k));
      const auto base = krasnov_of_pencil(p);
      const Matrix g2 = detail::random_invertible(rng, 2);
      const Matrix c = detail::random_invertible(rng, N + 1);
      const SymMat a = combine(g2(0, 0), p.q0(), g2(0, 1), p.q1());
      const SymMat b = combine(g2(1, 0), p.q0(), g2(1, 1), p.q1());
      const auto moved = krasnov_of_pencil(QuadricPencil(a.congruent(c), b.congruent(c)));
      tally.check(moved.invariant == base.invariant && moved.hf == base.hf, label);
    });
  }
  return std::move(tally).result();
}

inline PropertyResult enumeration_reconstruction(const Options& o) {
  detail::Tally tally("enumeration-reconstruction");
  for (std::size_t k = 0; k < o.trials; ++k) {
    const std::size_t N = 3 + k % 8;
    tally.trial("N=" + std::to_string(N), [&] {
      for (const auto& c : enumerate_isotopy(N)) {
        const SignatureWalk w = reconstruct_walk(c.invariant);
        tally.check(krasnov_of(w) == c.invariant && height_frequency(w) == c.hf, c.invariant.str());
      }
    });
  }
  return std::move(tally).result();
}

inline PropertyResult verdict_consistency(const Options& o) {
  detail::Tally tally("verdict-consistency");
  for (std::size_t k = 0; k < o.trials; ++k) {
    const std::size_t N = 3 + k % 8;
    tally.trial("N=" + std::to_string(N), [&] {
      for (const auto& t : table_for_N(N).rows) {
        bool ok = true;
        for (std::size_t r = 0; r < t.levels.size(); ++r) {
          const auto& L = t.levels[r];
          const bool point = L.fano_real_point.value == Tri::yes;
          if (r > 0 && point) ok = ok && t.levels[r - 1].fano_real_point.value == Tri::yes;
          if (L.fano_rational.value == Tri::yes) ok = ok && point && L.fano_unirational.value == Tri::yes;
          if (L.q_rational.value == Tri::yes) ok = ok && point;
          if (L.q_real_connected.value == Tri::yes) ok = ok && point;
          if (!point) ok = ok && L.fano_unirational.value == Tri::no;
        }
        tally.check(ok, "N=" + std::to_string(N) + " " + t.invariant.str());
      }
    });
  }
  return std::move(tally).result();
}

inline PropertyResult gaussian_binomial_enumeration(const Options& o) {
  detail::Tally tally("gaussian-binomial-enumeration");
  for (std::size_t k = 0; k < o.trials; ++k) {
    const std::uint32_t q = k % 2 ? 3 : 5;
    const std::size_t n = 2 + k % 3, dim = 1 + (k / 3) % n;
    const std::string label = "n=" + std::to_string(n) + " k=" + std::to_string(dim) + " q=" + std::to_string(q);
    tally.trial(label, [&] {
      const ff::Field F = ff::Field::prime(q);
      std::uint64_t count = 0;
      for (const auto& piv : ff::pivot_sets(n, dim))
        ff::walk_echelon(F, n, piv, [](const ff::FMat&, const ff::FVec&) { return true; },
                         [&](const ff::FMat&) {
                           ++count;
                           return true;
                         });
      tally.check(Int(count) == ff::gaussian_binomial(n, dim, q), label);
    });
  }
  return std::move(tally).result();
}

inline PropertyResult reduction_bijection(const Options& o) {
  detail::Tally tally("reduction-bijection");
  struct Case {
    std::size_t N, r;
    std::uint32_t q;
  };
  const Case cases[] = {{4, 0, 3}, {4, 0, 5}, {5, 0, 3}, {5, 1, 3}};
  for (std::size_t k = 0; k < o.trials; ++k) {
    const Case c = cases[k % 4];
    const std::string label = "(" + std::to_string(c.N) + "," + std::to_string(c.r) + "," + std::to_string(c.q) +
                              ") trial " + std::to_string(k);
    tally.trial(label, [&] {
      const auto sr = ff::seeded_good_reduction(c.N, c.r, c.q, detail::mix(o.seed, 900 + k));
      const auto field = std::make_shared<const ff::Field>(ff::Field::prime(c.q));
      const auto counts = ff::check_reduction_bijection(sr.generated.pencil, sr.generated.plane, field);
      tally.check(counts.lhs == counts.rhs && counts.census.partition_sum() == counts.census.total, label);
    });
  }
  return std::move(tally).result();
}

using Battery = std::function<PropertyResult(const Options&)>;

inline std::vector<Battery> batteries() {
  return {reduction_signature_law, degeneracy_preservation, plane_independence,
          walk_antipodal,          krasnov_roundtrip,       krasnov_invariance,
          enumeration_reconstruction, verdict_consistency, gaussian_binomial_enumeration,
          reduction_bijection};
}

/// Runs every battery; results come back in battery order whatever `jobs` is.
inline std::vector<PropertyResult> run_all(const Options& o) {
  const auto all = batteries();
  std::vector<PropertyResult> out(all.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < all.size(); i = next++) out[i] = all[i](o);
  };
  const unsigned threads = std::max(1U, std::min<unsigned>(o.jobs, static_cast<unsigned>(all.size())));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return out;
}

}  // namespace pencillab::verify
