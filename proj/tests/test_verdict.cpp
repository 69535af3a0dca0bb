#include <gtest/gtest.h>

#include <map>
#include <set>
#include <tuple>

#include "oracles.hpp"
#include "pencillab/verdict.hpp"

using testsupport::dihedral_oracle;
using testsupport::OracleClass;

using namespace pencillab;

namespace {

std::vector<std::string> strs(std::initializer_list<const char*> xs) { return {xs.begin(), xs.end()}; }

}  // namespace

TEST(EnumerateIsotopy, MatchesDihedralOracle) {
  for (std::size_t N = 3; N <= 10; ++N) {
    std::multiset<OracleClass> ours;
    for (const auto& c : enumerate_isotopy(N)) ours.insert({c.invariant.real_roots(), c.hf.h, c.hf.f});
    EXPECT_EQ(ours, dihedral_oracle(N)) << "N = " << N;
  }
}

TEST(EnumerateIsotopy, SmallCounts) {
  EXPECT_EQ(enumerate_isotopy(3).size(), 4U);  // (), (2), (4), (2,1,1)
  EXPECT_THROW(enumerate_isotopy(2), InvalidArgument);
}

TEST(EnumerateIsotopy, OrderAndUniqueness) {
  const auto cls = enumerate_isotopy(6);
  std::set<std::string> seen;
  for (const auto& c : cls) EXPECT_TRUE(seen.insert(c.invariant.str()).second);
  EXPECT_EQ(cls.front().invariant.str(), "(1)");
  EXPECT_EQ(cls.back().invariant.str(), "(1,1,1,1,1,1,1)");
}

TEST(Verdict, SixFoldLists) {
  const auto rep = table_for_N(6);
  const auto f1_rational = strs({"(1)", "(3)", "(1,1,1)", "(2,2,1)", "(1,1,1,1,1)", "(2,1,2,1,1)", "(1,1,1,1,1,1,1)"});
  EXPECT_EQ(rep.matching("f1-rational"), f1_rational);
  EXPECT_EQ(rep.matching("q1-connected"), f1_rational);
  EXPECT_EQ(rep.matching("f2-real-point"), strs({"(1)", "(1,1,1)", "(1,1,1,1,1)", "(1,1,1,1,1,1,1)"}));

  auto f1_uni = rep.matching("f1-unirational");
  EXPECT_EQ(std::set<std::string>(f1_uni.begin(), f1_uni.end()),
            (std::set<std::string>{"(1)", "(3)", "(1,1,1)", "(2,2,1)", "(1,1,1,1,1)", "(2,1,2,1,1)",
                                   "(1,1,1,1,1,1,1)", "(3,1,1)", "(3,2,2)", "(3,1,1,1,1)", "(2,2,1,1,1)"}));
  EXPECT_EQ(rep.matching("f1-real-point"), f1_uni);

  auto x_rat = rep.matching("x-rational");
  std::set<std::string> expected_x(f1_uni.begin(), f1_uni.end());
  expected_x.insert({"(5)", "(4,2,1)", "(3,3,1)"});
  EXPECT_EQ(std::set<std::string>(x_rat.begin(), x_rat.end()), expected_x);
  EXPECT_EQ(rep.matching("q0-connected"), x_rat);

  auto x_uni = rep.matching("x-unirational");
  std::set<std::string> expected_xu(f1_uni.begin(), f1_uni.end());
  expected_xu.insert({"(5)", "(4,2,1)", "(3,3,1)", "(5,1,1)"});
  EXPECT_EQ(std::set<std::string>(x_uni.begin(), x_uni.end()), expected_xu);
  EXPECT_EQ(rep.matching("x-real-point"), x_uni);
}

TEST(Verdict, ConnectedButIrrationalLists) {
  EXPECT_EQ(table_for_N(5).matching("odd-connected-irrational"), strs({"(4)", "(3,2,1)"}));
  EXPECT_EQ(table_for_N(5).matching("h=4,f=1"), strs({"(4)", "(3,2,1)"}));
  auto seven = table_for_N(7).matching("odd-connected-irrational");
  EXPECT_EQ(std::set<std::string>(seven.begin(), seven.end()),
            (std::set<std::string>{"(4)", "(3,2,1)", "(3,1,2,1,1)", "(2,2,2,1,1)", "(3,3,2)"}));
  EXPECT_EQ(table_for_N(7).matching("h=4,f=1"), seven);
}

// (4,1,1) forces the steps ++++-+----+-, so the least negative count is hit on
// two arcs separated by one arc. Checked on an actual pencil as well.
TEST(Verdict, FourOneOneHasFrequencyTwo) {
  for (std::size_t N : {5UL, 7UL})
    EXPECT_EQ(height_frequency(KrasnovInvariant::parse(N, "(4,1,1)")), (HeightFrequency{(N - 3) / 2, 4, 2}));
  const QuadricPencil p(SymMat::diagonal({-2, -3, 3, -2, -1, -2}), SymMat::diagonal({-1, 1, 2, 3, -1, 2}));
  const auto res = krasnov_of_pencil(p);
  EXPECT_EQ(res.invariant.str(), "(4,1,1)");
  EXPECT_EQ(res.hf, (HeightFrequency{1, 4, 2}));
  std::vector<std::size_t> neg;
  for (const auto& a : res.walk.arcs) neg.push_back(a.negatives);
  const std::vector<std::size_t> expected{5, 4, 3, 2, 1, 2, 1, 2, 3, 4, 5, 4};
  bool rotation = false;
  for (std::size_t k = 0; k < neg.size(); ++k) {
    std::rotate(neg.begin(), neg.begin() + 1, neg.end());
    rotation = rotation || neg == expected;
  }
  EXPECT_TRUE(rotation);
}

TEST(Verdict, EvenFlags) {
  const auto rep = table_for_N(6);
  for (const auto& row : rep.rows) {
    EXPECT_EQ(row.even_maximal_fails, row.hf.h == 3 && row.hf.f == 1);
    EXPECT_EQ(row.even_unirational_not_rational, row.hf.h == 3 && row.hf.f > 1);
    if (row.even_maximal_fails) {
      EXPECT_EQ(row.levels[2].fano_real_point.value, Tri::no);
      EXPECT_EQ(row.levels[1].q_rational.value, Tri::yes);
    }
    if (row.even_unirational_not_rational) {
      EXPECT_EQ(row.levels[1].fano_unirational.value, Tri::yes);
      EXPECT_EQ(row.levels[1].fano_rational.value, Tri::no);
    }
  }
}

TEST(Verdict, Citations) {
  const auto t = decide(6, KrasnovInvariant::parse(6, "(3,1,1)"));
  EXPECT_EQ(t.levels[1].fano_rational, (Verdict{Tri::no, "even-second-maximal"}));
  EXPECT_EQ(t.levels[1].fano_unirational, (Verdict{Tri::yes, "unirational-iff-real-point"}));
  EXPECT_EQ(t.levels[0].fano_rational, (Verdict{Tri::yes, "rational-from-higher-plane"}));
  const auto u = decide(6, KrasnovInvariant::parse(6, "(5,1,1)"));
  EXPECT_EQ(u.levels[0].fano_rational, (Verdict{Tri::no, "hkt-fourfold"}));
  EXPECT_EQ(u.levels[1].fano_real_point, (Verdict{Tri::no, "real-point-height"}));
  const auto e = decide(9, KrasnovInvariant::parse(9, "(10)"));
  EXPECT_EQ(e.levels[0].fano_real_point.value, Tri::no);
  EXPECT_EQ(e.levels[0].fano_unirational, (Verdict{Tri::no, "no-real-point-obstruction"}));
  // No real roots: constant balanced signature, h = 0, and planes up to the maximal level.
  const auto z = decide(9, KrasnovInvariant::parse(9, "()"));
  for (const auto& L : z.levels) EXPECT_EQ(L.fano_real_point.value, Tri::yes);
}

TEST(Verdict, OpenCellsStayUnknown) {
  // N = 8, h = 7, f > 1: X(R) is nonempty and Q^(0)(R) is disconnected.
  const auto rep = table_for_N(8);
  bool found = false;
  for (const auto& row : rep.rows)
    if (row.hf.h == 7 && row.hf.f > 1) {
      found = true;
      EXPECT_EQ(row.levels[0].fano_rational.value, Tri::no);  // Q^(0)(R) disconnected
      EXPECT_EQ(row.levels[0].fano_unirational.value, Tri::yes);
    }
  EXPECT_TRUE(found);
  const auto t = decide(8, KrasnovInvariant::parse(8, "(7)"));  // h = 7, f = 1
  ASSERT_EQ(t.hf, (HeightFrequency{1, 7, 1}));
  EXPECT_EQ(t.levels[0].fano_rational.value, Tri::unknown);
  EXPECT_EQ(t.levels[0].fano_rational.rule, "open");
}

TEST(Verdict, Properties) {
  for (std::size_t N = 3; N <= 11; ++N) {
    for (const auto& row : table_for_N(N).rows) {
      ASSERT_EQ(row.levels.size(), N / 2);
      for (std::size_t r = 0; r < row.levels.size(); ++r) {
        const auto& L = row.levels[r];
        EXPECT_NE(L.fano_real_point.value, Tri::unknown);
        if (L.fano_real_point.value == Tri::no) {
          EXPECT_EQ(L.fano_rational.value, Tri::no);
          EXPECT_EQ(L.fano_unirational.value, Tri::no);
          EXPECT_EQ(L.q_rational.value, Tri::no);
        }
        if (L.fano_rational.value == Tri::yes) {
          EXPECT_EQ(L.fano_unirational.value, Tri::yes);
        }
        if (L.q_rational.value == Tri::yes) {
          EXPECT_NE(L.q_real_connected.value, Tri::no);
        }
        if (r + 1 < row.levels.size() && row.levels[r + 1].fano_real_point.value == Tri::yes) {
          EXPECT_EQ(L.fano_real_point.value, Tri::yes);
          EXPECT_EQ(L.fano_rational.value, Tri::yes);
          EXPECT_EQ(L.q_rational.value, Tri::yes);
        }
      }
      // X is birational to Q^(0).
      if (row.levels[0].q_rational.value != Tri::unknown && row.levels[0].fano_rational.value != Tri::unknown) {
        EXPECT_EQ(row.levels[0].q_rational.value, row.levels[0].fano_rational.value);
      }
    }
  }
}

TEST(Verdict, RejectsBadInput) {
  EXPECT_THROW(decide(6, KrasnovInvariant::parse(7, "(2)")), InvalidInvariant);
  EXPECT_THROW(parse_predicate("f1-bogus"), InvalidArgument);
  EXPECT_THROW(parse_predicate("h~4"), InvalidArgument);
  EXPECT_NO_THROW(parse_predicate("h>=3,f>1"));
}
