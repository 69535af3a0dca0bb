#include <gtest/gtest.h>

#include "pencillab/io.hpp"
#include "pencillab/verify.hpp"

using namespace pencillab;
using io::json;

TEST(Io, PencilRoundTrip) {
  const QuadricPencil p = generate_test_pencil(5, 1, 3).pencil;
  const json j = io::pencil_to_json(p);
  EXPECT_EQ(io::pencil_from_json(j), p);
  EXPECT_EQ(io::pencil_from_json(json::parse(j.dump())).q1(), p.q1());
}

TEST(Io, AcceptsIntegersAndCanonicalizes) {
  const json j = json::parse(R"({"N": 2, "q0": [[1, 0, 0], [0, "2/4", 0], [0, 0, -1]],
                                 "q1": [["0", 0, 1], [0, 1, 0], [1, 0, 0]]})");
  const QuadricPencil p = io::pencil_from_json(j);
  EXPECT_EQ(p.q0()(1, 1), Rat(1, 2));
  EXPECT_EQ(io::pencil_to_json(p)["q0"][1][1], "1/2");
}

TEST(Io, RejectsMalformedInput) {
  EXPECT_THROW(io::parse_json("{\"N\": 2,", "x"), ParseError);
  EXPECT_THROW(io::pencil_from_json(json::parse(R"({"q0": [[1]], "q1": [[1]]})")), ParseError);
  EXPECT_THROW(io::pencil_from_json(json::parse(R"({"N": 2, "q0": [[1, 0], [0]], "q1": [[1]]})")), ParseError);
  EXPECT_THROW(io::pencil_from_json(json::parse(R"({"N": 2, "q0": [[1.5, 0, 0], [0, 1, 0], [0, 0, 1]],
                                                    "q1": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]})")),
               ParseError);
  EXPECT_THROW(io::pencil_from_json(json::parse(R"({"N": 2, "q0": [["1/0", 0, 0], [0, 1, 0], [0, 0, 1]],
                                                    "q1": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]})")),
               ParseError);
  // Size mismatch and asymmetry are malformed pencils, not parse errors.
  EXPECT_THROW(io::pencil_from_json(json::parse(R"({"N": 3, "q0": [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
                                                    "q1": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]})")),
               MalformedPencil);
  EXPECT_THROW(io::pencil_from_json(json::parse(R"({"N": 2, "q0": [[1, 2, 0], [0, 1, 0], [0, 0, 1]],
                                                    "q1": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]})")),
               MalformedPencil);
}

TEST(Io, SubspaceRoundTripAndShape) {
  const LinearSubspace ell = generate_test_pencil(6, 2, 4).plane;
  const LinearSubspace back = io::subspace_from_json(io::subspace_to_json(ell));
  EXPECT_EQ(back.basis(), ell.basis());
  EXPECT_THROW(io::subspace_from_json(json::parse(R"({"r": 1, "basis": [[1, 0, 0]]})")), ParseError);
  EXPECT_THROW(io::subspace_from_json(json::parse(R"({"r": 1, "basis": [[1, 0, 0], [2, 0, 0]]})")),
               InvalidArgument);
}

TEST(Io, ReducedPencilSerialization) {
  const auto g = generate_test_pencil(4, 0, 2);
  const ReducedPencil rp = hyperbolic_reduce(g.pencil, g.plane);
  const json j = io::reduced_pencil_to_json(rp);
  EXPECT_EQ(j["variables"].size(), 6U);
  ASSERT_EQ(j["equations"].size(), rp.equations.size());
  for (std::size_t e = 0; e < rp.equations.size(); ++e)
    for (std::size_t k = 0; k < rp.equations[e].size(); ++k) {
      EXPECT_EQ(j["equations"][e][k][0].get<std::vector<unsigned>>(), rp.equations[e][k].exps);
      EXPECT_EQ(parse_rat(j["equations"][e][k][1].get<std::string>()), rp.equations[e][k].coef);
    }
}

TEST(Io, ReportsAreDeterministic) {
  const auto g = generate_test_pencil(5, 1, 8);
  const auto a = io::walk_to_json(krasnov_of_pencil(g.pencil).walk).dump();
  const auto b = io::walk_to_json(krasnov_of_pencil(g.pencil).walk).dump();
  EXPECT_EQ(a, b);
  const json t = io::verdict_table_to_json(decide(6, KrasnovInvariant::parse(6, "(3)")));
  EXPECT_EQ(t["levels"][1]["fano_rational"]["value"], "yes");
  EXPECT_EQ(t["levels"][2]["fano_real_point"]["rule"], "real-point-height");
}

TEST(Verify, BatteriesPassAndFaultIsNamed) {
  verify::Options o;
  o.trials = 4;
  for (const auto& r : verify::run_all(o)) EXPECT_EQ(r.failed, 0U) << r.name << ": " << r.first_failure;
  o.inject_fault = true;
  o.jobs = 3;
  std::size_t failing = 0;
  for (const auto& r : verify::run_all(o))
    if (r.failed) {
      ++failing;
      EXPECT_EQ(r.name, "walk-antipodal");
    }
  EXPECT_EQ(failing, 1U);
}
