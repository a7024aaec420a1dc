#include <gtest/gtest.h>

#include "oracle.hpp"
#include "vadef/cohomology.hpp"
#include "vadef/library.hpp"

using namespace vadef;

namespace {

struct Case {
  std::string label;
  AlgebraSpec spec;
};

std::vector<Case> cases() {
  const Scalar c = Scalar::parameter("c"), l = Scalar::parameter("l");
  std::vector<Case> out{{"virasoro_c", virasoro(c)},
                        {"virasoro_0", virasoro(Scalar(0))},
                        {"virasoro_half", virasoro(Scalar(make_rational(1, 2)))},
                        {"virasoro_26", virasoro(Scalar(26))},
                        {"heisenberg_l", heisenberg(3, l)},
                        {"sl2_l", affine(LieData::sl2(), l)},
                        {"sl2_1", affine(LieData::sl2(), Scalar(1))},
                        {"w3_c", w3(c)},
                        {"w3_2", w3(Scalar(2))},
                        {"w3_1", w3(Scalar(1))},
                        {"w3_degenerate", w3(Scalar(make_rational(-22, 5)))}};
  for (int r = 1; r <= 4; ++r) out.push_back({"heisenberg_" + std::to_string(r) + "_1", heisenberg(r, Scalar(1))});
  for (int r = 2; r <= 3; ++r) out.push_back({"heisenberg_" + std::to_string(r) + "_0", heisenberg(r, Scalar(0))});
  return out;
}

class OracleAgreement : public ::testing::TestWithParam<Case> {};

}  // namespace

TEST_P(OracleAgreement, SameDimensions) {
  const AlgebraSpec& spec = GetParam().spec;
  ClassifyOptions opt;
  opt.verify = false;
  CohomologyResult mine = classify(spec, opt);
  oracle::Result theirs = oracle::brute_force_h2(spec);
  EXPECT_EQ(mine.unknowns, theirs.unknowns);
  EXPECT_EQ(mine.cocycle_dim, theirs.cocycle_dim);
  EXPECT_EQ(mine.coboundary_dim, theirs.coboundary_dim);
  EXPECT_EQ(mine.dim_h2, theirs.dim_h2);
}

INSTANTIATE_TEST_SUITE_P(Builtins, OracleAgreement, ::testing::ValuesIn(cases()),
                         [](const auto& info) { return info.param.label; });

TEST(Oracle, KnownTriples) {
  auto v = oracle::brute_force_h2(virasoro(Scalar(1)));
  EXPECT_EQ(std::tie(v.cocycle_dim, v.coboundary_dim, v.dim_h2), std::make_tuple(2u, 1u, 1u));
  auto h = oracle::brute_force_h2(heisenberg(3, Scalar(1)));
  EXPECT_EQ(std::tie(h.cocycle_dim, h.coboundary_dim, h.dim_h2), std::make_tuple(7u, 6u, 1u));
  for (const Scalar& l : {Scalar(1), Scalar(make_rational(-3, 7))}) {
    auto one = oracle::brute_force_h2(heisenberg(1, l));
    EXPECT_EQ(std::tie(one.cocycle_dim, one.coboundary_dim, one.dim_h2), std::make_tuple(1u, 1u, 0u));
  }
}

TEST(Oracle, DenseRank) {
  const Scalar c = Scalar::parameter("c");
  EXPECT_EQ(oracle::dense_rank({{Scalar(1), Scalar(2)}, {Scalar(2), Scalar(4)}}), 1u);
  EXPECT_EQ(oracle::dense_rank({{Scalar(1), c}, {c, Scalar(1)}}), 2u);
  EXPECT_EQ(oracle::dense_rank({{Scalar(0), Scalar(0)}}), 0u);
}
