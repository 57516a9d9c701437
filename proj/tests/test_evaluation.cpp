#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "giat/evaluation.hpp"

namespace {

using namespace giat;

DecompositionResult make(std::vector<std::vector<Index>> groups, std::vector<Index> sep) {
  DecompositionResult r;
  r.nonsep_groups = std::move(groups);
  r.sep_vars = std::move(sep);
  return r;
}

const GroupingTruth kTruth{{{0, 1}, {2, 3}}, {4, 5}};

TEST(Score, ExactMatch) {
  const auto r = score(make({{0, 1}, {2, 3}}, {4, 5}), kTruth);
  EXPECT_EQ(r.captured_sep_vars, 2u);
  EXPECT_EQ(r.captured_nonsep_vars, 4u);
  EXPECT_EQ(r.formed_nonsep_groups, 2u);
  EXPECT_TRUE(r.exact);
}

TEST(Score, EverythingSeparable) {
  const auto r = score(make({}, {0, 1, 2, 3, 4, 5}), kTruth);
  EXPECT_EQ(r.captured_sep_vars, 2u);
  EXPECT_EQ(r.captured_nonsep_vars, 0u);
  EXPECT_EQ(r.formed_nonsep_groups, 0u);
  EXPECT_FALSE(r.exact);
}

TEST(Score, MergedGroupsAreNotExact) {
  const auto r = score(make({{0, 1, 2, 3}}, {4, 5}), kTruth);
  EXPECT_EQ(r.captured_nonsep_vars, 4u);
  EXPECT_EQ(r.formed_nonsep_groups, 1u);
  EXPECT_FALSE(r.exact);

  // a separable variable pulled into a group
  const auto s = score(make({{0, 1, 4}, {2, 3}}, {5}), kTruth);
  EXPECT_EQ(s.captured_sep_vars, 1u);
  EXPECT_EQ(s.captured_nonsep_vars, 4u);
  EXPECT_FALSE(s.exact);
}

TEST(Score, SmallCase) {
  const GroupingTruth truth{{{0, 1}}, {2, 3}};
  const auto r = score(make({{0, 1, 3}}, {2}), truth);
  EXPECT_EQ(r.captured_sep_vars, 1u);
  EXPECT_EQ(r.captured_nonsep_vars, 2u);
  EXPECT_EQ(r.formed_nonsep_groups, 1u);
  EXPECT_FALSE(r.exact);
}

TEST(Score, DimensionMismatchRejected) {
  EXPECT_THROW(score(make({{0, 1}}, {}), kTruth), std::invalid_argument);
}

TEST(Score, OrderInsideAndAcrossGroupsIgnored) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    auto r = make({{2, 3}, {1, 0}}, {5, 4});
    for (auto& g : r.nonsep_groups) std::shuffle(g.begin(), g.end(), rng);
    std::shuffle(r.nonsep_groups.begin(), r.nonsep_groups.end(), rng);
    EXPECT_TRUE(score(r, kTruth).exact);
  }
}

TEST(Score, TruthOfGeneratedProblemScoresExact) {
  ProblemSpec spec;
  spec.separable_dims = 7;
  spec.subcomponents = {{3, BaseFunctionKind::Elliptic, true, 1.0},
                        {4, BaseFunctionKind::Rosenbrock, false, 1.0}};
  const auto truth = ground_truth(build_problem<double>(spec, 4));
  const auto r = score(make(truth.nonsep_groups, truth.sep_vars), truth);
  EXPECT_TRUE(r.exact);
  EXPECT_EQ(r.captured_sep_vars, 7u);
  EXPECT_EQ(r.captured_nonsep_vars, 7u);
}

TEST(Dump, ZeroTransition) {
  const std::vector<double> z{0.0, 0.0, 2.0, 2.0}, v{0.0, 0.0, 1.0};
  const auto d = dump_distribution(z, v);
  EXPECT_TRUE(d.has_gap);
  EXPECT_TRUE(d.zero_transition);
  EXPECT_EQ(d.gap_index, 1u);
  EXPECT_TRUE(std::isinf(d.gap_ratio));
}

TEST(Dump, QuotientGap) {
  const std::vector<double> z{1e-9, 2e-9, 0.8, 1.0}, v{2.0, 4e8, 1.25};
  const auto d = dump_distribution(z, v);
  EXPECT_TRUE(d.has_gap);
  EXPECT_FALSE(d.zero_transition);
  EXPECT_EQ(d.gap_index, 1u);
  EXPECT_NEAR(d.gap_ratio, 2e8, 1e-3);
}

TEST(Dump, ZeroRuleForced) {
  const std::vector<double> z{0.0, 1e-9, 1.0}, v{0.0, 1e9};
  EXPECT_FALSE(dump_distribution(z, v).zero_transition);
  EXPECT_TRUE(dump_distribution(z, v, GapRule::ZeroTransition).zero_transition);
}

TEST(Dump, BadShapesRejected) {
  const std::vector<double> one{1.0}, none{};
  EXPECT_THROW(dump_distribution(one, none), std::invalid_argument);
  const std::vector<double> z{1.0, 2.0}, v{2.0, 3.0};
  EXPECT_THROW(dump_distribution(z, v), std::invalid_argument);
}

TEST(Dump, FromGiatOnExample1) {
  const auto g = giat_threshold(build_interaction_data(example1<double>(1.0, 1e6)));
  const auto d = dump_distribution(g);
  EXPECT_TRUE(d.zero_transition);
  EXPECT_EQ(d.gap_index, 3u);
}

TEST(Dump, CsvLayout) {
  const std::vector<double> z{0.0, 2.0}, v{0.0};
  std::ostringstream os;
  write_distribution_csv(os, dump_distribution(z, v));
  EXPECT_EQ(os.str(), "index,Z,V\n1,0,\n2,2,0\n# gap_index=2 gap_ratio=inf zero_transition=1\n");
}

}  // namespace
