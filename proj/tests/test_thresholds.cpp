#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "giat/grouping.hpp"
#include "giat/thresholds.hpp"

namespace {

using namespace giat;
using K = BaseFunctionKind;

// Hand-built interaction data for unit-testing the threshold rules in isolation.
InteractionData<double> synthetic(Index n, double tau, double e_inf, double e_sup, double d) {
  InteractionData<double> data;
  data.n = n;
  data.gamma = MatrixX<double>::Constant(n, n, tau);
  data.e_inf = MatrixX<double>::Constant(n, n, e_inf);
  data.e_sup = MatrixX<double>::Constant(n, n, e_sup);
  data.d = MatrixX<double>::Constant(n, n, d);
  return data;
}

void set_pair(InteractionData<double>& data, Index p, Index q, double tau, double e_inf,
              double e_sup, double d) {
  data.gamma(p, q) = data.gamma(q, p) = tau;
  data.e_inf(p, q) = data.e_inf(q, p) = e_inf;
  data.e_sup(p, q) = data.e_sup(q, p) = e_sup;
  data.d(p, q) = data.d(q, p) = d;
}

TEST(FixedThreshold, Values) {
  EXPECT_EQ(*ft_threshold<double>().scalar_eps, 1e-3);
  const auto d = ft_threshold(1e-1);
  EXPECT_EQ(*d.scalar_eps, 1e-1);
  EXPECT_EQ(d.basis, Basis::RawTau);
  EXPECT_EQ(d.verdict, Verdict::Partial);
  EXPECT_FALSE(d.pair_eps.has_value());
  EXPECT_THROW(ft_threshold(0.0), std::invalid_argument);
  EXPECT_THROW(ft_threshold(-1.0), std::invalid_argument);
}

TEST(FunctionSpaceThreshold, FromSamples) {
  const std::vector<double> values{1e3, -1e5, 1e4};
  const auto d = fst_from_samples<double>(values, 1e-10);
  EXPECT_NEAR(*d.scalar_eps, 1e-7, 1e-22);
  EXPECT_EQ(d.basis, Basis::RawTau);
  const std::vector<double> with_zero{5.0, 0.0, 2.0};
  EXPECT_EQ(*fst_from_samples<double>(with_zero).scalar_eps, 0.0);
  EXPECT_THROW(fst_from_samples<double>(std::vector<double>{}), std::invalid_argument);
}

TEST(FunctionSpaceThreshold, ConsumesKEvaluations) {
  ProblemSpec spec;
  spec.separable_dims = 6;
  const auto inst = build_problem<double>(spec, 3);
  const auto d = fst_threshold(inst, 10, 1e-10, 5);
  EXPECT_EQ(inst.fe_count(), 10u);
  EXPECT_GT(*d.scalar_eps, 0.0);
  EXPECT_EQ(*fst_threshold(inst, 10, 1e-10, 5).scalar_eps, *d.scalar_eps);
  EXPECT_THROW(fst_threshold(inst, 0), std::invalid_argument);
}

TEST(RoundoffThreshold, DecisiveAndGrayPairs) {
  auto data = synthetic(4, 0.0, 1.0, 2.0, 1.0);
  set_pair(data, 0, 1, 5.0, 1.0, 2.0, 1.0);  // tau > e_sup
  set_pair(data, 2, 3, 1.5, 1.0, 3.0, 1.0);  // gray
  // 4 pairs below e_inf, 1 above e_sup -> w = 4/5
  const auto d = cret_thresholds(data);
  ASSERT_TRUE(d.pair_eps.has_value());
  EXPECT_FALSE(d.scalar_eps.has_value());
  const auto& eps = *d.pair_eps;
  EXPECT_EQ(eps(0, 2), 1.0);
  EXPECT_EQ(eps(0, 1), 2.0);
  EXPECT_NEAR(eps(2, 3), 0.8 * 3.0 + 0.2 * 1.0, 1e-15);
  EXPECT_EQ(eps, eps.transpose());

  const auto adj = classify_pairs(data, nullptr, d);
  EXPECT_TRUE(adj(0, 1));
  EXPECT_FALSE(adj(0, 2));
  EXPECT_FALSE(adj(2, 3));
}

TEST(RoundoffThreshold, BalancedCountsGiveMidpoint) {
  auto data = synthetic(3, 0.0, 1.0, 3.0, 1.0);
  set_pair(data, 0, 1, 0.5, 1.0, 3.0, 1.0);  // below
  set_pair(data, 0, 2, 4.0, 1.0, 3.0, 1.0);  // above
  set_pair(data, 1, 2, 2.0, 1.0, 3.0, 1.0);  // gray
  EXPECT_DOUBLE_EQ((*cret_thresholds(data).pair_eps)(1, 2), 2.0);

  auto all_gray = synthetic(3, 2.0, 1.0, 3.0, 1.0);
  EXPECT_DOUBLE_EQ((*cret_thresholds(all_gray).pair_eps)(0, 1), 2.0);
}

TEST(Indicator, Example1IsTwoForAnyWeight) {
  for (double w1 : {1e-6, 1.0, 1e6}) {
    const auto data = build_interaction_data(example1<double>(w1, 1.0));
    const auto zeta = compute_zeta(data);
    EXPECT_NEAR(zeta.values(0, 1), 2.0, 2.0 * 1e-9);
    EXPECT_NEAR(zeta.values(2, 3), 2.0, 2.0 * 1e-9);
    EXPECT_EQ(zeta.values(0, 2), 0.0);
    EXPECT_EQ(zeta.values, zeta.values.transpose());
  }
}

TEST(Indicator, StepAndDegenerateDenominator) {
  EXPECT_EQ(zeta_value(1.0, 1.0, 1.0), 0.0);  // boundary counts as separable
  EXPECT_EQ(zeta_value(0.5, 1.0, 1.0), 0.0);
  EXPECT_EQ(zeta_value(3.0, 1.0, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(zeta_value(3.0, 1.0, 4.0), 0.5);
}

TEST(Indicator, ZeroExactlyWhenTauWithinLowerBound) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    ProblemSpec spec;
    spec.separable_dims = 10;
    spec.subcomponents = {{5, K::Elliptic, true, 1.0}, {5, K::Rastrigin, true, 1.0}};
    spec.weight_mode = WeightMode::imbalanced(2.0);
    const auto data = build_interaction_data(build_problem<double>(spec, seed));
    const auto zeta = compute_zeta(data);
    for (Index p = 0; p < data.n; ++p)
      for (Index q = p + 1; q < data.n; ++q) {
        EXPECT_GE(zeta.values(p, q), 0.0);
        if (data.d(p, q) > 0.0)
          EXPECT_EQ(zeta.values(p, q) == 0.0, data.gamma(p, q) <= data.e_inf(p, q));
      }
  }
}

TEST(GapSelection, SyntheticArray) {
  const std::vector<double> z{0.0, 1e-9, 2e-9, 0.8, 1.0};
  const auto sel = select_gap<double>(z);
  ASSERT_EQ(sel.quotients.size(), 4u);
  EXPECT_EQ(sel.quotients[0], 0.0);
  EXPECT_DOUBLE_EQ(sel.quotients[1], 2.0);
  EXPECT_NEAR(sel.quotients[2], 4e8, 1e-6);
  EXPECT_DOUBLE_EQ(sel.quotients[3], 1.25);
  ASSERT_TRUE(sel.gap.has_value());
  EXPECT_EQ(*sel.gap, 2u);
  EXPECT_EQ(sel.eps, 2e-9);
}

TEST(GapSelection, TiesPickSmallestIndexAndAllZeroHasNoGap) {
  const std::vector<double> z{1.0, 2.0, 4.0, 8.0};
  const auto sel = select_gap<double>(z);
  EXPECT_EQ(*sel.gap, 0u);
  EXPECT_EQ(sel.eps, 1.0);
  const std::vector<double> zeros(5, 0.0);
  const auto none = select_gap<double>(zeros);
  EXPECT_FALSE(none.gap.has_value());
  EXPECT_EQ(none.eps, 0.0);
  EXPECT_TRUE(select_gap<double>(std::vector<double>{3.0}).quotients.empty());
}

TEST(Giat, FullySeparableSphere) {
  ProblemSpec spec;
  spec.separable_dims = 10;
  const auto g = giat_threshold(build_interaction_data(build_problem<double>(spec, 1)));
  EXPECT_EQ(g.decision.verdict, Verdict::FullySeparable);
  EXPECT_TRUE(std::isinf(*g.decision.scalar_eps));
  EXPECT_EQ(g.decision.basis, Basis::Indicator);
  EXPECT_TRUE(g.Z.empty());
}

TEST(Giat, FullyNonseparableRotatedElliptic) {
  ProblemSpec spec;
  spec.subcomponents = {{10, K::Elliptic, true, 1.0}};
  const auto g = giat_threshold(build_interaction_data(build_problem<double>(spec, 1)));
  EXPECT_EQ(g.decision.verdict, Verdict::FullyNonseparable);
  EXPECT_EQ(*g.decision.scalar_eps, 0.0);
}

TEST(Giat, Example1HeavyImbalance) {
  const auto data = build_interaction_data(example1<double>(1.0, 1e6));
  const auto g = giat_threshold(data);
  EXPECT_EQ(g.decision.verdict, Verdict::Partial);
  ASSERT_EQ(g.Z.size(), 6u);
  for (int i = 0; i < 4; ++i) EXPECT_EQ(g.Z[i], 0.0);
  EXPECT_NEAR(g.Z[4], 2.0, 1e-9);
  EXPECT_NEAR(g.Z[5], 2.0, 1e-9);
  EXPECT_TRUE(g.zero_threshold);
  EXPECT_EQ(*g.decision.scalar_eps, 0.0);

  const auto result = decompose(data, &g.zeta, g.decision);
  EXPECT_EQ(result.nonsep_groups, (std::vector<std::vector<Index>>{{0, 1}, {2, 3}}));
  EXPECT_TRUE(result.sep_vars.empty());
}

TEST(Giat, GrayZoneUsesQuotientGap) {
  // Two separable-looking pairs in the gray zone with tiny indicators, one strong pair.
  auto data = synthetic(3, 0.0, 1.0, 100.0, 1.0);
  set_pair(data, 0, 1, 1.0 + 1e-9, 1.0, 100.0, 1.0);
  set_pair(data, 0, 2, 1.0 + 2e-9, 1.0, 100.0, 1.0);
  set_pair(data, 1, 2, 1.8, 1.0, 1.5, 1.0);
  const auto g = giat_threshold(data);
  EXPECT_FALSE(g.zero_threshold);
  ASSERT_EQ(g.Z.size(), 3u);
  EXPECT_EQ(*g.decision.scalar_eps, g.Z[1]);
  EXPECT_EQ(g.order.back(), (std::pair<Index, Index>{1, 2}));
  const auto adj = classify_pairs(data, &g.zeta, g.decision);
  EXPECT_TRUE(adj(1, 2));
  EXPECT_FALSE(adj(0, 1));
  EXPECT_FALSE(adj(0, 2));
}

TEST(Giat, SingleGrayPairFallsBackToZero) {
  auto data = synthetic(2, 1.5, 1.0, 2.0, 1.0);
  const auto g = giat_threshold(data);
  EXPECT_EQ(g.decision.verdict, Verdict::Partial);
  EXPECT_EQ(*g.decision.scalar_eps, 0.0);
  EXPECT_TRUE(g.V.empty());
}

TEST(Giat, Invariants) {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    ProblemSpec spec;
    spec.separable_dims = 8;
    spec.subcomponents = {{4, K::Elliptic, true, 1.0}, {4, K::Rastrigin, true, 1.0},
                          {4, K::Schwefel12, false, 1.0}};
    spec.weight_mode = WeightMode::imbalanced(3.0);
    const auto data = build_interaction_data(build_problem<double>(spec, seed));
    const auto g = giat_threshold(data);
    ASSERT_EQ(g.decision.verdict, Verdict::Partial);
    EXPECT_TRUE(std::is_sorted(g.Z.begin(), g.Z.end()));
    for (double v : g.V) EXPECT_TRUE(v == 0.0 || v >= 1.0) << v;
    // eps is an element of Z (or zero) and strictly below every pair classified nonseparable
    const double eps = *g.decision.scalar_eps;
    EXPECT_TRUE(eps == 0.0 || std::find(g.Z.begin(), g.Z.end(), eps) != g.Z.end());
    const auto adj = classify_pairs(data, &g.zeta, g.decision);
    for (Index p = 0; p < data.n; ++p)
      for (Index q = p + 1; q < data.n; ++q)
        if (adj(p, q)) EXPECT_LT(eps, g.zeta.values(p, q));
    // bit-identical on repeat
    const auto again = giat_threshold(data);
    EXPECT_EQ(again.Z, g.Z);
    EXPECT_EQ(*again.decision.scalar_eps, eps);
  }
}

TEST(Giat, SeriesCsv) {
  const std::vector<double> z{0.0, 0.5, 2.0};
  std::ostringstream os;
  write_series_csv<double>(os, z, "Z");
  EXPECT_EQ(os.str(), "index,Z\n1,0\n2,0.5\n3,2\n");
}

}  // namespace
