#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <ostream>
#include <random>
#include <span>
#include <stdexcept>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "giat/interaction.hpp"
#include "giat/problem.hpp"

namespace giat {

enum class Strategy { FT, FST, CRET, GIAT };
/// Which per-pair quantity a threshold is compared against.
enum class Basis { RawTau, Indicator };
enum class Verdict { Partial, FullySeparable, FullyNonseparable };

std::string_view to_string(Strategy s);
std::string_view to_string(Basis b);
std::string_view to_string(Verdict v);
Strategy strategy_from_string(std::string_view name);

template <typename Scalar>
struct ThresholdDecision {
  Strategy strategy = Strategy::FT;
  Basis basis = Basis::RawTau;
  std::optional<Scalar> scalar_eps;        // FT, FST, GIAT; +inf means "nothing interacts"
  std::optional<MatrixX<Scalar>> pair_eps;  // CRET
  Verdict verdict = Verdict::Partial;
};

template <typename Scalar>
struct ZetaMatrix {
  Index n = 0;
  MatrixX<Scalar> values;
};

template <typename Scalar>
ThresholdDecision<Scalar> ft_threshold(Scalar eps = Scalar(1e-3)) {
  if (!(eps > Scalar(0))) throw std::invalid_argument("ft_threshold: eps must be > 0");
  ThresholdDecision<Scalar> out;
  out.strategy = Strategy::FT;
  out.scalar_eps = eps;
  return out;
}

/// alpha * min |f| over already-evaluated samples.
template <typename Scalar>
ThresholdDecision<Scalar> fst_from_samples(std::span<const Scalar> values,
                                           Scalar alpha = Scalar(1e-10)) {
  if (values.empty()) throw std::invalid_argument("fst: need at least one sample");
  if (!(alpha > Scalar(0))) throw std::invalid_argument("fst: alpha must be > 0");
  Scalar smallest = std::numeric_limits<Scalar>::infinity();
  for (Scalar v : values) smallest = std::min(smallest, std::abs(v));
  ThresholdDecision<Scalar> out;
  out.strategy = Strategy::FST;
  out.scalar_eps = alpha * smallest;
  return out;
}

/// Consumes exactly k evaluations at points drawn uniformly in the box.
template <typename Scalar>
ThresholdDecision<Scalar> fst_threshold(const ProblemInstance<Scalar>& instance, int k = 10,
                                        Scalar alpha = Scalar(1e-10), std::uint64_t seed = 0) {
  if (k < 1) throw std::invalid_argument("fst: k must be >= 1");
  std::mt19937_64 rng(splitmix64(seed));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double lb = instance.spec().lower_bound, ub = instance.spec().upper_bound;
  std::vector<Scalar> values;
  values.reserve(static_cast<std::size_t>(k));
  VectorX<Scalar> x(instance.dimension());
  for (int s = 0; s < k; ++s) {
    for (Index i = 0; i < x.size(); ++i) x(i) = Scalar(lb + unit(rng) * (ub - lb));
    values.push_back(instance.evaluate(x));
  }
  return fst_from_samples<Scalar>(values, alpha);
}

/// Per-pair thresholds from the roundoff bounds. Decisive pairs keep their own bound; pairs in
/// the gray zone e_inf <= tau <= e_sup get a blend weighted by the decisive-pair counts.
template <typename Scalar>
ThresholdDecision<Scalar> cret_thresholds(const InteractionData<Scalar>& data) {
  const Index n = data.n;
  std::uint64_t eta0 = 0, eta1 = 0;
  for (Index p = 0; p < n; ++p)
    for (Index q = p + 1; q < n; ++q) {
      if (data.gamma(p, q) < data.e_inf(p, q)) ++eta0;
      else if (data.gamma(p, q) > data.e_sup(p, q)) ++eta1;
    }
  const Scalar w = (eta0 + eta1 == 0) ? Scalar(0.5) : Scalar(eta0) / Scalar(eta0 + eta1);

  MatrixX<Scalar> eps = MatrixX<Scalar>::Zero(n, n);
  for (Index p = 0; p < n; ++p)
    for (Index q = p + 1; q < n; ++q) {
      const Scalar tau = data.gamma(p, q), lo = data.e_inf(p, q), hi = data.e_sup(p, q);
      Scalar e;
      if (tau < lo) e = lo;
      else if (tau > hi) e = hi;
      else e = w * hi + (Scalar(1) - w) * lo;
      eps(p, q) = eps(q, p) = e;
    }
  ThresholdDecision<Scalar> out;
  out.strategy = Strategy::CRET;
  out.pair_eps = std::move(eps);
  return out;
}

template <typename Scalar>
Scalar zeta_value(Scalar tau, Scalar e_inf, Scalar d) {
  const Scalar excess = tau - e_inf;
  if (!(excess > Scalar(0)) || !(d > Scalar(0))) return Scalar(0);
  return excess / d;
}

template <typename Scalar>
ZetaMatrix<Scalar> compute_zeta(const InteractionData<Scalar>& data) {
  ZetaMatrix<Scalar> z;
  z.n = data.n;
  z.values = MatrixX<Scalar>::Zero(data.n, data.n);
  for (Index p = 0; p < data.n; ++p)
    for (Index q = p + 1; q < data.n; ++q)
      z.values(p, q) = z.values(q, p) =
          zeta_value(data.gamma(p, q), data.e_inf(p, q), data.d(p, q));
  return z;
}

/// Largest-quotient rule on an ascending array.
/// quotients[k] compares sorted[k+1] with sorted[k]; it is 0 whenever sorted[k] == 0.
template <typename Scalar>
struct GapSelection {
  std::vector<Scalar> quotients;
  std::optional<std::size_t> gap;  // k with the largest quotient, if any quotient is positive
  Scalar eps = 0;                   // sorted[*gap], or 0 without a gap
};

template <typename Scalar>
GapSelection<Scalar> select_gap(std::span<const Scalar> sorted) {
  GapSelection<Scalar> out;
  if (sorted.size() < 2) return out;
  out.quotients.resize(sorted.size() - 1);
  Scalar best = 0;
  for (std::size_t k = 0; k + 1 < sorted.size(); ++k) {
    const Scalar v = sorted[k] == Scalar(0) ? Scalar(0) : sorted[k + 1] / sorted[k];
    out.quotients[k] = v;
    if (v > best) {
      best = v;
      out.gap = k;
    }
  }
  if (out.gap) out.eps = sorted[*out.gap];
  return out;
}

template <typename Scalar>
struct GiatResult {
  ThresholdDecision<Scalar> decision;
  ZetaMatrix<Scalar> zeta;
  std::vector<Scalar> Z;  // ascending indicators; empty when a pre-check decided
  std::vector<Scalar> V;  // V[k] ~ Z[k+1] / Z[k]
  std::vector<std::pair<Index, Index>> order;  // pair (p < q) behind each Z entry
  bool zero_threshold = false;  // no pair in the gray zone, so eps = 0 directly
};

template <typename Scalar>
GiatResult<Scalar> giat_threshold(const InteractionData<Scalar>& data) {
  const Index n = data.n;
  if (n < 2) throw std::invalid_argument("giat_threshold: n must be >= 2");
  GiatResult<Scalar> out;
  out.decision.strategy = Strategy::GIAT;
  out.decision.basis = Basis::Indicator;
  out.zeta = compute_zeta(data);

  bool all_below = true, all_above = true, any_gray = false;
  for (Index p = 0; p < n; ++p)
    for (Index q = p + 1; q < n; ++q) {
      const Scalar tau = data.gamma(p, q), lo = data.e_inf(p, q), hi = data.e_sup(p, q);
      all_below = all_below && tau < lo;
      all_above = all_above && tau > hi;
      any_gray = any_gray || (lo < tau && tau < hi);
    }
  if (all_below) {
    out.decision.verdict = Verdict::FullySeparable;
    out.decision.scalar_eps = std::numeric_limits<Scalar>::infinity();
    return out;
  }
  if (all_above) {
    out.decision.verdict = Verdict::FullyNonseparable;
    out.decision.scalar_eps = Scalar(0);
    return out;
  }

  out.order.reserve(static_cast<std::size_t>(data.pair_count()));
  for (Index p = 0; p < n; ++p)
    for (Index q = p + 1; q < n; ++q) out.order.emplace_back(p, q);
  const auto& zv = out.zeta.values;
  std::stable_sort(out.order.begin(), out.order.end(), [&](const auto& a, const auto& b) {
    return zv(a.first, a.second) < zv(b.first, b.second);
  });
  out.Z.reserve(out.order.size());
  for (const auto& [p, q] : out.order) out.Z.push_back(std::max(Scalar(0), zv(p, q)));

  GapSelection<Scalar> sel = select_gap<Scalar>(out.Z);
  out.V = std::move(sel.quotients);
  if (!any_gray) {
    out.zero_threshold = true;
    out.decision.scalar_eps = Scalar(0);
  } else {
    out.decision.scalar_eps = sel.eps;
  }
  return out;
}

/// Two columns, 1-based: index,value.
template <typename Scalar>
void write_series_csv(std::ostream& os, std::span<const Scalar> values, std::string_view name) {
  const auto old = os.precision(17);
  os << "index," << name << '\n';
  for (std::size_t i = 0; i < values.size(); ++i) os << i + 1 << ',' << values[i] << '\n';
  os.precision(old);
}

}  // namespace giat
