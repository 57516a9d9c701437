#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <vector>

#include "giat/grouping.hpp"
#include "giat/problem.hpp"
#include "giat/thresholds.hpp"

namespace giat {

struct AccuracyReport {
  std::size_t captured_sep_vars = 0;     // reported separable and truly separable
  std::size_t captured_nonsep_vars = 0;  // reported inside a group and truly nonseparable
  std::size_t formed_nonsep_groups = 0;
  bool exact = false;
};

inline AccuracyReport score(const DecompositionResult& result, const GroupingTruth& truth) {
  Index truth_n = static_cast<Index>(truth.sep_vars.size());
  for (const auto& g : truth.nonsep_groups) truth_n += static_cast<Index>(g.size());
  if (result.dimension() != truth_n)
    throw std::invalid_argument("score: result and truth cover different dimensions");

  std::vector<char> truly_sep(static_cast<std::size_t>(truth_n), 0);
  for (Index i : truth.sep_vars) truly_sep.at(static_cast<std::size_t>(i)) = 1;

  AccuracyReport r;
  for (Index i : result.sep_vars)
    if (truly_sep.at(static_cast<std::size_t>(i))) ++r.captured_sep_vars;
  for (const auto& g : result.nonsep_groups)
    for (Index i : g)
      if (!truly_sep.at(static_cast<std::size_t>(i))) ++r.captured_nonsep_vars;
  r.formed_nonsep_groups = result.nonsep_groups.size();

  auto canonical = [](std::vector<std::vector<Index>> groups) {
    for (auto& g : groups) std::sort(g.begin(), g.end());
    std::sort(groups.begin(), groups.end());
    return groups;
  };
  std::vector<Index> rs = result.sep_vars, ts = truth.sep_vars;
  std::sort(rs.begin(), rs.end());
  std::sort(ts.begin(), ts.end());
  r.exact = canonical(result.nonsep_groups) == canonical(truth.nonsep_groups) && rs == ts;
  return r;
}

/// Where the largest jump of the sorted indicator array sits.
struct DistributionDump {
  std::vector<double> Z;
  std::vector<double> V;
  bool has_gap = false;
  std::size_t gap_index = 0;  // the jump is between Z[gap_index] and Z[gap_index + 1]
  bool zero_transition = false;  // jump from the last zero to the first nonzero indicator
  double gap_ratio = 0.0;  // largest jump over the runner-up; +inf for a zero transition
};

enum class GapRule {
  Quotient,       // argmax of V; falls back to the zero transition when V has no jump
  ZeroTransition  // the threshold was set to zero
};

inline DistributionDump dump_distribution(std::span<const double> Z, std::span<const double> V,
                                          GapRule rule = GapRule::Quotient) {
  if (Z.size() < 2) throw std::invalid_argument("dump_distribution: need at least two indicators");
  if (V.size() + 1 != Z.size())
    throw std::invalid_argument("dump_distribution: V must have one entry fewer than Z");
  DistributionDump out;
  out.Z.assign(Z.begin(), Z.end());
  out.V.assign(V.begin(), V.end());

  std::optional<std::size_t> best;
  for (std::size_t k = 0; k < V.size(); ++k)
    if (Z[k] != 0.0 && (!best || V[k] > V[*best])) best = k;

  std::optional<std::size_t> last_zero;
  for (std::size_t k = 0; k + 1 < Z.size(); ++k)
    if (Z[k] == 0.0 && Z[k + 1] > 0.0) last_zero = k;

  const bool use_zero = last_zero && (rule == GapRule::ZeroTransition || !best || V[*best] <= 1.0);
  if (use_zero) {
    out.has_gap = true;
    out.zero_transition = true;
    out.gap_index = *last_zero;
    out.gap_ratio = std::numeric_limits<double>::infinity();
    return out;
  }
  if (!best || V[*best] <= 0.0) return out;

  out.has_gap = true;
  out.gap_index = *best;
  double runner_up = 0.0;
  for (std::size_t k = 0; k < V.size(); ++k)
    if (k != *best && Z[k] != 0.0) runner_up = std::max(runner_up, V[k]);
  out.gap_ratio =
      runner_up > 0.0 ? V[*best] / runner_up : std::numeric_limits<double>::infinity();
  return out;
}

template <typename Scalar>
DistributionDump dump_distribution(const GiatResult<Scalar>& giat) {
  std::vector<double> z(giat.Z.begin(), giat.Z.end()), v(giat.V.begin(), giat.V.end());
  return dump_distribution(z, v, giat.zero_threshold ? GapRule::ZeroTransition : GapRule::Quotient);
}

/// index,Z,V with Z 1-based; V(i) = Z(i) / Z(i-1) is blank on the first row.
inline void write_distribution_csv(std::ostream& os, const DistributionDump& dump) {
  const auto old = os.precision(17);
  os << "index,Z,V\n";
  for (std::size_t i = 0; i < dump.Z.size(); ++i) {
    os << i + 1 << ',' << dump.Z[i] << ',';
    if (i > 0) os << dump.V[i - 1];
    os << '\n';
  }
  if (dump.has_gap)
    os << "# gap_index=" << dump.gap_index + 2 << " gap_ratio=" << dump.gap_ratio
       << (dump.zero_transition ? " zero_transition=1" : "") << '\n';
  else
    os << "# gap_index=none\n";
  os.precision(old);
}

}  // namespace giat
