#pragma once

#include <algorithm>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include <Eigen/Dense>

#include "giat/interaction.hpp"
#include "giat/thresholds.hpp"

namespace giat {

using Adjacency = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>;

class UnionFind {
 public:
  explicit UnionFind(Index n) : parent_(static_cast<std::size_t>(n)), size_(parent_.size(), 1) {
    std::iota(parent_.begin(), parent_.end(), Index{0});
  }

  Index find(Index x) {
    Index root = x;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[x] != root) {
      const Index next = parent_[x];
      parent_[x] = root;
      x = next;
    }
    return root;
  }

  bool unite(Index a, Index b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return true;
  }

 private:
  std::vector<Index> parent_;
  std::vector<Index> size_;
};

/// Threshold actually applied; per_pair marks CRET's matrix of thresholds.
struct EpsRecord {
  double scalar = 0.0;
  bool per_pair = false;
};

/// 0-based indices, groups sorted and ordered by smallest member.
struct DecompositionResult {
  std::vector<std::vector<Index>> nonsep_groups;
  std::vector<Index> sep_vars;
  std::string strategy;
  EpsRecord eps_used;

  Index dimension() const {
    std::size_t n = sep_vars.size();
    for (const auto& g : nonsep_groups) n += g.size();
    return static_cast<Index>(n);
  }
};

/// adjacency(p, q) = value(p, q) > eps(p, q), value being tau or the indicator.
template <typename Scalar>
Adjacency classify_pairs(const InteractionData<Scalar>& data, const std::type_identity_t<ZetaMatrix<Scalar>>* zeta,
                         const ThresholdDecision<Scalar>& decision) {
  const Index n = data.n;
  const bool indicator = decision.basis == Basis::Indicator;
  if (indicator != (zeta != nullptr))
    throw std::invalid_argument("classify_pairs: indicator matrix required iff basis is Indicator");
  if (zeta && zeta->n != n) throw std::invalid_argument("classify_pairs: dimension mismatch");
  if (decision.scalar_eps.has_value() == decision.pair_eps.has_value())
    throw std::invalid_argument("classify_pairs: exactly one of scalar/pair threshold expected");

  Adjacency adj = Adjacency::Constant(n, n, false);
  if (decision.verdict == Verdict::FullySeparable) return adj;
  if (decision.verdict == Verdict::FullyNonseparable) {
    adj.setConstant(true);
    adj.diagonal().setConstant(false);
    return adj;
  }
  const MatrixX<Scalar>& value = indicator ? zeta->values : data.gamma;
  for (Index p = 0; p < n; ++p)
    for (Index q = p + 1; q < n; ++q) {
      const Scalar eps = decision.pair_eps ? (*decision.pair_eps)(p, q) : *decision.scalar_eps;
      adj(p, q) = adj(q, p) = value(p, q) > eps;
    }
  return adj;
}

/// Components of size >= 2 become groups; isolated variables are separable.
inline DecompositionResult connected_components(const Adjacency& adjacency) {
  const Index n = adjacency.rows();
  if (adjacency.cols() != n) throw std::invalid_argument("connected_components: not square");
  UnionFind uf(n);
  for (Index p = 0; p < n; ++p)
    for (Index q = p + 1; q < n; ++q)
      if (adjacency(p, q) || adjacency(q, p)) uf.unite(p, q);

  std::vector<std::vector<Index>> members(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) members[static_cast<std::size_t>(uf.find(i))].push_back(i);
  DecompositionResult out;
  for (auto& m : members) {
    if (m.size() >= 2) out.nonsep_groups.push_back(std::move(m));
    else if (m.size() == 1) out.sep_vars.push_back(m.front());
  }
  std::sort(out.nonsep_groups.begin(), out.nonsep_groups.end());
  std::sort(out.sep_vars.begin(), out.sep_vars.end());
  return out;
}

template <typename Scalar>
DecompositionResult decompose(const InteractionData<Scalar>& data, const std::type_identity_t<ZetaMatrix<Scalar>>* zeta,
                              const ThresholdDecision<Scalar>& decision) {
  DecompositionResult out = connected_components(classify_pairs(data, zeta, decision));
  out.strategy = std::string(to_string(decision.strategy));
  if (decision.pair_eps) out.eps_used.per_pair = true;
  else out.eps_used.scalar = static_cast<double>(*decision.scalar_eps);
  return out;
}

}  // namespace giat
