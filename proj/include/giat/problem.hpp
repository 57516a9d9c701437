#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "giat/base_functions.hpp"
#include "giat/random.hpp"

namespace giat {

using Index = Eigen::Index;

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Accumulation precision used inside benchmark objectives. The returned value is rounded
/// once, so separable pairs only see the final rounding error in their differences.
template <typename Scalar>
struct accumulator {
  using type = long double;
};
template <>
struct accumulator<float> {
  using type = double;
};
template <typename Scalar>
using accumulator_t = typename accumulator<Scalar>::type;

struct SubcomponentSpec {
  int size = 2;
  BaseFunctionKind base = BaseFunctionKind::Sphere;
  bool rotated = false;
  double weight = 1.0;
};

struct WeightMode {
  enum class Kind { Balanced, Imbalanced };
  Kind kind = Kind::Balanced;
  double sigma = 3.0;  // only read for Imbalanced: omega = weight * 10^(sigma * N(0,1))

  static WeightMode balanced() { return {}; }
  static WeightMode imbalanced(double sigma = 3.0) { return {Kind::Imbalanced, sigma}; }
};

struct ProblemSpec {
  int separable_dims = 0;
  BaseFunctionKind separable_base = BaseFunctionKind::Sphere;
  std::vector<SubcomponentSpec> subcomponents;
  double lower_bound = -100.0;
  double upper_bound = 100.0;
  WeightMode weight_mode;

  int dimension() const {
    int n = separable_dims;
    for (const auto& s : subcomponents) n += s.size;
    return n;
  }
};

/// Throws std::invalid_argument naming the first violated invariant.
inline void validate(const ProblemSpec& spec) {
  if (spec.separable_dims < 0) throw std::invalid_argument("separable_dims must be >= 0");
  if (!(spec.lower_bound < spec.upper_bound))
    throw std::invalid_argument("lower_bound must be < upper_bound");
  if (!std::isfinite(spec.lower_bound) || !std::isfinite(spec.upper_bound))
    throw std::invalid_argument("bounds must be finite");
  if (spec.separable_dims > 0 && is_intrinsically_nonseparable(spec.separable_base))
    throw std::invalid_argument("separable_base must be a separable kind, got " +
                                std::string(to_string(spec.separable_base)));
  if (spec.weight_mode.kind == WeightMode::Kind::Imbalanced &&
      !(spec.weight_mode.sigma >= 0.0 && std::isfinite(spec.weight_mode.sigma)))
    throw std::invalid_argument("weight_mode sigma must be finite and >= 0");
  for (std::size_t i = 0; i < spec.subcomponents.size(); ++i) {
    const auto& s = spec.subcomponents[i];
    const std::string where = "subcomponent " + std::to_string(i) + ": ";
    if (s.size < 1) throw std::invalid_argument(where + "size must be positive");
    if (!(s.weight > 0.0) || !std::isfinite(s.weight))
      throw std::invalid_argument(where + "weight must be > 0");
    const bool nonseparable = s.rotated || !is_additively_separable_kind(s.base);
    if (s.rotated && s.base == BaseFunctionKind::Sphere)
      throw std::invalid_argument(where + "a rotated Sphere is rotation-invariant and stays separable");
    if (nonseparable && s.size < 2)
      throw std::invalid_argument(where + "size must be >= 2 for a nonseparable subcomponent");
    if (s.size < min_dimension(s.base))
      throw std::invalid_argument(where + std::string(to_string(s.base)) +
                                  " requires size >= 2");
  }
  if (spec.dimension() < 2) throw std::invalid_argument("total dimension must be >= 2");
}

/// How a subcomponent's shifted coordinates are mixed before its base function.
enum class Coupling {
  None,
  Rotation,       // orthogonal matrix
  PairDifference  // consecutive differences z_i - z_{i+1}
};

/// 0-based variable indices; groups sorted, ordered by their smallest member.
struct GroupingTruth {
  std::vector<std::vector<Index>> nonsep_groups;
  std::vector<Index> sep_vars;
};

/// pair_label(p, q) is true iff p and q sit in the same nonseparable group.
inline Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> same_group_matrix(
    const GroupingTruth& truth, Index n) {
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> same =
      Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(n, n, false);
  for (const auto& g : truth.nonsep_groups)
    for (Index a : g)
      for (Index b : g)
        if (a != b) same(a, b) = true;
  return same;
}

template <typename Scalar>
class ProblemInstance {
 public:
  using Vector = VectorX<Scalar>;
  using Matrix = MatrixX<Scalar>;
  using Wide = accumulator_t<Scalar>;

  struct Block {
    std::vector<Index> indices;
    BaseFunctionKind base = BaseFunctionKind::Sphere;
    Coupling coupling = Coupling::None;
    Matrix transform;  // empty for Coupling::None
    Scalar weight = Scalar(1);
  };

  ProblemInstance(ProblemSpec spec, Vector shift, std::vector<Block> blocks,
                  std::vector<Index> separable, std::uint64_t seed)
      : spec_(std::move(spec)),
        shift_(std::move(shift)),
        blocks_(std::move(blocks)),
        separable_(std::move(separable)),
        seed_(seed) {
    validate(spec_);
    if (shift_.size() != spec_.dimension())
      throw std::invalid_argument("shift length must equal dimension");
    wide_transforms_.reserve(blocks_.size());
    for (const auto& b : blocks_) wide_transforms_.push_back(b.transform.template cast<Wide>());
  }

  ProblemInstance(const ProblemInstance& other)
      : spec_(other.spec_),
        shift_(other.shift_),
        blocks_(other.blocks_),
        separable_(other.separable_),
        seed_(other.seed_),
        scale_(other.scale_),
        wide_transforms_(other.wide_transforms_),
        fe_count_(other.fe_count()) {}
  ProblemInstance& operator=(const ProblemInstance&) = delete;

  const ProblemSpec& spec() const { return spec_; }
  Index dimension() const { return shift_.size(); }
  const Vector& shift() const { return shift_; }
  const std::vector<Block>& blocks() const { return blocks_; }
  const std::vector<Index>& separable_indices() const { return separable_; }
  std::uint64_t seed() const { return seed_; }
  Scalar scale() const { return scale_; }

  Scalar lower_bound() const { return Scalar(spec_.lower_bound); }
  Scalar upper_bound() const { return Scalar(spec_.upper_bound); }
  Vector lower_bounds() const { return Vector::Constant(dimension(), lower_bound()); }
  Vector upper_bounds() const { return Vector::Constant(dimension(), upper_bound()); }

  std::vector<Matrix> rotations() const {
    std::vector<Matrix> out;
    for (const auto& b : blocks_)
      if (b.coupling == Coupling::Rotation) out.push_back(b.transform);
    return out;
  }
  std::vector<Scalar> weights() const {
    std::vector<Scalar> out;
    for (const auto& b : blocks_) out.push_back(b.weight);
    return out;
  }

  std::uint64_t fe_count() const { return fe_count_.load(std::memory_order_relaxed); }

  /// Copy of this instance whose objective is multiplied by c; the copy counts from zero.
  ProblemInstance scaled(Scalar c) const {
    ProblemInstance out(*this);
    out.scale_ = scale_ * c;
    out.fe_count_.store(0, std::memory_order_relaxed);
    return out;
  }

  Scalar evaluate(const Eigen::Ref<const Vector>& x) const {
    if (x.size() != dimension())
      throw std::invalid_argument("point has length " + std::to_string(x.size()) +
                                  ", expected " + std::to_string(dimension()));
    fe_count_.fetch_add(1, std::memory_order_relaxed);

    Wide total(0);
    if (!separable_.empty()) {
      VectorX<Wide> z(static_cast<Index>(separable_.size()));
      for (std::size_t k = 0; k < separable_.size(); ++k) {
        const Index i = separable_[k];
        z(static_cast<Index>(k)) = Wide(x(i)) - Wide(shift_(i));
      }
      total += evaluate_separable_block(spec_.separable_base, z);
    }
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      const Block& block = blocks_[b];
      VectorX<Wide> z(static_cast<Index>(block.indices.size()));
      for (std::size_t k = 0; k < block.indices.size(); ++k) {
        const Index i = block.indices[k];
        z(static_cast<Index>(k)) = Wide(x(i)) - Wide(shift_(i));
      }
      if (block.coupling != Coupling::None) z = wide_transforms_[b] * z;
      total += Wide(block.weight) * evaluate_base(block.base, z);
    }
    return static_cast<Scalar>(Wide(scale_) * total);
  }

 private:
  ProblemSpec spec_;
  Vector shift_;
  std::vector<Block> blocks_;
  std::vector<Index> separable_;
  std::uint64_t seed_ = 0;
  Scalar scale_ = Scalar(1);
  std::vector<MatrixX<Wide>> wide_transforms_;
  mutable std::atomic<std::uint64_t> fe_count_{0};
};

/// Haar-distributed orthogonal matrix: QR of a Gaussian matrix with R's diagonal made positive.
template <typename Scalar>
MatrixX<Scalar> random_rotation(Index size, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  MatrixX<double> g(size, size);
  for (Index c = 0; c < size; ++c)
    for (Index r = 0; r < size; ++r) g(r, c) = gauss(rng);
  Eigen::HouseholderQR<MatrixX<double>> qr(g);
  MatrixX<double> q = qr.householderQ() * MatrixX<double>::Identity(size, size);
  const MatrixX<double> r = qr.matrixQR().template triangularView<Eigen::Upper>();
  for (Index c = 0; c < size; ++c)
    if (r(c, c) < 0.0) q.col(c) = -q.col(c);
  return q.template cast<Scalar>();
}

template <typename Scalar>
ProblemInstance<Scalar> build_problem(const ProblemSpec& spec, std::uint64_t seed) {
  using Instance = ProblemInstance<Scalar>;
  validate(spec);
  const Index n = spec.dimension();
  std::mt19937_64 rng(splitmix64(seed));

  std::vector<Index> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), Index{0});
  std::shuffle(perm.begin(), perm.end(), rng);

  const double lb = spec.lower_bound, ub = spec.upper_bound;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  VectorX<Scalar> shift(n);
  for (Index i = 0; i < n; ++i)
    shift(i) = Scalar(lb + (0.1 + 0.8 * unit(rng)) * (ub - lb));

  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<typename Instance::Block> blocks;
  std::size_t cursor = 0;
  for (std::size_t s = 0; s < spec.subcomponents.size(); ++s) {
    const SubcomponentSpec& sub = spec.subcomponents[s];
    typename Instance::Block block;
    block.indices.assign(perm.begin() + static_cast<std::ptrdiff_t>(cursor),
                         perm.begin() + static_cast<std::ptrdiff_t>(cursor + sub.size));
    std::sort(block.indices.begin(), block.indices.end());
    cursor += static_cast<std::size_t>(sub.size);
    block.base = sub.base;
    double w = sub.weight;
    if (spec.weight_mode.kind == WeightMode::Kind::Imbalanced)
      w *= std::pow(10.0, spec.weight_mode.sigma * gauss(rng));
    block.weight = Scalar(w);
    if (sub.rotated) {
      block.coupling = Coupling::Rotation;
      block.transform = random_rotation<Scalar>(sub.size, mix_seed(seed, s));
    }
    blocks.push_back(std::move(block));
  }
  std::vector<Index> separable(perm.begin() + static_cast<std::ptrdiff_t>(cursor), perm.end());
  std::sort(separable.begin(), separable.end());
  return Instance(spec, std::move(shift), std::move(blocks), std::move(separable), seed);
}

/// f(x) = w1 (x1 - x2)^2 + w2 (x3 - x4)^2 on [-1, 1]^4.
template <typename Scalar>
ProblemInstance<Scalar> example1(Scalar w1, Scalar w2) {
  using Instance = ProblemInstance<Scalar>;
  ProblemSpec spec;
  spec.separable_dims = 0;
  spec.subcomponents = {{2, BaseFunctionKind::Sphere, false, double(w1)},
                        {2, BaseFunctionKind::Sphere, false, double(w2)}};
  spec.lower_bound = -1.0;
  spec.upper_bound = 1.0;

  MatrixX<Scalar> diff(1, 2);
  diff << Scalar(1), Scalar(-1);
  std::vector<typename Instance::Block> blocks(2);
  blocks[0] = {{0, 1}, BaseFunctionKind::Sphere, Coupling::PairDifference, diff, w1};
  blocks[1] = {{2, 3}, BaseFunctionKind::Sphere, Coupling::PairDifference, diff, w2};
  return Instance(spec, VectorX<Scalar>::Zero(4), std::move(blocks), {}, 0);
}

template <typename Scalar>
GroupingTruth ground_truth(const ProblemInstance<Scalar>& instance) {
  GroupingTruth truth;
  truth.sep_vars = instance.separable_indices();
  for (const auto& block : instance.blocks()) {
    const bool grouped =
        block.coupling != Coupling::None || !is_additively_separable_kind(block.base);
    if (grouped)
      truth.nonsep_groups.push_back(block.indices);
    else
      truth.sep_vars.insert(truth.sep_vars.end(), block.indices.begin(), block.indices.end());
  }
  std::sort(truth.sep_vars.begin(), truth.sep_vars.end());
  for (auto& g : truth.nonsep_groups) std::sort(g.begin(), g.end());
  std::sort(truth.nonsep_groups.begin(), truth.nonsep_groups.end());
  return truth;
}

}  // namespace giat
