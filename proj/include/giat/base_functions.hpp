#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace giat {

/// Benchmark building blocks, following the CEC'2010 large-scale definitions.
enum class BaseFunctionKind { Sphere, Elliptic, Rastrigin, Ackley, Schwefel12, Rosenbrock };

std::string_view to_string(BaseFunctionKind kind);
BaseFunctionKind base_function_from_string(std::string_view name);

constexpr bool is_intrinsically_nonseparable(BaseFunctionKind kind) {
  return kind == BaseFunctionKind::Schwefel12 || kind == BaseFunctionKind::Rosenbrock;
}

/// Ackley is not additively separable over a block; DG-style detection is unreliable on it.
constexpr bool is_additively_separable_kind(BaseFunctionKind kind) {
  return kind == BaseFunctionKind::Sphere || kind == BaseFunctionKind::Elliptic ||
         kind == BaseFunctionKind::Rastrigin;
}

constexpr int min_dimension(BaseFunctionKind kind) {
  return is_intrinsically_nonseparable(kind) ? 2 : 1;
}

namespace detail {

template <typename Derived>
typename Derived::Scalar sphere(const Eigen::MatrixBase<Derived>& z) {
  return z.squaredNorm();
}

// Condition number 1e6 spread geometrically over the block.
template <typename Derived>
typename Derived::Scalar elliptic(const Eigen::MatrixBase<Derived>& z) {
  using S = typename Derived::Scalar;
  const Eigen::Index d = z.size();
  if (d == 1) return z(0) * z(0);
  S sum(0);
  for (Eigen::Index i = 0; i < d; ++i) {
    const S expo = S(6) * S(i) / S(d - 1);
    sum += std::pow(S(10), expo) * z(i) * z(i);
  }
  return sum;
}

template <typename Derived>
typename Derived::Scalar rastrigin(const Eigen::MatrixBase<Derived>& z) {
  using S = typename Derived::Scalar;
  const S two_pi = S(2) * std::numbers::pi_v<S>;
  S sum(0);
  for (Eigen::Index i = 0; i < z.size(); ++i)
    sum += z(i) * z(i) - S(10) * std::cos(two_pi * z(i)) + S(10);
  return sum;
}

template <typename Derived>
typename Derived::Scalar ackley(const Eigen::MatrixBase<Derived>& z) {
  using S = typename Derived::Scalar;
  const S d = S(z.size());
  const S two_pi = S(2) * std::numbers::pi_v<S>;
  S cos_sum(0);
  for (Eigen::Index i = 0; i < z.size(); ++i) cos_sum += std::cos(two_pi * z(i));
  return S(-20) * std::exp(S(-0.2) * std::sqrt(z.squaredNorm() / d)) - std::exp(cos_sum / d) +
         S(20) + std::numbers::e_v<S>;
}

// Nested-sum form: sum_i (sum_{j<=i} z_j)^2.
template <typename Derived>
typename Derived::Scalar schwefel12(const Eigen::MatrixBase<Derived>& z) {
  using S = typename Derived::Scalar;
  S partial(0), sum(0);
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    partial += z(i);
    sum += partial * partial;
  }
  return sum;
}

template <typename Derived>
typename Derived::Scalar rosenbrock(const Eigen::MatrixBase<Derived>& z) {
  using S = typename Derived::Scalar;
  S sum(0);
  for (Eigen::Index i = 0; i + 1 < z.size(); ++i) {
    const S a = z(i) * z(i) - z(i + 1);
    const S b = z(i) - S(1);
    sum += S(100) * a * a + b * b;
  }
  return sum;
}

}  // namespace detail

template <typename Derived>
typename Derived::Scalar evaluate_base(BaseFunctionKind kind, const Eigen::MatrixBase<Derived>& z) {
  if (z.size() < min_dimension(kind))
    throw std::invalid_argument(std::string(to_string(kind)) + " needs dimension >= " +
                                std::to_string(min_dimension(kind)));
  switch (kind) {
    case BaseFunctionKind::Sphere: return detail::sphere(z);
    case BaseFunctionKind::Elliptic: return detail::elliptic(z);
    case BaseFunctionKind::Rastrigin: return detail::rastrigin(z);
    case BaseFunctionKind::Ackley: return detail::ackley(z);
    case BaseFunctionKind::Schwefel12: return detail::schwefel12(z);
    case BaseFunctionKind::Rosenbrock: return detail::rosenbrock(z);
  }
  throw std::invalid_argument("unknown base function");
}

/// Coordinate-wise evaluation used for the separable block: every variable is its own term.
/// Sphere, Elliptic and Rastrigin keep their block weighting; Ackley becomes a sum of 1-d Ackleys.
template <typename Derived>
typename Derived::Scalar evaluate_separable_block(BaseFunctionKind kind,
                                                  const Eigen::MatrixBase<Derived>& z) {
  using S = typename Derived::Scalar;
  if (is_intrinsically_nonseparable(kind))
    throw std::invalid_argument("separable_base cannot be " + std::string(to_string(kind)));
  if (z.size() == 0) return S(0);
  if (kind != BaseFunctionKind::Ackley) return evaluate_base(kind, z);
  S sum(0);
  for (Eigen::Index i = 0; i < z.size(); ++i) sum += detail::ackley(z.segment(i, 1));
  return sum;
}

}  // namespace giat
