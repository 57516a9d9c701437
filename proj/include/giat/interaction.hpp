#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "giat/problem.hpp"

namespace giat {

/// Roundoff constant gamma_k = k*mu / (1 - k*mu), mu = half the unit roundoff of Scalar.
template <typename Scalar>
Scalar gamma_constant(Scalar k) {
  const Scalar mu = std::numeric_limits<Scalar>::epsilon() / Scalar(2);
  if (!(k >= Scalar(0))) throw std::invalid_argument("gamma_constant: k must be >= 0");
  const Scalar km = k * mu;
  if (km >= Scalar(1)) throw std::invalid_argument("gamma_constant: k*mu must be < 1");
  return km / (Scalar(1) - km);
}

/// Base point is the lower-bound corner; each coordinate is bumped by delta.
struct PerturbationScheme {
  enum class BasePoint { LowerBounds };
  enum class Delta { FullRange, HalfRange };
  BasePoint base_point = BasePoint::LowerBounds;
  Delta delta = Delta::FullRange;
};

template <typename Scalar>
struct PairQuantities {
  Scalar tau = 0;
  Scalar delta1 = 0;
  Scalar delta2 = 0;
  Scalar e_inf = 0;
  Scalar e_sup = 0;
  Scalar d = 0;
};

/// f at the base point and at the base point with exactly one coordinate perturbed.
template <typename Scalar>
struct BaseEvaluations {
  VectorX<Scalar> base_point;
  VectorX<Scalar> perturbed_point;  // base_point + delta, coordinate-wise
  Scalar f_base = 0;
  VectorX<Scalar> f_single;
};

template <typename Scalar>
BaseEvaluations<Scalar> warm_cache(const ProblemInstance<Scalar>& instance,
                                   const PerturbationScheme& scheme = {}) {
  BaseEvaluations<Scalar> cache;
  const Index n = instance.dimension();
  cache.base_point = instance.lower_bounds();
  const Scalar range = instance.upper_bound() - instance.lower_bound();
  const Scalar delta =
      scheme.delta == PerturbationScheme::Delta::FullRange ? range : range / Scalar(2);
  cache.perturbed_point = cache.base_point.array() + delta;
  if (scheme.delta == PerturbationScheme::Delta::FullRange)
    cache.perturbed_point = instance.upper_bounds();
  cache.f_base = instance.evaluate(cache.base_point);
  cache.f_single.resize(n);
  VectorX<Scalar> x = cache.base_point;
  for (Index i = 0; i < n; ++i) {
    x(i) = cache.perturbed_point(i);
    cache.f_single(i) = instance.evaluate(x);
    x(i) = cache.base_point(i);
  }
  return cache;
}

/// Quantities from the four points x1 (base), x2 (p moved), x3 (q moved), x4 (both moved).
/// Only x4 is evaluated here.
template <typename Scalar>
PairQuantities<Scalar> pair_quantities(const ProblemInstance<Scalar>& instance, Index p, Index q,
                                       const BaseEvaluations<Scalar>& cache) {
  const Index n = instance.dimension();
  if (p < 0 || q < 0 || p >= n || q >= n)
    throw std::out_of_range("pair_quantities: index out of range");
  if (p == q) throw std::invalid_argument("pair_quantities: p and q must differ");
  if (cache.f_single.size() != n) throw std::invalid_argument("pair_quantities: cold cache");

  VectorX<Scalar> x4 = cache.base_point;
  x4(p) = cache.perturbed_point(p);
  x4(q) = cache.perturbed_point(q);
  const Scalar f1 = cache.f_base;
  const Scalar f2 = cache.f_single(p);
  const Scalar f3 = cache.f_single(q);
  const Scalar f4 = instance.evaluate(x4);

  PairQuantities<Scalar> out;
  out.delta1 = f2 - f1;
  out.delta2 = f4 - f3;
  out.tau = std::abs(out.delta1 - out.delta2);
  out.d = std::max(std::abs(out.delta1), std::abs(out.delta2));
  const Scalar g2 = gamma_constant(Scalar(2));
  const Scalar gsqrt = gamma_constant(std::sqrt(Scalar(n)));
  out.e_inf = g2 * std::max(std::abs(f1 + f4), std::abs(f2 + f3));
  out.e_sup = gsqrt * std::max({f1, f2, f3, f4});
  if (out.e_sup < out.e_inf) out.e_sup = out.e_inf;
  return out;
}

template <typename Scalar>
PairQuantities<Scalar> pair_quantities(const ProblemInstance<Scalar>& instance, Index p, Index q,
                                       const PerturbationScheme& scheme = {}) {
  return pair_quantities(instance, p, q, warm_cache(instance, scheme));
}

/// Full pairwise interaction structure. Matrices are symmetric; diagonals are zero and unused.
template <typename Scalar>
struct InteractionData {
  Index n = 0;
  MatrixX<Scalar> gamma;  // tau
  MatrixX<Scalar> e_inf;
  MatrixX<Scalar> e_sup;
  MatrixX<Scalar> d;  // max(|delta1|, |delta2|)
  std::uint64_t fe_used = 0;

  Index pair_count() const { return n * (n - 1) / 2; }
};

template <typename Scalar>
InteractionData<Scalar> build_interaction_data(const ProblemInstance<Scalar>& instance,
                                               const PerturbationScheme& scheme = {}) {
  const Index n = instance.dimension();
  if (n < 2) throw std::invalid_argument("build_interaction_data: n must be >= 2");
  const std::uint64_t fe_before = instance.fe_count();
  const BaseEvaluations<Scalar> cache = warm_cache(instance, scheme);

  InteractionData<Scalar> data;
  data.n = n;
  data.gamma = MatrixX<Scalar>::Zero(n, n);
  data.e_inf = MatrixX<Scalar>::Zero(n, n);
  data.e_sup = MatrixX<Scalar>::Zero(n, n);
  data.d = MatrixX<Scalar>::Zero(n, n);
  for (Index p = 0; p < n; ++p) {
    for (Index q = p + 1; q < n; ++q) {
      const PairQuantities<Scalar> pq = pair_quantities(instance, p, q, cache);
      data.gamma(p, q) = data.gamma(q, p) = pq.tau;
      data.e_inf(p, q) = data.e_inf(q, p) = pq.e_inf;
      data.e_sup(p, q) = data.e_sup(q, p) = pq.e_sup;
      data.d(p, q) = data.d(q, p) = pq.d;
    }
  }
  data.fe_used = instance.fe_count() - fe_before;
  return data;
}

constexpr std::uint64_t expected_fe(std::uint64_t n) { return 1 + n + n * (n - 1) / 2; }

/// One row per unordered pair, 1-based indices: p,q,tau,e_inf,e_sup,d.
template <typename Scalar>
void write_interaction_csv(std::ostream& os, const InteractionData<Scalar>& data) {
  const auto old = os.precision(17);
  os << "p,q,tau,e_inf,e_sup,d\n";
  for (Index p = 0; p < data.n; ++p)
    for (Index q = p + 1; q < data.n; ++q)
      os << p + 1 << ',' << q + 1 << ',' << data.gamma(p, q) << ',' << data.e_inf(p, q) << ','
         << data.e_sup(p, q) << ',' << data.d(p, q) << '\n';
  os.precision(old);
}

}  // namespace giat
