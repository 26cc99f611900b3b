#pragma once

#include "schur2/types.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace schur2 {

enum class MeanKind { PMean, PqMean, Truncated };
enum class Tail { Smallest, Largest };

/// Which mean functional is in play. PqMean specs are normalized to p >= q.
struct MeanSpec {
  MeanKind kind = MeanKind::PMean;
  double p = 2.0;
  double q = 0.0;
  int ell = 1;
  Tail tail = Tail::Smallest;

  static MeanSpec p_mean(double p) { return {MeanKind::PMean, p, 0.0, 1, Tail::Smallest}; }
  static MeanSpec pq_mean(double p, double q) {
    return {MeanKind::PqMean, std::max(p, q), std::min(p, q), 1, Tail::Smallest};
  }
  static MeanSpec truncated(int ell, Tail tail, double p) {
    return {MeanKind::Truncated, p, 0.0, ell, tail};
  }
};

namespace detail {

// Above this |p| the power sum is evaluated after factoring out the extreme
// coordinate; below it the direct sum is used unless it over/underflows.
inline constexpr double kLogSpacePower = 50.0;

template <typename Derived>
double factored_p_mean(const Eigen::MatrixBase<Derived>& x, double p) {
  const auto a = x.cwiseAbs();
  const double m = p > 0 ? a.maxCoeff() : a.minCoeff();
  if (m == 0.0) return 0.0;
  double s = 0.0;
  for (Index j = 0; j < a.size(); ++j) s += std::pow(a[j] / m, p);
  return m * std::pow(s / static_cast<double>(a.size()), 1.0 / p);
}

// Below this |p| the power sum loses about eps / |p| relative accuracy, so
// the mean is formed from expm1 / log1p of p log|x_j| instead.
inline constexpr double kSmallPower = 0.25;

template <typename Derived>
double small_p_mean(const Eigen::MatrixBase<Derived>& x, double p) {
  const Index k = x.size();
  double m = 0.0;
  for (Index j = 0; j < k; ++j) m += std::expm1(p * std::log(std::abs(x[j])));
  m /= static_cast<double>(k);
  if (!(m > -1.0)) return factored_p_mean(x, p);
  return std::exp(std::log1p(m) / p);
}

// log(sum_j |x_j|^r) over the nonzero coordinates, with max-factoring.
template <typename Derived>
double log_power_sum(const Eigen::MatrixBase<Derived>& x, double r) {
  double top = -kInf;
  for (Index j = 0; j < x.size(); ++j) {
    if (x[j] != 0.0) top = std::max(top, r * std::log(std::abs(x[j])));
  }
  if (top == -kInf) return -kInf;
  double s = 0.0;
  for (Index j = 0; j < x.size(); ++j) {
    if (x[j] != 0.0) s += std::exp(r * std::log(std::abs(x[j])) - top);
  }
  return top + std::log(s);
}

}  // namespace detail

/// Power mean of |x_j| with 1/k normalization and the usual limits at
/// p = -inf (min), 0 (geometric mean), +inf (max). For p < 0 a zero
/// coordinate forces the value 0.
template <typename Derived>
double p_mean(const Eigen::MatrixBase<Derived>& x, double p) {
  const Index k = x.size();
  if (k == 0) throw DimensionError("p_mean: empty vector");
  if (p == kInf) return x.cwiseAbs().maxCoeff();
  if (p == -kInf) return x.cwiseAbs().minCoeff();
  if (p == 0.0) {
    double s = 0.0;
    for (Index j = 0; j < k; ++j) {
      if (x[j] == 0.0) return 0.0;
      s += std::log(std::abs(x[j]));
    }
    return std::exp(s / static_cast<double>(k));
  }
  if (p < 0.0) {
    for (Index j = 0; j < k; ++j) {
      if (x[j] == 0.0) return 0.0;
    }
  }
  if (std::abs(p) > detail::kLogSpacePower) return detail::factored_p_mean(x, p);
  if (std::abs(p) < detail::kSmallPower) return detail::small_p_mean(x, p);
  double s = 0.0;
  for (Index j = 0; j < k; ++j) s += std::pow(std::abs(x[j]), p);
  const double v = std::pow(s / static_cast<double>(k), 1.0 / p);
  if (!std::isnormal(s) || !std::isnormal(v)) return detail::factored_p_mean(x, p);
  return v;
}

/// p-mean of the ell smallest (or largest) absolute coordinates.
double truncated_mean(const RealVector& x, int ell, Tail tail, double p);

/// The (p,q)-mean (sum|x|^p / sum|x|^q)^(1/(p-q)), symmetric in (p,q), with
/// its continuity extensions: the weighted geometric product when p == q,
/// value 0 when q < 0 and some coordinate vanishes (the q-sum diverges),
/// max/min at p = +inf / q = -inf, and sqrt(max*min) for (+inf, -inf).
template <typename Derived>
double pq_mean(const Eigen::MatrixBase<Derived>& x, double p, double q) {
  if (p < q) std::swap(p, q);
  const Index k = x.size();
  if (k == 0) throw DimensionError("pq_mean: empty vector");
  const double amax = x.cwiseAbs().maxCoeff();
  const double amin = x.cwiseAbs().minCoeff();
  if (amax == 0.0) return 0.0;
  if (p == kInf && q == -kInf) return std::sqrt(amax * amin);
  if (p == kInf) return amax;
  if (q == -kInf) return amin;
  const bool has_zero = amin == 0.0;

  if (p == q) {
    if (p <= 0.0 && has_zero) return 0.0;
    const double log_sp = detail::log_power_sum(x, p);
    double log_value = 0.0;
    for (Index j = 0; j < k; ++j) {
      if (x[j] == 0.0) continue;
      const double la = std::log(std::abs(x[j]));
      log_value += std::exp(p * la - log_sp) * la;
    }
    return std::exp(log_value);
  }

  if (q < 0.0 && has_zero) return 0.0;
  const double log_sp = p == 0.0 ? std::log(static_cast<double>(k)) : detail::log_power_sum(x, p);
  const double log_sq = q == 0.0 ? std::log(static_cast<double>(k)) : detail::log_power_sum(x, q);
  return std::exp((log_sp - log_sq) / (p - q));
}

template <typename Derived>
double evaluate_mean(const MeanSpec& spec, const Eigen::MatrixBase<Derived>& x) {
  switch (spec.kind) {
    case MeanKind::PMean: return p_mean(x, spec.p);
    case MeanKind::PqMean: return pq_mean(x, spec.p, spec.q);
    case MeanKind::Truncated: return truncated_mean(x, spec.ell, spec.tail, spec.p);
  }
  return 0.0;
}

/// Schur^2 character of a mean: concave for p <= 2, convex for p >= 2 (the
/// 2-mean is flagged spherical); (p,q)-means concave iff q <= 0 <= p <= 2 and
/// convex iff 0 <= q <= 2 <= p; truncated means concave for the smallest tail
/// with p <= 2 and convex for the largest tail with p >= 2.
SchurCharacter classify_mean(const MeanSpec& spec);

/// Sign of (d/du_i - d/du_j) of u -> pq_mean(sqrt(u), p, q), computed from
/// p u_i^(p/2-1) S_q - q u_i^(q/2-1) S_p with S_r = sum u^(r/2).
/// Requires p > q, i != j and strictly positive u. Returns -1, 0 or +1.
int schur_ostrowski_sign(double p, double q, const RealVector& u, Index i, Index j);

}  // namespace schur2
