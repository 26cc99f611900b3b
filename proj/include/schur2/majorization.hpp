#pragma once

#include "schur2/types.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace schur2 {

/// Relation of `a` to `b` in the Schur majorization order.
///
/// StrictMajorizes: a ⪰ b with a↓ != b↓.  MajorizedBy: b ⪰ a with a↓ != b↓.
/// EqualSorted: a↓ == b↓ (within tolerance).  Incomparable covers unequal
/// totals as well as crossing partial sums.
enum class Majorization { EqualSorted, StrictMajorizes, MajorizedBy, Incomparable };

const char* to_string(Majorization m);

template <typename Derived>
Vector<typename Derived::Scalar> sorted_descending(const Eigen::MatrixBase<Derived>& a) {
  Vector<typename Derived::Scalar> s = a;
  std::sort(s.data(), s.data() + s.size(), std::greater<>());
  return s;
}

/// Tolerance used for total and partial-sum comparisons.
template <typename DA, typename DB>
double majorization_tolerance(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  const double l1 = std::max(a.template lpNorm<1>(), b.template lpNorm<1>());
  return 1e-12 * std::max(1.0, l1);
}

template <typename DA, typename DB>
Majorization majorize_compare(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  require_same_dimension(a, b, "majorize_compare");
  const double tol = majorization_tolerance(a, b);
  const auto as = sorted_descending(a);
  const auto bs = sorted_descending(b);

  if (std::abs(as.sum() - bs.sum()) > tol) return Majorization::Incomparable;
  if (((as - bs).cwiseAbs().array() <= tol).all()) return Majorization::EqualSorted;

  bool a_dominates = true;
  bool b_dominates = true;
  double pa = 0.0;
  double pb = 0.0;
  for (Index j = 0; j < as.size(); ++j) {
    pa += as[j];
    pb += bs[j];
    if (pa < pb - tol) a_dominates = false;
    if (pb < pa - tol) b_dominates = false;
  }
  if (a_dominates) return Majorization::StrictMajorizes;
  if (b_dominates) return Majorization::MajorizedBy;
  return Majorization::Incomparable;
}

/// Majorization of the squared coordinates: the order behind Schur^2 notions.
template <typename DA, typename DB>
Majorization schur2_compare(const Eigen::MatrixBase<DA>& x, const Eigen::MatrixBase<DB>& y) {
  require_same_dimension(x, y, "schur2_compare");
  return majorize_compare(squared(x), squared(y));
}

/// Orbit representative under the hyperoctahedral group G_k:
/// absolute values sorted in descending order.
template <typename Derived>
Vector<typename Derived::Scalar> g_canonical(const Eigen::MatrixBase<Derived>& x) {
  return sorted_descending(x.cwiseAbs());
}

/// One element of G_k: (g x)_i = sign_i * x_{perm_i}.
struct GroupElement {
  std::vector<Index> perm;
  std::vector<std::int8_t> sign;

  Index dimension() const { return static_cast<Index>(perm.size()); }

  template <typename Derived>
  Vector<typename Derived::Scalar> apply(const Eigen::MatrixBase<Derived>& x) const {
    if (x.size() != dimension()) throw DimensionError("GroupElement::apply: dimension mismatch");
    Vector<typename Derived::Scalar> y(x.size());
    for (Index i = 0; i < x.size(); ++i) y[i] = sign[i] * x[perm[i]];
    return y;
  }

  static GroupElement identity(Index k);
  static GroupElement random(Index k, std::mt19937_64& rng);
};

/// All 2^k k! elements; intended for small k.
std::vector<GroupElement> enumerate_group(Index k);

/// T-transform chain from a down to b.
///
/// Requires a to strictly majorize b. Each consecutive pair differs in exactly
/// two coordinates and strictly majorizes the next; the chain has at most
/// k - 1 links. The chain lives in the coordinate frame of `a`: the first
/// element is `a` itself and the last is b↓ arranged in the order of `a`
/// (equal to `b`, up to the comparison tolerance, whenever b is ordered like
/// a, e.g. both descending).
std::vector<RealVector> muirhead_chain(const RealVector& a, const RealVector& b);

}  // namespace schur2
