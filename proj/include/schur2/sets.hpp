#pragma once

#include "schur2/means.hpp"
#include "schur2/types.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace schur2 {

/// {x : <x>_p <= eps}
struct PBall {
  double p;
  double eps;
  friend bool operator==(const PBall&, const PBall&) = default;
};

/// {x : <x>_{p,q} <= eps}, stored with p >= q.
struct PqBall {
  double p;
  double q;
  double eps;
  friend bool operator==(const PqBall&, const PqBall&) = default;
};

/// Union over g in G_k of (a g 1 + B_p(eps)).
struct HatBall {
  double p;
  double a;
  double eps;
  friend bool operator==(const HatBall&, const HatBall&) = default;
};

/// Union over g in G_k of (a g e_1 + B_p(eps)).
struct CheckBall {
  double p;
  double a;
  double eps;
  friend bool operator==(const CheckBall&, const CheckBall&) = default;
};

/// {x : |x_j| <= a for all j}
struct Cube {
  double a;
  friend bool operator==(const Cube&, const Cube&) = default;
};

using Shape = std::variant<PBall, PqBall, HatBall, CheckBall, Cube>;

namespace detail {

template <typename Derived>
bool shape_contains(const PBall& s, const Eigen::MatrixBase<Derived>& x) {
  return p_mean(x, s.p) <= s.eps;
}

template <typename Derived>
bool shape_contains(const PqBall& s, const Eigen::MatrixBase<Derived>& x) {
  return pq_mean(x, s.p, s.q) <= s.eps;
}

// Sign matching: the nearest center a*g*1 has the signs of x, so the test
// reduces to sum_j ||x_j| - a|^p <= k eps^p.
template <typename Derived>
bool shape_contains(const HatBall& s, const Eigen::MatrixBase<Derived>& x) {
  const Index k = x.size();
  if (s.p == kInf) {
    for (Index j = 0; j < k; ++j) {
      if (std::abs(std::abs(x[j]) - s.a) > s.eps) return false;
    }
    return true;
  }
  double sum = 0.0;
  for (Index j = 0; j < k; ++j) sum += std::pow(std::abs(std::abs(x[j]) - s.a) / s.eps, s.p);
  return sum <= static_cast<double>(k);
}

// Candidates a*sign(x_i)*e_i for i = 1..k.
template <typename Derived>
bool shape_contains(const CheckBall& s, const Eigen::MatrixBase<Derived>& x) {
  const Index k = x.size();
  for (Index i = 0; i < k; ++i) {
    if (s.p == kInf) {
      double worst = std::abs(std::abs(x[i]) - s.a);
      for (Index j = 0; j < k; ++j) {
        if (j != i) worst = std::max(worst, std::abs(x[j]));
      }
      if (worst <= s.eps) return true;
    } else {
      double sum = std::pow(std::abs(std::abs(x[i]) - s.a) / s.eps, s.p);
      for (Index j = 0; j < k; ++j) {
        if (j != i) sum += std::pow(std::abs(x[j]) / s.eps, s.p);
      }
      if (sum <= static_cast<double>(k)) return true;
    }
  }
  return false;
}

template <typename Derived>
bool shape_contains(const Cube& s, const Eigen::MatrixBase<Derived>& x) {
  return x.cwiseAbs().maxCoeff() <= s.a;
}

}  // namespace detail

/// A symbolic, G_k-invariant closed set (or the complement of one). The
/// dimension is taken from the points it is queried with.
class SetSpec {
 public:
  static SetSpec p_ball(double p, double eps);
  static SetSpec pq_ball(double p, double q, double eps);
  static SetSpec hat_ball(double p, double a, double eps);
  static SetSpec check_ball(double p, double a, double eps);
  static SetSpec cube(double a);

  explicit SetSpec(Shape shape, bool complemented = false);

  /// Complement; complementing twice gives back the original set.
  SetSpec complement() const { return SetSpec(shape_, !complemented_); }
  SetSpec base() const { return SetSpec(shape_, false); }

  const Shape& shape() const { return shape_; }
  bool is_complement() const { return complemented_; }
  /// Euclidean ball (p = 2) or its complement.
  bool is_spherical() const;

  template <typename Derived>
  bool contains(const Eigen::MatrixBase<Derived>& x) const {
    const bool inside =
        std::visit([&](const auto& s) { return detail::shape_contains(s, x); }, shape_);
    return inside != complemented_;
  }

  /// Continuous in x, nonpositive on the set and positive off it, up to
  /// rounding on the boundary.
  double margin(const RealVector& x) const;

  friend bool operator==(const SetSpec&, const SetSpec&) = default;

 private:
  Shape shape_;
  bool complemented_ = false;
};

template <typename Derived>
bool contains(const SetSpec& set, const Eigen::MatrixBase<Derived>& x) {
  return set.contains(x);
}

SchurCharacter classify_set(const SetSpec& set);

/// Counts of membership changes over random pairs (x, y) with y^2 strictly
/// majorizing x^2. A downward violation (y in S, x not) contradicts Schur^2
/// convexity; an upward one (x in S, y not) contradicts Schur^2 concavity.
struct MembershipProbe {
  int compared = 0;
  int downward = 0;
  int upward = 0;

  /// True when the counts contradict `c`.
  bool contradicts(const SchurCharacter& c) const {
    return (c.convex() && downward > 0) || (c.concave() && upward > 0);
  }
};

/// Draws `trials` pairs in dimensions 2..5: y is Gaussian with a random
/// scale in [0.2, 2.5], and x^2 comes from two random T-transforms of y^2,
/// with random signs.
MembershipProbe probe_membership_monotonicity(const SetSpec& set, int trials, std::uint64_t seed);

struct Interval {
  double lo;
  double hi;
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Sorted, disjoint closed intervals (endpoints may be infinite).
using LineSection = std::vector<Interval>;

/// {t : base with coordinate `axis` replaced by t lies in the set}.
///
/// Closed forms are used for every family except the (p,q)-balls, whose
/// sections are located by bisection on the membership predicate between the
/// stationary points of the coordinate-section function. Endpoints are
/// members of the (uncomplemented) set.
LineSection line_interval(const SetSpec& set, const RealVector& base, Index axis);

/// Canonical text, e.g. "pball:p=2,eps=1" or "complement(cube:a=1)".
std::string to_string(const SetSpec& set);

/// Inverse of to_string; also accepts any key order and "complement(...)"
/// nesting (which collapses pairwise). Throws std::invalid_argument.
SetSpec parse_set(std::string_view text);

/// Shortest round-trip decimal for a double, with "inf"/"-inf".
std::string format_double(double v);
double parse_double(std::string_view text);

}  // namespace schur2
