#pragma once

#include <Eigen/Core>

#include <limits>
#include <stdexcept>
#include <string>

namespace schur2 {

/// A point, shift or direction in R^k.
using RealVector = Eigen::VectorXd;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Index = Eigen::Index;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Thrown when two operands do not live in the same R^k.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

template <typename DA, typename DB>
void require_same_dimension(const Eigen::MatrixBase<DA>& a,
                            const Eigen::MatrixBase<DB>& b,
                            const char* what) {
  if (a.size() != b.size()) {
    throw DimensionError(std::string(what) + ": dimension mismatch (" +
                         std::to_string(a.size()) + " vs " +
                         std::to_string(b.size()) + ")");
  }
}

/// Schur^2 character of a function or of a set.
///
/// For sets the convention is that a set is Schur^2-convex when its indicator
/// is Schur^2-concave, i.e. membership is closed downward in the order of
/// squared coordinates. `spherical` marks objects that are both (the 2-mean
/// and Euclidean balls); they are reported as Convex.
enum class Schur2 { Concave, Convex, NeitherKnown };

struct SchurCharacter {
  Schur2 value = Schur2::NeitherKnown;
  bool spherical = false;

  bool concave() const { return value == Schur2::Concave || spherical; }
  bool convex() const { return value == Schur2::Convex || spherical; }
  bool known() const { return value != Schur2::NeitherKnown; }

  friend bool operator==(const SchurCharacter&, const SchurCharacter&) = default;
};

inline const char* to_string(Schur2 s) {
  switch (s) {
    case Schur2::Concave: return "SCHUR2_CONCAVE";
    case Schur2::Convex: return "SCHUR2_CONVEX";
    case Schur2::NeitherKnown: return "NEITHER_KNOWN";
  }
  return "?";
}

/// Component-wise square x^2 = (x_1^2, ..., x_k^2).
template <typename Derived>
Vector<typename Derived::Scalar> squared(const Eigen::MatrixBase<Derived>& x) {
  return x.cwiseAbs2();
}

}  // namespace schur2
