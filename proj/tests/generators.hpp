#pragma once

// Hand-rolled generators for the property tests. Every test seeds its own
// engine so failures reproduce.

#include "schur2/majorization.hpp"
#include "schur2/sets.hpp"

#include <cmath>
#include <random>
#include <vector>

namespace schur2::testing {

using Rng = std::mt19937_64;

inline Index random_dim(Rng& rng, Index lo = 1, Index hi = 6) {
  return std::uniform_int_distribution<Index>(lo, hi)(rng);
}

inline RealVector random_vector(Rng& rng, Index k, double scale = 2.0) {
  std::normal_distribution<double> nd(0.0, scale);
  RealVector x(k);
  for (Index i = 0; i < k; ++i) x[i] = nd(rng);
  return x;
}

/// Coordinates bounded away from zero, random signs.
inline RealVector random_nonzero(Rng& rng, Index k, double lo = 0.1, double hi = 3.0) {
  std::uniform_real_distribution<double> ud(lo, hi);
  std::bernoulli_distribution coin;
  RealVector x(k);
  for (Index i = 0; i < k; ++i) x[i] = coin(rng) ? ud(rng) : -ud(rng);
  return x;
}

inline RealVector random_positive(Rng& rng, Index k, double lo = 0.1, double hi = 3.0) {
  return random_nonzero(rng, k, lo, hi).cwiseAbs();
}

/// b = T a for a random T-transform on two distinct coordinates with
/// lambda in (0, 1); a majorizes b.
inline RealVector random_t_transform(Rng& rng, const RealVector& a) {
  const Index k = a.size();
  std::uniform_int_distribution<Index> pick(0, k - 1);
  const Index i = pick(rng);
  Index j = pick(rng);
  while (k > 1 && j == i) j = pick(rng);
  const double lambda = std::uniform_real_distribution<double>(0.05, 0.95)(rng);
  RealVector b = a;
  b[i] = lambda * a[i] + (1.0 - lambda) * a[j];
  b[j] = lambda * a[j] + (1.0 - lambda) * a[i];
  return b;
}

/// A vector majorized by `a`, reached through several T-transforms.
inline RealVector random_majorized(Rng& rng, const RealVector& a, int steps = 3) {
  RealVector b = a;
  for (int s = 0; s < steps; ++s) b = random_t_transform(rng, b);
  return b;
}

/// Sets with a known Schur^2 character, including complements.
inline std::vector<SetSpec> classified_sets() {
  std::vector<SetSpec> base{
      SetSpec::cube(1.0),
      SetSpec::p_ball(1.0, 1.0),
      SetSpec::p_ball(3.0, 1.0),
      SetSpec::p_ball(-1.0, 0.8),
      SetSpec::p_ball(0.0, 1.0),
      SetSpec::p_ball(kInf, 1.2),
      SetSpec::pq_ball(2.0, -0.4, 1.0),
      SetSpec::pq_ball(2.0, 2.0, 1.0),
      SetSpec::pq_ball(4.0, 1.0, 1.0),
      SetSpec::hat_ball(4.5, 1.0, std::pow(2.0, -1.0 / 4.5) + 0.01),
      SetSpec::check_ball(1.5, 1.0, 0.45),
  };
  std::vector<SetSpec> all = base;
  for (const auto& s : base) all.push_back(s.complement());
  return all;
}

/// Every family, classified or not.
inline std::vector<SetSpec> all_families() {
  std::vector<SetSpec> out = classified_sets();
  out.push_back(SetSpec::pq_ball(5.0, -1.0, 1.0));
  out.push_back(SetSpec::pq_ball(0.7, 0.7, 1.0));
  out.push_back(SetSpec::p_ball(0.5, 1.0));
  out.push_back(SetSpec::p_ball(-kInf, 0.5));
  out.push_back(SetSpec::hat_ball(1.5, 0.5, 0.6));
  out.push_back(SetSpec::check_ball(3.0, 0.7, 0.6));
  return out;
}

}  // namespace schur2::testing
