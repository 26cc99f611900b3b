#include "schur2/means.hpp"

#include <stdexcept>
#include <vector>

namespace schur2 {

double truncated_mean(const RealVector& x, int ell, Tail tail, double p) {
  const Index k = x.size();
  if (ell < 1 || ell > k) {
    throw std::invalid_argument("truncated_mean: ell must lie in 1..k");
  }
  std::vector<double> a(x.size());
  for (Index j = 0; j < k; ++j) a[j] = std::abs(x[j]);
  std::sort(a.begin(), a.end());
  const auto first = tail == Tail::Smallest ? a.begin() : a.end() - ell;
  const Eigen::Map<const RealVector> picked(&*first, ell);
  return p_mean(picked, p);
}

namespace {

SchurCharacter classify_pq(double p, double q) {
  if (std::isnan(p) || std::isnan(q)) return {};
  if (p < q) std::swap(p, q);
  const bool concave = q <= 0.0 && 0.0 <= p && p <= 2.0;
  const bool convex = 0.0 <= q && q <= 2.0 && 2.0 <= p;
  if (concave && convex) return {Schur2::Convex, true};
  if (convex) return {Schur2::Convex, false};
  if (concave) return {Schur2::Concave, false};
  return {};
}

}  // namespace

SchurCharacter classify_mean(const MeanSpec& spec) {
  switch (spec.kind) {
    case MeanKind::PMean:
      if (std::isnan(spec.p)) return {};
      if (spec.p == 2.0) return {Schur2::Convex, true};
      return {spec.p < 2.0 ? Schur2::Concave : Schur2::Convex, false};
    case MeanKind::PqMean:
      return classify_pq(spec.p, spec.q);
    case MeanKind::Truncated:
      if (spec.tail == Tail::Smallest && spec.p <= 2.0) return {Schur2::Concave, false};
      if (spec.tail == Tail::Largest && spec.p >= 2.0) return {Schur2::Convex, false};
      return {};
  }
  return {};
}

int schur_ostrowski_sign(double p, double q, const RealVector& u, Index i, Index j) {
  if (!(p > q)) throw std::invalid_argument("schur_ostrowski_sign: requires p > q");
  if (i == j || i < 0 || j < 0 || i >= u.size() || j >= u.size()) {
    throw std::invalid_argument("schur_ostrowski_sign: need two distinct valid indices");
  }
  if (!(u.array() > 0.0).all()) {
    throw std::invalid_argument("schur_ostrowski_sign: coordinates must be positive");
  }
  // Work relative to max u; the common factor max^(-1+(p+q)/2) is positive.
  const double m = u.maxCoeff();
  const RealVector v = u / m;
  double sp = 0.0;
  double sq = 0.0;
  for (Index t = 0; t < v.size(); ++t) {
    sp += std::pow(v[t], p / 2.0);
    sq += std::pow(v[t], q / 2.0);
  }
  auto partial = [&](Index t) {
    return p * std::pow(v[t], p / 2.0 - 1.0) * sq - q * std::pow(v[t], q / 2.0 - 1.0) * sp;
  };
  const double di = partial(i);
  const double dj = partial(j);
  const double diff = di - dj;
  if (std::abs(diff) <= 1e-13 * (std::abs(di) + std::abs(dj))) return 0;
  return diff > 0.0 ? 1 : -1;
}

}  // namespace schur2
