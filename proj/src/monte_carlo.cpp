#include "ray_scan.hpp"
#include "schur2/gauss_measure.hpp"
#include "schur2/parallel.hpp"

#include <cmath>
#include <random>

namespace schur2::detail {

namespace {

constexpr long long kChunk = 8192;
constexpr std::size_t kChunksPerRound = 32;
constexpr double kSearchRadius = 40.0;
constexpr int kSearchGrid = 2048;
constexpr int kRandomStarts = 32;

// First radius along dir (in sigma units) at which the ray meets the set.
double first_hit(const SetSpec& set, const RealVector& shift, double sigma, const RealVector& dir) {
  const LineSection s = ray_section(set, shift, sigma, dir, kSearchRadius, kSearchGrid);
  return s.empty() ? kInf : s.front().lo;
}

struct ChunkSum {
  double sum = 0.0;
  double sum_sq = 0.0;
  long long hits = 0;
};

}  // namespace

NearestPoint nearest_point(const SetSpec& set, const RealVector& shift, double sigma) {
  const Index k = shift.size();
  if (set.contains(shift)) return {0.0, RealVector::Zero(k)};

  std::vector<RealVector> starts;
  for (Index j = 0; j < k; ++j) {
    for (double sgn : {1.0, -1.0}) starts.push_back(sgn * RealVector::Unit(k, j));
  }
  starts.push_back(RealVector::Ones(k).normalized());
  starts.push_back(-RealVector::Ones(k).normalized());
  if (shift.norm() > 0.0) starts.push_back(-shift.normalized());
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  std::normal_distribution<double> nd;
  for (int i = 0; i < kRandomStarts; ++i) {
    RealVector v(k);
    for (Index j = 0; j < k; ++j) v[j] = nd(rng);
    starts.push_back(v.normalized());
  }

  RealVector best_dir = starts.front();
  double best = kInf;
  for (const RealVector& d : starts) {
    const double r = first_hit(set, shift, sigma, d);
    if (r < best) {
      best = r;
      best_dir = d;
    }
  }
  if (!std::isfinite(best)) return {kInf, RealVector::Zero(k)};

  // Pattern search over directions on the unit sphere.
  for (double step = 0.25; step > 1e-6; step *= 0.5) {
    bool improved = true;
    while (improved) {
      improved = false;
      for (Index j = 0; j < k; ++j) {
        for (double sgn : {1.0, -1.0}) {
          RealVector d = best_dir;
          d[j] += sgn * step;
          d.normalize();
          const double r = first_hit(set, shift, sigma, d);
          if (r < best) {
            best = r;
            best_dir = d;
            improved = true;
          }
        }
      }
    }
  }
  return {best, best * best_dir};
}

MeasureEstimate monte_carlo_measure(const GaussianShiftQuery& query, bool importance, double target_rel) {
  const Index k = query.shift.size();
  const int workers = resolve_workers(query.workers);
  RealVector mu = RealVector::Zero(k);
  if (importance) {
    const NearestPoint near = nearest_point(query.set, query.shift, query.sigma);
    if (std::isfinite(near.distance)) mu = near.z;
  }
  const double half_mu2 = 0.5 * mu.squaredNorm();

  auto run_chunk = [&](std::size_t chunk) {
    auto engine = stream_engine(query.seed, chunk);
    std::normal_distribution<double> nd;
    RealVector z(k);
    RealVector y(k);
    ChunkSum s;
    for (long long i = 0; i < kChunk; ++i) {
      for (Index j = 0; j < k; ++j) z[j] = mu[j] + nd(engine);
      y = query.shift + query.sigma * z;
      if (!query.set.contains(y)) continue;
      const double w = importance ? std::exp(half_mu2 - mu.dot(z)) : 1.0;
      s.sum += w;
      s.sum_sq += w * w;
      ++s.hits;
    }
    return s;
  };

  ChunkSum total;
  std::size_t done = 0;
  MeasureEstimate e;
  auto update = [&] {
    const double n = static_cast<double>(done) * kChunk;
    const double mean = total.sum / n;
    const double var = std::max(total.sum_sq / n - mean * mean, 0.0);
    e.value = mean;
    e.abs_error = total.hits > 0 ? 2.0 * std::sqrt(var / n) : 3.0 / n;
    e.samples_or_nodes = static_cast<long long>(n);
  };

  const bool fixed = query.mc_samples > 0;
  const std::size_t max_chunks = static_cast<std::size_t>(
      std::max<long long>(1, ((fixed ? query.mc_samples : query.mc_max_samples) + kChunk - 1) / kChunk));
  while (done < max_chunks) {
    const std::size_t count = fixed ? max_chunks : std::min(kChunksPerRound, max_chunks - done);
    const auto sums = parallel_map(count, workers, [&](std::size_t i) { return run_chunk(done + i); });
    for (const ChunkSum& s : sums) {
      total.sum += s.sum;
      total.sum_sq += s.sum_sq;
      total.hits += s.hits;
    }
    done += count;
    update();
    if (!fixed && total.hits >= 10 && e.abs_error <= target_rel * e.value) break;
  }
  e.flagged = !fixed && !(total.hits >= 10 && e.abs_error <= target_rel * e.value);
  return e;
}

}  // namespace schur2::detail
