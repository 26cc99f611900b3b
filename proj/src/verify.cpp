#include "schur2/verify.hpp"

#include "schur2/majorization.hpp"
#include "schur2/means.hpp"
#include "schur2/parallel.hpp"
#include "schur2/quadrature.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace schur2 {

namespace {

MeasureEstimate measure_at(const SetSpec& set, const RealVector& shift, const VerifyOptions& opt) {
  GaussianShiftQuery q{set, shift};
  q.seed = opt.seed;
  q.workers = opt.workers;
  q.target_rel_error = opt.target_rel;
  return measure(q);
}

}  // namespace

Schur2Report check_schur2_monotonicity(const SetSpec& set,
                                       const std::vector<std::pair<RealVector, RealVector>>& shift_pairs,
                                       const VerifyOptions& opt) {
  Schur2Report rep{set, classify_set(set)};
  if (!rep.character.known()) throw std::invalid_argument("check_schur2_monotonicity: set has no known Schur^2 character");
  rep.strict_gap_required = !rep.character.spherical;
  for (const auto& [t1, t2] : shift_pairs) {
    const Majorization rel = schur2_compare(t2, t1);
    if (rel != Majorization::StrictMajorizes && rel != Majorization::EqualSorted) {
      throw std::invalid_argument("check_schur2_monotonicity: theta2^2 must majorize theta1^2");
    }
    ShiftComparison c{t1, t2, measure_at(set, t1, opt), measure_at(set, t2, opt)};
    const double err = c.m1.abs_error + c.m2.abs_error;
    // Positive when the measures are ordered as the classification predicts.
    double signed_gap = c.m1.value - c.m2.value;
    if (rep.character.spherical) {
      c.violation = std::abs(signed_gap) > 3.0 * err;
    } else {
      if (rep.character.value == Schur2::Concave) signed_gap = -signed_gap;
      c.violation = signed_gap < -3.0 * err;
      c.strict_gap = signed_gap > 5.0 * err;
    }
    rep.violations += c.violation ? 1 : 0;
    rep.strict_gap_found = rep.strict_gap_found || c.strict_gap;
    rep.pairs.push_back(std::move(c));
  }
  rep.pass = rep.violations == 0 && (!rep.strict_gap_required || rep.strict_gap_found || shift_pairs.empty());
  return rep;
}

std::vector<std::pair<RealVector, RealVector>> schur2_chain_pairs(const RealVector& hi, const RealVector& lo) {
  require_same_dimension(hi, lo, "schur2_chain_pairs");
  const auto chain = muirhead_chain(squared(hi), squared(lo));
  std::vector<std::pair<RealVector, RealVector>> pairs;
  for (std::size_t i = 1; i < chain.size(); ++i) {
    pairs.emplace_back(chain[i].cwiseMax(0.0).cwiseSqrt(), chain[i - 1].cwiseMax(0.0).cwiseSqrt());
  }
  return pairs;
}

RotationReport check_rotation_monotonicity(const SetSpec& set, double radius, const std::vector<double>& t_grid,
                                           const VerifyOptions& opt) {
  RotationReport rep{set, classify_set(set), radius, t_grid};
  if (!rep.character.known()) throw std::invalid_argument("check_rotation_monotonicity: set has no known Schur^2 character");
  for (double t : t_grid) {
    if (t < 0.0 || t > 0.25 * M_PI + 1e-12) throw std::invalid_argument("check_rotation_monotonicity: angles must lie in [0, pi/4]");
    RealVector x(2);
    x << radius * std::cos(t), radius * std::sin(t);
    rep.measures.push_back(measure_at(set, x, opt));
  }
  for (std::size_t i = 1; i < rep.measures.size(); ++i) {
    const MeasureEstimate& a = rep.measures[i - 1];
    const MeasureEstimate& b = rep.measures[i];
    const double slack = 3.0 * (a.abs_error + b.abs_error);
    const double step = b.value - a.value;
    bool bad = false;
    if (rep.character.spherical) {
      bad = std::abs(step) > slack;
    } else if (rep.character.value == Schur2::Convex) {
      bad = step < -slack;
    } else {
      bad = step > slack;
    }
    rep.violations += bad ? 1 : 0;
  }
  rep.pass = rep.violations == 0;
  return rep;
}

void CounterexampleConfig::validate() const {
  if (k < 2) throw std::invalid_argument("counterexample: k must be at least 2");
  if (!(epsilon > 0.0 && epsilon < std::sqrt(static_cast<double>(k)) - 1.0)) {
    throw std::invalid_argument("counterexample: epsilon must lie in (0, sqrt(k) - 1)");
  }
}

namespace {

// Area of [c0 - 1, c0 + 1] x [c1 - 1, c1 + 1] inside the disk of radius R.
double square_in_disk(double c0, double c1, double R) {
  auto height = [&](double x) {
    const double h2 = R * R - x * x;
    if (h2 <= 0.0) return 0.0;
    const double h = std::sqrt(h2);
    return std::max(0.0, std::min(c1 + 1.0, h) - std::max(c1 - 1.0, -h));
  };
  std::vector<double> breaks;
  for (double y : {c1 - 1.0, c1 + 1.0}) {
    if (std::abs(y) < R) {
      const double x = std::sqrt(R * R - y * y);
      breaks.push_back(x);
      breaks.push_back(-x);
    }
  }
  breaks.push_back(R);
  breaks.push_back(-R);
  return integrate_adaptive(height, c0 - 1.0, c0 + 1.0, 1e-14, 1e-15, breaks).value;
}

double unit_ball_volume(int k) { return std::pow(M_PI, 0.5 * k) / std::tgamma(0.5 * k + 1.0); }

}  // namespace

CounterexampleReport run_counterexample(const CounterexampleConfig& cfg, long long samples, const VerifyOptions& opt) {
  cfg.validate();
  CounterexampleReport rep;
  rep.config = cfg;
  const int k = cfg.k;
  const double kd = static_cast<double>(k);
  rep.R = cfg.big_radius();
  rep.r = cfg.small_radius();
  rep.containment_residual = (1.0 + rep.r) * (1.0 + rep.r) + (kd - 1.0) - rep.R * rep.R;
  rep.vertex_excess = std::sqrt(kd) + rep.r - rep.R;
  rep.containment_holds = std::abs(rep.containment_residual) <= 1e-12 * rep.R * rep.R && rep.r > 0.0;

  const RealVector x0 = rep.r * RealVector::Unit(k, 0);
  const RealVector x1 = (rep.r / std::sqrt(kd)) * RealVector::Ones(k);
  const auto rel = schur2_compare(x0, x1);
  rep.x_order_holds = rel == Majorization::StrictMajorizes;

  const double ball_volume = unit_ball_volume(k) * std::pow(rep.R, kd);
  rep.p0_exact = std::pow(2.0, kd) / ball_volume;

  if (k == 2) {
    rep.p0 = square_in_disk(x0[0], x0[1], rep.R) / ball_volume;
    rep.p1 = square_in_disk(x1[0], x1[1], rep.R) / ball_volume;
    rep.p0_error = rep.p1_error = 1e-12;
    rep.p1_method = "SECTION_QUADRATURE";
  } else {
    // p0 comes from uniform draws on the ball. p1 = p0_exact * q, where q is
    // the fraction of A + x1 inside the ball, sampled on the cube itself: the
    // gap is a small fraction of p1 and would drown in ball-sampling noise.
    constexpr long long kChunk = 1 << 14;
    const std::size_t chunks = static_cast<std::size_t>(std::max<long long>(1, samples / kChunk));
    const auto hits = parallel_map(chunks, resolve_workers(opt.workers), [&](std::size_t c) {
      auto engine = stream_engine(opt.seed, c);
      std::normal_distribution<double> nd;
      std::uniform_real_distribution<double> ud;
      std::uniform_real_distribution<double> side(-1.0, 1.0);
      RealVector x(k);
      std::pair<long long, long long> h{0, 0};
      for (long long i = 0; i < kChunk; ++i) {
        for (int j = 0; j < k; ++j) x[j] = nd(engine);
        x *= rep.R * std::pow(ud(engine), 1.0 / kd) / x.norm();
        if (((x - x0).cwiseAbs().array() <= 1.0).all()) ++h.first;
        for (int j = 0; j < k; ++j) x[j] = x1[j] + side(engine);
        if (x.squaredNorm() <= rep.R * rep.R) ++h.second;
      }
      return h;
    });
    long long h0 = 0;
    long long h1 = 0;
    for (const auto& h : hits) {
      h0 += h.first;
      h1 += h.second;
    }
    const double n = static_cast<double>(chunks) * kChunk;
    rep.samples = static_cast<long long>(n);
    rep.p0 = h0 / n;
    rep.p0_error = 2.0 * std::sqrt(rep.p0 * (1.0 - rep.p0) / n);
    const double q = h1 / n;
    rep.p1 = rep.p0_exact * q;
    rep.p1_error = 2.0 * rep.p0_exact * std::sqrt(q * (1.0 - q) / n);
    rep.p1_method = "CUBE_FRACTION_MC";
  }
  rep.gap_holds = rep.p0_exact - rep.p1 > 5.0 * rep.p1_error;
  const bool p0_matches = std::abs(rep.p0 - rep.p0_exact) <= 3.0 * rep.p0_error + 1e-12;
  rep.pass = rep.containment_holds && rep.vertex_excess > 0.0 && rep.x_order_holds && rep.gap_holds && p0_matches;
  return rep;
}

const char* to_string(Population p) {
  switch (p) {
    case Population::Gaussian: return "gaussian";
    case Population::UniformCube: return "uniform";
  }
  return "?";
}

EmpiricalPower empirical_power(const EmpiricalDesign& d) {
  if (d.n < 1 || d.replications < 1) throw std::invalid_argument("empirical_power: n and replications must be positive");
  if (d.theta.size() != d.k) throw DimensionError("empirical_power: theta must have k coordinates");
  constexpr int kChunk = 64;
  const int chunks = (d.replications + kChunk - 1) / kChunk;
  const double root_n = std::sqrt(static_cast<double>(d.n));
  const double half_width = std::sqrt(3.0);
  const auto counts = parallel_map(static_cast<std::size_t>(chunks), resolve_workers(d.workers), [&](std::size_t c) {
    auto engine = stream_engine(d.seed, c);
    std::normal_distribution<double> nd;
    std::uniform_real_distribution<double> ud(-half_width, half_width);
    const int first = static_cast<int>(c) * kChunk;
    const int last = std::min(d.replications, first + kChunk);
    RealVector sum(d.k);
    int rejected = 0;
    for (int rep = first; rep < last; ++rep) {
      sum.setZero();
      for (int i = 0; i < d.n; ++i) {
        for (Index j = 0; j < d.k; ++j) sum[j] += d.population == Population::Gaussian ? nd(engine) : ud(engine);
      }
      const RealVector mean = sum / static_cast<double>(d.n) + d.theta;
      if (root_n * p_mean(mean, d.p) > d.c) ++rejected;
    }
    return rejected;
  });
  long long total = 0;
  for (int r : counts) total += r;
  EmpiricalPower out;
  out.replications = d.replications;
  out.rate = static_cast<double>(total) / d.replications;
  out.std_error = std::sqrt(out.rate * (1.0 - out.rate) / d.replications);
  return out;
}

}  // namespace schur2
