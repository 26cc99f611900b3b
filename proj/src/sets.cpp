#include "schur2/sets.hpp"

#include "schur2/majorization.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <stdexcept>

namespace schur2 {

namespace {

void require_eps(double eps, const char* who) {
  if (!(eps > 0.0) || std::isinf(eps)) throw std::invalid_argument(std::string(who) + ": eps must be positive and finite");
}

void require_a(double a, const char* who) {
  if (!(a >= 0.0) || std::isinf(a)) throw std::invalid_argument(std::string(who) + ": a must be nonnegative and finite");
}

void require_p(double p, const char* who) {
  if (std::isnan(p)) throw std::invalid_argument(std::string(who) + ": p is NaN");
}

}  // namespace

SetSpec::SetSpec(Shape shape, bool complemented) : shape_(std::move(shape)), complemented_(complemented) {
  std::visit(
      [](auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, PBall>) {
          require_p(s.p, "pball");
          require_eps(s.eps, "pball");
        } else if constexpr (std::is_same_v<T, PqBall>) {
          require_p(s.p, "pqball");
          require_p(s.q, "pqball");
          require_eps(s.eps, "pqball");
          if (s.p < s.q) std::swap(s.p, s.q);
        } else if constexpr (std::is_same_v<T, HatBall>) {
          if (!(s.p >= 1.0)) throw std::invalid_argument("hatb: p must be >= 1");
          require_a(s.a, "hatb");
          require_eps(s.eps, "hatb");
        } else if constexpr (std::is_same_v<T, CheckBall>) {
          if (!(s.p > 0.0)) throw std::invalid_argument("checkb: p must be > 0");
          require_a(s.a, "checkb");
          require_eps(s.eps, "checkb");
        } else {
          if (!(s.a > 0.0) || std::isinf(s.a)) throw std::invalid_argument("cube: a must be positive and finite");
        }
      },
      shape_);
}

SetSpec SetSpec::p_ball(double p, double eps) { return SetSpec(PBall{p, eps}); }
SetSpec SetSpec::pq_ball(double p, double q, double eps) { return SetSpec(PqBall{p, q, eps}); }
SetSpec SetSpec::hat_ball(double p, double a, double eps) { return SetSpec(HatBall{p, a, eps}); }
SetSpec SetSpec::check_ball(double p, double a, double eps) { return SetSpec(CheckBall{p, a, eps}); }
SetSpec SetSpec::cube(double a) { return SetSpec(Cube{a}); }

bool SetSpec::is_spherical() const {
  const auto* b = std::get_if<PBall>(&shape_);
  return b != nullptr && b->p == 2.0;
}

namespace {

double shape_margin(const PBall& s, const RealVector& x) { return p_mean(x, s.p) - s.eps; }

double shape_margin(const PqBall& s, const RealVector& x) { return pq_mean(x, s.p, s.q) - s.eps; }

double shape_margin(const HatBall& s, const RealVector& x) {
  return p_mean((x.cwiseAbs().array() - s.a).matrix(), s.p) - s.eps;
}

double shape_margin(const CheckBall& s, const RealVector& x) {
  double best = kInf;
  RealVector v(x.size());
  for (Index i = 0; i < x.size(); ++i) {
    v = x;
    v[i] = std::abs(x[i]) - s.a;
    best = std::min(best, p_mean(v, s.p));
  }
  return best - s.eps;
}

double shape_margin(const Cube& s, const RealVector& x) { return x.cwiseAbs().maxCoeff() - s.a; }

}  // namespace

double SetSpec::margin(const RealVector& x) const {
  const double m = std::visit([&](const auto& s) { return shape_margin(s, x); }, shape_);
  return complemented_ ? -m : m;
}

MembershipProbe probe_membership_monotonicity(const SetSpec& set, int trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Index> dim(2, 5);
  std::uniform_real_distribution<double> scale(0.2, 2.5);
  std::uniform_real_distribution<double> lambda(0.05, 0.95);
  MembershipProbe out;
  for (int t = 0; t < trials; ++t) {
    const Index k = dim(rng);
    std::normal_distribution<double> nd(0.0, scale(rng));
    RealVector y(k);
    for (Index i = 0; i < k; ++i) y[i] = nd(rng);
    RealVector x2 = y.cwiseAbs2();
    std::uniform_int_distribution<Index> pick(0, k - 1);
    for (int step = 0; step < 2; ++step) {
      const Index i = pick(rng);
      Index j = pick(rng);
      while (j == i) j = pick(rng);
      const double l = lambda(rng);
      const double a = x2[i];
      const double b = x2[j];
      x2[i] = l * a + (1.0 - l) * b;
      x2[j] = l * b + (1.0 - l) * a;
    }
    RealVector x = x2.cwiseMax(0.0).cwiseSqrt();
    for (Index i = 0; i < k; ++i) x[i] *= (rng() & 1) ? 1.0 : -1.0;
    if (schur2_compare(y, x) != Majorization::StrictMajorizes) continue;
    ++out.compared;
    const bool in_x = set.contains(x);
    const bool in_y = set.contains(y);
    out.downward += in_y && !in_x ? 1 : 0;
    out.upward += in_x && !in_y ? 1 : 0;
  }
  return out;
}

// ---------------------------------------------------------------------------
// classification

SchurCharacter classify_set(const SetSpec& set) {
  const SchurCharacter inner = std::visit(
      [](const auto& s) -> SchurCharacter {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, PBall>) {
          return classify_mean(MeanSpec::p_mean(s.p));
        } else if constexpr (std::is_same_v<T, PqBall>) {
          return classify_mean(MeanSpec::pq_mean(s.p, s.q));
        } else if constexpr (std::is_same_v<T, HatBall>) {
          return s.p >= 2.0 ? SchurCharacter{Schur2::Convex, false} : SchurCharacter{};
        } else if constexpr (std::is_same_v<T, CheckBall>) {
          return s.p >= 1.0 && s.p <= 2.0 ? SchurCharacter{Schur2::Concave, false} : SchurCharacter{};
        } else {
          return {Schur2::Convex, false};
        }
      },
      set.shape());
  if (!set.is_complement() || inner.spherical) return inner;
  switch (inner.value) {
    case Schur2::Convex: return {Schur2::Concave, false};
    case Schur2::Concave: return {Schur2::Convex, false};
    case Schur2::NeitherKnown: return inner;
  }
  return inner;
}

// ---------------------------------------------------------------------------
// line sections
//
// Every family is symmetric under t -> -t, so sections are first computed in
// terms of a = |t| on [0, inf] and mirrored afterwards.

namespace {

using Pieces = std::vector<Interval>;

LineSection merge(Pieces v) {
  std::sort(v.begin(), v.end(), [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
  LineSection out;
  for (const Interval& iv : v) {
    if (!(iv.lo <= iv.hi)) continue;
    if (!out.empty() && iv.lo <= out.back().hi) {
      out.back().hi = std::max(out.back().hi, iv.hi);
    } else {
      out.push_back(iv);
    }
  }
  return out;
}

LineSection mirror(const Pieces& half) {
  Pieces full;
  for (const Interval& iv : half) {
    if (!(iv.lo <= iv.hi)) continue;
    if (iv.lo <= 0.0) {
      full.push_back({-iv.hi, iv.hi});
    } else {
      full.push_back({-iv.hi, -iv.lo});
      full.push_back({iv.lo, iv.hi});
    }
  }
  return merge(std::move(full));
}

std::vector<double> others(const RealVector& base, Index axis) {
  std::vector<double> rest;
  rest.reserve(static_cast<std::size_t>(base.size()));
  for (Index j = 0; j < base.size(); ++j) {
    if (j != axis) rest.push_back(std::abs(base[j]));
  }
  return rest;
}

double max_of(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, x);
  return m;
}

double min_of(const std::vector<double>& v) {
  double m = kInf;
  for (double x : v) m = std::min(m, x);
  return m;
}

// Sum of (x/eps)^p over v.
double scaled_power_sum(const std::vector<double>& v, double p, double eps) {
  double s = 0.0;
  for (double x : v) s += std::pow(x / eps, p);
  return s;
}

Pieces p_ball_half(const PBall& s, const std::vector<double>& rest, double k) {
  const bool rest_has_zero = min_of(rest) == 0.0;
  if (s.p == kInf) {
    if (max_of(rest) <= s.eps) return {{0.0, s.eps}};
    return {};
  }
  if (s.p == -kInf) {
    if (min_of(rest) <= s.eps) return {{0.0, kInf}};
    return {{0.0, s.eps}};
  }
  if (s.p == 0.0) {
    if (rest_has_zero) return {{0.0, kInf}};
    double log_h = k * std::log(s.eps);
    for (double x : rest) log_h -= std::log(x);
    return {{0.0, std::exp(log_h)}};
  }
  if (s.p < 0.0) {
    if (rest_has_zero) return {{0.0, kInf}};
    const double sum = scaled_power_sum(rest, s.p, s.eps);
    if (sum >= k) return {{0.0, kInf}};
    return {{0.0, s.eps * std::pow(k - sum, 1.0 / s.p)}};
  }
  const double budget = k - scaled_power_sum(rest, s.p, s.eps);
  if (budget < 0.0) return {};
  return {{0.0, s.eps * std::pow(budget, 1.0 / s.p)}};
}

// Largest a_in-side point of a membership change between a_in and a_out.
double bisect_boundary(const std::function<bool(double)>& member, double a_in, double a_out) {
  for (int it = 0; it < 400; ++it) {
    const double lo = std::min(a_in, a_out);
    const double hi = std::max(a_in, a_out);
    if (hi - lo <= 1e-15 * hi || hi - lo < 1e-300) break;
    const double mid = (lo > 0.0 && hi / lo > 4.0) ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (member(mid) ? a_in : a_out) = mid;
  }
  return a_in;
}

// Scan candidate points in increasing order; between consecutive candidates
// the membership changes at most once.
// The last point stands in for infinity.
Pieces scan_sections(const std::function<bool(double)>& member, const std::vector<double>& pts) {
  Pieces out;
  bool prev = member(pts.front());
  double start = prev ? pts.front() : 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const bool cur = member(pts[i]);
    if (cur != prev) {
      const double edge = prev ? bisect_boundary(member, pts[i - 1], pts[i])
                               : bisect_boundary(member, pts[i], pts[i - 1]);
      if (prev) {
        out.push_back({start, edge});
      } else {
        start = edge;
      }
      prev = cur;
    }
  }
  if (prev) out.push_back({start, kInf});
  return out;
}

Pieces pq_ball_half(const PqBall& s, const RealVector& base, Index axis) {
  RealVector x = base;
  auto member = [&](double a) {
    x[axis] = a;
    return pq_mean(x, s.p, s.q) <= s.eps;
  };
  const std::vector<double> rest = others(base, axis);
  if (s.q < 0.0 && !rest.empty() && min_of(rest) == 0.0) return {{0.0, kInf}};

  const double scale = std::max({1.0, s.eps, max_of(rest)});
  const double big = 1e100 * scale;
  std::vector<double> pts{0.0};
  if (s.p == s.q) {
    for (double e = -15.0; e <= 15.0; e += 0.02) pts.push_back(scale * std::pow(10.0, e));
  } else if (s.p * s.q > 0.0 && std::isfinite(s.p) && std::isfinite(s.q)) {
    // Stationary point of a^p - eps^(p-q) a^q, independent of the other coordinates.
    pts.push_back(s.eps * std::pow(s.q / s.p, 1.0 / (s.p - s.q)));
  } else if (!std::isfinite(s.p) || !std::isfinite(s.q)) {
    for (double e = -15.0; e <= 15.0; e += 0.02) pts.push_back(scale * std::pow(10.0, e));
  }
  pts.push_back(big);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return scan_sections(member, pts);
}

Pieces hat_ball_half(const HatBall& s, const std::vector<double>& rest, double k) {
  double h = 0.0;
  if (s.p == kInf) {
    double worst = 0.0;
    for (double x : rest) worst = std::max(worst, std::abs(x - s.a));
    if (worst > s.eps) return {};
    h = s.eps;
  } else {
    double sum = 0.0;
    for (double x : rest) sum += std::pow(std::abs(x - s.a) / s.eps, s.p);
    const double budget = k - sum;
    if (budget < 0.0) return {};
    h = s.eps * std::pow(budget, 1.0 / s.p);
  }
  return {{std::max(0.0, s.a - h), s.a + h}};
}

Pieces check_ball_half(const CheckBall& s, const std::vector<double>& rest, double k) {
  // reach(v) = largest allowed deviation of the axis coordinate given the
  // deviations v of the other coordinates.
  auto reach = [&](const std::vector<double>& dev) -> double {
    if (s.p == kInf) return max_of(dev) <= s.eps ? s.eps : -1.0;
    const double budget = k - scaled_power_sum(dev, s.p, s.eps);
    return budget < 0.0 ? -1.0 : s.eps * std::pow(budget, 1.0 / s.p);
  };
  Pieces out;
  // Shifted candidate along the axis itself.
  if (const double h = reach(rest); h >= 0.0) out.push_back({std::max(0.0, s.a - h), s.a + h});
  // Shifted candidate along another coordinate i.
  for (std::size_t i = 0; i < rest.size(); ++i) {
    std::vector<double> dev = rest;
    dev[i] = std::abs(rest[i] - s.a);
    if (const double h = reach(dev); h >= 0.0) out.push_back({0.0, h});
  }
  return out;
}

Pieces cube_half(const Cube& s, const std::vector<double>& rest) {
  if (max_of(rest) <= s.a) return {{0.0, s.a}};
  return {};
}

LineSection complement_of(const LineSection& in) {
  LineSection out;
  double cursor = -kInf;
  for (const Interval& iv : in) {
    if (iv.lo > cursor) out.push_back({cursor, iv.lo});
    cursor = iv.hi;
  }
  if (cursor < kInf) out.push_back({cursor, kInf});
  return out;
}

}  // namespace

LineSection line_interval(const SetSpec& set, const RealVector& base, Index axis) {
  if (axis < 0 || axis >= base.size()) throw DimensionError("line_interval: axis out of range");
  const double k = static_cast<double>(base.size());
  const std::vector<double> rest = others(base, axis);
  const Pieces half = std::visit(
      [&](const auto& s) -> Pieces {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, PBall>) return p_ball_half(s, rest, k);
        else if constexpr (std::is_same_v<T, PqBall>) return pq_ball_half(s, base, axis);
        else if constexpr (std::is_same_v<T, HatBall>) return hat_ball_half(s, rest, k);
        else if constexpr (std::is_same_v<T, CheckBall>) return check_ball_half(s, rest, k);
        else return cube_half(s, rest);
      },
      set.shape());
  LineSection section = mirror(half);
  if (!set.is_complement()) return section;
  return complement_of(section);
}

// ---------------------------------------------------------------------------
// text form

std::string format_double(double v) {
  if (v == kInf) return "inf";
  if (v == -kInf) return "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size() || std::isnan(v)) {
    throw std::invalid_argument("not a number: '" + std::string(text) + "'");
  }
  return v;
}

std::string to_string(const SetSpec& set) {
  const std::string inner = std::visit(
      [](const auto& s) -> std::string {
        using T = std::decay_t<decltype(s)>;
        const auto f = format_double;
        if constexpr (std::is_same_v<T, PBall>) return "pball:p=" + f(s.p) + ",eps=" + f(s.eps);
        else if constexpr (std::is_same_v<T, PqBall>)
          return "pqball:p=" + f(s.p) + ",q=" + f(s.q) + ",eps=" + f(s.eps);
        else if constexpr (std::is_same_v<T, HatBall>)
          return "hatb:p=" + f(s.p) + ",a=" + f(s.a) + ",eps=" + f(s.eps);
        else if constexpr (std::is_same_v<T, CheckBall>)
          return "checkb:p=" + f(s.p) + ",a=" + f(s.a) + ",eps=" + f(s.eps);
        else return "cube:a=" + f(s.a);
      },
      set.shape());
  return set.is_complement() ? "complement(" + inner + ")" : inner;
}

SetSpec parse_set(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  constexpr std::string_view kComp = "complement(";
  if (text.substr(0, kComp.size()) == kComp) {
    if (text.back() != ')') throw std::invalid_argument("parse_set: unbalanced complement(...)");
    return parse_set(text.substr(kComp.size(), text.size() - kComp.size() - 1)).complement();
  }
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw std::invalid_argument("parse_set: expected '<family>:<params>'");
  const std::string family(trim(text.substr(0, colon)));
  std::map<std::string, double, std::less<>> params;
  std::string_view rest = text.substr(colon + 1);
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string_view item = rest.substr(0, comma);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) throw std::invalid_argument("parse_set: expected key=value");
    const std::string key(trim(item.substr(0, eq)));
    if (!params.emplace(key, parse_double(item.substr(eq + 1))).second) {
      throw std::invalid_argument("parse_set: duplicate key '" + key + "'");
    }
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }

  auto take = [&](std::initializer_list<const char*> keys) {
    std::vector<double> vals;
    for (const char* key : keys) {
      const auto it = params.find(key);
      if (it == params.end()) throw std::invalid_argument("parse_set: " + family + " needs '" + key + "'");
      vals.push_back(it->second);
      params.erase(it);
    }
    if (!params.empty()) {
      throw std::invalid_argument("parse_set: unknown key '" + params.begin()->first + "' for " + family);
    }
    return vals;
  };

  if (family == "pball") {
    const auto v = take({"p", "eps"});
    return SetSpec::p_ball(v[0], v[1]);
  }
  if (family == "pqball") {
    const auto v = take({"p", "q", "eps"});
    return SetSpec::pq_ball(v[0], v[1], v[2]);
  }
  if (family == "hatb") {
    const auto v = take({"p", "a", "eps"});
    return SetSpec::hat_ball(v[0], v[1], v[2]);
  }
  if (family == "checkb") {
    const auto v = take({"p", "a", "eps"});
    return SetSpec::check_ball(v[0], v[1], v[2]);
  }
  if (family == "cube") {
    const auto v = take({"a"});
    return SetSpec::cube(v[0]);
  }
  throw std::invalid_argument("parse_set: unknown family '" + family + "'");
}

}  // namespace schur2
