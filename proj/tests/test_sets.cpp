#include "generators.hpp"
#include "schur2/sets.hpp"

#include <gtest/gtest.h>

namespace schur2 {
namespace {

using testing::Rng;

RealVector vec(std::initializer_list<double> xs) {
  RealVector v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

TEST(Contains, Examples) {
  EXPECT_TRUE(SetSpec::p_ball(2.0, 1.0).contains(RealVector::Ones(5)));
  EXPECT_FALSE(SetSpec::p_ball(2.0, 1.0).contains((1.0 + 1e-12) * RealVector::Ones(5)));
  const SetSpec pq = SetSpec::pq_ball(2.0, -0.4, 1.0);
  for (double t : {0.0, 1.0, 1e3, -1e8}) {
    EXPECT_TRUE(pq.contains(vec({t, 0.0})));
    EXPECT_TRUE(pq.contains(vec({0.0, 0.0, t})));
  }
  EXPECT_TRUE(SetSpec::cube(1.0).contains(vec({1.0, -1.0})));
  EXPECT_FALSE(SetSpec::cube(1.0).contains(vec({1.0, -1.0 - 1e-15})));
}

TEST(Contains, HatCentersAreMembers) {
  for (Index k = 1; k <= 4; ++k) {
    const SetSpec hat = SetSpec::hat_ball(4.5, 1.3, 0.2);
    for (const auto& g : enumerate_group(k)) {
      EXPECT_TRUE(hat.contains(g.apply((1.3 * RealVector::Ones(k)).eval())));
    }
    EXPECT_FALSE(hat.contains(RealVector::Zero(k)));
  }
}

TEST(Contains, CounterexampleVertexLeavesTheBall) {
  // The far vertex (1 + r / sqrt k) 1 of the cube around x1 = (r / sqrt k) 1.
  const int k = 2;
  const double eps = 0.15;
  const double R = (eps * eps + k - 1) / (2 * eps);
  const double r = R - 1 - eps;
  const RealVector vertex = (1.0 + r / std::sqrt(2.0)) * RealVector::Ones(k);
  EXPECT_FALSE(SetSpec::p_ball(2.0, R / std::sqrt(2.0)).contains(vertex));
  EXPECT_NEAR(vertex.norm() - R, std::sqrt(2.0) + r - R, 1e-12);
}

TEST(Contains, ComplementTogglesAndCollapses) {
  const SetSpec s = SetSpec::p_ball(3.0, 1.0);
  EXPECT_EQ(s.complement().complement(), s);
  const RealVector x = vec({0.3, 0.4});
  EXPECT_NE(s.contains(x), s.complement().contains(x));
}

TEST(Construction, RejectsInvalidParameters) {
  EXPECT_THROW(SetSpec::p_ball(2.0, 0.0), std::invalid_argument);
  EXPECT_THROW(SetSpec::p_ball(2.0, -1.0), std::invalid_argument);
  EXPECT_THROW(SetSpec::hat_ball(0.5, 1.0, 1.0), std::invalid_argument);
  EXPECT_THROW(SetSpec::hat_ball(2.0, -1.0, 1.0), std::invalid_argument);
  EXPECT_THROW(SetSpec::check_ball(0.0, 1.0, 1.0), std::invalid_argument);
  EXPECT_THROW(SetSpec::cube(0.0), std::invalid_argument);
  EXPECT_THROW(SetSpec::p_ball(std::nan(""), 1.0), std::invalid_argument);
}

TEST(SetsProperty, MembershipIsGroupInvariant) {
  Rng rng(31);
  for (const SetSpec& s : testing::all_families()) {
    for (int trial = 0; trial < 500; ++trial) {
      const Index k = testing::random_dim(rng, 1, 6);
      const RealVector x = testing::random_vector(rng, k, 1.2);
      EXPECT_EQ(s.contains(GroupElement::random(k, rng).apply(x)), s.contains(x)) << to_string(s);
    }
  }
}

// Explicit minimum over the orbit of centers.
bool hat_brute_force(double p, double a, double eps, const RealVector& x) {
  const Index k = x.size();
  for (long mask = 0; mask < (1L << k); ++mask) {
    RealVector center(k);
    for (Index j = 0; j < k; ++j) center[j] = (mask >> j) & 1 ? a : -a;
    if (p_mean(x - center, p) <= eps * (1.0 + 1e-12)) return true;
  }
  return false;
}

bool check_brute_force(double p, double a, double eps, const RealVector& x) {
  const Index k = x.size();
  for (Index i = 0; i < k; ++i) {
    for (double s : {-1.0, 1.0}) {
      RealVector y = x;
      y[i] -= s * a;
      if (p_mean(y, p) <= eps * (1.0 + 1e-12)) return true;
    }
  }
  return false;
}

TEST(SetsProperty, HatReductionMatchesOrbitSearch) {
  Rng rng(32);
  int inside = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    const Index k = testing::random_dim(rng, 1, 6);
    const double p = std::uniform_real_distribution<double>(1.0, 6.0)(rng);
    const double a = std::uniform_real_distribution<double>(0.0, 1.5)(rng);
    const double eps = std::uniform_real_distribution<double>(0.2, 1.5)(rng);
    const RealVector x = testing::random_vector(rng, k, 1.0);
    const bool fast = SetSpec::hat_ball(p, a, eps).contains(x);
    const double margin = std::abs(std::pow(p_mean((x.cwiseAbs().array() - a).matrix().eval(), p) / eps, p) - 1.0);
    if (margin < 1e-9) continue;
    EXPECT_EQ(fast, hat_brute_force(p, a, eps, x));
    inside += fast ? 1 : 0;
  }
  EXPECT_GT(inside, 200);
}

TEST(SetsProperty, CheckReductionMatchesOrbitSearch) {
  Rng rng(33);
  int inside = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    const Index k = testing::random_dim(rng, 1, 6);
    const double p = std::uniform_real_distribution<double>(0.3, 6.0)(rng);
    const double a = std::uniform_real_distribution<double>(0.0, 1.5)(rng);
    const double eps = std::uniform_real_distribution<double>(0.2, 1.5)(rng);
    const RealVector x = testing::random_vector(rng, k, 1.0);
    const bool fast = SetSpec::check_ball(p, a, eps).contains(x);
    EXPECT_EQ(fast, check_brute_force(p, a, eps, x));
    inside += fast ? 1 : 0;
  }
  EXPECT_GT(inside, 200);
}

TEST(ClassifySet, Examples) {
  EXPECT_EQ(classify_set(SetSpec::check_ball(1.5, 1.0, 0.45)).value, Schur2::Concave);
  EXPECT_EQ(classify_set(SetSpec::pq_ball(0.7, 0.7, 1.0)).value, Schur2::NeitherKnown);
  EXPECT_EQ(classify_set(SetSpec::pq_ball(5.0, -1.0, 1.0)).value, Schur2::NeitherKnown);
  EXPECT_EQ(classify_set(SetSpec::p_ball(2.0, 1.0).complement()).value, Schur2::Convex);
  EXPECT_TRUE(classify_set(SetSpec::p_ball(2.0, 1.0).complement()).spherical);
  EXPECT_EQ(classify_set(SetSpec::cube(1.0)).value, Schur2::Convex);
  EXPECT_EQ(classify_set(SetSpec::cube(1.0).complement()).value, Schur2::Concave);
  EXPECT_EQ(classify_set(SetSpec::p_ball(1.0, 1.0)).value, Schur2::Concave);
  EXPECT_EQ(classify_set(SetSpec::p_ball(3.0, 1.0)).value, Schur2::Convex);
  EXPECT_EQ(classify_set(SetSpec::hat_ball(4.5, 1.0, 0.86)).value, Schur2::Convex);
  EXPECT_EQ(classify_set(SetSpec::hat_ball(1.5, 1.0, 0.86)).value, Schur2::NeitherKnown);
  EXPECT_EQ(classify_set(SetSpec::check_ball(3.0, 1.0, 0.45)).value, Schur2::NeitherKnown);
  EXPECT_EQ(classify_set(SetSpec::pq_ball(2.0, -0.4, 1.0)).value, Schur2::Concave);
}

TEST(SetsProperty, ClassificationMatchesMembershipMonotonicity) {
  std::uint64_t seed = 34;
  for (const SetSpec& s : testing::classified_sets()) {
    const SchurCharacter c = classify_set(s);
    const MembershipProbe v = probe_membership_monotonicity(s, 10000, seed++);
    EXPECT_GT(v.compared, 9000) << to_string(s);
    if (c.convex()) EXPECT_EQ(v.downward, 0) << to_string(s);
    if (c.concave()) EXPECT_EQ(v.upward, 0) << to_string(s);
    EXPECT_FALSE(v.contradicts(c)) << to_string(s);
  }
}

TEST(SetsProperty, NeitherExamplesViolateBothDirections) {
  for (const SetSpec& s : {SetSpec::pq_ball(5.0, -1.0, 1.0), SetSpec::pq_ball(0.7, 0.7, 1.0)}) {
    const MembershipProbe v = probe_membership_monotonicity(s, 100000, 35);
    EXPECT_GT(v.downward, 0) << to_string(s);
    EXPECT_GT(v.upward, 0) << to_string(s);
  }
}

TEST(LineInterval, Examples) {
  const LineSection circle = line_interval(SetSpec::p_ball(2.0, 1.0), vec({0.0, 0.0}), 0);
  ASSERT_EQ(circle.size(), 1u);
  EXPECT_NEAR(circle[0].lo, -std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(circle[0].hi, std::sqrt(2.0), 1e-12);

  const LineSection cube = line_interval(SetSpec::cube(1.0), vec({0.3, 0.0, -1.0}), 1);
  ASSERT_EQ(cube.size(), 1u);
  EXPECT_EQ(cube[0], (Interval{-1.0, 1.0}));

  const LineSection diamond = line_interval(SetSpec::p_ball(1.0, 1.0), vec({0.0, 0.5}), 0);
  ASSERT_EQ(diamond.size(), 1u);
  EXPECT_NEAR(diamond[0].lo, -1.5, 1e-12);
  EXPECT_NEAR(diamond[0].hi, 1.5, 1e-12);

  const LineSection outside = line_interval(SetSpec::p_ball(2.0, 1.0).complement(), vec({0.0, 0.0}), 0);
  ASSERT_EQ(outside.size(), 2u);
  EXPECT_EQ(outside[0].lo, -kInf);
  EXPECT_NEAR(outside[0].hi, -std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(outside[1].lo, std::sqrt(2.0), 1e-12);
  EXPECT_EQ(outside[1].hi, kInf);

  EXPECT_TRUE(line_interval(SetSpec::cube(1.0), vec({0.0, 2.0}), 0).empty());
  const LineSection axis = line_interval(SetSpec::pq_ball(2.0, -0.4, 1.0), vec({0.0, 0.0}), 0);
  ASSERT_EQ(axis.size(), 1u);
  EXPECT_EQ(axis[0], (Interval{-kInf, kInf}));
}

bool in_section(const LineSection& sec, double t) {
  for (const Interval& iv : sec) {
    if (t >= iv.lo && t <= iv.hi) return true;
  }
  return false;
}

TEST(LineIntervalProperty, EndpointsSeparateMembership) {
  Rng rng(36);
  for (const SetSpec& s : testing::all_families()) {
    for (int trial = 0; trial < 200; ++trial) {
      const Index k = testing::random_dim(rng, 1, 4);
      RealVector base = testing::random_vector(rng, k, 0.7);
      const Index axis = std::uniform_int_distribution<Index>(0, k - 1)(rng);
      const LineSection sec = line_interval(s, base, axis);
      auto member = [&](double t) {
        base[axis] = t;
        return s.contains(base);
      };
      for (std::size_t i = 0; i < sec.size(); ++i) {
        const Interval& iv = sec[i];
        ASSERT_LE(iv.lo, iv.hi);
        if (i > 0) EXPECT_LT(sec[i - 1].hi, iv.lo);
        const double mid = std::isfinite(iv.lo) && std::isfinite(iv.hi) ? 0.5 * (iv.lo + iv.hi)
                           : std::isfinite(iv.lo)                       ? iv.lo + 1.0
                           : std::isfinite(iv.hi)                       ? iv.hi - 1.0
                                                                        : 0.0;
        EXPECT_TRUE(member(mid)) << to_string(s);
        for (double e : {iv.lo, iv.hi}) {
          if (!std::isfinite(e)) continue;
          const double h = 1e-9 * std::max(1.0, std::abs(e));
          const double out = e == iv.lo ? e - h : e + h;
          const double in = e == iv.lo ? e + h : e - h;
          if (!in_section(sec, out)) EXPECT_FALSE(member(out)) << to_string(s) << " at " << e;
          if (iv.hi - iv.lo > 2 * h) EXPECT_TRUE(member(in)) << to_string(s) << " at " << e;
        }
      }
      // A coarse scan never finds members outside the section.
      for (int i = -60; i <= 60; ++i) {
        const double t = 0.05 * i + 1e-3;
        bool near_end = false;
        for (const Interval& iv : sec) {
          near_end = near_end || std::abs(t - iv.lo) < 1e-7 || std::abs(t - iv.hi) < 1e-7;
        }
        if (!near_end) EXPECT_EQ(member(t), in_section(sec, t)) << to_string(s) << " t=" << t;
      }
    }
  }
}

TEST(SetText, Examples) {
  EXPECT_EQ(to_string(SetSpec::p_ball(2.0, 1.0)), "pball:p=2,eps=1");
  EXPECT_EQ(to_string(SetSpec::pq_ball(2.0, -0.4, 1.0)), "pqball:p=2,q=-0.4,eps=1");
  EXPECT_EQ(to_string(SetSpec::p_ball(3.0, 1.0).complement()), "complement(pball:p=3,eps=1)");
  EXPECT_EQ(parse_set("pball:p=2.0,eps=1.0"), SetSpec::p_ball(2.0, 1.0));
  EXPECT_EQ(parse_set("hatb:p=4.5,a=1,eps=0.849"), SetSpec::hat_ball(4.5, 1.0, 0.849));
  EXPECT_EQ(parse_set("complement(pball:p=3,eps=1)"), SetSpec::p_ball(3.0, 1.0).complement());
  EXPECT_EQ(parse_set("complement(complement(cube:a=2))"), SetSpec::cube(2.0));
  EXPECT_EQ(parse_set("pqball:eps=1,q=2,p=-0.4"), SetSpec::pq_ball(2.0, -0.4, 1.0));
  EXPECT_EQ(parse_set("pball:p=-inf,eps=0.5"), SetSpec::p_ball(-kInf, 0.5));
}

TEST(SetText, RejectsMalformedInput) {
  for (const char* bad : {"", "pball", "pball:p=2", "pball:p=2,eps=1,eps=1", "pball:p=2,eps=1,q=3", "ball:p=2,eps=1",
                          "complement(pball:p=2,eps=1", "pball:p=x,eps=1", "cube:a=-1", "pball:p=2,eps=1)"}) {
    EXPECT_THROW(parse_set(bad), std::invalid_argument) << bad;
  }
}

TEST(SetTextProperty, RoundTripsExactly) {
  Rng rng(37);
  std::uniform_real_distribution<double> ud(-10.0, 10.0);
  std::uniform_real_distribution<double> pos(1e-6, 10.0);
  for (int trial = 0; trial < 2000; ++trial) {
    SetSpec s = SetSpec::cube(pos(rng));
    switch (trial % 5) {
      case 0: s = SetSpec::p_ball(ud(rng), pos(rng)); break;
      case 1: s = SetSpec::pq_ball(ud(rng), ud(rng), pos(rng)); break;
      case 2: s = SetSpec::hat_ball(1.0 + pos(rng), pos(rng), pos(rng)); break;
      case 3: s = SetSpec::check_ball(pos(rng), pos(rng), pos(rng)); break;
      default: break;
    }
    if (rng() & 1) s = s.complement();
    EXPECT_EQ(parse_set(to_string(s)), s) << to_string(s);
  }
  for (double v : {0.1, 1.0 / 3.0, 1e-300, 5e-324, 1.7976931348623157e308, -kInf, kInf}) {
    EXPECT_EQ(parse_double(format_double(v)), v);
  }
}

}  // namespace
}  // namespace schur2
