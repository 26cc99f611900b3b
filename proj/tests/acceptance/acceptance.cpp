// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include "schur2/are.hpp"
#include "schur2/majorization.hpp"
#include "schur2/solvers.hpp"
#include "schur2/verify.hpp"

#include <boost/math/distributions/chi_squared.hpp>

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace schur2;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

RealVector polar(double r, double t) {
  RealVector v(2);
  v << r * std::cos(t), r * std::sin(t);
  return v;
}

RealVector vec2(double a, double b) {
  RealVector v(2);
  v << a, b;
  return v;
}

std::vector<double> quarter_grid(int n) {
  std::vector<double> t(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) t[static_cast<std::size_t>(i)] = 0.25 * M_PI * i / (n - 1);
  return t;
}

TestDesign design(Index k, double p, const RealVector& u, double alpha = 0.05, double beta = 0.95) {
  TestDesign d;
  d.k = k;
  d.p = p;
  d.alpha = alpha;
  d.beta = beta;
  d.u = normalize_direction(u);
  return d;
}

std::string fmt(double x, int digits = 6) {
  std::ostringstream os;
  os.precision(digits);
  os << x;
  return os.str();
}

// The (2, -0.4)-ball shifted by the unit vector at angle t.
Outcome pq_ball_near() {
  Outcome o{true, ""};
  const std::array<std::pair<double, double>, 2> cases{{{M_PI / 5, 0.5250}, {M_PI / 20, 0.5268}}};
  for (const auto& [angle, expected] : cases) {
    GaussianShiftQuery q{SetSpec::pq_ball(2.0, -0.4, 1.0), polar(1.0, angle)};
    q.method = Method::Polar2D;
    const auto t0 = Clock::now();
    const MeasureEstimate m = measure(q);
    const double secs = seconds_since(t0);
    const bool ok = std::abs(m.value - expected) <= 5e-4 && secs < 10.0 && !m.flagged;
    o.pass = o.pass && ok;
    o.detail += fmt(m.value) + " vs " + fmt(expected) + " (" + fmt(secs, 3) + " s) ";
  }
  return o;
}

Outcome pq_ball_far() {
  Outcome o{true, ""};
  const std::array<std::pair<double, double>, 2> cases{{{M_PI / 5, 1.5e-14}, {M_PI / 20, 1.4e-6}}};
  for (const auto& [angle, expected] : cases) {
    const GaussianShiftQuery q{SetSpec::pq_ball(2.0, -0.4, 1.0), polar(11.0, angle)};
    const auto t0 = Clock::now();
    const MeasureEstimate m = measure(q);
    const double secs = seconds_since(t0);
    const double ratio = m.value / expected;
    const bool method_ok = m.method == Method::Polar2D || m.method == Method::McImportance;
    const bool ok = ratio >= 1.0 / 1.5 && ratio <= 1.5 && secs < 60.0 && method_ok;
    o.pass = o.pass && ok;
    o.detail += fmt(m.value, 3) + " vs " + fmt(expected, 2) + " [" + to_string(m.method) + ", " + fmt(secs, 3) + " s] ";
  }
  return o;
}

Outcome are_golden() {
  const AreResult one_diag = are(design(2, 1.0, vec2(1, 1)));
  const AreResult max_coord = are(design(2, kInf, vec2(1, 0)));
  const AreResult p21 = are(design(2, 2.1, vec2(1, 0)));
  const AreResult p19 = are(design(2, 1.9, vec2(1, 1)));
  const double combined = 3.0 * (one_diag.abs_error() + max_coord.abs_error()) + 1e-12;
  const bool ok = std::abs(one_diag.are - 1.0317) <= 3e-3 && std::abs(max_coord.are - one_diag.are) <= combined &&
                  std::abs(p21.are - 1.00429) <= 3e-3 && std::abs(p19.are - 1.00459) <= 3e-3;
  return {ok, "p=1 diag " + fmt(one_diag.are, 8) + ", p=inf coord " + fmt(max_coord.are, 8) + " (|diff| " +
                  fmt(std::abs(max_coord.are - one_diag.are), 2) + " <= " + fmt(combined, 2) + "), p=2.1 coord " +
                  fmt(p21.are, 8) + ", p=1.9 diag " + fmt(p19.are, 8)};
}

Outcome chi_square_oracle() {
  double worst = 0.0;
  for (int k = 1; k <= 6; ++k) {
    const boost::math::chi_squared dist(k);
    for (double alpha : {0.1, 0.05, 0.01}) {
      const double oracle = std::sqrt(boost::math::quantile(boost::math::complement(dist, alpha)) / k);
      worst = std::max(worst, std::abs(critical_value(k, 2.0, alpha) - oracle));
    }
  }
  return {worst <= 1e-8, "max |c - sqrt(q/k)| = " + fmt(worst, 3) + " over 18 cases"};
}

std::vector<SetSpec> monotonicity_families() {
  const std::vector<SetSpec> base{SetSpec::cube(1.0), SetSpec::p_ball(1.0, 1.0), SetSpec::p_ball(3.0, 1.0)};
  std::vector<SetSpec> all = base;
  for (const SetSpec& s : base) all.push_back(s.complement());
  return all;
}

Outcome rotation_suite() {
  int violations = 0;
  int runs = 0;
  bool all_pass = true;
  for (const SetSpec& s : monotonicity_families()) {
    for (double r : {1.0, 2.0, 4.0}) {
      const RotationReport rep = check_rotation_monotonicity(s, r, quarter_grid(9));
      violations += rep.violations;
      all_pass = all_pass && rep.pass;
      ++runs;
    }
  }
  return {all_pass && violations == 0, std::to_string(runs) + " sweeps, " + std::to_string(violations) + " violations"};
}

Outcome chain_suite() {
  std::mt19937_64 rng(501);
  std::uniform_real_distribution<double> big(1.2, 2.0);
  std::uniform_real_distribution<double> small(0.05, 0.6);
  int violations = 0;
  int links = 0;
  bool all_pass = true;
  for (const SetSpec& s : monotonicity_families()) {
    for (int trial = 0; trial < 2; ++trial) {
      RealVector hi(3);
      hi << big(rng), small(rng), small(rng);
      const RealVector lo = RealVector::Constant(3, hi.norm() / std::sqrt(3.0));
      const auto pairs = schur2_chain_pairs(hi, lo);
      const Schur2Report rep = check_schur2_monotonicity(s, pairs, {static_cast<std::uint64_t>(trial + 1), 0, 1e-6});
      violations += rep.violations;
      links += static_cast<int>(pairs.size());
      all_pass = all_pass && rep.pass;
    }
  }
  return {all_pass && violations == 0, std::to_string(links) + " chain links, " + std::to_string(violations) +
                                           " violations"};
}

Outcome counterexample() {
  const CounterexampleReport r = run_counterexample({2, 0.15});
  const double exact = 4.0 / (M_PI * r.R * r.R);
  const double error = r.p0_error + r.p1_error;
  const double gap = r.p0 - r.p1;
  const bool ok = std::abs(r.R - 3.41) <= 0.01 && std::abs(r.r - 2.26) <= 0.01 && gap > 5.0 * error &&
                  std::abs(r.p0 - exact) <= 1e-12 * exact && r.containment_holds;
  return {ok, "R " + fmt(r.R, 5) + ", r " + fmt(r.r, 5) + ", P(x0) " + fmt(r.p0, 8) + " (4/(pi R^2) " + fmt(exact, 8) +
                  "), P(x1) " + fmt(r.p1, 8) + ", gap/error " + (error > 0.0 ? fmt(gap / error, 3) : "inf")};
}

Outcome are_trend() {
  const std::vector<double> alphas{1e-2, 1e-3, 1e-4};
  std::vector<double> betas;
  for (double a : alphas) betas.push_back(1.0 - a);
  const auto t0 = Clock::now();
  const std::array<std::pair<double, RealVector>, 2> cases{{{1.0, vec2(1, 1)}, {kInf, vec2(std::sqrt(2.0), 0)}}};
  bool ok = true;
  std::string detail;
  for (const auto& [p, u] : cases) {
    const auto seq = are_limit_trend(2, p, u, alphas, betas);
    const auto peak = std::max_element(seq.begin(), seq.end(),
                                       [](const AreResult& a, const AreResult& b) { return a.are < b.are; });
    bool tail_ok = true;
    for (auto it = std::next(peak); it != seq.end(); ++it) {
      const auto prev = std::prev(it);
      tail_ok = tail_ok && it->are <= prev->are + 3.0 * (it->abs_error() + prev->abs_error()) + 1e-12;
    }
    ok = ok && tail_ok && seq.back().are <= 1.05;
    detail += "p=" + fmt(p) + ":";
    for (const auto& r : seq) detail += " " + fmt(r.are, 6);
    detail += "; ";
  }
  const double secs = seconds_since(t0);
  return {ok && secs < 120.0, detail + fmt(secs, 3) + " s"};
}

Outcome power_monotone() {
  std::mt19937_64 rng(801);
  std::normal_distribution<double> nd;
  int evaluations = 0;
  int violations = 0;
  for (double p : {-kInf, 0.0, 1.0, 2.0, 3.0, kInf}) {
    for (Index k : {2, 3}) {
      const double c = critical_value(k, p, 0.05);
      for (int dir = 0; dir < 3; ++dir) {
        RealVector u(k);
        for (Index i = 0; i < k; ++i) u[i] = nd(rng);
        u = normalize_direction(u);
        double prev = -1.0;
        double prev_err = 0.0;
        for (int i = 0; i < 20; ++i) {
          const MeasureEstimate m = power(p, c, (0.25 * i) * u);
          if (!(m.value + 3.0 * (m.abs_error + prev_err) > prev)) ++violations;
          prev = m.value;
          prev_err = m.abs_error;
          ++evaluations;
        }
      }
    }
  }
  return {violations == 0, std::to_string(evaluations) + " power evaluations, " + std::to_string(violations) +
                               " violations"};
}

Outcome classification_vs_sampling() {
  const std::vector<SetSpec> sets{
      SetSpec::cube(1.0),
      SetSpec::p_ball(1.0, 1.0),
      SetSpec::p_ball(3.0, 1.0),
      SetSpec::p_ball(-1.0, 0.8),
      SetSpec::p_ball(0.0, 1.0),
      SetSpec::p_ball(kInf, 1.2),
      SetSpec::pq_ball(2.0, -0.4, 1.0),
      SetSpec::hat_ball(4.5, 1.0, std::pow(2.0, -1.0 / 4.5) + 0.01),
      SetSpec::check_ball(1.5, 1.0, 0.45),
      SetSpec::p_ball(3.0, 1.0).complement(),
      SetSpec::pq_ball(5.0, -1.0, 1.0),
      SetSpec::pq_ball(0.7, 0.7, 1.0),
  };
  bool ok = true;
  int disagreements = 0;
  std::string neither;
  std::uint64_t seed = 900;
  for (const SetSpec& s : sets) {
    const SchurCharacter c = classify_set(s);
    const MembershipProbe v = probe_membership_monotonicity(s, 100000, seed++);
    bool agree = !v.contradicts(c) && v.compared > 0;
    if (!c.known()) {
      agree = agree && v.downward > 0 && v.upward > 0;
      neither += " " + to_string(s) + " (" + std::to_string(v.downward) + " down, " + std::to_string(v.upward) + " up)";
    }
    if (!agree) {
      ++disagreements;
      std::cerr << "  disagreement: " << to_string(s) << " down " << v.downward << " up " << v.upward << "\n";
    }
    ok = ok && agree;
  }
  return {ok, std::to_string(sets.size()) + " sets, " + std::to_string(disagreements) + " disagreements; unclassified:" +
                  neither};
}

Outcome empirical_calibration() {
  bool ok = true;
  std::string detail;
  std::uint64_t seed = 1000;
  const std::array<std::pair<Index, double>, 3> cases{{{2, 1.0}, {2, 3.0}, {3, kInf}}};
  for (const auto& [k, p] : cases) {
    const TestDesign td = design(k, p, RealVector::Ones(k));
    const ShiftSolution s = shift_solution(td);
    EmpiricalDesign d;
    d.n = 400;
    d.k = k;
    d.p = p;
    d.c = s.critical;
    d.replications = 10000;
    d.theta = RealVector::Zero(k);
    d.seed = seed++;
    const EmpiricalPower size = empirical_power(d);
    d.theta = (s.t / std::sqrt(static_cast<double>(d.n))) * td.u;
    d.seed = seed++;
    const EmpiricalPower pw = empirical_power(d);
    const double se_a = std::sqrt(td.alpha * (1.0 - td.alpha) / d.replications);
    const double se_b = std::sqrt(td.beta * (1.0 - td.beta) / d.replications);
    const bool good = s.exists && std::abs(size.rate - td.alpha) <= 3.0 * se_a && std::abs(pw.rate - td.beta) <= 3.0 * se_b;
    ok = ok && good;
    detail += "(" + std::to_string(k) + "," + fmt(p) + ") size " + fmt(size.rate, 4) + " power " + fmt(pw.rate, 4) + "; ";
  }
  return {ok, detail};
}

std::string run_cli(const std::string& args, int& status) {
  const std::string cmd = std::string(SCHUR2_CLI_PATH) + " " + args + " 2>/dev/null";
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) {
    status = -1;
    return out;
  }
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int raw = pclose(pipe);
  status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return out;
}

Outcome cli_determinism() {
  const std::vector<std::string> commands{
      R"(measure --set "pqball:p=5,q=-1,eps=1" --shift "0.4,0.2,-0.1" --method MC_PLAIN --target 5e-3)",
      R"(measure --set "pqball:p=2,q=-0.4,eps=1" --shift "10.8646,1.7208" --method MC_IMPORTANCE --target 2e-2)",
      "verify power --k 3 --p inf --reps 2000 --at-shift",
      "verify counterexample --k 3 --eps 0.3 --samples 262144",
  };
  bool ok = true;
  int compared = 0;
  for (const std::string& c : commands) {
    for (const char* seed : {"3", "11"}) {
      int s1 = 0;
      const std::string base = run_cli(std::string("--seed ") + seed + " --workers 1 " + c, s1);
      // Exit code 2 marks a flagged result; the output must still match.
      ok = ok && (s1 == 0 || s1 == 2) && !base.empty();
      for (const char* w : {"2", "4"}) {
        int s2 = 0;
        const std::string other = run_cli(std::string("--seed ") + seed + " --workers " + w + " " + c, s2);
        ok = ok && s2 == s1 && other == base;
        ++compared;
      }
    }
  }
  return {ok, std::to_string(compared) + " output pairs compared over " + std::to_string(commands.size()) +
                  " MC-backed commands"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"(2,-0.4)-ball at unit shifts", pq_ball_near},
      {"(2,-0.4)-ball at radius 11", pq_ball_far},
      {"ARE golden values", are_golden},
      {"critical value vs chi-square quantile", chi_square_oracle},
      {"5a rotation monotonicity, k=2", rotation_suite},
      {"5b Schur^2 chain monotonicity, k=3", chain_suite},
      {"uniform-ball counterexample", counterexample},
      {"ARE trend as alpha -> 0", are_trend},
      {"power monotone in shift length", power_monotone},
      {"classification vs membership sampling", classification_vs_sampling},
      {"empirical size and power", empirical_calibration},
      {"CLI determinism across workers", cli_determinism},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [name, check] : criteria) {
    ++index;
    // Criterion 5 has two parts; number the lines to match.
    const int number = index <= 5 ? index : index - 1;
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  [" << number << "] " << name << ": " << o.detail << " ("
              << fmt(seconds_since(t0), 3) << " s)" << std::endl;
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
