#include "schur2/figures.hpp"

#include "ray_scan.hpp"
#include "schur2/are.hpp"

#include <cmath>

namespace schur2 {

using Cell = nlohmann::ordered_json;

namespace {

Cell num(double v) {
  if (std::isfinite(v)) return v;
  return v > 0 ? "inf" : "-inf";
}

}  // namespace

double psi(double x) {
  if (std::isinf(x)) return x > 0 ? 1.0 : -1.0;
  return 2.0 * x / (2.0 * std::abs(x) + 3.0);
}

std::vector<SetSpec> figure1_sets() {
  return {
      SetSpec::pq_ball(0.0, -1.0, 1.0),  SetSpec::pq_ball(2.0, -0.4, 1.0), SetSpec::pq_ball(5.0, -1.0, 1.0),
      SetSpec::pq_ball(0.7, 0.7, 1.0),   SetSpec::pq_ball(2.0, 2.0, 1.0),  SetSpec::pq_ball(1.0, 0.0, 1.0),
      SetSpec::pq_ball(4.0, 1.0, 1.0),   SetSpec::hat_ball(4.5, 1.0, std::pow(2.0, -1.0 / 4.5) + 0.01),
      SetSpec::check_ball(1.5, 1.0, 0.45),
  };
}

Table figure1(const FigureOptions& opt) {
  Table t{"figure1", {"panel", "set", "classification", "x", "y"}, {}};
  const RealVector origin = RealVector::Zero(2);
  int panel = 0;
  for (const SetSpec& set : figure1_sets()) {
    ++panel;
    const std::string name = to_string(set);
    const char* cls = to_string(classify_set(set).value);
    for (int i = 0; i < opt.rays; ++i) {
      const double phi = 2.0 * M_PI * i / opt.rays;
      RealVector dir(2);
      dir << std::cos(phi), std::sin(phi);
      for (const Interval& iv : detail::ray_section(set, origin, 1.0, dir, opt.clip, 4096)) {
        for (double rho : {iv.lo, iv.hi}) {
          if (rho > 0.0 && rho < opt.clip) {
            t.rows.push_back({panel, name, cls, rho * dir[0], rho * dir[1]});
          }
        }
      }
    }
  }
  return t;
}

Table figure2(const FigureOptions& opt) {
  Table t{"figure2", {"radius", "angle", "value", "abs_error", "method", "flagged"}, {}};
  const SetSpec set = SetSpec::pq_ball(2.0, -0.4, 1.0);
  for (double r : {1.0, 11.0}) {
    for (double a : {M_PI / 5.0, M_PI / 20.0}) {
      GaussianShiftQuery q{set, r * RealVector::Unit(2, 0)};
      q.shift = rotate2(q.shift, a);
      q.seed = opt.solver.seed;
      q.workers = opt.solver.workers;
      const MeasureEstimate e = measure(q);
      t.rows.push_back({r, a, e.value, e.abs_error, to_string(e.method), e.flagged});
    }
  }
  return t;
}

Table figure3(const FigureOptions& opt) {
  Table t{"figure3",
          {"p", "psi_p_over_4", "are_diagonal", "psi_are_diagonal", "error_diagonal", "are_coordinate", "psi_are_coordinate",
           "error_coordinate"},
          {}};
  const std::vector<double> ps{-kInf, -10.0, -5.0, -3.0, -2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 1.5,
                               1.9,   2.0,   2.1,  2.5,  3.0,  4.0,  5.0,  10.0, kInf};
  for (double p : ps) {
    const AreExtremes e = are_extremes(2, p, 0.05, 0.95, opt.solver);
    t.rows.push_back({num(p), psi(p / 4.0), e.diagonal.are, psi(e.diagonal.are), e.diagonal.error, e.coordinate.are,
                      psi(e.coordinate.are), e.coordinate.error});
  }
  return t;
}

Table figure4(const FigureOptions& opt) {
  Table t{"figure4", {"p", "angle", "are", "error", "above_one"}, {}};
  for (double p : {2.1, 1.9}) {
    for (const SweepPoint& s : are_direction_sweep(p, 0.05, 0.95, opt.angles, opt.solver)) {
      t.rows.push_back({p, s.angle, s.result.are, s.result.error, s.result.are > 1.0});
    }
  }
  return t;
}

}  // namespace schur2
