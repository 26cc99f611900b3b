// Command-line front end for the schur2 library.

#include "schur2/are.hpp"
#include "schur2/figures.hpp"
#include "schur2/serialize.hpp"
#include "schur2/verify.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace {

using schur2::Json;
using schur2::RealVector;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitFlagged = 2;

struct Globals {
  std::uint64_t seed = 0;
  int workers = 0;
  std::string output;
  std::string format = "json";
  bool timing = false;
};

// What a command hands back: the JSON record, the rows used for CSV and
// whether any computation missed its accuracy or verification target.
struct Result {
  Json record;
  Json rows;
  bool flagged = false;
};

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    const auto last = item.find_last_not_of(" \t");
    if (first == std::string::npos) throw std::invalid_argument("empty entry in list '" + text + "'");
    out.push_back(schur2::parse_double(std::string_view(item).substr(first, last - first + 1)));
  }
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

RealVector parse_vector(const std::string& text) {
  const std::vector<double> v = parse_list(text);
  return Eigen::Map<const RealVector>(v.data(), static_cast<schur2::Index>(v.size()));
}

// Resolves --k against an optional vector flag.
schur2::Index dimension(int k, const std::string& vector_text, const char* name) {
  if (vector_text.empty()) {
    if (k < 1) throw std::invalid_argument(std::string("--k must be positive"));
    return k;
  }
  const RealVector v = parse_vector(vector_text);
  if (k > 0 && k != v.size()) {
    throw std::invalid_argument(std::string("--k disagrees with the length of ") + name);
  }
  return v.size();
}

RealVector direction(schur2::Index k, const std::string& u_text) {
  const RealVector u = u_text.empty() ? RealVector(RealVector::Ones(k)) : parse_vector(u_text);
  return schur2::normalize_direction(u);
}

Json number(double v) {
  if (std::isfinite(v)) return v;
  return v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
}

struct SolverFlags {
  double quad_target = 1e-9;
  long long mc_samples = 1LL << 20;

  void attach(CLI::App* cmd) {
    cmd->add_option("--quad-target", quad_target, "Relative accuracy of quadrature-backed power evaluations")
        ->capture_default_str();
    cmd->add_option("--mc-samples", mc_samples, "Samples per power evaluation on Monte Carlo paths")
        ->capture_default_str();
  }

  schur2::SolverOptions options(const Globals& g) const {
    schur2::SolverOptions o;
    o.seed = g.seed;
    o.workers = g.workers;
    o.quadrature_target = quad_target;
    o.mc_samples = mc_samples;
    return o;
  }
};

struct DesignFlags {
  int k = 0;
  double p = 2.0;
  double alpha = 0.05;
  double beta = 0.95;
  std::string u;

  void attach(CLI::App* cmd, bool with_beta, bool with_u) {
    cmd->add_option("--k", k, "Dimension (inferred from --u when omitted; default 2)");
    cmd->add_option("--p", p, "Mean exponent; accepts inf and -inf")->capture_default_str();
    cmd->add_option("--alpha", alpha, "Test size")->capture_default_str();
    if (with_beta) cmd->add_option("--beta", beta, "Target power")->capture_default_str();
    if (with_u) cmd->add_option("--u", u, "Direction, comma separated; rescaled to unit 2-mean (default all ones)");
  }

  schur2::Index dim() const { return dimension(k == 0 && u.empty() ? 2 : k, u, "--u"); }

  schur2::TestDesign design() const {
    schur2::TestDesign d;
    d.k = dim();
    d.p = p;
    d.alpha = alpha;
    d.beta = beta;
    d.u = direction(d.k, u);
    d.validate();
    return d;
  }
};

Json table_rows(const schur2::Table& t) {
  Json rows = Json::array();
  for (const auto& r : t.rows) {
    Json o;
    for (std::size_t i = 0; i < t.columns.size(); ++i) o[t.columns[i]] = r[i];
    rows.push_back(std::move(o));
  }
  return rows;
}

void emit(const Result& r, const Globals& g) {
  std::string text;
  if (g.format == "csv") {
    // A figure bundle is emitted as one CSV block per table.
    if (r.record.is_object() && r.record.contains("figures")) {
      for (const auto& f : r.record.at("figures")) {
        text += "# " + f.at("figure").get<std::string>() + "\n" + schur2::to_csv(f.at("rows")) + "\n";
      }
    } else {
      text = schur2::to_csv(r.rows.is_null() ? r.record : r.rows);
    }
  } else {
    text = r.record.dump(2) + "\n";
  }
  if (g.output.empty() || g.output == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(g.output);
  if (!out) throw std::runtime_error("cannot open output file " + g.output);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian measures of shifted Schur^2 sets, p-mean test power and efficiency"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--seed", g.seed, "Seed for every stochastic computation")->capture_default_str();
  // SCHUR2_WORKERS is checked by hand below: CLI11 drops invalid environment
  // values silently.
  app.add_option("--workers", g.workers, "Worker threads (0: SCHUR2_WORKERS, then all cores)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  app.add_option("--output,-o", g.output, "Write to this file instead of stdout");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  app.add_flag("--timing", g.timing, "Include wall-clock times in measure records");

  std::function<Result()> run;

  // measure
  auto* cmd_measure = app.add_subcommand("measure", "P(Z in A + shift) for Z ~ N(0, sigma^2 I)");
  std::string m_set, m_shift, m_method = "auto";
  int m_k = 0;
  double m_sigma = 1.0, m_target = 0.0;
  long long m_samples = 0, m_max_samples = 1LL << 24;
  cmd_measure->add_option("--set", m_set, "Set in text form, e.g. pqball:p=2,q=-0.4,eps=1")->required();
  cmd_measure->add_option("--shift", m_shift, "Shift vector, comma separated")->required();
  cmd_measure->add_option("--k", m_k, "Dimension; must match the shift when given");
  cmd_measure->add_option("--sigma", m_sigma, "Gaussian scale")->capture_default_str();
  cmd_measure->add_option("--target", m_target, "Relative error target (0: 1e-4 quadrature, 1e-2 Monte Carlo)")
      ->capture_default_str();
  cmd_measure->add_option("--method", m_method, "auto, PRODUCT_1D, CHI_SQUARE, SLICE_QUAD, POLAR2D, MC_PLAIN or MC_IMPORTANCE")
      ->capture_default_str();
  cmd_measure->add_option("--samples", m_samples, "Fixed Monte Carlo sample count (0: adaptive)")->capture_default_str();
  cmd_measure->add_option("--max-samples", m_max_samples, "Monte Carlo sample budget")->capture_default_str();
  cmd_measure->callback([&] {
    run = [&] {
      dimension(m_k, m_shift, "--shift");
      schur2::GaussianShiftQuery q{schur2::parse_set(m_set), parse_vector(m_shift)};
      q.sigma = m_sigma;
      q.target_rel_error = m_target;
      q.seed = g.seed;
      q.workers = g.workers;
      if (m_method != "auto") q.method = schur2::parse_method(m_method);
      q.mc_samples = m_samples;
      q.mc_max_samples = m_max_samples;
      const auto e = schur2::measure(q);
      return Result{schur2::to_json(e, g.timing), {}, e.flagged};
    };
  });

  // critical
  auto* cmd_critical = app.add_subcommand("critical", "Critical value c with P(<Z>_p > c) = alpha");
  DesignFlags crit;
  SolverFlags crit_solver;
  crit.attach(cmd_critical, false, false);
  crit_solver.attach(cmd_critical);
  cmd_critical->callback([&] {
    run = [&] {
      const auto k = dimension(crit.k == 0 ? 2 : crit.k, "", "");
      const auto c = schur2::critical_value_detailed(k, crit.p, crit.alpha, crit_solver.options(g));
      Json j;
      j["k"] = k;
      j["p"] = number(crit.p);
      j["alpha"] = crit.alpha;
      j.update(schur2::to_json(c));
      return Result{j, {}, false};
    };
  });

  // shift
  auto* cmd_shift = app.add_subcommand("shift", "Multiple t of u at which the p-mean test reaches power beta");
  DesignFlags sh;
  SolverFlags sh_solver;
  sh.attach(cmd_shift, true, true);
  sh_solver.attach(cmd_shift);
  cmd_shift->callback([&] {
    run = [&] {
      const auto d = sh.design();
      const auto s = schur2::shift_solution(d, sh_solver.options(g));
      Json j;
      j["k"] = d.k;
      j["p"] = number(d.p);
      j["alpha"] = d.alpha;
      j["beta"] = d.beta;
      j["u"] = schur2::vector_json(d.u);
      j.update(schur2::to_json(s));
      return Result{j, {}, s.inconclusive};
    };
  });

  // are
  auto* cmd_are = app.add_subcommand("are", "Efficiency of the p-mean test relative to the 2-mean test");
  DesignFlags ar;
  SolverFlags ar_solver;
  ar.attach(cmd_are, true, true);
  ar_solver.attach(cmd_are);
  cmd_are->callback([&] {
    run = [&] { return Result{schur2::to_json(schur2::are(ar.design(), ar_solver.options(g))), {}, false}; };
  });

  // extremes
  auto* cmd_ext = app.add_subcommand("extremes", "Efficiency in the diagonal and coordinate directions");
  DesignFlags ex;
  SolverFlags ex_solver;
  ex.attach(cmd_ext, true, false);
  ex_solver.attach(cmd_ext);
  cmd_ext->callback([&] {
    run = [&] {
      const auto e = schur2::are_extremes(ex.dim(), ex.p, ex.alpha, ex.beta, ex_solver.options(g));
      Json j;
      j["diagonal"] = schur2::to_json(e.diagonal);
      j["coordinate"] = schur2::to_json(e.coordinate);
      Json rows = Json::array();
      for (const auto& [name, res] : {std::pair{"diagonal", &e.diagonal}, std::pair{"coordinate", &e.coordinate}}) {
        Json r;
        r["direction"] = name;
        r.update(schur2::to_json(*res));
        rows.push_back(std::move(r));
      }
      return Result{j, rows, false};
    };
  });

  // sweep
  auto* cmd_sweep = app.add_subcommand("sweep", "Efficiency over planar directions sqrt(2)(cos t, sin t), t in [0, pi/4]");
  DesignFlags sw;
  SolverFlags sw_solver;
  int sw_angles = 11;
  sw.attach(cmd_sweep, true, false);
  sw_solver.attach(cmd_sweep);
  cmd_sweep->add_option("--angles", sw_angles, "Number of evenly spaced angles")->capture_default_str();
  cmd_sweep->callback([&] {
    run = [&] {
      Json rows = Json::array();
      for (const auto& s : schur2::are_direction_sweep(sw.p, sw.alpha, sw.beta, sw_angles, sw_solver.options(g))) {
        Json r;
        r["angle"] = s.angle;
        r.update(schur2::to_json(s.result));
        rows.push_back(std::move(r));
      }
      return Result{rows, rows, false};
    };
  });

  // trend
  auto* cmd_trend = app.add_subcommand("trend", "Efficiency along a sequence of (alpha, beta) pairs");
  DesignFlags tr;
  SolverFlags tr_solver;
  std::string tr_alphas = "0.01,0.001,0.0001", tr_betas;
  tr.attach(cmd_trend, false, true);
  tr_solver.attach(cmd_trend);
  cmd_trend->add_option("--alphas", tr_alphas, "Sizes, comma separated")->capture_default_str();
  cmd_trend->add_option("--betas", tr_betas, "Powers, comma separated (default 1 - alpha)");
  cmd_trend->callback([&] {
    run = [&] {
      const auto k = tr.dim();
      const std::vector<double> alphas = parse_list(tr_alphas);
      std::vector<double> betas;
      if (tr_betas.empty()) {
        for (double a : alphas) betas.push_back(1.0 - a);
      } else {
        betas = parse_list(tr_betas);
      }
      if (betas.size() != alphas.size()) throw std::invalid_argument("--alphas and --betas differ in length");
      Json rows = Json::array();
      for (const auto& r : schur2::are_limit_trend(k, tr.p, direction(k, tr.u), alphas, betas, tr_solver.options(g))) {
        rows.push_back(schur2::to_json(r));
      }
      return Result{rows, rows, false};
    };
  });

  // verify
  auto* cmd_verify = app.add_subcommand("verify", "Numerical checks of the monotonicity results");
  cmd_verify->require_subcommand(1);

  auto verify_options = [&](double target) {
    schur2::VerifyOptions o;
    o.seed = g.seed;
    o.workers = g.workers;
    o.target_rel = target;
    return o;
  };

  auto* v_cx = cmd_verify->add_subcommand("counterexample", "Uniform-ball counterexample to Schur^2 monotonicity");
  schur2::CounterexampleConfig cx;
  long long cx_samples = 1LL << 22;
  v_cx->add_option("--k", cx.k, "Dimension")->capture_default_str();
  v_cx->add_option("--eps", cx.epsilon, "epsilon in (0, sqrt(k) - 1)")->capture_default_str();
  v_cx->add_option("--samples", cx_samples, "Uniform-ball samples when k > 2")->capture_default_str();
  v_cx->callback([&] {
    run = [&] {
      const auto r = schur2::run_counterexample(cx, cx_samples, verify_options(0.0));
      return Result{schur2::to_json(r), {}, !r.pass};
    };
  });

  auto* v_rot = cmd_verify->add_subcommand("rotation", "Measure along r (cos t, sin t), t in [0, pi/4], k = 2");
  std::string rot_set;
  double rot_radius = 1.0, rot_target = 0.0;
  int rot_points = 9;
  v_rot->add_option("--set", rot_set, "Set in text form")->required();
  v_rot->add_option("--radius", rot_radius, "Shift radius")->capture_default_str();
  v_rot->add_option("--points", rot_points, "Grid size")->capture_default_str()->check(CLI::Range(2, 100000));
  v_rot->add_option("--target", rot_target, "Relative error target of each measure")->capture_default_str();
  v_rot->callback([&] {
    run = [&] {
      std::vector<double> grid;
      for (int i = 0; i < rot_points; ++i) grid.push_back(0.25 * M_PI * i / (rot_points - 1));
      const auto r = schur2::check_rotation_monotonicity(schur2::parse_set(rot_set), rot_radius, grid,
                                                         verify_options(rot_target));
      Json j = schur2::to_json(r);
      Json rows = j.at("points");
      for (auto& row : rows) row["pass"] = r.pass;
      return Result{j, rows, !r.pass};
    };
  });

  auto* v_s2 = cmd_verify->add_subcommand("schur2", "Measure along a T-transform chain of squared shifts");
  std::string s2_set, s2_hi, s2_lo;
  double s2_target = 0.0;
  v_s2->add_option("--set", s2_set, "Set in text form")->required();
  v_s2->add_option("--from", s2_hi, "Starting shift; its squares must majorize those of --to")->required();
  v_s2->add_option("--to", s2_lo, "Final shift, same Euclidean norm")->required();
  v_s2->add_option("--target", s2_target, "Relative error target of each measure")->capture_default_str();
  v_s2->callback([&] {
    run = [&] {
      const auto pairs = schur2::schur2_chain_pairs(parse_vector(s2_hi), parse_vector(s2_lo));
      const auto r = schur2::check_schur2_monotonicity(schur2::parse_set(s2_set), pairs, verify_options(s2_target));
      Json j = schur2::to_json(r);
      Json rows = j.at("pairs");
      for (auto& row : rows) row["pass"] = r.pass;
      return Result{j, rows, !r.pass};
    };
  });

  auto* v_pow = cmd_verify->add_subcommand("power", "Empirical rejection rate of sqrt(n) <sample mean>_p > c");
  DesignFlags pw;
  SolverFlags pw_solver;
  int pw_n = 400, pw_reps = 10000;
  std::string pw_population = "gaussian", pw_theta;
  bool pw_at_shift = false;
  pw.attach(v_pow, true, true);
  pw_solver.attach(v_pow);
  v_pow->add_option("--n", pw_n, "Sample size")->capture_default_str();
  v_pow->add_option("--reps", pw_reps, "Replications")->capture_default_str();
  v_pow->add_option("--population", pw_population, "Component distribution")
      ->check(CLI::IsMember({"gaussian", "uniform"}))
      ->capture_default_str();
  v_pow->add_option("--theta", pw_theta, "Population mean (default 0)");
  v_pow->add_flag("--at-shift", pw_at_shift, "Use the mean (t / sqrt n) u, with t solved for power beta");
  v_pow->callback([&] {
    run = [&] {
      const schur2::SolverOptions so = pw_solver.options(g);
      schur2::EmpiricalDesign d;
      d.n = pw_n;
      d.k = pw.dim();
      d.p = pw.p;
      d.c = schur2::critical_value(d.k, d.p, pw.alpha, so);
      d.population = pw_population == "gaussian" ? schur2::Population::Gaussian : schur2::Population::UniformCube;
      d.replications = pw_reps;
      d.seed = g.seed;
      d.workers = g.workers;
      double expected = pw.alpha;
      if (pw_at_shift) {
        if (!pw_theta.empty()) throw std::invalid_argument("--theta and --at-shift are exclusive");
        const auto design = pw.design();
        const auto s = schur2::shift_solution(design, so);
        if (!s.exists) throw std::runtime_error("no shift reaches the requested power");
        d.theta = s.t * design.u / std::sqrt(static_cast<double>(pw_n));
        expected = pw.beta;
      } else {
        d.theta = pw_theta.empty() ? RealVector(RealVector::Zero(d.k)) : parse_vector(pw_theta);
        if (!pw_theta.empty()) expected = std::nan("");
      }
      const auto e = schur2::empirical_power(d);
      Json j;
      j["k"] = d.k;
      j["p"] = number(d.p);
      j["n"] = d.n;
      j["population"] = schur2::to_string(d.population);
      j["c"] = d.c;
      j["theta"] = schur2::vector_json(d.theta);
      j["expected"] = number(expected);
      j.update(schur2::to_json(e));
      return Result{j, {}, false};
    };
  });

  // figures
  auto* cmd_fig = app.add_subcommand("figures", "Data behind the figures: 1, 2, 3, 4 or all");
  std::string fig_which = "all";
  schur2::FigureOptions fig;
  cmd_fig->add_option("which", fig_which, "Figure to regenerate")
      ->check(CLI::IsMember({"1", "2", "3", "4", "all"}))
      ->capture_default_str();
  cmd_fig->add_option("--rays", fig.rays, "Rays per boundary cloud")->capture_default_str();
  cmd_fig->add_option("--clip", fig.clip, "Clipping radius for unbounded sets")->capture_default_str();
  cmd_fig->add_option("--angles", fig.angles, "Directions in the efficiency sweep")->capture_default_str();
  cmd_fig->callback([&] {
    run = [&] {
      fig.solver.seed = g.seed;
      fig.solver.workers = g.workers;
      std::vector<schur2::Table> tables;
      if (fig_which == "1" || fig_which == "all") tables.push_back(schur2::figure1(fig));
      if (fig_which == "2" || fig_which == "all") tables.push_back(schur2::figure2(fig));
      if (fig_which == "3" || fig_which == "all") tables.push_back(schur2::figure3(fig));
      if (fig_which == "4" || fig_which == "all") tables.push_back(schur2::figure4(fig));
      if (tables.size() == 1) {
        Json rows = table_rows(tables.front());
        return Result{Json{{"figure", tables.front().name}, {"rows", rows}}, rows, false};
      }
      Json all = Json::array();
      for (const auto& t : tables) all.push_back(Json{{"figure", t.name}, {"rows", table_rows(t)}});
      return Result{Json{{"figures", all}}, {}, false};
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  if (app.count("--workers") == 0) {
    if (const char* env = std::getenv("SCHUR2_WORKERS"); env != nullptr && *env != '\0') {
      const std::string_view text(env);
      int v = -1;
      const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
      if (ec != std::errc{} || end != text.data() + text.size() || v < 0) {
        std::cerr << "error: SCHUR2_WORKERS must be a nonnegative integer, got '" << text << "'\n";
        return kExitUsage;
      }
      g.workers = v;
    }
  }

  try {
    const Result r = run();
    emit(r, g);
    return r.flagged ? kExitFlagged : kExitOk;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}
