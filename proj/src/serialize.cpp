#include "schur2/serialize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <vector>

namespace schur2 {

namespace {

// JSON has no infinities; they travel as strings.
Json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

double read_number(const Json& j) {
  if (j.is_number()) return j.get<double>();
  return parse_double(j.get<std::string>());
}

}  // namespace

Json vector_json(const RealVector& v) {
  Json a = Json::array();
  for (Index i = 0; i < v.size(); ++i) a.push_back(number(v[i]));
  return a;
}

Json to_json(const MeasureEstimate& e, bool with_timing) {
  Json j;
  j["value"] = number(e.value);
  j["abs_error"] = number(e.abs_error);
  j["rel_error"] = number(e.rel_error);
  j["method"] = to_string(e.method);
  j["nodes"] = e.samples_or_nodes;
  j["seed"] = e.seed;
  if (with_timing) j["wall_ms"] = e.wall_ms;
  j["flagged"] = e.flagged;
  return j;
}

MeasureEstimate measure_from_json(const Json& j) {
  MeasureEstimate e;
  e.value = read_number(j.at("value"));
  e.abs_error = read_number(j.at("abs_error"));
  e.rel_error = read_number(j.at("rel_error"));
  e.method = parse_method(j.at("method").get<std::string>());
  e.samples_or_nodes = j.at("nodes").get<long long>();
  e.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("wall_ms")) e.wall_ms = j.at("wall_ms").get<double>();
  if (j.contains("flagged")) e.flagged = j.at("flagged").get<bool>();
  return e;
}

Json to_json(const CriticalValue& c) {
  Json j;
  j["c"] = number(c.c);
  j["achieved_alpha"] = number(c.achieved_alpha);
  j["alpha_error"] = number(c.alpha_error);
  j["closed_form"] = c.closed_form;
  j["method"] = to_string(c.method);
  return j;
}

Json to_json(const ShiftSolution& s) {
  Json j;
  j["exists"] = s.exists;
  j["t"] = number(s.t);
  j["norm"] = number(s.norm);
  j["achieved_power"] = number(s.achieved_power);
  j["solver_error"] = number(s.solver_error);
  j["bracket"] = {number(s.bracket_lo), number(s.bracket_hi)};
  j["critical_value"] = number(s.critical);
  j["method"] = to_string(s.method);
  j["inconclusive"] = s.inconclusive;
  return j;
}

Json to_json(const AreResult& a) {
  Json j;
  j["are"] = number(a.are);
  j["error"] = number(a.error);
  j["s2_norm"] = number(a.s2_norm);
  j["sp_norm"] = a.sp_norm ? number(*a.sp_norm) : Json(nullptr);
  j["exists"] = a.sp_norm.has_value();
  j["k"] = a.design.k;
  j["p"] = number(a.design.p);
  j["alpha"] = a.design.alpha;
  j["beta"] = a.design.beta;
  j["u"] = vector_json(a.design.u);
  return j;
}

Json to_json(const Schur2Report& r) {
  Json j;
  j["set"] = to_string(r.set);
  j["character"] = to_string(r.character.value);
  j["spherical"] = r.character.spherical;
  Json pairs = Json::array();
  for (const auto& c : r.pairs) {
    Json p;
    p["theta1"] = vector_json(c.theta1);
    p["theta2"] = vector_json(c.theta2);
    p["m1"] = to_json(c.m1);
    p["m2"] = to_json(c.m2);
    p["violation"] = c.violation;
    p["strict_gap"] = c.strict_gap;
    pairs.push_back(std::move(p));
  }
  j["pairs"] = std::move(pairs);
  j["violations"] = r.violations;
  j["strict_gap_required"] = r.strict_gap_required;
  j["strict_gap_found"] = r.strict_gap_found;
  j["pass"] = r.pass;
  return j;
}

Json to_json(const RotationReport& r) {
  Json j;
  j["set"] = to_string(r.set);
  j["character"] = to_string(r.character.value);
  j["spherical"] = r.character.spherical;
  j["radius"] = r.radius;
  Json pts = Json::array();
  for (std::size_t i = 0; i < r.angles.size(); ++i) {
    Json p = to_json(r.measures[i]);
    p["angle"] = r.angles[i];
    pts.push_back(std::move(p));
  }
  j["points"] = std::move(pts);
  j["violations"] = r.violations;
  j["pass"] = r.pass;
  return j;
}

Json to_json(const CounterexampleReport& r) {
  Json j;
  j["k"] = r.config.k;
  j["epsilon"] = r.config.epsilon;
  j["R"] = r.R;
  j["r"] = r.r;
  j["containment_residual"] = r.containment_residual;
  j["vertex_excess"] = r.vertex_excess;
  j["p0"] = r.p0;
  j["p0_exact"] = r.p0_exact;
  j["p0_error"] = r.p0_error;
  j["p1"] = r.p1;
  j["p1_error"] = r.p1_error;
  j["p1_method"] = r.p1_method;
  j["samples"] = r.samples;
  j["x_order_holds"] = r.x_order_holds;
  j["containment_holds"] = r.containment_holds;
  j["gap_holds"] = r.gap_holds;
  j["pass"] = r.pass;
  return j;
}

Json to_json(const EmpiricalPower& p) {
  Json j;
  j["rate"] = p.rate;
  j["stderr"] = p.std_error;
  j["replications"] = p.replications;
  return j;
}

namespace {

std::string scalar_text(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer() || v.is_number_unsigned()) return v.dump();
  if (v.is_number_float()) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v.get<double>());
    return buf;
  }
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

void flatten_into(const Json& v, const std::string& prefix, Json& out) {
  if (v.is_object()) {
    for (const auto& [key, item] : v.items()) flatten_into(item, prefix.empty() ? key : prefix + "." + key, out);
    return;
  }
  if (v.is_array() && std::all_of(v.begin(), v.end(), [](const Json& e) { return e.is_primitive(); })) {
    std::string joined;
    for (const auto& e : v) {
      if (!joined.empty()) joined += ';';
      joined += scalar_text(e);
    }
    out[prefix] = joined;
    return;
  }
  out[prefix] = v.is_array() ? Json(v.dump()) : v;
}

}  // namespace

Json flatten(const Json& record) {
  Json out = Json::object();
  flatten_into(record, "", out);
  return out;
}

std::string to_csv(const Json& records) {
  std::vector<Json> rows;
  if (records.is_array()) {
    for (const auto& r : records) rows.push_back(flatten(r));
  } else {
    rows.push_back(flatten(records));
  }
  std::vector<std::string> columns;
  for (const auto& r : rows) {
    for (const auto& [key, _] : r.items()) {
      if (std::find(columns.begin(), columns.end(), key) == columns.end()) columns.push_back(key);
    }
  }
  if (columns.empty()) return {};
  std::ostringstream os;
  for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << csv_field(columns[i]);
  os << '\n';
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (i) os << ',';
      if (r.contains(columns[i])) os << csv_field(scalar_text(r.at(columns[i])));
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace schur2
