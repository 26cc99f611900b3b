#pragma once

#include "schur2/are.hpp"
#include "schur2/gauss_measure.hpp"
#include "schur2/solvers.hpp"
#include "schur2/verify.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace schur2 {

using Json = nlohmann::ordered_json;

Json vector_json(const RealVector& v);

/// {value, abs_error, rel_error, method, nodes, seed[, wall_ms], flagged}
Json to_json(const MeasureEstimate& e, bool with_timing = false);
Json to_json(const CriticalValue& c);
Json to_json(const ShiftSolution& s);
Json to_json(const AreResult& a);
Json to_json(const Schur2Report& r);
Json to_json(const RotationReport& r);
Json to_json(const CounterexampleReport& r);
Json to_json(const EmpiricalPower& p);

/// Inverse of to_json for measure records (wall_ms is optional).
MeasureEstimate measure_from_json(const Json& j);

/// Flattens nested objects into dotted keys. Arrays of scalars become
/// ';'-joined strings; other arrays are kept as compact JSON text.
Json flatten(const Json& record);

/// CSV text for an object (one row) or an array of objects (one row each).
/// Columns are the union of flattened keys in first-seen order; numbers use
/// 12 significant digits.
std::string to_csv(const Json& records);

}  // namespace schur2
