#pragma once

#include <string>

#include "json.hpp"
#include "steerkit/operators.hpp"
#include "steerkit/radius.hpp"
#include "steerkit/steering.hpp"

namespace steerkit::io {

using nlohmann::json;

/// Complex matrices travel as nested arrays of [re, im] pairs, row-major,
/// with explicit dims. Every file carries a "kind" discriminator and a
/// mandatory "version" field.
json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j);

struct StateFile {
  DensityMatrix state;
  int dim_a = 0;
  int dim_b = 0;
};
json state_to_json(const DensityMatrix& rho, int dim_a, int dim_b);
StateFile state_from_json(const json& j);

json measurements_to_json(const MeasurementSet& ms);
MeasurementSet measurements_from_json(const json& j);

json assemblage_to_json(const Assemblage& asm_);
Assemblage assemblage_from_json(const json& j);

json inequality_to_json(const SteeringInequality& f);
SteeringInequality inequality_from_json(const json& j);

/// Measurement shorthand: "paulis:xz", "paulis:xyz", "axes:icosa6",
/// "axes:dodecaicosa15", "axes:fib:N", or a path to a measurements file.
MeasurementSet parse_measurement_spec(const std::string& spec);
/// Direction shorthand: "icosa6", "dodecaicosa15", "fib:N" (with or without
/// the "axes:" prefix).
DirectionSet parse_direction_spec(const std::string& spec);

json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const json& j);

}  // namespace steerkit::io
