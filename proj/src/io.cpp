#include "steerkit/io.hpp"

#include <fstream>

namespace steerkit::io {

namespace {

constexpr int kVersion = 1;

void require_kind(const json& j, const std::string& kind) {
  if (!j.contains("version") || !j["version"].is_number())
    throw InvariantError("file is missing the mandatory version field");
  if (j["version"].get<int>() != kVersion)
    throw InvariantError("unsupported file version " + j["version"].dump());
  if (!j.contains("kind") || j["kind"] != kind)
    throw InvariantError("expected a file of kind '" + kind + "'");
}

}  // namespace

json matrix_to_json(const Matrix& m) {
  json data = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back({m(i, j).real(), m(i, j).imag()});
    data.push_back(std::move(row));
  }
  return json{{"dims", {m.rows(), m.cols()}}, {"data", std::move(data)}};
}

Matrix matrix_from_json(const json& j) {
  if (!j.contains("dims") || !j.contains("data"))
    throw InvariantError("matrix object needs dims and data");
  const int rows = j["dims"].at(0).get<int>();
  const int cols = j["dims"].at(1).get<int>();
  if (rows < 1 || cols < 1 || static_cast<int>(j["data"].size()) != rows)
    throw InvariantError("matrix dims do not match the data shape");
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    const auto& row = j["data"].at(i);
    if (static_cast<int>(row.size()) != cols)
      throw InvariantError("matrix dims do not match the data shape");
    for (int c = 0; c < cols; ++c)
      m(i, c) = Complex(row.at(c).at(0).get<double>(), row.at(c).at(1).get<double>());
  }
  return m;
}

json state_to_json(const DensityMatrix& rho, int dim_a, int dim_b) {
  if (dim_a * dim_b != rho.dim()) throw DimensionError("state dims must factorize the matrix");
  return json{{"version", kVersion},
              {"kind", "state"},
              {"dims", {dim_a, dim_b}},
              {"matrix", matrix_to_json(rho.matrix())}};
}

StateFile state_from_json(const json& j) {
  require_kind(j, "state");
  StateFile out{DensityMatrix(matrix_from_json(j.at("matrix"))), j.at("dims").at(0).get<int>(),
                j.at("dims").at(1).get<int>()};
  if (out.dim_a * out.dim_b != out.state.dim())
    throw InvariantError("state dims do not factorize the matrix dimension");
  return out;
}

json measurements_to_json(const MeasurementSet& ms) {
  json povms = json::array();
  for (int x = 0; x < ms.settings(); ++x) {
    json effects = json::array();
    for (int a = 0; a < ms.outcomes(); ++a) effects.push_back(matrix_to_json(ms.effect(x, a)));
    povms.push_back(std::move(effects));
  }
  return json{{"version", kVersion},
              {"kind", "measurements"},
              {"dim", ms.dim()},
              {"povms", std::move(povms)}};
}

MeasurementSet measurements_from_json(const json& j) {
  require_kind(j, "measurements");
  std::vector<Povm> povms;
  for (const auto& effects : j.at("povms")) {
    std::vector<Matrix> mats;
    for (const auto& e : effects) mats.push_back(matrix_from_json(e));
    povms.emplace_back(std::move(mats));
  }
  return MeasurementSet(std::move(povms));
}

json assemblage_to_json(const Assemblage& asm_) {
  json members = json::array();
  for (int x = 0; x < asm_.settings(); ++x) {
    json row = json::array();
    for (int a = 0; a < asm_.outcomes(); ++a) row.push_back(matrix_to_json(asm_.member(x, a)));
    members.push_back(std::move(row));
  }
  return json{{"version", kVersion},
              {"kind", "assemblage"},
              {"dim", asm_.dim()},
              {"settings", asm_.settings()},
              {"outcomes", asm_.outcomes()},
              {"members", std::move(members)}};
}

Assemblage assemblage_from_json(const json& j) {
  require_kind(j, "assemblage");
  std::vector<std::vector<Matrix>> members;
  for (const auto& row : j.at("members")) {
    members.emplace_back();
    for (const auto& m : row) members.back().push_back(matrix_from_json(m));
  }
  return Assemblage(std::move(members));
}

json inequality_to_json(const SteeringInequality& f) {
  json coeffs = json::array();
  for (const auto& row : f.coefficients) {
    json jrow = json::array();
    for (const auto& m : row) jrow.push_back(matrix_to_json(m));
    coeffs.push_back(std::move(jrow));
  }
  return json{{"version", kVersion},
              {"kind", "inequality"},
              {"normalization", f.normalization},
              {"coefficients", std::move(coeffs)}};
}

SteeringInequality inequality_from_json(const json& j) {
  require_kind(j, "inequality");
  SteeringInequality f;
  f.normalization = j.at("normalization").get<double>();
  for (const auto& row : j.at("coefficients")) {
    f.coefficients.emplace_back();
    for (const auto& m : row) f.coefficients.back().push_back(matrix_from_json(m));
  }
  return f;
}

MeasurementSet parse_measurement_spec(const std::string& spec) {
  if (spec == "paulis:xz") return paulis_xz();
  if (spec == "paulis:xyz") return paulis_xyz();
  if (spec.rfind("axes:", 0) == 0) return parse_direction_spec(spec).measurements();
  return measurements_from_json(load_json_file(spec));
}

DirectionSet parse_direction_spec(const std::string& spec) {
  std::string s = spec;
  if (s.rfind("axes:", 0) == 0) s = s.substr(5);
  if (s == "icosa6") return DirectionSet::icosahedral();
  if (s == "dodecaicosa15") return DirectionSet::dodeca_icosa();
  if (s.rfind("fib:", 0) == 0) {
    const int n = std::stoi(s.substr(4));
    return DirectionSet::fibonacci(n);
  }
  if (s == "xyz") return DirectionSet::from_axes({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, "xyz");
  if (s == "xz") return DirectionSet::from_axes({{1, 0, 0}, {0, 0, 1}}, "xz");
  throw InvariantError("unknown direction scheme '" + spec + "'");
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvariantError("cannot open file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw InvariantError("invalid JSON in '" + path + "': " + e.what());
  }
  return j;
}

void save_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw InvariantError("cannot write file '" + path + "'");
  out << j.dump(2) << "\n";
}

}  // namespace steerkit::io
