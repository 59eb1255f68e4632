// steerkit command-line front end: steering detection and quantification,
// joint measurability, critical-radius brackets, closed-form criteria,
// benchmark state generation and parameter sweeps.

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <thread>

#include "CLI11.hpp"
#include "steerkit/criteria.hpp"
#include "steerkit/incompatibility.hpp"
#include "steerkit/io.hpp"
#include "steerkit/states.hpp"

using namespace steerkit;
using steerkit::io::json;

namespace {

struct GlobalOpts {
  std::string out;
  std::optional<std::uint64_t> seed;
};

void emit_text(const GlobalOpts& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(g.out);
  if (!f) throw InvariantError("cannot write file '" + g.out + "'");
  f << text;
}

void emit(const GlobalOpts& g, json j) {
  j["version"] = 1;
  if (g.seed) j["seed"] = *g.seed;
  emit_text(g, j.dump(2) + "\n");
}

json solver_to_json(const SolverDiagnostics& d) {
  const char* status = d.status == conic::Status::optimal
                           ? "optimal"
                           : (d.status == conic::Status::max_iterations ? "max_iterations"
                                                                        : "numerical_failure");
  return json{{"backend", d.backend},       {"status", status},
              {"iterations", d.iterations}, {"gap", d.gap},
              {"primal_residual", d.primal_residual}, {"dual_residual", d.dual_residual},
              {"duality_error", d.duality_error}};
}

const char* verdict_name(Steerability v) {
  switch (v) {
    case Steerability::steerable:
      return "steerable";
    case Steerability::unsteerable:
      return "unsteerable";
    default:
      return "boundary";
  }
}

Assemblage load_assemblage(const std::string& asm_path, const std::string& state_path,
                           const std::string& meas_spec) {
  if (!asm_path.empty()) return io::assemblage_from_json(io::load_json_file(asm_path));
  if (state_path.empty() || meas_spec.empty())
    throw InvariantError("need either --assemblage or both --state and --measurements");
  auto state = io::state_from_json(io::load_json_file(state_path));
  return assemblage_from_state(state.state, io::parse_measurement_spec(meas_spec));
}

json criterion_to_json(const CriterionResult& r) {
  json j{{"value", r.value}, {"bound", r.bound}, {"violated", r.violated}};
  if (!r.assumption.empty()) j["assumes"] = r.assumption;
  return j;
}

std::vector<Matrix> pauli_vector() { return {pauli_x(), pauli_y(), pauli_z()}; }

json run_criteria_battery(const DensityMatrix& rho) {
  auto paulis = pauli_vector();
  CorrelationRecord rec3 = record_from_state(rho, paulis, paulis);
  std::vector<Matrix> xz = {pauli_x(), pauli_z()};
  CorrelationRecord rec2 = record_from_state(rho, xz, xz);

  auto joint = [&](const Matrix& a, const Matrix& b) {
    Povm pa = projective_from_observable(a);
    Povm pb = projective_from_observable(b);
    JointDistribution jd;
    jd.p = RealMatrix(pa.outcomes(), pb.outcomes());
    for (int i = 0; i < pa.outcomes(); ++i)
      for (int j = 0; j < pb.outcomes(); ++j)
        jd.p(i, j) = (kron(pa.effect(i), pb.effect(j)) * rho.matrix()).trace().real();
    return jd;
  };

  std::vector<double> matched = {rec3.full(0, 0), rec3.full(1, 1), rec3.full(2, 2)};
  std::vector<double> vars;
  for (const auto& s : paulis) {
    Matrix m = kron(s, Matrix::Identity(2, 2)) + kron(Matrix::Identity(2, 2), s);
    vars.push_back(variance(m, rho.matrix()));
  }

  return json{
      {"linear", criterion_to_json(linear_criterion(matched, paulis))},
      {"three_pauli", criterion_to_json(three_pauli_criterion(rec3))},
      {"chsh", criterion_to_json(chsh_steering(rec2))},
      {"entropic", criterion_to_json(entropic_criterion(joint(pauli_x(), pauli_x()),
                                                        joint(pauli_z(), pauli_z()), pauli_x(),
                                                        pauli_z()))},
      {"ccnr", criterion_to_json(ccnr_steering(rho, 2))},
      {"lur", criterion_to_json(lur_criterion(vars, 2.0))},
  };
}

// columns available in werner/isotropic sweeps
double sweep_column(const std::string& name, const DensityMatrix& rho,
                    const MeasurementSet& ms) {
  auto paulis = pauli_vector();
  if (name == "three_pauli")
    return three_pauli_criterion(record_from_state(rho, paulis, paulis)).value;
  if (name == "sdp") return lhs_feasibility(assemblage_from_state(rho, ms)).steerable ? 1.0 : 0.0;
  if (name == "ccnr") return ccnr_steering(rho, 2).value;
  if (name == "chsh") {
    std::vector<Matrix> xz = {pauli_x(), pauli_z()};
    return chsh_steering(record_from_state(rho, xz, xz)).value;
  }
  if (name == "weight") return steering_weight(assemblage_from_state(rho, ms)).weight;
  if (name == "robustness")
    return steering_robustness(assemblage_from_state(rho, ms)).robustness;
  throw InvariantError("unknown sweep column '" + name + "'");
}

void run_parallel(int jobs, int count, const std::function<void(int)>& work) {
  if (jobs <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) work(i);
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<int> next{0};
  for (int t = 0; t < std::min(jobs, count); ++t)
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) work(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum steering toolkit"};
  app.require_subcommand(1);
  GlobalOpts global;
  app.add_option("--out", global.out, "write output to a file instead of stdout");
  std::uint64_t seed_value = 0;
  auto* seed_opt = app.add_option("--seed", seed_value, "random seed recorded in outputs");

  std::string asm_path, state_path, meas_spec, dirs_spec = "icosa6";
  double tolerance = tol::verdict;
  bool full_witness = false;

  auto add_input_opts = [&](CLI::App* cmd, bool with_assemblage) {
    if (with_assemblage) cmd->add_option("--assemblage", asm_path, "assemblage JSON file");
    cmd->add_option("--state", state_path, "bipartite state JSON file");
    cmd->add_option("--measurements", meas_spec,
                    "measurement spec: paulis:xz, paulis:xyz, axes:..., or a JSON file");
  };

  auto* detect = app.add_subcommand("detect", "decide steerability of an assemblage");
  add_input_opts(detect, true);
  detect->add_option("--tol", tolerance, "verdict tolerance");
  detect->add_flag("--full-witness", full_witness, "include the LHS model in the output");

  auto* quantify = app.add_subcommand("quantify", "steering weight or robustness");
  std::string measure = "robustness";
  quantify->add_option("--measure", measure, "weight|robustness")->required();
  add_input_opts(quantify, true);

  auto* inequality = app.add_subcommand("inequality", "optimal dual steering inequality");
  add_input_opts(inequality, true);

  auto* jm = app.add_subcommand("jm", "joint measurability of a measurement set");
  jm->add_option("--measurements", meas_spec, "measurement spec or JSON file")->required();
  bool jm_robustness = false;
  jm->add_flag("--robustness", jm_robustness, "compute the incompatibility robustness");

  auto* radius = app.add_subcommand("radius", "two-qubit critical-radius bracket");
  radius->add_option("--state", state_path, "two-qubit state JSON file")->required();
  radius->add_option("--dirs", dirs_spec, "direction scheme: icosa6, dodecaicosa15, fib:N");
  bool with_tstate = false;
  radius->add_flag("--tstate", with_tstate, "also evaluate the T-state closed form");

  auto* criteria_cmd = app.add_subcommand("criteria", "closed-form criteria battery");
  criteria_cmd->add_option("--state", state_path, "two-qubit state JSON file")->required();

  auto* make = app.add_subcommand("make", "write benchmark states and assemblages");
  std::string kind;
  int make_d = 2;
  double make_eta = 1.0, make_alpha = 0.5, make_theta_deg = 45.0;
  make->add_option("--kind", kind, "werner|isotropic|oneway|singlet|assemblage|measurements")
      ->required();
  make->add_option("--d", make_d, "local dimension");
  make->add_option("--eta", make_eta, "mixing parameter");
  make->add_option("--alpha", make_alpha, "one-way mixing weight");
  make->add_option("--theta", make_theta_deg, "one-way angle in degrees");
  make->add_option("--state", state_path, "input state for kind=assemblage");
  make->add_option("--measurements", meas_spec, "measurement spec for kind=assemblage");

  auto* thresholds = app.add_subcommand("thresholds", "closed-form unsteerability thresholds");
  std::string family = "werner", mclass = "projective";
  int thr_d = 2;
  thresholds->add_option("--family", family, "werner|isotropic")->required();
  thresholds->add_option("--class", mclass, "projective|dichotomic|povm-barrett")->required();
  thresholds->add_option("--d", thr_d, "local dimension");

  auto* sweep = app.add_subcommand("sweep", "CSV parameter sweeps");
  std::string sweep_family = "werner", columns = "three_pauli,sdp,ccnr";
  double from = 0.0, to = 1.0, step = 0.05;
  double alpha_from = 0.5, alpha_to = 1.0, alpha_step = 0.1;
  double theta_from = 5.0, theta_to = 45.0, theta_step = 10.0;
  int jobs = 1;
  sweep->add_option("--family", sweep_family, "werner|isotropic|oneway");
  sweep->add_option("--from", from, "start of the eta range");
  sweep->add_option("--to", to, "end of the eta range");
  sweep->add_option("--step", step, "eta step");
  sweep->add_option("--columns", columns, "comma list: three_pauli,sdp,ccnr,chsh,weight,robustness");
  sweep->add_option("--measurements", meas_spec, "measurement spec for SDP columns");
  sweep->add_option("--alpha-from", alpha_from, "one-way alpha start");
  sweep->add_option("--alpha-to", alpha_to, "one-way alpha end");
  sweep->add_option("--alpha-step", alpha_step, "one-way alpha step");
  sweep->add_option("--theta-from", theta_from, "one-way theta start (degrees)");
  sweep->add_option("--theta-to", theta_to, "one-way theta end (degrees)");
  sweep->add_option("--theta-step", theta_step, "one-way theta step (degrees)");
  sweep->add_option("--dirs", dirs_spec, "direction scheme for the one-way SDP column");
  sweep->add_option("--jobs", jobs, "parallel solves");

  try {
    app.parse(argc, argv);
    if (*seed_opt) global.seed = seed_value;

    if (*detect) {
      Assemblage a = load_assemblage(asm_path, state_path, meas_spec);
      SteerVerdict v = lhs_feasibility(a, tolerance);
      json out{{"command", "detect"},
               {"steerable", v.steerable},
               {"verdict", verdict_name(v.verdict)},
               {"mu", v.optimum},
               {"tolerance", tolerance},
               {"solver", solver_to_json(v.diagnostics)}};
      if (v.inequality) {
        out["inequality"] = io::inequality_to_json(*v.inequality);
        out["inequality_value"] = v.inequality->evaluate(a);
      }
      if (v.model) {
        out["model_reproduction_error"] = v.model->reproduction_error(a);
        if (full_witness) {
          json states = json::array();
          for (const auto& s : v.model->hidden_states) states.push_back(io::matrix_to_json(s));
          out["model_hidden_states"] = std::move(states);
        }
      }
      emit(global, out);
    } else if (*quantify) {
      Assemblage a = load_assemblage(asm_path, state_path, meas_spec);
      if (measure == "weight") {
        WeightResult w = steering_weight(a);
        emit(global, json{{"command", "quantify"},
                          {"measure", "weight"},
                          {"value", w.weight},
                          {"tolerance", w.diagnostics.tolerance},
                          {"solver", solver_to_json(w.diagnostics)}});
      } else if (measure == "robustness") {
        RobustnessResult r = steering_robustness(a);
        emit(global, json{{"command", "quantify"},
                          {"measure", "robustness"},
                          {"value", r.robustness},
                          {"tolerance", r.diagnostics.tolerance},
                          {"solver", solver_to_json(r.diagnostics)}});
      } else {
        throw CLI::ValidationError("--measure must be weight or robustness");
      }
    } else if (*inequality) {
      Assemblage a = load_assemblage(asm_path, state_path, meas_spec);
      SteerVerdict v = lhs_feasibility(a);
      json out = io::inequality_to_json(*v.inequality);
      out["command"] = "inequality";
      out["value"] = v.inequality->evaluate(a);
      out["tolerance"] = v.diagnostics.tolerance;
      out["solver"] = solver_to_json(v.diagnostics);
      emit(global, out);
    } else if (*jm) {
      MeasurementSet ms = io::parse_measurement_spec(meas_spec);
      if (jm_robustness) {
        auto r = incompatibility_robustness(ms);
        emit(global, json{{"command", "jm"},
                          {"robustness", r.robustness},
                          {"tolerance", r.diagnostics.tolerance},
                          {"solver", solver_to_json(r.diagnostics)}});
      } else {
        JmVerdict v = is_jointly_measurable(ms);
        json out{{"command", "jm"},
                 {"jointly_measurable", v.jointly_measurable},
                 {"mu", v.optimum},
                 {"tolerance", v.diagnostics.tolerance},
                 {"solver", solver_to_json(v.diagnostics)}};
        if (v.joint) out["joint_reproduction_error"] = v.joint->reproduction_error(ms);
        emit(global, out);
      }
    } else if (*radius) {
      auto state = io::state_from_json(io::load_json_file(state_path));
      DirectionSet dirs = io::parse_direction_spec(dirs_spec);
      RadiusBracket bracket = radius_bracket(state.state, dirs);
      json out{{"command", "radius"},
               {"lower", bracket.lower},
               {"upper", bracket.upper},
               {"scheme", bracket.scheme},
               {"axes", dirs.size()},
               {"shrink_factor", dirs.shrink_factor()},
               {"degenerate_hull", bracket.degenerate_hull},
               {"tolerance", bracket.tolerance}};
      if (with_tstate) {
        BlochDecomposition bd = bloch_decompose(state.state);
        if (bd.a.norm() > 1e-6 || bd.b.norm() > 1e-6)
          throw InvariantError("--tstate needs vanishing local Bloch vectors");
        TstateRadius ts = tstate_critical_radius(bd.T);
        out["tstate"] = json{{"value", ts.value},
                             {"singular", ts.singular},
                             {"quadrature_error", ts.error_estimate}};
      }
      emit(global, out);
    } else if (*criteria_cmd) {
      auto state = io::state_from_json(io::load_json_file(state_path));
      json out = run_criteria_battery(state.state);
      out["command"] = "criteria";
      emit(global, out);
    } else if (*make) {
      json out;
      if (kind == "werner")
        out = io::state_to_json(werner(make_d, make_eta), make_d, make_d);
      else if (kind == "isotropic")
        out = io::state_to_json(isotropic(make_d, make_eta), make_d, make_d);
      else if (kind == "oneway")
        out = io::state_to_json(
            one_way_state(make_alpha, make_theta_deg * std::numbers::pi / 180.0), 2, 2);
      else if (kind == "singlet")
        out = io::state_to_json(singlet(), 2, 2);
      else if (kind == "assemblage")
        out = io::assemblage_to_json(load_assemblage("", state_path, meas_spec));
      else if (kind == "measurements")
        out = io::measurements_to_json(io::parse_measurement_spec(meas_spec));
      else
        throw CLI::ValidationError("unknown --kind '" + kind + "'");
      emit_text(global, out.dump(2) + "\n");
    } else if (*thresholds) {
      ThresholdQuery q;
      if (family == "werner")
        q.family = StateFamily::werner;
      else if (family == "isotropic")
        q.family = StateFamily::isotropic;
      else
        throw CLI::ValidationError("unknown --family '" + family + "'");
      if (mclass == "projective")
        q.measurement_class = MeasurementClass::projective;
      else if (mclass == "dichotomic")
        q.measurement_class = MeasurementClass::dichotomic;
      else if (mclass == "povm-barrett")
        q.measurement_class = MeasurementClass::povm_barrett;
      else
        throw CLI::ValidationError("unknown --class '" + mclass + "'");
      q.d = thr_d;
      emit(global, json{{"command", "thresholds"},
                        {"family", family},
                        {"class", mclass},
                        {"d", thr_d},
                        {"eta_star", threshold(q)}});
    } else if (*sweep) {
      std::string csv;
      if (sweep_family == "oneway") {
        csv = "alpha,theta_deg,a_to_b_detected,b_to_a_model_exists\n";
        std::vector<std::pair<double, double>> grid;
        for (double a = alpha_from; a <= alpha_to + 1e-12; a += alpha_step)
          for (double th = theta_from; th <= theta_to + 1e-12; th += theta_step)
            grid.push_back({a, th});
        std::vector<std::string> rows(grid.size());
        DirectionSet dirs = io::parse_direction_spec(dirs_spec);
        run_parallel(jobs, static_cast<int>(grid.size()), [&](int i) {
          auto [a, th_deg] = grid[i];
          const double th = th_deg * std::numbers::pi / 180.0;
          DensityMatrix rho = one_way_state(a, th);
          const bool detected =
              lhs_feasibility(assemblage_from_state(rho, dirs.measurements())).steerable;
          const double c2 = std::cos(2 * th) * std::cos(2 * th);
          const bool model = c2 >= (2 * a - 1) / ((2 - a) * a * a * a) - 1e-12;
          rows[i] = std::to_string(a) + "," + std::to_string(th_deg) + "," +
                    (detected ? "1" : "0") + "," + (model ? "1" : "0") + "\n";
        });
        for (const auto& r : rows) csv += r;
      } else {
        std::vector<std::string> names;
        for (std::size_t pos = 0; pos < columns.size();) {
          auto comma = columns.find(',', pos);
          if (comma == std::string::npos) comma = columns.size();
          names.push_back(columns.substr(pos, comma - pos));
          pos = comma + 1;
        }
        csv = "eta";
        for (const auto& n : names) csv += "," + n;
        csv += "\n";
        std::vector<double> etas;
        for (double eta = from; eta <= to + 1e-12; eta += step) etas.push_back(eta);
        MeasurementSet ms =
            meas_spec.empty() ? paulis_xyz() : io::parse_measurement_spec(meas_spec);
        std::vector<std::string> rows(etas.size());
        run_parallel(jobs, static_cast<int>(etas.size()), [&](int i) {
          DensityMatrix rho =
              sweep_family == "isotropic" ? isotropic(2, etas[i]) : werner(2, etas[i]);
          std::string line = std::to_string(etas[i]);
          for (const auto& n : names)
            line += "," + std::to_string(sweep_column(n, rho, ms));
          rows[i] = line + "\n";
        });
        for (const auto& r : rows) csv += r;
      }
      emit_text(global, csv);
    }
    return 0;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const SolverError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  }
}
