// Copyright 2026 The qlincert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qlincert/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "qlincert/linearity.hpp"
#include "qlincert/report.hpp"

namespace qlincert::cli {
namespace fs = std::filesystem;

namespace {

constexpr double kDefaultTFinal = 1.0;
constexpr std::size_t kDefaultSteps = 1000;
constexpr std::size_t kDefaultSamples = 100;
constexpr std::size_t kDefaultTrials = 20;
constexpr double kDefaultSignalTolerance = 1e-7;

// Runs f, rewrapping any library error as a ConfigError prefixed by path.
template <class F>
auto at_path(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

const json& member(const json& j, const char* key, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ConfigError(path + "." + key + ": missing");
  return *it;
}

Observable parse_observable(const json& j, const std::string& path) {
  return at_path(path, [&] { return Observable(io::matrix_from_json(j)); });
}

template <class T>
T number_at(const json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path + ": expected a number");
  if constexpr (std::is_unsigned_v<T>) {
    if (!j.is_number_unsigned()) throw ConfigError(path + ": expected a non-negative integer");
  } else if constexpr (std::is_integral_v<T>) {
    if (!j.is_number_integer()) throw ConfigError(path + ": expected an integer");
  }
  return j.get<T>();
}

void check_dim(Index got, Index want, const std::string& what, std::vector<std::string>& diags) {
  if (got != want) {
    diags.push_back(what + ": dimension " + std::to_string(got) + " does not match " +
                    std::to_string(want));
  }
}

template <class F>
void collect(std::vector<std::string>& diags, F&& f) {
  try {
    f();
  } catch (const std::exception& e) {
    diags.emplace_back(e.what());
  }
}

void write_file(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path().empty() ? fs::path(".") : path.parent_path());
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ConfigError("cannot write " + path.string());
  os << content;
  if (!os) throw ConfigError("failed writing " + path.string());
}

json report_envelope(const RunConfig& config, json result) {
  return {{"tool", {{"name", "qlincert"}, {"version", kVersion}}},
          {"command", config.command},
          {"config", config.document},
          {"tolerances", io::tolerances_json()},
          {"result", std::move(result)}};
}

bool is_known(const std::string& command) {
  return command == "evolve" || command == "certify" || command == "wigner" ||
         command == "signaling";
}

Index required_dim(const json& doc, const char* key, Index fallback) {
  auto it = doc.find(key);
  if (it == doc.end()) return fallback;
  return number_at<Index>(*it, key);
}

Prescription parse_prescription(const json& j) {
  const auto s = j.get<std::string>();
  if (s == "branch_resolved") return Prescription::branch_resolved;
  if (s == "reduced") return Prescription::reduced;
  throw ConfigError("prescription: expected \"branch_resolved\" or \"reduced\"");
}

// ---------------------------------------------------------------------------
// Commands

int run_evolve(const RunConfig& config) {
  const json& doc = config.document;
  const Generator g = parse_generator(doc.at("generator"));
  const DensityMatrix rho0 = parse_state(doc.at("state"));
  const IntegrationPlan plan = parse_plan(doc.at("plan"));
  const Trajectory traj = evolve(g, rho0, plan);
  const DensityMatrix& last = traj.final_state();
  json result = {{"final_state", io::matrix_to_json(last.matrix())},
                 {"purity", purity(last)},
                 {"entropy", von_neumann_entropy(last)},
                 {"trace", last.matrix().trace().real()},
                 {"points", traj.states.size()},
                 {"plan", io::plan_to_json(plan)}};
  if (config.csv) {
    std::ostringstream csv;
    io::write_trajectory_csv(csv, traj);
    write_file(config.out_dir / "trajectory.csv", csv.str());
  }
  write_file(config.out_dir / "evolve_report.json",
             io::dump_fixed(report_envelope(config, std::move(result))) + "\n");
  return kOk;
}

int run_certify(const RunConfig& config) {
  const json& doc = config.document;
  const Generator g = parse_generator(doc.at("generator"));
  const IntegrationPlan plan = parse_plan(doc.at("plan"));
  const Index dim = required_dim(doc, "dim", g.dim());
  const auto samples = doc.at("samples").get<std::size_t>();
  const auto seed = doc.at("seed").get<std::uint64_t>();
  const double tolerance = doc.at("tolerance").get<double>();
  const LinearityReport report = certify_linearity(g, dim, samples, plan, seed, tolerance);
  json result = io::to_json(report);
  result["plan"] = io::plan_to_json(plan);
  write_file(config.out_dir / "certify_report.json",
             io::dump_fixed(report_envelope(config, std::move(result))) + "\n");
  switch (report.verdict) {
    case Verdict::linear:
      return kOk;
    case Verdict::nonlinear:
      return kViolation;
    case Verdict::inconclusive:
      return kInconclusive;
  }
  return kInconclusive;
}

int run_wigner(const RunConfig& config) {
  const json& doc = config.document;
  const PureStateMap map = parse_map(doc.at("map"), config.base_dir);
  const Index dim = required_dim(doc, "dim", map.dim());
  const auto trials = doc.at("trials").get<std::size_t>();
  const auto seed = doc.at("seed").get<std::uint64_t>();
  const WignerReport report = classify_unitary_antiunitary(map, dim, trials, seed);
  write_file(config.out_dir / "wigner_report.json",
             io::dump_fixed(report_envelope(config, io::to_json(report))) + "\n");
  const bool clean = report.classification != MapClass::neither && report.purity_preserved &&
                     report.entropy_nondecreasing;
  return clean ? kOk : kViolation;
}

int run_signaling(const RunConfig& config) {
  const json& doc = config.document;
  const Generator g = parse_generator(doc.at("generator"));
  const BipartiteState pi = parse_experiment(doc.at("experiment"));
  const MeasurementBasis a = parse_basis(doc.at("basisA"), pi.dim_r(), "basisA");
  const MeasurementBasis b = parse_basis(doc.at("basisB"), pi.dim_r(), "basisB");
  const IntegrationPlan plan = parse_plan(doc.at("plan"));
  const Prescription prescription = parse_prescription(doc.at("prescription"));
  const double tolerance = doc.at("tolerance").get<double>();

  const SignalingReport report = signaling_measure(g, pi, a, b, plan, prescription);
  json result = io::to_json(report);
  // Both prescriptions at t_final for each basis.
  json forks = json::object();
  for (const auto& [name, basis] : {std::pair{"basisA", &a}, std::pair{"basisB", &b}}) {
    const auto cmp = prescription_compare(g, conditional_ensemble(pi, *basis), plan);
    forks[name] = {{"branch_resolved", io::matrix_to_json(cmp.branch_resolved.matrix())},
                   {"reduced", io::matrix_to_json(cmp.reduced.matrix())},
                   {"distance", cmp.distance}};
  }
  result["prescription_compare"] = std::move(forks);
  result["signal_witnessed"] = report.max_distance > tolerance;
  if (config.csv) {
    std::ostringstream csv;
    csv << "t,distance\n";
    for (const auto& [t, d] : report.distance_vs_time) {
      csv << io::dump_fixed(json(t)) << ',' << io::dump_fixed(json(d)) << '\n';
    }
    write_file(config.out_dir / "distance.csv", csv.str());
  }
  write_file(config.out_dir / "signaling_report.json",
             io::dump_fixed(report_envelope(config, std::move(result))) + "\n");
  return report.max_distance > tolerance ? kViolation : kOk;
}

}  // namespace

// ---------------------------------------------------------------------------
// Parsers

Generator parse_generator(const json& j, const std::string& path) {
  const auto type = member(j, "type", path);
  if (!type.is_string()) throw ConfigError(path + ".type: expected a string");
  if (type == "linear") {
    return Generator::linear(parse_observable(member(j, "H", path), path + ".H"));
  }
  if (type == "meanfield") {
    std::vector<Coupling> couplings;
    const json& list = member(j, "couplings", path);
    if (!list.is_array()) throw ConfigError(path + ".couplings: expected an array");
    for (std::size_t k = 0; k < list.size(); ++k) {
      const std::string cpath = path + ".couplings[" + std::to_string(k) + "]";
      couplings.push_back({number_at<double>(member(list[k], "g", cpath), cpath + ".g"),
                           parse_observable(member(list[k], "A", cpath), cpath + ".A"),
                           parse_observable(member(list[k], "B", cpath), cpath + ".B")});
    }
    if (j.contains("H0")) {
      Observable h0 = parse_observable(j.at("H0"), path + ".H0");
      return at_path(path, [&] { return Generator::mean_field(std::move(h0), couplings); });
    }
    if (couplings.empty()) throw ConfigError(path + ": meanfield needs H0 or couplings");
    const Index d = couplings.front().a.dim();
    return at_path(path, [&] {
      return Generator::mean_field(Observable(Matrix::Zero(d, d)), couplings);
    });
  }
  throw ConfigError(path + ".type: expected \"linear\" or \"meanfield\", got " + type.dump());
}

IntegrationPlan parse_plan(const json& j, const std::string& path) {
  IntegrationPlan plan;
  plan.t_final = number_at<double>(member(j, "t_final", path), path + ".t_final");
  plan.steps = number_at<std::size_t>(member(j, "steps", path), path + ".steps");
  const json& renorm = member(j, "renormalize", path);
  if (!renorm.is_boolean()) throw ConfigError(path + ".renormalize: expected a boolean");
  plan.renormalize = renorm.get<bool>();
  at_path(path, [&] { plan.validate(); });
  return plan;
}

DensityMatrix parse_state(const json& j, const std::string& path) {
  return at_path(path, [&]() -> DensityMatrix {
    if (j.is_array()) return DensityMatrix(io::matrix_from_json(j));
    if (j.contains("matrix")) return DensityMatrix(io::matrix_from_json(j.at("matrix")));
    if (j.contains("vector")) {
      return DensityMatrix::from_pure(PureState(io::vector_from_json(j.at("vector"))));
    }
    const auto preset = member(j, "preset", path).get<std::string>();
    const auto dim = number_at<Index>(member(j, "dim", path), path + ".dim");
    if (preset == "maximally_mixed") return DensityMatrix::maximally_mixed(dim);
    if (preset == "basis") {
      return DensityMatrix::basis_state(dim, number_at<Index>(member(j, "index", path), path + ".index"));
    }
    throw ConfigError(path + ".preset: unknown preset \"" + preset + "\"");
  });
}

PureStateMap parse_map(const json& j, const fs::path& base_dir, const std::string& path) {
  const auto type = member(j, "type", path).get<std::string>();
  if (type == "unitary" || type == "antiunitary") {
    const Matrix u = at_path(path + ".U", [&] { return io::matrix_from_json(member(j, "U", path)); });
    return at_path(path + ".U", [&] {
      return type == "unitary" ? PureStateMap::unitary(u) : PureStateMap::antiunitary(u);
    });
  }
  if (type == "sampled") {
    json list;
    if (j.contains("file")) {
      const fs::path file = base_dir / j.at("file").get<std::string>();
      std::ifstream is(file);
      if (!is) throw ConfigError(path + ".file: cannot open " + file.string());
      list = json::parse(is, nullptr, false);
      if (list.is_discarded()) throw ConfigError(path + ".file: malformed JSON in " + file.string());
    } else {
      list = member(j, "samples", path);
    }
    if (!list.is_array()) throw ConfigError(path + ": samples must be an array");
    std::vector<std::pair<PureState, PureState>> samples;
    for (std::size_t k = 0; k < list.size(); ++k) {
      const std::string spath = path + ".samples[" + std::to_string(k) + "]";
      samples.emplace_back(
          at_path(spath + ".in", [&] { return PureState(io::vector_from_json(member(list[k], "in", spath))); }),
          at_path(spath + ".out", [&] { return PureState(io::vector_from_json(member(list[k], "out", spath))); }));
    }
    return at_path(path, [&] { return PureStateMap::sampled(std::move(samples)); });
  }
  if (type == "flow") {
    Generator g = parse_generator(member(j, "generator", path), path + ".generator");
    IntegrationPlan plan = parse_plan(member(j, "plan", path), path + ".plan");
    return PureStateMap::from_flow(FlowMap(std::move(g), plan));
  }
  throw ConfigError(path + ".type: expected unitary, antiunitary, sampled or flow");
}

BipartiteState parse_experiment(const json& j, const std::string& path) {
  if (j.contains("matrix")) {
    const auto ds = number_at<Index>(member(j, "dim_S", path), path + ".dim_S");
    const auto dr = number_at<Index>(member(j, "dim_R", path), path + ".dim_R");
    return at_path(path, [&] {
      return BipartiteState(DensityMatrix(io::matrix_from_json(j.at("matrix"))), ds, dr);
    });
  }
  const auto preset = member(j, "preset", path).get<std::string>();
  if (preset == "correlated") {
    const DensityMatrix rho1 = parse_state(member(j, "rho1", path), path + ".rho1");
    const DensityMatrix rho2 = parse_state(member(j, "rho2", path), path + ".rho2");
    const double p = number_at<double>(member(j, "p", path), path + ".p");
    return at_path(path, [&] { return embed_classical_ancilla(rho1, rho2, p); });
  }
  if (preset == "entangled") {
    const auto dim = number_at<Index>(member(j, "dim", path), path + ".dim");
    return at_path(path, [&] { return maximally_entangled(dim); });
  }
  throw ConfigError(path + ".preset: expected \"correlated\" or \"entangled\"");
}

MeasurementBasis parse_basis(const json& j, Index dim_r, const std::string& path) {
  return at_path(path, [&] {
    if (j.is_string()) {
      const auto name = j.get<std::string>();
      if (name == "computational") return MeasurementBasis::computational(dim_r);
      if (name == "fourier" || name == "hadamard") return MeasurementBasis::fourier(dim_r);
      throw ConfigError(path + ": unknown basis \"" + name + "\"");
    }
    if (!j.is_array()) throw ConfigError(path + ": expected a basis name or a list of vectors");
    std::vector<PureState> vectors;
    for (const auto& v : j) vectors.emplace_back(io::vector_from_json(v));
    MeasurementBasis basis(std::move(vectors));
    if (basis.dim() != dim_r) {
      throw ConfigError(path + ": basis dimension " + std::to_string(basis.dim()) +
                        " does not match R dimension " + std::to_string(dim_r));
    }
    return basis;
  });
}

// ---------------------------------------------------------------------------
// Config lifecycle

json resolve_config(json config, const std::string& command, std::optional<std::uint64_t> seed) {
  if (!config.is_object()) throw ConfigError("config must be a JSON object");
  config["command"] = command;
  if (seed) config["seed"] = *seed;
  json& plan = config["plan"];
  if (plan.is_null()) plan = json::object();
  if (plan.is_object()) {
    if (!plan.contains("t_final")) plan["t_final"] = kDefaultTFinal;
    if (!plan.contains("steps")) plan["steps"] = kDefaultSteps;
    if (!plan.contains("renormalize")) plan["renormalize"] = true;
  }
  if (command == "wigner") config.erase("plan");
  if (command == "certify") {
    if (!config.contains("samples")) config["samples"] = kDefaultSamples;
    if (!config.contains("tolerance")) config["tolerance"] = kDefaultLinearityTolerance;
  }
  if (command == "wigner" && !config.contains("trials")) config["trials"] = kDefaultTrials;
  if (command == "signaling") {
    if (!config.contains("tolerance")) config["tolerance"] = kDefaultSignalTolerance;
    if (!config.contains("prescription")) config["prescription"] = "branch_resolved";
  }
  return config;
}

RunConfig load_config(const Options& opts) {
  std::ifstream is(opts.config);
  if (!is) throw ConfigError("cannot open config " + opts.config.string());
  json doc = json::parse(is, nullptr, false);
  if (doc.is_discarded()) throw ConfigError("malformed JSON in " + opts.config.string());
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");

  std::string command = opts.command;
  if (command == "validate") {
    if (!doc.contains("command") || !doc.at("command").is_string()) {
      throw ConfigError("validate needs a \"command\" field in the config");
    }
    command = doc.at("command").get<std::string>();
  } else if (doc.contains("command") && doc.at("command") != command) {
    throw ConfigError("config is for command " + doc.at("command").dump() + ", not \"" +
                      command + "\"");
  }
  if (!is_known(command)) throw ConfigError("unknown command \"" + command + "\"");

  RunConfig config;
  config.command = command;
  config.document = resolve_config(std::move(doc), command, opts.seed);
  config.base_dir = opts.config.parent_path();
  config.out_dir = opts.out_dir;
  config.csv = opts.csv || config.document.value("csv", false);
  return config;
}

std::vector<std::string> validate(const RunConfig& config) {
  std::vector<std::string> diags;
  const json& doc = config.document;
  if (!is_known(config.command)) {
    diags.push_back("unknown command \"" + config.command + "\"");
    return diags;
  }
  auto need = [&](const char* key) {
    if (!doc.contains(key)) {
      diags.push_back(std::string(key) + ": missing");
      return false;
    }
    return true;
  };

  std::optional<Index> gen_dim;
  if (config.command != "wigner" && need("generator")) {
    collect(diags, [&] { gen_dim = parse_generator(doc.at("generator")).dim(); });
  }
  if (config.command != "wigner") {
    collect(diags, [&] { parse_plan(doc.at("plan")); });
  }
  if (config.command == "certify" || config.command == "wigner") {
    if (need("seed")) {
      collect(diags, [&] { number_at<std::uint64_t>(doc.at("seed"), "seed"); });
    }
  }

  if (config.command == "evolve" && need("state")) {
    collect(diags, [&] {
      const DensityMatrix rho = parse_state(doc.at("state"));
      if (gen_dim) check_dim(rho.dim(), *gen_dim, "state", diags);
    });
  }

  if (config.command == "certify") {
    collect(diags, [&] {
      if (number_at<std::size_t>(doc.at("samples"), "samples") < 1) {
        throw ConfigError("samples: must be >= 1");
      }
    });
    collect(diags, [&] {
      if (!(number_at<double>(doc.at("tolerance"), "tolerance") > 0.0)) {
        throw ConfigError("tolerance: must be positive");
      }
    });
    if (gen_dim) {
      collect(diags, [&] {
        const Index dim = required_dim(doc, "dim", *gen_dim);
        check_dim(dim, *gen_dim, "dim", diags);
        if (dim < 2) diags.push_back("dim: certification needs dimension >= 2");
      });
    }
  }

  if (config.command == "wigner" && need("map")) {
    collect(diags, [&] {
      const PureStateMap map = parse_map(doc.at("map"), config.base_dir);
      const Index dim = required_dim(doc, "dim", map.dim());
      check_dim(dim, map.dim(), "dim", diags);
      if (dim < 2) diags.push_back("dim: classification needs dimension >= 2");
      const auto trials = number_at<std::size_t>(doc.at("trials"), "trials");
      if (trials < static_cast<std::size_t>(dim) + 2) {
        diags.push_back("trials: need at least dim + 2 = " + std::to_string(dim + 2));
      }
    });
  }

  if (config.command == "signaling") {
    std::optional<BipartiteState> pi;
    if (need("experiment")) collect(diags, [&] { pi = parse_experiment(doc.at("experiment")); });
    if (pi && gen_dim) check_dim(pi->dim_s(), *gen_dim, "experiment S factor", diags);
    std::optional<MeasurementBasis> a;
    std::optional<MeasurementBasis> b;
    if (need("basisA") && pi) collect(diags, [&] { a = parse_basis(doc.at("basisA"), pi->dim_r(), "basisA"); });
    if (need("basisB") && pi) collect(diags, [&] { b = parse_basis(doc.at("basisB"), pi->dim_r(), "basisB"); });
    collect(diags, [&] { parse_prescription(doc.at("prescription")); });
    collect(diags, [&] {
      if (!(number_at<double>(doc.at("tolerance"), "tolerance") > 0.0)) {
        throw ConfigError("tolerance: must be positive");
      }
    });
  }
  return diags;
}

int run(const RunConfig& config, std::ostream& err) {
  try {
    if (config.command == "evolve") return run_evolve(config);
    if (config.command == "certify") return run_certify(config);
    if (config.command == "wigner") return run_wigner(config);
    if (config.command == "signaling") return run_signaling(config);
    err << "error: unknown command \"" << config.command << "\"\n";
    return kConfigError;
  } catch (const IntegrationError& e) {
    err << "error: " << e.what() << '\n';
    return kIntegrationFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }
}

int execute(const Options& opts, std::ostream& out, std::ostream& err) {
  if (opts.command == "wigner" && opts.emit_inputs) {
    try {
      json list = json::array();
      for (const auto& psi : classification_inputs(*opts.emit_inputs)) {
        list.push_back(io::vector_to_json(psi.vector()));
      }
      const fs::path target = opts.out_dir / "wigner_inputs.json";
      write_file(target, io::dump_fixed(list) + "\n");
      out << target.string() << '\n';
      return kOk;
    } catch (const std::exception& e) {
      err << "error: " << e.what() << '\n';
      return kConfigError;
    }
  }

  RunConfig config;
  try {
    config = load_config(opts);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }
  const auto diags = validate(config);
  for (const auto& d : diags) err << "config: " << d << '\n';
  if (opts.command == "validate") {
    if (diags.empty()) out << "config ok (" << config.command << ")\n";
    return diags.empty() ? kOk : kConfigError;
  }
  if (!diags.empty()) return kConfigError;
  return run(config, err);
}

}  // namespace qlincert::cli
