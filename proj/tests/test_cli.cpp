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

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "qlincert/cli.hpp"

using namespace qlincert;
using namespace qlincert::cli;
namespace fs = std::filesystem;

namespace {

// Fresh scratch directory per call.
fs::path scratch() {
  static std::mt19937_64 gen(std::random_device{}());
  fs::path dir = fs::temp_directory_path() / ("qlincert_test_" + std::to_string(gen()));
  fs::create_directories(dir);
  return dir;
}

fs::path write_config(const fs::path& dir, const std::string& name, const json& doc) {
  const fs::path path = dir / name;
  std::ofstream(path) << doc.dump(2);
  return path;
}

std::string slurp(const fs::path& path) {
  std::ifstream is(path, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(Options opts) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = execute(opts, out, err);
  return {code, out.str(), err.str()};
}

Options opts_for(const std::string& command, const fs::path& config, const fs::path& out_dir) {
  Options o;
  o.command = command;
  o.config = config;
  o.out_dir = out_dir;
  return o;
}

const json kSigmaZ = json::parse(R"([[[1,0],[0,0]],[[0,0],[-1,0]]])");
const json kSigmaX = json::parse(R"([[[0,0],[1,0]],[[1,0],[0,0]]])");

json meanfield_generator() {
  return {{"type", "meanfield"}, {"couplings", {{{"g", 1.0}, {"A", kSigmaZ}, {"B", kSigmaX}}}}};
}

}  // namespace

TEST_CASE("malformed JSON is a config error with no report") {
  const fs::path out = scratch();
  const auto r = run_cli(opts_for("certify", fs::path(QLINCERT_TEST_DATA_DIR) / "malformed.json", out));
  CHECK(r.code == kConfigError);
  CHECK(r.err.find("malformed JSON") != std::string::npos);
  CHECK_FALSE(fs::exists(out / "certify_report.json"));
  CHECK(run_cli(opts_for("certify", out / "missing.json", out)).code == kConfigError);
}

TEST_CASE("certify exit codes and reports") {
  const fs::path out = scratch();
  const auto lin = run_cli(opts_for("certify", fs::path(QLINCERT_CONFIG_DIR) / "certify_linear.json", out));
  CHECK(lin.code == kOk);
  const json report = json::parse(slurp(out / "certify_report.json"));
  CHECK(report["result"]["verdict"] == "linear");
  CHECK(report["tool"]["name"] == "qlincert");
  CHECK(report["command"] == "certify");
  CHECK(report["config"]["seed"] == 20240601);

  const fs::path out2 = scratch();
  const json doc = {{"generator", meanfield_generator()}, {"seed", 3}, {"samples", 10},
                    {"plan", {{"t_final", 0.2}, {"steps", 200}, {"renormalize", true}}}};
  const auto mf = run_cli(opts_for("certify", write_config(out2, "mf.json", doc), out2));
  CHECK(mf.code == kViolation);
  const json mreport = json::parse(slurp(out2 / "certify_report.json"));
  CHECK(mreport["result"]["verdict"] == "nonlinear");
  // Defaults are written back into the resolved config.
  CHECK(mreport["config"]["tolerance"].get<double>() == 1e-7);
}

TEST_CASE("reports are byte-identical across runs and seeds override") {
  const fs::path dir = scratch();
  const json doc = {{"generator", meanfield_generator()}, {"seed", 11}, {"samples", 8},
                    {"plan", {{"t_final", 0.3}, {"steps", 300}, {"renormalize", true}}}};
  const fs::path config = write_config(dir, "c.json", doc);
  const fs::path a = dir / "a";
  const fs::path b = dir / "b";
  const fs::path c = dir / "c";
  CHECK(run_cli(opts_for("certify", config, a)).code == kViolation);
  CHECK(run_cli(opts_for("certify", config, b)).code == kViolation);
  CHECK(slurp(a / "certify_report.json") == slurp(b / "certify_report.json"));

  Options o = opts_for("certify", config, c);
  o.seed = 12;
  CHECK(run_cli(o).code == kViolation);
  const std::string other = slurp(c / "certify_report.json");
  CHECK(other != slurp(a / "certify_report.json"));
  CHECK(json::parse(other)["config"]["seed"] == 12);
}

TEST_CASE("validate diagnostics") {
  const fs::path dir = scratch();
  json doc = {{"command", "evolve"},
              {"generator", {{"type", "linear"}, {"H", json::parse(R"([[[1,0],[0.5,0]],[[0,0],[-1,0]]])")}}},
              {"state", {{"preset", "basis"}, {"dim", 2}, {"index", 0}}}};
  auto r = run_cli(opts_for("validate", write_config(dir, "bad_h.json", doc), dir));
  CHECK(r.code == kConfigError);
  CHECK(r.err.find("generator.H") != std::string::npos);
  CHECK(r.err.find("not Hermitian") != std::string::npos);
  CHECK(r.err.find("0.5") != std::string::npos);

  json sig = json::parse(slurp(fs::path(QLINCERT_CONFIG_DIR) / "signaling_meanfield.json"));
  sig["basisB"] = json::parse(R"([[[1,0],[0,0]],[[1,0],[0,0]]])");
  r = run_cli(opts_for("validate", write_config(dir, "bad_basis.json", sig), dir));
  CHECK(r.code == kConfigError);
  CHECK(r.err.find("basisB") != std::string::npos);
  CHECK(r.err.find("orthogonal") != std::string::npos);

  r = run_cli(opts_for("validate", fs::path(QLINCERT_CONFIG_DIR) / "signaling_meanfield.json", dir));
  CHECK(r.code == kOk);
  CHECK(r.out.find("config ok") != std::string::npos);

  // Dimension mismatch between generator and state.
  doc["generator"]["H"] = kSigmaZ;
  doc["state"]["dim"] = 3;
  r = run_cli(opts_for("validate", write_config(dir, "dims.json", doc), dir));
  CHECK(r.code == kConfigError);
  CHECK(r.err.find("state: dimension 3") != std::string::npos);

  // A command mismatch is an error too.
  r = run_cli(opts_for("certify", write_config(dir, "dims.json", doc), dir));
  CHECK(r.code == kConfigError);
}

TEST_CASE("evolve writes csv on request") {
  const fs::path out = scratch();
  Options o = opts_for("evolve", fs::path(QLINCERT_CONFIG_DIR) / "evolve_precession.json", out);
  o.csv = true;
  CHECK(run_cli(o).code == kOk);
  const json report = json::parse(slurp(out / "evolve_report.json"));
  CHECK(report["result"]["points"] == 1001);
  CHECK(report["result"]["purity"].get<double>() == doctest::Approx(1.0).epsilon(1e-9));
  const std::string csv = slurp(out / "trajectory.csv");
  CHECK(csv.rfind("t,re_0_0,im_0_0", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1002);
}

TEST_CASE("integration failure exit code") {
  const fs::path dir = scratch();
  const json doc = {{"generator", {{"type", "meanfield"},
                                   {"couplings", {{{"g", 50.0}, {"A", kSigmaZ}, {"B", kSigmaX}}}}}},
                    {"state", {{"matrix", json::parse(R"([[[0.95,0],[0,0]],[[0,0],[0.05,0]]])")}}},
                    {"plan", {{"t_final", 1.0}, {"steps", 10}, {"renormalize", true}}}};
  const auto r = run_cli(opts_for("evolve", write_config(dir, "blowup.json", doc), dir));
  CHECK(r.code == kIntegrationFailure);
  CHECK_FALSE(fs::exists(dir / "evolve_report.json"));
}

TEST_CASE("signaling command") {
  const fs::path out = scratch();
  Options o = opts_for("signaling", fs::path(QLINCERT_CONFIG_DIR) / "signaling_meanfield.json", out);
  o.csv = true;
  CHECK(run_cli(o).code == kViolation);
  const json report = json::parse(slurp(out / "signaling_report.json"));
  CHECK(report["result"]["signal_witnessed"] == true);
  const double d = report["result"]["max_distance"].get<double>();
  CHECK(std::abs(d - 0.1) / 0.1 < 0.05);
  CHECK(fs::exists(out / "distance.csv"));

  const fs::path out2 = scratch();
  CHECK(run_cli(opts_for("signaling", fs::path(QLINCERT_CONFIG_DIR) / "signaling_linear.json", out2)).code == kOk);
}

TEST_CASE("wigner command and emitted inputs") {
  const fs::path out = scratch();
  CHECK(run_cli(opts_for("wigner", fs::path(QLINCERT_CONFIG_DIR) / "wigner_antiunitary.json", out)).code == kOk);
  const json report = json::parse(slurp(out / "wigner_report.json"));
  CHECK(report["result"]["classification"] == "antilinear");

  Options e;
  e.command = "wigner";
  e.out_dir = out;
  e.emit_inputs = 3;
  CHECK(run_cli(e).code == kOk);
  const json inputs = json::parse(slurp(out / "wigner_inputs.json"));
  CHECK(inputs.size() == 6);

  // Feed back the outputs of a phase-scrambled antiunitary as a sampled map.
  json samples = json::array();
  const std::complex<double> phase(std::cos(0.7), std::sin(0.7));
  for (const auto& v : inputs) {
    const Vector in = io::vector_from_json(v);
    Vector outv = (phase * in.conjugate()).reverse();
    samples.push_back({{"in", v}, {"out", io::vector_to_json(outv)}});
  }
  const fs::path dir = scratch();
  std::ofstream(dir / "samples.json") << samples.dump();
  const json doc = {{"map", {{"type", "sampled"}, {"file", "samples.json"}}}, {"seed", 1}, {"trials", 5}};
  CHECK(run_cli(opts_for("wigner", write_config(dir, "w.json", doc), dir)).code == kOk);
  CHECK(json::parse(slurp(dir / "wigner_report.json"))["result"]["classification"] == "antilinear");
}
