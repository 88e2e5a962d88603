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

#pragma once

// Config parsing, validation and command execution behind the qlincert tool.
//
// Exit codes: 0 success / linear / no violation, 1 nonlinearity or violation
// witnessed, 2 inconclusive, 3 configuration error, 4 integration failure.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qlincert/json_io.hpp"
#include "qlincert/signaling.hpp"
#include "qlincert/wigner.hpp"

namespace qlincert::cli {

using nlohmann::json;

enum ExitCode : int {
  kOk = 0,
  kViolation = 1,
  kInconclusive = 2,
  kConfigError = 3,
  kIntegrationFailure = 4,
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

struct Options {
  std::string command;  // evolve | certify | wigner | signaling | validate
  std::filesystem::path config;
  std::optional<std::uint64_t> seed;
  std::filesystem::path out_dir = ".";
  bool csv = false;
  std::optional<Index> emit_inputs;  // wigner: write the required sample inputs
};

struct RunConfig {
  std::string command;
  json document;  // resolved: defaults filled in, seed override applied
  std::filesystem::path base_dir;
  std::filesystem::path out_dir = ".";
  bool csv = false;
};

// Section parsers; each throws ConfigError naming `path`.
Generator parse_generator(const json& j, const std::string& path = "generator");
IntegrationPlan parse_plan(const json& j, const std::string& path = "plan");
DensityMatrix parse_state(const json& j, const std::string& path = "state");
PureStateMap parse_map(const json& j, const std::filesystem::path& base_dir,
                       const std::string& path = "map");
BipartiteState parse_experiment(const json& j, const std::string& path = "experiment");
MeasurementBasis parse_basis(const json& j, Index dim_r, const std::string& path);

/// Reads and resolves a config file. The command comes from `opts` (or the
/// file's "command" field for validate). Throws ConfigError on unreadable or
/// malformed JSON and on a command mismatch.
RunConfig load_config(const Options& opts);

/// Fills defaults and applies the seed override.
json resolve_config(json config, const std::string& command, std::optional<std::uint64_t> seed);

/// Every problem that would stop `run` at the precondition stage; empty when
/// the config is runnable.
std::vector<std::string> validate(const RunConfig& config);

/// Executes a validated config, writing reports under config.out_dir.
int run(const RunConfig& config, std::ostream& err);

/// Whole pipeline for one invocation: load, validate, run.
int execute(const Options& opts, std::ostream& out, std::ostream& err);

}  // namespace qlincert::cli
