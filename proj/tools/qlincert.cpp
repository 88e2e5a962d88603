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

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "qlincert/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"qlincert: mixture-linearity, Wigner and no-signaling checks for density-matrix dynamics"};
  app.set_version_flag("--version", std::string("qlincert ") + qlincert::kVersion);
  app.require_subcommand(1);

  qlincert::cli::Options opts;
  std::string config;
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  long emit_inputs = 0;

  auto add_common = [&](CLI::App* sub, bool config_required) {
    auto* opt = sub->add_option("--config", config, "Experiment config (JSON)")->check(CLI::ExistingFile);
    if (config_required) opt->required();
    sub->add_option("--seed", seed, "Seed override for randomized commands");
    sub->add_option("--out", out_dir, "Directory for report files");
  };

  auto* evolve = app.add_subcommand("evolve", "Integrate a generator from an initial state");
  add_common(evolve, true);
  evolve->add_flag("--csv", opts.csv, "Also write trajectory.csv");

  auto* certify = app.add_subcommand("certify", "Randomized mixture-linearity certificate");
  add_common(certify, true);

  auto* wigner = app.add_subcommand("wigner", "Inner-product invariance and unitary/antiunitary classification");
  add_common(wigner, false);
  wigner->add_option("--emit-inputs", emit_inputs,
                     "Write the input vectors a sampled map must cover for this dimension");

  auto* signaling = app.add_subcommand("signaling", "Remote-measurement signaling experiment");
  add_common(signaling, true);
  signaling->add_flag("--csv", opts.csv, "Also write distance.csv");

  auto* validate = app.add_subcommand("validate", "Check a config without running it");
  add_common(validate, true);

  CLI11_PARSE(app, argc, argv);

  CLI::App* chosen = app.get_subcommands().front();
  opts.command = chosen->get_name();
  opts.config = config;
  opts.out_dir = out_dir;
  if (chosen->count("--seed") > 0) opts.seed = seed;
  if (chosen == wigner && wigner->count("--emit-inputs") > 0) {
    if (emit_inputs < 2) {
      std::cerr << "error: --emit-inputs needs a dimension >= 2\n";
      return qlincert::cli::kConfigError;
    }
    opts.emit_inputs = emit_inputs;
  } else if (config.empty()) {
    std::cerr << "error: --config is required\n";
    return qlincert::cli::kConfigError;
  }
  return qlincert::cli::execute(opts, std::cout, std::cerr);
}
