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

#include "qlincert/report.hpp"

namespace qlincert::io {

json plan_to_json(const IntegrationPlan& plan) {
  return {{"t_final", plan.t_final}, {"steps", plan.steps}, {"renormalize", plan.renormalize}};
}

json tolerances_json() {
  return {{"herm", tol::herm},   {"trace", tol::trace}, {"psd", tol::psd},
          {"recon", tol::recon}, {"rank", tol::rank},   {"class", kClassTol}};
}

json to_json(const LinearityReport& report) {
  json samples = json::array();
  for (const auto& s : report.samples) {
    json j = {{"index", s.index},
              {"p", s.p},
              {"generator_gap", s.generator_gap},
              {"flow_gap", s.flow_gap},
              {"embedding_gap", s.embedding_gap},
              {"degenerate", s.degenerate}};
    if (s.failure) j["failure"] = *s.failure;
    samples.push_back(std::move(j));
  }
  json out = {{"samples", std::move(samples)},
              {"maxima",
               {{"generator_gap", report.generator_gap},
                {"flow_gap", report.flow_gap},
                {"embedding_gap", report.embedding_gap}}},
              {"evaluated", report.evaluated},
              {"failed", report.failed},
              {"coverage_low", report.coverage_low},
              {"verdict", to_string(report.verdict)},
              {"tolerance", report.tolerance},
              {"nonlinear_threshold", 10.0 * report.tolerance}};
  out["seed"] = report.seed ? json(*report.seed) : json(nullptr);
  return out;
}

json to_json(const WignerReport& report) {
  return {{"purity_preserved", report.purity_preserved},
          {"inner_products_preserved", report.inner_products_preserved},
          {"entropy_nondecreasing", report.entropy_nondecreasing},
          {"classification", to_string(report.classification)},
          {"max_violation", report.max_violation},
          {"pair_count", report.pair_count},
          {"linear_residual", report.linear_residual},
          {"antilinear_residual", report.antilinear_residual}};
}

json to_json(const SignalingReport& report) {
  json series = json::array();
  for (const auto& [t, d] : report.distance_vs_time) series.push_back(json::array({t, d}));
  return {{"distance_vs_time", std::move(series)},
          {"max_distance", report.max_distance},
          {"prescription", to_string(report.prescription)}};
}

}  // namespace qlincert::io
