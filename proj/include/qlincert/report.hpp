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

#include "qlincert/json_io.hpp"
#include "qlincert/linearity.hpp"
#include "qlincert/signaling.hpp"
#include "qlincert/wigner.hpp"

namespace qlincert::io {

json plan_to_json(const IntegrationPlan& plan);
json to_json(const LinearityReport& report);
json to_json(const WignerReport& report);
json to_json(const SignalingReport& report);

/// Shared tolerance table embedded in every report.
json tolerances_json();

}  // namespace qlincert::io
