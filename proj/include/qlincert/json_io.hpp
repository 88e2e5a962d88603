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

// Wire formats. Matrices are JSON arrays of rows, each row an array of
// [re, im] pairs (row-major). A flat row-major array of d*d pairs is also
// accepted on input. Vectors are arrays of [re, im] pairs.

#include <iosfwd>
#include <string>

#include "json.hpp"

#include "qlincert/dynamics.hpp"

namespace qlincert::io {

using nlohmann::json;

class FormatError : public Error {
 public:
  using Error::Error;
};

json complex_to_json(Complex z);
Complex complex_from_json(const json& j);

json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j);

json vector_to_json(const Vector& v);
Vector vector_from_json(const json& j);

/// Serializes with every floating-point number written as %.16e (17
/// significant digits) so identical inputs give byte-identical output.
/// Object keys come out sorted.
std::string dump_fixed(const json& j, int indent = 2);

/// CSV: header "t,re_0_0,im_0_0,re_0_1,..." then one row per time point.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

}  // namespace qlincert::io
