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

#include <algorithm>
#include <sstream>

#include "doctest.h"
#include "qlincert/json_io.hpp"
#include "qlincert/random.hpp"

using namespace qlincert;
using io::json;

TEST_CASE("matrix round trip") {
  Rng rng(101);
  for (int trial = 0; trial < 40; ++trial) {
    const Index d = 1 + trial % 6;
    Matrix m(d, d);
    for (Index i = 0; i < d; ++i)
      for (Index j = 0; j < d; ++j) m(i, j) = Complex(rng.normal(), rng.normal());
    const json j = io::matrix_to_json(m);
    CHECK(io::matrix_from_json(j) == m);
    // Through text as well, at full precision.
    CHECK(io::matrix_from_json(json::parse(io::dump_fixed(j))) == m);
    CHECK(io::matrix_from_json(json::parse(j.dump())) == m);
  }
  const Vector v = gaussian_vector(5, rng);
  CHECK(io::vector_from_json(json::parse(io::dump_fixed(io::vector_to_json(v)))) == v);
}

TEST_CASE("matrix literal forms") {
  const json nested = json::parse(R"([[[1,0],[0,-1]],[[0,1],[2,0]]])");
  const json flat = json::parse(R"([[1,0],[0,-1],[0,1],[2,0]])");
  const Matrix a = io::matrix_from_json(nested);
  CHECK(a == io::matrix_from_json(flat));
  CHECK(a(0, 1) == Complex(0, -1));
  CHECK(a(1, 0) == Complex(0, 1));
  CHECK(a(1, 1) == Complex(2, 0));

  CHECK_THROWS_AS(io::matrix_from_json(json::parse("[]")), io::FormatError);
  CHECK_THROWS_AS(io::matrix_from_json(json::parse(R"([[1,0],[0,0],[1,1]])")), io::FormatError);
  CHECK_THROWS_AS(io::matrix_from_json(json::parse(R"([[[1,0]],[[0,0],[1,0]]])")), io::FormatError);
  CHECK_THROWS_AS(io::complex_from_json(json::parse(R"("x")")), io::FormatError);
  CHECK_THROWS_AS(io::complex_from_json(json::parse("[1,2,3]")), io::FormatError);
}

TEST_CASE("fixed-format dump") {
  const json j = {{"b", 0.1}, {"a", {1, 2.5, -3e-20}}, {"c", "text"}, {"d", true}};
  const std::string s = io::dump_fixed(j);
  CHECK(s == io::dump_fixed(json::parse(s)));
  CHECK(s.find("\"a\"") < s.find("\"b\""));
  CHECK(s.find("1.0000000000000001e-01") != std::string::npos);
  CHECK(s.find("-3.0000000000000003e-20") != std::string::npos);
  CHECK(json::parse(s)["b"].get<double>() == 0.1);
  CHECK(json::parse(s)["a"][0].get<int>() == 1);
}

TEST_CASE("trajectory csv") {
  Trajectory traj;
  traj.times = {0.0, 0.5};
  traj.states = {DensityMatrix::basis_state(2, 0), DensityMatrix::maximally_mixed(2)};
  std::ostringstream os;
  io::write_trajectory_csv(os, traj);
  std::istringstream is(os.str());
  std::string header;
  std::getline(is, header);
  CHECK(header == "t,re_0_0,im_0_0,re_0_1,im_0_1,re_1_0,im_1_0,re_1_1,im_1_1");
  std::string line;
  int rows = 0;
  while (std::getline(is, line)) {
    ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == 8);
  }
  CHECK(rows == 2);
}
