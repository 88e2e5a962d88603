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

#include "qlincert/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace qlincert::io {
namespace {

std::string format_double(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", x);
  return buf;
}

void dump_into(const json& j, int indent, int depth, std::string& out) {
  const bool pretty = indent >= 0;
  auto newline = [&](int d) {
    if (!pretty) return;
    out += '\n';
    out.append(static_cast<std::size_t>(d * indent), ' ');
  };
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += json(it.key()).dump();
        out += pretty ? ": " : ":";
        dump_into(it.value(), indent, depth + 1, out);
      }
      newline(depth);
      out += '}';
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line; matrices remain readable.
      bool scalars = true;
      for (const auto& e : j) scalars = scalars && !e.is_structured();
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i > 0) out += scalars && pretty ? ", " : ",";
        if (!scalars) newline(depth + 1);
        dump_into(j[i], indent, depth + 1, out);
      }
      if (!scalars) newline(depth);
      out += ']';
      return;
    }
    case json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

}  // namespace

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw FormatError("expected a [re, im] pair, got " + j.dump());
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index k = 0; k < m.cols(); ++k) row.push_back(complex_to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw FormatError("matrix literal must be a nonempty array");
  const bool nested = j[0].is_array() && !j[0].empty() && j[0][0].is_array();
  if (nested) {
    const auto n = static_cast<Index>(j.size());
    Matrix m(n, n);
    for (Index i = 0; i < n; ++i) {
      const json& row = j[static_cast<std::size_t>(i)];
      if (!row.is_array() || static_cast<Index>(row.size()) != n) {
        throw FormatError("matrix row " + std::to_string(i) + " does not have " +
                          std::to_string(n) + " entries");
      }
      for (Index k = 0; k < n; ++k) m(i, k) = complex_from_json(row[static_cast<std::size_t>(k)]);
    }
    return m;
  }
  const auto count = static_cast<Index>(j.size());
  const auto n = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(count))));
  if (n * n != count) throw FormatError("flat matrix literal length is not a perfect square");
  Matrix m(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index k = 0; k < n; ++k) m(i, k) = complex_from_json(j[static_cast<std::size_t>(i * n + k)]);
  }
  return m;
}

json vector_to_json(const Vector& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

Vector vector_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw FormatError("vector literal must be a nonempty array");
  Vector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Index>(i)) = complex_from_json(j[i]);
  return v;
}

std::string dump_fixed(const json& j, int indent) {
  std::string out;
  dump_into(j, indent, 0, out);
  return out;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  if (traj.states.empty()) return;
  const Index d = traj.states.front().dim();
  os << "t";
  for (Index i = 0; i < d; ++i) {
    for (Index k = 0; k < d; ++k) os << ",re_" << i << '_' << k << ",im_" << i << '_' << k;
  }
  os << '\n';
  for (std::size_t n = 0; n < traj.states.size(); ++n) {
    os << format_double(traj.times[n]);
    const Matrix& m = traj.states[n].matrix();
    for (Index i = 0; i < d; ++i) {
      for (Index k = 0; k < d; ++k) {
        os << ',' << format_double(m(i, k).real()) << ',' << format_double(m(i, k).imag());
      }
    }
    os << '\n';
  }
}

}  // namespace qlincert::io
