// Copyright 2026 The vandcond Authors
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

// Minimal CSV field handling shared by the bound and sweep writers. Fields
// never contain commas or quotes.

#pragma once

#include <charconv>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vandcond/error.hpp"
#include "vandcond/format.hpp"

namespace vandcond::csv {

inline std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  for (char c : line) {
    if (c == ',') {
      out.push_back(field);
      field.clear();
    } else if (c != '\r' && c != '\n') {
      field.push_back(c);
    }
  }
  out.push_back(field);
  return out;
}

inline double to_double(const std::string& field) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    fail(ErrorCode::Io, "bad numeric field '" + field + "'");
  }
  return v;
}

inline std::int64_t to_int(const std::string& field) {
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    fail(ErrorCode::Io, "bad integer field '" + field + "'");
  }
  return v;
}

inline std::optional<double> to_opt_double(const std::string& field) {
  if (field.empty()) return std::nullopt;
  return to_double(field);
}

inline std::optional<std::int64_t> to_opt_int(const std::string& field) {
  if (field.empty()) return std::nullopt;
  return to_int(field);
}

inline std::string field(const std::optional<double>& v) { return v ? format_g(*v) : std::string(); }
inline std::string field(const std::optional<std::int64_t>& v) {
  return v ? std::to_string(*v) : std::string();
}

}  // namespace vandcond::csv
