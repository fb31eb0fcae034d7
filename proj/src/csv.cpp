// Copyright 2026 The lqmc Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS-IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lqmc/csv.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "lqmc/error.hpp"

namespace lqmc {

std::string format_double(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.emplace_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

double parse_double(std::string_view token, std::size_t line) {
  const std::string text(trim(token));
  if (text.empty()) throw ParseError("empty numeric field", line);
  char* end = nullptr;
  errno = 0;
  const double value = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size() || errno == ERANGE ||
      !std::isfinite(value)) {
    throw ParseError("not a finite number: '" + text + "'", line);
  }
  return value;
}

long long parse_integer(std::string_view token, std::size_t line) {
  const std::string text(trim(token));
  char* end = nullptr;
  errno = 0;
  const long long value = std::strtoll(text.c_str(), &end, 0);
  if (text.empty() || end != text.c_str() + text.size() || errno == ERANGE) {
    throw ParseError("not an integer: '" + text + "'", line);
  }
  return value;
}

namespace {

bool is_number(const std::string& field) {
  if (field.empty()) return false;
  char* end = nullptr;
  std::strtod(field.c_str(), &end);
  return end == field.c_str() + field.size();
}

}  // namespace

Eigen::MatrixXd read_numeric_csv(std::istream& in, int columns) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_number = 0;
  bool seen_content = false;
  while (std::getline(in, line)) {
    ++line_number;
    const std::string_view content = trim(line);
    if (content.empty() || content.front() == '#') continue;
    const auto fields = split_csv_line(content);
    if (!seen_content) {
      seen_content = true;
      bool header = false;
      for (const auto& f : fields) header = header || !is_number(f);
      if (header && !is_number(fields.front())) {
        if (columns > 0 && static_cast<int>(fields.size()) != columns) {
          throw ParseError("expected " + std::to_string(columns) +
                               " columns, header has " +
                               std::to_string(fields.size()),
                           line_number);
        }
        continue;
      }
    }
    std::vector<double> row;
    row.reserve(fields.size());
    for (const auto& f : fields) row.push_back(parse_double(f, line_number));
    const std::size_t expected =
        columns > 0 ? static_cast<std::size_t>(columns)
                    : (rows.empty() ? row.size() : rows.front().size());
    if (row.size() != expected) {
      throw ParseError("expected " + std::to_string(expected) +
                           " fields, found " + std::to_string(row.size()),
                       line_number);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("no data rows", line_number);
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()),
                      static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return out;
}

}  // namespace lqmc
