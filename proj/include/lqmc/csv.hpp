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

#pragma once

#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace lqmc {

// Shortest round-trip-safe rendering: 17 significant digits.
std::string format_double(double value);

std::vector<std::string> split_csv_line(std::string_view line);

std::string_view trim(std::string_view s);

// Throws ParseError naming `line` when the token is not a finite number.
double parse_double(std::string_view token, std::size_t line);
long long parse_integer(std::string_view token, std::size_t line);

// Numeric table. Blank lines and lines starting with '#' are skipped; a first
// non-blank line containing a non-numeric field is taken as a header. Every
// row must have the same number of fields (and `columns` of them when
// columns > 0). Throws ParseError with the 1-based line number.
Eigen::MatrixXd read_numeric_csv(std::istream& in, int columns = -1);

}  // namespace lqmc
