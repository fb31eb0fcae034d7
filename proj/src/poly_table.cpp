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

#include <array>

#include "lqmc/lfsr.hpp"

namespace lqmc {
namespace {

// One primitive polynomial per order: the numerically smallest coefficient
// mask that passes is_primitive. Offsets come from
// search_offset(poly, kOffsetSearchDims, kOffsetSearchLimit); all reach
// zero defect.
// `lqmc table` prints this listing.
constexpr std::array<PolyTableEntry, 30> kTable = {{
    {3, 0x3, 3},
    {4, 0x3, 7},
    {5, 0x5, 3},
    {6, 0x3, 23},
    {7, 0x3, 9},
    {8, 0x1d, 13},
    {9, 0x11, 34},
    {10, 0x9, 35},
    {11, 0x5, 14},
    {12, 0x53, 172},
    {13, 0x1b, 15},
    {14, 0x2b, 23},
    {15, 0x3, 38},
    {16, 0x2d, 73},
    {17, 0x9, 26},
    {18, 0x27, 50},
    {19, 0x27, 27},
    {20, 0x9, 212},
    {21, 0x5, 115},
    {22, 0x3, 233},
    {23, 0x21, 56},
    {24, 0x1b, 1433},
    {25, 0x9, 35},
    {26, 0x47, 89},
    {27, 0x27, 132},
    {28, 0x9, 737},
    {29, 0x5, 149},
    {30, 0x53, 1181},
    {31, 0x9, 102},
    {32, 0xaf, 74},
}};

}  // namespace

std::span<const PolyTableEntry> builtin_table() { return kTable; }

}  // namespace lqmc
