// Copyright 2026 The legendgen Authors
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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace legendgen::svg {

/// Parses one SVG number ("1.5", "-2e3", ".5") starting at pos, skipping
/// leading whitespace/commas. Advances pos past the number on success.
std::optional<double> readNumber(std::string_view text, std::size_t& pos);

/// Whitespace/comma separated number list.
std::optional<std::vector<double>> parseNumberList(std::string_view text);

/// Parses a length attribute ("12", "12px"); other units are rejected.
std::optional<double> parseLength(std::string_view text);

/// Shortest representation that round-trips exactly.
std::string formatNumber(double v);

} // namespace legendgen::svg
