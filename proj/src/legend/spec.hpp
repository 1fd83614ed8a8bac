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

#include "svg/color.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace legendgen::legend {

enum class SymbolType { Semantic, NonSemantic, DataEncoded };
enum class SymbolLayout { Continuous, Connected, Nested, DiscreteUniform, DiscreteNonuniform };
enum class TextLayout { AsTick, AccompanyingCross, AccompanyingSide, Embedded, AsSymbol, AsLabel, None };
enum class MultiLayout { Matrix, Flattened, Parallel, Combined, Single };
enum class Direction { Horizontal, Vertical };

const char* name(SymbolType v);
const char* name(SymbolLayout v);
const char* name(TextLayout v);
const char* name(MultiLayout v);
const char* name(Direction v);

// Inverse of name(); throw InvalidArgument on unknown text.
SymbolType parseSymbolType(std::string_view text);
SymbolLayout parseSymbolLayout(std::string_view text);
TextLayout parseTextLayout(std::string_view text);
MultiLayout parseMultiLayout(std::string_view text);
Direction parseDirection(std::string_view text);

inline constexpr double kDefaultSwatchSize = 12.0;
inline constexpr double kLabelFontSize = 11.0;
inline constexpr double kPadding = 4.0;

/// One point of the legend design space.
struct LegendSpec {
    SymbolType symbolType = SymbolType::NonSemantic;
    SymbolLayout symbolLayout = SymbolLayout::DiscreteUniform;
    TextLayout textLayout = TextLayout::AccompanyingCross;
    MultiLayout multiLayout = MultiLayout::Single;
    Direction direction = Direction::Vertical;
    double anchorX = 0; // top-left corner of the legend panel, document units
    double anchorY = 0;
    double swatchSize = kDefaultSwatchSize;
    svg::Color textColor = svg::kBlack;
    std::vector<std::string> channelGroupIds;

    friend bool operator==(const LegendSpec&, const LegendSpec&) = default;
};

/// Flat JSON object with snake_case keys.
std::string serializeSpec(const LegendSpec& spec);

/// Parses serializeSpec output; missing keys keep their defaults.
/// Throws InvalidArgument on malformed input.
LegendSpec parseSpec(std::string_view text);

} // namespace legendgen::legend
