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

#include "legend/spec.hpp"

#include "error.hpp"

#include <json.hpp>

#include <array>
#include <utility>

namespace legendgen::legend {

namespace {

template <class E, std::size_t N>
const char* lookup(const std::array<std::pair<E, const char*>, N>& table, E v)
{
    for (const auto& [e, s] : table)
        if (e == v)
            return s;
    return "?";
}

template <class E, std::size_t N>
E reverse(const std::array<std::pair<E, const char*>, N>& table, std::string_view text, const char* what)
{
    for (const auto& [e, s] : table)
        if (text == s)
            return e;
    fail(ErrorCode::InvalidArgument, std::string("unknown ") + what + " '" + std::string(text) + "'");
}

constexpr std::array<std::pair<SymbolType, const char*>, 3> kSymbolTypes{{
    {SymbolType::Semantic, "semantic"},
    {SymbolType::NonSemantic, "non_semantic"},
    {SymbolType::DataEncoded, "data_encoded"},
}};

constexpr std::array<std::pair<SymbolLayout, const char*>, 5> kSymbolLayouts{{
    {SymbolLayout::Continuous, "continuous"},
    {SymbolLayout::Connected, "connected"},
    {SymbolLayout::Nested, "nested"},
    {SymbolLayout::DiscreteUniform, "discrete_uniform"},
    {SymbolLayout::DiscreteNonuniform, "discrete_nonuniform"},
}};

constexpr std::array<std::pair<TextLayout, const char*>, 7> kTextLayouts{{
    {TextLayout::AsTick, "as_tick"},
    {TextLayout::AccompanyingCross, "accompanying_cross"},
    {TextLayout::AccompanyingSide, "accompanying_side"},
    {TextLayout::Embedded, "embedded"},
    {TextLayout::AsSymbol, "as_symbol"},
    {TextLayout::AsLabel, "as_label"},
    {TextLayout::None, "none"},
}};

constexpr std::array<std::pair<MultiLayout, const char*>, 5> kMultiLayouts{{
    {MultiLayout::Matrix, "matrix"},
    {MultiLayout::Flattened, "flattened"},
    {MultiLayout::Parallel, "parallel"},
    {MultiLayout::Combined, "combined"},
    {MultiLayout::Single, "single"},
}};

constexpr std::array<std::pair<Direction, const char*>, 2> kDirections{{
    {Direction::Horizontal, "horizontal"},
    {Direction::Vertical, "vertical"},
}};

} // namespace

const char* name(SymbolType v) { return lookup(kSymbolTypes, v); }
const char* name(SymbolLayout v) { return lookup(kSymbolLayouts, v); }
const char* name(TextLayout v) { return lookup(kTextLayouts, v); }
const char* name(MultiLayout v) { return lookup(kMultiLayouts, v); }
const char* name(Direction v) { return lookup(kDirections, v); }

SymbolType parseSymbolType(std::string_view t) { return reverse(kSymbolTypes, t, "symbol type"); }
SymbolLayout parseSymbolLayout(std::string_view t) { return reverse(kSymbolLayouts, t, "symbol layout"); }
TextLayout parseTextLayout(std::string_view t) { return reverse(kTextLayouts, t, "text layout"); }
MultiLayout parseMultiLayout(std::string_view t) { return reverse(kMultiLayouts, t, "multi layout"); }
Direction parseDirection(std::string_view t) { return reverse(kDirections, t, "direction"); }

std::string serializeSpec(const LegendSpec& spec)
{
    nlohmann::ordered_json j;
    j["symbol_type"] = name(spec.symbolType);
    j["symbol_layout"] = name(spec.symbolLayout);
    j["text_layout"] = name(spec.textLayout);
    j["multi_layout"] = name(spec.multiLayout);
    j["direction"] = name(spec.direction);
    j["anchor_x"] = spec.anchorX;
    j["anchor_y"] = spec.anchorY;
    j["swatch_size"] = spec.swatchSize;
    j["text_color"] = spec.textColor.hex();
    j["channel_group_ids"] = spec.channelGroupIds;
    return j.dump();
}

LegendSpec parseSpec(std::string_view text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::InvalidArgument, std::string("legend spec is not valid JSON: ") + e.what());
    }
    if (!j.is_object())
        fail(ErrorCode::InvalidArgument, "legend spec must be an object");

    LegendSpec spec;
    try {
        if (j.contains("symbol_type"))
            spec.symbolType = parseSymbolType(j["symbol_type"].get<std::string>());
        if (j.contains("symbol_layout"))
            spec.symbolLayout = parseSymbolLayout(j["symbol_layout"].get<std::string>());
        if (j.contains("text_layout"))
            spec.textLayout = parseTextLayout(j["text_layout"].get<std::string>());
        if (j.contains("multi_layout"))
            spec.multiLayout = parseMultiLayout(j["multi_layout"].get<std::string>());
        if (j.contains("direction"))
            spec.direction = parseDirection(j["direction"].get<std::string>());
        if (j.contains("anchor_x"))
            spec.anchorX = j["anchor_x"].get<double>();
        if (j.contains("anchor_y"))
            spec.anchorY = j["anchor_y"].get<double>();
        if (j.contains("swatch_size"))
            spec.swatchSize = j["swatch_size"].get<double>();
        if (j.contains("text_color")) {
            auto c = svg::parseColor(j["text_color"].get<std::string>());
            if (!c)
                fail(ErrorCode::InvalidArgument, "bad text_color");
            spec.textColor = *c;
        }
        if (j.contains("channel_group_ids"))
            spec.channelGroupIds = j["channel_group_ids"].get<std::vector<std::string>>();
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::InvalidArgument, std::string("legend spec field has the wrong type: ") + e.what());
    }
    if (!(spec.swatchSize > 0))
        fail(ErrorCode::InvalidArgument, "swatch_size must be positive");
    return spec;
}

} // namespace legendgen::legend
