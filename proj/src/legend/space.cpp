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

#include "legend/space.hpp"

#include <algorithm>

namespace legendgen::legend {

using extract::ChannelKind;
using extract::Classification;

const extract::EncodingChannel* ChannelGroup::find(ChannelKind kind) const
{
    for (const auto* ch : channels)
        if (ch->kind == kind)
            return ch;
    return nullptr;
}

std::size_t ChannelGroup::cardinality() const
{
    const auto& p = primary();
    if (p.kind != ChannelKind::Color)
        return kShapeSamples;
    return p.discrete() ? p.colors.size() : 0;
}

std::vector<ChannelGroup> channelGroups(const ChartDocument& doc)
{
    const auto& ex = doc.extraction;
    std::vector<ChannelGroup> out;
    for (std::size_t g = 0; g < ex.channelGroups.size(); ++g) {
        ChannelGroup group;
        group.id = "grp-" + std::to_string(g);
        for (auto i : ex.channelGroups[g])
            group.channels.push_back(&ex.channels[i]);
        if (group.channels.empty())
            continue;
        group.symbol = ex.symbol(group.channels.front()->symbolId);
        out.push_back(std::move(group));
    }
    return out;
}

Combo comboOf(const LegendSpec& spec)
{
    return {spec.symbolType, spec.symbolLayout, spec.textLayout, spec.multiLayout, spec.direction};
}

void applyCombo(LegendSpec& spec, const Combo& combo)
{
    spec.symbolType = combo.symbolType;
    spec.symbolLayout = combo.symbolLayout;
    spec.textLayout = combo.textLayout;
    spec.multiLayout = combo.multiLayout;
    spec.direction = combo.direction;
}

namespace {

bool isDiscreteLayout(SymbolLayout l)
{
    return l == SymbolLayout::DiscreteUniform || l == SymbolLayout::DiscreteNonuniform;
}

template <class T>
bool contains(const std::vector<T>& v, T x)
{
    return std::find(v.begin(), v.end(), x) != v.end();
}

} // namespace

DesignSpace::DesignSpace(const std::vector<ChannelGroup>& groups)
{
    if (groups.empty())
        return;
    for (const auto& g : groups)
        groupIds_.push_back(g.id);

    const auto& p = groups.front().primary();
    primaryKind_ = p.kind;
    switch (p.kind) {
    case ChannelKind::Color:
        if (isContinuous(p.classification))
            layouts_ = {SymbolLayout::Continuous, SymbolLayout::Connected};
        else if (p.classification == Classification::Ordinal)
            layouts_ = {SymbolLayout::Connected, SymbolLayout::DiscreteUniform, SymbolLayout::DiscreteNonuniform};
        else
            layouts_ = {SymbolLayout::DiscreteUniform, SymbolLayout::DiscreteNonuniform};
        break;
    case ChannelKind::Size:
        layouts_ = {SymbolLayout::Nested, SymbolLayout::DiscreteUniform, SymbolLayout::DiscreteNonuniform};
        break;
    case ChannelKind::Rotation:
        layouts_ = {SymbolLayout::DiscreteUniform, SymbolLayout::DiscreteNonuniform};
        break;
    }

    if (groups.size() == 2 && groups[0].symbol == groups[1].symbol) {
        auto small = [](const ChannelGroup& g) {
            auto n = g.cardinality();
            return n >= 1 && n <= kMatrixMaxValues;
        };
        matrixEligible_ = small(groups[0]) && small(groups[1]);
    }
    labelEligible_ = groups.size() == 1 && p.kind == ChannelKind::Color && p.discrete() && groups[0].symbol &&
                     groups[0].symbol->memberIds.size() <= kAsLabelMaxMembers;
}

std::vector<SymbolType> DesignSpace::symbolTypes(SymbolLayout layout) const
{
    if (!contains(layouts_, layout))
        return {};
    if (layout == SymbolLayout::Continuous || layout == SymbolLayout::Connected)
        return {SymbolType::NonSemantic};
    return {SymbolType::Semantic, SymbolType::NonSemantic};
}

std::vector<MultiLayout> DesignSpace::multiLayouts(SymbolLayout layout) const
{
    if (!contains(layouts_, layout))
        return {};
    if (groupIds_.size() == 1)
        return {MultiLayout::Single};
    std::vector<MultiLayout> out;
    if (matrixEligible_ && isDiscreteLayout(layout))
        out = {MultiLayout::Matrix, MultiLayout::Flattened};
    out.push_back(MultiLayout::Parallel);
    out.push_back(MultiLayout::Combined);
    return out;
}

std::vector<TextLayout> DesignSpace::textLayouts(SymbolLayout layout, MultiLayout multi) const
{
    if (!contains(multiLayouts(layout), multi))
        return {};
    if (layout == SymbolLayout::Continuous || layout == SymbolLayout::Connected)
        return {TextLayout::AsTick};
    if (layout == SymbolLayout::Nested)
        return {TextLayout::AccompanyingSide};
    if (multi == MultiLayout::Matrix || multi == MultiLayout::Flattened || primaryKind_ != ChannelKind::Color)
        return {TextLayout::AccompanyingCross, TextLayout::AccompanyingSide};
    std::vector<TextLayout> out{TextLayout::AccompanyingCross, TextLayout::AccompanyingSide, TextLayout::Embedded,
                                TextLayout::AsSymbol};
    if (labelEligible_)
        out.push_back(TextLayout::AsLabel);
    return out;
}

std::vector<Combo> DesignSpace::combos() const
{
    std::vector<Combo> out;
    for (auto layout : layouts_)
        for (auto type : symbolTypes(layout))
            for (auto multi : multiLayouts(layout))
                for (auto text : textLayouts(layout, multi))
                    for (auto dir : directions())
                        out.push_back({type, layout, text, multi, dir});
    return out;
}

bool DesignSpace::admissible(const Combo& combo) const
{
    if (empty())
        return false;
    auto type = combo.symbolType == SymbolType::DataEncoded ? SymbolType::NonSemantic : combo.symbolType;
    return contains(symbolTypes(combo.symbolLayout), type) &&
           contains(textLayouts(combo.symbolLayout, combo.multiLayout), combo.textLayout);
}

bool DesignSpace::admissible(const LegendSpec& spec) const
{
    if (!(spec.swatchSize > 0))
        return false;
    if (!spec.channelGroupIds.empty() && spec.channelGroupIds != groupIds_)
        return false;
    return admissible(comboOf(spec));
}

DesignSpace validSpace(const ChartDocument& doc)
{
    return DesignSpace(channelGroups(doc));
}

} // namespace legendgen::legend
