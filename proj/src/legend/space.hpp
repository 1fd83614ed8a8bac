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

#include "extract/channels.hpp"
#include "legend/document.hpp"
#include "legend/spec.hpp"

#include <string>
#include <vector>

namespace legendgen::legend {

/// Channels shown by one sub-legend; the first channel drives its layout.
struct ChannelGroup {
    std::string id; // "grp-N"
    const extract::IconicSymbol* symbol = nullptr;
    std::vector<const extract::EncodingChannel*> channels;

    const extract::EncodingChannel& primary() const { return *channels.front(); }
    const extract::EncodingChannel* find(extract::ChannelKind kind) const;
    /// Items a discrete rendering shows; 0 for continuous color ramps.
    std::size_t cardinality() const;
};

/// Samples shown for size and rotation channels.
inline constexpr std::size_t kShapeSamples = 3;

/// Matrix and flattened layouts need at most this many values per dimension.
inline constexpr std::size_t kMatrixMaxValues = 5;

/// as_label is offered up to this many marks.
inline constexpr std::size_t kAsLabelMaxMembers = 6;

std::vector<ChannelGroup> channelGroups(const ChartDocument& doc);

/// One discrete design choice (everything in a spec except placement and style).
struct Combo {
    SymbolType symbolType = SymbolType::NonSemantic;
    SymbolLayout symbolLayout = SymbolLayout::DiscreteUniform;
    TextLayout textLayout = TextLayout::AccompanyingCross;
    MultiLayout multiLayout = MultiLayout::Single;
    Direction direction = Direction::Vertical;

    friend bool operator==(const Combo&, const Combo&) = default;
};

Combo comboOf(const LegendSpec& spec);
void applyCombo(LegendSpec& spec, const Combo& combo);

/// Admissible design choices for a document. Options are conditional:
/// symbol layout first, then symbol type, multi layout and text layout.
class DesignSpace {
public:
    DesignSpace() = default;
    explicit DesignSpace(const std::vector<ChannelGroup>& groups);

    bool empty() const { return groupIds_.empty(); }
    const std::vector<std::string>& groupIds() const { return groupIds_; }

    std::vector<SymbolLayout> symbolLayouts() const { return layouts_; }
    std::vector<SymbolType> symbolTypes(SymbolLayout layout) const;
    std::vector<MultiLayout> multiLayouts(SymbolLayout layout) const;
    std::vector<TextLayout> textLayouts(SymbolLayout layout, MultiLayout multi) const;
    std::vector<Direction> directions() const { return {Direction::Horizontal, Direction::Vertical}; }

    /// Every admissible combo, nested in the order above.
    std::vector<Combo> combos() const;

    /// data_encoded is accepted wherever non_semantic is (rendered as such).
    bool admissible(const Combo& combo) const;
    bool admissible(const LegendSpec& spec) const;

private:
    std::vector<std::string> groupIds_;
    std::vector<SymbolLayout> layouts_;
    extract::ChannelKind primaryKind_ = extract::ChannelKind::Color;
    bool matrixEligible_ = false;
    bool labelEligible_ = false;
};

DesignSpace validSpace(const ChartDocument& doc);

} // namespace legendgen::legend
