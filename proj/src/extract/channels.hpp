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

#include "extract/colors.hpp"
#include "extract/symbols.hpp"
#include "svg/scene.hpp"

#include <string>
#include <vector>

namespace legendgen::extract {

enum class ChannelKind { Color, Size, Rotation };

const char* channelKindName(ChannelKind kind);

struct EncodingChannel {
    std::string id;
    std::string symbolId;
    ChannelKind kind = ChannelKind::Color;
    Classification classification = Classification::Categorical;
    // Color channels: categories in legend order, or the ordered sequence a
    // continuous ramp was fit through.
    std::vector<svg::Color> colors;
    // Size and rotation channels: value range [min, max].
    double minValue = 0;
    double maxValue = 0;
    std::vector<Lab> ramp; // continuous color channels only
    // Per member, aligned with the symbol's member ids: category index for
    // discrete colors, ramp position in [0, 1] for continuous colors, the
    // raw value for size and rotation.
    std::vector<std::string> elementIds;
    std::vector<double> elementValues;

    bool discrete() const { return !isContinuous(classification); }
};

struct Extraction {
    std::vector<IconicSymbol> symbols;
    std::vector<EncodingChannel> channels;
    // Channel indices rendered as one legend; per symbol, in channel order.
    std::vector<std::vector<std::size_t>> channelGroups;

    const IconicSymbol* symbol(const std::string& id) const;
    const EncodingChannel* channel(const std::string& id) const;
};

/// Color channel of one symbol. Member colors are clustered; 20 or more
/// distinct colors in one cluster make a continuous ramp, otherwise every
/// distinct color is a category (first-appearance order, or lightness
/// order when ordinal).
EncodingChannel buildColorChannel(const svg::SceneGraph& scene, const IconicSymbol& symbol);

/// Position of a color along a ramp in [0, 1] (nearest sample).
double rampPosition(const std::vector<Lab>& ramp, const Lab& color);

/// Unwraps angles (degrees) by cutting the circle at its largest gap.
std::vector<double> unwrapAngles(const std::vector<double>& degrees);

/// Full extraction: symbols, their color/size/rotation channels and the
/// correlated channel groups.
Extraction extractEncodings(const svg::SceneGraph& scene);

} // namespace legendgen::extract
