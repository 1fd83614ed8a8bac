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

#include "legend/document.hpp"
#include "svg/color.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace legendgen::legend {

inline constexpr double kDimOpacity = 0.2;

/// A legend item (discrete channels) or a closed range of normalized
/// values (ramp positions; size and rotation scaled to [0, 1]).
struct Selection {
    std::optional<std::size_t> category;
    double lo = 0.0;
    double hi = 1.0;

    static Selection item(std::size_t k) { return {k, 0.0, 1.0}; }
    static Selection range(double lo, double hi) { return {std::nullopt, lo, hi}; }
};

/// Opacities replaced by highlight, for exact restoration.
struct HighlightState {
    std::vector<std::pair<std::string, double>> saved;
};

/// Id of the channel a legend shows first: the first channel of the first group.
std::string primaryChannelId(const ChartDocument& doc);

/// Dims members of the channel outside the selection to kDimOpacity.
/// Throws UnknownSelection for an unknown channel or an invalid selection.
ChartDocument highlight(const ChartDocument& doc, const std::string& channelId, const Selection& selection,
                        HighlightState& state);

ChartDocument unhighlight(const ChartDocument& doc, const HighlightState& state);

struct RetrieveResult {
    std::string channelId;
    bool continuous = false;
    std::size_t item = 0;  // discrete channels
    double position = 0.0; // continuous channels, in [0, 1]
};

/// Legend position for a mark. Throws NotAMark for elements outside every symbol.
RetrieveResult retrieve(const ChartDocument& doc, const std::string& elementId);

enum class RetargetStyle { Fill, StrokeFromFill };

struct Replacement {
    // Discrete channels: one color per category. Continuous channels: the
    // control colors of the new ramp (at least 2).
    std::vector<svg::Color> colors;
    RetargetStyle style = RetargetStyle::Fill;
};

/// Recolors the members of a color channel through its extracted mapping.
/// Values map from the original extraction, so a replacement equal to the
/// original palette or ramp restores the original paints exactly.
/// Throws CardinalityMismatch, or InvalidArgument for non-color channels.
ChartDocument retarget(const ChartDocument& doc, const std::string& channelId, const Replacement& replacement);

} // namespace legendgen::legend
