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
#include "legend/space.hpp"
#include "legend/spec.hpp"
#include "svg/geometry.hpp"
#include "svg/scene.hpp"

#include <string>
#include <vector>

namespace legendgen::legend {

struct LegendText {
    std::size_t element = 0; // index into RenderedLegend::elements
    svg::Color backdrop = svg::kWhite;
};

/// A rendered legend before placement.
struct RenderedLegend {
    // Panel-local coordinates (origin at the panel's top-left corner) when
    // anchored; document coordinates otherwise (as_label).
    std::vector<svg::VisualElement> elements;
    double width = 0;
    double height = 0;
    bool anchored = true;
    // Opaque areas painted by the legend, in element coordinates.
    std::vector<svg::Box> regions;
    std::vector<LegendText> texts;
    // Colors presented as samples of the encoding; `sampledColors` marks
    // ramp samples that need not coincide with any mark color.
    std::vector<svg::Color> swatchColors;
    bool sampledColors = false;
    // Primary channel values in display order: category indices, or ramp
    // positions when `continuous`.
    std::vector<double> itemValues;
    bool continuous = false;
    bool semantic = false;
};

/// Id prefix reserved for legend elements; extended until no scene id uses it.
std::string legendIdPrefix(const svg::SceneGraph& scene);

/// Renders a spec. Throws InadmissibleSpec when the spec is outside the
/// document's design space.
RenderedLegend renderLegend(const LegendSpec& spec, const ChartDocument& doc);

/// Same, with a precomputed design space and groups.
RenderedLegend renderLegend(const LegendSpec& spec, const ChartDocument& doc, const DesignSpace& space,
                            const std::vector<ChannelGroup>& groups);

/// Box the legend occupies in document coordinates once placed at the spec's anchor.
svg::Box placedBox(const RenderedLegend& legend, const LegendSpec& spec);

struct CompositeDocument {
    svg::SceneGraph scene; // chart elements, untouched
    std::vector<svg::VisualElement> legend; // placed legend elements
    std::string legendGroupId;
    svg::Box legendBox;
    svg::Box combinedBox; // canvas united with the legend
    LegendSpec spec;

    std::string toSvg() const;
};

/// Places the legend at the spec's anchor on top of the chart.
CompositeDocument composite(const ChartDocument& doc, const RenderedLegend& legend, const LegendSpec& spec);

} // namespace legendgen::legend
