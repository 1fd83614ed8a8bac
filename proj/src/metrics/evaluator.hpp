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
#include "legend/render.hpp"
#include "metrics/metrics.hpp"
#include "svg/raster.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace legendgen::metrics {

/// Anchor-independent part of a legend's metrics.
struct LegendTemplate {
    legend::RenderedLegend legend;
    PixelRect extent; // panel pixels relative to the anchor pixel
    std::int64_t ink = 0;
    std::int64_t inkX = 0; // sum of (2i+1) * ink, panel-local
    std::int64_t inkY = 0;
    double readability = 1;
    double correspondence = 0;
    std::optional<MetricVector> fixed; // legends that ignore the anchor
};

/// Metric evaluation against a cached chart raster. The chart is rendered
/// once; candidate legends are opaque panels, so their metrics follow from
/// summed-area tables of the chart and the panel's own pixel moments.
/// Equals metricVector() whenever anchors sit on whole metric pixels.
class Evaluator {
public:
    explicit Evaluator(const legend::ChartDocument& doc);

    const legend::ChartDocument& document() const { return *doc_; }
    double scale() const { return scale_; }
    const svg::RasterBuffer& base() const { return base_; }

    /// Nearest document coordinate on the metric pixel grid.
    double snap(double v) const;

    LegendTemplate prepare(legend::RenderedLegend legend) const;

    /// Metrics of the template placed at the spec's anchor.
    MetricVector evaluate(const LegendTemplate& t, const legend::LegendSpec& spec) const;

private:
    struct Sums {
        std::int64_t p1 = 0, p2 = 0, ink = 0, inkX = 0, inkY = 0;
    };
    Sums rect(int x0, int y0, int x1, int y1) const;

    const legend::ChartDocument* doc_;
    double scale_;
    svg::RasterBuffer base_;
    int stride_;
    std::vector<Sums> table_; // (width+1) x (height+1) prefix sums
    Sums total_;
};

} // namespace legendgen::metrics
