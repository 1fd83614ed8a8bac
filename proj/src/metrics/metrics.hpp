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
#include "svg/color.hpp"
#include "svg/geometry.hpp"
#include "svg/raster.hpp"

#include <array>
#include <span>
#include <string>
#include <string_view>

namespace legendgen::metrics {

/// Half-open pixel rectangle [x, x+width) x [y, y+height).
struct PixelRect {
    int x = 0, y = 0, width = 0, height = 0;

    friend bool operator==(const PixelRect&, const PixelRect&) = default;
    long long area() const { return (long long)width * height; }
};

/// Population standard deviation of per-pixel mean(R, G, B) over the
/// regions (pooled). Throws RegionOutOfBounds when a region leaves the
/// raster or the union is empty.
double obstruction(const svg::RasterBuffer& raster, const PixelRect& region);
double obstruction(const svg::RasterBuffer& raster, std::span<const PixelRect> regions);

/// Distance in pixels between the ink centroid (weights 255 - mean(R,G,B),
/// pixel centers at i + 0.5) and the raster center. Throws NoInk.
double inkBalance(const svg::RasterBuffer& raster);

/// WCAG 2.0 relative luminance of an sRGB color.
double relativeLuminance(const svg::Color& c);

double contrastRatio(const svg::Color& fg, const svg::Color& bg);

/// (area(combined) - area(vis)) / area(vis). Throws InvalidBoxes unless
/// both areas are positive and combined contains vis.
double sizeIncrease(const svg::Box& vis, const svg::Box& combined);

/// Kendall tau-a; tied pairs count as neither concordant nor discordant.
double kendallTau(std::span<const double> a, std::span<const double> b);

struct Correspondence {
    double color = 0;
    double shape = 0;
    double order = 0;

    double total() const { return color + shape + order; }
};

/// Ramp samples within this CIE76 distance of a mark color count as matching.
inline constexpr double kSampledColorTolerance = 5.0;

/// Color, shape and order agreement between a rendered legend and the marks
/// of the document's first channel group.
Correspondence correspondence(const legend::RenderedLegend& legend, const legend::ChartDocument& doc);

/// Readability: minimum text contrast against its backdrop; 1 without text.
double readability(const legend::RenderedLegend& legend);

/// The quality-model input. `inkBalance` is already divided by the half
/// diagonal of the composited canvas; the other fields are raw.
struct MetricVector {
    double obstruction = 0;
    double inkBalance = 0;
    double readability = 1;
    double sizeIncrease = 0;
    double correspondence = 0;
    double prefHorizontal = 0;
    double prefVertical = 0;
    double prefCenterDistance = 0;

    friend bool operator==(const MetricVector&, const MetricVector&) = default;

    static constexpr std::size_t kSize = 8;
    static constexpr std::array<const char*, kSize> kNames{"O", "I", "R", "S", "C", "pref_h", "pref_v", "pref_c"};

    std::array<double, kSize> values() const;
    static MetricVector fromValues(const std::array<double, kSize>& v);
    bool finite() const;
};

/// Scales every field into [0, 1]: O / 127.5, I as is, (R - 1) / 20,
/// min(S, 2) / 2, C / 3, preferences as is.
std::array<double, MetricVector::kSize> normalizedFeatures(const MetricVector& x);

/// Flat JSON object in field order; parse throws InvalidArgument.
std::string serializeMetrics(const MetricVector& x);
MetricVector parseMetrics(std::string_view text);

/// Placement features of a legend box on a canvas.
struct Preference {
    double horizontal = 0;
    double vertical = 0;
    double centerDistance = 0;
};
Preference preference(const svg::Box& legendBox, double canvasWidth, double canvasHeight);

/// Pixel rectangle covered by a document-space box at the given scale:
/// pixels whose centers fall inside.
PixelRect pixelRegion(const svg::Box& box, double scale);

/// Pixels a placed legend occupies: for anchored panels the panel's own
/// pixel size at the anchor's pixel, otherwise the pixels of its box.
PixelRect placedPixels(const legend::RenderedLegend& legend, const legend::LegendSpec& spec, double scale);

/// Rasterizes an anchored legend panel on its own at metric scale; pixel
/// (0, 0) is the panel's top-left pixel.
svg::RasterBuffer renderPanel(const legend::RenderedLegend& legend, double scale);

/// Reference evaluation: composites the legend, re-rasterizes at metric
/// scale and measures every field directly.
MetricVector metricVector(const legend::LegendSpec& spec, const legend::ChartDocument& doc);
MetricVector metricVector(const legend::LegendSpec& spec, const legend::ChartDocument& doc,
                          const legend::RenderedLegend& legend, const svg::RasterBuffer& base, double scale);

} // namespace legendgen::metrics
