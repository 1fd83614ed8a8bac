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

#include "metrics/metrics.hpp"

#include "error.hpp"
#include "extract/lab.hpp"
#include "legend/space.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace legendgen::metrics {

using svg::Box;
using svg::Color;
using svg::RasterBuffer;

namespace {

std::int64_t pixelSum(const RasterBuffer& r, int x, int y)
{
    const auto* p = &r.pixels[(std::size_t(y) * std::size_t(r.width) + std::size_t(x)) * 3];
    return std::int64_t(p[0]) + p[1] + p[2];
}

double linearize(double c)
{
    c /= 255.0;
    return c <= 0.03928 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
}

} // namespace

double obstruction(const RasterBuffer& raster, const PixelRect& region)
{
    return obstruction(raster, std::span<const PixelRect>(&region, 1));
}

double obstruction(const RasterBuffer& raster, std::span<const PixelRect> regions)
{
    std::int64_t n = 0, s1 = 0, s2 = 0;
    for (const auto& r : regions) {
        if (r.x < 0 || r.y < 0 || r.width < 0 || r.height < 0 || r.x + r.width > raster.width ||
            r.y + r.height > raster.height)
            fail(ErrorCode::RegionOutOfBounds, "obstruction region leaves the raster");
        for (int j = r.y; j < r.y + r.height; ++j)
            for (int i = r.x; i < r.x + r.width; ++i) {
                std::int64_t v = pixelSum(raster, i, j);
                s1 += v;
                s2 += v * v;
            }
        n += r.area();
    }
    if (n == 0)
        fail(ErrorCode::RegionOutOfBounds, "obstruction region is empty");
    // Sums are of R+G+B, so the variance of their mean carries a factor 1/9.
    double num = double(n * s2 - s1 * s1);
    return std::sqrt(std::max(0.0, num) / (9.0 * double(n) * double(n)));
}

double inkBalance(const RasterBuffer& raster)
{
    std::int64_t ink = 0, mx = 0, my = 0;
    for (int j = 0; j < raster.height; ++j)
        for (int i = 0; i < raster.width; ++i) {
            std::int64_t g = 765 - pixelSum(raster, i, j);
            ink += g;
            mx += (2 * i + 1) * g;
            my += (2 * j + 1) * g;
        }
    if (ink == 0)
        fail(ErrorCode::NoInk, "raster has no ink");
    double cx = double(mx) / (2.0 * double(ink)), cy = double(my) / (2.0 * double(ink));
    return std::hypot(cx - raster.width / 2.0, cy - raster.height / 2.0);
}

double relativeLuminance(const Color& c)
{
    return 0.2126 * linearize(c.r) + 0.7152 * linearize(c.g) + 0.0722 * linearize(c.b);
}

double contrastRatio(const Color& fg, const Color& bg)
{
    double a = relativeLuminance(fg), b = relativeLuminance(bg);
    return (std::max(a, b) + 0.05) / (std::min(a, b) + 0.05);
}

double sizeIncrease(const Box& vis, const Box& combined)
{
    if (!(vis.area() > 0) || !(combined.area() > 0) || !combined.contains(vis))
        fail(ErrorCode::InvalidBoxes, "size increase needs positive areas and a combined box containing the chart");
    return (combined.area() - vis.area()) / vis.area();
}

double kendallTau(std::span<const double> a, std::span<const double> b)
{
    if (a.size() != b.size())
        fail(ErrorCode::LengthMismatch, "kendall tau needs equal lengths");
    const std::size_t n = a.size();
    if (n < 2)
        return 0.0;
    long long score = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            double s = (a[i] - a[j]) * (b[i] - b[j]);
            score += (s > 0) - (s < 0);
        }
    return double(score) / (double(n) * double(n - 1) / 2.0);
}

Correspondence correspondence(const legend::RenderedLegend& legend, const legend::ChartDocument& doc)
{
    Correspondence c;
    auto groups = legend::channelGroups(doc);
    if (groups.empty())
        return c;
    const auto& group = groups.front();
    const auto& ch = group.primary();

    std::vector<Color> marks;
    for (const auto& g : groups)
        for (const auto& id : g.symbol->memberIds)
            if (auto col = doc.scene.find(id)->dominantColor())
                marks.push_back(*col);
    if (!legend.swatchColors.empty()) {
        std::size_t hits = 0;
        for (const auto& s : legend.swatchColors) {
            bool hit = false;
            if (legend.sampledColors) {
                auto ls = extract::rgbToLab(s);
                for (const auto& m : marks)
                    if (extract::deltaE(ls, extract::rgbToLab(m)) <= kSampledColorTolerance) {
                        hit = true;
                        break;
                    }
            } else {
                hit = std::any_of(marks.begin(), marks.end(), [&](const Color& m) { return m.sameRgb(s); });
            }
            hits += hit;
        }
        c.color = double(hits) / double(legend.swatchColors.size());
    }

    if (legend.semantic)
        c.shape = group.symbol && doc.scene.find(group.symbol->representativeId) ? 1.0 : 0.0;
    else
        c.shape = 0.5;

    std::vector<double> centersX, centersY;
    for (const auto& id : ch.elementIds) {
        auto ctr = svg::boundingBox(*doc.scene.find(id)).center();
        centersX.push_back(ctr.x);
        centersY.push_back(ctr.y);
    }
    double tx = 0, ty = 0;
    if (legend.continuous || !ch.discrete() || ch.kind != extract::ChannelKind::Color) {
        std::vector<double> values = ch.elementValues;
        tx = kendallTau(values, centersX);
        ty = kendallTau(values, centersY);
    } else {
        const std::size_t k = ch.colors.size();
        std::vector<double> sx(k, 0), sy(k, 0), n(k, 0);
        for (std::size_t i = 0; i < ch.elementIds.size(); ++i) {
            auto cat = std::size_t(ch.elementValues[i]);
            if (cat < k) {
                sx[cat] += centersX[i];
                sy[cat] += centersY[i];
                n[cat] += 1;
            }
        }
        std::vector<double> display, mx, my;
        for (std::size_t pos = 0; pos < legend.itemValues.size(); ++pos) {
            auto cat = std::size_t(legend.itemValues[pos]);
            if (cat >= k || n[cat] == 0)
                continue;
            display.push_back(double(pos));
            mx.push_back(sx[cat] / n[cat]);
            my.push_back(sy[cat] / n[cat]);
        }
        if (display.size() < 2) {
            c.order = 1.0;
            return c;
        }
        tx = kendallTau(display, mx);
        ty = kendallTau(display, my);
    }
    double t = std::abs(tx) >= std::abs(ty) ? tx : ty;
    c.order = (t + 1.0) / 2.0;
    return c;
}

double readability(const legend::RenderedLegend& legend)
{
    if (legend.texts.empty())
        return 1.0;
    double r = 21.0;
    for (const auto& t : legend.texts) {
        const auto& el = legend.elements[t.element];
        Color fg = el.fill.value_or(el.stroke.value_or(svg::kBlack));
        r = std::min(r, contrastRatio(fg, t.backdrop));
    }
    return r;
}

std::array<double, MetricVector::kSize> MetricVector::values() const
{
    return {obstruction, inkBalance, readability, sizeIncrease, correspondence,
            prefHorizontal, prefVertical, prefCenterDistance};
}

MetricVector MetricVector::fromValues(const std::array<double, kSize>& v)
{
    return {v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7]};
}

bool MetricVector::finite() const
{
    auto v = values();
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

std::array<double, MetricVector::kSize> normalizedFeatures(const MetricVector& x)
{
    return {x.obstruction / 127.5,
            x.inkBalance,
            (x.readability - 1.0) / 20.0,
            std::min(x.sizeIncrease, 2.0) / 2.0,
            x.correspondence / 3.0,
            x.prefHorizontal,
            x.prefVertical,
            x.prefCenterDistance};
}

std::string serializeMetrics(const MetricVector& x)
{
    nlohmann::ordered_json j;
    auto v = x.values();
    for (std::size_t i = 0; i < MetricVector::kSize; ++i)
        j[MetricVector::kNames[i]] = v[i];
    return j.dump(-1, ' ', false, nlohmann::json::error_handler_t::strict);
}

MetricVector parseMetrics(std::string_view text)
{
    try {
        auto j = nlohmann::json::parse(text);
        std::array<double, MetricVector::kSize> v{};
        for (std::size_t i = 0; i < MetricVector::kSize; ++i)
            v[i] = j.at(MetricVector::kNames[i]).get<double>();
        return MetricVector::fromValues(v);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::InvalidArgument, std::string("bad metric vector: ") + e.what());
    }
}

Preference preference(const Box& legendBox, double w, double h)
{
    Preference p;
    p.horizontal = std::clamp(legendBox.xMin / w, 0.0, 1.0);
    p.vertical = std::clamp(legendBox.yMin / h, 0.0, 1.0);
    const double cx = std::clamp(legendBox.center().x, 0.0, w);
    const double cy = std::clamp(legendBox.center().y, 0.0, h);
    p.centerDistance = std::min(1.0, std::hypot(cx - w / 2, cy - h / 2) / (std::hypot(w, h) / 2));
    return p;
}

PixelRect pixelRegion(const Box& box, double scale)
{
    int x0 = int(std::ceil(box.xMin * scale - 0.5)), x1 = int(std::ceil(box.xMax * scale - 0.5));
    int y0 = int(std::ceil(box.yMin * scale - 0.5)), y1 = int(std::ceil(box.yMax * scale - 0.5));
    return {x0, y0, std::max(0, x1 - x0), std::max(0, y1 - y0)};
}

PixelRect placedPixels(const legend::RenderedLegend& legend, const legend::LegendSpec& spec, double scale)
{
    const PixelRect at = pixelRegion(legend::placedBox(legend, spec), scale);
    if (!legend.anchored)
        return at;
    const PixelRect own = pixelRegion({0, 0, legend.width, legend.height}, scale);
    return {at.x, at.y, own.width, own.height};
}

RasterBuffer renderPanel(const legend::RenderedLegend& legend, double scale)
{
    PixelRect extent = pixelRegion({0, 0, legend.width, legend.height}, scale);
    RasterBuffer panel(std::max(extent.width, 0), std::max(extent.height, 0));
    svg::Rasterizer painter(panel);
    const auto device = svg::Affine::translate(-extent.x, -extent.y) * svg::Affine::scale(scale, scale);
    for (const auto& el : legend.elements)
        painter.draw(el, device);
    return panel;
}

MetricVector metricVector(const legend::LegendSpec& spec, const legend::ChartDocument& doc)
{
    const double scale = svg::metricScale(doc.scene);
    auto base = svg::rasterize(doc.scene, scale);
    auto rendered = legend::renderLegend(spec, doc);
    return metricVector(spec, doc, rendered, base, scale);
}

MetricVector metricVector(const legend::LegendSpec& spec, const legend::ChartDocument& doc,
                          const legend::RenderedLegend& legend, const RasterBuffer& base, double scale)
{
    MetricVector x;
    const Box legendBox = legend::placedBox(legend, spec);
    const Box canvas{0, 0, doc.scene.width, doc.scene.height};
    const PixelRect lp = placedPixels(legend, spec, scale);

    std::vector<PixelRect> regions;
    auto addRegion = [&](const PixelRect& p) {
        int x0 = std::max(p.x, 0), y0 = std::max(p.y, 0);
        int x1 = std::min(p.x + p.width, base.width), y1 = std::min(p.y + p.height, base.height);
        if (x1 > x0 && y1 > y0)
            regions.push_back({x0, y0, x1 - x0, y1 - y0});
    };
    if (legend.anchored)
        addRegion(lp);
    else
        for (const auto& r : legend.regions)
            addRegion(pixelRegion(r, scale));
    x.obstruction = regions.empty() ? 0.0 : obstruction(base, regions);

    // Composite onto a canvas grown to hold the legend.
    const int X0 = std::min(0, lp.x), Y0 = std::min(0, lp.y);
    const int X1 = std::max(base.width, lp.x + lp.width), Y1 = std::max(base.height, lp.y + lp.height);
    RasterBuffer comp(X1 - X0, Y1 - Y0);
    for (int j = 0; j < base.height; ++j)
        for (int i = 0; i < base.width; ++i)
            comp.set(i - X0, j - Y0, base.at(i, j));
    if (legend.anchored) {
        // The panel is opaque: its pixels replace the chart's.
        RasterBuffer panel = renderPanel(legend, scale);
        for (int j = 0; j < panel.height; ++j)
            for (int i = 0; i < panel.width; ++i)
                comp.set(lp.x + i - X0, lp.y + j - Y0, panel.at(i, j));
    } else {
        svg::Rasterizer painter(comp);
        const auto device = svg::Affine::translate(-X0, -Y0) * svg::Affine::scale(scale, scale);
        for (const auto& el : legend.elements)
            painter.draw(el, device);
    }
    x.inkBalance = inkBalance(comp) / (std::hypot(double(comp.width), double(comp.height)) / 2.0);

    x.readability = readability(legend);
    x.sizeIncrease = sizeIncrease(canvas, legend.elements.empty() ? canvas : canvas.united(legendBox));
    x.correspondence = correspondence(legend, doc).total();
    Preference p = preference(legendBox, doc.scene.width, doc.scene.height);
    x.prefHorizontal = p.horizontal;
    x.prefVertical = p.vertical;
    x.prefCenterDistance = p.centerDistance;
    return x;
}

} // namespace legendgen::metrics
