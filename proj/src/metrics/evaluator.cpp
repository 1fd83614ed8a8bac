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

#include "metrics/evaluator.hpp"

#include "error.hpp"

#include <algorithm>
#include <cmath>

namespace legendgen::metrics {

Evaluator::Evaluator(const legend::ChartDocument& doc)
    : doc_(&doc), scale_(svg::metricScale(doc.scene)), base_(svg::rasterize(doc.scene, scale_)),
      stride_(base_.width + 1)
{
    table_.assign(std::size_t(stride_) * std::size_t(base_.height + 1), Sums{});
    for (int j = 0; j < base_.height; ++j) {
        Sums row;
        for (int i = 0; i < base_.width; ++i) {
            const auto* p = &base_.pixels[(std::size_t(j) * std::size_t(base_.width) + std::size_t(i)) * 3];
            std::int64_t v = std::int64_t(p[0]) + p[1] + p[2];
            std::int64_t g = 765 - v;
            row.p1 += v;
            row.p2 += v * v;
            row.ink += g;
            row.inkX += (2 * i + 1) * g;
            row.inkY += (2 * j + 1) * g;
            const Sums& above = table_[std::size_t(j) * std::size_t(stride_) + std::size_t(i + 1)];
            Sums& cell = table_[std::size_t(j + 1) * std::size_t(stride_) + std::size_t(i + 1)];
            cell = {above.p1 + row.p1, above.p2 + row.p2, above.ink + row.ink, above.inkX + row.inkX,
                    above.inkY + row.inkY};
        }
    }
    total_ = rect(0, 0, base_.width, base_.height);
}

Evaluator::Sums Evaluator::rect(int x0, int y0, int x1, int y1) const
{
    auto at = [&](int x, int y) -> const Sums& {
        return table_[std::size_t(y) * std::size_t(stride_) + std::size_t(x)];
    };
    const Sums &a = at(x1, y1), &b = at(x0, y1), &c = at(x1, y0), &d = at(x0, y0);
    return {a.p1 - b.p1 - c.p1 + d.p1, a.p2 - b.p2 - c.p2 + d.p2, a.ink - b.ink - c.ink + d.ink,
            a.inkX - b.inkX - c.inkX + d.inkX, a.inkY - b.inkY - c.inkY + d.inkY};
}

double Evaluator::snap(double v) const
{
    return std::round(v * scale_) / scale_;
}

LegendTemplate Evaluator::prepare(legend::RenderedLegend legend) const
{
    LegendTemplate t;
    if (!legend.anchored) {
        t.fixed = metricVector(legend::LegendSpec{}, *doc_, legend, base_, scale_);
        t.legend = std::move(legend);
        return t;
    }
    t.extent = pixelRegion({0, 0, legend.width, legend.height}, scale_);
    const svg::RasterBuffer panel = renderPanel(legend, scale_);
    for (int j = 0; j < panel.height; ++j)
        for (int i = 0; i < panel.width; ++i) {
            const auto* p = &panel.pixels[(std::size_t(j) * std::size_t(panel.width) + std::size_t(i)) * 3];
            std::int64_t g = 765 - (std::int64_t(p[0]) + p[1] + p[2]);
            t.ink += g;
            t.inkX += (2 * i + 1) * g;
            t.inkY += (2 * j + 1) * g;
        }
    t.readability = readability(legend);
    t.correspondence = correspondence(legend, *doc_).total();
    t.legend = std::move(legend);
    return t;
}

MetricVector Evaluator::evaluate(const LegendTemplate& t, const legend::LegendSpec& spec) const
{
    if (t.fixed)
        return *t.fixed;
    MetricVector x;
    const svg::Box box = legend::placedBox(t.legend, spec);
    const PixelRect lp = placedPixels(t.legend, spec, scale_);
    const int W = base_.width, H = base_.height;

    // Chart pixels hidden by the panel.
    const int cx0 = std::clamp(lp.x, 0, W), cx1 = std::clamp(lp.x + lp.width, 0, W);
    const int cy0 = std::clamp(lp.y, 0, H), cy1 = std::clamp(lp.y + lp.height, 0, H);
    Sums covered;
    if (cx1 > cx0 && cy1 > cy0) {
        covered = rect(cx0, cy0, cx1, cy1);
        const double n = double(std::int64_t(cx1 - cx0) * (cy1 - cy0));
        const double num = double(std::int64_t(n) * covered.p2 - covered.p1 * covered.p1);
        x.obstruction = std::sqrt(std::max(0.0, num) / (9.0 * n * n));
    }

    // The panel's own pixels sit at whole-pixel offset (lp.x, lp.y); a
    // panel narrower than its template (fractional anchors) keeps its
    // template moments.
    const std::int64_t ink = total_.ink - covered.ink + t.ink;
    const std::int64_t inkX = total_.inkX - covered.inkX + t.inkX + 2 * std::int64_t(lp.x) * t.ink;
    const std::int64_t inkY = total_.inkY - covered.inkY + t.inkY + 2 * std::int64_t(lp.y) * t.ink;
    if (ink == 0)
        fail(ErrorCode::NoInk, "composited raster has no ink");
    const int X0 = std::min(0, lp.x), Y0 = std::min(0, lp.y);
    const int X1 = std::max(W, lp.x + lp.width), Y1 = std::max(H, lp.y + lp.height);
    const double gx = double(inkX - 2 * std::int64_t(X0) * ink) / (2.0 * double(ink));
    const double gy = double(inkY - 2 * std::int64_t(Y0) * ink) / (2.0 * double(ink));
    const double w = X1 - X0, h = Y1 - Y0;
    x.inkBalance = std::hypot(gx - w / 2.0, gy - h / 2.0) / (std::hypot(w, h) / 2.0);

    x.readability = t.readability;
    x.correspondence = t.correspondence;
    const svg::Box canvas{0, 0, doc_->scene.width, doc_->scene.height};
    x.sizeIncrease = sizeIncrease(canvas, canvas.united(box));
    Preference p = preference(box, doc_->scene.width, doc_->scene.height);
    x.prefHorizontal = p.horizontal;
    x.prefVertical = p.vertical;
    x.prefCenterDistance = p.centerDistance;
    return x;
}

} // namespace legendgen::metrics
