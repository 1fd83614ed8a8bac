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


#include "fixtures.hpp"

#include "extract/lab.hpp"
#include "svg/numbers.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

namespace legendgen::fixtures {

const char* chartTypeName(ChartType type)
{
    switch (type) {
    case ChartType::Bar: return "bar";
    case ChartType::StackedBar: return "stacked-bar";
    case ChartType::Scatter: return "scatter";
    case ChartType::Choropleth: return "choropleth";
    case ChartType::NodeLink: return "node-link";
    case ChartType::Wind: return "wind";
    }
    return "bar";
}

std::uint64_t Random::next()
{
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double Random::uniform(double lo, double hi)
{
    return lo + (hi - lo) * double(next() >> 11) * 0x1.0p-53;
}

std::size_t Random::index(std::size_t n)
{
    return std::size_t(next() % n);
}

namespace {

using svg::Color;
using Point = std::pair<double, double>;

const Color kPalette[] = {
    {0x4e, 0x79, 0xa7, 1}, {0xf2, 0x8e, 0x2b, 1}, {0xe1, 0x57, 0x59, 1}, {0x76, 0xb7, 0xb2, 1},
    {0x59, 0xa1, 0x4f, 1}, {0xed, 0xc9, 0x48, 1}, {0xb0, 0x7a, 0xa1, 1}, {0xff, 0x9d, 0xa7, 1},
};

std::string num(double v)
{
    double r = std::round(v * 1000.0) / 1000.0;
    return svg::formatNumber(r == 0 ? 0.0 : r);
}

std::string pathData(const std::vector<Point>& pts)
{
    std::string d;
    for (std::size_t i = 0; i < pts.size(); ++i)
        d += (i ? " L" : "M") + num(pts[i].first) + " " + num(pts[i].second);
    return d + " Z";
}

class SvgBuilder {
public:
    SvgBuilder(double w, double h) : w_(w), h_(h)
    {
        out_ = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(w) + "\" height=\"" + num(h) + "\">\n";
        out_ += "<rect id=\"background\" x=\"0\" y=\"0\" width=\"" + num(w) + "\" height=\"" + num(h) +
                "\" fill=\"#ffffff\"/>\n";
    }

    void raw(const std::string& s) { out_ += s + "\n"; }

    void title(const std::string& text)
    {
        raw("<text id=\"title\" x=\"" + num(w_ / 2) + "\" y=\"28\" font-size=\"16\" text-anchor=\"middle\">" + text +
            "</text>");
    }

    void axes(double left, double top, double right, double bottom, int xTicks, int yTicks)
    {
        raw("<line id=\"axis-x\" x1=\"" + num(left) + "\" y1=\"" + num(bottom) + "\" x2=\"" + num(right) +
            "\" y2=\"" + num(bottom) + "\" stroke=\"#333333\"/>");
        raw("<line id=\"axis-y\" x1=\"" + num(left) + "\" y1=\"" + num(top) + "\" x2=\"" + num(left) + "\" y2=\"" +
            num(bottom) + "\" stroke=\"#333333\"/>");
        for (int i = 0; i < xTicks; ++i) {
            double x = left + (right - left) * (i + 0.5) / xTicks;
            raw("<line id=\"tick-x-" + std::to_string(i) + "\" x1=\"" + num(x) + "\" y1=\"" + num(bottom) +
                "\" x2=\"" + num(x) + "\" y2=\"" + num(bottom + 5) + "\" stroke=\"#333333\"/>");
            raw("<text id=\"label-x-" + std::to_string(i) + "\" x=\"" + num(x) + "\" y=\"" + num(bottom + 18) +
                "\" font-size=\"10\" text-anchor=\"middle\">" + std::to_string(i + 1) + "</text>");
        }
        for (int i = 0; i <= yTicks; ++i) {
            double y = bottom - (bottom - top) * i / yTicks;
            raw("<line id=\"tick-y-" + std::to_string(i) + "\" x1=\"" + num(left - 5) + "\" y1=\"" + num(y) +
                "\" x2=\"" + num(left) + "\" y2=\"" + num(y) + "\" stroke=\"#333333\"/>");
            raw("<text id=\"label-y-" + std::to_string(i) + "\" x=\"" + num(left - 8) + "\" y=\"" + num(y + 3) +
                "\" font-size=\"10\" text-anchor=\"end\">" + std::to_string(i * 20) + "</text>");
        }
    }

    std::string finish() { return out_ + "</svg>\n"; }

private:
    double w_, h_;
    std::string out_;
};

std::string fill(const Color& c)
{
    return "fill=\"" + c.hex() + "\"";
}

std::vector<std::string> ids(const std::string& prefix, std::size_t n)
{
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i)
        out.push_back(prefix + std::to_string(i));
    return out;
}

std::vector<Color> palette(std::size_t k)
{
    return {std::begin(kPalette), std::begin(kPalette) + std::ptrdiff_t(k)};
}

ChartFixture bar(std::uint64_t seed, Random& rng, double w, double h)
{
    ChartFixture f;
    const std::size_t n = seed == 0 ? 12 : 8 + rng.index(6);
    const std::size_t k = 3 + seed % 3;
    SvgBuilder b(w, h);
    b.title("Monthly totals");
    const double left = 60, right = w - 30, top = 50, bottom = h - 50;
    const double slot = (right - left) / double(n);
    for (std::size_t i = 0; i < n; ++i) {
        double v = rng.uniform(0.15, 0.95) * (bottom - top);
        b.raw("<rect id=\"mark-" + std::to_string(i) + "\" x=\"" + num(left + slot * double(i) + slot * 0.15) +
              "\" y=\"" + num(bottom - v) + "\" width=\"" + num(slot * 0.7) + "\" height=\"" + num(v) + "\" " +
              fill(kPalette[i % k]) + "/>");
    }
    b.axes(left, top, right, bottom, int(n), 5);
    f.svg = b.finish();
    f.symbols = {ids("mark-", n)};
    f.categories = palette(k);
    return f;
}

ChartFixture stackedBar(std::uint64_t seed, Random& rng, double w, double h)
{
    ChartFixture f;
    const std::size_t stacks = seed == 0 ? 6 : 5 + rng.index(4);
    const std::size_t k = 4 - seed % 2;
    SvgBuilder b(w, h);
    b.title("Share by region");
    const double left = 60, right = w - 30, top = 50, bottom = h - 50;
    const double slot = (right - left) / double(stacks);
    std::size_t id = 0;
    for (std::size_t s = 0; s < stacks; ++s) {
        double y = bottom;
        for (std::size_t c = 0; c < k; ++c) {
            double v = rng.uniform(0.08, 0.22) * (bottom - top);
            b.raw("<rect id=\"mark-" + std::to_string(id++) + "\" x=\"" + num(left + slot * double(s) + slot * 0.2) +
                  "\" y=\"" + num(y - v) + "\" width=\"" + num(slot * 0.6) + "\" height=\"" + num(v) + "\" " +
                  fill(kPalette[c]) + "/>");
            y -= v;
        }
    }
    b.axes(left, top, right, bottom, int(stacks), 5);
    f.svg = b.finish();
    f.symbols = {ids("mark-", id)};
    f.categories = palette(k);
    return f;
}

ChartFixture scatter(std::uint64_t seed, Random& rng, double w, double h)
{
    ChartFixture f;
    const std::size_t n = seed == 0 ? 60 : 40 + 10 * rng.index(3);
    const std::size_t k = 3 + seed % 2;
    SvgBuilder b(w, h);
    b.title("Height against weight");
    const double left = 60, right = w - 30, top = 50, bottom = h - 50;
    b.axes(left, top, right, bottom, 6, 5);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t c = i % k;
        double cx = left + 10 + (right - left - 20) * std::clamp(0.2 + 0.25 * double(c) + rng.uniform(-0.18, 0.18), 0.0, 1.0);
        double cy = top + 10 + (bottom - top - 20) * rng.uniform(0, 1);
        b.raw("<circle id=\"mark-" + std::to_string(i) + "\" cx=\"" + num(cx) + "\" cy=\"" + num(cy) +
              "\" r=\"4\" " + fill(kPalette[c]) + " fill-opacity=\"0.85\"/>");
    }
    f.svg = b.finish();
    f.symbols = {ids("mark-", n)};
    f.categories = palette(k);
    return f;
}

// Irregular polygon rescaled to an exact area and bounding-box aspect ratio.
std::vector<Point> shapedPolygon(Random& rng, std::size_t vertices, double area, double aspect, double jitter)
{
    std::vector<Point> pts;
    for (std::size_t i = 0; i < vertices; ++i) {
        double a = 2 * std::numbers::pi * (double(i) + rng.uniform(-0.3, 0.3)) / double(vertices);
        double r = 1.0 + rng.uniform(-jitter, jitter);
        pts.push_back({r * std::cos(a), r * std::sin(a)});
    }
    double area0 = 0, xmin = 1e9, xmax = -1e9, ymin = 1e9, ymax = -1e9;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto& p = pts[i];
        const auto& q = pts[(i + 1) % pts.size()];
        area0 += p.first * q.second - q.first * p.second;
        xmin = std::min(xmin, p.first), xmax = std::max(xmax, p.first);
        ymin = std::min(ymin, p.second), ymax = std::max(ymax, p.second);
    }
    area0 = std::abs(area0) / 2;
    double bw = xmax - xmin, bh = ymax - ymin;
    // sx * sy = area / area0 and (bw sx) / (bh sy) = aspect
    double product = area / area0, ratio = aspect * bh / bw;
    double sx = std::sqrt(product * ratio), sy = std::sqrt(product / ratio);
    for (auto& p : pts)
        p = {(p.first - xmin) * sx, (p.second - ymin) * sy};
    return pts;
}

Color blues(double t)
{
    extract::Lab light{92, -3, -10}, dark{28, 4, -42};
    return extract::labToRgb({light.L + t * (dark.L - light.L), light.a + t * (dark.a - light.a),
                              light.b + t * (dark.b - light.b)});
}

ChartFixture choropleth(std::uint64_t seed, Random& rng, double w, double h)
{
    ChartFixture f;
    const std::size_t cols = 8, rows = seed == 0 ? 5 : 4 + seed % 2;
    const std::size_t n = cols * rows;
    SvgBuilder b(w, h);
    b.title("Rate by district");
    const double left = 30, top = 50;
    const double cellW = (w - 60) / double(cols), cellH = (h - 80) / double(rows);
    // Area and aspect grow together so shape features form one dense chain.
    std::vector<double> t(n);
    for (std::size_t i = 0; i < n; ++i)
        t[i] = double(i) / double(n - 1);
    rng.shuffle(t);
    const double baseArea = 0.42 * cellW * cellH;
    for (std::size_t i = 0; i < n; ++i) {
        double area = baseArea * (0.8 + 0.4 * t[i]);
        double aspect = (cellW / cellH) * (0.85 + 0.3 * t[i]);
        auto pts = shapedPolygon(rng, 5 + rng.index(4), area, aspect, 0.25);
        double ox = left + cellW * double(i % cols) + cellW * 0.1, oy = top + cellH * double(i / cols) + cellH * 0.1;
        for (auto& p : pts)
            p = {p.first + ox, p.second + oy};
        b.raw("<path id=\"mark-" + std::to_string(i) + "\" d=\"" + pathData(pts) + "\" " +
              fill(blues(rng.uniform(0, 1))) + " stroke=\"#ffffff\" stroke-width=\"0.5\"/>");
    }
    f.svg = b.finish();
    f.symbols = {ids("mark-", n)};
    f.colorClass = extract::Classification::ContinuousSingleHue;
    return f;
}

ChartFixture nodeLink(std::uint64_t seed, Random& rng, double w, double h)
{
    ChartFixture f;
    const std::size_t n = seed == 0 ? 30 : 24 + 6 * (seed % 2);
    const std::size_t k = 4 + seed % 2;
    SvgBuilder b(w, h);
    b.title("Collaboration network");
    std::vector<Point> pos(n);
    const double cx = w / 2, cy = h / 2 + 15;
    for (std::size_t i = 0; i < n; ++i) {
        double a = 2 * std::numbers::pi * double(i) / double(n);
        double r = std::min(w, h) * rng.uniform(0.22, 0.38);
        pos[i] = {cx + r * std::cos(a), cy + r * std::sin(a)};
    }
    std::set<std::pair<std::size_t, std::size_t>> edges;
    while (edges.size() < n * 3 / 2) {
        std::size_t a = rng.index(n), c = rng.index(n);
        if (a != c)
            edges.insert({std::min(a, c), std::max(a, c)});
    }
    std::size_t e = 0;
    for (const auto& [a, c] : edges) {
        b.raw("<line id=\"edge-" + std::to_string(e++) + "\" x1=\"" + num(pos[a].first) + "\" y1=\"" +
              num(pos[a].second) + "\" x2=\"" + num(pos[c].first) + "\" y2=\"" + num(pos[c].second) +
              "\" stroke=\"#999999\" stroke-width=\"1\"/>");
    }
    for (std::size_t i = 0; i < n; ++i)
        b.raw("<circle id=\"mark-" + std::to_string(i) + "\" cx=\"" + num(pos[i].first) + "\" cy=\"" +
              num(pos[i].second) + "\" r=\"6\" " + fill(kPalette[i % k]) + " stroke=\"#ffffff\"/>");
    f.svg = b.finish();
    f.symbols = {ids("mark-", n)};
    f.categories = palette(k);
    return f;
}

Color viridis(double t)
{
    static const double anchors[5][3] = {
        {68, 1, 84}, {59, 82, 139}, {33, 145, 140}, {94, 201, 98}, {253, 231, 37}};
    t = std::clamp(t, 0.0, 1.0) * 4;
    int i = std::min(int(t), 3);
    double f = t - i;
    auto mix = [&](int c) { return std::uint8_t(std::lround(anchors[i][c] + f * (anchors[i + 1][c] - anchors[i][c]))); };
    return {mix(0), mix(1), mix(2), 1.0};
}

ChartFixture wind(std::uint64_t seed, Random& rng, double w, double h)
{
    ChartFixture f;
    const std::size_t cols = 8, rows = seed == 0 ? 6 : 5 + seed % 2;
    const std::size_t n = cols * rows;
    SvgBuilder b(w, h);
    b.title("Surface wind direction");
    const std::vector<Point> arrow = {{-10, -2}, {4, -2}, {4, -6}, {10, 0}, {4, 6}, {4, 2}, {-10, 2}};
    std::vector<std::size_t> rank(n);
    for (std::size_t i = 0; i < n; ++i)
        rank[i] = i;
    rng.shuffle(rank);
    const double cellW = (w - 60) / double(cols), cellH = (h - 80) / double(rows);
    const double scale = 1.0 + 0.2 * double(seed % 3);
    for (std::size_t i = 0; i < n; ++i) {
        double angle = (double(rank[i]) + rng.uniform(0.2, 0.8)) * 170.0 / double(n);
        double rad = angle * std::numbers::pi / 180;
        double ox = 30 + cellW * (double(i % cols) + 0.5), oy = 50 + cellH * (double(i / cols) + 0.5);
        std::vector<Point> pts;
        for (const auto& [x, y] : arrow)
            pts.push_back({ox + scale * (x * std::cos(rad) - y * std::sin(rad)),
                           oy + scale * (x * std::sin(rad) + y * std::cos(rad))});
        b.raw("<path id=\"mark-" + std::to_string(i) + "\" d=\"" + pathData(pts) + "\" " +
              fill(viridis(angle / 170.0)) + "/>");
    }
    f.svg = b.finish();
    f.symbols = {ids("mark-", n)};
    f.colorClass = extract::Classification::ContinuousMultiHue;
    f.colorRotationLinked = true;
    return f;
}

} // namespace

ChartFixture makeChart(ChartType type, std::uint64_t seed)
{
    Random rng(seed * 0x100 + std::uint64_t(type) + 17);
    const double w = 560 + 40 * double(seed % 3);
    const double h = 400 + 20 * double(seed % 2);
    ChartFixture f;
    switch (type) {
    case ChartType::Bar: f = bar(seed, rng, w, h); break;
    case ChartType::StackedBar: f = stackedBar(seed, rng, w, h); break;
    case ChartType::Scatter: f = scatter(seed, rng, w, h); break;
    case ChartType::Choropleth: f = choropleth(seed, rng, w, h); break;
    case ChartType::NodeLink: f = nodeLink(seed, rng, w, h); break;
    case ChartType::Wind: f = wind(seed, rng, w, h); break;
    }
    f.type = type;
    f.name = std::string(chartTypeName(type)) + "-" + std::to_string(seed);
    return f;
}

std::vector<ChartFixture> labeledCharts()
{
    std::vector<ChartFixture> out;
    for (auto t : kAllChartTypes)
        out.push_back(makeChart(t, 0));
    return out;
}

std::vector<ChartFixture> trainingCharts()
{
    std::vector<ChartFixture> out;
    for (std::uint64_t seed = 1; seed <= 3; ++seed)
        for (auto t : kAllChartTypes)
            out.push_back(makeChart(t, seed));
    return out;
}

std::vector<ChartFixture> heldoutCharts()
{
    std::vector<ChartFixture> out;
    for (auto t : kAllChartTypes)
        out.push_back(makeChart(t, 4));
    return out;
}

std::string bubbleChart()
{
    Random rng(99);
    SvgBuilder b(560, 400);
    b.title("Population by region");
    b.axes(60, 50, 530, 350, 6, 5);
    const double radii[] = {4, 7, 11};
    for (std::size_t i = 0; i < 36; ++i) {
        const std::size_t c = i % 3, s = (i / 3) % 3;
        double cx = 80 + 430 * rng.uniform(0, 1);
        double cy = 70 + 260 * rng.uniform(0, 1);
        b.raw("<circle id=\"mark-" + std::to_string(i) + "\" cx=\"" + num(cx) + "\" cy=\"" + num(cy) + "\" r=\"" +
              num(radii[s]) + "\" " + fill(kPalette[c]) + "/>");
    }
    return b.finish();
}

std::string mountainScene()
{
    Random rng(2024);
    SvgBuilder b(800, 400);
    for (int i = 0; i < 30; ++i) {
        double area = 90 + 20 * rng.uniform(0, 1);
        double aspect = 1.5 + double(i) / 29.0;
        // ridge: base corners plus a jagged top
        std::vector<Point> top;
        int peaks = 3 + int(rng.index(3));
        top.push_back({0, 0});
        for (int p = 0; p < peaks; ++p)
            top.push_back({(p + 0.5) / peaks, -rng.uniform(0.5, 1.0)});
        top.push_back({1, 0});
        double a0 = 0, ymin = 0;
        for (std::size_t k = 0; k < top.size(); ++k) {
            const auto& p = top[k];
            const auto& q = top[(k + 1) % top.size()];
            a0 += p.first * q.second - q.first * p.second;
            ymin = std::min(ymin, p.second);
        }
        a0 = std::abs(a0) / 2;
        // bounding box is 1 x |ymin|; scale to the target area and aspect
        double product = area / a0, ratio = aspect * (-ymin);
        double sx = std::sqrt(product * ratio), sy = std::sqrt(product / ratio);
        double ox = 20 + 25 * (i % 30), oy = 60 + 40 * (i % 5);
        for (auto& p : top)
            p = {ox + p.first * sx, oy + p.second * sy};
        b.raw("<path id=\"mountain-" + std::to_string(i) + "\" d=\"" + pathData(top) + "\" fill=\"#8c6d31\"/>");
    }
    b.raw("<path id=\"outlier-0\" d=\"" + pathData({{100, 390}, {150, 190}, {200, 390}}) + "\" fill=\"#8c6d31\"/>");
    b.raw("<path id=\"outlier-1\" d=\"" + pathData({{300, 390}, {300, 290}, {400, 290}, {400, 390}}) +
          "\" fill=\"#8c6d31\"/>");
    return b.finish();
}

} // namespace legendgen::fixtures
