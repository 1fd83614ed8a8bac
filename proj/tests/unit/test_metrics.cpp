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

#include <doctest.h>

#include "error.hpp"
#include "fixtures.hpp"
#include "legend/render.hpp"
#include "legend/space.hpp"
#include "metrics/evaluator.hpp"
#include "metrics/metrics.hpp"
#include "svg/raster.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

using namespace legendgen;
using namespace legendgen::metrics;
using legend::LegendSpec;
using svg::Color;
using svg::RasterBuffer;

namespace {

// Reference values below come from tests/oracles/metric_oracles.py.
const char* kWorkedChart =
    R"(<svg xmlns="http://www.w3.org/2000/svg" width="200" height="120">)"
    R"(<rect x="20" y="40" width="20" height="60" fill="#4e79a7"/>)"
    R"(<rect x="60" y="60" width="20" height="40" fill="#f28e2b"/>)"
    R"(<rect x="100" y="20" width="20" height="80" fill="#e15759"/>)"
    R"(<rect x="150" y="50" width="20" height="50" fill="#4e79a7"/>)"
    R"(</svg>)";

LegendSpec workedSpec()
{
    LegendSpec s;
    s.symbolType = legend::SymbolType::NonSemantic;
    s.symbolLayout = legend::SymbolLayout::DiscreteUniform;
    s.textLayout = legend::TextLayout::AccompanyingSide;
    s.direction = legend::Direction::Vertical;
    s.anchorX = 140;
    s.anchorY = 30;
    return s;
}

LegendSpec firstSpec(const legend::ChartDocument& doc, legend::SymbolType type)
{
    auto space = legend::validSpace(doc);
    for (const auto& c : space.combos())
        if (c.symbolType == type && c.direction == legend::Direction::Vertical) {
            LegendSpec s;
            legend::applyCombo(s, c);
            s.anchorX = doc.scene.width - 160;
            s.anchorY = 50;
            return s;
        }
    FAIL("no combo");
    return {};
}

} // namespace

TEST_CASE("obstruction is the population std of channel means")
{
    RasterBuffer white(20, 20);
    CHECK(obstruction(white, PixelRect{0, 0, 20, 20}) == 0.0);
    CHECK(obstruction(white, PixelRect{5, 5, 1, 1}) == 0.0);

    RasterBuffer half(10, 10);
    for (int j = 0; j < 10; ++j)
        for (int i = 0; i < 5; ++i)
            half.set(i, j, svg::kBlack);
    CHECK(obstruction(half, PixelRect{0, 0, 10, 10}) == doctest::Approx(127.5).epsilon(1e-12));

    // permuting pixels inside the region does not matter
    RasterBuffer mixed(10, 10);
    for (int j = 0; j < 10; ++j)
        for (int i = 0; i < 10; ++i)
            if ((i + j) % 2)
                mixed.set(i, j, svg::kBlack);
    CHECK(obstruction(mixed, PixelRect{0, 0, 10, 10}) == doctest::Approx(127.5).epsilon(1e-12));

    CHECK_THROWS_AS(obstruction(white, PixelRect{15, 15, 10, 2}), Error);
    try {
        obstruction(white, PixelRect{0, 0, 0, 0});
        FAIL("expected error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::RegionOutOfBounds);
    }
}

TEST_CASE("ink balance")
{
    RasterBuffer dot(100, 100);
    dot.set(0, 0, svg::kBlack);
    // oracle 70.003571 with pixel centers at +0.5; 70.71 within the half-pixel tolerance
    CHECK(inkBalance(dot) == doctest::Approx(70.003571).epsilon(1e-6));
    CHECK(std::abs(inkBalance(dot) - 70.71) <= 0.71);

    RasterBuffer gray(40, 30, Color{128, 128, 128, 1});
    CHECK(inkBalance(gray) == doctest::Approx(0.0).epsilon(1e-12));

    RasterBuffer sym(50, 40);
    sym.set(3, 7, svg::kBlack);
    sym.set(46, 32, svg::kBlack);
    sym.set(10, 30, Color{100, 0, 0, 1});
    sym.set(39, 9, Color{100, 0, 0, 1});
    CHECK(inkBalance(sym) == doctest::Approx(0.0).epsilon(1e-12));

    try {
        inkBalance(RasterBuffer(8, 8));
        FAIL("expected error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NoInk);
    }
}

TEST_CASE("contrast ratio")
{
    CHECK(contrastRatio(svg::kBlack, svg::kWhite) == doctest::Approx(21.0).epsilon(1e-12));
    CHECK(contrastRatio(svg::kWhite, svg::kBlack) == doctest::Approx(21.0).epsilon(1e-12));
    CHECK(std::abs(contrastRatio(Color{0x77, 0x77, 0x77, 1}, svg::kWhite) - 4.48) <= 0.01);
    CHECK(contrastRatio(Color{0x77, 0x77, 0x77, 1}, svg::kWhite) == doctest::Approx(4.478089).epsilon(1e-6));

    fixtures::Random rng(5);
    for (int k = 0; k < 200; ++k) {
        Color a{std::uint8_t(rng.index(256)), std::uint8_t(rng.index(256)), std::uint8_t(rng.index(256)), 1};
        Color b{std::uint8_t(rng.index(256)), std::uint8_t(rng.index(256)), std::uint8_t(rng.index(256)), 1};
        CHECK(contrastRatio(a, a) == doctest::Approx(1.0));
        CHECK(contrastRatio(a, b) == contrastRatio(b, a));
        CHECK(contrastRatio(a, b) >= 1.0);
        CHECK(contrastRatio(a, b) <= 21.0 + 1e-12);
    }
}

TEST_CASE("size increase")
{
    const svg::Box vis{0, 0, 100, 100};
    CHECK(sizeIncrease(vis, vis) == 0.0);
    CHECK(sizeIncrease(vis, {0, 0, 200, 100}) == doctest::Approx(1.0));
    CHECK(sizeIncrease(vis, {0, 0, 120, 100}) == doctest::Approx(0.2));
    CHECK_THROWS_AS(sizeIncrease({0, 0, 0, 10}, {0, 0, 10, 10}), Error);
    try {
        sizeIncrease(vis, {10, 10, 50, 50});
        FAIL("expected error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InvalidBoxes);
    }
}

TEST_CASE("kendall tau")
{
    std::vector<double> a{1, 2, 3, 4, 5};
    std::vector<double> r{5, 4, 3, 2, 1};
    CHECK(kendallTau(a, a) == doctest::Approx(1.0));
    CHECK(kendallTau(a, r) == doctest::Approx(-1.0));
    std::vector<double> m{95, 70, 110};
    std::vector<double> o{0, 1, 2};
    CHECK(kendallTau(o, m) == doctest::Approx(1.0 / 3));
}

TEST_CASE("correspondence decomposition on the bar fixture")
{
    auto doc = legend::analyzeChart(fixtures::makeChart(fixtures::ChartType::Bar, 0).svg);

    auto semantic = legend::renderLegend(firstSpec(doc, legend::SymbolType::Semantic), doc);
    auto c = correspondence(semantic, doc);
    CHECK(c.color == 1.0);
    CHECK(c.shape == 1.0);
    CHECK(c.order == 1.0);
    CHECK(c.total() == doctest::Approx(3.0));

    auto plain = legend::renderLegend(firstSpec(doc, legend::SymbolType::NonSemantic), doc);
    CHECK(correspondence(plain, doc).total() == doctest::Approx(2.5));

    auto reversed = semantic;
    std::reverse(reversed.itemValues.begin(), reversed.itemValues.end());
    auto cr = correspondence(reversed, doc);
    CHECK(cr.order == doctest::Approx(0.0));
    CHECK(cr.total() == doctest::Approx(2.0));
}

TEST_CASE("worked fixture matches the oracle field by field")
{
    auto doc = legend::analyzeChart(kWorkedChart);
    const auto spec = workedSpec();
    auto rendered = legend::renderLegend(spec, doc);
    CHECK(rendered.width == 71);
    CHECK(rendered.height == 54);

    auto x = metricVector(spec, doc);
    CHECK(x.obstruction == doctest::Approx(54.160301057496).epsilon(1e-10));
    CHECK(x.inkBalance == doctest::Approx(0.097070721855).epsilon(1e-10));
    CHECK(x.readability == doctest::Approx(21.0).epsilon(1e-12));
    CHECK(x.sizeIncrease == doctest::Approx(0.055).epsilon(1e-12));
    CHECK(x.correspondence == doctest::Approx(2.166666666667).epsilon(1e-10));
    CHECK(x.prefHorizontal == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(x.prefVertical == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(x.prefCenterDistance == doctest::Approx(0.647918045834).epsilon(1e-10));

    Evaluator ev(doc);
    auto t = ev.prepare(rendered);
    CHECK(ev.evaluate(t, spec) == x);
}

TEST_CASE("legend over blank space has zero obstruction")
{
    auto doc = legend::analyzeChart(kWorkedChart);
    auto spec = workedSpec();
    spec.anchorX = 125;
    spec.anchorY = -5;
    auto x = metricVector(spec, doc);
    CHECK(x.obstruction == 0.0);
    CHECK(x.sizeIncrease > 0.0);
}

TEST_CASE("moving the anchor horizontally leaves R, C and pref_v alone")
{
    auto doc = legend::analyzeChart(kWorkedChart);
    auto a = workedSpec();
    auto b = a;
    b.anchorX = 10;
    auto xa = metricVector(a, doc);
    auto xb = metricVector(b, doc);
    CHECK(xa.readability == xb.readability);
    CHECK(xa.correspondence == xb.correspondence);
    CHECK(xa.prefVertical == xb.prefVertical);
    CHECK(xa.prefHorizontal != xb.prefHorizontal);
    CHECK(xa.prefCenterDistance != xb.prefCenterDistance);
}

TEST_CASE("fast evaluator equals the reference path on every labeled combo")
{
    for (const auto& chart : fixtures::labeledCharts()) {
        CAPTURE(chart.name);
        auto doc = legend::analyzeChart(chart.svg);
        auto groups = legend::channelGroups(doc);
        legend::DesignSpace space(groups);
        Evaluator ev(doc);
        const double anchors[][2] = {{doc.scene.width - 160, 50}, {-20, doc.scene.height - 30}, {7.5, 3.25}};
        for (const auto& c : space.combos()) {
            LegendSpec s;
            legend::applyCombo(s, c);
            auto rendered = legend::renderLegend(s, doc, space, groups);
            auto t = ev.prepare(rendered);
            for (const auto& a : anchors) {
                s.anchorX = ev.snap(a[0]);
                s.anchorY = ev.snap(a[1]);
                CHECK(ev.evaluate(t, s) == metricVector(s, doc, rendered, ev.base(), ev.scale()));
            }
        }
    }
}

TEST_CASE("fuzz: metric vectors stay finite and in range")
{
    fixtures::Random rng(17);
    auto charts = fixtures::trainingCharts();
    for (const auto& chart : charts) {
        CAPTURE(chart.name);
        auto doc = legend::analyzeChart(chart.svg);
        auto groups = legend::channelGroups(doc);
        legend::DesignSpace space(groups);
        auto combos = space.combos();
        Evaluator ev(doc);
        for (int k = 0; k < 25; ++k) {
            LegendSpec s;
            legend::applyCombo(s, combos[rng.index(combos.size())]);
            s.anchorX = ev.snap(rng.uniform(-0.15, 1.15) * doc.scene.width);
            s.anchorY = ev.snap(rng.uniform(-0.15, 1.15) * doc.scene.height);
            auto x = ev.evaluate(ev.prepare(legend::renderLegend(s, doc, space, groups)), s);
            CHECK(x.finite());
            CHECK(x.obstruction >= 0);
            CHECK(x.readability >= 1);
            CHECK(x.readability <= 21);
            CHECK(x.sizeIncrease >= 0);
            CHECK(x.correspondence >= 0);
            CHECK(x.correspondence <= 3);
            for (double f : normalizedFeatures(x)) {
                CHECK(f >= 0);
                CHECK(f <= 1);
            }
        }
    }
}

TEST_CASE("metric vector serialization")
{
    MetricVector x{1.5, 0.25, 4.5, 0.125, 2.5, 0.3, 0.7, 0.1};
    auto text = serializeMetrics(x);
    CHECK(text.find("\"O\"") < text.find("\"I\""));
    CHECK(text.find("\"pref_v\"") < text.find("\"pref_c\""));
    CHECK(parseMetrics(text) == x);
    CHECK_THROWS_AS(parseMetrics("{\"O\": 1}"), Error);
    CHECK(MetricVector::fromValues(x.values()) == x);
}
