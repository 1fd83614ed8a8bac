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
#include "extract/lab.hpp"
#include "fixtures.hpp"
#include "legend/interact.hpp"
#include "legend/render.hpp"
#include "legend/space.hpp"
#include "legend/spec.hpp"
#include "metrics/metrics.hpp"
#include "svg/writer.hpp"

#include <algorithm>
#include <cmath>
#include <set>

using namespace legendgen;
using namespace legendgen::legend;
using svg::Color;

namespace {

ChartDocument chart(fixtures::ChartType type, std::uint64_t seed = 0)
{
    return analyzeChart(fixtures::makeChart(type, seed).svg);
}

std::string text(const ChartDocument& doc)
{
    return svg::writeSvg(doc.scene, {}, "");
}

template <class T>
std::set<T> asSet(const std::vector<T>& v)
{
    return {v.begin(), v.end()};
}

ErrorCode codeOf(auto&& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode(0);
}

LegendSpec specFor(SymbolLayout layout, TextLayout text, Direction dir, SymbolType type = SymbolType::NonSemantic)
{
    LegendSpec s;
    s.symbolType = type;
    s.symbolLayout = layout;
    s.textLayout = text;
    s.direction = dir;
    s.anchorX = 20;
    s.anchorY = 20;
    return s;
}

const svg::VisualElement* byText(const RenderedLegend& l, const std::string& label)
{
    for (const auto& e : l.elements)
        if (e.kind == svg::ElementKind::Text && e.text == label)
            return &e;
    return nullptr;
}

const Color kAltPalette[] = {Color{0x11, 0x22, 0x33, 1}, Color{0x44, 0x55, 0x66, 1}, Color{0x77, 0x88, 0x99, 1},
                             Color{0xaa, 0xbb, 0xcc, 1}, Color{0xdd, 0xee, 0xff, 1}, Color{0x12, 0x34, 0x56, 1}};

} // namespace

TEST_CASE("spec enums and serialization round trip")
{
    CHECK(std::string(name(TextLayout::AccompanyingCross)) == "accompanying_cross");
    CHECK(parseSymbolLayout("discrete_nonuniform") == SymbolLayout::DiscreteNonuniform);
    CHECK(parseSymbolType("data_encoded") == SymbolType::DataEncoded);
    CHECK(codeOf([] { parseMultiLayout("grid"); }) == ErrorCode::InvalidArgument);

    LegendSpec s = specFor(SymbolLayout::Connected, TextLayout::AsTick, Direction::Horizontal);
    s.anchorX = 12.25;
    s.anchorY = -3.5;
    s.swatchSize = 14;
    s.textColor = Color{0x33, 0x44, 0x55, 1};
    s.channelGroupIds = {"grp-0"};
    auto json = serializeSpec(s);
    CHECK(json.find("\"symbol_type\"") < json.find("\"channel_group_ids\""));
    CHECK(parseSpec(json) == s);
    CHECK(codeOf([] { parseSpec("{\"symbol_type\": 3}"); }) == ErrorCode::InvalidArgument);
    CHECK(codeOf([] { parseSpec("not json"); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("valid space: categorical palette")
{
    auto doc = chart(fixtures::ChartType::StackedBar);
    REQUIRE(doc.extraction.channels.front().colors.size() == 4);
    auto space = validSpace(doc);
    CHECK(asSet(space.symbolLayouts()) == std::set{SymbolLayout::DiscreteUniform, SymbolLayout::DiscreteNonuniform});
    auto texts = space.textLayouts(SymbolLayout::DiscreteUniform, MultiLayout::Single);
    for (auto t : {TextLayout::AccompanyingCross, TextLayout::AccompanyingSide, TextLayout::Embedded, TextLayout::AsSymbol})
        CHECK(std::count(texts.begin(), texts.end(), t) == 1);
    CHECK(std::count(texts.begin(), texts.end(), TextLayout::AsTick) == 0);
    CHECK(space.multiLayouts(SymbolLayout::DiscreteUniform) == std::vector{MultiLayout::Single});
}

TEST_CASE("valid space: continuous ramp")
{
    auto doc = chart(fixtures::ChartType::Choropleth);
    auto space = validSpace(doc);
    CHECK(asSet(space.symbolLayouts()) == std::set{SymbolLayout::Continuous, SymbolLayout::Connected});
    for (auto l : space.symbolLayouts()) {
        CHECK(space.textLayouts(l, MultiLayout::Single) == std::vector{TextLayout::AsTick});
        CHECK(space.symbolTypes(l) == std::vector{SymbolType::NonSemantic});
    }
}

TEST_CASE("valid space: size channel allows nested; two small groups allow matrix")
{
    auto doc = analyzeChart(fixtures::bubbleChart());
    auto groups = channelGroups(doc);
    REQUIRE(groups.size() == 2);
    auto space = validSpace(doc);
    auto layouts = space.symbolLayouts();
    CHECK(std::count(layouts.begin(), layouts.end(), SymbolLayout::DiscreteUniform) == 1);
    auto multis = space.multiLayouts(SymbolLayout::DiscreteUniform);
    CHECK(asSet(multis) ==
          std::set{MultiLayout::Matrix, MultiLayout::Flattened, MultiLayout::Parallel, MultiLayout::Combined});
    for (const auto& c : space.combos())
        CHECK(c.multiLayout != MultiLayout::Single);

    // the size group alone, as primary, admits nested
    std::vector<ChannelGroup> sizeOnly;
    for (const auto& g : groups)
        if (g.primary().kind == extract::ChannelKind::Size)
            sizeOnly.push_back(g);
    REQUIRE(sizeOnly.size() == 1);
    DesignSpace single(sizeOnly);
    auto sl = single.symbolLayouts();
    CHECK(std::count(sl.begin(), sl.end(), SymbolLayout::Nested) == 1);
    CHECK(single.textLayouts(SymbolLayout::Nested, MultiLayout::Single) == std::vector{TextLayout::AccompanyingSide});
}

TEST_CASE("admissibility")
{
    auto doc = chart(fixtures::ChartType::Bar);
    auto space = validSpace(doc);
    CHECK(space.admissible(specFor(SymbolLayout::DiscreteUniform, TextLayout::AccompanyingSide, Direction::Vertical)));
    CHECK_FALSE(space.admissible(specFor(SymbolLayout::Continuous, TextLayout::AsTick, Direction::Vertical)));
    auto s = specFor(SymbolLayout::DiscreteUniform, TextLayout::AccompanyingSide, Direction::Vertical);
    s.swatchSize = 0;
    CHECK_FALSE(space.admissible(s));
    s.swatchSize = 12;
    s.multiLayout = MultiLayout::Parallel;
    CHECK_FALSE(space.admissible(s));
    s.multiLayout = MultiLayout::Single;
    s.symbolType = SymbolType::DataEncoded;
    CHECK(space.admissible(s));
    CHECK(codeOf([&] { renderLegend(specFor(SymbolLayout::Nested, TextLayout::AccompanyingSide, Direction::Vertical), doc); }) ==
          ErrorCode::InadmissibleSpec);
}

TEST_CASE("render: four categories, vertical rows at equal pitch")
{
    auto doc = chart(fixtures::ChartType::StackedBar);
    auto l = renderLegend(specFor(SymbolLayout::DiscreteUniform, TextLayout::AccompanyingCross, Direction::Vertical), doc);
    REQUIRE(l.swatchColors.size() == 4);
    CHECK(l.texts.size() == 4);
    std::vector<double> ys;
    for (int k = 1; k <= 4; ++k) {
        const auto* t = byText(l, "Class " + std::to_string(k));
        REQUIRE(t != nullptr);
        ys.push_back(std::get<svg::TextGeometry>(t->geometry).y);
    }
    for (std::size_t k = 2; k < ys.size(); ++k)
        CHECK(ys[k] - ys[k - 1] == doctest::Approx(ys[1] - ys[0]));
    CHECK(ys[1] > ys[0]);
    const auto& ch = doc.extraction.channels.front();
    for (std::size_t k = 0; k < 4; ++k)
        CHECK(l.swatchColors[k].sameRgb(ch.colors[k]));
}

TEST_CASE("render: non-uniform spacing differs from uniform")
{
    auto doc = chart(fixtures::ChartType::StackedBar);
    // stacked layers differ vertically only
    auto u = renderLegend(specFor(SymbolLayout::DiscreteUniform, TextLayout::AccompanyingSide, Direction::Vertical), doc);
    auto n = renderLegend(specFor(SymbolLayout::DiscreteNonuniform, TextLayout::AccompanyingSide, Direction::Vertical), doc);
    CHECK(n.height > u.height);
    CHECK(n.width == u.width);
}

TEST_CASE("render: continuous ramp with ticks")
{
    auto doc = chart(fixtures::ChartType::Choropleth);
    auto l = renderLegend(specFor(SymbolLayout::Continuous, TextLayout::AsTick, Direction::Horizontal), doc);
    int gradients = 0;
    for (const auto& e : l.elements)
        if (e.fillGradient) {
            ++gradients;
            CHECK(e.fillGradient->stops.size() == 16);
        }
    CHECK(gradients == 1);
    CHECK(l.texts.size() >= 2);
    const auto* lo = byText(l, "0");
    const auto* hi = byText(l, "1");
    REQUIRE(lo != nullptr);
    REQUIRE(hi != nullptr);
    CHECK(std::get<svg::TextGeometry>(lo->geometry).x < std::get<svg::TextGeometry>(hi->geometry).x);
    CHECK(l.continuous);

    auto c = renderLegend(specFor(SymbolLayout::Connected, TextLayout::AsTick, Direction::Vertical), doc);
    CHECK(c.swatchColors.size() == 8);
    CHECK(c.texts.size() >= 2);
}

TEST_CASE("render: single category is one swatch and one label")
{
    const char* svgText = R"(<svg xmlns="http://www.w3.org/2000/svg" width="100" height="80">)"
                          R"(<rect x="10" y="10" width="10" height="50" fill="#4e79a7"/>)"
                          R"(<rect x="30" y="30" width="10" height="30" fill="#4e79a7"/>)"
                          R"(<rect x="50" y="20" width="10" height="40" fill="#4e79a7"/>)"
                          R"(</svg>)";
    auto doc = analyzeChart(svgText);
    auto l = renderLegend(specFor(SymbolLayout::DiscreteUniform, TextLayout::AccompanyingSide, Direction::Vertical), doc);
    CHECK(l.swatchColors.size() == 1);
    CHECK(l.texts.size() == 1);
}

TEST_CASE("render: every admissible combo on every fixture renders")
{
    auto charts = fixtures::labeledCharts();
    for (const auto& f : charts) {
        CAPTURE(f.name);
        auto doc = analyzeChart(f.svg);
        auto groups = channelGroups(doc);
        DesignSpace space(groups);
        for (const auto& c : space.combos()) {
            LegendSpec s;
            applyCombo(s, c);
            auto l = renderLegend(s, doc, space, groups);
            CHECK(!l.elements.empty());
            if (c.textLayout == TextLayout::AsTick)
                CHECK(l.texts.size() >= 2);
            if (!l.continuous && c.symbolLayout != SymbolLayout::Nested && c.textLayout != TextLayout::AsLabel)
                CHECK(l.swatchColors.size() == groups.front().cardinality());
        }
    }
}

TEST_CASE("composite: ids, bbox and idempotence")
{
    auto doc = chart(fixtures::ChartType::Bar);
    auto s = specFor(SymbolLayout::DiscreteUniform, TextLayout::AccompanyingSide, Direction::Vertical);
    auto l = renderLegend(s, doc);
    auto c = composite(doc, l, s);
    CHECK(c.combinedBox == svg::Box{0, 0, doc.scene.width, doc.scene.height});
    CHECK(metrics::sizeIncrease({0, 0, doc.scene.width, doc.scene.height}, c.combinedBox) == 0.0);
    std::set<std::string> sceneIds;
    for (const auto& e : doc.scene.elements)
        sceneIds.insert(e.id);
    for (const auto& e : c.legend) {
        CHECK(e.id.rfind(c.legendGroupId, 0) == 0);
        CHECK(sceneIds.count(e.id) == 0);
    }
    CHECK(text(ChartDocument{doc.id, c.scene, {}, {}, {}}) == text(doc));
    CHECK(c.toSvg() == composite(doc, renderLegend(s, doc), s).toSvg());

    s.anchorX = doc.scene.width - 10;
    auto wide = composite(doc, renderLegend(s, doc), s);
    CHECK(wide.combinedBox.xMax == doctest::Approx(doc.scene.width - 10 + l.width));
    CHECK(wide.combinedBox.yMax == doc.scene.height);
    CHECK(wide.toSvg().find("viewBox") != std::string::npos);
}

TEST_CASE("composite: reserved prefix avoids clashes")
{
    const char* svgText = R"(<svg xmlns="http://www.w3.org/2000/svg" width="100" height="80">)"
                          R"(<rect id="lg-legend" x="0" y="0" width="1" height="1" fill="#eeeeee"/>)"
                          R"(<circle cx="10" cy="10" r="3" fill="#4e79a7"/><circle cx="30" cy="50" r="3" fill="#f28e2b"/>)"
                          R"(<circle cx="60" cy="20" r="3" fill="#4e79a7"/><circle cx="80" cy="40" r="3" fill="#f28e2b"/>)"
                          R"(</svg>)";
    auto doc = analyzeChart(svgText);
    CHECK(legendIdPrefix(doc.scene) != "lg-legend");
    CHECK(legendIdPrefix(doc.scene).rfind("lg-legend", 0) == 0);
}

TEST_CASE("highlight a stacked-bar category")
{
    auto f = fixtures::makeChart(fixtures::ChartType::StackedBar, 0);
    auto doc = analyzeChart(f.svg);
    const auto channel = primaryChannelId(doc);
    HighlightState state;
    auto lit = highlight(doc, channel, Selection::item(2), state);
    std::size_t kept = 0;
    for (const auto& id : f.symbols.front()) {
        const auto& el = lit.scene.elements[std::size_t(lit.scene.indexOf(id))];
        const bool isTwo = el.fill && el.fill->sameRgb(f.categories[2]);
        CHECK(el.opacity == (isTwo ? 1.0 : kDimOpacity));
        kept += isTwo;
    }
    CHECK(kept > 0);
    CHECK(text(unhighlight(lit, state)) == text(doc));
    CHECK(codeOf([&] { highlight(doc, channel, Selection::item(4), state); }) == ErrorCode::UnknownSelection);
    CHECK(codeOf([&] { highlight(doc, "nope", Selection::item(0), state); }) == ErrorCode::UnknownSelection);
}

TEST_CASE("highlight round trip is byte-identical on all fixtures")
{
    for (const auto& f : fixtures::labeledCharts()) {
        CAPTURE(f.name);
        auto doc = analyzeChart(f.svg);
        const auto id = primaryChannelId(doc);
        const auto& ch = *doc.extraction.channel(id);
        HighlightState state;
        auto sel = ch.kind == extract::ChannelKind::Color && ch.discrete() ? Selection::item(0) : Selection::range(0.2, 0.6);
        auto lit = highlight(doc, id, sel, state);
        CHECK(text(lit) != text(doc));
        CHECK(text(unhighlight(lit, state)) == text(doc));
    }
}

TEST_CASE("brushing a continuous range")
{
    auto doc = chart(fixtures::ChartType::Choropleth);
    const auto id = primaryChannelId(doc);
    const auto& ch = *doc.extraction.channel(id);
    HighlightState state;
    auto all = highlight(doc, id, Selection::range(0, 1), state);
    CHECK(state.saved.empty());
    CHECK(text(all) == text(doc));

    auto lit = highlight(doc, id, Selection::range(0.25, 0.5), state);
    for (std::size_t i = 0; i < ch.elementIds.size(); ++i) {
        const double t = ch.elementValues[i];
        const auto& el = lit.scene.elements[std::size_t(lit.scene.indexOf(ch.elementIds[i]))];
        CHECK(el.opacity == (t >= 0.25 && t <= 0.5 ? 1.0 : kDimOpacity));
    }
    CHECK(codeOf([&] { highlight(doc, id, Selection::range(0.6, 0.2), state); }) == ErrorCode::UnknownSelection);
}

TEST_CASE("retrieve")
{
    auto f = fixtures::makeChart(fixtures::ChartType::StackedBar, 0);
    auto doc = analyzeChart(f.svg);
    for (const auto& id : f.symbols.front()) {
        const auto& el = doc.scene.elements[std::size_t(doc.scene.indexOf(id))];
        if (el.fill && el.fill->sameRgb(f.categories[2])) {
            auto r = retrieve(doc, id);
            CHECK_FALSE(r.continuous);
            CHECK(r.item == 2);
            break;
        }
    }
    CHECK(codeOf([&] { retrieve(doc, "x-axis"); }) == ErrorCode::NotAMark);
    CHECK(codeOf([&] { retrieve(doc, "background"); }) == ErrorCode::NotAMark);

    auto choro = chart(fixtures::ChartType::Choropleth);
    const auto& ch = *choro.extraction.channel(primaryChannelId(choro));
    const auto mid = ch.ramp[ch.ramp.size() / 2];
    std::size_t best = 0;
    double bestDist = 1e9;
    for (std::size_t i = 0; i < ch.elementIds.size(); ++i) {
        const auto& el = choro.scene.elements[std::size_t(choro.scene.indexOf(ch.elementIds[i]))];
        double d = extract::deltaE(extract::rgbToLab(*el.fill), mid);
        if (d < bestDist)
            bestDist = d, best = i;
    }
    auto r = retrieve(choro, ch.elementIds[best]);
    CHECK(r.continuous);
    CHECK(std::abs(r.position - 0.5) <= 0.05);
}

TEST_CASE("retarget a categorical palette")
{
    auto f = fixtures::makeChart(fixtures::ChartType::StackedBar, 0);
    auto doc = analyzeChart(f.svg);
    const auto id = primaryChannelId(doc);
    const auto& ch = *doc.extraction.channel(id);
    Replacement b{{kAltPalette, kAltPalette + 4}};
    auto recolored = retarget(doc, id, b);
    for (std::size_t i = 0; i < ch.elementIds.size(); ++i) {
        const auto& el = recolored.scene.elements[std::size_t(recolored.scene.indexOf(ch.elementIds[i]))];
        CHECK(el.fill->sameRgb(kAltPalette[std::size_t(ch.elementValues[i])]));
    }
    CHECK(recolored.extraction.channel(id)->colors.front().sameRgb(kAltPalette[0]));

    Replacement a{ch.colors};
    CHECK(text(retarget(recolored, id, a)) == text(doc));
    CHECK(text(retarget(doc, id, a)) == text(doc));
    CHECK(codeOf([&] { retarget(doc, id, Replacement{{kAltPalette, kAltPalette + 3}}); }) ==
          ErrorCode::CardinalityMismatch);

    // the legend follows the new palette
    auto l = renderLegend(specFor(SymbolLayout::DiscreteUniform, TextLayout::AccompanyingSide, Direction::Vertical), recolored);
    CHECK(l.swatchColors[3].sameRgb(kAltPalette[3]));
}

TEST_CASE("retarget fill to stroke")
{
    auto f = fixtures::makeChart(fixtures::ChartType::Bar, 0);
    auto doc = analyzeChart(f.svg);
    const auto id = primaryChannelId(doc);
    const auto& ch = *doc.extraction.channel(id);
    auto lines = retarget(doc, id, Replacement{ch.colors, RetargetStyle::StrokeFromFill});
    for (const auto& mid : ch.elementIds) {
        const auto& before = doc.scene.elements[std::size_t(doc.scene.indexOf(mid))];
        const auto& after = lines.scene.elements[std::size_t(lines.scene.indexOf(mid))];
        CHECK_FALSE(after.fill.has_value());
        REQUIRE(after.stroke.has_value());
        CHECK(after.stroke->sameRgb(*before.fill));
    }
    CHECK(text(retarget(lines, id, Replacement{ch.colors})) == text(doc));
}

TEST_CASE("retarget a continuous ramp and back")
{
    auto doc = chart(fixtures::ChartType::Choropleth);
    const auto id = primaryChannelId(doc);
    Replacement purple{{Color{0xf2, 0xe6, 0xf7, 1}, Color{0x54, 0x27, 0x88, 1}}};
    auto p = retarget(doc, id, purple);
    CHECK(text(p) != text(doc));
    const auto& ch = *doc.extraction.channel(id);
    CHECK(text(retarget(p, id, Replacement{ch.colors})) == text(doc));
    CHECK(codeOf([&] { retarget(doc, id, Replacement{{Color{0, 0, 0, 1}}}); }) == ErrorCode::CardinalityMismatch);
}
