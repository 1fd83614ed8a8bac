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
#include "svg/geometry.hpp"
#include "svg/parser.hpp"
#include "svg/path.hpp"
#include "svg/raster.hpp"
#include "svg/writer.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <regex>

using namespace legendgen;
using namespace legendgen::svg;

namespace {

// Independent tag counter over raw text, used as the oracle for parse counts.
int countTags(const std::string& text, const std::string& tag)
{
    std::regex re("<" + tag + "[\\s/>]");
    return int(std::distance(std::sregex_iterator(text.begin(), text.end(), re), std::sregex_iterator()));
}

std::string twelveBarChart()
{
    std::string s = R"~(<svg xmlns="http://www.w3.org/2000/svg" width="400" height="300">)~";
    s += R"~(<g transform="translate(40,20)">)~";
    for (int i = 0; i < 12; ++i) {
        double h = 20 + 15 * ((i * 7) % 12);
        s += "<rect x=\"" + std::to_string(i * 28) + "\" y=\"" + std::to_string(250 - h) +
             "\" width=\"24\" height=\"" + std::to_string(h) + "\" fill=\"steelblue\"/>";
    }
    s += R"~(<line x1="0" y1="250" x2="340" y2="250" stroke="black"/>)~";
    s += R"~(<line x1="0" y1="0" x2="0" y2="250" stroke="black"/>)~";
    for (int i = 0; i < 12; ++i) {
        s += "<line x1=\"" + std::to_string(i * 28 + 12) + "\" y1=\"250\" x2=\"" + std::to_string(i * 28 + 12) +
             "\" y2=\"256\" stroke=\"black\"/>";
        s += "<text x=\"" + std::to_string(i * 28 + 12) + "\" y=\"268\" font-size=\"10\">M" + std::to_string(i) +
             "</text>";
    }
    s += "</g></svg>";
    return s;
}

double hausdorffToUnitCircle(const Polygon& poly)
{
    // Max distance from the polygon boundary to the circle: vertex radii and
    // chord midpoints (the chord's farthest point from the arc).
    double worst = 0;
    std::size_t n = poly.vertices.size();
    for (std::size_t i = 0; i < n; ++i) {
        Point p = poly.vertices[i];
        Point q = poly.vertices[(i + 1) % n];
        worst = std::max(worst, std::abs(p.norm() - 1.0));
        worst = std::max(worst, std::abs(((p + q) * 0.5).norm() - 1.0));
    }
    return worst;
}

const char* kUnitCircle = "M1 0 A1 1 0 0 1 0 1 A1 1 0 0 1 -1 0 A1 1 0 0 1 0 -1 A1 1 0 0 1 1 0 Z";

VisualElement pathElement(const std::string& d)
{
    VisualElement el;
    el.id = "p";
    el.kind = ElementKind::Path;
    el.geometry = *parsePathData(d);
    el.fill = kBlack;
    return el;
}

} // namespace

TEST_SUITE("svg.parse")
{
    TEST_CASE("single rect echoes attributes")
    {
        auto scene = parseSvg(R"~(<svg width="10" height="10"><rect x="1" y="1" width="2" height="3"/></svg>)~");
        CHECK(scene.width == 10);
        CHECK(scene.height == 10);
        REQUIRE(scene.elements.size() == 1);
        const auto& el = scene.elements[0];
        CHECK(el.kind == ElementKind::Rect);
        auto g = std::get<RectGeometry>(el.geometry);
        CHECK(g.x == 1);
        CHECK(g.y == 1);
        CHECK(g.width == 2);
        CHECK(g.height == 3);
        CHECK(el.fill == kBlack);
    }

    TEST_CASE("group transforms compose into elements")
    {
        auto scene = parseSvg(
            R"~(<svg width="20" height="20"><g transform="translate(5,0)"><rect x="1" y="0" width="1" height="1"/></g></svg>)~");
        REQUIRE(scene.elements.size() == 1);
        Point p = scene.elements[0].transform.apply({1, 0});
        CHECK(p.x == doctest::Approx(6));
        CHECK(p.y == doctest::Approx(0));
    }

    TEST_CASE("bar chart fixture counts match an independent tag walk")
    {
        std::string text = twelveBarChart();
        auto scene = parseSvg(text);
        int rects = 0, lines = 0, texts = 0;
        for (const auto& el : scene.elements) {
            rects += el.kind == ElementKind::Rect;
            lines += el.kind == ElementKind::Line;
            texts += el.kind == ElementKind::Text;
        }
        CHECK(rects == countTags(text, "rect"));
        CHECK(lines == countTags(text, "line"));
        CHECK(texts == countTags(text, "text"));
        CHECK(rects == 12);
        // paint order: all rects precede the axis lines
        CHECK(scene.elements[11].kind == ElementKind::Rect);
        CHECK(scene.elements[12].kind == ElementKind::Line);
        CHECK(scene.elements[14].kind == ElementKind::Line);
        CHECK(scene.elements[15].kind == ElementKind::Text);
        CHECK(scene.elements[15].text == "M0");
    }

    TEST_CASE("malformed XML is rejected")
    {
        CHECK_THROWS_AS(parseSvg("<svg width='10' height='10'><rect></svg>"), Error);
        try {
            parseSvg("<notsvg/>");
            FAIL("expected throw");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::MalformedDocument);
        }
    }

    TEST_CASE("unsupported content is skipped with a warning")
    {
        auto scene = parseSvg(R"~(<svg width="10" height="10"><image href="x.png" width="5" height="5"/>)~"
                              R"~(<rect width="1" height="1" fill="notacolor"/><circle r="2" fill="red"/></svg>)~");
        REQUIRE(scene.elements.size() == 1);
        CHECK(scene.elements[0].kind == ElementKind::Circle);
        CHECK(scene.warnings.size() >= 2);
    }

    TEST_CASE("colors, style attribute and inheritance")
    {
        auto scene = parseSvg(R"~(<svg width="10" height="10"><g fill="#0f0" stroke="rgb(0,0,255)" opacity="0.5">)~"
                              R"~(<rect width="1" height="1" style="fill: rebeccapurple; stroke-width: 3"/>)~"
                              R"~(<circle r="1" fill-opacity="0.25"/></g></svg>)~");
        REQUIRE(scene.elements.size() == 2);
        CHECK(scene.elements[0].fill->hex() == "#663399");
        CHECK(scene.elements[0].strokeWidth == 3);
        CHECK(scene.elements[0].opacity == 0.5);
        CHECK(scene.elements[1].fill->hex() == "#00ff00");
        CHECK(scene.elements[1].fill->alpha == 0.25);
        CHECK(scene.elements[1].stroke->hex() == "#0000ff");
    }

    TEST_CASE("gradient fills resolve to their mean color")
    {
        auto scene = parseSvg(R"~(<svg width="10" height="10"><defs><linearGradient id="g">)~"
                              R"~(<stop offset="0" stop-color="#000000"/><stop offset="1" stop-color="#ffffff"/>)~"
                              R"~(</linearGradient></defs><rect width="4" height="4" fill="url(#g)"/></svg>)~");
        REQUIRE(scene.elements.size() == 1);
        CHECK(scene.elements[0].fill->r == 128);
        CHECK(scene.elements[0].fillGradient.has_value());
    }

    TEST_CASE("viewBox maps into width and height")
    {
        auto scene = parseSvg(R"~(<svg viewBox="0 0 50 50" width="100" height="100"><rect width="10" height="10"/></svg>)~");
        Point p = scene.elements[0].transform.apply({10, 10});
        CHECK(p.x == doctest::Approx(20));
        CHECK(p.y == doctest::Approx(20));
    }

    TEST_CASE("use elements reference their target")
    {
        auto scene = parseSvg(R"~(<svg width="40" height="40"><defs><path id="tri" d="M0 0 L4 0 L2 3 Z"/></defs>)~"
                              R"~(<use href="#tri" x="10" y="10" fill="red"/><use href="#tri" x="20" y="10"/></svg>)~");
        REQUIRE(scene.elements.size() == 2);
        CHECK(scene.elements[0].kind == ElementKind::GroupRef);
        Box b = boundingBox(scene.elements[0]);
        CHECK(b.xMin == doctest::Approx(10));
        CHECK(b.xMax == doctest::Approx(14));
    }

    TEST_CASE("path data commands, absolute and relative")
    {
        auto p = parsePathData("m10 10 h5 v5 H10 z M0 0 c1 1 2 1 3 0 s1 -1 2 0 q1 1 2 0 t2 0 a1 1 0 0 1 2 0 L 1e1,2");
        REQUIRE(p.has_value());
        using Op = PathSegment::Op;
        CHECK(p->segments[0].op == Op::Move);
        CHECK(p->segments[1].end() == Point{15, 10});
        CHECK(p->segments[2].end() == Point{15, 15});
        CHECK(p->segments[3].end() == Point{10, 15});
        CHECK(p->segments[4].op == Op::Close);
        CHECK(p->segments[6].op == Op::Cubic);
        CHECK(p->segments[6].end() == Point{3, 0});
        // smooth cubic reflects the previous control point (2,1) around (3,0)
        CHECK(p->segments[7].v[0] == doctest::Approx(4));
        CHECK(p->segments[7].v[1] == doctest::Approx(-1));
        CHECK(p->segments[9].op == Op::Quad);
        CHECK(p->segments[9].v[0] == doctest::Approx(8)); // reflected control
        CHECK(p->segments[10].op == Op::Arc);
        CHECK(p->segments[10].end() == Point{11, 0});
        CHECK(p->segments[11].end() == Point{10, 2});
        CHECK_FALSE(parsePathData("L1 1").has_value());
        CHECK_FALSE(parsePathData("M1").has_value());
    }

    TEST_CASE("numeric attributes round-trip through the writer within 1e-6")
    {
        std::mt19937 rng(7);
        std::uniform_real_distribution<double> u(-500, 500);
        for (int trial = 0; trial < 20; ++trial) {
            double x = u(rng), y = u(rng), w = std::abs(u(rng)) + 1, h = std::abs(u(rng)) + 1;
            double cx = u(rng), cy = u(rng), r = std::abs(u(rng)) + 0.5;
            std::string d = "M" + std::to_string(u(rng)) + " " + std::to_string(u(rng)) + " C" +
                            std::to_string(u(rng)) + " " + std::to_string(u(rng)) + " " + std::to_string(u(rng)) +
                            " " + std::to_string(u(rng)) + " " + std::to_string(u(rng)) + " " +
                            std::to_string(u(rng)) + " Z";
            SceneGraph scene;
            scene.width = 100;
            scene.height = 100;
            VisualElement rect;
            rect.id = "r";
            rect.geometry = RectGeometry{x, y, w, h, 0, 0};
            rect.fill = kBlack;
            rect.transform = Affine::rotateDegrees(u(rng)) * Affine::translate(u(rng), u(rng));
            VisualElement circle;
            circle.id = "c";
            circle.kind = ElementKind::Circle;
            circle.geometry = CircleGeometry{cx, cy, r};
            circle.fill = Color{10, 20, 30, 1.0};
            VisualElement path = pathElement(d);
            scene.elements = {rect, circle, path};

            auto back = parseSvg(writeSvg(scene));
            REQUIRE(back.elements.size() == 3);
            auto r2 = std::get<RectGeometry>(back.elements[0].geometry);
            CHECK(std::abs(r2.x - x) < 1e-6);
            CHECK(std::abs(r2.height - h) < 1e-6);
            CHECK(std::abs(back.elements[0].transform.e - rect.transform.e) < 1e-6);
            auto c2 = std::get<CircleGeometry>(back.elements[1].geometry);
            CHECK(std::abs(c2.r - r) < 1e-6);
            auto p2 = std::get<PathGeometry>(back.elements[2].geometry);
            auto p1 = std::get<PathGeometry>(path.geometry);
            REQUIRE(p2.segments.size() == p1.segments.size());
            for (std::size_t i = 0; i < p1.segments.size(); ++i)
                for (int k = 0; k < 7; ++k)
                    CHECK(std::abs(p2.segments[i].v[k] - p1.segments[i].v[k]) < 1e-6);
        }
    }
}

TEST_SUITE("svg.flatten")
{
    TEST_CASE("straight path keeps its vertices")
    {
        auto poly = flattenPath(pathElement("M0 0 L1 0 L1 1 Z"));
        CHECK(poly.closed);
        REQUIRE(poly.vertices.size() == 3);
        CHECK(poly.vertices[0] == Point{0, 0});
        CHECK(poly.vertices[1] == Point{1, 0});
        CHECK(poly.vertices[2] == Point{1, 1});
    }

    TEST_CASE("coarsest sampling of a quadratic keeps only its endpoints")
    {
        auto poly = flattenPath(pathElement("M0 0 Q1 2 2 0"), 2);
        REQUIRE(poly.vertices.size() == 2);
        CHECK(poly.vertices[0] == Point{0, 0});
        CHECK(poly.vertices[1] == Point{2, 0});
    }

    TEST_CASE("four-arc unit circle at 8 samples per arc")
    {
        auto poly = flattenPath(pathElement(kUnitCircle), 8);
        // 8 points per arc including both endpoints; the 4 shared arc
        // endpoints are merged.
        CHECK(poly.vertices.size() == 28);
        for (const auto& p : poly.vertices)
            CHECK(std::abs(p.norm() - 1.0) <= 0.02);
    }

    TEST_CASE("refinement never increases the Hausdorff distance on circles")
    {
        double prev = 1e9;
        for (int s = 2; s <= 40; ++s) {
            double h = hausdorffToUnitCircle(flattenPath(pathElement(kUnitCircle), s));
            CHECK(h <= prev + 1e-12);
            prev = h;
        }
    }

    TEST_CASE("transform is applied and degenerate paths throw")
    {
        auto el = pathElement("M0 0 L1 0 L1 1 Z");
        el.transform = Affine::translate(10, 0);
        auto poly = flattenPath(el);
        CHECK(poly.vertices[0] == Point{10, 0});
        try {
            flattenPath(pathElement("M1 1 L1 1 L1 1"));
            FAIL("expected DegeneratePath");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::DegeneratePath);
        }
    }
}

TEST_SUITE("svg.raster")
{
    TEST_CASE("empty scene is all white")
    {
        SceneGraph scene{10, 10, {}, {}};
        auto buf = rasterize(scene, 1.0);
        CHECK(buf.width == 10);
        CHECK(buf.height == 10);
        for (int y = 0; y < 10; ++y)
            for (int x = 0; x < 10; ++x)
                CHECK(buf.at(x, y) == kWhite);
    }

    TEST_CASE("black rect over the left half")
    {
        auto scene = parseSvg(R"~(<svg width="10" height="10"><rect x="0" y="0" width="5" height="10"/></svg>)~");
        auto buf = rasterize(scene, 1.0);
        int black = 0, white = 0;
        for (int y = 0; y < 10; ++y)
            for (int x = 0; x < 10; ++x) {
                black += buf.at(x, y) == kBlack;
                white += buf.at(x, y) == kWhite;
            }
        CHECK(black == 50);
        CHECK(white == 50);
    }

    TEST_CASE("circle pixel count tracks its analytic area")
    {
        auto scene = parseSvg(R"~(<svg width="100" height="100"><circle cx="50" cy="50" r="20" fill="red"/></svg>)~");
        auto buf = rasterize(scene, 1.0);
        int red = 0;
        for (int y = 0; y < 100; ++y)
            for (int x = 0; x < 100; ++x)
                red += buf.at(x, y) == Color{255, 0, 0, 1.0};
        double area = std::numbers::pi * 400;
        CHECK(std::abs(red - area) <= 0.05 * area);
    }

    TEST_CASE("path fill honors the winding rule")
    {
        // Outer square and inner square, same orientation.
        const char* d = "M0 0 L20 0 L20 20 L0 20 Z M5 5 L15 5 L15 15 L5 15 Z";
        auto nonzero = parseSvg(std::string(R"~(<svg width="20" height="20"><path d=")~") + d + R"~("/></svg>)~");
        auto evenodd =
            parseSvg(std::string(R"~(<svg width="20" height="20"><path fill-rule="evenodd" d=")~") + d + R"~("/></svg>)~");
        auto a = rasterize(nonzero, 1.0);
        auto b = rasterize(evenodd, 1.0);
        CHECK(a.at(10, 10) == kBlack);
        CHECK(b.at(10, 10) == kWhite);
        CHECK(b.at(2, 2) == kBlack);
    }

    TEST_CASE("text renders as a 60 percent box")
    {
        auto scene = parseSvg(R"~(<svg width="40" height="20"><text x="0" y="15" font-size="10">ab</text></svg>)~");
        auto buf = rasterize(scene, 1.0);
        // box spans x in [0, 12), y in [7, 17)
        CHECK(buf.at(5, 10).r == 102);
        CHECK(buf.at(13, 10) == kWhite);
    }

    TEST_CASE("rasterize is deterministic and rejects tiny canvases")
    {
        auto scene = parseSvg(twelveBarChart());
        CHECK(rasterize(scene, 0.5) == rasterize(scene, 0.5));
        try {
            rasterize(scene, 0.001);
            FAIL("expected ZeroArea");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::ZeroArea);
        }
    }

    TEST_CASE("metric scale caps the longest side")
    {
        SceneGraph big{1600, 400, {}, {}};
        CHECK(metricScale(big) == doctest::Approx(0.5));
        SceneGraph small{300, 200, {}, {}};
        CHECK(metricScale(small) == 1.0);
    }
}

TEST_SUITE("svg.bbox")
{
    TEST_CASE("single rect")
    {
        auto scene = parseSvg(R"~(<svg width="10" height="10"><rect x="1" y="1" width="2" height="3"/></svg>)~");
        Box b = boundingBox(scene.elements);
        CHECK(b == Box{1, 1, 3, 4});
    }

    TEST_CASE("union of disjoint rects")
    {
        auto scene = parseSvg(R"~(<svg width="10" height="10"><rect x="1" y="1" width="2" height="3"/>)~"
                              R"~(<rect x="6" y="5" width="1" height="1"/></svg>)~");
        CHECK(boundingBox(scene.elements) == Box{1, 1, 7, 6});
    }

    TEST_CASE("rotated unit square spans sqrt 2")
    {
        auto scene = parseSvg(
            R"~(<svg width="10" height="10"><rect x="0" y="0" width="1" height="1" transform="rotate(45 0.5 0.5)"/></svg>)~");
        Box b = boundingBox(scene.elements);
        CHECK(std::abs(b.width() - std::sqrt(2.0)) <= 0.02);
        CHECK(std::abs(b.height() - std::sqrt(2.0)) <= 0.02);
    }

    TEST_CASE("stroke expands the box and empty selections throw")
    {
        auto scene = parseSvg(
            R"~(<svg width="10" height="10"><rect x="1" y="1" width="2" height="2" stroke="black" stroke-width="2"/></svg>)~");
        CHECK(boundingBox(scene.elements) == Box{0, 0, 4, 4});
        std::vector<VisualElement> none;
        CHECK_THROWS_AS(boundingBox(none), Error);
    }

    TEST_CASE("union box contains both parts")
    {
        std::mt19937 rng(11);
        std::uniform_real_distribution<double> u(0, 100);
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<VisualElement> a, b;
            for (int i = 0; i < 4; ++i) {
                VisualElement el;
                el.id = std::to_string(i);
                el.geometry = RectGeometry{u(rng), u(rng), u(rng) + 1, u(rng) + 1, 0, 0};
                el.fill = kBlack;
                el.transform = Affine::rotateDegrees(u(rng) * 3.6);
                (i % 2 ? a : b).push_back(el);
            }
            std::vector<VisualElement> all = a;
            all.insert(all.end(), b.begin(), b.end());
            Box ab = boundingBox(all);
            CHECK(ab.contains(boundingBox(a), 1e-9));
            CHECK(ab.contains(boundingBox(b), 1e-9));
        }
    }
}
