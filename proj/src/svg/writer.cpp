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

#include "svg/writer.hpp"

#include "svg/numbers.hpp"
#include "svg/path.hpp"

#include <map>

namespace legendgen::svg {

std::string escapeXml(const std::string& text)
{
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

namespace {

void attr(std::string& out, const char* name, double v)
{
    out += ' ';
    out += name;
    out += "=\"";
    out += formatNumber(v);
    out += '"';
}

void attr(std::string& out, const char* name, const std::string& v)
{
    out += ' ';
    out += name;
    out += "=\"";
    out += escapeXml(v);
    out += '"';
}

void writeShape(std::string& out, const VisualElement& el, bool withId)
{
    std::string body;
    const char* tag = "g";
    std::visit(
        [&](const auto& g) {
            using G = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<G, RectGeometry>) {
                tag = "rect";
                attr(body, "x", g.x);
                attr(body, "y", g.y);
                attr(body, "width", g.width);
                attr(body, "height", g.height);
                if (g.rx > 0)
                    attr(body, "rx", g.rx);
                if (g.ry > 0)
                    attr(body, "ry", g.ry);
            } else if constexpr (std::is_same_v<G, CircleGeometry>) {
                tag = "circle";
                attr(body, "cx", g.cx);
                attr(body, "cy", g.cy);
                attr(body, "r", g.r);
            } else if constexpr (std::is_same_v<G, EllipseGeometry>) {
                tag = "ellipse";
                attr(body, "cx", g.cx);
                attr(body, "cy", g.cy);
                attr(body, "rx", g.rx);
                attr(body, "ry", g.ry);
            } else if constexpr (std::is_same_v<G, LineGeometry>) {
                tag = "line";
                attr(body, "x1", g.x1);
                attr(body, "y1", g.y1);
                attr(body, "x2", g.x2);
                attr(body, "y2", g.y2);
            } else if constexpr (std::is_same_v<G, PathGeometry>) {
                tag = "path";
                attr(body, "d", formatPathData(g));
            } else if constexpr (std::is_same_v<G, TextGeometry>) {
                tag = "text";
                attr(body, "x", g.x);
                attr(body, "y", g.y);
                attr(body, "font-size", g.fontSize);
                if (g.anchor != TextAnchor::Start)
                    attr(body, "text-anchor", std::string(g.anchor == TextAnchor::Middle ? "middle" : "end"));
            } else if constexpr (std::is_same_v<G, GroupRefGeometry>) {
                tag = "use";
                attr(body, "href", g.href);
            }
        },
        el.geometry);

    out += '<';
    out += tag;
    if (withId)
        attr(out, "id", el.id);
    out += body;
    if (el.kind != ElementKind::GroupRef) {
        if (el.fillGradient)
            attr(out, "fill", "url(#" + el.fillGradient->id + ")");
        else
            attr(out, "fill", el.fill ? el.fill->hex() : std::string("none"));
        if (el.fill && el.fill->alpha < 1.0)
            attr(out, "fill-opacity", el.fill->alpha);
        if (el.stroke) {
            attr(out, "stroke", el.stroke->hex());
            if (el.stroke->alpha < 1.0)
                attr(out, "stroke-opacity", el.stroke->alpha);
            attr(out, "stroke-width", el.strokeWidth);
        }
        if (el.fillRule == FillRule::EvenOdd)
            attr(out, "fill-rule", std::string("evenodd"));
    }
    if (el.opacity != 1.0)
        attr(out, "opacity", el.opacity);
    if (!(el.transform == Affine{})) {
        const auto& t = el.transform;
        attr(out, "transform",
             "matrix(" + formatNumber(t.a) + ' ' + formatNumber(t.b) + ' ' + formatNumber(t.c) + ' ' +
                 formatNumber(t.d) + ' ' + formatNumber(t.e) + ' ' + formatNumber(t.f) + ')');
    }
    if (el.kind == ElementKind::Text) {
        out += '>';
        out += escapeXml(el.text.value_or(""));
        out += "</text>";
    } else {
        out += "/>";
    }
}

void collectDefs(const VisualElement& el, std::map<std::string, const LinearGradient*>& grads,
                 std::map<std::string, const VisualElement*>& refs)
{
    if (el.fillGradient)
        grads.emplace(el.fillGradient->id, &*el.fillGradient);
    if (el.reference) {
        const auto& href = std::get<GroupRefGeometry>(el.geometry).href;
        refs.emplace(href.substr(1), el.reference.get());
        collectDefs(*el.reference, grads, refs);
    }
}

} // namespace

std::string writeElement(const VisualElement& el)
{
    std::string out;
    writeShape(out, el, true);
    return out;
}

std::string writeSvg(const SceneGraph& scene, std::span<const VisualElement> overlay,
                     const std::string& overlayGroupId, const std::optional<Viewport>& viewport)
{
    std::map<std::string, const LinearGradient*> grads;
    std::map<std::string, const VisualElement*> refs;
    for (const auto& el : scene.elements)
        collectDefs(el, grads, refs);
    for (const auto& el : overlay)
        collectDefs(el, grads, refs);

    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\"";
    if (viewport) {
        attr(out, "width", viewport->width);
        attr(out, "height", viewport->height);
        attr(out, "viewBox",
             formatNumber(viewport->x) + ' ' + formatNumber(viewport->y) + ' ' + formatNumber(viewport->width) + ' ' +
                 formatNumber(viewport->height));
    } else {
        attr(out, "width", scene.width);
        attr(out, "height", scene.height);
    }
    out += ">\n";
    if (!grads.empty() || !refs.empty()) {
        out += "<defs>\n";
        for (const auto& [id, g] : grads) {
            out += "<linearGradient";
            attr(out, "id", id);
            attr(out, "x1", g->x1);
            attr(out, "y1", g->y1);
            attr(out, "x2", g->x2);
            attr(out, "y2", g->y2);
            out += ">";
            for (const auto& s : g->stops) {
                out += "<stop";
                attr(out, "offset", s.offset);
                attr(out, "stop-color", s.color.hex());
                if (s.color.alpha < 1.0)
                    attr(out, "stop-opacity", s.color.alpha);
                out += "/>";
            }
            out += "</linearGradient>\n";
        }
        for (const auto& [id, el] : refs) {
            VisualElement copy = *el;
            copy.id = id;
            writeShape(out, copy, true);
            out += '\n';
        }
        out += "</defs>\n";
    }
    for (const auto& el : scene.elements) {
        writeShape(out, el, true);
        out += '\n';
    }
    if (!overlay.empty()) {
        out += "<g";
        attr(out, "id", overlayGroupId);
        out += ">\n";
        for (const auto& el : overlay) {
            writeShape(out, el, true);
            out += '\n';
        }
        out += "</g>\n";
    }
    out += "</svg>\n";
    return out;
}

} // namespace legendgen::svg
