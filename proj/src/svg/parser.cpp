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

#include "svg/parser.hpp"

#include "error.hpp"
#include "svg/numbers.hpp"
#include "svg/path.hpp"

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace legendgen::svg {

namespace {

using boost::property_tree::ptree;

std::string localName(const std::string& tag)
{
    auto colon = tag.find(':');
    return colon == std::string::npos ? tag : tag.substr(colon + 1);
}

std::string trimmed(std::string s)
{
    auto notSpace = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), notSpace));
    s.erase(std::find_if(s.rbegin(), s.rend(), notSpace).base(), s.end());
    return s;
}

// Attributes of one element, with `style="a:b;c:d"` declarations merged in
// (style wins over presentation attributes).
std::map<std::string, std::string> attributesOf(const ptree& node)
{
    std::map<std::string, std::string> attrs;
    if (auto a = node.get_child_optional("<xmlattr>"))
        for (const auto& [k, v] : *a)
            attrs[localName(k)] = v.data();
    if (auto it = attrs.find("style"); it != attrs.end()) {
        std::string style = it->second;
        std::size_t start = 0;
        while (start < style.size()) {
            std::size_t end = style.find(';', start);
            if (end == std::string::npos)
                end = style.size();
            std::string decl = style.substr(start, end - start);
            auto colon = decl.find(':');
            if (colon != std::string::npos)
                attrs[trimmed(decl.substr(0, colon))] = trimmed(decl.substr(colon + 1));
            start = end + 1;
        }
    }
    return attrs;
}

struct Paint {
    enum class Kind { Inherit, None, Solid, Gradient };
    Kind kind = Kind::Inherit;
    Color color;
    std::string gradientId;
};

// Inherited presentation state.
struct Style {
    Paint fill{Paint::Kind::Solid, kBlack, {}};
    Paint stroke{Paint::Kind::None, {}, {}};
    double fillOpacity = 1.0;
    double strokeOpacity = 1.0;
    double strokeWidth = 1.0;
    double opacity = 1.0;
    FillRule fillRule = FillRule::NonZero;
    double fontSize = 16.0;
    TextAnchor textAnchor = TextAnchor::Start;
    Affine transform;
};

class Parser {
public:
    SceneGraph run(std::string_view text);

private:
    void collectIds(const ptree& node);
    void collectGradients(const ptree& node);
    void walk(const ptree& node, const std::string& tag, const Style& parent);
    bool applyStyle(const std::map<std::string, std::string>& attrs, Style& style, const std::string& where);
    std::optional<VisualElement> buildShape(const ptree& node, const std::string& tag, const Style& style,
                                            const std::map<std::string, std::string>& attrs, int depth);
    void finishPaint(VisualElement& el, const Style& style);
    std::string uniqueId(const std::string& wanted);
    void warn(const std::string& msg) { scene_.warnings.push_back(msg); }

    SceneGraph scene_;
    std::map<std::string, const ptree*> idNodes_;
    std::map<std::string, std::string> idTags_;
    std::map<std::string, LinearGradient> gradients_;
    std::set<std::string> usedIds_;
    std::size_t autoId_ = 0;
};

double attrNumber(const std::map<std::string, std::string>& attrs, const std::string& key, double dflt = 0)
{
    auto it = attrs.find(key);
    if (it == attrs.end())
        return dflt;
    auto v = parseLength(it->second);
    return v ? *v : dflt;
}

std::optional<double> parseOffset(const std::string& s)
{
    std::string t = trimmed(s);
    bool pct = !t.empty() && t.back() == '%';
    if (pct)
        t.pop_back();
    std::size_t pos = 0;
    auto v = readNumber(t, pos);
    if (!v)
        return std::nullopt;
    return std::clamp(pct ? *v / 100.0 : *v, 0.0, 1.0);
}

SceneGraph Parser::run(std::string_view text)
{
    ptree doc;
    try {
        std::istringstream in{std::string(text)};
        boost::property_tree::read_xml(in, doc);
    } catch (const boost::property_tree::xml_parser_error& e) {
        fail(ErrorCode::MalformedDocument, std::string("XML parse error: ") + e.what());
    }

    const ptree* root = nullptr;
    for (const auto& [tag, child] : doc) {
        if (localName(tag) == "svg") {
            root = &child;
            break;
        }
    }
    if (!root)
        fail(ErrorCode::MalformedDocument, "document root is not <svg>");

    auto attrs = attributesOf(*root);
    std::optional<std::vector<double>> viewBox;
    if (auto it = attrs.find("viewBox"); it != attrs.end()) {
        viewBox = parseNumberList(it->second);
        if (!viewBox || viewBox->size() != 4 || (*viewBox)[2] <= 0 || (*viewBox)[3] <= 0)
            fail(ErrorCode::MalformedDocument, "invalid viewBox");
    }
    std::optional<double> width, height;
    if (auto it = attrs.find("width"); it != attrs.end())
        width = parseLength(it->second);
    if (auto it = attrs.find("height"); it != attrs.end())
        height = parseLength(it->second);
    if (!width && viewBox)
        width = (*viewBox)[2];
    if (!height && viewBox)
        height = (*viewBox)[3];
    if (!width || !height || *width <= 0 || *height <= 0)
        fail(ErrorCode::MalformedDocument, "svg root needs a positive width/height or viewBox");
    scene_.width = *width;
    scene_.height = *height;

    Style style;
    if (viewBox) {
        // preserveAspectRatio="xMidYMid meet"
        const auto& vb = *viewBox;
        double s = std::min(*width / vb[2], *height / vb[3]);
        double tx = (*width - vb[2] * s) / 2 - vb[0] * s;
        double ty = (*height - vb[3] * s) / 2 - vb[1] * s;
        style.transform = Affine::translate(tx, ty) * Affine::scale(s, s);
    }

    collectIds(*root);
    collectGradients(*root);
    applyStyle(attrs, style, "svg");
    for (const auto& [tag, child] : *root)
        walk(child, tag, style);
    return std::move(scene_);
}

void Parser::collectIds(const ptree& node)
{
    for (const auto& [tag, child] : node) {
        if (tag == "<xmlattr>" || tag == "<xmlcomment>" || tag == "<xmltext>")
            continue;
        auto attrs = attributesOf(child);
        if (auto it = attrs.find("id"); it != attrs.end()) {
            idNodes_.emplace(it->second, &child);
            idTags_.emplace(it->second, localName(tag));
        }
        collectIds(child);
    }
}

void Parser::collectGradients(const ptree& node)
{
    for (const auto& [id, child] : idNodes_) {
        if (idTags_[id] != "linearGradient" && idTags_[id] != "radialGradient")
            continue;
        auto attrs = attributesOf(*child);
        LinearGradient g;
        g.id = id;
        if (idTags_[id] == "linearGradient") {
            auto coord = [&](const char* key, double dflt) {
                auto it = attrs.find(key);
                if (it == attrs.end())
                    return dflt;
                auto v = parseOffset(it->second);
                return v ? *v : dflt;
            };
            g.x1 = coord("x1", 0);
            g.y1 = coord("y1", 0);
            g.x2 = coord("x2", 1);
            g.y2 = coord("y2", 0);
        } else {
            warn("radialGradient '" + id + "' rendered as a linear gradient");
        }
        for (const auto& [tag, stop] : *child) {
            if (localName(tag) != "stop")
                continue;
            auto sa = attributesOf(stop);
            GradientStop gs;
            gs.offset = parseOffset(sa.count("offset") ? sa["offset"] : "0").value_or(0);
            auto c = parseColor(sa.count("stop-color") ? sa["stop-color"] : "black");
            if (!c) {
                warn("unsupported stop-color in gradient '" + id + "'");
                continue;
            }
            gs.color = *c;
            if (sa.count("stop-opacity"))
                gs.color.alpha = std::clamp(parseOffset(sa["stop-opacity"]).value_or(1.0), 0.0, 1.0);
            g.stops.push_back(gs);
        }
        if (g.stops.empty()) {
            warn("gradient '" + id + "' has no usable stops");
            continue;
        }
        gradients_.emplace(id, std::move(g));
    }
    (void)node;
}

bool Parser::applyStyle(const std::map<std::string, std::string>& attrs, Style& style, const std::string& where)
{
    auto paintOf = [&](const std::string& value, Paint& paint) {
        std::string v = trimmed(value);
        if (v == "none") {
            paint = {Paint::Kind::None, {}, {}};
        } else if (v == "inherit") {
            // keep parent value
        } else if (v.starts_with("url(")) {
            auto hash = v.find('#');
            auto close = v.find(')');
            std::string id = (hash != std::string::npos && close != std::string::npos && close > hash)
                                 ? v.substr(hash + 1, close - hash - 1)
                                 : std::string();
            if (gradients_.count(id)) {
                paint = {Paint::Kind::Gradient, gradients_[id].meanColor(), id};
            } else {
                warn("unsupported paint server '" + v + "' on " + where);
                paint = {Paint::Kind::None, {}, {}};
            }
        } else if (auto c = parseColor(v)) {
            paint = {Paint::Kind::Solid, *c, {}};
        } else {
            warn("unsupported color '" + v + "' on " + where);
            return false;
        }
        return true;
    };

    bool ok = true;
    for (const auto& [key, value] : attrs) {
        if (key == "fill")
            ok = paintOf(value, style.fill) && ok;
        else if (key == "stroke")
            ok = paintOf(value, style.stroke) && ok;
        else if (key == "fill-opacity")
            style.fillOpacity = std::clamp(parseOffset(value).value_or(1.0), 0.0, 1.0);
        else if (key == "stroke-opacity")
            style.strokeOpacity = std::clamp(parseOffset(value).value_or(1.0), 0.0, 1.0);
        else if (key == "opacity")
            style.opacity *= std::clamp(parseOffset(value).value_or(1.0), 0.0, 1.0);
        else if (key == "stroke-width") {
            auto w = parseLength(value);
            if (w && *w >= 0)
                style.strokeWidth = *w;
        } else if (key == "fill-rule")
            style.fillRule = trimmed(value) == "evenodd" ? FillRule::EvenOdd : FillRule::NonZero;
        else if (key == "font-size") {
            if (auto fs = parseLength(value); fs && *fs > 0)
                style.fontSize = *fs;
        } else if (key == "text-anchor") {
            std::string v = trimmed(value);
            style.textAnchor = v == "middle" ? TextAnchor::Middle : v == "end" ? TextAnchor::End : TextAnchor::Start;
        } else if (key == "transform") {
            auto t = parseTransform(value);
            if (!t) {
                warn("unparseable transform on " + where);
                ok = false;
            } else {
                style.transform = style.transform * *t;
            }
        } else if (key == "filter" || key == "mask" || key == "clip-path") {
            warn("unsupported attribute '" + key + "' on " + where + " ignored");
        }
    }
    return ok;
}

std::string Parser::uniqueId(const std::string& wanted)
{
    if (!wanted.empty() && !usedIds_.count(wanted)) {
        usedIds_.insert(wanted);
        return wanted;
    }
    std::string id;
    do {
        id = "el-" + std::to_string(autoId_++);
    } while (usedIds_.count(id) || idNodes_.count(id));
    usedIds_.insert(id);
    return id;
}

void Parser::finishPaint(VisualElement& el, const Style& style)
{
    el.opacity = style.opacity;
    el.strokeWidth = style.strokeWidth;
    el.fillRule = style.fillRule;
    el.transform = style.transform;
    if (style.fill.kind == Paint::Kind::Solid || style.fill.kind == Paint::Kind::Gradient) {
        Color c = style.fill.color;
        c.alpha *= style.fillOpacity;
        el.fill = c;
        if (style.fill.kind == Paint::Kind::Gradient)
            el.fillGradient = gradients_.at(style.fill.gradientId);
    }
    if (style.stroke.kind == Paint::Kind::Solid || style.stroke.kind == Paint::Kind::Gradient) {
        Color c = style.stroke.color;
        c.alpha *= style.strokeOpacity;
        el.stroke = c;
    }
}

std::optional<VisualElement> Parser::buildShape(const ptree& node, const std::string& tag, const Style& style,
                                                const std::map<std::string, std::string>& attrs, int depth)
{
    VisualElement el;
    auto num = [&](const char* key, double dflt = 0) { return attrNumber(attrs, key, dflt); };
    std::string where = "<" + tag + (attrs.count("id") ? " id=" + attrs.at("id") : std::string()) + ">";

    if (tag == "rect") {
        el.kind = ElementKind::Rect;
        RectGeometry g{num("x"), num("y"), num("width"), num("height"), num("rx"), num("ry")};
        if (g.width <= 0 || g.height <= 0)
            return std::nullopt;
        el.geometry = g;
    } else if (tag == "circle") {
        el.kind = ElementKind::Circle;
        CircleGeometry g{num("cx"), num("cy"), num("r")};
        if (g.r <= 0)
            return std::nullopt;
        el.geometry = g;
    } else if (tag == "ellipse") {
        el.kind = ElementKind::Ellipse;
        EllipseGeometry g{num("cx"), num("cy"), num("rx"), num("ry")};
        if (g.rx <= 0 || g.ry <= 0)
            return std::nullopt;
        el.geometry = g;
    } else if (tag == "line") {
        el.kind = ElementKind::Line;
        el.geometry = LineGeometry{num("x1"), num("y1"), num("x2"), num("y2")};
    } else if (tag == "path" || tag == "polygon" || tag == "polyline") {
        el.kind = ElementKind::Path;
        std::optional<PathGeometry> g;
        if (tag == "path") {
            g = parsePathData(attrs.count("d") ? attrs.at("d") : "");
        } else {
            auto pts = parseNumberList(attrs.count("points") ? attrs.at("points") : "");
            if (pts && pts->size() >= 4 && pts->size() % 2 == 0) {
                g = PathGeometry{};
                for (std::size_t i = 0; i < pts->size(); i += 2) {
                    PathSegment s;
                    s.op = i == 0 ? PathSegment::Op::Move : PathSegment::Op::Line;
                    s.v[0] = (*pts)[i];
                    s.v[1] = (*pts)[i + 1];
                    g->segments.push_back(s);
                }
                if (tag == "polygon")
                    g->segments.push_back(PathSegment{PathSegment::Op::Close, {}});
            }
        }
        if (!g) {
            warn("malformed path data on " + where + "; element skipped");
            return std::nullopt;
        }
        if (g->segments.empty())
            return std::nullopt;
        el.geometry = std::move(*g);
    } else if (tag == "text") {
        el.kind = ElementKind::Text;
        TextGeometry g{num("x"), num("y"), style.fontSize, style.textAnchor};
        std::string content = node.data();
        for (const auto& [ctag, child] : node)
            if (localName(ctag) == "tspan")
                content += child.data();
        el.text = trimmed(content);
        el.geometry = g;
    } else if (tag == "use") {
        std::string href = attrs.count("href") ? attrs.at("href") : "";
        if (!href.starts_with("#") || !idNodes_.count(href.substr(1))) {
            warn("unresolved <use> reference '" + href + "'");
            return std::nullopt;
        }
        if (depth > 8) {
            warn("<use> nesting too deep at '" + href + "'");
            return std::nullopt;
        }
        std::string targetId = href.substr(1);
        const ptree& target = *idNodes_.at(targetId);
        std::string targetTag = idTags_.at(targetId);
        auto targetAttrs = attributesOf(target);
        Style targetStyle = style;
        targetStyle.transform = Affine{};
        applyStyle(targetAttrs, targetStyle, "<" + targetTag + ">");
        auto ref = buildShape(target, targetTag, targetStyle, targetAttrs, depth + 1);
        if (!ref) {
            warn("<use> target '" + targetId + "' is not a supported single shape");
            return std::nullopt;
        }
        ref->transform = targetStyle.transform;
        el.kind = ElementKind::GroupRef;
        el.geometry = GroupRefGeometry{href};
        el.fill = ref->fill;
        el.stroke = ref->stroke;
        el.reference = std::make_shared<const VisualElement>(std::move(*ref));
        el.opacity = style.opacity;
        el.strokeWidth = style.strokeWidth;
        el.transform = style.transform * Affine::translate(num("x"), num("y"));
        el.id = attrs.count("id") ? attrs.at("id") : std::string();
        return el;
    } else {
        return std::nullopt;
    }
    finishPaint(el, style);
    el.id = attrs.count("id") ? attrs.at("id") : std::string();
    return el;
}

void Parser::walk(const ptree& node, const std::string& rawTag, const Style& parent)
{
    std::string tag = localName(rawTag);
    if (tag.starts_with("<xml"))
        return;
    static const std::set<std::string> kSkipped{"defs", "symbol", "linearGradient", "radialGradient", "title",
                                                "desc", "metadata", "style", "script", "marker"};
    static const std::set<std::string> kUnsupported{"image", "filter", "mask", "clipPath", "pattern",
                                                    "foreignObject", "switch", "animate", "video"};
    if (kSkipped.count(tag))
        return;
    auto attrs = attributesOf(node);
    std::string where = "<" + tag + (attrs.count("id") ? " id=" + attrs.at("id") : std::string()) + ">";
    if (kUnsupported.count(tag)) {
        warn("unsupported element " + where + " skipped");
        return;
    }
    if ((attrs.count("display") && trimmed(attrs["display"]) == "none") ||
        (attrs.count("visibility") && trimmed(attrs["visibility"]) == "hidden"))
        return;

    Style style = parent;
    if (!applyStyle(attrs, style, where)) {
        warn("element " + where + " skipped");
        return;
    }
    if (!style.transform.invertible()) {
        warn("element " + where + " has a singular transform; skipped");
        return;
    }

    if (tag == "g" || tag == "a" || tag == "svg") {
        for (const auto& [ctag, child] : node)
            walk(child, ctag, style);
        return;
    }

    auto el = buildShape(node, tag, style, attrs, 0);
    if (!el) {
        if (!(tag == "rect" || tag == "circle" || tag == "ellipse" || tag == "line" || tag == "path" ||
              tag == "polygon" || tag == "polyline" || tag == "text" || tag == "use"))
            warn("unsupported element " + where + " skipped");
        return;
    }
    if (!el->fill && !el->stroke) {
        warn("element " + where + " has neither fill nor stroke; skipped");
        return;
    }
    el->id = uniqueId(el->id);
    scene_.elements.push_back(std::move(*el));
}

} // namespace

SceneGraph parseSvg(std::string_view text)
{
    Parser parser;
    return parser.run(text);
}

} // namespace legendgen::svg
