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


#include "extract/symbols.hpp"

#include "error.hpp"
#include "extract/dbscan.hpp"
#include "svg/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace legendgen::extract {

using svg::ElementKind;
using svg::PathSegment;
using svg::Point;
using svg::VisualElement;

const char* stageName(MatchStage stage)
{
    switch (stage) {
    case MatchStage::Exact: return "exact";
    case MatchStage::Transformed: return "transformed";
    case MatchStage::Fuzzy: return "fuzzy";
    }
    return "exact";
}

double fuzzyMinPoints(std::size_t n)
{
    return std::max(std::min(0.05 * double(n), 20.0), 3.0);
}

namespace {

double wrapDegrees(double deg)
{
    deg = std::fmod(deg, 360.0);
    if (deg > 180.0)
        deg -= 360.0;
    if (deg <= -180.0)
        deg += 360.0;
    return deg;
}

Point centroid(const std::vector<Point>& vertices)
{
    Point c;
    for (const auto& p : vertices)
        c = c + p;
    return c * (1.0 / double(vertices.size()));
}

// Distance between descriptors at a given alignment, with early exit.
double alignmentDeviation(const ShapeDescriptor& a, const ShapeDescriptor& b, std::size_t offset, bool reversed,
                          double bound)
{
    const std::size_t n = a.distances.size();
    double worst = 0;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t j = reversed ? (offset + n - i % n) % n : (offset + i) % n;
        worst = std::max(worst, std::abs(a.distances[i] - b.distances[j]));
        if (worst > bound)
            return worst;
    }
    return worst;
}

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x)
    {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b)
    {
        a = find(a);
        b = find(b);
        if (a != b)
            parent[std::max(a, b)] = std::min(a, b);
    }
};

// Translation-free geometry key for exact matching.
struct CanonicalShape {
    ElementKind kind;
    std::vector<double> values;
    std::string href;
};

CanonicalShape canonicalShape(const VisualElement& el)
{
    CanonicalShape c{el.kind, {}, {}};
    switch (el.kind) {
    case ElementKind::Line: {
        const auto& g = std::get<svg::LineGeometry>(el.geometry);
        c.values = {g.x2 - g.x1, g.y2 - g.y1};
        break;
    }
    case ElementKind::Path: {
        const auto& g = std::get<svg::PathGeometry>(el.geometry);
        Point origin = g.segments.empty() ? Point{} : g.segments.front().end();
        for (const auto& s : g.segments) {
            c.values.push_back(double(int(s.op)));
            auto v = s.v;
            auto shift = [&](int i) {
                v[std::size_t(i)] -= origin.x;
                v[std::size_t(i) + 1] -= origin.y;
            };
            switch (s.op) {
            case PathSegment::Op::Move:
            case PathSegment::Op::Line: shift(0); break;
            case PathSegment::Op::Quad: shift(0), shift(2); break;
            case PathSegment::Op::Cubic: shift(0), shift(2), shift(4); break;
            case PathSegment::Op::Arc: shift(5); break;
            case PathSegment::Op::Close: break;
            }
            c.values.insert(c.values.end(), v.begin(), v.end());
        }
        break;
    }
    case ElementKind::GroupRef: c.href = std::get<svg::GroupRefGeometry>(el.geometry).href; break;
    default: break; // rect, circle, ellipse: grouped by kind
    }
    return c;
}

bool sameShape(const CanonicalShape& a, const CanonicalShape& b)
{
    if (a.kind != b.kind || a.href != b.href || a.values.size() != b.values.size())
        return false;
    for (std::size_t i = 0; i < a.values.size(); ++i)
        if (std::abs(a.values[i] - b.values[i]) > 1e-9)
            return false;
    return true;
}

// Absolute scale and rotation of an element, used for exact-match channels.
ShapeChannelValue absoluteShape(const VisualElement& el)
{
    ShapeChannelValue v;
    if (auto sim = el.transform.asSimilarity(1e-6)) {
        v.scaleFactor = sim->scale;
        v.rotation = sim->rotationDegrees;
    } else {
        v.scaleFactor = el.transform.meanScale();
    }
    if (const auto* c = std::get_if<svg::CircleGeometry>(&el.geometry))
        v.scaleFactor *= c->r;
    else if (const auto* e = std::get_if<svg::EllipseGeometry>(&el.geometry))
        v.scaleFactor *= std::sqrt(e->rx * e->ry);
    return v;
}

void fillRelativeChannels(IconicSymbol& sym, const std::vector<ShapeChannelValue>& absolute,
                          std::size_t representative)
{
    const auto& rep = absolute[representative];
    sym.shapeChannels.clear();
    for (const auto& a : absolute) {
        ShapeChannelValue v;
        v.scaleFactor = rep.scaleFactor > 0 ? a.scaleFactor / rep.scaleFactor : 1.0;
        v.rotation = wrapDegrees(a.rotation - rep.rotation);
        sym.shapeChannels.push_back(v);
    }
}

struct Outline {
    std::size_t index;
    std::vector<Point> vertices;
    Point center;
    ShapeDescriptor descriptor;
    std::vector<double> sorted;
    double maxLength = 0;
};

std::optional<Outline> makeOutline(const VisualElement& el, std::size_t index)
{
    try {
        svg::Polygon poly = svg::flattenPath(el);
        if (poly.vertices.size() < 3)
            return std::nullopt;
        Outline o;
        o.index = index;
        o.vertices = poly.vertices;
        o.center = centroid(poly.vertices);
        o.descriptor = centroidVerticesDescriptor(poly);
        for (const auto& p : poly.vertices)
            o.maxLength = std::max(o.maxLength, (p - o.center).norm());
        o.sorted = o.descriptor.distances;
        std::sort(o.sorted.begin(), o.sorted.end());
        return o;
    } catch (const Error&) {
        return std::nullopt;
    }
}

// Sorting is 1-Lipschitz in the max norm, so sorted vectors farther apart
// than tol cannot match at any alignment.
bool sortedClose(const Outline& a, const Outline& b, double tol)
{
    if (a.sorted.size() != b.sorted.size())
        return false;
    for (std::size_t i = 0; i < a.sorted.size(); ++i)
        if (std::abs(a.sorted[i] - b.sorted[i]) > tol)
            return false;
    return true;
}

double recoverRotation(const Outline& rep, const Outline& member, const DescriptorAlignment& al)
{
    const std::size_t n = rep.vertices.size();
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t j = al.reversed ? (al.offset + n - i) % n : (al.offset + i) % n;
        Point r = rep.vertices[i] - rep.center;
        Point m = member.vertices[j] - member.center;
        double angle = std::atan2(m.y, m.x) - std::atan2(r.y, r.x);
        sx += std::cos(angle);
        sy += std::sin(angle);
    }
    return wrapDegrees(std::atan2(sy, sx) * 180.0 / std::numbers::pi);
}

} // namespace

ShapeDescriptor centroidVerticesDescriptor(const svg::Polygon& poly)
{
    if (poly.vertices.size() < 3)
        fail(ErrorCode::DegeneratePath, "descriptor needs at least 3 vertices");
    Point c = centroid(poly.vertices);
    ShapeDescriptor d;
    double maxLen = 0;
    for (const auto& p : poly.vertices) {
        double len = (p - c).norm();
        d.distances.push_back(len);
        maxLen = std::max(maxLen, len);
    }
    if (!(maxLen > 1e-12))
        fail(ErrorCode::DegeneratePath, "all vertices coincide");
    for (auto& v : d.distances)
        v /= maxLen;
    return d;
}

std::optional<DescriptorAlignment> alignDescriptors(const ShapeDescriptor& a, const ShapeDescriptor& b, double tol)
{
    const std::size_t n = a.vertexCount();
    if (n == 0 || n != b.vertexCount())
        return std::nullopt;
    auto best = [&](bool reversed) {
        DescriptorAlignment out{0, reversed, std::numeric_limits<double>::infinity()};
        for (std::size_t k = 0; k < n; ++k) {
            double dev = alignmentDeviation(a, b, k, reversed, out.deviation);
            if (dev < out.deviation)
                out = {k, reversed, dev};
        }
        return out;
    };
    DescriptorAlignment forward = best(false);
    if (forward.deviation <= tol)
        return forward;
    DescriptorAlignment backward = best(true);
    return backward.deviation < forward.deviation ? backward : forward;
}

bool descriptorMatch(const ShapeDescriptor& a, const ShapeDescriptor& b, double tol)
{
    auto al = alignDescriptors(a, b, tol);
    return al && al->deviation <= tol;
}

std::vector<IconicSymbol> exactMatchGroups(std::span<const VisualElement> elements)
{
    std::vector<CanonicalShape> keys;
    std::vector<std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < elements.size(); ++i) {
        if (elements[i].kind == ElementKind::Text)
            continue;
        CanonicalShape key = canonicalShape(elements[i]);
        std::size_t g = 0;
        while (g < keys.size() && !sameShape(keys[g], key))
            ++g;
        if (g == keys.size()) {
            keys.push_back(std::move(key));
            groups.emplace_back();
        }
        groups[g].push_back(i);
    }

    std::vector<IconicSymbol> out;
    for (const auto& members : groups) {
        if (members.size() < kMinGroupSize)
            continue;
        IconicSymbol sym;
        sym.kind = elements[members[0]].kind;
        sym.stage = MatchStage::Exact;
        std::vector<ShapeChannelValue> absolute;
        for (auto i : members) {
            sym.memberIds.push_back(elements[i].id);
            absolute.push_back(absoluteShape(elements[i]));
        }
        sym.representativeId = sym.memberIds[0];
        fillRelativeChannels(sym, absolute, 0);
        out.push_back(std::move(sym));
    }
    return out;
}

std::vector<IconicSymbol> transformedMatchGroups(std::span<const VisualElement> paths, double tol)
{
    std::vector<Outline> outlines;
    for (std::size_t i = 0; i < paths.size(); ++i)
        if (paths[i].kind == ElementKind::Path)
            if (auto o = makeOutline(paths[i], i))
                outlines.push_back(std::move(*o));

    UnionFind uf(outlines.size());
    for (std::size_t i = 0; i < outlines.size(); ++i)
        for (std::size_t j = i + 1; j < outlines.size(); ++j)
            if (uf.find(i) != uf.find(j) && sortedClose(outlines[i], outlines[j], tol) &&
                descriptorMatch(outlines[i].descriptor, outlines[j].descriptor, tol))
                uf.unite(i, j);

    std::vector<std::vector<std::size_t>> components(outlines.size());
    for (std::size_t i = 0; i < outlines.size(); ++i)
        components[uf.find(i)].push_back(i);

    std::vector<IconicSymbol> out;
    for (const auto& comp : components) {
        if (comp.size() < kMinGroupSize)
            continue;
        const Outline& rep = outlines[comp[0]];
        IconicSymbol sym;
        sym.kind = ElementKind::Path;
        sym.stage = MatchStage::Transformed;
        sym.representativeId = paths[rep.index].id;
        for (auto k : comp) {
            const Outline& m = outlines[k];
            auto al = alignDescriptors(rep.descriptor, m.descriptor, tol);
            ShapeChannelValue v;
            v.scaleFactor = m.maxLength / rep.maxLength;
            v.rotation = k == comp[0] ? 0.0 : recoverRotation(rep, m, *al);
            sym.memberIds.push_back(paths[m.index].id);
            sym.shapeChannels.push_back(v);
        }
        out.push_back(std::move(sym));
    }
    return out;
}

std::vector<IconicSymbol> fuzzyCluster(std::span<const VisualElement> paths, const FuzzyClusterParams& params)
{
    std::vector<std::size_t> index;
    std::vector<double> areas;
    std::vector<std::vector<double>> features;
    for (std::size_t i = 0; i < paths.size(); ++i) {
        if (paths[i].kind != ElementKind::Path)
            continue;
        try {
            svg::Box box = svg::geometryBox(paths[i]);
            if (!(box.height() > 0) || !(box.width() > 0))
                continue;
            double area = svg::outlineArea(paths[i]);
            index.push_back(i);
            areas.push_back(area);
            features.push_back({area, box.width() / box.height()});
        } catch (const Error&) {
        }
    }
    if (index.empty())
        return {};
    minMaxNormalize(features);
    auto labels = dbscan(features, params.epsilon, fuzzyMinPoints(index.size()));

    std::vector<IconicSymbol> out;
    for (const auto& cluster : clusterMembers(labels)) {
        std::vector<std::size_t> members = cluster;
        std::sort(members.begin(), members.end());
        std::vector<std::size_t> byArea = members;
        std::stable_sort(byArea.begin(), byArea.end(), [&](auto a, auto b) { return areas[a] < areas[b]; });
        std::size_t rep = byArea[(byArea.size() - 1) / 2];

        IconicSymbol sym;
        sym.kind = ElementKind::Path;
        sym.stage = MatchStage::Fuzzy;
        sym.representativeId = paths[index[rep]].id;
        for (auto k : members) {
            sym.memberIds.push_back(paths[index[k]].id);
            double ratio = areas[rep] > 0 ? areas[k] / areas[rep] : 1.0;
            sym.shapeChannels.push_back({std::sqrt(std::max(ratio, 0.0)), 0.0});
        }
        out.push_back(std::move(sym));
    }
    return out;
}

namespace {

bool axisAlignedStrokes(const VisualElement& el)
{
    std::vector<svg::Polygon> parts;
    if (el.kind == ElementKind::Line) {
        const auto& g = std::get<svg::LineGeometry>(el.geometry);
        parts.push_back({{el.transform.apply({g.x1, g.y1}), el.transform.apply({g.x2, g.y2})}, false});
    } else if (el.kind == ElementKind::Path) {
        parts = svg::flattenSubpaths(std::get<svg::PathGeometry>(el.geometry), el.transform, 2);
    } else {
        return false;
    }
    for (const auto& part : parts) {
        const auto& v = part.vertices;
        std::size_t edges = part.closed ? v.size() : v.size() - 1;
        for (std::size_t i = 0; i < edges && v.size() > 1; ++i) {
            Point d = v[(i + 1) % v.size()] - v[i];
            if (std::abs(d.x) > 1e-9 && std::abs(d.y) > 1e-9)
                return false;
        }
    }
    return true;
}

} // namespace

bool isMarkCandidate(const VisualElement& el, const svg::SceneGraph& scene)
{
    if (el.kind == ElementKind::Text || el.opacity <= 0)
        return false;
    const double canvasArea = scene.width * scene.height;
    const bool linear = el.kind == ElementKind::Line || (el.kind == ElementKind::Path && !el.fill);
    try {
        svg::Box box = svg::geometryBox(el);
        if (linear) {
            if (axisAlignedStrokes(el))
                return false;
            bool wide = box.width() >= 0.95 * scene.width && box.height() <= 0.02 * scene.height;
            bool tall = box.height() >= 0.95 * scene.height && box.width() <= 0.02 * scene.width;
            if (wide || tall)
                return false;
        } else if (el.fill && (el.kind == ElementKind::Rect || el.kind == ElementKind::Path)) {
            double w = std::min(box.xMax, scene.width) - std::max(box.xMin, 0.0);
            double h = std::min(box.yMax, scene.height) - std::max(box.yMin, 0.0);
            if (w > 0 && h > 0 && w * h >= 0.9 * canvasArea)
                return false;
        }
    } catch (const Error&) {
        return false;
    }
    return true;
}

std::vector<IconicSymbol> extractSymbols(const svg::SceneGraph& scene)
{
    std::vector<VisualElement> candidates;
    for (const auto& el : scene.elements)
        if (isMarkCandidate(el, scene))
            candidates.push_back(el);

    std::vector<IconicSymbol> symbols = exactMatchGroups(candidates);
    auto unclaimedPaths = [&] {
        std::vector<std::string> claimed;
        for (const auto& s : symbols)
            claimed.insert(claimed.end(), s.memberIds.begin(), s.memberIds.end());
        std::sort(claimed.begin(), claimed.end());
        std::vector<VisualElement> rest;
        for (const auto& el : candidates)
            if (el.kind == ElementKind::Path && !std::binary_search(claimed.begin(), claimed.end(), el.id))
                rest.push_back(el);
        return rest;
    };
    for (auto& s : transformedMatchGroups(unclaimedPaths()))
        symbols.push_back(std::move(s));
    for (auto& s : fuzzyCluster(unclaimedPaths()))
        symbols.push_back(std::move(s));

    if (symbols.empty())
        fail(ErrorCode::NoSymbolsFound, "no groupable marks in the document");
    for (std::size_t i = 0; i < symbols.size(); ++i)
        symbols[i].id = "sym-" + std::to_string(i);
    return symbols;
}

} // namespace legendgen::extract
