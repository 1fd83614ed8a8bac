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

#include "svg/path.hpp"

#include "error.hpp"
#include "svg/numbers.hpp"

#include <cctype>
#include <cmath>
#include <numbers>

namespace legendgen::svg {

Point PathSegment::end() const
{
    switch (op) {
    case Op::Move:
    case Op::Line: return {v[0], v[1]};
    case Op::Quad: return {v[2], v[3]};
    case Op::Cubic: return {v[4], v[5]};
    case Op::Arc: return {v[5], v[6]};
    case Op::Close: break;
    }
    return {};
}

namespace {

bool isCommand(char c)
{
    return std::string_view("MmLlHhVvCcSsQqTtAaZz").find(c) != std::string_view::npos;
}

std::optional<double> readFlag(std::string_view d, std::size_t& pos)
{
    while (pos < d.size() && (std::isspace(static_cast<unsigned char>(d[pos])) || d[pos] == ','))
        ++pos;
    if (pos < d.size() && (d[pos] == '0' || d[pos] == '1'))
        return d[pos++] == '1' ? 1.0 : 0.0;
    return std::nullopt;
}

bool atNumber(std::string_view d, std::size_t pos)
{
    while (pos < d.size() && (std::isspace(static_cast<unsigned char>(d[pos])) || d[pos] == ','))
        ++pos;
    if (pos >= d.size())
        return false;
    char c = d[pos];
    return std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.';
}

void pushPoint(std::vector<Point>& pts, Point p)
{
    if (!pts.empty() && (pts.back() - p).norm() < 1e-9)
        return;
    pts.push_back(p);
}

Point quadAt(Point p0, Point p1, Point p2, double t)
{
    double u = 1 - t;
    return p0 * (u * u) + p1 * (2 * u * t) + p2 * (t * t);
}

Point cubicAt(Point p0, Point p1, Point p2, Point p3, double t)
{
    double u = 1 - t;
    return p0 * (u * u * u) + p1 * (3 * u * u * t) + p2 * (3 * u * t * t) + p3 * (t * t * t);
}

// Endpoint to center parameterization of an elliptical arc; emits the sampled
// points after `from` (untransformed).
void sampleArc(Point from, const PathSegment& s, int samples, std::vector<Point>& out)
{
    Point to{s.v[5], s.v[6]};
    double rx = std::abs(s.v[0]);
    double ry = std::abs(s.v[1]);
    if (rx < 1e-12 || ry < 1e-12 || (to - from).norm() < 1e-12) {
        out.push_back(to);
        return;
    }
    double phi = s.v[2] * std::numbers::pi / 180.0;
    bool large = s.v[3] != 0;
    bool sweep = s.v[4] != 0;
    double cphi = std::cos(phi);
    double sphi = std::sin(phi);
    double dx = (from.x - to.x) / 2;
    double dy = (from.y - to.y) / 2;
    double x1p = cphi * dx + sphi * dy;
    double y1p = -sphi * dx + cphi * dy;
    double lambda = (x1p * x1p) / (rx * rx) + (y1p * y1p) / (ry * ry);
    if (lambda > 1) {
        double k = std::sqrt(lambda);
        rx *= k;
        ry *= k;
    }
    double num = rx * rx * ry * ry - rx * rx * y1p * y1p - ry * ry * x1p * x1p;
    double den = rx * rx * y1p * y1p + ry * ry * x1p * x1p;
    double coef = den > 0 ? std::sqrt(std::max(0.0, num / den)) : 0.0;
    if (large == sweep)
        coef = -coef;
    double cxp = coef * rx * y1p / ry;
    double cyp = -coef * ry * x1p / rx;
    double cx = cphi * cxp - sphi * cyp + (from.x + to.x) / 2;
    double cy = sphi * cxp + cphi * cyp + (from.y + to.y) / 2;

    auto angle = [](double ux, double uy, double vx, double vy) {
        return std::atan2(ux * vy - uy * vx, ux * vx + uy * vy);
    };
    double theta1 = angle(1, 0, (x1p - cxp) / rx, (y1p - cyp) / ry);
    double dtheta = angle((x1p - cxp) / rx, (y1p - cyp) / ry, (-x1p - cxp) / rx, (-y1p - cyp) / ry);
    if (!sweep && dtheta > 0)
        dtheta -= 2 * std::numbers::pi;
    else if (sweep && dtheta < 0)
        dtheta += 2 * std::numbers::pi;

    for (int k = 1; k < samples; ++k) {
        double t = double(k) / double(samples - 1);
        if (k == samples - 1) {
            out.push_back(to);
            break;
        }
        double th = theta1 + dtheta * t;
        double ex = rx * std::cos(th);
        double ey = ry * std::sin(th);
        out.push_back({cphi * ex - sphi * ey + cx, sphi * ex + cphi * ey + cy});
    }
}

} // namespace

std::optional<PathGeometry> parsePathData(std::string_view d)
{
    PathGeometry path;
    std::size_t pos = 0;
    Point current{0, 0};
    Point subpathStart{0, 0};
    Point lastControl{0, 0};
    char lastCmd = 0;
    char cmd = 0;

    using Op = PathSegment::Op;

    while (true) {
        while (pos < d.size() && (std::isspace(static_cast<unsigned char>(d[pos])) || d[pos] == ','))
            ++pos;
        if (pos >= d.size())
            break;
        if (isCommand(d[pos])) {
            cmd = d[pos++];
        } else if (cmd == 0 || !atNumber(d, pos) || cmd == 'Z' || cmd == 'z') {
            return std::nullopt;
        } else if (cmd == 'M') {
            cmd = 'L';
        } else if (cmd == 'm') {
            cmd = 'l';
        }

        bool rel = std::islower(static_cast<unsigned char>(cmd)) != 0;
        char up = static_cast<char>(std::toupper(static_cast<unsigned char>(cmd)));
        Point base = rel ? current : Point{0, 0};

        auto num = [&]() { return readNumber(d, pos); };
        PathSegment seg;

        switch (up) {
        case 'Z':
            seg.op = Op::Close;
            path.segments.push_back(seg);
            current = subpathStart;
            lastCmd = up;
            continue;
        case 'M':
        case 'L': {
            auto x = num();
            auto y = num();
            if (!x || !y)
                return std::nullopt;
            seg.op = up == 'M' ? Op::Move : Op::Line;
            seg.v[0] = base.x + *x;
            seg.v[1] = base.y + *y;
            if (up == 'M')
                subpathStart = seg.end();
            break;
        }
        case 'H':
        case 'V': {
            auto a = num();
            if (!a)
                return std::nullopt;
            seg.op = Op::Line;
            if (up == 'H') {
                seg.v[0] = (rel ? current.x : 0) + *a;
                seg.v[1] = current.y;
            } else {
                seg.v[0] = current.x;
                seg.v[1] = (rel ? current.y : 0) + *a;
            }
            break;
        }
        case 'C':
        case 'S': {
            Point c1;
            if (up == 'C') {
                auto x1 = num();
                auto y1 = num();
                if (!x1 || !y1)
                    return std::nullopt;
                c1 = base + Point{*x1, *y1};
            } else {
                c1 = (lastCmd == 'C' || lastCmd == 'S') ? current * 2 - lastControl : current;
            }
            auto x2 = num();
            auto y2 = num();
            auto x = num();
            auto y = num();
            if (!x2 || !y2 || !x || !y)
                return std::nullopt;
            Point c2 = base + Point{*x2, *y2};
            Point e = base + Point{*x, *y};
            seg.op = Op::Cubic;
            seg.v = {c1.x, c1.y, c2.x, c2.y, e.x, e.y, 0};
            lastControl = c2;
            break;
        }
        case 'Q':
        case 'T': {
            Point c;
            if (up == 'Q') {
                auto x1 = num();
                auto y1 = num();
                if (!x1 || !y1)
                    return std::nullopt;
                c = base + Point{*x1, *y1};
            } else {
                c = (lastCmd == 'Q' || lastCmd == 'T') ? current * 2 - lastControl : current;
            }
            auto x = num();
            auto y = num();
            if (!x || !y)
                return std::nullopt;
            Point e = base + Point{*x, *y};
            seg.op = Op::Quad;
            seg.v = {c.x, c.y, e.x, e.y, 0, 0, 0};
            lastControl = c;
            break;
        }
        case 'A': {
            auto rx = num();
            auto ry = num();
            auto rot = num();
            auto large = readFlag(d, pos);
            auto sweep = readFlag(d, pos);
            auto x = num();
            auto y = num();
            if (!rx || !ry || !rot || !large || !sweep || !x || !y)
                return std::nullopt;
            Point e = base + Point{*x, *y};
            seg.op = Op::Arc;
            seg.v = {*rx, *ry, *rot, *large, *sweep, e.x, e.y};
            break;
        }
        default:
            return std::nullopt;
        }
        // A path must start with a moveto.
        if (path.segments.empty() && seg.op != Op::Move)
            return std::nullopt;
        path.segments.push_back(seg);
        current = seg.end();
        lastCmd = up;
    }
    return path;
}

std::string formatPathData(const PathGeometry& path)
{
    using Op = PathSegment::Op;
    std::string out;
    auto add = [&](char c, std::initializer_list<double> vals) {
        if (!out.empty())
            out += ' ';
        out += c;
        bool first = true;
        for (double v : vals) {
            if (!first)
                out += ' ';
            out += formatNumber(v);
            first = false;
        }
    };
    for (const auto& s : path.segments) {
        const auto& v = s.v;
        switch (s.op) {
        case Op::Move: add('M', {v[0], v[1]}); break;
        case Op::Line: add('L', {v[0], v[1]}); break;
        case Op::Quad: add('Q', {v[0], v[1], v[2], v[3]}); break;
        case Op::Cubic: add('C', {v[0], v[1], v[2], v[3], v[4], v[5]}); break;
        case Op::Arc: add('A', {v[0], v[1], v[2], v[3], v[4], v[5], v[6]}); break;
        case Op::Close: add('Z', {}); break;
        }
    }
    return out;
}

std::vector<Polygon> flattenSubpaths(const PathGeometry& path, const Affine& xf, int samplesPerCurve)
{
    if (samplesPerCurve < 2)
        fail(ErrorCode::InvalidArgument, "samples_per_curve must be >= 2");
    using Op = PathSegment::Op;
    std::vector<Polygon> result;
    Polygon cur;
    Point current{0, 0};
    Point start{0, 0};
    std::vector<Point> local;

    auto finish = [&](bool closed) {
        if (local.empty())
            return;
        cur.closed = closed;
        for (const auto& p : local)
            pushPoint(cur.vertices, xf.apply(p));
        if (closed && cur.vertices.size() > 1 && (cur.vertices.front() - cur.vertices.back()).norm() < 1e-9)
            cur.vertices.pop_back();
        result.push_back(std::move(cur));
        cur = Polygon{};
        local.clear();
    };

    for (const auto& s : path.segments) {
        switch (s.op) {
        case Op::Move:
            finish(false);
            current = start = s.end();
            local.push_back(current);
            break;
        case Op::Line:
            if (local.empty())
                local.push_back(current);
            local.push_back(s.end());
            current = s.end();
            break;
        case Op::Quad: {
            if (local.empty())
                local.push_back(current);
            Point c{s.v[0], s.v[1]};
            Point e = s.end();
            for (int k = 1; k < samplesPerCurve; ++k) {
                double t = double(k) / double(samplesPerCurve - 1);
                local.push_back(k == samplesPerCurve - 1 ? e : quadAt(current, c, e, t));
            }
            current = e;
            break;
        }
        case Op::Cubic: {
            if (local.empty())
                local.push_back(current);
            Point c1{s.v[0], s.v[1]};
            Point c2{s.v[2], s.v[3]};
            Point e = s.end();
            for (int k = 1; k < samplesPerCurve; ++k) {
                double t = double(k) / double(samplesPerCurve - 1);
                local.push_back(k == samplesPerCurve - 1 ? e : cubicAt(current, c1, c2, e, t));
            }
            current = e;
            break;
        }
        case Op::Arc:
            if (local.empty())
                local.push_back(current);
            sampleArc(current, s, samplesPerCurve, local);
            current = s.end();
            break;
        case Op::Close:
            finish(true);
            current = start;
            break;
        }
    }
    finish(false);
    return result;
}

Polygon flattenPath(const VisualElement& path, int samplesPerCurve)
{
    const auto* geom = std::get_if<PathGeometry>(&path.geometry);
    if (path.kind != ElementKind::Path || !geom)
        fail(ErrorCode::InvalidArgument, "flattenPath requires a path element");
    auto subpaths = flattenSubpaths(*geom, path.transform, samplesPerCurve);
    Polygon out;
    for (auto& sp : subpaths) {
        out.closed = out.closed || sp.closed;
        for (const auto& p : sp.vertices)
            pushPoint(out.vertices, p);
    }
    if (out.closed && out.vertices.size() > 1 && (out.vertices.front() - out.vertices.back()).norm() < 1e-9)
        out.vertices.pop_back();
    if (out.vertices.size() < 2)
        fail(ErrorCode::DegeneratePath, "path '" + path.id + "' has coincident vertices only");
    return out;
}

} // namespace legendgen::svg
