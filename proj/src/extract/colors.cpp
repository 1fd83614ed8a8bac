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


#include "extract/colors.hpp"

#include "error.hpp"
#include "extract/dbscan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace legendgen::extract {

ColorClusters clusterColors(const std::vector<Lab>& colors, const ColorClusterParams& params)
{
    std::vector<std::vector<double>> points;
    points.reserve(colors.size());
    for (const auto& c : colors)
        points.push_back({c.L, c.a, c.b});
    minMaxNormalize(points);
    auto labels = dbscan(points, params.epsilon, double(params.minPoints));

    ColorClusters out;
    out.clusters = clusterMembers(labels);
    std::stable_sort(out.clusters.begin(), out.clusters.end(),
                     [](const auto& a, const auto& b) { return a.size() > b.size(); });
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == kNoise)
            out.noise.push_back(i);
    return out;
}

double sequenceCost(const std::vector<Lab>& colors, const std::vector<std::size_t>& order)
{
    double cost = 0;
    for (std::size_t i = 1; i < order.size(); ++i)
        cost += deltaE(colors[order[i - 1]], colors[order[i]]);
    return cost;
}

namespace {

struct Edge {
    double w;
    std::size_t u, v;
    bool operator<(const Edge& o) const
    {
        if (w != o.w)
            return w < o.w;
        if (u != o.u)
            return u < o.u;
        return v < o.v;
    }
};

struct DisjointSets {
    std::vector<std::size_t> parent;
    explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x)
    {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(std::size_t a, std::size_t b)
    {
        a = find(a);
        b = find(b);
        if (a == b)
            return false;
        parent[std::max(a, b)] = std::min(a, b);
        return true;
    }
};

} // namespace

ColorOrder orderColors(const std::vector<Lab>& colors)
{
    const std::size_t n = colors.size();
    if (n < 2)
        fail(ErrorCode::TooFewColors, "ordering needs at least 2 colors");

    // All pairs sorted once; serves the neighbor search and the bridging.
    std::vector<Edge> pairs;
    pairs.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            pairs.push_back({deltaE(colors[i], colors[j]), i, j});
    std::sort(pairs.begin(), pairs.end());

    // k-nearest-neighbor adjacency.
    const std::size_t k = n > 100 ? 3 : 1;
    std::vector<std::size_t> found(n, 0);
    std::vector<Edge> graph;
    for (const auto& e : pairs) {
        if (found[e.u] < k || found[e.v] < k) {
            graph.push_back(e);
            ++found[e.u];
            ++found[e.v];
        }
    }
    // Bridge disconnected components by their closest pairs.
    DisjointSets components(n);
    for (const auto& e : graph)
        components.unite(e.u, e.v);
    for (const auto& e : pairs)
        if (components.unite(e.u, e.v))
            graph.push_back(e);

    // Minimum spanning tree of the adjacency graph.
    std::sort(graph.begin(), graph.end());
    DisjointSets tree(n);
    std::vector<std::vector<std::pair<double, std::size_t>>> adjacent(n);
    for (const auto& e : graph) {
        if (tree.unite(e.u, e.v)) {
            adjacent[e.u].push_back({e.w, e.v});
            adjacent[e.v].push_back({e.w, e.u});
        }
    }
    for (auto& list : adjacent)
        std::sort(list.begin(), list.end());

    std::vector<std::size_t> starts(n);
    std::iota(starts.begin(), starts.end(), 0);
    if (n > 512) {
        std::vector<std::size_t> byL = starts;
        std::stable_sort(byL.begin(), byL.end(), [&](auto a, auto b) { return colors[a].L < colors[b].L; });
        starts.assign(byL.begin(), byL.begin() + 5);
        starts.insert(starts.end(), byL.end() - 5, byL.end());
    }

    ColorOrder best;
    best.order.resize(n);
    std::iota(best.order.begin(), best.order.end(), 0);
    best.cost = sequenceCost(colors, best.order);

    std::vector<std::size_t> walk;
    std::vector<std::pair<std::size_t, std::size_t>> stack; // node, parent
    for (std::size_t s : starts) {
        walk.clear();
        stack.assign(1, {s, n});
        while (!stack.empty()) {
            auto [node, parent] = stack.back();
            stack.pop_back();
            walk.push_back(node);
            const auto& next = adjacent[node];
            for (auto it = next.rbegin(); it != next.rend(); ++it)
                if (it->second != parent)
                    stack.push_back({it->second, node});
        }
        double cost = sequenceCost(colors, walk);
        if (cost < best.cost - 1e-12) {
            best.cost = cost;
            best.order = walk;
        }
    }
    return best;
}

LabSpline::LabSpline(const std::vector<Lab>& points)
{
    for (const auto& p : points)
        if (points_.empty() || deltaE(points_.back(), p) > 0)
            points_.push_back(p);
    if (points_.size() < 2)
        fail(ErrorCode::TooFewColors, "spline needs 2 distinct colors");

    const std::size_t n = points_.size();
    knots_.assign(n, 0.0);
    for (std::size_t i = 1; i < n; ++i)
        knots_[i] = knots_[i - 1] + deltaE(points_[i - 1], points_[i]);

    // Natural spline second derivatives, one tridiagonal solve per axis.
    second_.assign(n, Lab{});
    if (n == 2)
        return;
    auto solveAxis = [&](auto get, auto set) {
        std::vector<double> diag(n, 1.0), upper(n, 0.0), rhs(n, 0.0);
        for (std::size_t i = 1; i + 1 < n; ++i) {
            double h0 = knots_[i] - knots_[i - 1], h1 = knots_[i + 1] - knots_[i];
            double lower = h0 / 6;
            diag[i] = (h0 + h1) / 3;
            upper[i] = h1 / 6;
            rhs[i] = (get(points_[i + 1]) - get(points_[i])) / h1 - (get(points_[i]) - get(points_[i - 1])) / h0;
            // forward elimination against row i-1
            double m = lower / diag[i - 1];
            diag[i] -= m * upper[i - 1];
            rhs[i] -= m * rhs[i - 1];
        }
        std::vector<double> x(n, 0.0);
        for (std::size_t i = n - 2; i >= 1; --i)
            x[i] = (rhs[i] - upper[i] * x[i + 1]) / diag[i];
        for (std::size_t i = 0; i < n; ++i)
            set(second_[i], x[i]);
    };
    solveAxis([](const Lab& c) { return c.L; }, [](Lab& c, double v) { c.L = v; });
    solveAxis([](const Lab& c) { return c.a; }, [](Lab& c, double v) { c.a = v; });
    solveAxis([](const Lab& c) { return c.b; }, [](Lab& c, double v) { c.b = v; });
}

Lab LabSpline::evaluate(double t) const
{
    t = std::clamp(t, 0.0, length());
    std::size_t i = std::size_t(std::upper_bound(knots_.begin(), knots_.end(), t) - knots_.begin());
    i = std::clamp<std::size_t>(i, 1, knots_.size() - 1) - 1;
    double h = knots_[i + 1] - knots_[i];
    double A = (knots_[i + 1] - t) / h, B = (t - knots_[i]) / h;
    double cA = (A * A * A - A) * h * h / 6, cB = (B * B * B - B) * h * h / 6;
    auto axis = [&](double p0, double p1, double m0, double m1) { return A * p0 + B * p1 + cA * m0 + cB * m1; };
    const Lab &p0 = points_[i], &p1 = points_[i + 1], &m0 = second_[i], &m1 = second_[i + 1];
    return {axis(p0.L, p1.L, m0.L, m1.L), axis(p0.a, p1.a, m0.a, m1.a), axis(p0.b, p1.b, m0.b, m1.b)};
}

std::vector<Lab> interpolateRamp(const std::vector<Lab>& sequence, int samples)
{
    if (samples < 2)
        fail(ErrorCode::InvalidArgument, "ramp needs at least 2 samples");
    LabSpline spline(sequence);

    // Arc-length table over a fine parameter grid.
    const std::size_t steps = std::max<std::size_t>(4096, std::size_t(samples) * 8);
    std::vector<double> params(steps + 1), arc(steps + 1, 0.0);
    Lab prev = spline.evaluate(0);
    for (std::size_t s = 0; s <= steps; ++s) {
        params[s] = spline.length() * double(s) / double(steps);
        Lab cur = spline.evaluate(params[s]);
        if (s > 0)
            arc[s] = arc[s - 1] + deltaE(prev, cur);
        prev = cur;
    }

    std::vector<Lab> ramp(static_cast<std::size_t>(samples));
    const double total = arc.back();
    for (int k = 0; k < samples; ++k) {
        double target = total * double(k) / double(samples - 1);
        std::size_t j = std::size_t(std::lower_bound(arc.begin(), arc.end(), target) - arc.begin());
        j = std::clamp<std::size_t>(j, 1, steps);
        double span = arc[j] - arc[j - 1];
        double f = span > 0 ? (target - arc[j - 1]) / span : 0.0;
        ramp[std::size_t(k)] = spline.evaluate(params[j - 1] + f * (params[j] - params[j - 1]));
    }
    ramp.front() = sequence.front();
    ramp.back() = sequence.back();
    return ramp;
}

const char* classificationName(Classification c)
{
    switch (c) {
    case Classification::Categorical: return "categorical";
    case Classification::Ordinal: return "ordinal";
    case Classification::ContinuousSingleHue: return "continuous_single_hue";
    case Classification::ContinuousMultiHue: return "continuous_multi_hue";
    case Classification::ContinuousDiverging: return "continuous_diverging";
    }
    return "categorical";
}

bool isContinuous(Classification c)
{
    return c == Classification::ContinuousSingleHue || c == Classification::ContinuousMultiHue ||
           c == Classification::ContinuousDiverging;
}

namespace {

// Smallest arc containing every hue of sufficiently chromatic colors.
double hueRange(const std::vector<Lab>& colors)
{
    std::vector<double> hues;
    for (const auto& c : colors)
        if (chroma(c) >= 5.0)
            hues.push_back(hueDegrees(c));
    if (hues.size() < 2)
        return 0.0;
    std::sort(hues.begin(), hues.end());
    double gap = 360.0 - (hues.back() - hues.front());
    for (std::size_t i = 1; i < hues.size(); ++i)
        gap = std::max(gap, hues[i] - hues[i - 1]);
    return 360.0 - gap;
}

} // namespace

Classification classifyContinuous(const std::vector<Lab>& sequence)
{
    if (hueRange(sequence) < 30.0)
        return Classification::ContinuousSingleHue;
    // L deviation from the chord between the endpoints, by position.
    const std::size_t n = sequence.size();
    double worst = 0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        double t = double(i) / double(n - 1);
        double chord = sequence.front().L + t * (sequence.back().L - sequence.front().L);
        worst = std::max(worst, std::abs(sequence[i].L - chord));
    }
    return worst > 10.0 ? Classification::ContinuousDiverging : Classification::ContinuousMultiHue;
}

bool isOrdinalPalette(const std::vector<Lab>& ordered)
{
    if (ordered.size() < 3 || hueRange(ordered) >= 60.0)
        return false;
    double sign = ordered[1].L - ordered[0].L;
    for (std::size_t i = 1; i < ordered.size(); ++i) {
        double step = ordered[i].L - ordered[i - 1].L;
        if (std::abs(step) < 3.0 || step * sign <= 0)
            return false;
    }
    return true;
}

Classification classifyChannel(const std::vector<Lab>& distinctColors, const ColorClusters& clusters)
{
    if (!clusters.clusters.empty() && clusters.clusters.front().size() >= kContinuousMinColors) {
        std::vector<Lab> members;
        for (auto i : clusters.clusters.front())
            members.push_back(distinctColors[i]);
        auto order = orderColors(members);
        std::vector<Lab> sequence;
        for (auto i : order.order)
            sequence.push_back(members[i]);
        return classifyContinuous(sequence);
    }
    if (distinctColors.size() >= 3) {
        auto order = orderColors(distinctColors);
        std::vector<Lab> sequence;
        for (auto i : order.order)
            sequence.push_back(distinctColors[i]);
        if (isOrdinalPalette(sequence))
            return Classification::Ordinal;
    }
    return Classification::Categorical;
}

namespace {

// Double-centered pairwise distance matrix, row-major.
std::vector<double> centeredDistances(const std::vector<std::vector<double>>& rows)
{
    const std::size_t n = rows.size();
    std::vector<double> d(n * n, 0.0), rowMean(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            double s = 0;
            for (std::size_t k = 0; k < rows[i].size(); ++k) {
                double diff = rows[i][k] - rows[j][k];
                s += diff * diff;
            }
            d[i * n + j] = d[j * n + i] = std::sqrt(s);
        }
    double grand = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            rowMean[i] += d[i * n + j];
        grand += rowMean[i];
        rowMean[i] /= double(n);
    }
    grand /= double(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            d[i * n + j] += grand - rowMean[i] - rowMean[j];
    return d;
}

} // namespace

double distanceCorrelation(const std::vector<std::vector<double>>& x, const std::vector<std::vector<double>>& y)
{
    if (x.size() != y.size())
        fail(ErrorCode::LengthMismatch, "dCor inputs differ in length");
    if (x.size() < 4)
        fail(ErrorCode::InvalidArgument, "dCor needs at least 4 samples");
    auto a = centeredDistances(x);
    auto b = centeredDistances(y);
    double xy = 0, xx = 0, yy = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        xy += a[i] * b[i];
        xx += a[i] * a[i];
        yy += b[i] * b[i];
    }
    if (xx <= 0 || yy <= 0)
        return 0.0;
    double r2 = xy / std::sqrt(xx * yy);
    return std::sqrt(std::clamp(r2, 0.0, 1.0));
}

std::vector<std::vector<std::size_t>> mergeCorrelated(const std::vector<std::vector<std::vector<double>>>& sequences,
                                                      double threshold)
{
    const std::size_t n = sequences.size();
    DisjointSets sets(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (sequences[i].size() >= 4 && distanceCorrelation(sequences[i], sequences[j]) > threshold)
                sets.unite(i, j);
    std::vector<std::vector<std::size_t>> groups;
    std::vector<std::ptrdiff_t> slot(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t root = sets.find(i);
        if (slot[root] < 0) {
            slot[root] = std::ptrdiff_t(groups.size());
            groups.emplace_back();
        }
        groups[std::size_t(slot[root])].push_back(i);
    }
    return groups;
}

} // namespace legendgen::extract
