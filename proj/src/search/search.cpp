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

#include "search/search.hpp"

#include "error.hpp"
#include "legend/render.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace legendgen::search {

using legend::Combo;
using legend::LegendSpec;

void GAParams::validate() const
{
    auto rate = [](double r) { return r >= 0.0 && r <= 1.0; };
    if (population < 2 || generations < 0 || elitism < 0 || elitism >= population || topK < 1 ||
        !rate(crossoverRate) || !rate(mutationRate) || !(separation >= 0.0 && separation <= 1.0))
        fail(ErrorCode::InvalidArgument, "invalid GA parameters");
}

namespace {

// Option index for gene g when n options exist out of `range` gene values.
std::size_t pick(int g, std::size_t n, int range)
{
    return std::min(n - 1, std::size_t(g) * n / std::size_t(range));
}

int smallestGene(std::size_t index, std::size_t n, int range)
{
    // smallest g with floor(g n / range) == index
    return int((index * std::size_t(range) + n - 1) / n);
}

template <class T>
std::size_t position(const std::vector<T>& v, T x)
{
    return std::size_t(std::find(v.begin(), v.end(), x) - v.begin());
}

std::array<int, kGeneCount> comboKey(const Combo& c)
{
    return {int(c.symbolType), int(c.symbolLayout), int(c.textLayout), int(c.multiLayout), int(c.direction)};
}

} // namespace

SearchProblem::SearchProblem(const legend::ChartDocument& doc)
    : doc_(&doc), groups_(legend::channelGroups(doc)), space_(groups_), evaluator_(doc)
{
    ranges_.fill(1);
    ranges_[kDirection] = int(space_.directions().size());
    for (auto layout : space_.symbolLayouts()) {
        ranges_[kSymbolLayout] = int(space_.symbolLayouts().size());
        ranges_[kSymbolType] = std::max(ranges_[kSymbolType], int(space_.symbolTypes(layout).size()));
        auto multis = space_.multiLayouts(layout);
        ranges_[kMultiLayout] = std::max(ranges_[kMultiLayout], int(multis.size()));
        for (auto m : multis)
            ranges_[kTextLayout] = std::max(ranges_[kTextLayout], int(space_.textLayouts(layout, m).size()));
    }
}

Combo SearchProblem::decodeCombo(const std::array<int, kGeneCount>& g) const
{
    if (space_.empty())
        fail(ErrorCode::NoAdmissibleSpec, "chart has no channels to explain");
    Combo c;
    const auto layouts = space_.symbolLayouts();
    c.symbolLayout = layouts[pick(g[kSymbolLayout], layouts.size(), ranges_[kSymbolLayout])];
    const auto types = space_.symbolTypes(c.symbolLayout);
    c.symbolType = types[pick(g[kSymbolType], types.size(), ranges_[kSymbolType])];
    const auto multis = space_.multiLayouts(c.symbolLayout);
    c.multiLayout = multis[pick(g[kMultiLayout], multis.size(), ranges_[kMultiLayout])];
    const auto texts = space_.textLayouts(c.symbolLayout, c.multiLayout);
    c.textLayout = texts[pick(g[kTextLayout], texts.size(), ranges_[kTextLayout])];
    const auto dirs = space_.directions();
    c.direction = dirs[pick(g[kDirection], dirs.size(), ranges_[kDirection])];
    return c;
}

std::array<int, kGeneCount> SearchProblem::encodeCombo(const Combo& c) const
{
    std::array<int, kGeneCount> g{};
    const auto layouts = space_.symbolLayouts();
    g[kSymbolLayout] = smallestGene(position(layouts, c.symbolLayout), layouts.size(), ranges_[kSymbolLayout]);
    const auto types = space_.symbolTypes(c.symbolLayout);
    g[kSymbolType] = smallestGene(position(types, c.symbolType), types.size(), ranges_[kSymbolType]);
    const auto multis = space_.multiLayouts(c.symbolLayout);
    g[kMultiLayout] = smallestGene(position(multis, c.multiLayout), multis.size(), ranges_[kMultiLayout]);
    const auto texts = space_.textLayouts(c.symbolLayout, c.multiLayout);
    g[kTextLayout] = smallestGene(position(texts, c.textLayout), texts.size(), ranges_[kTextLayout]);
    const auto dirs = space_.directions();
    g[kDirection] = smallestGene(position(dirs, c.direction), dirs.size(), ranges_[kDirection]);
    return g;
}

LegendSpec SearchProblem::decode(const Chromosome& chrom) const
{
    LegendSpec s;
    legend::applyCombo(s, decodeCombo(chrom.discrete));
    const double w = doc_->scene.width, h = doc_->scene.height;
    const double x = std::clamp(chrom.x, 0.0, 1.0), y = std::clamp(chrom.y, 0.0, 1.0);
    s.anchorX = evaluator_.snap(-kAnchorMargin * w + x * (1 + 2 * kAnchorMargin) * w);
    s.anchorY = evaluator_.snap(-kAnchorMargin * h + y * (1 + 2 * kAnchorMargin) * h);
    s.channelGroupIds = space_.groupIds();
    return s;
}

const metrics::LegendTemplate& SearchProblem::templateFor(const LegendSpec& spec) const
{
    const auto key = comboKey(legend::comboOf(spec));
    {
        std::lock_guard lock(mutex_);
        auto it = templates_.find(key);
        if (it != templates_.end())
            return *it->second;
    }
    auto t = std::make_unique<metrics::LegendTemplate>(
        evaluator_.prepare(legend::renderLegend(spec, *doc_, space_, groups_)));
    std::lock_guard lock(mutex_);
    auto [it, inserted] = templates_.emplace(key, std::move(t));
    return *it->second;
}

metrics::MetricVector SearchProblem::evaluate(const LegendSpec& spec) const
{
    return evaluator_.evaluate(templateFor(spec), spec);
}

namespace {

struct Individual {
    Chromosome chrom;
    double fitness = 0;
};

class Ranking {
public:
    explicit Ranking(const SearchProblem& p, const Scorer& s) : problem_(p), scorer_(s) {}

    double fitness(const Chromosome& c)
    {
        LegendSpec spec = problem_.decode(c);
        const std::string key = legend::serializeSpec(spec);
        auto it = seen_.find(key);
        if (it != seen_.end())
            return it->second.score;
        ++evaluations_;
        Candidate cand{spec, problem_.evaluate(spec), 0};
        cand.score = scorer_(cand.metrics);
        seen_.emplace(key, cand);
        return cand.score;
    }

    std::vector<Candidate> top(int k, double minDistance) const
    {
        std::vector<const std::pair<const std::string, Candidate>*> all;
        for (const auto& e : seen_)
            all.push_back(&e);
        std::stable_sort(all.begin(), all.end(),
                         [](auto* a, auto* b) { return a->second.score > b->second.score; });
        std::vector<Candidate> out;
        for (std::size_t i = 0; i < all.size() && int(out.size()) < k; ++i) {
            const Candidate& c = all[i]->second;
            const bool crowded = std::any_of(out.begin(), out.end(), [&](const Candidate& o) {
                return legend::comboOf(o.spec) == legend::comboOf(c.spec) &&
                       std::hypot(o.spec.anchorX - c.spec.anchorX, o.spec.anchorY - c.spec.anchorY) < minDistance;
            });
            if (!crowded)
                out.push_back(c);
        }
        return out;
    }

    std::size_t evaluations() const { return evaluations_; }

private:
    const SearchProblem& problem_;
    const Scorer& scorer_;
    std::map<std::string, Candidate> seen_;
    std::size_t evaluations_ = 0;
};

} // namespace

SearchResult gaSearch(const SearchProblem& problem, const Scorer& scorer, const GAParams& params)
{
    params.validate();
    if (problem.space().empty())
        fail(ErrorCode::NoAdmissibleSpec, "chart has no channels to explain");

    std::mt19937_64 rng(params.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> jitter(0.0, kMutationSigma);
    const auto& ranges = problem.geneRanges();
    auto randomGene = [&](int g) { return int(std::uniform_int_distribution<int>(0, ranges[g] - 1)(rng)); };

    Ranking ranking(problem, scorer);
    std::vector<Individual> pop(std::size_t(params.population));
    for (auto& ind : pop) {
        for (int g = 0; g < kGeneCount; ++g)
            ind.chrom.discrete[g] = randomGene(g);
        ind.chrom.x = unit(rng);
        ind.chrom.y = unit(rng);
    }

    SearchResult result;
    auto evaluateAll = [&] {
        for (auto& ind : pop)
            ind.fitness = ranking.fitness(ind.chrom);
        std::stable_sort(pop.begin(), pop.end(), [](const Individual& a, const Individual& b) {
            return a.fitness > b.fitness || (a.fitness == b.fitness && a.chrom < b.chrom);
        });
        result.bestPerGeneration.push_back(pop.front().fitness);
    };
    auto tournament = [&]() -> const Individual& {
        std::uniform_int_distribution<std::size_t> any(0, pop.size() - 1);
        std::size_t best = any(rng);
        for (int k = 1; k < kTournamentSize; ++k)
            best = std::min(best, any(rng)); // population is sorted best first
        return pop[best];
    };

    evaluateAll();
    for (int gen = 0; gen < params.generations; ++gen) {
        std::vector<Individual> next(pop.begin(), pop.begin() + params.elitism);
        while (int(next.size()) < params.population) {
            const Individual& a = tournament();
            const Individual& b = tournament();
            Chromosome child = a.chrom;
            if (unit(rng) < params.crossoverRate) {
                for (int g = 0; g < kGeneCount; ++g)
                    if (unit(rng) < 0.5)
                        child.discrete[g] = b.chrom.discrete[g];
                const double t = unit(rng);
                child.x = t * a.chrom.x + (1 - t) * b.chrom.x;
                child.y = t * a.chrom.y + (1 - t) * b.chrom.y;
            }
            for (int g = 0; g < kGeneCount; ++g)
                if (unit(rng) < params.mutationRate)
                    child.discrete[g] = randomGene(g);
            if (unit(rng) < params.mutationRate)
                child.x = std::clamp(child.x + jitter(rng), 0.0, 1.0);
            if (unit(rng) < params.mutationRate)
                child.y = std::clamp(child.y + jitter(rng), 0.0, 1.0);
            next.push_back({child, 0});
        }
        pop = std::move(next);
        evaluateAll();
    }

    const auto& scene = problem.document().scene;
    result.ranked = ranking.top(params.topK, params.separation * std::max(scene.width, scene.height));
    result.evaluations = ranking.evaluations();
    return result;
}

BruteForceResult bruteForceSearch(const SearchProblem& problem, const Scorer& scorer, int grid)
{
    if (grid < 2)
        fail(ErrorCode::InvalidArgument, "brute-force grid needs at least 2 points per axis");
    if (problem.space().empty())
        fail(ErrorCode::NoAdmissibleSpec, "chart has no channels to explain");

    std::vector<std::array<int, kGeneCount>> genes;
    for (const auto& c : problem.space().combos())
        genes.push_back(problem.encodeCombo(c));
    std::sort(genes.begin(), genes.end());

    BruteForceResult out;
    bool have = false;
    for (const auto& g : genes)
        for (int i = 0; i < grid; ++i)
            for (int j = 0; j < grid; ++j) {
                Chromosome c{g, double(i) / (grid - 1), double(j) / (grid - 1)};
                LegendSpec spec = problem.decode(c);
                auto x = problem.evaluate(spec);
                double s = scorer(x);
                ++out.evaluations;
                if (!have || s > out.best.score) {
                    out.best = {spec, x, s};
                    have = true;
                }
            }
    return out;
}

} // namespace legendgen::search
