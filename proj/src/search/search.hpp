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

#pragma once

#include "legend/document.hpp"
#include "legend/space.hpp"
#include "legend/spec.hpp"
#include "metrics/evaluator.hpp"
#include "metrics/metrics.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace legendgen::search {

/// Discrete gene positions, in spec field order.
enum Gene { kSymbolType, kSymbolLayout, kTextLayout, kMultiLayout, kDirection, kGeneCount };

struct Chromosome {
    std::array<int, kGeneCount> discrete{};
    double x = 0; // normalized anchor inside the extended band
    double y = 0;

    friend auto operator<=>(const Chromosome&, const Chromosome&) = default;
};

struct GAParams {
    int population = 50;
    int generations = 100;
    double crossoverRate = 0.8;
    double mutationRate = 0.1;
    int elitism = 2;
    std::uint64_t seed = 0;
    int topK = 10;
    // Ranked candidates sharing a combo keep at least this anchor distance,
    // as a fraction of the larger canvas side. 0 returns plain top-K.
    double separation = 0.1;

    /// Throws InvalidArgument when the invariants do not hold.
    void validate() const;
};

inline constexpr double kAnchorMargin = 0.15;
inline constexpr double kMutationSigma = 0.1;
inline constexpr int kTournamentSize = 3;

struct Candidate {
    legend::LegendSpec spec;
    metrics::MetricVector metrics;
    double score = 0;
};

using Scorer = std::function<double(const metrics::MetricVector&)>;

/// Design space, metric evaluator and per-combo legend templates of one
/// chart. Safe for concurrent evaluate() calls.
class SearchProblem {
public:
    explicit SearchProblem(const legend::ChartDocument& doc);

    const legend::ChartDocument& document() const { return *doc_; }
    const legend::DesignSpace& space() const { return space_; }
    const metrics::Evaluator& evaluator() const { return evaluator_; }

    /// Gene value counts: the largest option count each dimension can have.
    const std::array<int, kGeneCount>& geneRanges() const { return ranges_; }

    legend::Combo decodeCombo(const std::array<int, kGeneCount>& genes) const;
    /// Smallest genes that decode to `combo`.
    std::array<int, kGeneCount> encodeCombo(const legend::Combo& combo) const;
    legend::LegendSpec decode(const Chromosome& chrom) const;

    metrics::MetricVector evaluate(const legend::LegendSpec& spec) const;

private:
    const metrics::LegendTemplate& templateFor(const legend::LegendSpec& spec) const;

    const legend::ChartDocument* doc_;
    std::vector<legend::ChannelGroup> groups_;
    legend::DesignSpace space_;
    metrics::Evaluator evaluator_;
    std::array<int, kGeneCount> ranges_{};

    mutable std::mutex mutex_;
    mutable std::map<std::array<int, kGeneCount>, std::unique_ptr<metrics::LegendTemplate>> templates_;
};

struct SearchResult {
    std::vector<Candidate> ranked; // unique specs, score descending
    std::vector<double> bestPerGeneration;
    std::size_t evaluations = 0;
};

/// Genetic search; throws NoAdmissibleSpec on an empty design space.
SearchResult gaSearch(const SearchProblem& problem, const Scorer& scorer, const GAParams& params = {});

struct BruteForceResult {
    Candidate best;
    std::size_t evaluations = 0;
};

/// Every combo at grid x grid anchors over the band; ties go to the
/// lexicographically smallest chromosome.
BruteForceResult bruteForceSearch(const SearchProblem& problem, const Scorer& scorer, int grid = 11);

} // namespace legendgen::search
