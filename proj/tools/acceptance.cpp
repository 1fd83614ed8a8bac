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

// Runs the acceptance criteria and prints one PASS/FAIL line each.
// Exit status is the number of failed criteria unless --report-only.

#include "error.hpp"
#include "extract/colors.hpp"
#include "extract/symbols.hpp"
#include "feedback/feedback.hpp"
#include "fixtures.hpp"
#include "legend/interact.hpp"
#include "metrics/metrics.hpp"
#include "model/model.hpp"
#include "search/search.hpp"
#include "svg/parser.hpp"
#include "svg/writer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <memory>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

using namespace legendgen;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
    void note(const std::string& text) { detail += (detail.empty() ? "" : "; ") + text; }
};

std::string fmt(const char* f, double a)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

struct Charts {
    std::vector<std::unique_ptr<legend::ChartDocument>> docs;
    std::vector<std::unique_ptr<search::SearchProblem>> owned;
    std::vector<const search::SearchProblem*> problems;

    explicit Charts(const std::vector<fixtures::ChartFixture>& fs)
    {
        for (const auto& f : fs) {
            docs.push_back(std::make_unique<legend::ChartDocument>(legend::analyzeChart(f.svg)));
            owned.push_back(std::make_unique<search::SearchProblem>(*docs.back()));
            problems.push_back(owned.back().get());
        }
    }
};

Outcome metricSuite()
{
    Outcome o;
    const auto t0 = Clock::now();
    const double c = metrics::contrastRatio(svg::kBlack, svg::kWhite);
    o.require(c == 21.0, "contrast(black, white) = " + fmt("%.17g", c));

    svg::RasterBuffer uniform(64, 48, svg::Color{90, 140, 200, 1});
    const double obs = metrics::obstruction(uniform, metrics::PixelRect{5, 5, 40, 30});
    o.require(std::abs(obs) <= 1e-9, "uniform obstruction = " + fmt("%.3g", obs));

    svg::RasterBuffer sym(50, 40);
    sym.set(3, 7, svg::kBlack);
    sym.set(46, 32, svg::kBlack);
    sym.set(10, 30, svg::Color{100, 0, 0, 1});
    sym.set(39, 9, svg::Color{100, 0, 0, 1});
    const double ink = metrics::inkBalance(sym);
    o.require(std::abs(ink) <= 1e-9, "symmetric ink balance = " + fmt("%.3g", ink));

    const double s = metrics::sizeIncrease({0, 0, 100, 100}, {0, 0, 120, 100});
    o.require(std::abs(s - 0.2) <= 1e-9, "S = " + fmt("%.17g", s));

    const double t = since(t0);
    o.require(t < 1.0, "runtime " + fmt("%.2f s", t));
    o.note(fmt("%.3f s", t));
    return o;
}

Outcome extractionSuite()
{
    Outcome o;
    const auto t0 = Clock::now();
    for (const auto& f : fixtures::labeledCharts()) {
        auto symbols = extract::extractSymbols(svg::parseSvg(f.svg));
        std::set<std::set<std::string>> got, truth;
        for (const auto& s : symbols)
            got.insert({s.memberIds.begin(), s.memberIds.end()});
        for (const auto& g : f.symbols)
            truth.insert({g.begin(), g.end()});
        o.require(got == truth, f.name + " symbol groups differ");
    }

    for (int n : {5, 16}) {
        std::vector<extract::Lab> g;
        for (int i = 0; i < n; ++i) {
            const double t = double(i) / (n - 1);
            g.push_back({30 + 50 * t, -40 + 90 * t, -10 + 60 * t * t});
        }
        std::vector<std::size_t> perm(static_cast<std::size_t>(n));
        std::iota(perm.begin(), perm.end(), 0);
        fixtures::Random rng{std::uint64_t(n)};
        rng.shuffle(perm);
        std::vector<extract::Lab> in;
        for (auto i : perm)
            in.push_back(g[i]);
        std::vector<std::size_t> recovered;
        for (auto i : extract::orderColors(in).order)
            recovered.push_back(perm[i]);
        if (!recovered.empty() && recovered.front() != 0)
            std::reverse(recovered.begin(), recovered.end());
        std::vector<std::size_t> expected(static_cast<std::size_t>(n));
        std::iota(expected.begin(), expected.end(), 0);
        o.require(recovered == expected, "ramp order not recovered for n=" + std::to_string(n));
    }

    std::vector<std::vector<double>> x, y;
    fixtures::Random rng(11);
    for (int i = 0; i < 200; ++i) {
        const double v = rng.uniform(0, 1);
        x.push_back({v});
        y.push_back({2 * v});
    }
    const double dcor = extract::distanceCorrelation(x, y);
    o.require(std::abs(dcor - 1.0) <= 1e-9, "dCor(Y=2X) = " + fmt("%.17g", dcor));

    const auto wind = extract::extractEncodings(svg::parseSvg(fixtures::makeChart(fixtures::ChartType::Wind, 0).svg));
    const bool merged = wind.channels.size() == 2 && wind.channelGroups.size() == 1 &&
                        wind.channelGroups[0] == std::vector<std::size_t>{0, 1} &&
                        extract::kCorrelationThreshold == 0.75;
    o.require(merged, "wind color and rotation not merged");

    const double t = since(t0);
    o.require(t < 10.0, "runtime " + fmt("%.2f s", t));
    o.note(fmt("%.2f s", t));
    return o;
}

Outcome dbscanConformance()
{
    Outcome o;
    const double m10 = extract::fuzzyMinPoints(10), m100 = extract::fuzzyMinPoints(100),
                 m1000 = extract::fuzzyMinPoints(1000);
    o.require(m10 == 3 && m100 == 5 && m1000 == 20,
              "m(10,100,1000) = " + fmt("%g", m10) + "," + fmt("%g", m100) + "," + fmt("%g", m1000));
    o.require(extract::kDefaultRampSamples == 512, "ramp samples " + std::to_string(extract::kDefaultRampSamples));
    const auto ramp = extract::interpolateRamp({{20, 0, 0}, {80, 10, 10}});
    o.require(ramp.size() == 512, "interpolated ramp has " + std::to_string(ramp.size()) + " samples");
    return o;
}

Outcome modelSuite()
{
    Outcome o;
    std::mt19937_64 rng(2026);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto vec = [&] {
        return metrics::MetricVector::fromValues(
            {u(rng) * 127.5, u(rng), 1 + 20 * u(rng), 2 * u(rng), 3 * u(rng), u(rng), u(rng), u(rng)});
    };
    double worst = 0;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        model::FeedbackTuple t{vec(), vec(), int(seed % 2), "", ""};
        worst = std::max(worst, model::gradientCheck(model::initModel(seed), t));
    }
    o.require(worst < 1e-4, "gradient check " + fmt("%.3g", worst));
    o.note("gradient check max " + fmt("%.2g", worst));

    const auto x = vec();
    std::vector<model::FeedbackTuple> same{{x, vec(), 0, "", ""}};
    const double loss = model::pairwiseLoss(model::QualityModel::zeros(), same);
    o.require(std::abs(loss - std::log(2.0)) <= 1e-9, "equal-score loss " + fmt("%.17g", loss));

    Charts training(fixtures::trainingCharts());
    std::stringstream log;
    feedback::Session session("acceptance", 1, model::kDefaultHidden, &log);
    feedback::SessionConfig cfg;
    cfg.tuples = 10;
    cfg.ga.generations = 20;
    feedback::runSession(session, training.problems, cfg);
    auto replay = feedback::replayLog(log);
    o.require(session.tuples().size() == 10, "session produced " + std::to_string(session.tuples().size()) + " tuples");
    o.require(replay.model.parameters() == session.model().parameters(), "replayed parameters differ");
    return o;
}

Outcome searchSuite()
{
    Outcome o;
    const auto m = model::initModel(0);
    search::Scorer scorer = [&](const metrics::MetricVector& x) { return model::score(m, x); };
    double slowest = 0, worstRatio = 1e9;
    for (const auto& f : fixtures::labeledCharts()) {
        auto doc = legend::analyzeChart(f.svg);
        search::SearchProblem p(doc);
        const auto t0 = Clock::now();
        const auto ga = search::gaSearch(p, scorer);
        slowest = std::max(slowest, since(t0));
        const auto again = search::gaSearch(p, scorer);
        bool same = ga.ranked.size() == again.ranked.size();
        for (std::size_t i = 0; same && i < ga.ranked.size(); ++i)
            same = ga.ranked[i].spec == again.ranked[i].spec && ga.ranked[i].score == again.ranked[i].score;
        o.require(same, f.name + " not deterministic");
        const auto bf = search::bruteForceSearch(p, scorer, 11);
        const double best = ga.ranked.front().score, target = bf.best.score;
        // 95% of the optimum, measured on |optimum| so negative scores work
        o.require(best >= target - 0.05 * std::abs(target),
                  f.name + ": GA " + fmt("%.4f", best) + " < BF " + fmt("%.4f", target));
        worstRatio = std::min(worstRatio, target != 0 ? best / target : 1.0);
    }
    o.require(slowest <= 2.0, "slowest search " + fmt("%.2f s", slowest));
    o.note("min GA/BF " + fmt("%.4f", worstRatio) + ", slowest " + fmt("%.2f s", slowest));
    return o;
}

Outcome preferenceSurrogate()
{
    Outcome o;
    Charts training(fixtures::trainingCharts()), heldout(fixtures::heldoutCharts());
    const std::vector<int> checkpoints{0, 10, 25, 50};
    constexpr int kSeeds = 5;

    struct Run {
        std::vector<double> curve; // per checkpoint
        double seconds = 0;
    };
    for (auto profile : feedback::kAllProfiles) {
        auto runOne = [&](std::uint64_t seed) {
            Run r;
            const auto t0 = Clock::now();
            feedback::Session session("s", seed);
            std::map<int, double> at{{0, feedback::evaluateAlignment(session.model(), profile, heldout.problems)}};
            feedback::SessionConfig cfg;
            cfg.profile = profile;
            cfg.seed = seed;
            feedback::runSession(session, training.problems, cfg, [&](int n, const model::QualityModel& m) {
                if (std::count(checkpoints.begin(), checkpoints.end(), n))
                    at[n] = feedback::evaluateAlignment(m, profile, heldout.problems);
            });
            const double last = at.rbegin()->first == int(session.tuples().size())
                                    ? at.rbegin()->second
                                    : feedback::evaluateAlignment(session.model(), profile, heldout.problems);
            for (int n : checkpoints)
                r.curve.push_back(at.count(n) ? at[n] : last);
            r.seconds = since(t0);
            return r;
        };
        std::vector<Run> runs;
        for (std::uint64_t seed = 0; seed < kSeeds; ++seed)
            runs.push_back(runOne(seed));

        std::vector<double> medians;
        for (std::size_t k = 0; k < checkpoints.size(); ++k) {
            std::vector<double> v;
            for (const auto& r : runs)
                v.push_back(r.curve[k]);
            std::nth_element(v.begin(), v.begin() + kSeeds / 2, v.end());
            medians.push_back(v[kSeeds / 2]);
        }
        const double before = runs[0].curve.front(), after = runs[0].curve.back();
        double slowest = 0;
        for (const auto& r : runs)
            slowest = std::max(slowest, r.seconds);
        const std::string name = feedback::name(profile);
        o.require(after >= 0.90, name + " trained " + fmt("%.3f", after) + " < 0.90");
        o.require(before <= 0.65, name + " untrained " + fmt("%.3f", before) + " > 0.65");
        o.require(std::is_sorted(medians.begin(), medians.end()), name + " median curve decreases");
        o.require(slowest < 60.0, name + " session took " + fmt("%.1f s", slowest));
        std::string curve;
        for (double m : medians)
            curve += (curve.empty() ? "" : "/") + fmt("%.2f", m);
        o.note(name + " " + fmt("%.2f", before) + "->" + fmt("%.2f", after) + " medians " + curve + " max " +
               fmt("%.1f s", slowest));
    }
    return o;
}

Outcome interactionRoundTrips()
{
    Outcome o;
    auto text = [](const legend::ChartDocument& d) { return svg::writeSvg(d.scene); };
    for (const auto& f : fixtures::labeledCharts()) {
        auto doc = legend::analyzeChart(f.svg);
        const std::string original = text(doc);
        for (const auto& ch : doc.extraction.channels) {
            std::vector<legend::Selection> selections;
            if (ch.kind == extract::ChannelKind::Color && ch.discrete())
                for (std::size_t k = 0; k < ch.colors.size(); ++k)
                    selections.push_back(legend::Selection::item(k));
            else
                selections = {legend::Selection::range(0.0, 0.5), legend::Selection::range(0.3, 0.9)};
            for (const auto& sel : selections) {
                legend::HighlightState state;
                auto lit = legend::highlight(doc, ch.id, sel, state);
                o.require(text(legend::unhighlight(lit, state)) == original, f.name + "/" + ch.id + " highlight");
            }
            if (ch.kind != extract::ChannelKind::Color)
                continue;
            legend::Replacement b;
            if (ch.discrete())
                for (std::size_t k = 0; k < ch.colors.size(); ++k)
                    b.colors.push_back(svg::Color{std::uint8_t(40 + 50 * (k % 4)), std::uint8_t(200 - 30 * (k % 6)),
                                                  std::uint8_t(90 + 17 * k), 1});
            else
                b.colors = {svg::Color{0xf2, 0xe6, 0xf7, 1}, svg::Color{0x54, 0x27, 0x88, 1}};
            auto recolored = legend::retarget(doc, ch.id, b);
            o.require(text(recolored) != original, f.name + "/" + ch.id + " retarget changed nothing");
            auto back = legend::retarget(recolored, ch.id, legend::Replacement{ch.colors});
            o.require(text(back) == original, f.name + "/" + ch.id + " retarget A->B->A");
        }
    }
    return o;
}

} // namespace

int main(int argc, char** argv)
{
    const bool reportOnly = argc > 1 && std::strcmp(argv[1], "--report-only") == 0;
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"metric formula suite", metricSuite},
        {"extraction suite", extractionSuite},
        {"dbscan parameter conformance", dbscanConformance},
        {"model suite", modelSuite},
        {"search suite", searchSuite},
        {"preference-learning surrogate", preferenceSurrogate},
        {"interaction round trips", interactionRoundTrips},
    };
    int failed = 0;
    for (const auto& [name, run] : criteria) {
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        failed += !o.pass;
        std::printf("%s  %s  (%s)\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%zu criteria evaluated, %d failed\n", criteria.size(), failed);
    return reportOnly ? 0 : failed;
}
