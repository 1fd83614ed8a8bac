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
#include "feedback/feedback.hpp"
#include "fixtures.hpp"

#include <memory>
#include <sstream>

using namespace legendgen;
using namespace legendgen::feedback;
using legend::LegendSpec;

namespace {

struct Charts {
    std::vector<legend::ChartDocument> docs;
    std::vector<std::unique_ptr<search::SearchProblem>> owned;
    std::vector<const search::SearchProblem*> problems;

    explicit Charts(const std::vector<fixtures::ChartFixture>& fs)
    {
        docs.reserve(fs.size());
        for (const auto& f : fs)
            docs.push_back(legend::analyzeChart(f.svg));
        for (const auto& d : docs) {
            owned.push_back(std::make_unique<search::SearchProblem>(d));
            problems.push_back(owned.back().get());
        }
    }
};

LegendSpec at(const search::SearchProblem& p, double x, double y)
{
    return p.decode({{}, x, y});
}

search::Candidate candidate(const search::SearchProblem& p, const LegendSpec& s, double score)
{
    return {s, p.evaluate(s), score};
}

} // namespace

TEST_CASE("profile names and utilities")
{
    for (auto p : kAllProfiles)
        CHECK(parseProfile(name(p)) == p);
    CHECK_THROWS_AS(parseProfile("sideways"), Error);

    auto x = metrics::MetricVector::fromValues({25.5, 0, 1, 0, 0, 0.8, 0.25, 0.1});
    LegendSpec s;
    s.direction = legend::Direction::Vertical;
    CHECK(utility(Profile::RightEdge, s, x) == 0.8);
    CHECK(utility(Profile::BottomCenter, s, x) == doctest::Approx(-0.3 + 0.25));
    CHECK(utility(Profile::LowObstruction, s, x) == -25.5);
    CHECK(utility(Profile::VerticalLover, s, x) == 1.0);
    s.direction = legend::Direction::Horizontal;
    CHECK(utility(Profile::VerticalLover, s, x) == 0.0);
}

TEST_CASE("record_edit: dragging right yields a rightward preference")
{
    auto doc = legend::analyzeChart(fixtures::makeChart(fixtures::ChartType::Bar, 0).svg);
    search::SearchProblem p(doc);
    auto centre = at(p, 0.5, 0.5), right = at(p, 1.0, 0.5);
    auto t = recordEdit(p, centre, right, "s1", "now");
    CHECK(t.preferred == 0);
    CHECK(t.x0 == p.evaluate(right));
    CHECK(t.x1 == p.evaluate(centre));
    CHECK(t.x0.prefHorizontal > t.x1.prefHorizontal);
    CHECK(t.sessionId == "s1");

    try {
        recordEdit(p, centre, centre, "s1", "now");
        FAIL("expected NoChange");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NoChange);
    }
    auto bad = right;
    bad.symbolLayout = legend::SymbolLayout::Continuous;
    try {
        recordEdit(p, centre, bad, "s1", "now");
        FAIL("expected InadmissibleSpec");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InadmissibleSpec);
    }
}

TEST_CASE("record_edit: text layout switch changes readability only among quality fields")
{
    auto doc = legend::analyzeChart(fixtures::makeChart(fixtures::ChartType::StackedBar, 0).svg);
    search::SearchProblem p(doc);
    auto cross = at(p, 1.0, 0.1);
    cross.textLayout = legend::TextLayout::AccompanyingCross;
    auto embedded = cross;
    embedded.textLayout = legend::TextLayout::Embedded;
    REQUIRE(p.space().admissible(cross));
    REQUIRE(p.space().admissible(embedded));
    auto t = recordEdit(p, cross, embedded, "s", "t");
    CHECK(t.x0.readability != t.x1.readability);
    CHECK(t.x0.correspondence == t.x1.correspondence);
}

TEST_CASE("simulate_user")
{
    auto doc = legend::analyzeChart(fixtures::makeChart(fixtures::ChartType::Scatter, 0).svg);
    search::SearchProblem p(doc);
    std::vector<search::Candidate> ranked{candidate(p, at(p, 0.0, 0.5), 3), candidate(p, at(p, 0.6, 0.5), 2),
                                          candidate(p, at(p, 1.0, 0.5), 1)};
    auto edit = simulateUser(Profile::RightEdge, ranked);
    REQUIRE(edit);
    CHECK(edit->prev == ranked[0].spec);
    CHECK(edit->edited == ranked[2].spec);

    std::swap(ranked[0], ranked[2]);
    CHECK_FALSE(simulateUser(Profile::RightEdge, ranked));
    ranked.resize(1);
    CHECK_THROWS_AS(simulateUser(Profile::RightEdge, ranked), Error);
}

TEST_CASE("alignment of the untrained model is near chance")
{
    Charts heldout(fixtures::heldoutCharts());
    auto m = model::initModel(0);
    const double a = evaluateAlignment(m, Profile::RightEdge, heldout.problems);
    CHECK(a >= 0.35);
    CHECK(a <= 0.65);
    CHECK(evaluateAlignment(m, Profile::RightEdge, heldout.problems) == a);
    CHECK(evaluateAlignment(m, Profile::RightEdge, {}) == 0.5);
}

TEST_CASE("session: first round yields a tuple and the log replays bit-exactly")
{
    Charts training(fixtures::trainingCharts());
    std::stringstream log;
    Session session("s-42", 3, model::kDefaultHidden, &log);
    SessionConfig config;
    config.profile = Profile::RightEdge;
    config.tuples = 8;
    config.maxRounds = 50;
    config.seed = 5;
    config.ga.generations = 30;
    std::vector<std::uint64_t> versions;
    auto rounds = runSession(session, training.problems, config,
                             [&](int, const model::QualityModel& m) { versions.push_back(m.version); });
    REQUIRE(!rounds.empty());
    CHECK(rounds.front().edited);
    CHECK(session.tuples().size() == 8);
    CHECK(versions.back() == 8);

    // stored tuples are reproducible from their specs only through evaluate; spot-check ordering
    for (const auto& t : session.tuples())
        CHECK(t.x0.prefHorizontal > t.x1.prefHorizontal);

    std::istringstream in(log.str());
    auto replay = replayLog(in);
    CHECK(replay.sessionId == "s-42");
    CHECK(replay.tuples == session.tuples());
    CHECK(replay.model == session.model());

    auto imported = model::initModel(9);
    session.replaceModel(imported);
    CHECK(session.tuples().empty());
    std::istringstream again(log.str());
    CHECK(replayLog(again).model == imported);
}

TEST_CASE("session: ingestion validates tuples and malformed logs are rejected")
{
    Session session("s", 0);
    model::FeedbackTuple same{metrics::MetricVector{}, metrics::MetricVector{}, 0, "t", "s"};
    CHECK_THROWS_AS(session.ingest(same), Error);
    CHECK(session.tuples().empty());
    CHECK(session.model().version == 0);

    std::istringstream empty("");
    CHECK_THROWS_AS(replayLog(empty), Error);
    std::istringstream orphan(R"({"type":"tuple"})");
    CHECK_THROWS_AS(replayLog(orphan), Error);
    CHECK_THROWS_AS(Session("s", 0, 16, nullptr, -1.0), Error);
}
