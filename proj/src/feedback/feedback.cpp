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

#include "feedback/feedback.hpp"

#include "error.hpp"

#include <json.hpp>

#include <cmath>
#include <istream>
#include <ostream>
#include <random>

namespace legendgen::feedback {

using legend::LegendSpec;

const char* name(Profile p)
{
    switch (p) {
    case Profile::RightEdge: return "right_edge";
    case Profile::BottomCenter: return "bottom_center";
    case Profile::LowObstruction: return "low_obstruction";
    case Profile::VerticalLover: return "vertical_lover";
    }
    return "?";
}

Profile parseProfile(std::string_view text)
{
    for (auto p : kAllProfiles)
        if (text == name(p))
            return p;
    fail(ErrorCode::InvalidArgument, "unknown profile '" + std::string(text) + "'");
}

double utility(Profile p, const LegendSpec& spec, const metrics::MetricVector& x)
{
    switch (p) {
    case Profile::RightEdge: return x.prefHorizontal;
    case Profile::BottomCenter: return -std::abs(x.prefHorizontal - 0.5) + x.prefVertical;
    case Profile::LowObstruction: return -x.obstruction;
    case Profile::VerticalLover: return spec.direction == legend::Direction::Vertical ? 1.0 : 0.0;
    }
    return 0;
}

model::FeedbackTuple recordEdit(const search::SearchProblem& problem, const LegendSpec& prev,
                                const LegendSpec& edited, const std::string& sessionId, const std::string& timestamp)
{
    if (prev == edited)
        fail(ErrorCode::NoChange, "edited legend equals the previous one");
    if (!problem.space().admissible(prev) || !problem.space().admissible(edited))
        fail(ErrorCode::InadmissibleSpec, "edit involves a legend outside the design space");
    model::FeedbackTuple t{problem.evaluate(edited), problem.evaluate(prev), 0, timestamp, sessionId};
    model::validateTuple(t);
    return t;
}

std::optional<Edit> simulateUser(Profile p, const std::vector<search::Candidate>& ranked)
{
    if (ranked.size() < 2)
        fail(ErrorCode::InvalidArgument, "the simulated user needs at least 2 candidates");
    std::size_t best = 0;
    double bestU = utility(p, ranked[0].spec, ranked[0].metrics);
    for (std::size_t i = 1; i < ranked.size(); ++i) {
        double u = utility(p, ranked[i].spec, ranked[i].metrics);
        if (u > bestU)
            best = i, bestU = u;
    }
    if (best == 0)
        return std::nullopt;
    return Edit{ranked[0].spec, ranked[best].spec};
}

double evaluateAlignment(const model::QualityModel& m, Profile p,
                         const std::vector<const search::SearchProblem*>& heldout, std::uint64_t seed)
{
    int agree = 0, counted = 0;
    for (std::size_t c = 0; c < heldout.size(); ++c) {
        const auto& problem = *heldout[c];
        std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + c);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        auto randomSpec = [&] {
            search::Chromosome chrom;
            for (int g = 0; g < search::kGeneCount; ++g)
                chrom.discrete[g] =
                    std::uniform_int_distribution<int>(0, problem.geneRanges()[g] - 1)(rng);
            chrom.x = unit(rng);
            chrom.y = unit(rng);
            return problem.decode(chrom);
        };
        for (int k = 0; k < kAlignmentPairs; ++k) {
            const LegendSpec a = randomSpec(), b = randomSpec();
            const auto xa = problem.evaluate(a), xb = problem.evaluate(b);
            const double ua = utility(p, a, xa), ub = utility(p, b, xb);
            if (ua == ub)
                continue;
            ++counted;
            const double sa = model::score(m, xa), sb = model::score(m, xb);
            if ((sa > sb && ua > ub) || (sb > sa && ub > ua))
                ++agree;
        }
    }
    return counted ? double(agree) / counted : 0.5;
}

Session::Session(std::string id, std::uint64_t modelSeed, int hidden, std::ostream* log, double lr, int epochs)
    : id_(std::move(id)), model_(model::initModel(modelSeed, hidden)), log_(log), lr_(lr), epochs_(epochs)
{
    if (!(lr > 0.0) || !std::isfinite(lr) || epochs < 1)
        fail(ErrorCode::InvalidArgument, "learning rate and epochs must be positive");
    nlohmann::ordered_json j;
    j["type"] = "session";
    j["session_id"] = id_;
    j["seed"] = modelSeed;
    j["hidden"] = hidden;
    j["lr"] = lr_;
    j["epochs"] = epochs_;
    write(j.dump());
}

Session::Session(Replay replay, std::ostream* log)
    : id_(std::move(replay.sessionId)), model_(std::move(replay.model)), buffer_(std::move(replay.tuples)), log_(log),
      lr_(replay.lr), epochs_(replay.epochs)
{
}

void Session::write(const std::string& line)
{
    if (!log_)
        return;
    *log_ << line << '\n';
    log_->flush();
    if (!*log_)
        fail(ErrorCode::IoError, "cannot append to the feedback log");
}

const model::QualityModel& Session::ingest(model::FeedbackTuple t)
{
    model::validateTuple(t);
    if (t.sessionId.empty())
        t.sessionId = id_;
    buffer_.push_back(t);
    try {
        model_ = model::update(model_, buffer_, lr_, epochs_);
    } catch (...) {
        buffer_.pop_back();
        throw;
    }
    auto j = nlohmann::ordered_json::parse(model::serializeTuple(t));
    j["type"] = "tuple";
    write(j.dump());
    return model_;
}

void Session::replaceModel(const model::QualityModel& m)
{
    if (!m.finite())
        fail(ErrorCode::NonFiniteInput, "imported model has non-finite parameters");
    model_ = m;
    buffer_.clear();
    nlohmann::ordered_json j;
    j["type"] = "model";
    j["model"] = model::serializeModel(m);
    write(j.dump());
}

Replay replayLog(std::istream& in)
{
    Replay r;
    bool started = false;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        try {
            const auto j = nlohmann::json::parse(line);
            const std::string type = j.value("type", "");
            if (type == "session") {
                r.sessionId = j.at("session_id").get<std::string>();
                r.model = model::initModel(j.at("seed").get<std::uint64_t>(), j.at("hidden").get<int>());
                r.lr = j.at("lr").get<double>();
                r.epochs = j.at("epochs").get<int>();
                r.tuples.clear();
                started = true;
            } else if (!started) {
                fail(ErrorCode::InvalidArgument, "feedback log does not start with a session record");
            } else if (type == "tuple") {
                r.tuples.push_back(model::parseTuple(line));
                r.model = model::update(r.model, r.tuples, r.lr, r.epochs);
            } else if (type == "model") {
                r.model = model::parseModel(j.at("model").get<std::string>());
                r.tuples.clear();
            } else {
                fail(ErrorCode::InvalidArgument, "feedback log: unknown record type '" + type + "'");
            }
        } catch (const nlohmann::json::exception& e) {
            fail(ErrorCode::InvalidArgument, std::string("feedback log: ") + e.what());
        }
    }
    if (!started)
        fail(ErrorCode::InvalidArgument, "feedback log is empty");
    return r;
}

std::vector<RoundRecord> runSession(Session& session, const std::vector<const search::SearchProblem*>& training,
                                    const SessionConfig& config,
                                    const std::function<void(int, const model::QualityModel&)>& onTuple)
{
    if (training.empty())
        fail(ErrorCode::InvalidArgument, "a session needs training charts");
    std::vector<RoundRecord> rounds;
    int learned = 0;
    for (int round = 0; round < config.maxRounds && learned < config.tuples; ++round) {
        const std::size_t c = std::size_t(round) % training.size();
        const auto& problem = *training[c];
        search::GAParams ga = config.ga;
        ga.seed = config.seed * 1000003ULL + std::uint64_t(round);
        const model::QualityModel current = session.model();
        auto result = search::gaSearch(
            problem, [&](const metrics::MetricVector& x) { return model::score(current, x); }, ga);
        RoundRecord rec{round, c, false, result.ranked.front().score};
        if (result.ranked.size() >= 2) {
            if (auto edit = simulateUser(config.profile, result.ranked)) {
                auto t = recordEdit(problem, edit->prev, edit->edited, session.id(), "round-" + std::to_string(round));
                session.ingest(std::move(t));
                rec.edited = true;
                ++learned;
                if (onTuple)
                    onTuple(learned, session.model());
            }
        }
        rounds.push_back(rec);
    }
    return rounds;
}

} // namespace legendgen::feedback
