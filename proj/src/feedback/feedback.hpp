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

#include "legend/spec.hpp"
#include "model/model.hpp"
#include "search/search.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace legendgen::feedback {

enum class Profile { RightEdge, BottomCenter, LowObstruction, VerticalLover };

inline constexpr Profile kAllProfiles[] = {Profile::RightEdge, Profile::BottomCenter, Profile::LowObstruction,
                                           Profile::VerticalLover};

const char* name(Profile p);
Profile parseProfile(std::string_view text);

/// Deterministic taste of a simulated user; larger is better.
double utility(Profile p, const legend::LegendSpec& spec, const metrics::MetricVector& x);

/// Tuple (edited, previous, preferred = 0). Throws NoChange for identical
/// specs or metric vectors, InadmissibleSpec when either spec is outside
/// the chart's design space.
model::FeedbackTuple recordEdit(const search::SearchProblem& problem, const legend::LegendSpec& prev,
                                const legend::LegendSpec& edited, const std::string& sessionId = {},
                                const std::string& timestamp = {});

struct Edit {
    legend::LegendSpec prev;
    legend::LegendSpec edited;
};

/// Edit from the top-ranked candidate to the candidate the profile likes
/// best (first in rank order on ties); nothing when the top pick already
/// maximizes the profile. Needs at least 2 candidates.
std::optional<Edit> simulateUser(Profile p, const std::vector<search::Candidate>& ranked);

inline constexpr int kAlignmentPairs = 20;

/// Fraction of sampled random candidate pairs (kAlignmentPairs per chart)
/// on which the model orders the pair like the profile. Pairs the profile
/// cannot tell apart are skipped; returns 0.5 when every pair was skipped.
double evaluateAlignment(const model::QualityModel& m, Profile p,
                         const std::vector<const search::SearchProblem*>& heldout, std::uint64_t seed = 0);

/// Session state rebuilt from its log.
struct Replay {
    std::string sessionId;
    model::QualityModel model;
    std::vector<model::FeedbackTuple> tuples;
    double lr = model::kLearningRate;
    int epochs = model::kEpochs;
};

/// Per-session model plus its replay buffer and append-only log.
class Session {
public:
    Session(std::string id, std::uint64_t modelSeed, int hidden = model::kDefaultHidden,
            std::ostream* log = nullptr, double lr = model::kLearningRate, int epochs = model::kEpochs);

    /// Resumes a replayed session; new records go to `log`.
    Session(Replay replay, std::ostream* log);

    const std::string& id() const { return id_; }
    const model::QualityModel& model() const { return model_; }
    const std::vector<model::FeedbackTuple>& tuples() const { return buffer_; }

    /// Validates, stores and trains on one tuple. On DivergedUpdate the
    /// tuple is dropped, the model kept, and the error rethrown.
    const model::QualityModel& ingest(model::FeedbackTuple t);

    /// Replaces the model (import); the replay buffer restarts empty.
    void replaceModel(const model::QualityModel& m);

private:
    void write(const std::string& line);

    std::string id_;
    model::QualityModel model_;
    std::vector<model::FeedbackTuple> buffer_;
    std::ostream* log_;
    double lr_;
    int epochs_;
};

Replay replayLog(std::istream& in);

struct SessionConfig {
    Profile profile = Profile::RightEdge;
    int tuples = 50;            // stop after this many edits
    int maxRounds = 500;        // safety cap on search rounds
    std::uint64_t seed = 0;     // model and search seeds derive from it
    search::GAParams ga;        // ga.seed is overridden per round
};

struct RoundRecord {
    int round = 0;
    std::size_t chart = 0;
    bool edited = false;
    double topScore = 0;
};

/// Simulated session over the training charts in round-robin order.
/// `onTuple(n, model)` runs after the n-th tuple was learned.
std::vector<RoundRecord> runSession(Session& session, const std::vector<const search::SearchProblem*>& training,
                                    const SessionConfig& config,
                                    const std::function<void(int, const model::QualityModel&)>& onTuple = {});

} // namespace legendgen::feedback
