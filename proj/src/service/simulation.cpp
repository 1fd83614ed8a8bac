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

#include "service/simulation.hpp"

#include "error.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace legendgen::service {

void ChartSet::add(std::string name, std::string_view svgText)
{
    docs_.push_back(std::make_unique<legend::ChartDocument>(legend::analyzeChart(svgText)));
    owned_.push_back(std::make_unique<search::SearchProblem>(*docs_.back()));
    problems_.push_back(owned_.back().get());
    names_.push_back(std::move(name));
}

ChartSet loadChartDir(const std::filesystem::path& dir)
{
    std::vector<std::filesystem::path> files;
    std::error_code ec;
    for (std::filesystem::directory_iterator it(dir, ec), end; !ec && it != end; it.increment(ec))
        if (it->path().extension() == ".svg")
            files.push_back(it->path());
    if (ec)
        fail(ErrorCode::IoError, "cannot list " + dir.string() + ": " + ec.message());
    if (files.empty())
        fail(ErrorCode::NotFound, "no .svg charts in " + dir.string());
    std::sort(files.begin(), files.end());
    ChartSet set;
    for (const auto& f : files) {
        std::ifstream in(f, std::ios::binary);
        std::ostringstream text;
        text << in.rdbuf();
        if (!in)
            fail(ErrorCode::IoError, "cannot read " + f.string());
        set.add(f.filename().string(), text.str());
    }
    return set;
}

SimulationResult simulate(const ChartSet& training, const ChartSet& heldout, const SimulationConfig& config)
{
    const auto profile = config.session.profile;
    const auto seed = config.session.seed;
    feedback::Session session("simulated-" + std::string(feedback::name(profile)), config.modelSeed,
                              model::kDefaultHidden, config.log);

    SimulationResult r;
    r.initialAlignment = feedback::evaluateAlignment(session.model(), profile, heldout.problems(), seed);
    for (int n : config.checkpoints)
        if (n == 0)
            r.alignment.emplace_back(0, r.initialAlignment);

    r.rounds = feedback::runSession(session, training.problems(), config.session,
                                    [&](int n, const model::QualityModel& m) {
                                        if (n > 0 && std::count(config.checkpoints.begin(),
                                                                config.checkpoints.end(), n))
                                            r.alignment.emplace_back(
                                                n, feedback::evaluateAlignment(m, profile, heldout.problems(), seed));
                                    });
    r.tuples = int(session.tuples().size());
    r.model = session.model();
    r.finalAlignment = r.tuples ? feedback::evaluateAlignment(r.model, profile, heldout.problems(), seed)
                                : r.initialAlignment;
    for (int n : config.checkpoints)
        if (n > r.tuples)
            r.alignment.emplace_back(n, r.finalAlignment);
    return r;
}

} // namespace legendgen::service
