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

#include <legendgen/legendgen.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <csignal>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <pthread.h>
#include <sstream>
#include <thread>

namespace {

using json = nlohmann::ordered_json;

// Thrown from the command bodies; main turns it into the process exit code.
struct Failure {
    lg_status status;
};

void check(lg_status s)
{
    if (s != LG_OK)
        throw Failure{s};
}

std::string readFile(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "error: cannot read " << path << "\n";
        throw Failure{LG_IO_ERROR};
    }
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void writeFile(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out) {
        std::cerr << "error: cannot write " << path << "\n";
        throw Failure{LG_IO_ERROR};
    }
}

std::string take(char* s)
{
    std::string out = s ? s : "";
    lg_string_free(s);
    return out;
}

struct Document {
    lg_document* ptr = nullptr;
    explicit Document(const std::string& path)
    {
        const auto text = readFile(path);
        check(lg_document_parse(text.data(), text.size(), &ptr));
    }
    ~Document() { lg_document_free(ptr); }
};

struct Model {
    lg_model* ptr = nullptr;
    explicit Model(const std::string& path)
    {
        if (path.empty())
            check(lg_model_default(0, &ptr));
        else
            check(lg_model_parse(readFile(path).c_str(), &ptr));
    }
    ~Model() { lg_model_free(ptr); }
};

// out.svg, out-2.svg, out-3.svg, ...
std::string rankedPath(const std::string& out, std::size_t rank)
{
    if (rank == 0)
        return out;
    std::filesystem::path p(out);
    return (p.parent_path() / (p.stem().string() + "-" + std::to_string(rank + 1) + p.extension().string()))
        .string();
}

void runServer(const std::string& host, int port, const std::string& dataDir)
{
    sigset_t signals;
    sigemptyset(&signals);
    sigaddset(&signals, SIGINT);
    sigaddset(&signals, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &signals, nullptr);

    lg_service* svc = nullptr;
    check(lg_service_create(dataDir.empty() ? nullptr : dataDir.c_str(), &svc));
    int bound = 0;
    if (lg_status s = lg_service_bind(svc, host.c_str(), port, &bound); s != LG_OK) {
        lg_service_free(svc);
        throw Failure{s};
    }
    std::cout << "listening on http://" << host << ":" << bound << std::endl;
    std::thread server([svc] { lg_service_run(svc); });
    int sig = 0;
    sigwait(&signals, &sig);
    lg_service_stop(svc);
    server.join();
    lg_service_free(svc);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Legend generation for SVG charts"};
    app.require_subcommand(1);
    app.set_version_flag("--version", lg_version());

    std::string input, output, specPath, modelPath, profile = "right_edge", chartsDir = "data/charts", logPath;
    std::string host = "127.0.0.1", dataDir;
    int topK = 1, population = 50, generations = 100, rounds = 50, maxRounds = 500, port = 8080;
    std::uint64_t seed = 0;

    auto* extract = app.add_subcommand("extract", "Print the extraction report of a chart");
    extract->add_option("input", input, "SVG chart")->required()->check(CLI::ExistingFile);

    auto* generate = app.add_subcommand("generate", "Search legends and write composited SVGs");
    generate->add_option("input", input, "SVG chart")->required()->check(CLI::ExistingFile);
    generate->add_option("-o,--output", output, "Output SVG; further ranks get -2, -3, ... suffixes")->required();
    generate->add_option("--top-k", topK, "Number of candidates to write")->check(CLI::Range(1, 100));
    generate->add_option("--seed", seed, "Search seed");
    generate->add_option("--population", population)->check(CLI::Range(3, 10000));
    generate->add_option("--generations", generations)->check(CLI::Range(0, 10000));
    generate->add_option("--model", modelPath, "Model file (default: pre-trained model)");

    auto* simulate = app.add_subcommand("simulate", "Run a simulated-user feedback session");
    simulate->add_option("--profile", profile, "right_edge, bottom_center, low_obstruction or vertical_lover");
    simulate->add_option("--rounds", rounds, "Session length in feedback tuples")->check(CLI::Range(1, 10000));
    simulate->add_option("--max-rounds", maxRounds, "Round cap")->check(CLI::Range(1, 100000));
    simulate->add_option("--charts", chartsDir, "Directory with train/ and heldout/ charts");
    simulate->add_option("--seed", seed);
    simulate->add_option("--log", logPath, "Write the session log here");

    auto* score = app.add_subcommand("score", "Metric vector and model score of one legend");
    score->add_option("input", input, "SVG chart")->required()->check(CLI::ExistingFile);
    score->add_option("--spec", specPath, "Legend spec (JSON)")->required()->check(CLI::ExistingFile);
    score->add_option("--model", modelPath, "Model file (default: pre-trained model)");

    auto* serve = app.add_subcommand("serve", "Run the HTTP service");
    serve->add_option("--port", port)->check(CLI::Range(0, 65535));
    serve->add_option("--host", host);
    serve->add_option("--data-dir", dataDir, "Data directory (default: $LEGENDGEN_DATA_DIR or ./legendgen-data)");

    CLI11_PARSE(app, argc, argv);

    try {
        char* text = nullptr;
        if (*extract) {
            Document doc(input);
            check(lg_document_report(doc.ptr, &text));
            std::cout << take(text) << "\n";
        } else if (*generate) {
            Document doc(input);
            Model model(modelPath);
            lg_search_options o;
            lg_search_options_init(&o);
            o.top_k = topK;
            o.seed = seed;
            o.population = population;
            o.generations = generations;
            check(lg_generate(doc.ptr, model.ptr, &o, &text));
            auto result = json::parse(take(text));
            json summary = json::array();
            std::size_t rank = 0;
            for (auto& c : result["candidates"]) {
                const auto path = rankedPath(output, rank++);
                writeFile(path, c["svg"].get<std::string>());
                summary.push_back({{"file", path}, {"score", c["score"]}, {"spec", c["spec"]}});
            }
            std::cout << summary.dump(2) << "\n";
        } else if (*simulate) {
            lg_simulate_options o;
            lg_simulate_options_init(&o);
            const auto train = (std::filesystem::path(chartsDir) / "train").string();
            const auto heldout = (std::filesystem::path(chartsDir) / "heldout").string();
            o.profile = profile.c_str();
            o.tuples = rounds;
            o.max_rounds = maxRounds;
            o.seed = seed;
            o.train_dir = train.c_str();
            o.heldout_dir = heldout.c_str();
            o.log_path = logPath.empty() ? nullptr : logPath.c_str();
            auto print = [](const char* line, void*) { std::cout << line << "\n"; };
            check(lg_simulate(&o, print, nullptr, &text));
            auto summary = json::parse(take(text));
            std::cout << summary.dump(2) << "\n";
            std::printf("final accuracy: %.4f\n", summary["final_accuracy"].get<double>());
        } else if (*score) {
            Document doc(input);
            Model model(modelPath);
            check(lg_score(doc.ptr, model.ptr, readFile(specPath).c_str(), &text));
            std::cout << take(text) << "\n";
        } else if (*serve) {
            runServer(host, port, dataDir);
        }
    } catch (const Failure& f) {
        if (*lg_last_error())
            std::cerr << "error: " << lg_status_name(f.status) << ": " << lg_last_error() << "\n";
        return int(f.status);
    }
    return 0;
}
