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

#include "error.hpp"
#include "feedback/feedback.hpp"
#include "service/records.hpp"
#include "service/service.hpp"
#include "service/simulation.hpp"

#include <cstring>
#include <fstream>
#include <memory>
#include <sstream>

using namespace legendgen;
using service::Json;

struct lg_document {
    legend::ChartDocument doc;
    std::unique_ptr<search::SearchProblem> problem;
};

struct lg_model {
    model::QualityModel model;
};

struct lg_service {
    std::unique_ptr<service::Service> impl;
};

namespace {

thread_local std::string lastError;

lg_status record(lg_status status, const std::string& message)
{
    lastError = message;
    return status;
}

// Runs f, turning exceptions into status codes and the thread's last error.
template <class F>
lg_status guarded(F&& f)
{
    try {
        f();
        lastError.clear();
        return LG_OK;
    } catch (const Error& e) {
        return record(lg_status(int(e.code())), e.what());
    } catch (const Json::exception& e) {
        return record(LG_INVALID_ARGUMENT, e.what());
    } catch (const std::bad_alloc&) {
        return record(LG_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return record(LG_INTERNAL, e.what());
    }
}

char* copyOut(const std::string& s)
{
    auto* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (!p)
        throw std::bad_alloc();
    std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

void require(bool ok, const char* what)
{
    if (!ok)
        fail(ErrorCode::InvalidArgument, what);
}

std::map<std::string, std::string> parseQuery(const char* query)
{
    std::map<std::string, std::string> out;
    if (!query)
        return out;
    std::istringstream in(query);
    std::string pair;
    while (std::getline(in, pair, '&')) {
        if (pair.empty())
            continue;
        const auto eq = pair.find('=');
        if (eq == std::string::npos)
            out.emplace(pair, "");
        else
            out.emplace(pair.substr(0, eq), pair.substr(eq + 1));
    }
    return out;
}

} // namespace

extern "C" {

const char* lg_version(void)
{
    return "0.1.0";
}

const char* lg_status_name(lg_status status)
{
    if (status == LG_OK)
        return "ok";
    if (status >= LG_MALFORMED_DOCUMENT && status <= LG_IO_ERROR)
        return errorCodeName(ErrorCode(int(status)));
    return "internal_error";
}

const char* lg_last_error(void)
{
    return lastError.c_str();
}

void lg_string_free(char* s)
{
    std::free(s);
}

lg_status lg_document_parse(const char* svg, size_t length, lg_document** out)
{
    return guarded([&] {
        require(svg && out, "null argument");
        auto d = std::make_unique<lg_document>();
        d->doc = legend::analyzeChart(std::string_view(svg, length));
        d->problem = std::make_unique<search::SearchProblem>(d->doc);
        *out = d.release();
    });
}

void lg_document_free(lg_document* doc)
{
    delete doc;
}

lg_status lg_document_report(const lg_document* doc, char** json_out)
{
    return guarded([&] {
        require(doc && json_out, "null argument");
        *json_out = copyOut(service::extractionReport(doc->doc).dump(2));
    });
}

lg_status lg_model_default(uint64_t seed, lg_model** out)
{
    return guarded([&] {
        require(out, "null argument");
        *out = new lg_model{model::initModel(seed)};
    });
}

lg_status lg_model_parse(const char* text, lg_model** out)
{
    return guarded([&] {
        require(text && out, "null argument");
        *out = new lg_model{model::parseModel(text)};
    });
}

lg_status lg_model_serialize(const lg_model* m, char** text_out)
{
    return guarded([&] {
        require(m && text_out, "null argument");
        *text_out = copyOut(model::serializeModel(m->model));
    });
}

uint64_t lg_model_version(const lg_model* m)
{
    return m ? m->model.version : 0;
}

void lg_model_free(lg_model* m)
{
    delete m;
}

void lg_search_options_init(lg_search_options* o)
{
    if (!o)
        return;
    const search::GAParams defaults;
    o->top_k = defaults.topK;
    o->seed = defaults.seed;
    o->population = defaults.population;
    o->generations = defaults.generations;
    o->previews = 1;
}

lg_status lg_generate(const lg_document* doc, const lg_model* m, const lg_search_options* options, char** json_out)
{
    return guarded([&] {
        require(doc && m && json_out, "null argument");
        lg_search_options o;
        lg_search_options_init(&o);
        if (options)
            o = *options;
        search::GAParams params;
        params.topK = o.top_k;
        params.seed = o.seed;
        params.population = o.population;
        params.generations = o.generations;
        params.elitism = std::min(params.elitism, std::max(0, params.population - 1));
        const auto& qm = m->model;
        auto result = search::gaSearch(
            *doc->problem, [&](const metrics::MetricVector& x) { return model::score(qm, x); }, params);
        Json list = Json::array();
        for (const auto& c : result.ranked)
            list.push_back(service::candidateRecord(doc->doc, *doc->problem, c, o.previews != 0));
        Json out{{"document_id", doc->doc.id},
                 {"model_version", qm.version},
                 {"evaluations", result.evaluations},
                 {"candidates", list}};
        *json_out = copyOut(out.dump());
    });
}

lg_status lg_score(const lg_document* doc, const lg_model* m, const char* spec_json, char** json_out)
{
    return guarded([&] {
        require(doc && m && spec_json && json_out, "null argument");
        const auto spec = legend::parseSpec(spec_json);
        if (!doc->problem->space().admissible(spec))
            fail(ErrorCode::InadmissibleSpec, "spec is outside the chart's design space");
        const auto x = doc->problem->evaluate(spec);
        Json out{{"metrics", service::metricsToJson(x)},
                 {"score", model::score(m->model, x)},
                 {"model_version", m->model.version}};
        *json_out = copyOut(out.dump(2));
    });
}

void lg_simulate_options_init(lg_simulate_options* o)
{
    if (!o)
        return;
    const feedback::SessionConfig defaults;
    o->profile = "right_edge";
    o->tuples = defaults.tuples;
    o->max_rounds = defaults.maxRounds;
    o->seed = defaults.seed;
    o->train_dir = "data/charts/train";
    o->heldout_dir = "data/charts/heldout";
    o->log_path = nullptr;
}

lg_status lg_simulate(const lg_simulate_options* options, lg_round_callback on_round, void* user, char** summary_out)
{
    return guarded([&] {
        require(options && options->profile && options->train_dir && options->heldout_dir, "null argument");
        require(options->tuples >= 1 && options->max_rounds >= 1, "tuples and max_rounds must be positive");
        service::SimulationConfig config;
        config.session.profile = feedback::parseProfile(options->profile);
        config.session.tuples = options->tuples;
        config.session.maxRounds = options->max_rounds;
        config.session.seed = options->seed;
        config.checkpoints = {0, 10, 25, options->tuples};
        std::ofstream log;
        if (options->log_path) {
            log.open(options->log_path, std::ios::trunc);
            if (!log)
                fail(ErrorCode::IoError, std::string("cannot write ") + options->log_path);
            config.log = &log;
        }
        const auto training = service::loadChartDir(options->train_dir);
        const auto heldout = service::loadChartDir(options->heldout_dir);
        const auto r = service::simulate(training, heldout, config);

        if (on_round)
            for (const auto& round : r.rounds) {
                Json j{{"round", round.round},
                       {"chart", training.names()[round.chart]},
                       {"edited", round.edited},
                       {"top_score", round.topScore}};
                on_round(j.dump().c_str(), user);
            }
        Json curve = Json::array();
        for (const auto& [n, acc] : r.alignment)
            curve.push_back({{"tuples", n}, {"accuracy", acc}});
        Json out{{"profile", options->profile},
                 {"rounds", r.rounds.size()},
                 {"tuples", r.tuples},
                 {"model_version", r.model.version},
                 {"initial_accuracy", r.initialAlignment},
                 {"checkpoints", curve},
                 {"final_accuracy", r.finalAlignment}};
        *summary_out = copyOut(out.dump(2));
    });
}

lg_status lg_service_create(const char* data_dir, lg_service** out)
{
    return guarded([&] {
        require(out, "null argument");
        std::optional<std::filesystem::path> dir;
        if (data_dir && *data_dir)
            dir = data_dir;
        auto s = std::make_unique<lg_service>();
        s->impl = std::make_unique<service::Service>(service::resolveDataDir(dir));
        *out = s.release();
    });
}

lg_status lg_service_handle(lg_service* s, const char* method, const char* path, const char* query, const char* body,
                            size_t body_length, int* http_status, char** response_out)
{
    return guarded([&] {
        require(s && method && path && http_status && response_out, "null argument");
        service::Request r{method, path, parseQuery(query), body ? std::string(body, body_length) : std::string()};
        const auto resp = s->impl->handle(r);
        *http_status = resp.status;
        *response_out = copyOut(resp.body);
    });
}

lg_status lg_service_bind(lg_service* s, const char* host, int port, int* port_out)
{
    return guarded([&] {
        require(s && host && port_out, "null argument");
        require(port >= 0 && port <= 65535, "port out of range");
        *port_out = s->impl->bind(host, port);
    });
}

lg_status lg_service_run(lg_service* s)
{
    return guarded([&] {
        require(s, "null argument");
        s->impl->run();
    });
}

void lg_service_stop(lg_service* s)
{
    if (s)
        s->impl->stop();
}

void lg_service_free(lg_service* s)
{
    delete s;
}

} // extern "C"
