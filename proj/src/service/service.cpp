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

#include "service/service.hpp"

#include "error.hpp"
#include "feedback/feedback.hpp"
#include "legend/interact.hpp"
#include "legend/render.hpp"
#include "svg/writer.hpp"

#include <httplib.h>

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <regex>
#include <sstream>

namespace legendgen::service {

namespace fs = std::filesystem;

struct Service::DocumentEntry {
    legend::ChartDocument doc;
    std::unique_ptr<search::SearchProblem> problem;
};

struct Service::SessionEntry {
    std::mutex mutex;
    std::ofstream log;
    std::unique_ptr<feedback::Session> session;
};

namespace {

Json parseBody(const std::string& body)
{
    try {
        auto j = Json::parse(body);
        if (!j.is_object())
            fail(ErrorCode::InvalidArgument, "request body must be a JSON object");
        return j;
    } catch (const Json::exception& e) {
        fail(ErrorCode::InvalidArgument, std::string("request body: ") + e.what());
    }
}

long long intParam(const std::map<std::string, std::string>& query, const std::string& key, long long fallback,
                   long long lo, long long hi)
{
    auto it = query.find(key);
    if (it == query.end())
        return fallback;
    try {
        std::size_t used = 0;
        const long long v = std::stoll(it->second, &used);
        if (used == it->second.size() && v >= lo && v <= hi)
            return v;
    } catch (const std::exception&) {
    }
    fail(ErrorCode::InvalidArgument, "query parameter '" + key + "' is out of range");
}

std::string queryString(const std::map<std::string, std::string>& query, const std::string& key,
                        const std::string& fallback)
{
    auto it = query.find(key);
    return it == query.end() ? fallback : it->second;
}

bool validSessionId(const std::string& id)
{
    static const std::regex pattern("[A-Za-z0-9_-]{1,64}");
    return std::regex_match(id, pattern);
}

std::string utcNow()
{
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream out;
    out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return out.str();
}

Response json(const Json& j, int status = 200)
{
    return {status, j.dump(), "application/json"};
}

std::vector<std::string> segments(const std::string& path)
{
    std::vector<std::string> out;
    std::string part;
    std::istringstream in(path);
    while (std::getline(in, part, '/'))
        if (!part.empty())
            out.push_back(part);
    return out;
}

std::string readFile(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream text;
    text << in.rdbuf();
    if (!in)
        fail(ErrorCode::IoError, "cannot read " + p.string());
    return text.str();
}

// Chart SVG, with the legend for `spec` composited on top when given.
std::string chartSvg(const legend::ChartDocument& doc, const Json& body)
{
    if (!body.contains("spec"))
        return svg::writeSvg(doc.scene);
    const auto spec = specFromJson(body.at("spec"));
    return legend::composite(doc, legend::renderLegend(spec, doc), spec).toSvg();
}

std::string channelOf(const legend::ChartDocument& doc, const Json& body)
{
    if (body.contains("channel_id"))
        return body.at("channel_id").get<std::string>();
    return legend::primaryChannelId(doc);
}

} // namespace

fs::path resolveDataDir(const std::optional<fs::path>& explicitDir)
{
    if (explicitDir && !explicitDir->empty())
        return *explicitDir;
    if (const char* env = std::getenv(kDataDirEnv); env && *env)
        return env;
    return "legendgen-data";
}

int httpStatus(ErrorCode code)
{
    switch (code) {
    case ErrorCode::NotFound: return 404;
    case ErrorCode::VersionConflict: return 409;
    case ErrorCode::MalformedDocument:
    case ErrorCode::UnsupportedFeature:
    case ErrorCode::InvalidArgument: return 400;
    case ErrorCode::IoError: return 500;
    default: return 422;
    }
}

Service::Service(fs::path dataDir) : dataDir_(std::move(dataDir))
{
    std::error_code ec;
    fs::create_directories(dataDir_ / "documents", ec);
    if (!ec)
        fs::create_directories(dataDir_ / "sessions", ec);
    if (ec)
        fail(ErrorCode::IoError, "cannot create data directory " + dataDir_.string() + ": " + ec.message());

    std::vector<fs::path> logs;
    for (const auto& e : fs::directory_iterator(dataDir_ / "sessions"))
        if (e.path().extension() == ".jsonl")
            logs.push_back(e.path());
    std::sort(logs.begin(), logs.end());
    for (const auto& p : logs) {
        std::ifstream in(p);
        auto replay = feedback::replayLog(in);
        auto entry = std::make_shared<SessionEntry>();
        entry->log.open(p, std::ios::app);
        if (!entry->log)
            fail(ErrorCode::IoError, "cannot append to " + p.string());
        const std::string id = replay.sessionId;
        entry->session = std::make_unique<feedback::Session>(std::move(replay), &entry->log);
        sessions_[id] = entry;
    }
}

Service::~Service() = default;

std::shared_ptr<const Service::DocumentEntry> Service::document(const std::string& id)
{
    static const std::regex pattern("[0-9a-f]{16}");
    if (!std::regex_match(id, pattern))
        fail(ErrorCode::NotFound, "no document '" + id + "'");
    {
        std::lock_guard lock(mutex_);
        if (auto it = documents_.find(id); it != documents_.end())
            return it->second;
    }
    const fs::path file = dataDir_ / "documents" / (id + ".svg");
    if (!fs::exists(file))
        fail(ErrorCode::NotFound, "no document '" + id + "'");
    auto entry = std::make_shared<DocumentEntry>();
    entry->doc = legend::analyzeChart(readFile(file));
    entry->problem = std::make_unique<search::SearchProblem>(entry->doc);
    std::lock_guard lock(mutex_);
    return documents_.emplace(id, std::move(entry)).first->second;
}

std::shared_ptr<Service::SessionEntry> Service::session(const std::string& id)
{
    if (!validSessionId(id))
        fail(ErrorCode::InvalidArgument, "session ids use 1-64 letters, digits, '-' or '_'");
    std::lock_guard lock(mutex_);
    if (auto it = sessions_.find(id); it != sessions_.end())
        return it->second;
    auto entry = std::make_shared<SessionEntry>();
    const fs::path file = dataDir_ / "sessions" / (id + ".jsonl");
    entry->log.open(file, std::ios::app);
    if (!entry->log)
        fail(ErrorCode::IoError, "cannot create " + file.string());
    entry->session = std::make_unique<feedback::Session>(id, 0, model::kDefaultHidden, &entry->log);
    sessions_[id] = entry;
    return entry;
}

Response Service::handle(const Request& request)
{
    try {
        return route(request);
    } catch (const Error& e) {
        return json(errorRecord(e.code(), e.what()), httpStatus(e.code()));
    } catch (const Json::exception& e) {
        return json(errorRecord(ErrorCode::InvalidArgument, e.what()), 400);
    } catch (const std::exception& e) {
        return json({{"error", {{"code", "internal_error"}, {"status", 0}, {"message", e.what()}}}}, 500);
    }
}

Response Service::route(const Request& r)
{
    const auto parts = segments(r.path);
    auto methodIs = [&](const char* m) {
        if (r.method != m)
            fail(ErrorCode::InvalidArgument, "method " + r.method + " not allowed on " + r.path);
        return true;
    };
    if (parts.size() == 1 && parts[0] == "health" && methodIs("GET"))
        return json({{"status", "ok"}, {"data_dir", dataDir_.string()}});
    if (!parts.empty() && parts[0] == "documents") {
        if (parts.size() == 1 && methodIs("POST"))
            return createDocument(r);
        if (parts.size() == 2 && methodIs("GET"))
            return json({{"document_id", parts[1]}, {"report", extractionReport(document(parts[1])->doc)}});
        if (parts.size() == 3) {
            const auto& action = parts[2];
            if (action == "candidates" && methodIs("GET"))
                return candidates(*document(parts[1]), r);
            if (action == "edits" && methodIs("POST"))
                return applyEdit(*document(parts[1]), r);
            if (action == "highlight" && methodIs("POST"))
                return highlightChart(*document(parts[1]), r);
            if (action == "retrieve" && methodIs("POST"))
                return retrieveMark(*document(parts[1]), r);
            if (action == "retarget" && methodIs("POST"))
                return retargetChart(*document(parts[1]), r);
        }
    }
    if (parts.size() == 3 && parts[0] == "sessions" && parts[2] == "model") {
        if (r.method == "GET")
            return exportModel(parts[1]);
        if (r.method == "PUT" || r.method == "POST")
            return importModel(parts[1], r);
        methodIs("GET");
    }
    fail(ErrorCode::NotFound, "no route for " + r.method + " " + r.path);
}

Response Service::createDocument(const Request& r)
{
    const std::string id = legend::documentId(r.body);
    {
        std::lock_guard lock(mutex_);
        if (auto it = documents_.find(id); it != documents_.end())
            return json({{"document_id", id}, {"report", extractionReport(it->second->doc)}});
    }
    auto entry = std::make_shared<DocumentEntry>();
    entry->doc = legend::analyzeChart(r.body);
    entry->problem = std::make_unique<search::SearchProblem>(entry->doc);

    const fs::path file = dataDir_ / "documents" / (id + ".svg");
    if (!fs::exists(file)) {
        const fs::path tmp = file.string() + ".tmp";
        {
            std::ofstream out(tmp, std::ios::binary);
            out << r.body;
            if (!out)
                fail(ErrorCode::IoError, "cannot write " + tmp.string());
        }
        fs::rename(tmp, file);
    }
    std::lock_guard lock(mutex_);
    auto& stored = documents_.emplace(id, std::move(entry)).first->second;
    return json({{"document_id", id}, {"report", extractionReport(stored->doc)}}, 201);
}

Response Service::candidates(const DocumentEntry& d, const Request& r)
{
    const std::string sid = queryString(r.query, "session", kDefaultSession);
    search::GAParams params;
    params.topK = int(intParam(r.query, "top_k", params.topK, 1, 100));
    params.seed = std::uint64_t(intParam(r.query, "seed", 0, 0, std::numeric_limits<long long>::max()));
    params.population = int(intParam(r.query, "population", params.population, 2, 10000));
    params.generations = int(intParam(r.query, "generations", params.generations, 0, 10000));
    params.elitism = std::min(params.elitism, params.population - 1);
    const bool preview = intParam(r.query, "preview", 1, 0, 1) == 1;

    auto s = session(sid);
    model::QualityModel m;
    {
        std::lock_guard lock(s->mutex);
        m = s->session->model();
    }
    auto result = search::gaSearch(
        *d.problem, [&](const metrics::MetricVector& x) { return model::score(m, x); }, params);
    Json list = Json::array();
    for (const auto& c : result.ranked)
        list.push_back(candidateRecord(d.doc, *d.problem, c, preview));
    return json({{"document_id", d.doc.id}, {"session", sid}, {"model_version", m.version}, {"candidates", list}});
}

Response Service::applyEdit(const DocumentEntry& d, const Request& r)
{
    const Json body = parseBody(r.body);
    const std::string sid = body.value("session", std::string(kDefaultSession));
    const auto prev = specFromJson(body.at("prev"));
    const auto edited = specFromJson(body.at("edited"));
    auto s = session(sid);
    std::lock_guard lock(s->mutex);
    if (body.contains("expected_version") &&
        body.at("expected_version").get<std::uint64_t>() != s->session->model().version)
        fail(ErrorCode::VersionConflict, "model version is " + std::to_string(s->session->model().version));
    auto tuple = feedback::recordEdit(*d.problem, prev, edited, sid, utcNow());
    const auto& m = s->session->ingest(tuple);
    return json({{"session", sid},
                 {"model_version", m.version},
                 {"tuples", s->session->tuples().size()},
                 {"tuple", Json::parse(model::serializeTuple(tuple))}});
}

Response Service::highlightChart(const DocumentEntry& d, const Request& r)
{
    const Json body = parseBody(r.body);
    legend::Selection sel;
    if (body.contains("item")) {
        sel = legend::Selection::item(body.at("item").get<std::size_t>());
    } else if (body.contains("range")) {
        const auto& range = body.at("range");
        if (!range.is_array() || range.size() != 2)
            fail(ErrorCode::InvalidArgument, "range must be [lo, hi]");
        sel = legend::Selection::range(range[0].get<double>(), range[1].get<double>());
    } else {
        fail(ErrorCode::InvalidArgument, "highlight needs 'item' or 'range'");
    }
    legend::HighlightState state;
    const auto lit = legend::highlight(d.doc, channelOf(d.doc, body), sel, state);
    return json({{"svg", chartSvg(lit, body)}, {"dimmed", state.saved.size()}});
}

Response Service::retrieveMark(const DocumentEntry& d, const Request& r)
{
    const Json body = parseBody(r.body);
    const auto hit = legend::retrieve(d.doc, body.at("element_id").get<std::string>());
    Json out{{"channel_id", hit.channelId}, {"continuous", hit.continuous}};
    if (hit.continuous)
        out["position"] = hit.position;
    else
        out["item"] = hit.item;
    return json(out);
}

Response Service::retargetChart(const DocumentEntry& d, const Request& r)
{
    const Json body = parseBody(r.body);
    legend::Replacement rep;
    for (const auto& c : body.at("colors")) {
        auto color = svg::parseColor(c.get<std::string>());
        if (!color)
            fail(ErrorCode::InvalidArgument, "bad color '" + c.get<std::string>() + "'");
        rep.colors.push_back(*color);
    }
    const std::string style = body.value("style", std::string("fill"));
    if (style == "stroke_from_fill")
        rep.style = legend::RetargetStyle::StrokeFromFill;
    else if (style != "fill")
        fail(ErrorCode::InvalidArgument, "style must be 'fill' or 'stroke_from_fill'");
    const auto recolored = legend::retarget(d.doc, channelOf(d.doc, body), rep);
    return json({{"svg", chartSvg(recolored, body)}});
}

Response Service::exportModel(const std::string& sid)
{
    auto s = session(sid);
    std::lock_guard lock(s->mutex);
    const auto& m = s->session->model();
    return json({{"session", sid}, {"model_version", m.version}, {"model", model::serializeModel(m)}});
}

Response Service::importModel(const std::string& sid, const Request& r)
{
    const Json body = parseBody(r.body);
    const auto m = model::parseModel(body.at("model").get<std::string>());
    auto s = session(sid);
    std::lock_guard lock(s->mutex);
    s->session->replaceModel(m);
    return json({{"session", sid}, {"model_version", m.version}});
}

int Service::bind(const std::string& host, int port)
{
    server_ = std::make_unique<httplib::Server>();
    auto forward = [this](const httplib::Request& req, httplib::Response& res) {
        Request r{req.method, req.path, {}, req.body};
        for (const auto& [k, v] : req.params)
            r.query.emplace(k, v);
        const Response out = handle(r);
        res.status = out.status;
        res.set_content(out.body, out.contentType);
    };
    server_->Get(".*", forward);
    server_->Post(".*", forward);
    server_->Put(".*", forward);
    server_->Delete(".*", forward);
    if (port == 0)
        port = server_->bind_to_any_port(host);
    else if (!server_->bind_to_port(host, port))
        port = -1;
    if (port < 0)
        fail(ErrorCode::IoError, "cannot listen on " + host + ":" + std::to_string(port));
    return port;
}

void Service::run()
{
    if (!server_)
        fail(ErrorCode::InvalidArgument, "bind() before run()");
    server_->listen_after_bind();
}

void Service::stop()
{
    if (server_)
        server_->stop();
}

} // namespace legendgen::service
