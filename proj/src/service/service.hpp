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

#include "service/records.hpp"

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

namespace httplib {
class Server;
}

namespace legendgen::service {

inline constexpr const char* kDataDirEnv = "LEGENDGEN_DATA_DIR";
inline constexpr const char* kDefaultSession = "default";

/// Explicit path, else $LEGENDGEN_DATA_DIR, else ./legendgen-data.
std::filesystem::path resolveDataDir(const std::optional<std::filesystem::path>& explicitDir);

struct Request {
    std::string method;
    std::string path;
    std::map<std::string, std::string> query;
    std::string body;
};

struct Response {
    int status = 200;
    std::string body;
    std::string contentType = "application/json";
};

/// HTTP status for an error code.
int httpStatus(ErrorCode code);

/// Documents, per-session models and their logs under one data directory.
/// handle() is safe to call concurrently.
class Service {
public:
    /// Creates the directory layout and replays every session log.
    explicit Service(std::filesystem::path dataDir);
    ~Service();

    Response handle(const Request& request);

    /// Binds the HTTP listener; port 0 picks a free port. Returns the port.
    int bind(const std::string& host, int port);
    /// Serves until stop(); requires bind().
    void run();
    void stop();

    const std::filesystem::path& dataDir() const { return dataDir_; }

private:
    struct DocumentEntry;
    struct SessionEntry;

    Response route(const Request& request);
    std::shared_ptr<const DocumentEntry> document(const std::string& id);
    std::shared_ptr<SessionEntry> session(const std::string& id);

    Response createDocument(const Request& request);
    Response candidates(const DocumentEntry& doc, const Request& request);
    Response applyEdit(const DocumentEntry& doc, const Request& request);
    Response highlightChart(const DocumentEntry& doc, const Request& request);
    Response retrieveMark(const DocumentEntry& doc, const Request& request);
    Response retargetChart(const DocumentEntry& doc, const Request& request);
    Response exportModel(const std::string& sessionId);
    Response importModel(const std::string& sessionId, const Request& request);

    std::filesystem::path dataDir_;
    std::mutex mutex_;
    std::map<std::string, std::shared_ptr<const DocumentEntry>> documents_;
    std::map<std::string, std::shared_ptr<SessionEntry>> sessions_;
    std::unique_ptr<httplib::Server> server_;
};

} // namespace legendgen::service
