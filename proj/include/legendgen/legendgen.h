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

#ifndef LEGENDGEN_LEGENDGEN_H
#define LEGENDGEN_LEGENDGEN_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define LG_API __declspec(dllexport)
#else
#define LG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes; values are stable. */
typedef enum lg_status {
    LG_OK = 0,
    LG_MALFORMED_DOCUMENT = 1,
    LG_UNSUPPORTED_FEATURE = 2,
    LG_DEGENERATE_PATH = 3,
    LG_ZERO_AREA = 4,
    LG_EMPTY_SELECTION = 5,
    LG_NO_SYMBOLS_FOUND = 6,
    LG_TOO_FEW_COLORS = 7,
    LG_LENGTH_MISMATCH = 8,
    LG_REGION_OUT_OF_BOUNDS = 9,
    LG_NO_INK = 10,
    LG_INVALID_BOXES = 11,
    LG_INADMISSIBLE_SPEC = 12,
    LG_UNKNOWN_SELECTION = 13,
    LG_NOT_A_MARK = 14,
    LG_CARDINALITY_MISMATCH = 15,
    LG_NO_ADMISSIBLE_SPEC = 16,
    LG_NON_FINITE_INPUT = 17,
    LG_DIVERGED_UPDATE = 18,
    LG_NO_CHANGE = 19,
    LG_INVALID_ARGUMENT = 20,
    LG_VERSION_CONFLICT = 21,
    LG_NOT_FOUND = 22,
    LG_IO_ERROR = 23,
    LG_INTERNAL = 99
} lg_status;

typedef struct lg_document lg_document;
typedef struct lg_model lg_model;
typedef struct lg_service lg_service;

LG_API const char* lg_version(void);
/* Snake-case name of a status, e.g. "no_symbols_found". */
LG_API const char* lg_status_name(lg_status status);
/* Message of the last failure on the calling thread; never NULL. */
LG_API const char* lg_last_error(void);
/* Frees strings returned through char** out-parameters. */
LG_API void lg_string_free(char* s);

/* Documents */
LG_API lg_status lg_document_parse(const char* svg, size_t length, lg_document** out);
LG_API void lg_document_free(lg_document* doc);
/* JSON extraction report. */
LG_API lg_status lg_document_report(const lg_document* doc, char** json_out);

/* Quality models */
LG_API lg_status lg_model_default(uint64_t seed, lg_model** out);
LG_API lg_status lg_model_parse(const char* text, lg_model** out);
LG_API lg_status lg_model_serialize(const lg_model* model, char** text_out);
LG_API uint64_t lg_model_version(const lg_model* model);
LG_API void lg_model_free(lg_model* model);

typedef struct lg_search_options {
    int top_k;
    uint64_t seed;
    int population;
    int generations;
    int previews; /* nonzero: include composited SVG per candidate */
} lg_search_options;

LG_API void lg_search_options_init(lg_search_options* options);
/* JSON {"candidates": [{spec, metrics, score, svg?}...]}, best first. */
LG_API lg_status lg_generate(const lg_document* doc, const lg_model* model, const lg_search_options* options,
                             char** json_out);
/* JSON {"metrics": {...}, "score": s} for a spec given as JSON. */
LG_API lg_status lg_score(const lg_document* doc, const lg_model* model, const char* spec_json, char** json_out);

typedef struct lg_simulate_options {
    const char* profile;    /* right_edge, bottom_center, low_obstruction, vertical_lover */
    int tuples;             /* session length in feedback tuples */
    int max_rounds;
    uint64_t seed;
    const char* train_dir;  /* directories of .svg charts */
    const char* heldout_dir;
    const char* log_path;   /* session log, or NULL */
} lg_simulate_options;

LG_API void lg_simulate_options_init(lg_simulate_options* options);
/* Called once per round with a JSON record. */
typedef void (*lg_round_callback)(const char* round_json, void* user);
/* JSON summary with alignment before, at checkpoints and after. */
LG_API lg_status lg_simulate(const lg_simulate_options* options, lg_round_callback on_round, void* user,
                             char** summary_out);

/* Service. data_dir NULL or empty falls back to $LEGENDGEN_DATA_DIR. */
LG_API lg_status lg_service_create(const char* data_dir, lg_service** out);
/* Dispatches one request without a socket. */
LG_API lg_status lg_service_handle(lg_service* service, const char* method, const char* path, const char* query,
                                   const char* body, size_t body_length, int* http_status, char** response_out);
/* Returns the bound port through port_out (port 0 picks one). */
LG_API lg_status lg_service_bind(lg_service* service, const char* host, int port, int* port_out);
/* Blocks until lg_service_stop. */
LG_API lg_status lg_service_run(lg_service* service);
LG_API void lg_service_stop(lg_service* service);
LG_API void lg_service_free(lg_service* service);

#ifdef __cplusplus
}
#endif

#endif
