/*
 * Copyright (c) 2026, The curled authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface to libcurled.
 *
 * Every fallible call returns a curled_status. On failure the calling
 * thread's last-error slot holds a message and an error name, readable with
 * curled_last_error() and curled_last_error_name() until the next call on
 * that thread. Handles are opaque; release them with the matching _free
 * function. Strings returned through char** are owned by the caller and
 * released with curled_string_free().
 */

#ifndef CURLED_CURLED_H
#define CURLED_CURLED_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(CURLED_BUILDING_LIBRARY)
#define CURLED_API __declspec(dllexport)
#else
#define CURLED_API __declspec(dllimport)
#endif
#else
#define CURLED_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Values double as process exit codes for the CLI. */
typedef enum curled_status {
  CURLED_OK = 0,
  CURLED_ERR_USAGE = 1,
  CURLED_ERR_DATA = 2,
  CURLED_ERR_NUMERIC = 3,
  CURLED_ERR_INTERNAL = 4
} curled_status;

typedef struct curled_graph curled_graph;
typedef struct curled_config curled_config;

typedef struct curled_build_summary {
  size_t vocabulary_size;
  size_t fact_count;
  size_t group_count;
  size_t degenerate_groups;
} curled_build_summary;

typedef struct curled_assign_summary {
  size_t assigned;
  size_t skipped;
} curled_assign_summary;

CURLED_API const char* curled_version(void);
CURLED_API const char* curled_last_error(void);
/* Error kind such as "UnknownVertex"; empty after a successful call. */
CURLED_API const char* curled_last_error_name(void);
CURLED_API void curled_string_free(char* s);

/* Graphs */
CURLED_API curled_status curled_graph_load(const char* path, curled_graph** out);
CURLED_API curled_status curled_graph_parse(const char* text, size_t length,
                                            curled_graph** out);
CURLED_API void curled_graph_free(curled_graph* g);
CURLED_API size_t curled_graph_vertex_count(const curled_graph* g);
CURLED_API size_t curled_graph_edge_count(const curled_graph* g);
CURLED_API curled_status curled_graph_serialize(const curled_graph* g, char** out);

/* Run configuration; a NULL path or empty text yields the defaults. */
CURLED_API curled_status curled_config_load(const char* path, curled_config** out);
CURLED_API curled_status curled_config_parse(const char* text, size_t length,
                                             curled_config** out);
CURLED_API void curled_config_free(curled_config* c);
CURLED_API size_t curled_config_interpretation_count(const curled_config* c);
CURLED_API curled_status curled_config_serialize(const curled_config* c, char** out);

/* threads == 0 selects the available hardware parallelism. */
CURLED_API curled_status curled_build(const curled_config* config, const char* data_path,
                                      const char* out_dir, size_t threads,
                                      curled_build_summary* summary);
CURLED_API curled_status curled_assign(const char* model_dir, const char* data_path,
                                       const char* out_path, size_t threads,
                                       curled_assign_summary* summary);

/* Text reports for `curled inspect`. interpretation_index is 1-based. */
CURLED_API curled_status curled_inspect_nt(const curled_graph* g, const char* vertex_id,
                                           size_t depth, char** out);
CURLED_API curled_status curled_inspect_matrix(const curled_graph* g,
                                               const curled_config* config,
                                               const char* group,
                                               size_t interpretation_index,
                                               size_t threads, char** out);
CURLED_API curled_status curled_inspect_manifest(const char* model_dir, char** out);

#ifdef __cplusplus
}
#endif

#endif /* CURLED_CURLED_H */
