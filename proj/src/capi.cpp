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

#include "curled/curled.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "curled/error.hpp"
#include "curled/ingest.hpp"
#include "curled/parallel.hpp"
#include "curled/pipeline.hpp"

struct curled_graph {
  curled::Hypergraph graph;
};

struct curled_config {
  curled::RunConfig config;
};

namespace {

thread_local std::string last_error;
thread_local std::string last_error_name;

curled_status status_for(curled::ErrorCode code) {
  if (code == curled::ErrorCode::Usage) return CURLED_ERR_USAGE;
  return curled::is_numeric(code) ? CURLED_ERR_NUMERIC : CURLED_ERR_DATA;
}

template <typename Fn>
curled_status guarded(Fn&& fn) noexcept {
  last_error.clear();
  last_error_name.clear();
  try {
    fn();
    return CURLED_OK;
  } catch (const curled::Error& e) {
    last_error = e.what();
    last_error_name = std::string(curled::to_string(e.code()));
    return status_for(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    last_error_name = "OutOfMemory";
  } catch (const std::filesystem::filesystem_error& e) {
    last_error = e.what();
    last_error_name = "Io";
    return CURLED_ERR_DATA;
  } catch (const std::exception& e) {
    last_error = e.what();
    last_error_name = "Internal";
  } catch (...) {
    last_error = "unknown error";
    last_error_name = "Internal";
  }
  return CURLED_ERR_INTERNAL;
}

void require(bool ok, const char* what) {
  if (!ok) curled::raise(curled::ErrorCode::Usage, what);
}

char* duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::size_t thread_count(std::size_t requested) {
  return requested == 0 ? curled::default_thread_count() : requested;
}

}  // namespace

extern "C" {

const char* curled_version(void) { return CURLED_VERSION; }

const char* curled_last_error(void) { return last_error.c_str(); }

const char* curled_last_error_name(void) { return last_error_name.c_str(); }

void curled_string_free(char* s) { std::free(s); }

curled_status curled_graph_load(const char* path, curled_graph** out) {
  return guarded([&] {
    require(path && out, "curled_graph_load: null argument");
    *out = new curled_graph{curled::load_facts(path)};
  });
}

curled_status curled_graph_parse(const char* text, size_t length, curled_graph** out) {
  return guarded([&] {
    require(out && (text || length == 0), "curled_graph_parse: null argument");
    *out = new curled_graph{curled::parse_facts(std::string_view(text ? text : "", length))};
  });
}

void curled_graph_free(curled_graph* g) { delete g; }

size_t curled_graph_vertex_count(const curled_graph* g) { return g ? g->graph.vertex_count() : 0; }

size_t curled_graph_edge_count(const curled_graph* g) { return g ? g->graph.edge_count() : 0; }

curled_status curled_graph_serialize(const curled_graph* g, char** out) {
  return guarded([&] {
    require(g && out, "curled_graph_serialize: null argument");
    *out = duplicate(curled::serialize_facts(g->graph));
  });
}

curled_status curled_config_load(const char* path, curled_config** out) {
  return guarded([&] {
    require(out != nullptr, "curled_config_load: null argument");
    *out = new curled_config{path ? curled::load_config(path) : curled::parse_config("")};
  });
}

curled_status curled_config_parse(const char* text, size_t length, curled_config** out) {
  return guarded([&] {
    require(out && (text || length == 0), "curled_config_parse: null argument");
    *out = new curled_config{curled::parse_config(std::string_view(text ? text : "", length))};
  });
}

void curled_config_free(curled_config* c) { delete c; }

size_t curled_config_interpretation_count(const curled_config* c) {
  return c ? c->config.interpretations.size() : 0;
}

curled_status curled_config_serialize(const curled_config* c, char** out) {
  return guarded([&] {
    require(c && out, "curled_config_serialize: null argument");
    *out = duplicate(curled::serialize_config(c->config));
  });
}

curled_status curled_build(const curled_config* config, const char* data_path,
                           const char* out_dir, size_t threads, curled_build_summary* summary) {
  return guarded([&] {
    require(config && data_path && out_dir, "curled_build: null argument");
    const auto manifest =
        curled::run_build(config->config, data_path, out_dir, thread_count(threads));
    if (summary) {
      summary->vocabulary_size = manifest.vocabulary_size;
      summary->fact_count = manifest.fact_count;
      summary->group_count = manifest.selections.size();
      summary->degenerate_groups = 0;
      for (const auto& s : manifest.selections) summary->degenerate_groups += s.status == "degenerate";
    }
  });
}

curled_status curled_assign(const char* model_dir, const char* data_path, const char* out_path,
                            size_t threads, curled_assign_summary* summary) {
  return guarded([&] {
    require(model_dir && data_path && out_path, "curled_assign: null argument");
    const auto result =
        curled::run_assign(model_dir, data_path, out_path, thread_count(threads));
    if (summary) {
      summary->assigned = result.assigned;
      summary->skipped = result.skipped;
    }
  });
}

curled_status curled_inspect_nt(const curled_graph* g, const char* vertex_id, size_t depth,
                                char** out) {
  return guarded([&] {
    require(g && vertex_id && out, "curled_inspect_nt: null argument");
    *out = duplicate(curled::inspect_nt(g->graph, vertex_id, depth));
  });
}

curled_status curled_inspect_matrix(const curled_graph* g, const curled_config* config,
                                    const char* group, size_t interpretation_index,
                                    size_t threads, char** out) {
  return guarded([&] {
    require(g && config && group && out, "curled_inspect_matrix: null argument");
    *out = duplicate(curled::inspect_matrix(g->graph, config->config, group,
                                            interpretation_index, thread_count(threads)));
  });
}

curled_status curled_inspect_manifest(const char* model_dir, char** out) {
  return guarded([&] {
    require(model_dir && out, "curled_inspect_manifest: null argument");
    *out = duplicate(curled::inspect_manifest(model_dir));
  });
}

}  // extern "C"
