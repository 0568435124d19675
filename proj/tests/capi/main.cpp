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


#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>

#include "curled/curled.h"

extern "C" int capi_c_smoke(const char* facts_path);

namespace fs = std::filesystem;

namespace {

const std::string kData = CURLED_DATA_DIR;

std::string take(char* s) {
  std::string out = s ? s : "";
  curled_string_free(s);
  return out;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  auto p = fs::temp_directory_path() / ("curled_capi_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("C translation unit") { CHECK(capi_c_smoke((kData + "/colours.facts").c_str()) == 0); }

TEST_CASE("version and error slots") {
  CHECK(std::strlen(curled_version()) > 0);
  curled_graph* g = nullptr;
  CHECK(curled_graph_load("/definitely/not/here.facts", &g) == CURLED_ERR_DATA);
  CHECK(g == nullptr);
  CHECK(std::string(curled_last_error_name()) == "Io");
  CHECK(std::string(curled_last_error()).find("not/here") != std::string::npos);
  CHECK(curled_graph_load(nullptr, &g) == CURLED_ERR_USAGE);
  CHECK(std::string(curled_last_error_name()) == "Usage");
  CHECK(curled_config_parse("depth = 2", 9, nullptr) == CURLED_ERR_USAGE);
}

TEST_CASE("graphs") {
  const std::string text = "type t c:categorical\nnode t a x\nnode t b y\nedge r a b\n";
  curled_graph* g = nullptr;
  REQUIRE(curled_graph_parse(text.data(), text.size(), &g) == CURLED_OK);
  CHECK(std::string(curled_last_error()).empty());
  CHECK(curled_graph_vertex_count(g) == 2);
  CHECK(curled_graph_edge_count(g) == 1);
  char* out = nullptr;
  REQUIRE(curled_graph_serialize(g, &out) == CURLED_OK);
  const std::string once = take(out);
  curled_graph_free(g);

  curled_graph* h = nullptr;
  REQUIRE(curled_graph_parse(once.data(), once.size(), &h) == CURLED_OK);
  REQUIRE(curled_graph_serialize(h, &out) == CURLED_OK);
  CHECK(take(out) == once);
  curled_graph_free(h);

  const std::string bad = "edge r a b\n";
  CHECK(curled_graph_parse(bad.data(), bad.size(), &g) == CURLED_ERR_DATA);
  CHECK(std::string(curled_last_error()).find("line 1") != std::string::npos);
  curled_graph_free(nullptr);
  CHECK(curled_graph_vertex_count(nullptr) == 0);
}

TEST_CASE("configs") {
  curled_config* c = nullptr;
  REQUIRE(curled_config_load(nullptr, &c) == CURLED_OK);
  CHECK(curled_config_interpretation_count(c) == 3);
  curled_config_free(c);

  const std::string text = "interpretation = 0 0 0 0 0\n";
  CHECK(curled_config_parse(text.data(), text.size(), &c) == CURLED_ERR_DATA);
  CHECK(std::string(curled_last_error_name()) == "InvalidValue");

  REQUIRE(curled_config_load((kData + "/three_interpretations.cfg").c_str(), &c) == CURLED_OK);
  CHECK(curled_config_interpretation_count(c) == 3);
  char* out = nullptr;
  REQUIRE(curled_config_serialize(c, &out) == CURLED_OK);
  CHECK(take(out).find("interpretation = 0.5 0.5 0 0 0") != std::string::npos);
  curled_config_free(c);
}

TEST_CASE("build, assign and inspect") {
  const auto dir = scratch("run");
  curled_config* c = nullptr;
  REQUIRE(curled_config_load((kData + "/attribute.cfg").c_str(), &c) == CURLED_OK);
  curled_build_summary summary{};
  REQUIRE(curled_build(c, (kData + "/colours.facts").c_str(), (dir / "model").c_str(), 2,
                       &summary) == CURLED_OK);
  CHECK(summary.group_count == 4);
  CHECK(summary.degenerate_groups == 0);
  CHECK(summary.vocabulary_size > 0);

  curled_assign_summary assigned{};
  REQUIRE(curled_assign((dir / "model").c_str(), (kData + "/colours.facts").c_str(),
                        (dir / "a.pl").c_str(), 0, &assigned) == CURLED_OK);
  CHECK(assigned.assigned == summary.fact_count);
  CHECK(assigned.skipped == 0);

  char* out = nullptr;
  REQUIRE(curled_inspect_manifest((dir / "model").c_str(), &out) == CURLED_OK);
  CHECK(take(out) == slurp(dir / "model" / "manifest.tsv"));
  CHECK(curled_inspect_manifest((dir / "nope").c_str(), &out) == CURLED_ERR_DATA);
  CHECK(std::string(curled_last_error_name()) == "ModelNotFound");

  curled_graph* g = nullptr;
  REQUIRE(curled_graph_load((kData + "/colours.facts").c_str(), &g) == CURLED_OK);
  REQUIRE(curled_inspect_matrix(g, c, "person", 1, 1, &out) == CURLED_OK);
  CHECK(take(out).rfind("id\t1\t2", 0) == 0);
  CHECK(curled_inspect_matrix(g, c, "person", 9, 1, &out) == CURLED_ERR_DATA);
  curled_graph_free(g);

  const std::string empty = "";
  curled_config_free(c);
  REQUIRE(curled_config_parse(empty.data(), 0, &c) == CURLED_OK);
  std::ofstream(dir / "empty.facts") << "# no data\n";
  CHECK(curled_build(c, (dir / "empty.facts").c_str(), (dir / "m2").c_str(), 1, nullptr) ==
        CURLED_ERR_DATA);
  CHECK(std::string(curled_last_error_name()) == "NoVertices");
  curled_config_free(c);
}
