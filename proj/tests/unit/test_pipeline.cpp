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


#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <set>
#include <sstream>
#include <string>

#include "curled/error.hpp"
#include "curled/pipeline.hpp"
#include "fixtures.hpp"

using namespace curled;
namespace fs = std::filesystem;

namespace {

std::vector<Fact> read_facts(const fs::path& p) {
  std::istringstream in(fixtures::slurp(p));
  return parse_fact_lines(in);
}

std::vector<Fact> sorted(std::vector<Fact> f) {
  std::sort(f.begin(), f.end());
  return f;
}

}  // namespace

TEST_SUITE_BEGIN("pipeline");

TEST_CASE("selection rows per interpretation, algorithm and group") {
  const auto cfg = parse_config(std::string_view(
      "interpretation = 1 0 0 0 0\ninterpretation = 0 1 0 0 0\n"
      "algorithms = spectral, hierarchical\nselection = silhouette\nk_max = 5\n"));
  const auto result = build_representation(fixtures::colours(), cfg, 2);
  CHECK(result.manifest.selections.size() == 2 * 2 * 2);
  for (const auto& s : result.manifest.selections) CHECK(s.status == "ok");
  CHECK(result.manifest.vocabulary_size == result.representation.manifest.size());
  CHECK(result.manifest.fact_count == result.representation.facts.size());
}

TEST_CASE("empty data") {
  try {
    build_representation(Hypergraph{}, parse_config(std::string_view("")), 1);
    FAIL("expected NoVertices");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoVertices);
    CHECK(std::string(e.what()).find("no vertices") != std::string::npos);
  }
}

TEST_CASE("degenerate groups are recorded, not fatal") {
  // every person looks the same under the attribute interpretation
  const auto g = parse_facts(std::string_view(
      "type p c:categorical\nnode p a x\nnode p b x\nnode p c x\nnode p d x\nnode p e x\n"));
  const auto cfg = parse_config(std::string_view("interpretation = 1 0 0 0 0\nalgorithms = hierarchical\n"));
  const auto result = build_representation(g, cfg, 1);
  REQUIRE(result.manifest.selections.size() == 1);
  CHECK(result.manifest.selections[0].status == "degenerate");
  CHECK(result.representation.facts.empty());
}

TEST_CASE("two layers") {
  const auto dir = fixtures::scratch_dir("layers");
  const auto cfg = load_config(fixtures::data_dir() / "two_layers.cfg");
  run_build(cfg, fixtures::data_dir() / "colours.facts", dir / "out", 2);
  const auto facts = read_facts(dir / "out" / "facts.pl");
  std::size_t layer2 = 0;
  bool references_layer1 = false;
  for (const auto& f : facts) {
    if (f.predicate.rfind("cl_L2_", 0) != 0) continue;
    ++layer2;
    references_layer1 |= f.predicate.find("cl_L1_") != std::string::npos;
  }
  CHECK(layer2 > 0);
  CHECK(references_layer1);
}

TEST_CASE("build output and assign round trip") {
  const auto dir = fixtures::scratch_dir("roundtrip");
  const auto cfg = load_config(fixtures::data_dir() / "attribute.cfg");
  const auto data = fixtures::data_dir() / "colours.facts";
  run_build(cfg, data, dir / "model", 1);
  for (const char* f : {"facts.pl", "manifest.tsv", "selection.tsv", "summary.tsv", "data.facts",
                        "config.cfg"}) {
    CHECK(fs::exists(dir / "model" / f));
  }
  CHECK_FALSE(fs::exists(dir / ".model.partial"));

  const auto result = run_assign(dir / "model", data, dir / "assigned.pl", 3);
  CHECK(result.skipped == 0);
  CHECK(sorted(read_facts(dir / "assigned.pl")) == sorted(read_facts(dir / "model" / "facts.pl")));

  // held-out black vertex
  const auto query = dir / "black.facts";
  {
    std::ofstream out(query);
    out << "type person colour:categorical\nnode person 8 black\n";
  }
  const auto held = run_assign(dir / "model", query, dir / "black.pl", 1);
  std::set<std::string> black_preds;
  for (const auto& f : read_facts(dir / "model" / "facts.pl")) {
    if (f.args == std::vector<std::string>{"1"}) black_preds.insert(f.predicate);
  }
  REQUIRE(held.facts.size() == black_preds.size());
  for (const auto& f : held.facts) CHECK(black_preds.count(f.predicate) == 1);

  // empty held-out set
  {
    std::ofstream out(dir / "empty.facts");
    out << "# nothing\n";
  }
  const auto none = run_assign(dir / "model", dir / "empty.facts", dir / "empty.pl", 1);
  CHECK(none.facts.empty());
  CHECK(fixtures::slurp(dir / "empty.pl").empty());

  // unknown signature is skipped with a message
  {
    std::ofstream out(dir / "likes.facts");
    out << fixtures::kColours << "edge likes 1 2\n";
  }
  const auto skipped = run_assign(dir / "model", dir / "likes.facts", dir / "likes.pl", 1);
  CHECK(skipped.skipped == cfg.algorithms.size());
  CHECK(skipped.messages.front().find("likes(1,2)") != std::string::npos);
}

TEST_CASE("output directory handling") {
  const auto dir = fixtures::scratch_dir("outdir");
  const auto cfg = load_config(fixtures::data_dir() / "attribute.cfg");
  const auto data = fixtures::data_dir() / "colours.facts";
  fs::create_directories(dir / "precious");
  {
    std::ofstream out(dir / "precious" / "notes.txt");
    out << "keep me\n";
  }
  CHECK_THROWS_AS(run_build(cfg, data, dir / "precious", 1), Error);
  CHECK(fs::exists(dir / "precious" / "notes.txt"));

  run_build(cfg, data, dir / "model", 1);
  const auto first = fixtures::slurp(dir / "model" / "facts.pl");
  run_build(cfg, data, dir / "model", 4);
  CHECK(fixtures::slurp(dir / "model" / "facts.pl") == first);

  CHECK_THROWS_AS(load_model(dir / "missing"), Error);
  CHECK_THROWS_AS(run_build(cfg, dir / "missing.facts", dir / "m2", 1), Error);
  CHECK_FALSE(fs::exists(dir / "m2"));
}

TEST_CASE("inspect") {
  const auto g = fixtures::colours();
  const auto nt = inspect_nt(g, "1", 1);
  CHECK(nt.find("level 1 occurrences 2: 2 3") != std::string::npos);
  CHECK_THROWS_AS(inspect_nt(g, "42", 1), Error);

  const auto cfg = load_config(fixtures::data_dir() / "attribute.cfg");
  const auto tsv = inspect_matrix(g, cfg, "person", 1, 1);
  std::istringstream in(tsv);
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  CHECK(header == "id\t1\t2\t3\t4\t5\t6\t7");
  CHECK(row == "1\t1\t1\t1\t0\t0\t0\t0");
  CHECK_THROWS_AS(inspect_matrix(g, cfg, "robot", 1, 1), Error);
  CHECK_THROWS_AS(inspect_matrix(g, cfg, "person", 2, 1), Error);

  const auto dir = fixtures::scratch_dir("inspect");
  run_build(cfg, fixtures::data_dir() / "colours.facts", dir / "model", 1);
  CHECK(inspect_manifest(dir / "model") == fixtures::slurp(dir / "model" / "manifest.tsv"));
}

TEST_SUITE_END();
