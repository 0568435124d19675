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

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "curled/error.hpp"
#include "curled/similarity.hpp"
#include "fixtures.hpp"

using namespace curled;

namespace {

Histogram hist(std::initializer_list<const char*> items) {
  Histogram h;
  for (const char* s : items) h.add(s);
  return h;
}

const SimilarityInterpretation kAttr{{1, 0, 0, 0, 0}};

EdgeIndex edge_between(const Hypergraph& g, const std::string& a, const std::string& b) {
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    const auto& ends = g.edge(e).endpoints;
    if (g.vertex(ends[0]).id == a && g.vertex(ends[1]).id == b) return e;
  }
  FAIL("no such edge");
  return 0;
}

}  // namespace

TEST_SUITE_BEGIN("similarity");

TEST_CASE("tv distance") {
  CHECK(tv_distance(hist({"a", "a", "b"}), hist({"a", "b", "b"})) == doctest::Approx(1.0 / 3));
  CHECK(tv_distance(hist({"a", "b"}), hist({"a", "b"})) == 0.0);
  CHECK(tv_distance(hist({"a"}), hist({"b"})) == 1.0);
  CHECK(tv_distance(Histogram{}, Histogram{}) == 0.0);
  CHECK(tv_distance(hist({"a"}), Histogram{}) == 1.0);
}

TEST_CASE("multiset jaccard") {
  CHECK(jaccard_multiset(hist({"a", "a", "b"}), hist({"a", "b"})) == doctest::Approx(2.0 / 3));
  CHECK(jaccard_multiset(hist({"a", "b"}), hist({"a", "b"})) == 1.0);
  CHECK(jaccard_multiset(hist({"a"}), hist({"b"})) == 0.0);
  CHECK(jaccard_multiset(Histogram{}, Histogram{}) == 1.0);
}

TEST_CASE("interpretation validation") {
  CHECK_THROWS_AS(SimilarityInterpretation({0, 0, 0, 0, 0}), Error);
  CHECK_THROWS_AS(SimilarityInterpretation({-1, 1, 0, 0, 0}), Error);
  const SimilarityInterpretation w{{0.5, 0.5, 0, 0, 0}};
  CHECK(w.weights()[0] == 0.5);
  const SimilarityInterpretation scaled{{2, 2, 0, 0, 0}};
  CHECK(scaled.weights()[1] == 0.5);
  CHECK(scaled.raw()[1] == 2.0);
}

TEST_CASE("self comparison is zero") {
  const auto g = fixtures::colours();
  for (const auto& v : g.vertices()) {
    const auto nt = build_nt(g, v.id, 2);
    const auto core = core_dissimilarities(nt, nt, g);
    for (const auto& c : core.d) {
      if (c) CHECK(*c == 0.0);
    }
    CHECK(nt_dissimilarity(nt, nt, SimilarityInterpretation{{1, 1, 1, 1, 1}}, g) == 0.0);
  }
}

TEST_CASE("root attribute dissimilarity") {
  const auto g = fixtures::colours();
  const auto n1 = build_nt(g, "1", 2);
  CHECK(nt_dissimilarity(n1, build_nt(g, "2", 2), kAttr, g) == 0.0);
  CHECK(nt_dissimilarity(n1, build_nt(g, "6", 2), kAttr, g) == 1.0);
}

TEST_CASE("numeric attributes use the dataset range") {
  Hypergraph g;
  g.add_type({"m", {{"x", AttrKind::Numeric}}});
  g.add_vertex("m", "a", {AttributeValue::numeric(0)});
  g.add_vertex("m", "b", {AttributeValue::numeric(1)});
  g.add_vertex("m", "c", {AttributeValue::numeric(4)});
  CHECK(nt_dissimilarity(build_nt(g, "a", 1), build_nt(g, "b", 1), kAttr, g) ==
        doctest::Approx(0.25));
  CHECK(nt_dissimilarity(build_nt(g, "a", 1), build_nt(g, "c", 1), kAttr, g) == 1.0);
}

TEST_CASE("absent components renormalize and all-absent throws") {
  Hypergraph g;
  g.add_type({"t", {{"c", AttrKind::Categorical}}});
  g.add_vertex("t", "p", {AttributeValue::categorical("x")});
  g.add_vertex("t", "q", {AttributeValue::categorical("y")});
  const auto p = build_nt(g, "p", 1);
  const auto q = build_nt(g, "q", 1);
  const auto core = core_dissimilarities(p, q, g);
  CHECK(core.d[0] == 1.0);
  CHECK_FALSE(core.d[2].has_value());
  CHECK(nt_dissimilarity(p, q, SimilarityInterpretation{{1, 0, 1, 0, 0}}, g) == 1.0);
  try {
    nt_dissimilarity(p, q, SimilarityInterpretation{{0, 0, 1, 0, 0}}, g);
    FAIL("expected NoComparableComponent");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoComparableComponent);
  }
}

TEST_CASE("type mismatch") {
  Hypergraph g;
  g.add_type({"t", {}});
  g.add_type({"u", {}});
  g.add_vertex("t", "p", {});
  g.add_vertex("u", "q", {});
  CHECK_THROWS_AS(nt_dissimilarity(build_nt(g, "p", 1), build_nt(g, "q", 1), kAttr, g), Error);
}

TEST_CASE("edge comparisons on the colour graph") {
  const auto g = fixtures::colours();
  const auto e12 = edge_between(g, "1", "2");
  const auto e67 = edge_between(g, "6", "7");
  const auto e45 = edge_between(g, "4", "5");
  CHECK(edge_dissimilarity_combination(g, e12, e67, kAttr, 2) == 1.0);
  CHECK(edge_dissimilarity_merging(g, e12, e45, kAttr, 2) == 1.0);
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    CHECK(edge_dissimilarity_combination(g, e, e, kAttr, 2) == 0.0);
    CHECK(edge_dissimilarity_merging(g, e, e, kAttr, 2) == 0.0);
  }
}

TEST_CASE("merging ignores endpoint order, combination does not") {
  Hypergraph g;
  g.add_type({"t", {{"c", AttrKind::Categorical}}});
  g.add_vertex("t", "u", {AttributeValue::categorical("x")});
  g.add_vertex("t", "v", {AttributeValue::categorical("y")});
  const auto uv = g.add_hyperedge("r", std::vector<VertexIndex>{0, 1});
  const auto vu = g.add_hyperedge("r", std::vector<VertexIndex>{1, 0});
  const SimilarityInterpretation all{{1, 1, 1, 1, 1}};
  CHECK(edge_dissimilarity_merging(g, uv, vu, all, 2) == 0.0);
  CHECK(edge_dissimilarity_combination(g, uv, vu, kAttr, 2) == 1.0);
  CHECK(edge_dissimilarity_combination(g, uv, vu, kAttr, 2, Summarizer::Min) == 1.0);
}

TEST_CASE("identical isolated vertices") {
  Hypergraph g;
  g.add_type({"t", {{"c", AttrKind::Categorical}}});
  g.add_vertex("t", "a", {AttributeValue::categorical("x")});
  g.add_vertex("t", "b", {AttributeValue::categorical("x")});
  const ProfileStore store(g, 2);
  for (const auto& interp : {kAttr, SimilarityInterpretation{{1, 1, 1, 1, 1}}}) {
    const auto m = similarity_matrix(store, vertex_groups(g).at(0), interp, {});
    CHECK(m.values == Eigen::MatrixXd::Ones(2, 2));
  }
}

TEST_CASE("too few objects") {
  Hypergraph g;
  g.add_type({"t", {}});
  g.add_vertex("t", "a", {});
  const ProfileStore store(g, 1);
  CHECK_THROWS_AS(similarity_matrix(store, vertex_groups(g).at(0), kAttr, {}), Error);
}

TEST_CASE("colour graph person matrix is two blocks") {
  const auto g = fixtures::colours();
  const ProfileStore store(g, 2);
  const auto m = similarity_matrix(store, vertex_groups(g).at(0), kAttr, {});
  REQUIRE(m.size() == 7);
  for (std::size_t i = 0; i < 7; ++i) {
    for (std::size_t j = 0; j < 7; ++j) {
      const bool same = (i < 3) == (j < 3);
      CHECK(m.values(i, j) == (same ? 1.0 : 0.0));
    }
  }
}

TEST_CASE("colour graph edge matrix matches colour histograms") {
  const auto g = fixtures::colours();
  const ProfileStore store(g, 2);
  const auto group = edge_groups(g).at(0);
  CHECK(group.name == "edge_person_person");
  for (EdgeMode mode : {EdgeMode::Merging, EdgeMode::Combination}) {
    const auto m = similarity_matrix(store, group, kAttr, {mode, Summarizer::Mean});
    for (std::size_t i = 0; i < group.members.size(); ++i) {
      for (std::size_t j = 0; j < group.members.size(); ++j) {
        // oracle: number of black endpoints decides the root histogram
        auto blacks = [&](std::size_t e) {
          int n = 0;
          for (auto v : g.edge(group.members[e]).endpoints) {
            n += g.vertex(v).attributes[0].label() == "black";
          }
          return n;
        };
        const double tv = std::abs(blacks(i) - blacks(j)) / 2.0;
        CHECK(m.values(i, j) == doctest::Approx(1.0 - tv).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("matrix does not depend on the thread count") {
  const auto g = fixtures::colours();
  const ProfileStore one(g, 2, 1);
  const ProfileStore many(g, 2, 4);
  const SimilarityInterpretation all{{0.2, 0.2, 0.2, 0.2, 0.2}};
  for (const auto& group : edge_groups(g)) {
    CHECK(similarity_matrix(one, group, all, {}, 1).values ==
          similarity_matrix(many, group, all, {}, 4).values);
  }
  CHECK(matrix_tsv(similarity_matrix(one, vertex_groups(g)[0], all, {}, 1)) ==
        matrix_tsv(similarity_matrix(many, vertex_groups(g)[0], all, {}, 3)));
}

TEST_SUITE_END();
