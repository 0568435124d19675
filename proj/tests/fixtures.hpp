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

// Shared fixtures and independent oracles for the test binaries.

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "curled/hypergraph.hpp"
#include "curled/ingest.hpp"

namespace fixtures {

// Seven people, black 1-3 and red 4-7.
inline constexpr const char* kColours =
    "type person colour:categorical\n"
    "node person 1 black\n"
    "node person 2 black\n"
    "node person 3 black\n"
    "node person 4 red\n"
    "node person 5 red\n"
    "node person 6 red\n"
    "node person 7 red\n"
    "edge edge 1 2\n"
    "edge edge 1 3\n"
    "edge edge 2 4\n"
    "edge edge 3 5\n"
    "edge edge 4 5\n"
    "edge edge 4 6\n"
    "edge edge 6 7\n";

inline curled::Hypergraph colours() { return curled::parse_facts(std::string_view(kColours)); }

inline std::filesystem::path data_dir() { return CURLED_DATA_DIR; }

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline std::filesystem::path scratch_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("curled_test_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

// Sets of clusters, each a sorted set of ids, for order-free comparison.
inline std::set<std::set<std::string>> as_sets(const std::vector<std::size_t>& labels,
                                               const std::vector<std::string>& ids) {
  std::map<std::size_t, std::set<std::string>> by;
  for (std::size_t i = 0; i < labels.size(); ++i) by[labels[i]].insert(ids[i]);
  std::set<std::set<std::string>> out;
  for (auto& [_, s] : by) out.insert(s);
  return out;
}

inline double choose2(double x) { return x * (x - 1.0) / 2.0; }

// Hubert-Arabie adjusted Rand index from the contingency table.
inline double adjusted_rand_index(const std::vector<std::size_t>& a,
                                  const std::vector<std::size_t>& b) {
  std::map<std::pair<std::size_t, std::size_t>, double> table;
  std::map<std::size_t, double> ra, rb;
  for (std::size_t i = 0; i < a.size(); ++i) {
    table[{a[i], b[i]}] += 1;
    ra[a[i]] += 1;
    rb[b[i]] += 1;
  }
  double index = 0, sa = 0, sb = 0;
  for (auto& [_, c] : table) index += choose2(c);
  for (auto& [_, c] : ra) sa += choose2(c);
  for (auto& [_, c] : rb) sb += choose2(c);
  const double expected = sa * sb / choose2(static_cast<double>(a.size()));
  const double maximum = (sa + sb) / 2.0;
  if (maximum == expected) return 1.0;
  return (index - expected) / (maximum - expected);
}

// blocks x size objects; within/across similarity with symmetric uniform noise.
inline Eigen::MatrixXd planted_similarity(std::size_t blocks, std::size_t size, double within,
                                          double across, double noise, std::uint64_t seed,
                                          std::vector<std::size_t>* truth = nullptr) {
  const std::size_t n = blocks * size;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-noise, noise);
  Eigen::MatrixXd s = Eigen::MatrixXd::Identity(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double base = (i / size == j / size) ? within : across;
      s(i, j) = s(j, i) = std::clamp(base + u(rng), 0.0, 1.0);
    }
  }
  if (truth) {
    truth->clear();
    for (std::size_t i = 0; i < n; ++i) truth->push_back(i / size);
  }
  return s;
}

inline Eigen::MatrixXd block_dissimilarity(const std::vector<std::size_t>& blocks, double within,
                                           double across) {
  const auto n = static_cast<Eigen::Index>(blocks.size());
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i != j) d(i, j) = blocks[i] == blocks[j] ? within : across;
    }
  }
  return d;
}

inline Eigen::MatrixXd random_dissimilarity(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) d(i, j) = d(j, i) = u(rng);
  }
  return d;
}

// Random typed hypergraph with two vertex types (one categorical and one
// numeric attribute on the first), binary and ternary edges, self-loops and
// isolated vertices all possible.
inline curled::Hypergraph random_graph(std::mt19937_64& rng) {
  using curled::AttributeValue;
  curled::Hypergraph g;
  g.add_type({"a", {{"c", curled::AttrKind::Categorical}, {"x", curled::AttrKind::Numeric}}});
  g.add_type({"b", {{"c", curled::AttrKind::Categorical}}});
  std::uniform_int_distribution<int> nv(2, 9);
  std::uniform_int_distribution<int> colour(0, 2);
  std::uniform_real_distribution<double> num(-5.0, 5.0);
  const int n = nv(rng);
  std::vector<std::string> ids;
  for (int i = 0; i < n; ++i) {
    const std::string id = "v" + std::to_string(i);
    ids.push_back(id);
    if (i % 3 == 2) {
      g.add_vertex("b", id, {AttributeValue::categorical("c" + std::to_string(colour(rng)))});
    } else {
      g.add_vertex("a", id, {AttributeValue::categorical("c" + std::to_string(colour(rng))),
                             AttributeValue::numeric(std::round(num(rng) * 4) / 4)});
    }
  }
  std::uniform_int_distribution<int> ne(1, 12);
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::uniform_int_distribution<int> label(0, 2);
  const int m = ne(rng);
  for (int e = 0; e < m; ++e) {
    const int arity = (e % 4 == 3) ? 3 : 2;
    std::vector<std::string> ends;
    for (int k = 0; k < arity; ++k) ends.push_back(ids[pick(rng)]);
    g.add_hyperedge("r" + std::to_string(label(rng)), std::span<const std::string>(ends));
  }
  return g;
}

struct OracleMerge {
  std::vector<std::size_t> left, right;
  double height;
};

// Average linkage by brute force: every step recomputes the mean pairwise
// dissimilarity of every cluster pair from the raw matrix. Near-equal costs
// go to the pair with the smallest (min, max) of the clusters' first members.
inline std::vector<OracleMerge> oracle_average_linkage(const Eigen::MatrixXd& d) {
  std::vector<std::vector<std::size_t>> clusters;
  for (Eigen::Index i = 0; i < d.rows(); ++i) clusters.push_back({static_cast<std::size_t>(i)});
  std::vector<OracleMerge> out;
  while (clusters.size() > 1) {
    std::sort(clusters.begin(), clusters.end());
    std::vector<std::tuple<double, std::size_t, std::size_t>> costs;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < clusters.size(); ++a) {
      for (std::size_t b = a + 1; b < clusters.size(); ++b) {
        double sum = 0;
        for (auto i : clusters[a]) {
          for (auto j : clusters[b]) sum += d(i, j);
        }
        const double cost = sum / static_cast<double>(clusters[a].size() * clusters[b].size());
        costs.emplace_back(cost, a, b);
        best = std::min(best, cost);
      }
    }
    // clusters are sorted by first member, so pairs come in tie-break order
    std::size_t a = 0, b = 0;
    for (const auto& [cost, ca, cb] : costs) {
      if (cost <= best + 1e-12) {
        a = ca;
        b = cb;
        best = cost;
        break;
      }
    }
    out.push_back({clusters[a], clusters[b], best});
    auto merged = clusters[a];
    merged.insert(merged.end(), clusters[b].begin(), clusters[b].end());
    std::sort(merged.begin(), merged.end());
    clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(b));
    clusters[a] = merged;
  }
  return out;
}

}  // namespace fixtures
