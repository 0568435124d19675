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

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "curled/hypergraph.hpp"

namespace curled {

/// A multiset of labels, kept as a sorted (label, count) list.
class Histogram {
 public:
  Histogram() = default;

  void add(std::string_view key, std::size_t count = 1);
  /// Multiset sum.
  void merge(const Histogram& other);

  std::size_t total() const noexcept { return total_; }
  bool empty() const noexcept { return total_ == 0; }
  std::size_t count(std::string_view key) const;
  const std::vector<std::pair<std::string, std::size_t>>& entries() const noexcept {
    return entries_;
  }

  bool operator==(const Histogram&) const = default;

 private:
  std::vector<std::pair<std::string, std::size_t>> entries_;
  std::size_t total_ = 0;
};

/// Multiset of one attribute's values at one level for one vertex type.
struct AttributeBag {
  AttrKind kind = AttrKind::Categorical;
  Histogram categorical;
  std::vector<double> numeric;

  std::size_t size() const noexcept {
    return kind == AttrKind::Numeric ? numeric.size() : categorical.total();
  }
  double mean() const;
  void merge(const AttributeBag& other);
  bool operator==(const AttributeBag&) const = default;
};

struct TypeAttribute {
  std::string type;
  std::string attribute;
  auto operator<=>(const TypeAttribute&) const = default;
};

/// Multisets of one tree level.
struct LevelMultisets {
  std::map<std::string, Histogram> vertices;            // V[l][t]
  std::map<TypeAttribute, AttributeBag> attributes;     // B[l][t][a]

  std::size_t occurrence_count() const;
  bool operator==(const LevelMultisets&) const = default;
};

/// V/E/B decomposition of a neighbourhood tree. `edge_labels[l]` holds the
/// labels of edges between levels l and l+1.
struct NTMultisets {
  std::string root_kind;
  std::size_t depth = 0;
  std::vector<LevelMultisets> levels;  // 0..depth
  std::vector<Histogram> edge_labels;  // 0..depth-1

  /// Level-wise multiset sum. Both sides must have the same depth.
  void merge(const NTMultisets& other);
  bool operator==(const NTMultisets&) const = default;
};

struct Occurrence {
  VertexIndex vertex;
  /// Edge this occurrence was reached through; empty for the root.
  std::optional<EdgeIndex> via;
};

/// Depth-bounded summary of the paths leaving a vertex.
///
/// The children of an occurrence reached through edge e are all co-endpoints
/// of its incident edges other than e itself. The root never reappears below
/// level 0; every other vertex may repeat within and across levels.
struct NeighbourhoodTree {
  VertexIndex root = 0;
  std::size_t depth = 0;
  std::vector<std::vector<Occurrence>> levels;
};

NeighbourhoodTree build_nt(const Hypergraph& g, VertexIndex root, std::size_t depth);
NeighbourhoodTree build_nt(const Hypergraph& g, std::string_view root, std::size_t depth);

/// `B[0]` carries the root's own attribute values.
NTMultisets decompose(const Hypergraph& g, const NeighbourhoodTree& nt);

/// Stable text rendering used by `curled inspect --nt`.
std::string render_nt(const Hypergraph& g, const NeighbourhoodTree& nt);

}  // namespace curled
