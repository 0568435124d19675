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

#include <Eigen/Dense>
#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "curled/hypergraph.hpp"
#include "curled/neighbourhood_tree.hpp"

namespace curled {

inline constexpr std::size_t kCoreComponents = 5;

/// Weights over the five core similarities: root attributes, neighbour
/// attributes, connectivity, vertex identity, edge labels.
class SimilarityInterpretation {
 public:
  /// Throws InvalidValue unless every weight is finite and >= 0 and at least
  /// one is > 0.
  explicit SimilarityInterpretation(std::array<double, kCoreComponents> raw);

  const std::array<double, kCoreComponents>& raw() const noexcept { return raw_; }
  /// Normalized to sum 1.
  const std::array<double, kCoreComponents>& weights() const noexcept { return weights_; }

  bool operator==(const SimilarityInterpretation&) const = default;

 private:
  std::array<double, kCoreComponents> raw_;
  std::array<double, kCoreComponents> weights_;
};

/// Components without comparable data are empty rather than zero.
struct CoreDissimilarityVector {
  std::array<std::optional<double>, kCoreComponents> d;
};

enum class EdgeMode { Combination, Merging };
enum class Summarizer { Mean, Min, Max };

std::string_view to_string(EdgeMode mode) noexcept;
std::string_view to_string(Summarizer s) noexcept;

/// Total-variation distance of the normalized histograms. Both empty gives 0,
/// exactly one empty gives 1.
double tv_distance(const Histogram& a, const Histogram& b);

/// Multiset Jaccard index (sum of min counts over sum of max counts). Both
/// empty gives 1.
double jaccard_multiset(const Histogram& a, const Histogram& b);

/// The numeric attribute ranges used for normalization come from `ranges`.
CoreDissimilarityVector core_dissimilarities(const NTMultisets& a, const NTMultisets& b,
                                             const Hypergraph& ranges);
CoreDissimilarityVector core_dissimilarities(const NeighbourhoodTree& a,
                                             const NeighbourhoodTree& b,
                                             const Hypergraph& g);

/// Weighted sum over the present components, renormalized by their total
/// weight. Empty when every weighted component is absent.
std::optional<double> weighted_dissimilarity(const CoreDissimilarityVector& core,
                                             const SimilarityInterpretation& interp);

/// Throws TypeMismatch or NoComparableComponent.
double nt_dissimilarity(const NTMultisets& a, const NTMultisets& b,
                        const SimilarityInterpretation& interp, const Hypergraph& ranges);
double nt_dissimilarity(const NeighbourhoodTree& a, const NeighbourhoodTree& b,
                        const SimilarityInterpretation& interp, const Hypergraph& g);

/// Order-respecting comparison of two same-signature edges.
double edge_dissimilarity_combination(const Hypergraph& g, EdgeIndex e1, EdgeIndex e2,
                                      const SimilarityInterpretation& interp,
                                      std::size_t depth,
                                      Summarizer summarizer = Summarizer::Mean);

/// Compares the level-wise unions of each edge's endpoint trees.
double edge_dissimilarity_merging(const Hypergraph& g, EdgeIndex e1, EdgeIndex e2,
                                  const SimilarityInterpretation& interp,
                                  std::size_t depth);

/// Union of the endpoint trees of an edge, tagged with the edge signature.
NTMultisets merge_edge(const Hypergraph& g, EdgeIndex e,
                       std::span<const NTMultisets> vertex_multisets);

/// Decomposed neighbourhood trees for every vertex (and merged trees for every
/// edge) of one graph at one depth. Read-only after construction.
class ProfileStore {
 public:
  ProfileStore(const Hypergraph& g, std::size_t depth, std::size_t threads = 1);

  const Hypergraph& graph() const noexcept { return *graph_; }
  std::size_t depth() const noexcept { return depth_; }
  const NTMultisets& vertex(VertexIndex v) const { return vertices_.at(v); }
  const NTMultisets& merged_edge(EdgeIndex e) const { return merged_.at(e); }

 private:
  const Hypergraph* graph_;
  std::size_t depth_;
  std::vector<NTMultisets> vertices_;
  std::vector<NTMultisets> merged_;
};

enum class ObjectKind { Vertex, Edge };

/// Same-type vertices or same-signature edges; clusters never mix groups.
struct ObjectGroup {
  ObjectKind kind = ObjectKind::Vertex;
  std::string name;
  std::vector<std::size_t> members;        // vertex or edge indices
  std::vector<std::string> member_names;   // display ids, same order
};

/// One group per vertex type that has vertices, in declaration order; members
/// sorted by id.
std::vector<ObjectGroup> vertex_groups(const Hypergraph& g);
/// One group per edge signature, in order of first appearance; members in
/// edge order.
std::vector<ObjectGroup> edge_groups(const Hypergraph& g);

/// `label(id1,id2,...)`
std::string edge_display_name(const Hypergraph& g, EdgeIndex e);

/// Comparison settings shared by every object of a group.
struct CompareOptions {
  EdgeMode edge_mode = EdgeMode::Merging;
  Summarizer summarizer = Summarizer::Mean;
};

/// Dissimilarity between two objects of the same group, possibly drawn from
/// different stores (held-out objects against training members). Ranges come
/// from `ranges`. Pairs with no comparable component count as identical.
double object_dissimilarity(ObjectKind kind, const ProfileStore& sa, std::size_t a,
                            const ProfileStore& sb, std::size_t b,
                            const SimilarityInterpretation& interp,
                            const CompareOptions& options, const Hypergraph& ranges);

struct SimilarityMatrix {
  std::vector<std::string> ids;
  Eigen::MatrixXd values;  // symmetric, unit diagonal, entries in [0,1]
  SimilarityInterpretation interpretation;
  ObjectKind kind = ObjectKind::Vertex;
  std::string group;

  std::size_t size() const noexcept { return ids.size(); }
  Eigen::MatrixXd dissimilarity() const;
};

/// Throws TooFewObjects for groups with fewer than 2 members.
SimilarityMatrix similarity_matrix(const ProfileStore& store, const ObjectGroup& group,
                                   const SimilarityInterpretation& interp,
                                   const CompareOptions& options, std::size_t threads = 1);

/// TSV with a header row of object ids.
std::string matrix_tsv(const SimilarityMatrix& m);

}  // namespace curled
