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
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "curled/clustering.hpp"
#include "curled/hypergraph.hpp"
#include "curled/selection.hpp"
#include "curled/similarity.hpp"

namespace curled {

/// Clustering of one object group under one (interpretation, algorithm).
struct GroupModel {
  ObjectGroup group;
  /// Empty when the group could not be clustered (e.g. a constant matrix).
  std::optional<Partition> partition;
  std::optional<SelectionReport> report;
  /// Per cluster: position in `group.members` of the member with the highest
  /// mean similarity to the rest of its cluster.
  std::vector<std::size_t> medoids;
  std::string failure;

  bool clustered() const noexcept { return partition.has_value(); }
};

/// All groups of one layer clustered under one (interpretation, algorithm).
struct ClusterModel {
  std::size_t layer = 1;
  std::size_t interpretation_index = 1;  // 1-based, as in predicate names
  SimilarityInterpretation interpretation{{1.0, 0.0, 0.0, 0.0, 0.0}};
  Algorithm algorithm = Algorithm::Spectral;
  CompareOptions compare;
  std::vector<GroupModel> groups;

  const GroupModel* find_group(ObjectKind kind, std::string_view name) const;
  /// `I<interp>_<alg>`, the attribute name used by lift_layer.
  std::string attribute_name() const;
};

/// `cl_L<layer>_I<interp>_<alg>_<group>_<cluster>`
std::string predicate_name(std::size_t layer, std::size_t interpretation_index,
                           Algorithm algorithm, std::string_view group, std::size_t cluster);

struct Fact {
  std::string predicate;
  std::vector<std::string> args;
  bool operator==(const Fact&) const = default;
  auto operator<=>(const Fact&) const = default;
};

struct ManifestRow {
  std::string predicate;
  std::size_t layer = 1;
  std::size_t interpretation_index = 1;
  std::array<double, kCoreComponents> raw_weights{};
  Algorithm algorithm = Algorithm::Spectral;
  std::string group;
  std::size_t k = 0;
  Criterion criterion = Criterion::None;
  std::optional<double> score;
};

struct CRepresentation {
  std::vector<Fact> facts;
  std::vector<ManifestRow> manifest;

  void append(CRepresentation other);
};

/// Fills in the medoids of every clustered group from its similarity matrix.
void compute_medoids(GroupModel& group, const Eigen::MatrixXd& similarity);

/// Facts grouped by predicate (in model order), members by id within each.
CRepresentation emit(const ClusterModel& model, const Hypergraph& g);

/// `pred("a","b").` with `"` and `\` escaped.
std::string format_fact(const Fact& fact);
std::string format_facts(const std::vector<Fact>& facts);
/// Parses lines written by format_facts. Throws ParseError.
std::vector<Fact> parse_fact_lines(std::istream& in);

inline constexpr std::string_view kManifestHeader =
    "predicate\tlayer\tinterpretation_index\traw_weights\talgorithm\tgroup\tk\tcriterion\tscore";

std::string format_manifest(const std::vector<ManifestRow>& rows);
std::vector<ManifestRow> parse_manifest(std::istream& in);

/// Cluster membership of one object under the model's interpretation: the
/// cluster whose members have the highest mean similarity to it (ties go to
/// the lower cluster index). Members are read from `training`, the object from
/// `query`, and numeric ranges from the training graph. Throws UnknownGroup.
std::size_t assign(const ClusterModel& model, const ProfileStore& training,
                   const ProfileStore& query, ObjectKind kind, std::size_t object);

/// Group name of a query object: its type name or edge-signature name.
std::string group_name_of(const Hypergraph& g, ObjectKind kind, std::size_t object);

/// Per-layer cluster labels for every vertex and edge of one graph under one
/// (interpretation, algorithm).
struct LayerLabels {
  std::string attribute;
  std::vector<std::optional<std::string>> vertex_predicate;
  std::vector<std::optional<std::string>> edge_predicate;
};

LayerLabels labels_from_model(const ClusterModel& model, const Hypergraph& g);

/// Same vertex ids; every vertex type's schema becomes one categorical
/// attribute per labelling holding the cluster predicate. Edges get one copy
/// per labelling that clusters them, relabelled with their predicate; edges no
/// labelling clusters are carried over once with their original label.
Hypergraph lift_layer(const std::vector<LayerLabels>& labellings, const Hypergraph& g);
Hypergraph lift_layer(const std::vector<ClusterModel>& models, const Hypergraph& g);

/// Value given to vertices whose group has no clustering under a labelling.
inline constexpr std::string_view kUnclustered = "unclustered";

}  // namespace curled
