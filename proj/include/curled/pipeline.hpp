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
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "curled/hypergraph.hpp"
#include "curled/ingest.hpp"
#include "curled/representation.hpp"

namespace curled {

/// Outcome of selecting k for one (layer, interpretation, algorithm, group).
struct GroupSelection {
  std::size_t layer = 1;
  std::size_t interpretation_index = 1;
  Algorithm algorithm = Algorithm::Spectral;
  ObjectKind kind = ObjectKind::Vertex;
  std::string group;
  std::size_t objects = 0;
  /// "ok", "trivial" (too few objects to score) or "degenerate".
  std::string status;
  SelectionReport report;
};

struct RunManifest {
  std::string config_echo;
  std::vector<GroupSelection> selections;
  std::size_t vocabulary_size = 0;
  std::size_t fact_count = 0;
  std::uint64_t seed = 0;
  /// Wall-clock seconds per stage. Not written to the output directory, which
  /// must not depend on timing.
  std::vector<std::pair<std::string, double>> stage_seconds;
};

struct BuildResult {
  RunManifest manifest;
  CRepresentation representation;
  /// models[l] holds every (interpretation, algorithm) model of layer l+1.
  std::vector<std::vector<ClusterModel>> models;
  /// graphs[l] is the input of layer l+1.
  std::vector<Hypergraph> graphs;
};

/// Runs every layer in memory. Throws NoVertices for an empty graph.
BuildResult build_representation(const Hypergraph& g, const RunConfig& config,
                                 std::size_t threads);

/// Builds and writes facts.pl, manifest.tsv, selection.tsv, summary.tsv plus
/// the data and config echo needed by assign. Output is staged in a sibling
/// directory and renamed into place only on success.
RunManifest run_build(const RunConfig& config, const std::filesystem::path& data,
                      const std::filesystem::path& out_dir, std::size_t threads);

std::string format_selection(const std::vector<GroupSelection>& rows);
std::string format_summary(const RunManifest& manifest);

/// A build output directory loaded back into memory.
struct LoadedModel {
  RunConfig config;
  Hypergraph data;
  std::vector<ManifestRow> manifest;
  std::vector<Fact> facts;
};

/// Throws ModelNotFound when the directory or one of its files is missing.
LoadedModel load_model(const std::filesystem::path& dir);

struct AssignResult {
  std::vector<Fact> facts;
  std::size_t assigned = 0;
  std::size_t skipped = 0;
  /// One line per skipped object.
  std::vector<std::string> messages;
};

/// Maps every vertex and edge of `query` to the model's clusters, layer by
/// layer.
AssignResult assign_representation(const LoadedModel& model, const Hypergraph& query,
                                   std::size_t threads);

AssignResult run_assign(const std::filesystem::path& model_dir,
                        const std::filesystem::path& data,
                        const std::filesystem::path& out_path, std::size_t threads);

std::string inspect_nt(const Hypergraph& g, std::string_view id, std::size_t depth);
/// `interpretation_index` is 1-based into config.interpretations. Throws
/// TargetNotFound for an unknown group or index.
std::string inspect_matrix(const Hypergraph& g, const RunConfig& config,
                           std::string_view group, std::size_t interpretation_index,
                           std::size_t threads);
std::string inspect_manifest(const std::filesystem::path& model_dir);

}  // namespace curled
