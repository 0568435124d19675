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
#include <cstdint>
#include <filesystem>
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

// Fact file grammar, one statement per line, '#' starts a comment:
//
//   type <TypeName> <attr>:<categorical|numeric> ...
//   node <TypeName> <id> <value> ...
//   edge <label> <id1> <id2> [... <idn>]

/// Errors carry the 1-based line number in their message.
Hypergraph parse_facts(std::istream& in);
Hypergraph parse_facts(std::string_view text);
Hypergraph load_facts(const std::filesystem::path& path);

/// Types in declaration order, then nodes, then edges, after a one-line
/// header comment.
std::string serialize_facts(const Hypergraph& g);

struct RunConfig {
  std::size_t depth = 2;
  std::vector<SimilarityInterpretation> interpretations;
  std::vector<Algorithm> algorithms{Algorithm::Spectral, Algorithm::Hierarchical};
  Criterion selection = Criterion::Difference;
  double alpha = 0.05;
  /// Upper bound on k; the effective bound per group is min(k_max, n - 1).
  std::size_t k_max = 20;
  EdgeMode edge_mode = EdgeMode::Merging;
  Summarizer summarizer = Summarizer::Mean;
  std::size_t layers = 1;
  std::uint64_t seed = 42;
};

/// The three interpretations used when a config lists none: attributes only,
/// links only, and everything equally.
std::vector<SimilarityInterpretation> default_interpretations();

/// `key = value` lines; `interpretation` may repeat. Unspecified keys keep
/// their defaults. Throws ParseError or InvalidValue.
RunConfig parse_config(std::istream& in);
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

/// Writes every key explicitly; parse_config reads it back unchanged.
std::string serialize_config(const RunConfig& config);

}  // namespace curled
