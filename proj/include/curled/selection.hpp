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
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "curled/clustering.hpp"

namespace curled {

enum class Criterion { Difference, Silhouette, None };

std::string_view to_string(Criterion c) noexcept;

struct CandidateScore {
  std::size_t k = 0;
  /// Empty when k is not a candidate (zero denominator in the difference
  /// criterion).
  std::optional<double> score;
};

struct SelectionReport {
  Criterion criterion = Criterion::None;
  std::size_t k_min = 0;
  std::size_t k_max = 0;
  std::vector<CandidateScore> scores;  // ascending k
  std::size_t chosen_k = 0;

  /// Score recorded for the chosen k, if any.
  std::optional<double> chosen_score() const;
};

/// Mean dissimilarity over all within-cluster pairs. Zero when every cluster
/// is a singleton.
double intra_cluster_dissimilarity(const Eigen::MatrixXd& dissimilarity,
                                   const Partition& partition);

/// |(C(k-1) - C(k)) / (C(k) - C(k+1))| - alpha * k. Empty when the
/// denominator magnitude is below 1e-9. Throws MissingNeighbourValue.
std::optional<double> difference_criterion(const std::map<std::size_t, double>& intra,
                                           std::size_t k, double alpha);

/// Mean over objects of (b - a) / max(a, b), with a the mean dissimilarity to
/// the object's own cluster and b the smallest mean dissimilarity to another
/// cluster. Singletons score 0. Throws InvalidPartition for k < 2.
double silhouette_index(const Eigen::MatrixXd& dissimilarity, const Partition& partition);

struct SelectionOptions {
  Algorithm algorithm = Algorithm::Hierarchical;
  Criterion criterion = Criterion::Difference;
  double alpha = 0.05;
  std::size_t k_max = 20;
  std::uint64_t seed = 42;
};

/// Clusters a similarity matrix at every candidate k and keeps the best by the
/// configured criterion (ties go to the smaller k). Groups of fewer than four
/// objects skip scoring and use k = min(2, n).
std::pair<Partition, SelectionReport> select_k(const Eigen::MatrixXd& similarity,
                                               const SelectionOptions& options);

}  // namespace curled
