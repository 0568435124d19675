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
#include <string_view>
#include <vector>

namespace curled {

enum class Algorithm { Spectral, Hierarchical };

std::string_view to_string(Algorithm a) noexcept;
/// One-letter tag used in predicate names: `s` or `h`.
char short_tag(Algorithm a) noexcept;

/// Cluster labels in 0..k-1, every label used. Labels are canonical: clusters
/// are numbered in order of their smallest member index.
struct Partition {
  std::vector<std::size_t> labels;
  std::size_t k = 0;
  Algorithm algorithm = Algorithm::Hierarchical;
  std::uint64_t seed = 0;

  std::vector<std::vector<std::size_t>> clusters() const;
};

/// Renumbers labels canonically and recomputes k.
Partition canonical_partition(std::vector<std::size_t> labels, Algorithm algorithm,
                              std::uint64_t seed = 0);

/// True when the two labelings induce the same set of clusters.
bool same_clusters(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b);

/// Throws DegenerateMatrix when every off-diagonal entry is the same.
void require_non_degenerate(const Eigen::MatrixXd& m);

/// Normalized-Laplacian embedding of a similarity matrix. The eigenvectors
/// are computed once and reused for every k.
class SpectralEmbedding {
 public:
  explicit SpectralEmbedding(const Eigen::MatrixXd& similarity);

  std::size_t size() const noexcept { return static_cast<std::size_t>(vectors_.rows()); }
  const Eigen::VectorXd& eigenvalues() const noexcept { return values_; }

  /// Row-normalized embedding on the k eigenvectors of smallest eigenvalue.
  Eigen::MatrixXd embed(std::size_t k) const;

  /// Seeded farthest-first initialization followed by Lloyd iterations.
  Partition cluster(std::size_t k, std::uint64_t seed) const;

 private:
  Eigen::VectorXd values_;
  Eigen::MatrixXd vectors_;
};

/// Throws InvalidK unless 2 <= k <= n-1, DegenerateMatrix for constant input.
Partition spectral_cluster(const Eigen::MatrixXd& similarity, std::size_t k,
                           std::uint64_t seed);

struct Merge {
  std::vector<std::size_t> left;   // sorted members
  std::vector<std::size_t> right;  // sorted members; left.front() < right.front()
  double height = 0.0;
};

/// Average-linkage (UPGMA) merge sequence. Equal costs are broken by the
/// smallest (min, max) pair of the two clusters' smallest member indices.
class Dendrogram {
 public:
  explicit Dendrogram(const Eigen::MatrixXd& dissimilarity);

  std::size_t size() const noexcept { return n_; }
  const std::vector<Merge>& merges() const noexcept { return merges_; }

  /// Replays the first n-k merges. 1 <= k <= n.
  Partition cut(std::size_t k) const;

 private:
  std::size_t n_;
  std::vector<Merge> merges_;
};

/// Throws InvalidK unless 2 <= k <= n-1, DegenerateMatrix for constant input.
Partition hierarchical_cluster(const Eigen::MatrixXd& dissimilarity, std::size_t k);

/// Costs closer than this count as equal for tie-breaking.
inline constexpr double kLinkageTieTolerance = 1e-12;

}  // namespace curled
