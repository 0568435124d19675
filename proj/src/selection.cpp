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

#include "curled/selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "curled/error.hpp"

namespace curled {

std::string_view to_string(Criterion c) noexcept {
  switch (c) {
    case Criterion::Difference: return "difference";
    case Criterion::Silhouette: return "silhouette";
    case Criterion::None: return "none";
  }
  return "none";
}

std::optional<double> SelectionReport::chosen_score() const {
  for (const auto& s : scores) {
    if (s.k == chosen_k) return s.score;
  }
  return std::nullopt;
}

double intra_cluster_dissimilarity(const Eigen::MatrixXd& dissimilarity,
                                   const Partition& partition) {
  const std::size_t n = partition.labels.size();
  double sum = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (partition.labels[i] != partition.labels[j]) continue;
      sum += dissimilarity(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      ++pairs;
    }
  }
  return pairs == 0 ? 0.0 : sum / static_cast<double>(pairs);
}

std::optional<double> difference_criterion(const std::map<std::size_t, double>& intra,
                                           std::size_t k, double alpha) {
  if (k < 2) raise(ErrorCode::MissingNeighbourValue, "difference criterion needs k >= 2");
  auto at = [&](std::size_t key) {
    auto it = intra.find(key);
    if (it == intra.end()) {
      raise(ErrorCode::MissingNeighbourValue, "C(" + std::to_string(key) + ") missing");
    }
    return it->second;
  };
  const double prev = at(k - 1);
  const double here = at(k);
  const double next = at(k + 1);
  const double denominator = here - next;
  if (std::abs(denominator) < 1e-9) return std::nullopt;
  return std::abs((prev - here) / denominator) - alpha * static_cast<double>(k);
}

double silhouette_index(const Eigen::MatrixXd& dissimilarity, const Partition& partition) {
  if (partition.k < 2) raise(ErrorCode::InvalidPartition, "silhouette needs k >= 2");
  const std::size_t n = partition.labels.size();
  const std::size_t k = partition.k;
  std::vector<std::size_t> sizes(k, 0);
  for (auto l : partition.labels) ++sizes[l];

  double total = 0.0;
  std::vector<double> to_cluster(k);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t own = partition.labels[i];
    if (sizes[own] < 2) continue;
    std::fill(to_cluster.begin(), to_cluster.end(), 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      to_cluster[partition.labels[j]] +=
          dissimilarity(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
    const double a = to_cluster[own] / static_cast<double>(sizes[own] - 1);
    double b = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < k; ++c) {
      if (c == own || sizes[c] == 0) continue;
      b = std::min(b, to_cluster[c] / static_cast<double>(sizes[c]));
    }
    const double denom = std::max(a, b);
    if (denom > 0.0) total += (b - a) / denom;
  }
  return total / static_cast<double>(n);
}

std::pair<Partition, SelectionReport> select_k(const Eigen::MatrixXd& similarity,
                                               const SelectionOptions& options) {
  const std::size_t n = static_cast<std::size_t>(similarity.rows());
  SelectionReport report;
  if (n == 0) raise(ErrorCode::TooFewObjects, "empty group");

  if (n < 4) {
    report.criterion = Criterion::None;
    report.chosen_k = std::min<std::size_t>(2, n);
    report.k_min = report.k_max = report.chosen_k;
    if (n < 3) {
      std::vector<std::size_t> labels(n);
      for (std::size_t i = 0; i < n; ++i) labels[i] = i;
      return {canonical_partition(std::move(labels), options.algorithm, options.seed),
              report};
    }
    Partition p = options.algorithm == Algorithm::Spectral
                      ? spectral_cluster(similarity, 2, options.seed)
                      : hierarchical_cluster(Eigen::MatrixXd::Ones(3, 3) - similarity, 2);
    return {std::move(p), report};
  }

  require_non_degenerate(similarity);
  const Eigen::MatrixXd dissimilarity = Eigen::MatrixXd::Ones(n, n) - similarity;
  const std::size_t k_hi = std::min(options.k_max, n - 1);
  report.criterion = options.criterion;
  if (options.criterion == Criterion::Difference) {
    if (k_hi < 3) {
      raise(ErrorCode::RangeTooSmall, "difference criterion needs k_max >= 3, got " +
                                          std::to_string(k_hi));
    }
    report.k_min = 2;
    report.k_max = k_hi - 1;
  } else {
    if (k_hi < 2) raise(ErrorCode::RangeTooSmall, "silhouette needs k_max >= 2");
    report.k_min = 2;
    report.k_max = k_hi;
  }

  std::optional<SpectralEmbedding> spectral;
  std::optional<Dendrogram> dendrogram;
  if (options.algorithm == Algorithm::Spectral) {
    spectral.emplace(similarity);
  } else {
    dendrogram.emplace(dissimilarity);
  }
  std::map<std::size_t, Partition> partitions;
  for (std::size_t k = 2; k <= k_hi; ++k) {
    partitions.emplace(k, spectral ? spectral->cluster(k, options.seed) : dendrogram->cut(k));
  }

  if (options.criterion == Criterion::Difference) {
    std::map<std::size_t, double> intra;
    intra[1] = intra_cluster_dissimilarity(
        dissimilarity, canonical_partition(std::vector<std::size_t>(n, 0), options.algorithm));
    for (const auto& [k, p] : partitions) intra[k] = intra_cluster_dissimilarity(dissimilarity, p);
    for (std::size_t k = report.k_min; k <= report.k_max; ++k) {
      report.scores.push_back({k, difference_criterion(intra, k, options.alpha)});
    }
  } else {
    for (std::size_t k = report.k_min; k <= report.k_max; ++k) {
      report.scores.push_back({k, silhouette_index(dissimilarity, partitions.at(k))});
    }
  }

  report.chosen_k = report.k_min;
  std::optional<double> best;
  for (const auto& s : report.scores) {
    if (s.score && (!best || *s.score > *best)) {
      best = s.score;
      report.chosen_k = s.k;
    }
  }
  return {partitions.at(report.chosen_k), report};
}

}  // namespace curled
