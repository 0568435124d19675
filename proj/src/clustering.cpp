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

#include "curled/clustering.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>

#include "curled/error.hpp"

namespace curled {

std::string_view to_string(Algorithm a) noexcept {
  return a == Algorithm::Spectral ? "spectral" : "hierarchical";
}

char short_tag(Algorithm a) noexcept { return a == Algorithm::Spectral ? 's' : 'h'; }

std::vector<std::vector<std::size_t>> Partition::clusters() const {
  std::vector<std::vector<std::size_t>> out(k);
  for (std::size_t i = 0; i < labels.size(); ++i) out[labels[i]].push_back(i);
  return out;
}

Partition canonical_partition(std::vector<std::size_t> labels, Algorithm algorithm,
                              std::uint64_t seed) {
  std::map<std::size_t, std::size_t> renumber;
  for (auto& l : labels) {
    auto [it, inserted] = renumber.try_emplace(l, renumber.size());
    l = it->second;
  }
  return Partition{std::move(labels), renumber.size(), algorithm, seed};
}

bool same_clusters(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  if (a.size() != b.size()) return false;
  return canonical_partition(a, Algorithm::Hierarchical).labels ==
         canonical_partition(b, Algorithm::Hierarchical).labels;
}

void require_non_degenerate(const Eigen::MatrixXd& m) {
  const Eigen::Index n = m.rows();
  if (n < 2) return;
  const double first = m(0, 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i != j && std::abs(m(i, j) - first) > 1e-12) return;
    }
  }
  raise(ErrorCode::DegenerateMatrix, "all pairwise similarities are equal");
}

namespace {

void require_valid_k(std::size_t k, std::size_t n) {
  if (k < 2 || n < 3 || k > n - 1) {
    raise(ErrorCode::InvalidK, "k=" + std::to_string(k) + " outside [2, " +
                                   std::to_string(n > 0 ? n - 1 : 0) + "]");
  }
}

double squared_distance(const Eigen::MatrixXd& x, Eigen::Index i, const Eigen::MatrixXd& c,
                        Eigen::Index j) {
  return (x.row(i) - c.row(j)).squaredNorm();
}

}  // namespace

SpectralEmbedding::SpectralEmbedding(const Eigen::MatrixXd& similarity) {
  const Eigen::Index n = similarity.rows();
  if (similarity.cols() != n) raise(ErrorCode::Usage, "similarity matrix must be square");
  Eigen::VectorXd inv_sqrt_degree(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double d = similarity.row(i).sum();
    inv_sqrt_degree(i) = d > 0.0 ? 1.0 / std::sqrt(d) : 0.0;
  }
  Eigen::MatrixXd laplacian =
      -(inv_sqrt_degree.asDiagonal() * similarity * inv_sqrt_degree.asDiagonal());
  laplacian.diagonal().array() += 1.0;
  // symmetrize away rounding so the solver sees an exactly symmetric input
  laplacian = 0.5 * (laplacian + laplacian.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(laplacian);
  if (solver.info() != Eigen::Success) {
    raise(ErrorCode::DegenerateMatrix, "eigendecomposition did not converge");
  }
  values_ = solver.eigenvalues();
  vectors_ = solver.eigenvectors();
}

Eigen::MatrixXd SpectralEmbedding::embed(std::size_t k) const {
  Eigen::MatrixXd x = vectors_.leftCols(static_cast<Eigen::Index>(k));
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const double norm = x.row(i).norm();
    if (norm > 0.0) x.row(i) /= norm;
  }
  return x;
}

Partition SpectralEmbedding::cluster(std::size_t k, std::uint64_t seed) const {
  const std::size_t n = size();
  require_valid_k(k, n);
  const Eigen::MatrixXd x = embed(k);
  const auto kk = static_cast<Eigen::Index>(k);
  const auto nn = static_cast<Eigen::Index>(n);

  std::mt19937_64 rng(seed);
  Eigen::MatrixXd centers(kk, x.cols());
  centers.row(0) = x.row(static_cast<Eigen::Index>(rng() % n));
  Eigen::VectorXd nearest(nn);
  for (Eigen::Index i = 0; i < nn; ++i) nearest(i) = squared_distance(x, i, centers, 0);
  for (Eigen::Index c = 1; c < kk; ++c) {
    Eigen::Index far = 0;
    for (Eigen::Index i = 1; i < nn; ++i) {
      if (nearest(i) > nearest(far)) far = i;
    }
    centers.row(c) = x.row(far);
    for (Eigen::Index i = 0; i < nn; ++i) {
      nearest(i) = std::min(nearest(i), squared_distance(x, i, centers, c));
    }
  }

  std::vector<std::size_t> labels(n, 0);
  constexpr int kMaxIterations = 300;
  constexpr double kTolerance = 1e-9;
  for (int iter = 0; iter < kMaxIterations; ++iter) {
    bool changed = false;
    for (Eigen::Index i = 0; i < nn; ++i) {
      Eigen::Index best = 0;
      double best_d = squared_distance(x, i, centers, 0);
      for (Eigen::Index c = 1; c < kk; ++c) {
        const double d = squared_distance(x, i, centers, c);
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      if (labels[i] != static_cast<std::size_t>(best)) {
        labels[i] = static_cast<std::size_t>(best);
        changed = true;
      }
    }

    std::vector<std::size_t> counts(k, 0);
    for (auto l : labels) ++counts[l];
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] != 0) continue;
      // steal the worst-fitting point of a cluster that can spare one
      Eigen::Index worst = -1;
      double worst_d = -1.0;
      for (Eigen::Index i = 0; i < nn; ++i) {
        if (counts[labels[i]] < 2) continue;
        const double d = squared_distance(x, i, centers, static_cast<Eigen::Index>(labels[i]));
        if (d > worst_d) {
          worst_d = d;
          worst = i;
        }
      }
      --counts[labels[worst]];
      labels[worst] = c;
      counts[c] = 1;
      changed = true;
    }

    Eigen::MatrixXd updated = Eigen::MatrixXd::Zero(kk, x.cols());
    for (Eigen::Index i = 0; i < nn; ++i) updated.row(static_cast<Eigen::Index>(labels[i])) += x.row(i);
    for (std::size_t c = 0; c < k; ++c) {
      updated.row(static_cast<Eigen::Index>(c)) /= static_cast<double>(counts[c]);
    }
    const double shift = (updated - centers).rowwise().norm().maxCoeff();
    centers = updated;
    if (!changed || shift < kTolerance) break;
  }
  return canonical_partition(std::move(labels), Algorithm::Spectral, seed);
}

Partition spectral_cluster(const Eigen::MatrixXd& similarity, std::size_t k,
                           std::uint64_t seed) {
  require_valid_k(k, static_cast<std::size_t>(similarity.rows()));
  require_non_degenerate(similarity);
  return SpectralEmbedding(similarity).cluster(k, seed);
}

Dendrogram::Dendrogram(const Eigen::MatrixXd& dissimilarity)
    : n_(static_cast<std::size_t>(dissimilarity.rows())) {
  if (dissimilarity.cols() != dissimilarity.rows()) {
    raise(ErrorCode::Usage, "dissimilarity matrix must be square");
  }
  // Each live cluster sits in the slot of its smallest member, so scanning
  // slot pairs in order visits candidates in tie-break order.
  std::vector<std::vector<std::size_t>> members(n_);
  for (std::size_t i = 0; i < n_; ++i) members[i] = {i};
  Eigen::MatrixXd sums = dissimilarity;
  std::vector<std::size_t> live(n_);
  std::iota(live.begin(), live.end(), 0);

  while (live.size() > 1) {
    std::size_t bi = 0, bj = 1;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < live.size(); ++a) {
      const std::size_t i = live[a];
      for (std::size_t b = a + 1; b < live.size(); ++b) {
        const std::size_t j = live[b];
        const double cost = sums(i, j) / static_cast<double>(members[i].size() *
                                                              members[j].size());
        if (cost < best - kLinkageTieTolerance) {
          best = cost;
          bi = a;
          bj = b;
        }
      }
    }
    const std::size_t i = live[bi];
    const std::size_t j = live[bj];
    merges_.push_back({members[i], members[j], best});
    for (std::size_t c : live) {
      if (c == i || c == j) continue;
      sums(i, c) += sums(j, c);
      sums(c, i) = sums(i, c);
    }
    members[i].insert(members[i].end(), members[j].begin(), members[j].end());
    std::sort(members[i].begin(), members[i].end());
    members[j].clear();
    live.erase(live.begin() + static_cast<std::ptrdiff_t>(bj));
  }
}

Partition Dendrogram::cut(std::size_t k) const {
  if (k < 1 || k > n_) raise(ErrorCode::InvalidK, "cannot cut " + std::to_string(n_) +
                                                      " objects into " + std::to_string(k));
  std::vector<std::size_t> labels(n_);
  std::iota(labels.begin(), labels.end(), 0);
  for (std::size_t m = 0; m < n_ - k; ++m) {
    const std::size_t target = labels[merges_[m].left.front()];
    for (std::size_t v : merges_[m].right) labels[v] = target;
  }
  return canonical_partition(std::move(labels), Algorithm::Hierarchical);
}

Partition hierarchical_cluster(const Eigen::MatrixXd& dissimilarity, std::size_t k) {
  require_valid_k(k, static_cast<std::size_t>(dissimilarity.rows()));
  require_non_degenerate(dissimilarity);
  return Dendrogram(dissimilarity).cut(k);
}

}  // namespace curled
