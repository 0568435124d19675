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

#include "curled/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "curled/error.hpp"
#include "curled/parallel.hpp"
#include "format.hpp"

namespace curled {

namespace {

enum Component : std::size_t {
  kRootAttributes = 0,
  kNeighbourAttributes = 1,
  kConnectivity = 2,
  kIdentity = 3,
  kEdgeLabels = 4,
};

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

/// Visits the union of the keys of two sorted maps in key order; the callback
/// receives null for a side that lacks the key.
template <typename Map, typename Fn>
void for_each_union(const Map& a, const Map& b, Fn&& fn) {
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
      fn(ia->first, &ia->second, nullptr);
      ++ia;
    } else if (ia == a.end() || ib->first < ia->first) {
      fn(ib->first, nullptr, &ib->second);
      ++ib;
    } else {
      fn(ia->first, &ia->second, &ib->second);
      ++ia;
      ++ib;
    }
  }
}

struct Average {
  double sum = 0.0;
  std::size_t count = 0;
  void add(double x) {
    sum += x;
    ++count;
  }
  std::optional<double> value() const {
    if (count == 0) return std::nullopt;
    return sum / static_cast<double>(count);
  }
};

double bag_distance(const TypeAttribute& key, const AttributeBag& a,
                    const AttributeBag& b, const Hypergraph& ranges) {
  if (a.kind != b.kind) return 1.0;
  if (a.kind == AttrKind::Categorical) return tv_distance(a.categorical, b.categorical);
  const double width = ranges.numeric_range(key.type, key.attribute).width();
  return clamp01(std::abs(a.mean() - b.mean()) / width);
}

void add_attribute_level(Average& avg, const LevelMultisets& a, const LevelMultisets& b,
                         const Hypergraph& ranges) {
  for_each_union(a.attributes, b.attributes,
                 [&](const TypeAttribute& key, const AttributeBag* x, const AttributeBag* y) {
                   avg.add((x && y) ? bag_distance(key, *x, *y, ranges) : 1.0);
                 });
}

}  // namespace

SimilarityInterpretation::SimilarityInterpretation(std::array<double, kCoreComponents> raw)
    : raw_(raw), weights_{} {
  double total = 0.0;
  for (double w : raw) {
    if (!std::isfinite(w) || w < 0.0) {
      raise(ErrorCode::InvalidValue, "interpretation weights must be finite and >= 0");
    }
    total += w;
  }
  if (!(total > 0.0)) {
    raise(ErrorCode::InvalidValue, "interpretation needs at least one positive weight");
  }
  for (std::size_t i = 0; i < kCoreComponents; ++i) weights_[i] = raw[i] / total;
}

std::string_view to_string(EdgeMode mode) noexcept {
  return mode == EdgeMode::Combination ? "combination" : "merging";
}

std::string_view to_string(Summarizer s) noexcept {
  switch (s) {
    case Summarizer::Mean: return "mean";
    case Summarizer::Min: return "min";
    case Summarizer::Max: return "max";
  }
  return "mean";
}

double tv_distance(const Histogram& a, const Histogram& b) {
  if (a.empty() && b.empty()) return 0.0;
  if (a.empty() || b.empty()) return 1.0;
  const double na = static_cast<double>(a.total());
  const double nb = static_cast<double>(b.total());
  double sum = 0.0;
  auto ia = a.entries().begin();
  auto ib = b.entries().begin();
  const auto ea = a.entries().end();
  const auto eb = b.entries().end();
  while (ia != ea || ib != eb) {
    if (ib == eb || (ia != ea && ia->first < ib->first)) {
      sum += static_cast<double>(ia->second) / na;
      ++ia;
    } else if (ia == ea || ib->first < ia->first) {
      sum += static_cast<double>(ib->second) / nb;
      ++ib;
    } else {
      sum += std::abs(static_cast<double>(ia->second) / na -
                      static_cast<double>(ib->second) / nb);
      ++ia;
      ++ib;
    }
  }
  return clamp01(0.5 * sum);
}

double jaccard_multiset(const Histogram& a, const Histogram& b) {
  if (a.empty() && b.empty()) return 1.0;
  std::size_t mins = 0;
  std::size_t maxs = 0;
  auto ia = a.entries().begin();
  auto ib = b.entries().begin();
  const auto ea = a.entries().end();
  const auto eb = b.entries().end();
  while (ia != ea || ib != eb) {
    if (ib == eb || (ia != ea && ia->first < ib->first)) {
      maxs += ia->second;
      ++ia;
    } else if (ia == ea || ib->first < ia->first) {
      maxs += ib->second;
      ++ib;
    } else {
      mins += std::min(ia->second, ib->second);
      maxs += std::max(ia->second, ib->second);
      ++ia;
      ++ib;
    }
  }
  return static_cast<double>(mins) / static_cast<double>(maxs);
}

CoreDissimilarityVector core_dissimilarities(const NTMultisets& a, const NTMultisets& b,
                                             const Hypergraph& ranges) {
  if (a.root_kind != b.root_kind) {
    raise(ErrorCode::TypeMismatch, "'" + a.root_kind + "' vs '" + b.root_kind + "'");
  }
  if (a.depth != b.depth) {
    raise(ErrorCode::TypeMismatch, "neighbourhood trees of different depth");
  }
  CoreDissimilarityVector out;

  Average root;
  add_attribute_level(root, a.levels[0], b.levels[0], ranges);
  out.d[kRootAttributes] = root.value();

  Average neighbour, connectivity, identity;
  for (std::size_t l = 1; l <= a.depth; ++l) {
    add_attribute_level(neighbour, a.levels[l], b.levels[l], ranges);
    for_each_union(a.levels[l].vertices, b.levels[l].vertices,
                   [&](const std::string&, const Histogram* x, const Histogram* y) {
                     static const Histogram kEmpty;
                     const Histogram& hx = x ? *x : kEmpty;
                     const Histogram& hy = y ? *y : kEmpty;
                     const double nx = static_cast<double>(hx.total());
                     const double ny = static_cast<double>(hy.total());
                     connectivity.add(std::abs(nx - ny) / std::max({nx, ny, 1.0}));
                     identity.add(1.0 - jaccard_multiset(hx, hy));
                   });
  }
  out.d[kNeighbourAttributes] = neighbour.value();
  out.d[kConnectivity] = connectivity.value();
  out.d[kIdentity] = identity.value();

  Average labels;
  for (std::size_t l = 0; l < a.depth; ++l) {
    if (a.edge_labels[l].empty() && b.edge_labels[l].empty()) continue;
    labels.add(tv_distance(a.edge_labels[l], b.edge_labels[l]));
  }
  out.d[kEdgeLabels] = labels.value();
  return out;
}

CoreDissimilarityVector core_dissimilarities(const NeighbourhoodTree& a,
                                             const NeighbourhoodTree& b,
                                             const Hypergraph& g) {
  return core_dissimilarities(decompose(g, a), decompose(g, b), g);
}

std::optional<double> weighted_dissimilarity(const CoreDissimilarityVector& core,
                                             const SimilarityInterpretation& interp) {
  double weight = 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < kCoreComponents; ++i) {
    const double w = interp.weights()[i];
    if (w == 0.0 || !core.d[i]) continue;
    weight += w;
    sum += w * *core.d[i];
  }
  if (weight == 0.0) return std::nullopt;
  return clamp01(sum / weight);
}

double nt_dissimilarity(const NTMultisets& a, const NTMultisets& b,
                        const SimilarityInterpretation& interp, const Hypergraph& ranges) {
  auto d = weighted_dissimilarity(core_dissimilarities(a, b, ranges), interp);
  if (!d) {
    raise(ErrorCode::NoComparableComponent,
          "no weighted component has data for '" + a.root_kind + "'");
  }
  return *d;
}

double nt_dissimilarity(const NeighbourhoodTree& a, const NeighbourhoodTree& b,
                        const SimilarityInterpretation& interp, const Hypergraph& g) {
  return nt_dissimilarity(decompose(g, a), decompose(g, b), interp, g);
}

namespace {

double pair_or_zero(const NTMultisets& a, const NTMultisets& b,
                    const SimilarityInterpretation& interp, const Hypergraph& ranges) {
  return weighted_dissimilarity(core_dissimilarities(a, b, ranges), interp).value_or(0.0);
}

double summarize(std::span<const double> values, Summarizer s) {
  switch (s) {
    case Summarizer::Min: return *std::min_element(values.begin(), values.end());
    case Summarizer::Max: return *std::max_element(values.begin(), values.end());
    case Summarizer::Mean: break;
  }
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

void require_same_signature(const Hypergraph& ga, EdgeIndex a, const Hypergraph& gb,
                            EdgeIndex b) {
  const auto sa = ga.signature(a);
  const auto sb = gb.signature(b);
  if (sa != sb) raise(ErrorCode::SignatureMismatch, sa.name() + " vs " + sb.name());
}

NTMultisets vertex_multisets(const Hypergraph& g, VertexIndex v, std::size_t depth) {
  return decompose(g, build_nt(g, v, depth));
}

}  // namespace

double edge_dissimilarity_combination(const Hypergraph& g, EdgeIndex e1, EdgeIndex e2,
                                      const SimilarityInterpretation& interp,
                                      std::size_t depth, Summarizer summarizer) {
  require_same_signature(g, e1, g, e2);
  const auto& a = g.edge(e1).endpoints;
  const auto& b = g.edge(e2).endpoints;
  std::vector<double> per_position;
  per_position.reserve(a.size());
  for (std::size_t p = 0; p < a.size(); ++p) {
    per_position.push_back(pair_or_zero(vertex_multisets(g, a[p], depth),
                                        vertex_multisets(g, b[p], depth), interp, g));
  }
  return summarize(per_position, summarizer);
}

double edge_dissimilarity_merging(const Hypergraph& g, EdgeIndex e1, EdgeIndex e2,
                                  const SimilarityInterpretation& interp,
                                  std::size_t depth) {
  require_same_signature(g, e1, g, e2);
  auto merged = [&](EdgeIndex e) {
    std::vector<NTMultisets> parts;
    for (VertexIndex v : g.edge(e).endpoints) parts.push_back(vertex_multisets(g, v, depth));
    NTMultisets out = std::move(parts.front());
    for (std::size_t i = 1; i < parts.size(); ++i) out.merge(parts[i]);
    out.root_kind = g.signature(e).name();
    return out;
  };
  return pair_or_zero(merged(e1), merged(e2), interp, g);
}

NTMultisets merge_edge(const Hypergraph& g, EdgeIndex e,
                       std::span<const NTMultisets> vertex_multisets) {
  const auto& ends = g.edge(e).endpoints;
  NTMultisets out = vertex_multisets[ends.front()];
  for (std::size_t i = 1; i < ends.size(); ++i) out.merge(vertex_multisets[ends[i]]);
  out.root_kind = g.signature(e).name();
  return out;
}

ProfileStore::ProfileStore(const Hypergraph& g, std::size_t depth, std::size_t threads)
    : graph_(&g), depth_(depth) {
  vertices_.resize(g.vertex_count());
  parallel_for(g.vertex_count(), threads, [&](std::size_t v) {
    vertices_[v] = decompose(g, build_nt(g, v, depth));
  });
  merged_.resize(g.edge_count());
  parallel_for(g.edge_count(), threads, [&](std::size_t e) {
    merged_[e] = merge_edge(g, e, vertices_);
  });
}

std::vector<ObjectGroup> vertex_groups(const Hypergraph& g) {
  std::vector<ObjectGroup> groups(g.type_count());
  for (TypeIndex t = 0; t < g.type_count(); ++t) {
    groups[t].kind = ObjectKind::Vertex;
    groups[t].name = g.type(t).name;
  }
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    groups[g.vertex(v).type].members.push_back(v);
  }
  std::vector<ObjectGroup> out;
  for (auto& group : groups) {
    if (group.members.empty()) continue;
    std::sort(group.members.begin(), group.members.end(), [&](VertexIndex a, VertexIndex b) {
      return g.vertex(a).id < g.vertex(b).id;
    });
    for (VertexIndex v : group.members) group.member_names.push_back(g.vertex(v).id);
    out.push_back(std::move(group));
  }
  return out;
}

std::vector<ObjectGroup> edge_groups(const Hypergraph& g) {
  std::vector<ObjectGroup> out;
  std::map<EdgeSignature, std::size_t> index;
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    auto sig = g.signature(e);
    auto [it, inserted] = index.try_emplace(sig, out.size());
    if (inserted) {
      ObjectGroup group;
      group.kind = ObjectKind::Edge;
      group.name = sig.name();
      out.push_back(std::move(group));
    }
    out[it->second].members.push_back(e);
    out[it->second].member_names.push_back(edge_display_name(g, e));
  }
  return out;
}

std::string edge_display_name(const Hypergraph& g, EdgeIndex e) {
  const auto& edge = g.edge(e);
  std::string out = edge.label + "(";
  for (std::size_t p = 0; p < edge.endpoints.size(); ++p) {
    if (p) out += ',';
    out += g.vertex(edge.endpoints[p]).id;
  }
  out += ')';
  return out;
}

double object_dissimilarity(ObjectKind kind, const ProfileStore& sa, std::size_t a,
                            const ProfileStore& sb, std::size_t b,
                            const SimilarityInterpretation& interp,
                            const CompareOptions& options, const Hypergraph& ranges) {
  if (kind == ObjectKind::Vertex) {
    return pair_or_zero(sa.vertex(a), sb.vertex(b), interp, ranges);
  }
  require_same_signature(sa.graph(), a, sb.graph(), b);
  if (options.edge_mode == EdgeMode::Merging) {
    return pair_or_zero(sa.merged_edge(a), sb.merged_edge(b), interp, ranges);
  }
  const auto& ea = sa.graph().edge(a).endpoints;
  const auto& eb = sb.graph().edge(b).endpoints;
  std::vector<double> per_position(ea.size());
  for (std::size_t p = 0; p < ea.size(); ++p) {
    per_position[p] = pair_or_zero(sa.vertex(ea[p]), sb.vertex(eb[p]), interp, ranges);
  }
  return summarize(per_position, options.summarizer);
}

Eigen::MatrixXd SimilarityMatrix::dissimilarity() const {
  return Eigen::MatrixXd::Ones(values.rows(), values.cols()) - values;
}

SimilarityMatrix similarity_matrix(const ProfileStore& store, const ObjectGroup& group,
                                   const SimilarityInterpretation& interp,
                                   const CompareOptions& options, std::size_t threads) {
  const std::size_t n = group.members.size();
  if (n < 2) {
    raise(ErrorCode::TooFewObjects,
          "group '" + group.name + "' has " + std::to_string(n) + " object(s)");
  }
  SimilarityMatrix m{group.member_names, Eigen::MatrixXd::Identity(n, n), interp,
                     group.kind, group.name};
  parallel_for(n, threads, [&](std::size_t i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = object_dissimilarity(group.kind, store, group.members[i], store,
                                            group.members[j], interp, options,
                                            store.graph());
      m.values(i, j) = 1.0 - d;
      m.values(j, i) = 1.0 - d;
    }
  });
  return m;
}

std::string matrix_tsv(const SimilarityMatrix& m) {
  std::ostringstream out;
  out << "id";
  for (const auto& id : m.ids) out << '\t' << id;
  out << '\n';
  for (std::size_t i = 0; i < m.size(); ++i) {
    out << m.ids[i];
    for (std::size_t j = 0; j < m.size(); ++j) out << '\t' << format_double(m.values(i, j));
    out << '\n';
  }
  return out.str();
}

}  // namespace curled
