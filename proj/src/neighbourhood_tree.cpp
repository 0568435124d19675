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

#include "curled/neighbourhood_tree.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "curled/error.hpp"
#include "format.hpp"

namespace curled {

void Histogram::add(std::string_view key, std::size_t count) {
  if (count == 0) return;
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), key,
      [](const auto& e, std::string_view k) { return std::string_view(e.first) < k; });
  if (it != entries_.end() && it->first == key) {
    it->second += count;
  } else {
    entries_.insert(it, {std::string(key), count});
  }
  total_ += count;
}

void Histogram::merge(const Histogram& other) {
  if (other.empty()) return;
  std::vector<std::pair<std::string, std::size_t>> out;
  out.reserve(entries_.size() + other.entries_.size());
  auto a = entries_.begin();
  auto b = other.entries_.begin();
  while (a != entries_.end() || b != other.entries_.end()) {
    if (b == other.entries_.end() || (a != entries_.end() && a->first < b->first)) {
      out.push_back(std::move(*a++));
    } else if (a == entries_.end() || b->first < a->first) {
      out.push_back(*b++);
    } else {
      out.emplace_back(std::move(a->first), a->second + b->second);
      ++a;
      ++b;
    }
  }
  entries_ = std::move(out);
  total_ += other.total_;
}

std::size_t Histogram::count(std::string_view key) const {
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), key,
      [](const auto& e, std::string_view k) { return std::string_view(e.first) < k; });
  return (it != entries_.end() && it->first == key) ? it->second : 0;
}

double AttributeBag::mean() const {
  if (numeric.empty()) return 0.0;
  // values are kept sorted, so the sum does not depend on insertion order
  return std::accumulate(numeric.begin(), numeric.end(), 0.0) /
         static_cast<double>(numeric.size());
}

void AttributeBag::merge(const AttributeBag& other) {
  categorical.merge(other.categorical);
  const auto mid = numeric.insert(numeric.end(), other.numeric.begin(), other.numeric.end());
  std::inplace_merge(numeric.begin(), mid, numeric.end());
}

std::size_t LevelMultisets::occurrence_count() const {
  std::size_t n = 0;
  for (const auto& [t, h] : vertices) n += h.total();
  return n;
}

void NTMultisets::merge(const NTMultisets& other) {
  if (other.depth != depth) {
    raise(ErrorCode::Usage, "cannot merge neighbourhood trees of different depth");
  }
  for (std::size_t l = 0; l < levels.size(); ++l) {
    for (const auto& [t, h] : other.levels[l].vertices) levels[l].vertices[t].merge(h);
    for (const auto& [key, bag] : other.levels[l].attributes) {
      auto [it, inserted] = levels[l].attributes.try_emplace(key, bag);
      if (!inserted) it->second.merge(bag);
    }
  }
  for (std::size_t l = 0; l < edge_labels.size(); ++l) {
    edge_labels[l].merge(other.edge_labels[l]);
  }
}

NeighbourhoodTree build_nt(const Hypergraph& g, VertexIndex root, std::size_t depth) {
  if (root >= g.vertex_count()) raise(ErrorCode::UnknownVertex, "vertex index " + std::to_string(root));
  if (depth < 1) raise(ErrorCode::InvalidValue, "neighbourhood tree depth must be >= 1");
  NeighbourhoodTree nt;
  nt.root = root;
  nt.depth = depth;
  nt.levels.resize(depth + 1);
  nt.levels[0].push_back({root, std::nullopt});
  for (std::size_t l = 0; l < depth; ++l) {
    auto& next = nt.levels[l + 1];
    for (const auto& occ : nt.levels[l]) {
      for (const auto& inc : g.incidences(occ.vertex)) {
        if (occ.via && *occ.via == inc.edge) continue;
        const auto& ends = g.edge(inc.edge).endpoints;
        for (std::size_t p = 0; p < ends.size(); ++p) {
          if (p == inc.position || ends[p] == root) continue;
          next.push_back({ends[p], inc.edge});
        }
      }
    }
  }
  return nt;
}

NeighbourhoodTree build_nt(const Hypergraph& g, std::string_view root, std::size_t depth) {
  return build_nt(g, g.vertex_index(root), depth);
}

NTMultisets decompose(const Hypergraph& g, const NeighbourhoodTree& nt) {
  NTMultisets ms;
  ms.root_kind = g.type_of(nt.root).name;
  ms.depth = nt.depth;
  ms.levels.resize(nt.levels.size());
  ms.edge_labels.resize(nt.depth);
  for (std::size_t l = 0; l < nt.levels.size(); ++l) {
    auto& level = ms.levels[l];
    for (const auto& occ : nt.levels[l]) {
      const auto& v = g.vertex(occ.vertex);
      const auto& type = g.type(v.type);
      level.vertices[type.name].add(v.id);
      for (std::size_t a = 0; a < type.schema.size(); ++a) {
        auto& bag = level.attributes[{type.name, type.schema[a].name}];
        bag.kind = type.schema[a].kind;
        if (bag.kind == AttrKind::Numeric) {
          bag.numeric.push_back(v.attributes[a].number());
        } else {
          bag.categorical.add(v.attributes[a].label());
        }
      }
      if (l > 0 && occ.via) ms.edge_labels[l - 1].add(g.edge(*occ.via).label);
    }
    for (auto& [key, bag] : level.attributes) std::sort(bag.numeric.begin(), bag.numeric.end());
  }
  return ms;
}

std::string render_nt(const Hypergraph& g, const NeighbourhoodTree& nt) {
  const NTMultisets ms = decompose(g, nt);
  std::ostringstream out;
  out << "root " << g.vertex(nt.root).id << " type " << ms.root_kind << " depth "
      << nt.depth << '\n';
  for (std::size_t l = 0; l < nt.levels.size(); ++l) {
    std::vector<std::string> ids;
    for (const auto& occ : nt.levels[l]) ids.push_back(g.vertex(occ.vertex).id);
    std::sort(ids.begin(), ids.end());
    out << "level " << l << " occurrences " << ids.size() << ":";
    for (const auto& id : ids) out << ' ' << id;
    out << '\n';
    for (const auto& [t, h] : ms.levels[l].vertices) {
      out << "  V[" << l << "][" << t << "] =";
      for (const auto& [k, c] : h.entries()) out << ' ' << k << 'x' << c;
      out << '\n';
    }
    for (const auto& [key, bag] : ms.levels[l].attributes) {
      out << "  B[" << l << "][" << key.type << "][" << key.attribute << "] =";
      if (bag.kind == AttrKind::Numeric) {
        for (double x : bag.numeric) out << ' ' << format_double(x);
      } else {
        for (const auto& [k, c] : bag.categorical.entries()) out << ' ' << k << 'x' << c;
      }
      out << '\n';
    }
    if (l < ms.edge_labels.size()) {
      out << "  E[" << l << "] =";
      for (const auto& [k, c] : ms.edge_labels[l].entries()) out << ' ' << k << 'x' << c;
      out << '\n';
    }
  }
  return out.str();
}

}  // namespace curled
