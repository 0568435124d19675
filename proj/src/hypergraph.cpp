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

#include "curled/hypergraph.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "curled/error.hpp"

namespace curled {

std::string_view to_string(AttrKind kind) noexcept {
  return kind == AttrKind::Numeric ? "numeric" : "categorical";
}

AttributeValue AttributeValue::categorical(std::string label) {
  if (!is_valid_token(label)) {
    raise(ErrorCode::InvalidValue,
          "categorical label must be a non-empty token, got '" + label + "'");
  }
  return AttributeValue(std::move(label));
}

AttributeValue AttributeValue::numeric(double value) {
  if (!std::isfinite(value)) {
    raise(ErrorCode::InvalidValue, "numeric attribute values must be finite");
  }
  return AttributeValue(value);
}

bool is_valid_token(std::string_view token) noexcept {
  if (token.empty() || token.front() == '#') return false;
  return std::none_of(token.begin(), token.end(), [](unsigned char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' ||
           c == '\f' || c == '\0';
  });
}

std::string EdgeSignature::name() const {
  std::string out = label;
  for (const auto& t : endpoint_types) {
    out += '_';
    out += t;
  }
  return out;
}

TypeIndex Hypergraph::add_type(VertexType type) {
  if (!is_valid_token(type.name)) {
    raise(ErrorCode::InvalidValue, "invalid type name '" + type.name + "'");
  }
  std::unordered_set<std::string> names;
  for (const auto& a : type.schema) {
    if (!is_valid_token(a.name) || a.name.find(':') != std::string::npos) {
      raise(ErrorCode::InvalidValue, "invalid attribute name '" + a.name + "'");
    }
    if (!names.insert(a.name).second) {
      raise(ErrorCode::SchemaMismatch, "attribute '" + a.name +
                                           "' declared twice in type '" +
                                           type.name + "'");
    }
  }
  if (auto it = type_by_name_.find(type.name); it != type_by_name_.end()) {
    if (types_[it->second] == type) return it->second;
    raise(ErrorCode::SchemaMismatch,
          "type '" + type.name + "' redeclared with a different schema");
  }
  const TypeIndex idx = types_.size();
  ranges_.emplace_back(type.schema.size());
  type_by_name_.emplace(type.name, idx);
  types_.push_back(std::move(type));
  return idx;
}

VertexIndex Hypergraph::add_vertex(std::string_view type_name, std::string id,
                                   std::vector<AttributeValue> attrs) {
  auto t = find_type(type_name);
  if (!t) raise(ErrorCode::UndeclaredType, std::string(type_name));
  return add_vertex(*t, std::move(id), std::move(attrs));
}

VertexIndex Hypergraph::add_vertex(TypeIndex type, std::string id,
                                   std::vector<AttributeValue> attrs) {
  if (type >= types_.size()) raise(ErrorCode::UndeclaredType, "bad type index");
  if (!is_valid_token(id)) raise(ErrorCode::InvalidValue, "invalid vertex id '" + id + "'");
  if (vertex_by_id_.contains(id)) raise(ErrorCode::DuplicateId, id);
  const auto& schema = types_[type].schema;
  if (attrs.size() != schema.size()) {
    raise(ErrorCode::SchemaMismatch,
          "vertex '" + id + "' has " + std::to_string(attrs.size()) +
              " attributes, type '" + types_[type].name + "' expects " +
              std::to_string(schema.size()));
  }
  for (std::size_t i = 0; i < schema.size(); ++i) {
    if (attrs[i].kind() != schema[i].kind) {
      raise(ErrorCode::SchemaMismatch,
            "vertex '" + id + "' attribute '" + schema[i].name + "' must be " +
                std::string(to_string(schema[i].kind)));
    }
  }
  for (std::size_t i = 0; i < schema.size(); ++i) {
    if (schema[i].kind != AttrKind::Numeric) continue;
    auto& r = ranges_[type][i];
    const double x = attrs[i].number();
    if (!r.seen) {
      r = {x, x, true};
    } else {
      r.min = std::min(r.min, x);
      r.max = std::max(r.max, x);
    }
  }
  const VertexIndex idx = vertices_.size();
  vertex_by_id_.emplace(id, idx);
  vertices_.push_back({std::move(id), type, std::move(attrs)});
  incidence_.emplace_back();
  return idx;
}

EdgeIndex Hypergraph::add_hyperedge(std::string label,
                                    std::span<const std::string> endpoint_ids) {
  std::vector<VertexIndex> ends;
  ends.reserve(endpoint_ids.size());
  for (const auto& id : endpoint_ids) ends.push_back(vertex_index(id));
  return add_hyperedge(std::move(label), std::move(ends));
}

EdgeIndex Hypergraph::add_hyperedge(std::string label,
                                    std::vector<VertexIndex> endpoints) {
  if (!is_valid_token(label)) raise(ErrorCode::InvalidValue, "invalid edge label '" + label + "'");
  if (endpoints.size() < 2) {
    raise(ErrorCode::ArityTooSmall,
          "edge '" + label + "' needs at least 2 endpoints");
  }
  for (VertexIndex v : endpoints) {
    if (v >= vertices_.size()) raise(ErrorCode::UnknownVertex, "vertex index " + std::to_string(v));
  }
  const EdgeIndex idx = edges_.size();
  for (std::size_t p = 0; p < endpoints.size(); ++p) {
    incidence_[endpoints[p]].push_back({idx, p});
  }
  edges_.push_back({std::move(label), std::move(endpoints)});
  return idx;
}

std::optional<TypeIndex> Hypergraph::find_type(std::string_view name) const {
  if (auto it = type_by_name_.find(std::string(name)); it != type_by_name_.end())
    return it->second;
  return std::nullopt;
}

std::optional<VertexIndex> Hypergraph::find_vertex(std::string_view id) const {
  if (auto it = vertex_by_id_.find(std::string(id)); it != vertex_by_id_.end())
    return it->second;
  return std::nullopt;
}

VertexIndex Hypergraph::vertex_index(std::string_view id) const {
  auto v = find_vertex(id);
  if (!v) raise(ErrorCode::UnknownVertex, std::string(id));
  return *v;
}

EdgeSignature Hypergraph::signature(EdgeIndex e) const {
  const auto& edge = edges_.at(e);
  EdgeSignature sig{edge.label, {}};
  sig.endpoint_types.reserve(edge.endpoints.size());
  for (VertexIndex v : edge.endpoints) sig.endpoint_types.push_back(type_of(v).name);
  return sig;
}

std::vector<Neighbour> Hypergraph::neighbours(std::string_view id) const {
  const VertexIndex v = vertex_index(id);
  std::vector<Neighbour> out;
  for (const auto& inc : incidence_[v]) {
    const auto& edge = edges_[inc.edge];
    for (std::size_t p = 0; p < edge.endpoints.size(); ++p) {
      if (p == inc.position) continue;
      out.push_back({vertices_[edge.endpoints[p]].id, edge.label, inc.position, p});
    }
  }
  return out;
}

NumericRange Hypergraph::numeric_range(std::string_view type_name,
                                       std::string_view attribute) const {
  auto t = find_type(type_name);
  if (!t) return {};
  const auto& schema = types_[*t].schema;
  for (std::size_t i = 0; i < schema.size(); ++i) {
    if (schema[i].name == attribute) return ranges_[*t][i];
  }
  return {};
}

}  // namespace curled
