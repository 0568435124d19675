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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

namespace curled {

enum class AttrKind { Categorical, Numeric };

std::string_view to_string(AttrKind kind) noexcept;

/// A single attribute value: a non-empty categorical label or a finite real.
class AttributeValue {
 public:
  static AttributeValue categorical(std::string label);
  static AttributeValue numeric(double value);

  AttrKind kind() const noexcept {
    return std::holds_alternative<double>(value_) ? AttrKind::Numeric
                                                  : AttrKind::Categorical;
  }
  const std::string& label() const { return std::get<std::string>(value_); }
  double number() const { return std::get<double>(value_); }

  bool operator==(const AttributeValue&) const = default;

 private:
  explicit AttributeValue(std::variant<std::string, double> v)
      : value_(std::move(v)) {}
  std::variant<std::string, double> value_;
};

struct AttributeSpec {
  std::string name;
  AttrKind kind;
  bool operator==(const AttributeSpec&) const = default;
};

struct VertexType {
  std::string name;
  std::vector<AttributeSpec> schema;
  bool operator==(const VertexType&) const = default;
};

using VertexIndex = std::size_t;
using EdgeIndex = std::size_t;
using TypeIndex = std::size_t;

struct Vertex {
  std::string id;
  TypeIndex type;
  std::vector<AttributeValue> attributes;
};

struct Hyperedge {
  std::string label;
  std::vector<VertexIndex> endpoints;
};

/// One endpoint slot of an edge, as seen from the vertex occupying it.
struct Incidence {
  EdgeIndex edge;
  std::size_t position;
};

struct Neighbour {
  std::string id;
  std::string label;
  std::size_t from_position;
  std::size_t to_position;
};

/// Hyperedge label plus the ordered endpoint type names.
struct EdgeSignature {
  std::string label;
  std::vector<std::string> endpoint_types;

  auto operator<=>(const EdgeSignature&) const = default;
  bool operator==(const EdgeSignature&) const = default;

  /// Identifier-safe rendering, e.g. `friend_person_person`.
  std::string name() const;
};

struct NumericRange {
  double min = 0.0;
  double max = 0.0;
  bool seen = false;

  /// Degenerate or unseen ranges have width 1.
  double width() const noexcept {
    return (seen && max > min) ? max - min : 1.0;
  }
};

/// Typed, labelled hypergraph. Built by a single writer, then read-only.
///
/// Vertex ids are unique across all types. Edges keep their endpoint order,
/// and a vertex may occupy several slots of the same edge; each slot shows up
/// as its own entry in that vertex's incidence list.
class Hypergraph {
 public:
  /// Registers a vertex type. Re-declaring an identical type is a no-op.
  TypeIndex add_type(VertexType type);

  VertexIndex add_vertex(std::string_view type_name, std::string id,
                         std::vector<AttributeValue> attrs);
  VertexIndex add_vertex(TypeIndex type, std::string id,
                         std::vector<AttributeValue> attrs);

  EdgeIndex add_hyperedge(std::string label,
                          std::span<const std::string> endpoint_ids);
  EdgeIndex add_hyperedge(std::string label,
                          std::vector<VertexIndex> endpoints);

  std::size_t type_count() const noexcept { return types_.size(); }
  std::size_t vertex_count() const noexcept { return vertices_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  const std::vector<VertexType>& types() const noexcept { return types_; }
  const std::vector<Vertex>& vertices() const noexcept { return vertices_; }
  const std::vector<Hyperedge>& edges() const noexcept { return edges_; }

  const VertexType& type(TypeIndex t) const { return types_.at(t); }
  const Vertex& vertex(VertexIndex v) const { return vertices_.at(v); }
  const Hyperedge& edge(EdgeIndex e) const { return edges_.at(e); }
  const VertexType& type_of(VertexIndex v) const {
    return types_.at(vertices_.at(v).type);
  }

  std::optional<TypeIndex> find_type(std::string_view name) const;
  std::optional<VertexIndex> find_vertex(std::string_view id) const;
  /// Throws UnknownVertex.
  VertexIndex vertex_index(std::string_view id) const;

  std::span<const Incidence> incidences(VertexIndex v) const {
    return incidence_.at(v);
  }

  EdgeSignature signature(EdgeIndex e) const;

  /// Every co-endpoint of every incident edge, once per occurrence.
  std::vector<Neighbour> neighbours(std::string_view id) const;

  /// Dataset-wide range of a numeric attribute; unseen ranges have width 1.
  NumericRange numeric_range(std::string_view type_name,
                             std::string_view attribute) const;

 private:
  std::vector<VertexType> types_;
  std::vector<Vertex> vertices_;
  std::vector<Hyperedge> edges_;
  std::vector<std::vector<Incidence>> incidence_;
  std::unordered_map<std::string, TypeIndex> type_by_name_;
  std::unordered_map<std::string, VertexIndex> vertex_by_id_;
  // indexed [type][attribute position]
  std::vector<std::vector<NumericRange>> ranges_;
};

/// Identifiers, labels and categorical values are single whitespace-free
/// tokens that do not begin with '#'.
bool is_valid_token(std::string_view token) noexcept;

}  // namespace curled
