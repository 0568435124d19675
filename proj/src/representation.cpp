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

#include "curled/representation.hpp"

#include <algorithm>
#include <istream>
#include <sstream>

#include "curled/error.hpp"
#include "format.hpp"

namespace curled {

const GroupModel* ClusterModel::find_group(ObjectKind kind, std::string_view name) const {
  for (const auto& g : groups) {
    if (g.group.kind == kind && g.group.name == name) return &g;
  }
  return nullptr;
}

std::string ClusterModel::attribute_name() const {
  return "I" + std::to_string(interpretation_index) + "_" + short_tag(algorithm);
}

std::string predicate_name(std::size_t layer, std::size_t interpretation_index,
                           Algorithm algorithm, std::string_view group, std::size_t cluster) {
  std::string out = "cl_L" + std::to_string(layer) + "_I" + std::to_string(interpretation_index) +
                    "_" + short_tag(algorithm) + "_";
  out += group;
  out += "_" + std::to_string(cluster);
  return out;
}

void CRepresentation::append(CRepresentation other) {
  facts.insert(facts.end(), std::make_move_iterator(other.facts.begin()),
               std::make_move_iterator(other.facts.end()));
  manifest.insert(manifest.end(), std::make_move_iterator(other.manifest.begin()),
                  std::make_move_iterator(other.manifest.end()));
}

void compute_medoids(GroupModel& group, const Eigen::MatrixXd& similarity) {
  group.medoids.clear();
  if (!group.partition) return;
  for (const auto& members : group.partition->clusters()) {
    std::size_t best = members.front();
    double best_mean = -1.0;
    for (std::size_t i : members) {
      double sum = 0.0;
      for (std::size_t j : members) {
        if (j != i) sum += similarity(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      }
      const double mean =
          members.size() > 1 ? sum / static_cast<double>(members.size() - 1) : 1.0;
      if (mean > best_mean) {
        best_mean = mean;
        best = i;
      }
    }
    group.medoids.push_back(best);
  }
}

namespace {

std::vector<std::string> object_args(const Hypergraph& g, ObjectKind kind, std::size_t object) {
  if (kind == ObjectKind::Vertex) return {g.vertex(object).id};
  std::vector<std::string> args;
  for (VertexIndex v : g.edge(object).endpoints) args.push_back(g.vertex(v).id);
  return args;
}

}  // namespace

CRepresentation emit(const ClusterModel& model, const Hypergraph& g) {
  CRepresentation out;
  for (const auto& gm : model.groups) {
    if (!gm.partition) continue;
    const auto clusters = gm.partition->clusters();
    for (std::size_t c = 0; c < clusters.size(); ++c) {
      const std::string pred = predicate_name(model.layer, model.interpretation_index,
                                              model.algorithm, gm.group.name, c);
      std::vector<Fact> facts;
      for (std::size_t pos : clusters[c]) {
        facts.push_back({pred, object_args(g, gm.group.kind, gm.group.members[pos])});
      }
      std::sort(facts.begin(), facts.end());
      out.facts.insert(out.facts.end(), facts.begin(), facts.end());
      out.manifest.push_back({pred, model.layer, model.interpretation_index,
                              model.interpretation.raw(), model.algorithm, gm.group.name,
                              gm.partition->k,
                              gm.report ? gm.report->criterion : Criterion::None,
                              gm.report ? gm.report->chosen_score() : std::nullopt});
    }
  }
  return out;
}

std::string format_fact(const Fact& fact) {
  std::string out = fact.predicate + "(";
  for (std::size_t i = 0; i < fact.args.size(); ++i) {
    if (i) out += ',';
    out += '"';
    for (char c : fact.args[i]) {
      if (c == '"' || c == '\\') out += '\\';
      out += c;
    }
    out += '"';
  }
  out += ").";
  return out;
}

std::string format_facts(const std::vector<Fact>& facts) {
  std::string out;
  for (const auto& f : facts) {
    out += format_fact(f);
    out += '\n';
  }
  return out;
}

std::vector<Fact> parse_fact_lines(std::istream& in) {
  std::vector<Fact> out;
  std::string raw;
  std::size_t line = 0;
  auto fail = [&](const std::string& why) {
    raise(ErrorCode::ParseError, "fact line " + std::to_string(line) + ": " + why);
  };
  while (std::getline(in, raw)) {
    ++line;
    const std::string_view text = trim(raw);
    if (text.empty() || text.front() == '%') continue;
    const auto open = text.find('(');
    if (open == std::string_view::npos || open == 0) fail("expected 'pred(...)'");
    Fact f{std::string(text.substr(0, open)), {}};
    std::size_t i = open + 1;
    while (true) {
      if (i >= text.size() || text[i] != '"') fail("expected quoted argument");
      ++i;
      std::string arg;
      while (i < text.size() && text[i] != '"') {
        if (text[i] == '\\' && i + 1 < text.size()) ++i;
        arg += text[i++];
      }
      if (i >= text.size()) fail("unterminated argument");
      ++i;
      f.args.push_back(std::move(arg));
      if (i < text.size() && text[i] == ',') {
        ++i;
        continue;
      }
      break;
    }
    if (text.substr(i) != ").") fail("expected ').'");
    out.push_back(std::move(f));
  }
  return out;
}

std::string format_manifest(const std::vector<ManifestRow>& rows) {
  std::ostringstream out;
  out << kManifestHeader << '\n';
  for (const auto& r : rows) {
    out << r.predicate << '\t' << r.layer << '\t' << r.interpretation_index << '\t';
    for (std::size_t i = 0; i < r.raw_weights.size(); ++i) {
      if (i) out << ',';
      out << format_double(r.raw_weights[i]);
    }
    out << '\t' << to_string(r.algorithm) << '\t' << r.group << '\t' << r.k << '\t'
        << to_string(r.criterion) << '\t' << (r.score ? format_double(*r.score) : "-") << '\n';
  }
  return out.str();
}

std::vector<ManifestRow> parse_manifest(std::istream& in) {
  std::vector<ManifestRow> rows;
  std::string raw;
  std::size_t line = 0;
  auto fail = [&](const std::string& why) {
    raise(ErrorCode::ParseError, "manifest line " + std::to_string(line) + ": " + why);
  };
  while (std::getline(in, raw)) {
    ++line;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (line == 1) {
      if (raw != kManifestHeader) fail("unexpected header");
      continue;
    }
    if (raw.empty()) continue;
    std::vector<std::string> cols;
    std::stringstream ss(raw);
    std::string col;
    while (std::getline(ss, col, '\t')) cols.push_back(col);
    if (cols.size() != 9) fail("expected 9 columns");
    ManifestRow r;
    r.predicate = cols[0];
    auto layer = parse_int(cols[1]);
    auto interp = parse_int(cols[2]);
    auto k = parse_int(cols[6]);
    if (!layer || !interp || !k || *layer < 1 || *interp < 1 || *k < 1) fail("bad integer column");
    r.layer = static_cast<std::size_t>(*layer);
    r.interpretation_index = static_cast<std::size_t>(*interp);
    r.k = static_cast<std::size_t>(*k);
    std::stringstream ws(cols[3]);
    std::size_t i = 0;
    while (std::getline(ws, col, ',')) {
      auto w = parse_double(col);
      if (!w || i >= kCoreComponents) fail("bad raw_weights");
      r.raw_weights[i++] = *w;
    }
    if (i != kCoreComponents) fail("bad raw_weights");
    if (cols[4] == "spectral") {
      r.algorithm = Algorithm::Spectral;
    } else if (cols[4] == "hierarchical") {
      r.algorithm = Algorithm::Hierarchical;
    } else {
      fail("unknown algorithm");
    }
    r.group = cols[5];
    if (cols[7] == "difference") {
      r.criterion = Criterion::Difference;
    } else if (cols[7] == "silhouette") {
      r.criterion = Criterion::Silhouette;
    } else if (cols[7] == "none") {
      r.criterion = Criterion::None;
    } else {
      fail("unknown criterion");
    }
    if (cols[8] != "-") {
      auto s = parse_double(cols[8]);
      if (!s) fail("bad score");
      r.score = *s;
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string group_name_of(const Hypergraph& g, ObjectKind kind, std::size_t object) {
  return kind == ObjectKind::Vertex ? g.type_of(object).name : g.signature(object).name();
}

std::size_t assign(const ClusterModel& model, const ProfileStore& training,
                   const ProfileStore& query, ObjectKind kind, std::size_t object) {
  const std::string name = group_name_of(query.graph(), kind, object);
  const GroupModel* gm = model.find_group(kind, name);
  if (!gm || !gm->partition) {
    raise(ErrorCode::UnknownGroup, "no clustering for group '" + name + "'");
  }
  const auto clusters = gm->partition->clusters();
  std::size_t best = 0;
  double best_similarity = -1.0;
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    double sum = 0.0;
    for (std::size_t pos : clusters[c]) {
      sum += 1.0 - object_dissimilarity(kind, query, object, training, gm->group.members[pos],
                                        model.interpretation, model.compare,
                                        training.graph());
    }
    const double mean = sum / static_cast<double>(clusters[c].size());
    if (mean > best_similarity) {
      best_similarity = mean;
      best = c;
    }
  }
  return best;
}

LayerLabels labels_from_model(const ClusterModel& model, const Hypergraph& g) {
  LayerLabels out;
  out.attribute = model.attribute_name();
  out.vertex_predicate.resize(g.vertex_count());
  out.edge_predicate.resize(g.edge_count());
  for (const auto& gm : model.groups) {
    if (!gm.partition) continue;
    auto& slots = gm.group.kind == ObjectKind::Vertex ? out.vertex_predicate : out.edge_predicate;
    for (std::size_t pos = 0; pos < gm.group.members.size(); ++pos) {
      slots[gm.group.members[pos]] =
          predicate_name(model.layer, model.interpretation_index, model.algorithm,
                         gm.group.name, gm.partition->labels[pos]);
    }
  }
  return out;
}

Hypergraph lift_layer(const std::vector<LayerLabels>& labellings, const Hypergraph& g) {
  Hypergraph out;
  for (const auto& t : g.types()) {
    VertexType lifted{t.name, {}};
    for (const auto& l : labellings) lifted.schema.push_back({l.attribute, AttrKind::Categorical});
    out.add_type(std::move(lifted));
  }
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    std::vector<AttributeValue> attrs;
    for (const auto& l : labellings) {
      attrs.push_back(AttributeValue::categorical(
          l.vertex_predicate.at(v).value_or(std::string(kUnclustered))));
    }
    out.add_vertex(g.vertex(v).type, g.vertex(v).id, std::move(attrs));
  }
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    bool relabelled = false;
    for (const auto& l : labellings) {
      if (const auto& pred = l.edge_predicate.at(e)) {
        out.add_hyperedge(*pred, g.edge(e).endpoints);
        relabelled = true;
      }
    }
    if (!relabelled) out.add_hyperedge(g.edge(e).label, g.edge(e).endpoints);
  }
  return out;
}

Hypergraph lift_layer(const std::vector<ClusterModel>& models, const Hypergraph& g) {
  std::vector<LayerLabels> labellings;
  labellings.reserve(models.size());
  for (const auto& m : models) labellings.push_back(labels_from_model(m, g));
  return lift_layer(labellings, g);
}

}  // namespace curled
