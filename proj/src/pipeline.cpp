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

#include "curled/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

#include "curled/error.hpp"
#include "curled/parallel.hpp"
#include "format.hpp"

namespace curled {

namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<ObjectGroup> all_groups(const Hypergraph& g) {
  auto groups = vertex_groups(g);
  auto edges = edge_groups(g);
  groups.insert(groups.end(), std::make_move_iterator(edges.begin()),
                std::make_move_iterator(edges.end()));
  return groups;
}

std::string layer_tag(std::size_t layer) { return "layer " + std::to_string(layer); }

}  // namespace

BuildResult build_representation(const Hypergraph& input, const RunConfig& cfg,
                                 std::size_t threads) {
  if (input.vertex_count() == 0) raise(ErrorCode::NoVertices, "no vertices");
  if (cfg.interpretations.empty()) raise(ErrorCode::InvalidValue, "no interpretations");
  BuildResult result;
  result.manifest.config_echo = serialize_config(cfg);
  result.manifest.seed = cfg.seed;
  result.graphs.push_back(input);
  const CompareOptions compare{cfg.edge_mode, cfg.summarizer};

  for (std::size_t layer = 1; layer <= cfg.layers; ++layer) {
    const Hypergraph& g = result.graphs.back();
    auto start = Clock::now();
    const ProfileStore store(g, cfg.depth, threads);
    result.manifest.stage_seconds.emplace_back(layer_tag(layer) + " neighbourhood trees",
                                               seconds_since(start));

    const auto groups = all_groups(g);
    const std::size_t n_interp = cfg.interpretations.size();
    const std::size_t n_alg = cfg.algorithms.size();

    start = Clock::now();
    std::vector<std::optional<SimilarityMatrix>> matrices(n_interp * groups.size());
    for (std::size_t i = 0; i < n_interp; ++i) {
      for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        if (groups[gi].members.size() < 2) continue;
        matrices[i * groups.size() + gi] =
            similarity_matrix(store, groups[gi], cfg.interpretations[i], compare, threads);
      }
    }
    result.manifest.stage_seconds.emplace_back(layer_tag(layer) + " similarity matrices",
                                               seconds_since(start));

    start = Clock::now();
    const std::size_t n_tasks = n_interp * n_alg * groups.size();
    std::vector<GroupModel> fitted(n_tasks);
    std::vector<GroupSelection> selections(n_tasks);
    parallel_for(n_tasks, threads, [&](std::size_t t) {
      const std::size_t gi = t % groups.size();
      const std::size_t a = (t / groups.size()) % n_alg;
      const std::size_t i = t / (groups.size() * n_alg);
      GroupModel& gm = fitted[t];
      gm.group = groups[gi];
      GroupSelection& sel = selections[t];
      sel = {layer, i + 1, cfg.algorithms[a], groups[gi].kind, groups[gi].name,
             groups[gi].members.size(), "ok", {}};
      const auto& matrix = matrices[i * groups.size() + gi];
      if (!matrix) {
        gm.partition = canonical_partition({0}, cfg.algorithms[a], cfg.seed);
        gm.report = SelectionReport{Criterion::None, 1, 1, {}, 1};
        gm.medoids = {0};
        sel.status = "trivial";
        sel.report = *gm.report;
        return;
      }
      try {
        auto [partition, report] =
            select_k(matrix->values, {cfg.algorithms[a], cfg.selection, cfg.alpha,
                                      cfg.k_max, cfg.seed});
        gm.partition = std::move(partition);
        gm.report = report;
        sel.report = report;
        if (report.criterion == Criterion::None) sel.status = "trivial";
        compute_medoids(gm, matrix->values);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::DegenerateMatrix) {
          throw Error(e.code(), std::string(e.what()) + " (layer " + std::to_string(layer) +
                                    ", interpretation " + std::to_string(i + 1) + ", " +
                                    std::string(to_string(cfg.algorithms[a])) + ", group '" +
                                    groups[gi].name + "')");
        }
        gm.failure = e.what();
        sel.status = "degenerate";
        sel.report.criterion = cfg.selection;
      }
    });
    result.manifest.stage_seconds.emplace_back(layer_tag(layer) + " clustering",
                                               seconds_since(start));

    std::vector<ClusterModel> models;
    for (std::size_t i = 0; i < n_interp; ++i) {
      for (std::size_t a = 0; a < n_alg; ++a) {
        ClusterModel m;
        m.layer = layer;
        m.interpretation_index = i + 1;
        m.interpretation = cfg.interpretations[i];
        m.algorithm = cfg.algorithms[a];
        m.compare = compare;
        for (std::size_t gi = 0; gi < groups.size(); ++gi) {
          const std::size_t t = (i * n_alg + a) * groups.size() + gi;
          m.groups.push_back(std::move(fitted[t]));
          result.manifest.selections.push_back(std::move(selections[t]));
        }
        result.representation.append(emit(m, g));
        models.push_back(std::move(m));
      }
    }
    if (layer < cfg.layers) result.graphs.push_back(lift_layer(models, g));
    result.models.push_back(std::move(models));
  }
  result.manifest.vocabulary_size = result.representation.manifest.size();
  result.manifest.fact_count = result.representation.facts.size();
  return result;
}

std::string format_selection(const std::vector<GroupSelection>& rows) {
  std::ostringstream out;
  out << "layer\tinterpretation_index\talgorithm\tkind\tgroup\tobjects\tstatus\tcriterion\tk\tscore\tchosen\n";
  for (const auto& r : rows) {
    const auto prefix = [&] {
      std::ostringstream p;
      p << r.layer << '\t' << r.interpretation_index << '\t' << to_string(r.algorithm) << '\t'
        << (r.kind == ObjectKind::Vertex ? "vertex" : "edge") << '\t' << r.group << '\t'
        << r.objects << '\t' << r.status << '\t' << to_string(r.report.criterion);
      return p.str();
    }();
    if (r.report.scores.empty()) {
      out << prefix << '\t' << (r.report.chosen_k ? std::to_string(r.report.chosen_k) : "-")
          << "\t-\t" << (r.report.chosen_k ? "yes" : "-") << '\n';
      continue;
    }
    for (const auto& s : r.report.scores) {
      out << prefix << '\t' << s.k << '\t' << (s.score ? format_double(*s.score) : "-") << '\t'
          << (s.k == r.report.chosen_k ? "yes" : "no") << '\n';
    }
  }
  return out.str();
}

std::string format_summary(const RunManifest& m) {
  std::size_t degenerate = 0;
  for (const auto& s : m.selections) degenerate += s.status == "degenerate";
  std::ostringstream out;
  out << "key\tvalue\n";
  out << "seed\t" << m.seed << '\n';
  out << "groups\t" << m.selections.size() << '\n';
  out << "degenerate_groups\t" << degenerate << '\n';
  out << "vocabulary_size\t" << m.vocabulary_size << '\n';
  out << "facts\t" << m.fact_count << '\n';
  return out.str();
}

namespace {

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) raise(ErrorCode::Io, "cannot write '" + path.string() + "'");
  out << content;
  if (!out.flush()) raise(ErrorCode::Io, "write failed for '" + path.string() + "'");
}

std::string read_file(const fs::path& path, ErrorCode missing) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(missing, "cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

constexpr const char* kFactsFile = "facts.pl";
constexpr const char* kManifestFile = "manifest.tsv";
constexpr const char* kSelectionFile = "selection.tsv";
constexpr const char* kSummaryFile = "summary.tsv";
constexpr const char* kDataFile = "data.facts";
constexpr const char* kConfigFile = "config.cfg";

void replace_directory(const fs::path& staged, const fs::path& target) {
  std::error_code ec;
  if (fs::exists(target, ec)) {
    const bool ours = fs::is_directory(target) &&
                      (fs::is_empty(target) || fs::exists(target / kManifestFile));
    if (!ours) {
      fs::remove_all(staged, ec);
      raise(ErrorCode::Io, "refusing to overwrite '" + target.string() +
                               "': not a previous build output");
    }
    fs::remove_all(target);
  }
  fs::rename(staged, target);
}

}  // namespace

RunManifest run_build(const RunConfig& config, const fs::path& data, const fs::path& out_dir,
                      std::size_t threads) {
  auto start = Clock::now();
  const Hypergraph g = load_facts(data);
  const double parse_seconds = seconds_since(start);
  BuildResult result = build_representation(g, config, threads);
  result.manifest.stage_seconds.insert(result.manifest.stage_seconds.begin(),
                                       {"parse", parse_seconds});

  start = Clock::now();
  fs::path target = fs::absolute(out_dir);
  if (target.filename().empty()) target = target.parent_path();
  const fs::path staged = target.parent_path() / ("." + target.filename().string() + ".partial");
  std::error_code ec;
  fs::remove_all(staged, ec);
  fs::create_directories(staged);
  try {
    write_file(staged / kFactsFile, format_facts(result.representation.facts));
    write_file(staged / kManifestFile, format_manifest(result.representation.manifest));
    write_file(staged / kSelectionFile, format_selection(result.manifest.selections));
    write_file(staged / kSummaryFile, format_summary(result.manifest));
    write_file(staged / kDataFile, serialize_facts(g));
    write_file(staged / kConfigFile, result.manifest.config_echo);
    replace_directory(staged, target);
  } catch (...) {
    fs::remove_all(staged, ec);
    throw;
  }
  result.manifest.stage_seconds.emplace_back("write", seconds_since(start));
  return result.manifest;
}

LoadedModel load_model(const fs::path& dir) {
  if (!fs::is_directory(dir)) raise(ErrorCode::ModelNotFound, "'" + dir.string() + "' is not a directory");
  LoadedModel m;
  {
    std::istringstream in(read_file(dir / kConfigFile, ErrorCode::ModelNotFound));
    m.config = parse_config(in);
  }
  {
    std::istringstream in(read_file(dir / kDataFile, ErrorCode::ModelNotFound));
    m.data = parse_facts(in);
  }
  {
    std::istringstream in(read_file(dir / kManifestFile, ErrorCode::ModelNotFound));
    m.manifest = parse_manifest(in);
  }
  {
    std::istringstream in(read_file(dir / kFactsFile, ErrorCode::ModelNotFound));
    m.facts = parse_fact_lines(in);
  }
  return m;
}

namespace {

using RowKey = std::tuple<std::size_t, std::size_t, Algorithm, std::string>;

std::vector<std::string> member_key(const Hypergraph& g, ObjectKind kind, std::size_t object) {
  if (kind == ObjectKind::Vertex) return {g.vertex(object).id};
  std::vector<std::string> key;
  for (VertexIndex v : g.edge(object).endpoints) key.push_back(g.vertex(v).id);
  return key;
}

/// Rebuilds one layer's models from the emitted facts and manifest.
std::vector<ClusterModel> reconstruct_layer(
    const LoadedModel& model, std::size_t layer, const Hypergraph& g,
    const std::map<RowKey, std::size_t>& k_of,
    const std::map<std::string, std::vector<const Fact*>>& facts_of) {
  const auto groups = all_groups(g);
  const CompareOptions compare{model.config.edge_mode, model.config.summarizer};
  std::vector<ClusterModel> models;
  for (std::size_t i = 0; i < model.config.interpretations.size(); ++i) {
    for (Algorithm alg : model.config.algorithms) {
      ClusterModel m;
      m.layer = layer;
      m.interpretation_index = i + 1;
      m.interpretation = model.config.interpretations[i];
      m.algorithm = alg;
      m.compare = compare;
      for (const auto& group : groups) {
        GroupModel gm;
        gm.group = group;
        auto it = k_of.find({layer, i + 1, alg, group.name});
        if (it != k_of.end()) {
          std::map<std::vector<std::string>, std::vector<std::size_t>> positions;
          for (std::size_t pos = 0; pos < group.members.size(); ++pos) {
            positions[member_key(g, group.kind, group.members[pos])].push_back(pos);
          }
          constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
          std::vector<std::size_t> labels(group.members.size(), kUnset);
          for (std::size_t c = 0; c < it->second; ++c) {
            const auto pred = predicate_name(layer, i + 1, alg, group.name, c);
            auto facts = facts_of.find(pred);
            if (facts == facts_of.end()) continue;
            for (const Fact* f : facts->second) {
              auto slot = positions.find(f->args);
              if (slot == positions.end() || slot->second.empty()) {
                raise(ErrorCode::ModelNotFound,
                      "fact " + format_fact(*f) + " does not match the model data");
              }
              labels[slot->second.front()] = c;
              slot->second.erase(slot->second.begin());
            }
          }
          if (std::find(labels.begin(), labels.end(), kUnset) != labels.end()) {
            raise(ErrorCode::ModelNotFound,
                  "group '" + group.name + "' has members without a cluster fact");
          }
          gm.partition = Partition{std::move(labels), it->second, alg, model.config.seed};
        }
        m.groups.push_back(std::move(gm));
      }
      models.push_back(std::move(m));
    }
  }
  return models;
}

struct Placement {
  std::size_t group = 0;
  std::size_t cluster = 0;
  Fact fact;
};

}  // namespace

AssignResult assign_representation(const LoadedModel& model, const Hypergraph& query,
                                   std::size_t threads) {
  std::map<RowKey, std::size_t> k_of;
  for (const auto& r : model.manifest) k_of[{r.layer, r.interpretation_index, r.algorithm, r.group}] = r.k;
  std::map<std::string, std::vector<const Fact*>> facts_of;
  for (const auto& f : model.facts) facts_of[f.predicate].push_back(&f);

  AssignResult result;
  Hypergraph training = model.data;
  Hypergraph held_out = query;
  for (std::size_t layer = 1; layer <= model.config.layers; ++layer) {
    const auto models = reconstruct_layer(model, layer, training, k_of, facts_of);
    const ProfileStore train_store(training, model.config.depth, threads);
    const ProfileStore query_store(held_out, model.config.depth, threads);
    std::vector<LayerLabels> labellings;
    for (const auto& m : models) {
      LayerLabels labels;
      labels.attribute = m.attribute_name();
      labels.vertex_predicate.resize(held_out.vertex_count());
      labels.edge_predicate.resize(held_out.edge_count());

      const std::size_t nv = held_out.vertex_count();
      const std::size_t n = nv + held_out.edge_count();
      std::vector<std::optional<Placement>> placed(n);
      std::vector<std::string> errors(n);
      parallel_for(n, threads, [&](std::size_t o) {
        const ObjectKind kind = o < nv ? ObjectKind::Vertex : ObjectKind::Edge;
        const std::size_t object = o < nv ? o : o - nv;
        const std::string name = group_name_of(held_out, kind, object);
        std::size_t gi = 0;
        while (gi < m.groups.size() &&
               !(m.groups[gi].group.kind == kind && m.groups[gi].group.name == name)) {
          ++gi;
        }
        try {
          const std::size_t c = assign(m, train_store, query_store, kind, object);
          placed[o] = Placement{gi, c,
                                {predicate_name(layer, m.interpretation_index, m.algorithm,
                                                name, c),
                                 member_key(held_out, kind, object)}};
        } catch (const Error& e) {
          if (e.code() != ErrorCode::UnknownGroup) throw;
          errors[o] = e.what();
        }
      });
      std::vector<Placement> ordered;
      for (std::size_t o = 0; o < n; ++o) {
        const bool vertex = o < nv;
        const std::size_t object = vertex ? o : o - nv;
        if (!placed[o]) {
          ++result.skipped;
          result.messages.push_back(layer_tag(layer) + " " + m.attribute_name() + " " +
                                    (vertex ? "vertex '" + held_out.vertex(object).id + "'"
                                            : "edge " + edge_display_name(held_out, object)) +
                                    ": " + errors[o]);
          continue;
        }
        ++result.assigned;
        (vertex ? labels.vertex_predicate : labels.edge_predicate)[object] =
            placed[o]->fact.predicate;
        ordered.push_back(std::move(*placed[o]));
      }
      std::sort(ordered.begin(), ordered.end(), [](const Placement& a, const Placement& b) {
        return std::tie(a.group, a.cluster, a.fact.args) < std::tie(b.group, b.cluster, b.fact.args);
      });
      for (auto& p : ordered) result.facts.push_back(std::move(p.fact));
      labellings.push_back(std::move(labels));
    }
    if (layer < model.config.layers) {
      Hypergraph next_training = lift_layer(models, training);
      held_out = lift_layer(labellings, held_out);
      training = std::move(next_training);
    }
  }
  return result;
}

AssignResult run_assign(const fs::path& model_dir, const fs::path& data, const fs::path& out_path,
                        std::size_t threads) {
  const LoadedModel model = load_model(model_dir);
  const Hypergraph query = load_facts(data);
  AssignResult result = assign_representation(model, query, threads);
  const fs::path staged = out_path.string() + ".partial";
  try {
    write_file(staged, format_facts(result.facts));
    fs::rename(staged, out_path);
  } catch (...) {
    std::error_code ec;
    fs::remove(staged, ec);
    throw;
  }
  return result;
}

std::string inspect_nt(const Hypergraph& g, std::string_view id, std::size_t depth) {
  if (!g.find_vertex(id)) raise(ErrorCode::TargetNotFound, "vertex '" + std::string(id) + "'");
  return render_nt(g, build_nt(g, id, depth));
}

std::string inspect_matrix(const Hypergraph& g, const RunConfig& config, std::string_view group,
                           std::size_t interpretation_index, std::size_t threads) {
  if (interpretation_index < 1 || interpretation_index > config.interpretations.size()) {
    raise(ErrorCode::TargetNotFound,
          "interpretation " + std::to_string(interpretation_index) + " (config has " +
              std::to_string(config.interpretations.size()) + ")");
  }
  for (const auto& candidate : all_groups(g)) {
    if (candidate.name != group) continue;
    const ProfileStore store(g, config.depth, threads);
    return matrix_tsv(similarity_matrix(store, candidate,
                                        config.interpretations[interpretation_index - 1],
                                        {config.edge_mode, config.summarizer}, threads));
  }
  raise(ErrorCode::TargetNotFound, "group '" + std::string(group) + "'");
}

std::string inspect_manifest(const fs::path& model_dir) {
  if (!fs::is_directory(model_dir)) {
    raise(ErrorCode::ModelNotFound, "'" + model_dir.string() + "' is not a directory");
  }
  return read_file(model_dir / kManifestFile, ErrorCode::ModelNotFound);
}

}  // namespace curled
