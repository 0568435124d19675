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

#include "curled/ingest.hpp"

#include <fstream>
#include <istream>
#include <sstream>

#include "curled/error.hpp"
#include "format.hpp"

namespace curled {

namespace {

constexpr std::string_view kFactsHeader = "# curled facts v1";

[[noreturn]] void fail_at(std::size_t line, ErrorCode code, const std::string& reason) {
  raise(code, "line " + std::to_string(line) + ": " + reason);
}

std::vector<std::string_view> statement_tokens(std::string_view line) {
  auto tokens = split_ws(line);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].front() == '#') {
      tokens.resize(i);
      break;
    }
  }
  return tokens;
}

void parse_fact_line(Hypergraph& g, std::span<const std::string_view> tok, std::size_t line) {
  const std::string_view keyword = tok[0];
  if (keyword == "type") {
    if (tok.size() < 2) fail_at(line, ErrorCode::ParseError, "type needs a name");
    if (g.find_type(tok[1])) fail_at(line, ErrorCode::ParseError, "type '" + std::string(tok[1]) + "' declared twice");
    VertexType type{std::string(tok[1]), {}};
    for (std::size_t i = 2; i < tok.size(); ++i) {
      const auto colon = tok[i].rfind(':');
      if (colon == std::string_view::npos) {
        fail_at(line, ErrorCode::ParseError, "attribute '" + std::string(tok[i]) + "' needs ':<kind>'");
      }
      const auto kind = tok[i].substr(colon + 1);
      AttrKind k;
      if (kind == "categorical") {
        k = AttrKind::Categorical;
      } else if (kind == "numeric") {
        k = AttrKind::Numeric;
      } else {
        fail_at(line, ErrorCode::ParseError, "unknown attribute kind '" + std::string(kind) + "'");
      }
      type.schema.push_back({std::string(tok[i].substr(0, colon)), k});
    }
    g.add_type(std::move(type));
  } else if (keyword == "node") {
    if (tok.size() < 3) fail_at(line, ErrorCode::ParseError, "node needs a type and an id");
    auto t = g.find_type(tok[1]);
    if (!t) fail_at(line, ErrorCode::UndeclaredType, "type '" + std::string(tok[1]) + "' not declared");
    const auto& schema = g.type(*t).schema;
    const std::size_t given = tok.size() - 3;
    if (given != schema.size()) {
      fail_at(line, ErrorCode::SchemaMismatch,
              "node '" + std::string(tok[2]) + "' has " + std::to_string(given) +
                  " values, type '" + std::string(tok[1]) + "' expects " +
                  std::to_string(schema.size()));
    }
    std::vector<AttributeValue> attrs;
    attrs.reserve(given);
    for (std::size_t i = 0; i < given; ++i) {
      const auto value = tok[3 + i];
      if (schema[i].kind == AttrKind::Numeric) {
        auto x = parse_double(value);
        if (!x) {
          fail_at(line, ErrorCode::SchemaMismatch,
                  "attribute '" + schema[i].name + "' expects a number, got '" +
                      std::string(value) + "'");
        }
        attrs.push_back(AttributeValue::numeric(*x));
      } else {
        attrs.push_back(AttributeValue::categorical(std::string(value)));
      }
    }
    g.add_vertex(*t, std::string(tok[2]), std::move(attrs));
  } else if (keyword == "edge") {
    if (tok.size() < 2) fail_at(line, ErrorCode::ParseError, "edge needs a label");
    std::vector<VertexIndex> ends;
    for (std::size_t i = 2; i < tok.size(); ++i) {
      auto v = g.find_vertex(tok[i]);
      if (!v) fail_at(line, ErrorCode::UnknownVertex, "node '" + std::string(tok[i]) + "' not declared");
      ends.push_back(*v);
    }
    g.add_hyperedge(std::string(tok[1]), std::move(ends));
  } else {
    fail_at(line, ErrorCode::ParseError, "unknown statement '" + std::string(keyword) + "'");
  }
}

}  // namespace

Hypergraph parse_facts(std::istream& in) {
  Hypergraph g;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto tok = statement_tokens(line);
    if (tok.empty()) continue;
    try {
      parse_fact_line(g, tok, number);
    } catch (const Error& e) {
      const std::string what = e.what();
      if (what.find(": line ") != std::string::npos) throw;
      throw Error(e.code(), "line " + std::to_string(number) + ": " + what);
    }
  }
  return g;
}

Hypergraph parse_facts(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_facts(in);
}

Hypergraph load_facts(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorCode::Io, "cannot open '" + path.string() + "'");
  return parse_facts(in);
}

std::string serialize_facts(const Hypergraph& g) {
  std::ostringstream out;
  out << kFactsHeader << '\n';
  for (const auto& t : g.types()) {
    out << "type " << t.name;
    for (const auto& a : t.schema) out << ' ' << a.name << ':' << to_string(a.kind);
    out << '\n';
  }
  for (const auto& v : g.vertices()) {
    out << "node " << g.type(v.type).name << ' ' << v.id;
    for (const auto& a : v.attributes) {
      out << ' ' << (a.kind() == AttrKind::Numeric ? format_double(a.number()) : a.label());
    }
    out << '\n';
  }
  for (const auto& e : g.edges()) {
    out << "edge " << e.label;
    for (VertexIndex v : e.endpoints) out << ' ' << g.vertex(v).id;
    out << '\n';
  }
  return out.str();
}

std::vector<SimilarityInterpretation> default_interpretations() {
  return {SimilarityInterpretation({0.5, 0.5, 0.0, 0.0, 0.0}),
          SimilarityInterpretation({0.0, 0.0, 0.33, 0.33, 0.34}),
          SimilarityInterpretation({0.2, 0.2, 0.2, 0.2, 0.2})};
}

namespace {

std::size_t positive_int(std::string_view value, std::size_t line, std::string_view key,
                         long long minimum) {
  auto x = parse_int(value);
  if (!x) fail_at(line, ErrorCode::ParseError, std::string(key) + " expects an integer");
  if (*x < minimum) {
    fail_at(line, ErrorCode::InvalidValue,
            std::string(key) + " must be >= " + std::to_string(minimum));
  }
  return static_cast<std::size_t>(*x);
}

void set_selection(RunConfig& cfg, std::string_view value, std::size_t line) {
  if (value == "silhouette") {
    cfg.selection = Criterion::Silhouette;
    return;
  }
  if (value == "difference") {
    cfg.selection = Criterion::Difference;
    return;
  }
  // difference(<alpha>)
  constexpr std::string_view prefix = "difference(";
  if (value.starts_with(prefix) && value.ends_with(")")) {
    auto alpha = parse_double(trim(value.substr(prefix.size(), value.size() - prefix.size() - 1)));
    if (!alpha) fail_at(line, ErrorCode::ParseError, "bad alpha in selection");
    if (!(*alpha > 0.0) || !std::isfinite(*alpha)) fail_at(line, ErrorCode::InvalidValue, "alpha must be > 0");
    cfg.selection = Criterion::Difference;
    cfg.alpha = *alpha;
    return;
  }
  fail_at(line, ErrorCode::InvalidValue, "unknown selection '" + std::string(value) + "'");
}

}  // namespace

RunConfig parse_config(std::istream& in) {
  RunConfig cfg;
  bool saw_interpretation = false;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view text = raw;
    if (auto hash = text.find('#'); hash != std::string_view::npos) text = text.substr(0, hash);
    text = trim(text);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) fail_at(line, ErrorCode::ParseError, "expected 'key = value'");
    const auto key = trim(text.substr(0, eq));
    const auto value = trim(text.substr(eq + 1));
    if (value.empty()) fail_at(line, ErrorCode::ParseError, "missing value for '" + std::string(key) + "'");

    if (key == "depth") {
      cfg.depth = positive_int(value, line, key, 1);
    } else if (key == "interpretation") {
      const auto parts = split_ws(value);
      if (parts.size() != kCoreComponents) {
        fail_at(line, ErrorCode::ParseError, "interpretation needs 5 weights");
      }
      std::array<double, kCoreComponents> w{};
      for (std::size_t i = 0; i < kCoreComponents; ++i) {
        auto x = parse_double(parts[i]);
        if (!x) fail_at(line, ErrorCode::ParseError, "bad weight '" + std::string(parts[i]) + "'");
        w[i] = *x;
      }
      if (!saw_interpretation) cfg.interpretations.clear();
      saw_interpretation = true;
      try {
        cfg.interpretations.emplace_back(w);
      } catch (const Error& e) {
        fail_at(line, ErrorCode::InvalidValue, e.what());
      }
    } else if (key == "algorithms" || key == "algorithm") {
      std::string list(value);
      for (auto& c : list) {
        if (c == ',') c = ' ';
      }
      cfg.algorithms.clear();
      for (auto name : split_ws(list)) {
        Algorithm a;
        if (name == "spectral") {
          a = Algorithm::Spectral;
        } else if (name == "hierarchical") {
          a = Algorithm::Hierarchical;
        } else {
          fail_at(line, ErrorCode::InvalidValue, "unknown algorithm '" + std::string(name) + "'");
        }
        if (std::find(cfg.algorithms.begin(), cfg.algorithms.end(), a) == cfg.algorithms.end()) {
          cfg.algorithms.push_back(a);
        }
      }
    } else if (key == "selection") {
      set_selection(cfg, value, line);
    } else if (key == "alpha") {
      auto x = parse_double(value);
      if (!x) fail_at(line, ErrorCode::ParseError, "alpha expects a number");
      if (!(*x > 0.0) || !std::isfinite(*x)) fail_at(line, ErrorCode::InvalidValue, "alpha must be > 0");
      cfg.alpha = *x;
    } else if (key == "k_max") {
      cfg.k_max = positive_int(value, line, key, 2);
    } else if (key == "edge_mode") {
      if (value == "merging") {
        cfg.edge_mode = EdgeMode::Merging;
      } else if (value == "combination") {
        cfg.edge_mode = EdgeMode::Combination;
      } else {
        fail_at(line, ErrorCode::InvalidValue, "unknown edge_mode '" + std::string(value) + "'");
      }
    } else if (key == "summarizer") {
      if (value == "mean") {
        cfg.summarizer = Summarizer::Mean;
      } else if (value == "min") {
        cfg.summarizer = Summarizer::Min;
      } else if (value == "max") {
        cfg.summarizer = Summarizer::Max;
      } else {
        fail_at(line, ErrorCode::InvalidValue, "unknown summarizer '" + std::string(value) + "'");
      }
    } else if (key == "layers") {
      cfg.layers = positive_int(value, line, key, 1);
    } else if (key == "seed") {
      auto x = parse_int(value);
      if (!x || *x < 0) fail_at(line, ErrorCode::InvalidValue, "seed must be a non-negative integer");
      cfg.seed = static_cast<std::uint64_t>(*x);
    } else {
      fail_at(line, ErrorCode::ParseError, "unknown key '" + std::string(key) + "'");
    }
  }
  if (cfg.algorithms.empty()) fail_at(line, ErrorCode::InvalidValue, "no algorithms selected");
  if (!saw_interpretation) cfg.interpretations = default_interpretations();
  return cfg;
}

RunConfig parse_config(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_config(in);
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorCode::Io, "cannot open '" + path.string() + "'");
  return parse_config(in);
}

std::string serialize_config(const RunConfig& cfg) {
  std::ostringstream out;
  out << "depth = " << cfg.depth << '\n';
  for (const auto& interp : cfg.interpretations) {
    out << "interpretation =";
    for (double w : interp.raw()) out << ' ' << format_double(w);
    out << '\n';
  }
  out << "algorithms =";
  for (std::size_t i = 0; i < cfg.algorithms.size(); ++i) {
    out << (i ? ", " : " ") << to_string(cfg.algorithms[i]);
  }
  out << '\n';
  out << "selection = " << to_string(cfg.selection) << '\n';
  out << "alpha = " << format_double(cfg.alpha) << '\n';
  out << "k_max = " << cfg.k_max << '\n';
  out << "edge_mode = " << to_string(cfg.edge_mode) << '\n';
  out << "summarizer = " << to_string(cfg.summarizer) << '\n';
  out << "layers = " << cfg.layers << '\n';
  out << "seed = " << cfg.seed << '\n';
  return out.str();
}

}  // namespace curled
