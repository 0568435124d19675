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

// curled: build, assign and inspect C-representations from the command line.
// Talks to the library only through its C interface.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <memory>
#include <string>

#include "curled/curled.h"

namespace {

struct GraphDeleter {
  void operator()(curled_graph* g) const { curled_graph_free(g); }
};
struct ConfigDeleter {
  void operator()(curled_config* c) const { curled_config_free(c); }
};
struct StringDeleter {
  void operator()(char* s) const { curled_string_free(s); }
};
using GraphPtr = std::unique_ptr<curled_graph, GraphDeleter>;
using ConfigPtr = std::unique_ptr<curled_config, ConfigDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

int report(curled_status status) {
  if (status != CURLED_OK) std::cerr << "curled: " << curled_last_error() << '\n';
  return static_cast<int>(status);
}

int usage(const std::string& message) {
  std::cerr << "curled: " << message << '\n';
  return CURLED_ERR_USAGE;
}

// Runs a call that hands back an owned string and prints it on success.
template <typename Call>
int print_owned(Call&& call) {
  char* text = nullptr;
  const curled_status status = call(&text);
  StringPtr owned(text);
  if (status != CURLED_OK) return report(status);
  std::cout << owned.get();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Clustering-based relational representation learning"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(curled_version()));

  std::string data, config_path, out, model;
  std::size_t threads = 0;

  auto* build = app.add_subcommand("build", "cluster a dataset and emit its C-representation");
  build->add_option("--data", data, "fact file")->required();
  build->add_option("--config", config_path, "run configuration (defaults if omitted)");
  build->add_option("--out", out, "output directory")->required();
  build->add_option("--threads", threads, "worker threads (0 = all cores)");

  auto* assign = app.add_subcommand("assign", "map objects onto a built model's clusters");
  assign->add_option("--model", model, "build output directory")->required();
  assign->add_option("--data", data, "fact file with the objects to map")->required();
  assign->add_option("--out", out, "output fact file")->required();
  assign->add_option("--threads", threads, "worker threads (0 = all cores)");

  std::string nt_id, matrix_group;
  std::size_t depth = 0;
  std::size_t interp = 1;
  bool manifest = false;
  auto* inspect = app.add_subcommand("inspect", "dump trees, matrices or manifests");
  inspect->add_option("--data", data, "fact file");
  inspect->add_option("--model", model, "build output directory");
  inspect->add_option("--config", config_path, "run configuration");
  inspect->add_option("--nt", nt_id, "vertex whose neighbourhood tree to print");
  inspect->add_option("--depth", depth, "tree depth (default: config depth)");
  inspect->add_option("--matrix", matrix_group, "group whose similarity matrix to print");
  inspect->add_option("--interp", interp, "1-based interpretation index for --matrix");
  inspect->add_flag("--manifest", manifest, "print the model manifest");
  inspect->add_option("--threads", threads, "worker threads (0 = all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : CURLED_ERR_USAGE;
  }

  if (build->parsed()) {
    curled_config* raw_config = nullptr;
    if (auto s = curled_config_load(config_path.empty() ? nullptr : config_path.c_str(), &raw_config)) {
      return report(s);
    }
    ConfigPtr config(raw_config);
    curled_build_summary summary{};
    if (auto s = curled_build(config.get(), data.c_str(), out.c_str(), threads, &summary)) {
      return report(s);
    }
    std::cerr << "curled: " << summary.vocabulary_size << " predicates, " << summary.fact_count
              << " facts, " << summary.degenerate_groups << " of " << summary.group_count
              << " groups unclusterable\n";
    return 0;
  }

  if (assign->parsed()) {
    curled_assign_summary summary{};
    if (auto s = curled_assign(model.c_str(), data.c_str(), out.c_str(), threads, &summary)) {
      return report(s);
    }
    std::cerr << "curled: assigned " << summary.assigned << ", skipped " << summary.skipped << '\n';
    return 0;
  }

  // inspect
  const int modes = (!nt_id.empty()) + (!matrix_group.empty()) + (manifest ? 1 : 0);
  if (modes != 1) return usage("inspect needs exactly one of --nt, --matrix, --manifest");
  if (manifest) {
    if (model.empty()) return usage("--manifest needs --model");
    return print_owned([&](char** out) { return curled_inspect_manifest(model.c_str(), out); });
  }

  namespace fs = std::filesystem;
  if (data.empty() && model.empty()) return usage("inspect needs --data or --model");
  const std::string data_path = data.empty() ? (fs::path(model) / "data.facts").string() : data;
  std::string cfg_path = config_path;
  if (cfg_path.empty() && !model.empty()) cfg_path = (fs::path(model) / "config.cfg").string();

  curled_graph* raw_graph = nullptr;
  if (auto s = curled_graph_load(data_path.c_str(), &raw_graph)) return report(s);
  GraphPtr graph(raw_graph);
  curled_config* raw_config = nullptr;
  if (auto s = curled_config_load(cfg_path.empty() ? nullptr : cfg_path.c_str(), &raw_config)) {
    return report(s);
  }
  ConfigPtr config(raw_config);

  if (!nt_id.empty()) {
    if (depth == 0) {
      char* echo = nullptr;
      if (auto s = curled_config_serialize(config.get(), &echo)) return report(s);
      StringPtr owned(echo);
      // first line of the echo is always "depth = <d>"
      depth = std::stoul(std::string(owned.get()).substr(std::string("depth = ").size()));
    }
    return print_owned(
        [&](char** out) { return curled_inspect_nt(graph.get(), nt_id.c_str(), depth, out); });
  }
  return print_owned([&](char** out) {
    return curled_inspect_matrix(graph.get(), config.get(), matrix_group.c_str(), interp, threads,
                                 out);
  });
}
