// SPDX-FileCopyrightText: Copyright (c) 2026 The rescap Authors.
// SPDX-License-Identifier: Apache-2.0

#include "rescap/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rescap/error.hpp"
#include "rescap/intervention.hpp"
#include "rescap/io.hpp"
#include "rescap/metrics.hpp"
#include "rescap/pinv_cache.hpp"
#include "rescap/report.hpp"
#include "rescap/spectral.hpp"

namespace rescap::cli {

namespace fs = std::filesystem;

namespace {

struct RunConfig {
  std::string command;
  fs::path edges;
  fs::path attributes;
  std::string attribute_name;
  std::vector<std::string> strategies;
  std::size_t budget = 0;
  std::uint64_t seed = 0;
  std::size_t snapshot_every = 1;
  std::size_t refresh_interval = kDefaultRefreshInterval;
  fs::path out_dir;
  bool force = false;
  bool cache = false;
  bool reidentify = false;
};

/// Exception carrying the exit code it should map to.
struct Failure {
  ExitCode code;
  std::string message;
};

class Progress {
 public:
  explicit Progress(std::ostream& err) : err_(err) {}
  void operator()(const std::string& message) const { err_ << "[rescap] " << message << '\n'; }

 private:
  std::ostream& err_;
};

fs::path cache_directory() {
  if (const char* dir = std::getenv("RESCAP_CACHE_DIR"); dir && *dir) return dir;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) return fs::path(xdg) / "rescap";
  if (const char* home = std::getenv("HOME"); home && *home) {
    return fs::path(home) / ".cache" / "rescap";
  }
  return fs::temp_directory_path() / "rescap-cache";
}

struct Prepared {
  AttributedGraph graph;
  GroupPartition partition;
  LaplacianState state;
};

Prepared prepare(const RunConfig& cfg, const Progress& log) {
  for (const auto& [what, path] : {std::pair{"edge list", cfg.edges},
                                   std::pair{"attribute table", cfg.attributes}}) {
    if (path.empty() || !fs::is_regular_file(path)) {
      throw Failure{kValidationFailure, std::string(what) + " not found: " + path.string()};
    }
  }
  if (cfg.attribute_name.empty()) throw Failure{kValidationFailure, "--attr is required"};

  auto loaded = load_graph(cfg.edges, cfg.attributes, cfg.attribute_name);
  for (const auto& w : loaded.report.warnings) log("warning: " + w);
  log("loaded " + std::to_string(loaded.graph.node_count()) + " nodes, " +
      std::to_string(loaded.graph.edge_count()) + " edges");

  Prepared p;
  p.graph = largest_connected_component(loaded.graph);
  if (p.graph.node_count() != loaded.graph.node_count()) {
    log("largest connected component: " + std::to_string(p.graph.node_count()) + " nodes, " +
        std::to_string(p.graph.edge_count()) + " edges");
  }
  p.partition = partition_by_attribute(p.graph);
  if (p.partition.groups.size() < 2) {
    throw Failure{kTooFewGroups, "need at least two attribute groups, found " +
                                     std::to_string(p.partition.groups.size())};
  }

  std::optional<fs::path> cache_file;
  std::uint64_t hash = 0;
  if (cfg.cache) {
    hash = pinv_cache::content_hash(p.graph);
    cache_file = pinv_cache::entry_path(cache_directory(), hash);
    if (auto pinv = pinv_cache::load(*cache_file, p.graph.node_count(), hash)) {
      log("pseudo-inverse loaded from " + cache_file->string());
      p.state = LaplacianState::from_parts(laplacian_matrix(p.graph), std::move(*pinv),
                                           cfg.refresh_interval);
      return p;
    }
  }
  log("computing Laplacian pseudo-inverse (n=" + std::to_string(p.graph.node_count()) + ")");
  p.state = pseudo_inverse(p.graph, cfg.refresh_interval);
  if (cache_file) {
    try {
      pinv_cache::save(*cache_file, hash, p.state.pinv());
    } catch (const IoError& e) {
      log(std::string("warning: cache not written: ") + e.what());
    }
  }
  return p;
}

/// Collects rendered files so nothing is written until all of them exist.
class OutputSet {
 public:
  explicit OutputSet(fs::path dir) : dir_(std::move(dir)) {}

  void add(const std::string& name, std::string contents) {
    files_.emplace_back(dir_ / name, std::move(contents));
  }

  void check_writable(const std::vector<std::string>& names, bool force) const {
    if (force) return;
    for (const auto& name : names) {
      if (fs::exists(dir_ / name)) {
        throw Failure{kOutputExists, (dir_ / name).string() + " exists; pass --force to overwrite"};
      }
    }
  }

  void commit() {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) throw Failure{kIoFailure, "cannot create " + dir_.string() + ": " + ec.message()};
    for (const auto& [path, contents] : files_) write_file_atomic(path, contents);
    files_.clear();
  }

 private:
  fs::path dir_;
  std::vector<std::pair<fs::path, std::string>> files_;
};

template <typename Writer>
std::string render(Writer&& writer) {
  std::ostringstream s;
  writer(s);
  return s.str();
}

void add_metrics(OutputSet& outputs, const MetricsRecord& record) {
  outputs.add("metrics.json", to_json(record).dump(2) + "\n");
  outputs.add("metrics.csv", render([&](std::ostream& s) { write_metrics_csv(s, record); }));
}

Strategy strategy_or_throw(const std::string& name) {
  auto s = parse_strategy(name);
  if (!s) throw Failure{kValidationFailure, "unknown strategy '" + name + "'"};
  return *s;
}

InterventionConfig intervention_config(const RunConfig& cfg, Strategy strategy) {
  InterventionConfig ic;
  ic.budget = cfg.budget;
  ic.strategy = strategy;
  ic.snapshot_every = cfg.snapshot_every;
  ic.seed = cfg.seed;
  ic.refresh_interval = cfg.refresh_interval;
  ic.reidentify_disadvantaged = cfg.reidentify;
  return ic;
}

int cmd_analyze(const RunConfig& cfg, std::ostream& out, const Progress& log) {
  OutputSet outputs(cfg.out_dir);
  outputs.check_writable({"metrics.json", "metrics.csv"}, cfg.force);
  const auto prepared = prepare(cfg, log);
  const auto record = analyze_graph(prepared.graph, prepared.partition, prepared.state);
  add_metrics(outputs, record);
  outputs.commit();
  print_group_table(out, record);
  return kOk;
}

int cmd_intervene(const RunConfig& cfg, std::ostream& out, const Progress& log) {
  if (cfg.strategies.size() != 1) {
    throw Failure{kValidationFailure, "intervene takes exactly one --strategy"};
  }
  const Strategy strategy = strategy_or_throw(cfg.strategies.front());
  OutputSet outputs(cfg.out_dir);
  outputs.check_writable({"metrics.json", "metrics.csv", "edges.csv", "evolution.csv"},
                         cfg.force);
  auto prepared = prepare(cfg, log);

  log("running " + std::string(strategy_name(strategy)) + " with budget " +
      std::to_string(cfg.budget));
  const auto trace = run_intervention(prepared.graph, prepared.partition,
                                      intervention_config(cfg, strategy), prepared.state);
  const auto final_state = cfg.budget == 0 ? std::move(prepared.state)
                                           : pseudo_inverse(trace.final_graph, cfg.refresh_interval);
  const auto record = analyze_graph(trace.final_graph, prepared.partition, final_state);

  add_metrics(outputs, record);
  outputs.add("edges.csv",
              render([&](std::ostream& s) { write_edges_csv(s, trace, prepared.graph); }));
  outputs.add("evolution.csv", render([&](std::ostream& s) { write_evolution_csv(s, trace); }));
  outputs.commit();
  print_disparity_table(out, trace);
  if (trace.exhausted) {
    log("candidate set exhausted after " + std::to_string(trace.added_edges.size()) + " of " +
        std::to_string(cfg.budget) + " edges");
    return kBudgetExhausted;
  }
  return kOk;
}

int cmd_compare(const RunConfig& cfg, std::ostream& out, const Progress& log) {
  if (cfg.strategies.size() < 2) {
    throw Failure{kValidationFailure, "compare needs at least two strategies"};
  }
  std::vector<Strategy> strategies;
  for (const auto& name : cfg.strategies) strategies.push_back(strategy_or_throw(name));

  std::vector<std::string> names = {"pareto.csv"};
  for (Strategy s : strategies) {
    names.push_back("edges_" + std::string(strategy_name(s)) + ".csv");
    names.push_back("evolution_" + std::string(strategy_name(s)) + ".csv");
  }
  OutputSet outputs(cfg.out_dir);
  outputs.check_writable(names, cfg.force);
  const auto prepared = prepare(cfg, log);

  std::vector<InterventionTrace> traces;
  int status = kOk;
  for (Strategy s : strategies) {
    const std::string name(strategy_name(s));
    log("running " + name + " with budget " + std::to_string(cfg.budget));
    try {
      traces.push_back(run_intervention(prepared.graph, prepared.partition,
                                        intervention_config(cfg, s), prepared.state));
    } catch (const std::exception& e) {
      log("strategy " + name + " failed: " + e.what());
      status = kStrategyFailed;
      continue;
    }
    const auto& trace = traces.back();
    if (trace.exhausted) {
      log("strategy " + name + ": candidate set exhausted");
      if (status == kOk) status = kBudgetExhausted;
    }
    outputs.add("edges_" + name + ".csv",
                render([&](std::ostream& o) { write_edges_csv(o, trace, prepared.graph); }));
    outputs.add("evolution_" + name + ".csv",
                render([&](std::ostream& o) { write_evolution_csv(o, trace); }));
    print_disparity_table(out, trace);
  }
  const auto rows = pareto_points(traces);
  outputs.add("pareto.csv", render([&](std::ostream& o) { write_pareto_csv(o, rows); }));
  outputs.commit();
  return status;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Group social capital and structural group unfairness via effective resistance"};
  app.set_config("--config", "", "Read options from a TOML/INI file; flags take precedence");
  app.require_subcommand(1);

  RunConfig cfg;
  app.add_option("--edges", cfg.edges, "Edge list (two identifiers per line)");
  app.add_option("--attrs", cfg.attributes, "Attribute CSV with a 'node' column");
  app.add_option("--attr", cfg.attribute_name, "Attribute column defining the groups");
  app.add_option("--strategy", cfg.strategies,
                 "erg, random, cos, s-erg, s-cos or s-random (comma-separated for compare)")
      ->delimiter(',');
  app.add_option("--budget", cfg.budget, "Number of edges to add");
  app.add_option("--seed", cfg.seed, "Seed for the random strategies");
  app.add_option("--snapshot-every", cfg.snapshot_every, "Record metrics every N steps")
      ->check(CLI::PositiveNumber);
  app.add_option("--out", cfg.out_dir, "Output directory")->default_val(".");
  app.add_option("--refresh-interval", cfg.refresh_interval,
                 "Recompute the pseudo-inverse after this many rank-one updates")
      ->check(CLI::PositiveNumber);
  app.add_flag("--force", cfg.force, "Overwrite existing output files");
  app.add_flag("--cache", cfg.cache,
               "Reuse pseudo-inverses cached under $RESCAP_CACHE_DIR (or ~/.cache/rescap)");
  app.add_flag("--reidentify-group", cfg.reidentify,
               "Re-pick the most isolated group before every step");

  for (const char* name : {"analyze", "intervene", "compare"}) {
    auto* sub = app.add_subcommand(name);
    sub->fallthrough();
    sub->callback([&cfg, name] { cfg.command = name; });
  }
  app.get_subcommand("analyze")->description("Group metrics and disparities of the input graph");
  app.get_subcommand("intervene")->description("Run one edge-augmentation strategy");
  app.get_subcommand("compare")->description("Run several strategies from the same input");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  const Progress log(err);
  try {
    if (cfg.command == "analyze") return cmd_analyze(cfg, out, log);
    if (cfg.command == "intervene") return cmd_intervene(cfg, out, log);
    return cmd_compare(cfg, out, log);
  } catch (const Failure& f) {
    err << "error: " << f.message << '\n';
    return f.code;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kParseFailure;
  } catch (const TooFewGroupsError& e) {
    err << "error: " << e.what() << '\n';
    return kTooFewGroups;
  } catch (const SingularityError& e) {
    err << "error: " << e.what() << '\n';
    return kDisconnected;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kValidationFailure;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kIoFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace rescap::cli
