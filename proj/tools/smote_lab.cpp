// smote-lab: command-line front end for the sampling experiments.
//
// Every flag mirrors one field of the JSON run-config; values from --config
// are loaded first and flags given on the command line override them.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "smotelab/error.hpp"
#include "smotelab/run_config.hpp"

namespace {

using nlohmann::json;
using smotelab::Command;

enum class Shape { Scalar, List, Bool };

struct Binding {
  std::string flags;      // CLI11 name list, e.g. "--n,--n-grid"
  std::string pointer;    // JSON pointer into the run-config
  Shape shape;
  std::string help;
  std::string value;      // scalar/bool storage
  std::vector<std::string> values;  // list storage
  CLI::Option* option = nullptr;
};

// Integer, then real, then boolean, else the raw string; validation reports
// type mismatches with the field path.
json parse_scalar(const std::string& text) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(text, &used);
    if (used == text.size()) return v < 0 ? json(v) : json(static_cast<std::uint64_t>(v));
  } catch (...) {
  }
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (...) {
  }
  if (text == "true") return true;
  if (text == "false") return false;
  return text;
}

std::string default_text(const json& value) {
  if (value.is_array()) {
    std::string out;
    for (const auto& v : value) out += (out.empty() ? "" : ",") + v.dump();
    return out;
  }
  if (value.is_string()) return value.get<std::string>();
  if (value.is_null()) return "none";
  return value.dump();
}

struct Subcommand {
  Command command;
  CLI::App* app = nullptr;
  std::string config_path;
  std::vector<Binding> bindings;
};

void add_dist_flags(std::vector<Binding>& b, const std::string& base) {
  b.push_back({"--dist", base + "/kind", Shape::Scalar,
               "Distribution: uniform, gaussian or exponential", {}, {}});
  b.push_back({"--params", base + "/params", Shape::List,
               "Distribution parameters: a,b | mean,stddev | rate", {}, {}});
}

std::vector<Binding> bindings_for(Command command) {
  std::vector<Binding> b;
  switch (command) {
    case Command::Sample:
      add_dist_flags(b, "/params/dist");
      b.push_back({"--n", "/params/n", Shape::Scalar, "Base sample size", {}, {}});
      b.push_back({"--k", "/params/k", Shape::Scalar, "Neighbor rank k (or pool size K)", {}, {}});
      b.push_back({"--variant", "/params/variant", Shape::Scalar, "fixed (SMOTE-k) or pool (SMOTE-K)", {}, {}});
      b.push_back({"--count", "/params/count", Shape::Scalar, "Number of synthetic points", {}, {}});
      break;
    case Command::KsSweep:
    case Command::W1Sweep:
    case Command::KlSweep:
      add_dist_flags(b, "/params/source/distribution");
      if (command != Command::KlSweep) {
        b.push_back({"--data", "/params/source/dataset/path", Shape::Scalar, "Delimited text file with a header row", {}, {}});
        b.push_back({"--column", "/params/source/dataset/column", Shape::Scalar, "Column name or 0-based index", {}, {}});
        b.push_back({"--delimiter", "/params/source/dataset/delimiter", Shape::Scalar, "Field delimiter", {}, {}});
        b.push_back({"--decimal", "/params/source/dataset/decimal", Shape::Scalar, "Decimal separator", {}, {}});
        b.push_back({"--sentinel,--missing-sentinel", "/params/source/dataset/missing_sentinel", Shape::Scalar, "Value marking a missing reading", {}, {}});
        b.push_back({"--normalize", "/params/normalize", Shape::Bool, "Min-max scale the dataset to [0,1]", {}, {}});
        b.push_back({"--calibration", "/params/calibration", Shape::Bool, "Compare base subsets themselves (no synthesis)", {}, {}});
        b.push_back({"--reference-size", "/params/reference_size", Shape::Scalar, "Reference draw size for distribution sources", {}, {}});
      }
      if (command == Command::KsSweep) {
        b.push_back({"--metric", "/params/metric", Shape::Scalar, "ks2 (vs reference) or ks1 (vs analytic cdf)", {}, {}});
      }
      if (command == Command::KlSweep) {
        b.push_back({"--bins,--n-bins", "/params/n_bins", Shape::Scalar, "Histogram bins", {}, {}});
      }
      b.push_back({"--n,--n-grid", "/params/n_grid", Shape::List, "Base sample sizes", {}, {}});
      b.push_back({"--k,--k-values", "/params/k_values", Shape::List, "Neighbor ranks", {}, {}});
      b.push_back({"--trials", "/params/trials", Shape::Scalar, "Trials per (n, k)", {}, {}});
      b.push_back({"--draws,--draws-per-trial", "/params/draws_per_trial", Shape::Scalar, "Synthetic draws per trial", {}, {}});
      b.push_back({"--variant", "/params/variant", Shape::Scalar, "fixed (SMOTE-k) or pool (SMOTE-K)", {}, {}});
      b.push_back({"--group-size", "/params/group_size", Shape::Scalar, "Draws per base subset (0: one per trial)", {}, {}});
      break;
    case Command::Overlay:
      add_dist_flags(b, "/params/dist");
      b.push_back({"--n,--n-values", "/params/n_values", Shape::List, "Base sample sizes", {}, {}});
      b.push_back({"--k", "/params/k", Shape::Scalar, "Neighbor rank", {}, {}});
      b.push_back({"--variant", "/params/variant", Shape::Scalar, "fixed (SMOTE-k) or pool (SMOTE-K)", {}, {}});
      b.push_back({"--draws", "/params/draws", Shape::Scalar, "Synthetic draws per n", {}, {}});
      b.push_back({"--group-size", "/params/group_size", Shape::Scalar, "Draws per fresh base sample", {}, {}});
      b.push_back({"--grid", "/params/grid", Shape::List, "Evaluation grid (empty: automatic)", {}, {}});
      break;
    case Command::SpacingCheck:
      b.push_back({"--n,--n-values", "/params/n_values", Shape::List, "Sample sizes", {}, {}});
      b.push_back({"--trials", "/params/trials", Shape::Scalar, "Monte Carlo trials (>= 1000)", {}, {}});
      break;
    case Command::TailProbCheck:
      add_dist_flags(b, "/params/dist");
      b.push_back({"--n", "/params/n", Shape::Scalar, "Sample size", {}, {}});
      b.push_back({"--k,--k-values", "/params/k_values", Shape::List, "Neighbor ranks (ascending)", {}, {}});
      b.push_back({"--epsilon", "/params/epsilon", Shape::Scalar, "Distance threshold", {}, {}});
      b.push_back({"--trials", "/params/trials", Shape::Scalar, "Monte Carlo trials", {}, {}});
      break;
  }
  return b;
}

std::string help_default(const json& defaults, const std::string& pointer) {
  const json::json_pointer ptr(pointer);
  if (defaults.contains(ptr)) return default_text(defaults.at(ptr));
  // Dataset fields have no default because the default source is a distribution.
  if (pointer.ends_with("/delimiter")) return ",";
  if (pointer.ends_with("/decimal")) return ".";
  return "none";
}

void register_subcommand(CLI::App& app, Subcommand& sub, std::string& out_dir,
                         std::string& threads, std::string& seed, std::string& description) {
  const std::string name(smotelab::to_string(sub.command));
  sub.app = app.add_subcommand(name, description);
  sub.bindings = bindings_for(sub.command);
  const json defaults = smotelab::to_json(smotelab::default_config(sub.command));

  sub.app->add_option("--config", sub.config_path, "JSON run-config; flags override its fields")
      ->default_str("none");
  sub.app->add_option("--seed", seed, "Root seed of every random stream")
      ->default_str(default_text(defaults.at("seed")));
  sub.app->add_option("--threads", threads,
                      "Worker threads (0 = all cores; env SMOTE_LAB_THREADS); results do not depend on it")
      ->default_str("0");
  sub.app->add_option("--out-dir", out_dir, "Directory for CSV, SVG and provenance.json")
      ->default_str("out");

  for (auto& bind : sub.bindings) {
    const std::string shown = help_default(defaults, bind.pointer);
    if (bind.shape == Shape::List) {
      bind.option = sub.app->add_option(bind.flags, bind.values, bind.help)->delimiter(',');
    } else if (bind.shape == Shape::Bool) {
      bind.option = sub.app->add_option(bind.flags, bind.value, bind.help)
                        ->expected(0, 1)
                        ->default_str(shown);
      continue;
    } else {
      bind.option = sub.app->add_option(bind.flags, bind.value, bind.help);
    }
    bind.option->default_str(shown);
  }
}

json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw smotelab::Error(smotelab::ErrorCode::FileNotFound, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw smotelab::Error(smotelab::ErrorCode::ConfigError, path + ": " + e.what());
  }
}

void apply_flags(json& raw, const std::vector<Binding>& bindings) {
  for (const auto& bind : bindings) {
    if (bind.option == nullptr || bind.option->count() == 0) continue;
    // Choosing one source kind on the command line discards the other.
    if (bind.pointer.starts_with("/params/source/dataset/") && raw.contains("params") &&
        raw["params"].contains("source")) {
      raw["params"]["source"].erase("distribution");
    }
    if (bind.pointer.starts_with("/params/source/distribution/") && raw.contains("params") &&
        raw["params"].contains("source")) {
      raw["params"]["source"].erase("dataset");
    }
    const json::json_pointer ptr(bind.pointer);
    switch (bind.shape) {
      case Shape::Scalar:
        // Column names stay strings even when they look numeric only if quoted
        // in a config file; on the command line a bare integer is an index.
        raw[ptr] = parse_scalar(bind.value);
        if (bind.pointer.ends_with("/delimiter") || bind.pointer.ends_with("/decimal") ||
            bind.pointer.ends_with("/path") || bind.pointer.ends_with("/kind") ||
            bind.pointer.ends_with("/variant") || bind.pointer.ends_with("/metric")) {
          raw[ptr] = bind.value;
        }
        break;
      case Shape::Bool:
        raw[ptr] = bind.value.empty() ? json(true) : parse_scalar(bind.value);
        break;
      case Shape::List: {
        json arr = json::array();
        for (const auto& v : bind.values) arr.push_back(parse_scalar(v));
        raw[ptr] = std::move(arr);
        break;
      }
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"smote-lab: SMOTE-k / SMOTE-K sampling and convergence experiments"};
  app.require_subcommand(1);
  app.fallthrough(false);

  std::string out_dir = "out";
  std::string threads;
  std::string seed;

  std::map<Command, std::string> descriptions{
      {Command::Sample, "Draw a base sample and print SMOTE points"},
      {Command::KsSweep, "Kolmogorov-Smirnov convergence sweep over n and k"},
      {Command::W1Sweep, "Wasserstein-1 convergence sweep over n and k"},
      {Command::KlSweep, "Histogram KL(Z||X) sweep over n and k"},
      {Command::Overlay, "Kernel density of Z next to the true pdf"},
      {Command::SpacingCheck, "Monte Carlo check of mean uniform spacings = 1/(n+1)"},
      {Command::TailProbCheck, "Tail probabilities of rank-k neighbor distances"},
  };

  std::vector<Subcommand> subs;
  for (Command c : smotelab::all_commands()) subs.push_back({c, nullptr, {}, {}});
  for (auto& sub : subs) register_subcommand(app, sub, out_dir, threads, seed, descriptions[sub.command]);

  std::string run_config_path;
  auto* run = app.add_subcommand("run", "Replay a run-config or provenance.json");
  run->add_option("--config", run_config_path, "Run-config file")->required();
  run->add_option("--threads", threads, "Worker threads (0 = all cores)")->default_str("0");
  run->add_option("--out-dir", out_dir, "Output directory")->default_str("out");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  json raw = json::object();
  const Subcommand* active = nullptr;
  try {
    if (run->parsed()) {
      raw = load_config_file(run_config_path);
    } else {
      for (const auto& sub : subs) {
        if (sub.app->parsed()) active = &sub;
      }
      if (!active->config_path.empty()) raw = load_config_file(active->config_path);
      const std::string name(smotelab::to_string(active->command));
      if (raw.contains("command") && raw["command"] != name) {
        std::cerr << "error: command: config file is for '" << raw["command"].dump()
                  << "', not '" << name << "'\n";
        return 1;
      }
      raw["command"] = name;
      apply_flags(raw, active->bindings);
      if (!seed.empty()) raw["seed"] = parse_scalar(seed);
    }
  } catch (const smotelab::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  if (threads.empty()) {
    if (const char* env = std::getenv("SMOTE_LAB_THREADS")) threads = env;
  }
  if (!threads.empty()) raw["threads"] = parse_scalar(threads);

  const auto validation = smotelab::validate_config(raw);
  if (!validation.ok()) {
    for (const auto& issue : validation.issues) {
      std::cerr << "error: " << issue.field << ": " << issue.message << '\n';
    }
    return 1;
  }

  try {
    const auto outputs = smotelab::execute(*validation.config, out_dir, std::cout);
    for (const auto& file : outputs.files) std::cerr << "wrote " << (std::filesystem::path(out_dir) / file).string() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
