#include "smotelab/run_config.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <set>

#include "smotelab/error.hpp"
#include "smotelab/report.hpp"

namespace smotelab {

using nlohmann::json;

namespace {

constexpr std::uint64_t kTagSampleBase = 101;
constexpr std::uint64_t kTagSampleDraws = 102;

// Pulls typed fields out of one JSON object, recording every problem under
// its dotted path. Nested readers share the same issue list.
class FieldReader {
 public:
  FieldReader(const json& obj, std::string path, std::vector<ConfigIssue>& issues)
      : obj_(obj), path_(std::move(path)), issues_(issues) {
    if (!obj_.is_object()) fail("", "must be an object");
  }

  bool valid() const { return obj_.is_object(); }
  bool has(const std::string& key) const { return valid() && obj_.contains(key); }
  const json& raw(const std::string& key) const { return obj_.at(key); }
  std::string at(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }
  std::vector<ConfigIssue>& issues() { return issues_; }

  void fail(const std::string& key, const std::string& message) {
    issues_.push_back({key.empty() ? path_ : at(key), message});
  }

  std::size_t count(const std::string& key, std::size_t fallback) {
    if (!has(key)) return fallback;
    const auto v = read_unsigned(raw(key), key);
    return v ? static_cast<std::size_t>(*v) : fallback;
  }

  std::uint64_t u64(const std::string& key, std::uint64_t fallback) {
    if (!has(key)) return fallback;
    return read_unsigned(raw(key), key).value_or(fallback);
  }

  double real(const std::string& key, double fallback) {
    if (!has(key)) return fallback;
    if (!raw(key).is_number()) {
      fail(key, "must be a number");
      return fallback;
    }
    return raw(key).get<double>();
  }

  bool flag(const std::string& key, bool fallback) {
    if (!has(key)) return fallback;
    if (!raw(key).is_boolean()) {
      fail(key, "must be true or false");
      return fallback;
    }
    return raw(key).get<bool>();
  }

  std::string text(const std::string& key, const std::string& fallback) {
    if (!has(key)) return fallback;
    if (!raw(key).is_string()) {
      fail(key, "must be a string");
      return fallback;
    }
    return raw(key).get<std::string>();
  }

  std::vector<std::size_t> counts(const std::string& key, std::vector<std::size_t> fallback) {
    if (!has(key)) return fallback;
    const json& arr = raw(key);
    if (!arr.is_array()) {
      fail(key, "must be an array of non-negative integers");
      return fallback;
    }
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const auto v = read_unsigned(arr[i], key + "[" + std::to_string(i) + "]");
      if (!v) return fallback;
      out.push_back(static_cast<std::size_t>(*v));
    }
    return out;
  }

  std::vector<double> reals(const std::string& key, std::vector<double> fallback) {
    if (!has(key)) return fallback;
    const json& arr = raw(key);
    if (!arr.is_array() ||
        !std::all_of(arr.begin(), arr.end(), [](const json& v) { return v.is_number(); })) {
      fail(key, "must be an array of numbers");
      return fallback;
    }
    return arr.get<std::vector<double>>();
  }

  void reject_unknown(const std::set<std::string>& allowed) {
    if (!valid()) return;
    for (const auto& [key, value] : obj_.items()) {
      if (!allowed.contains(key)) fail(key, "unknown field");
    }
  }

 private:
  std::optional<std::uint64_t> read_unsigned(const json& v, const std::string& key) {
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer()) {
      fail(key, "must be non-negative, got " + v.dump());
      return std::nullopt;
    }
    fail(key, "must be a non-negative integer");
    return std::nullopt;
  }

  const json& obj_;
  std::string path_;
  std::vector<ConfigIssue>& issues_;
};

json dist_to_json(const DistributionSpec& spec) {
  return {{"kind", std::string(to_string(spec.kind()))}, {"params", spec.params()}};
}

DistributionSpec read_dist(FieldReader& parent, const std::string& key,
                           const DistributionSpec& fallback) {
  if (!parent.has(key)) return fallback;
  FieldReader r(parent.raw(key), parent.at(key), parent.issues());
  if (!r.valid()) return fallback;
  r.reject_unknown({"kind", "params"});
  const std::size_t before = r.issues().size();
  const std::string kind = r.text("kind", "");
  const auto params = r.reals("params", {});
  if (kind.empty()) {
    r.fail("kind", "is required");
    return fallback;
  }
  if (r.issues().size() != before) return fallback;
  try {
    return DistributionSpec::make(parse_dist_kind(kind), params);
  } catch (const Error& e) {
    r.fail("", e.what());
    return fallback;
  }
}

Variant read_variant(FieldReader& r, Variant fallback) {
  const std::string name = r.text("variant", std::string(to_string(fallback)));
  try {
    return parse_variant(name);
  } catch (const Error&) {
    r.fail("variant", "must be fixed or pool, got '" + name + "'");
    return fallback;
  }
}

char read_char(FieldReader& r, const std::string& key, char fallback) {
  const std::string s = r.text(key, std::string(1, fallback));
  if (s.size() != 1 || !std::isprint(static_cast<unsigned char>(s[0]))) {
    r.fail(key, "must be a single printable character");
    return fallback;
  }
  return s[0];
}

DatasetRef read_dataset(FieldReader& r) {
  DatasetRef ref;
  r.reject_unknown({"path", "column", "delimiter", "decimal", "missing_sentinel"});
  ref.path = r.text("path", "");
  if (ref.path.empty()) r.fail("path", "is required");
  if (!r.has("column")) {
    r.fail("column", "is required");
  } else if (r.raw("column").is_string()) {
    ref.column = r.raw("column").get<std::string>();
  } else {
    ref.column = r.count("column", 0);
  }
  ref.delimiter = read_char(r, "delimiter", ',');
  ref.decimal = read_char(r, "decimal", '.');
  if (r.has("missing_sentinel") && !r.raw("missing_sentinel").is_null()) {
    ref.missing_sentinel = r.real("missing_sentinel", 0.0);
  }
  if (ref.delimiter == ref.decimal) r.fail("decimal", "must differ from delimiter");
  return ref;
}

json dataset_to_json(const DatasetRef& ref) {
  json j;
  j["path"] = ref.path;
  if (const auto* name = std::get_if<std::string>(&ref.column)) {
    j["column"] = *name;
  } else {
    j["column"] = std::get<std::size_t>(ref.column);
  }
  j["delimiter"] = std::string(1, ref.delimiter);
  j["decimal"] = std::string(1, ref.decimal);
  j["missing_sentinel"] = ref.missing_sentinel ? json(*ref.missing_sentinel) : json(nullptr);
  return j;
}

Source read_source(FieldReader& parent, const Source& fallback) {
  if (!parent.has("source")) return fallback;
  FieldReader r(parent.raw("source"), parent.at("source"), parent.issues());
  if (!r.valid()) return fallback;
  r.reject_unknown({"distribution", "dataset"});
  const bool has_dist = r.has("distribution");
  const bool has_data = r.has("dataset");
  if (has_dist == has_data) {
    r.fail("", "must hold exactly one of 'distribution' or 'dataset'");
    return fallback;
  }
  if (has_dist) return read_dist(r, "distribution", DistributionSpec::uniform());
  FieldReader d(r.raw("dataset"), r.at("dataset"), r.issues());
  if (!d.valid()) return fallback;
  return read_dataset(d);
}

json source_to_json(const Source& source) {
  if (const auto* spec = std::get_if<DistributionSpec>(&source)) {
    return {{"distribution", dist_to_json(*spec)}};
  }
  return {{"dataset", dataset_to_json(std::get<DatasetRef>(source))}};
}

void append_prefixed(std::vector<ConfigIssue>& out, const std::vector<ConfigIssue>& issues) {
  for (const auto& issue : issues) out.push_back({"params." + issue.field, issue.message});
}

// --- per-command parameter blocks -------------------------------------------

SampleParams read_sample(FieldReader& r, SampleParams p) {
  r.reject_unknown({"dist", "n", "k", "variant", "count"});
  p.spec = read_dist(r, "dist", p.spec);
  p.n = r.count("n", p.n);
  p.k = r.count("k", p.k);
  p.variant = read_variant(r, p.variant);
  p.count = r.count("count", p.count);
  if (p.n < 2) r.fail("n", "must be at least 2");
  if (p.k < 1) r.fail("k", "must be at least 1");
  if (p.k >= p.n) {
    r.fail("k", "k=" + std::to_string(p.k) + " must be smaller than n=" + std::to_string(p.n) +
                    " (params.n)");
  }
  if (p.count < 1) r.fail("count", "must be at least 1");
  return p;
}

json sample_to_json(const SampleParams& p) {
  return {{"dist", dist_to_json(p.spec)},
          {"n", p.n},
          {"k", p.k},
          {"variant", std::string(to_string(p.variant))},
          {"count", p.count}};
}

SweepConfig read_sweep(FieldReader& r, Command command, SweepConfig c) {
  std::set<std::string> allowed{"source",    "n_grid",      "k_values",     "trials",
                                "draws_per_trial", "variant", "reference_size", "normalize",
                                "calibration", "n_bins",     "group_size"};
  if (command == Command::KsSweep) allowed.insert("metric");
  r.reject_unknown(allowed);
  c.source = read_source(r, c.source);
  c.n_grid = r.counts("n_grid", c.n_grid);
  c.k_values = r.counts("k_values", c.k_values);
  c.trials = r.count("trials", c.trials);
  c.draws_per_trial = r.count("draws_per_trial", c.draws_per_trial);
  c.variant = read_variant(r, c.variant);
  c.reference_size = r.count("reference_size", c.reference_size);
  c.normalize = r.flag("normalize", c.normalize);
  c.calibration = r.flag("calibration", c.calibration);
  c.n_bins = r.count("n_bins", c.n_bins);
  c.group_size = r.count("group_size", c.group_size);
  if (command == Command::KsSweep) {
    const std::string metric = r.text("metric", std::string(to_string(c.metric)));
    if (metric == "ks1" || metric == "ks2") {
      c.metric = parse_metric(metric);
    } else {
      r.fail("metric", "must be ks1 or ks2, got '" + metric + "'");
    }
  }
  return c;
}

json sweep_to_json(const SweepConfig& c, Command command) {
  json j{{"source", source_to_json(c.source)},
         {"n_grid", c.n_grid},
         {"k_values", c.k_values},
         {"trials", c.trials},
         {"draws_per_trial", c.draws_per_trial},
         {"variant", std::string(to_string(c.variant))},
         {"reference_size", c.reference_size},
         {"normalize", c.normalize},
         {"calibration", c.calibration},
         {"n_bins", c.n_bins},
         {"group_size", c.group_size}};
  if (command == Command::KsSweep) j["metric"] = std::string(to_string(c.metric));
  return j;
}

OverlayConfig read_overlay(FieldReader& r, OverlayConfig c) {
  r.reject_unknown({"dist", "n_values", "k", "variant", "draws", "group_size", "grid"});
  c.spec = read_dist(r, "dist", c.spec);
  c.n_values = r.counts("n_values", c.n_values);
  c.k = r.count("k", c.k);
  c.variant = read_variant(r, c.variant);
  c.draws = r.count("draws", c.draws);
  c.group_size = r.count("group_size", c.group_size);
  c.grid = r.reals("grid", c.grid);
  return c;
}

json overlay_to_json(const OverlayConfig& c) {
  return {{"dist", dist_to_json(c.spec)},
          {"n_values", c.n_values},
          {"k", c.k},
          {"variant", std::string(to_string(c.variant))},
          {"draws", c.draws},
          {"group_size", c.group_size},
          {"grid", c.grid}};
}

SpacingConfig read_spacing(FieldReader& r, SpacingConfig c) {
  r.reject_unknown({"n_values", "trials"});
  c.n_values = r.counts("n_values", c.n_values);
  c.trials = r.count("trials", c.trials);
  return c;
}

TailProbConfig read_tailprob(FieldReader& r, TailProbConfig c) {
  r.reject_unknown({"dist", "n", "k_values", "epsilon", "trials"});
  c.spec = read_dist(r, "dist", c.spec);
  c.n = r.count("n", c.n);
  c.k_values = r.counts("k_values", c.k_values);
  c.epsilon = r.real("epsilon", c.epsilon);
  c.trials = r.count("trials", c.trials);
  return c;
}

std::string row_summary(const SweepRow& row, MetricName metric) {
  return "n=" + std::to_string(row.n) + " k=" + std::to_string(row.k) + " " +
         std::string(to_string(metric)) + "=" + format_number(row.mean) +
         " se=" + format_number(row.std_error) + " trials=" + std::to_string(row.trials);
}

// Empirical CDF as a step-free polyline over sorted values.
Series ecdf_series(std::string name, std::vector<double> values) {
  std::sort(values.begin(), values.end());
  Series s{std::move(name), {}, {}};
  const double n = static_cast<double>(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    s.x.push_back(values[i]);
    s.y.push_back(static_cast<double>(i + 1) / n);
  }
  return s;
}

}  // namespace

std::string_view to_string(Command command) noexcept {
  switch (command) {
    case Command::Sample: return "sample";
    case Command::KsSweep: return "ks-sweep";
    case Command::W1Sweep: return "w1-sweep";
    case Command::KlSweep: return "kl-sweep";
    case Command::Overlay: return "overlay";
    case Command::SpacingCheck: return "spacing-check";
    case Command::TailProbCheck: return "tailprob-check";
  }
  return "unknown";
}

std::optional<Command> parse_command(std::string_view name) noexcept {
  for (Command c : all_commands()) {
    if (to_string(c) == name) return c;
  }
  return std::nullopt;
}

const std::vector<Command>& all_commands() {
  static const std::vector<Command> commands{Command::Sample,       Command::KsSweep,
                                             Command::W1Sweep,      Command::KlSweep,
                                             Command::Overlay,      Command::SpacingCheck,
                                             Command::TailProbCheck};
  return commands;
}

RunConfig default_config(Command command) {
  RunConfig config;
  config.command = command;
  switch (command) {
    case Command::Sample: config.params = SampleParams{}; break;
    case Command::KsSweep: config.params = SweepConfig{}; break;
    case Command::W1Sweep: {
      SweepConfig c;
      c.metric = MetricName::W1;
      c.normalize = true;
      config.params = c;
      break;
    }
    case Command::KlSweep: config.params = default_kl_sweep(); break;
    case Command::Overlay: config.params = OverlayConfig{}; break;
    case Command::SpacingCheck: config.params = SpacingConfig{}; break;
    case Command::TailProbCheck: config.params = TailProbConfig{}; break;
  }
  return config;
}

ConfigValidation validate_config(const json& raw) {
  ConfigValidation out;
  auto& issues = out.issues;
  FieldReader top(raw, "", issues);
  if (!top.valid()) return out;
  top.reject_unknown({"command", "seed", "threads", "params"});

  const std::string name = top.text("command", "");
  const auto command = parse_command(name);
  if (!command) {
    std::string known;
    for (Command c : all_commands()) known += (known.empty() ? "" : ", ") + std::string(to_string(c));
    top.fail("command", name.empty() ? "is required (one of " + known + ")"
                                     : "unknown command '" + name + "' (one of " + known + ")");
    return out;
  }

  RunConfig config = default_config(*command);
  config.seed = top.u64("seed", 0);
  config.threads = static_cast<unsigned>(top.count("threads", 0));

  static const json empty_object = json::object();
  FieldReader params(top.has("params") ? top.raw("params") : empty_object, "params", issues);
  if (params.valid()) {
    std::vector<ConfigIssue> module_issues;
    std::visit(
        [&](auto& p) {
          using T = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<T, SampleParams>) {
            p = read_sample(params, p);
          } else if constexpr (std::is_same_v<T, SweepConfig>) {
            p = read_sweep(params, *command, p);
            p.seed = config.seed;
            p.threads = config.threads;
            module_issues = validate(p);
          } else if constexpr (std::is_same_v<T, OverlayConfig>) {
            p = read_overlay(params, p);
            p.seed = config.seed;
            p.threads = config.threads;
            module_issues = validate(p);
          } else if constexpr (std::is_same_v<T, SpacingConfig>) {
            p = read_spacing(params, p);
            p.seed = config.seed;
            p.threads = config.threads;
            module_issues = validate(p);
          } else {
            p = read_tailprob(params, p);
            p.seed = config.seed;
            p.threads = config.threads;
            module_issues = validate(p);
          }
        },
        config.params);
    append_prefixed(issues, module_issues);
  }

  if (issues.empty()) out.config = std::move(config);
  return out;
}

json to_json(const RunConfig& config) {
  json params = std::visit(
      [&](const auto& p) -> json {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, SampleParams>) {
          return sample_to_json(p);
        } else if constexpr (std::is_same_v<T, SweepConfig>) {
          return sweep_to_json(p, config.command);
        } else if constexpr (std::is_same_v<T, OverlayConfig>) {
          return overlay_to_json(p);
        } else if constexpr (std::is_same_v<T, SpacingConfig>) {
          return json{{"n_values", p.n_values}, {"trials", p.trials}};
        } else {
          return json{{"dist", dist_to_json(p.spec)},
                      {"n", p.n},
                      {"k_values", p.k_values},
                      {"epsilon", p.epsilon},
                      {"trials", p.trials}};
        }
      },
      config.params);
  return {{"command", std::string(to_string(config.command))},
          {"seed", config.seed},
          {"params", std::move(params)}};
}

RunOutputs execute(const RunConfig& config, const std::filesystem::path& out_dir,
                   std::ostream& summary) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create " + out_dir.string() + ": " + ec.message());

  RunOutputs outputs;
  const std::string stem(to_string(config.command));
  auto emit_table = [&](const Table& table) {
    write_table_csv(table, out_dir / (stem + ".csv"));
    outputs.files.emplace_back(stem + ".csv");
  };
  auto emit_plot = [&](const PlotSpec& plot) {
    render_line_plot(plot, out_dir / (stem + ".svg"));
    outputs.files.emplace_back(stem + ".svg");
  };

  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, SampleParams>) {
          RngStream base_rng(derive_key(config.seed, {kTagSampleBase}));
          const auto base = sample_iid(p.spec, p.n, base_rng);
          const Sample sample = Sample::from_values(base);
          const SmoteConfig smote{p.k, p.variant, derive_key(config.seed, {kTagSampleDraws})};
          const auto z = generate_batch(sample, smote, p.count, config.threads).coords();
          const auto [lo, hi] = std::minmax_element(base.begin(), base.end());
          summary << "base " << p.spec.describe() << " n=" << p.n << " min=" << format_number(*lo)
                  << " max=" << format_number(*hi) << '\n';
          Table table{{"z"}, {}};
          for (double v : z) {
            summary << format_number(v) << '\n';
            table.rows.push_back({v});
          }
          emit_table(table);
          emit_plot({"SMOTE draws", "value", "empirical CDF",
                     {ecdf_series("base sample", base), ecdf_series("synthetic", z)}});
        } else if constexpr (std::is_same_v<T, SweepConfig>) {
          const SweepResult result = run_sweep(p);
          for (const auto& row : result.rows) summary << row_summary(row, p.metric) << '\n';
          write_sweep_csv(result, out_dir / (stem + ".csv"));
          outputs.files.emplace_back(stem + ".csv");
          emit_plot(sweep_plot(result, stem));
        } else if constexpr (std::is_same_v<T, OverlayConfig>) {
          const OverlayResult result = run_density_overlay(p);
          Table table{{"x", "pdf"}, {}};
          PlotSpec plot{"density of Z, k=" + std::to_string(p.k), "x", "density", {}};
          plot.series.push_back({"pdf", result.grid, result.pdf});
          for (const auto& curve : result.curves) {
            table.header.push_back("n=" + std::to_string(curve.n));
            plot.series.push_back({"n=" + std::to_string(curve.n), result.grid, curve.density});
            double worst = 0.0;
            for (std::size_t g = 0; g < result.grid.size(); ++g) {
              worst = std::max(worst, std::abs(curve.density[g] - result.pdf[g]));
            }
            summary << "n=" << curve.n << " k=" << p.k
                    << " max|kde-pdf|=" << format_number(worst) << '\n';
          }
          for (std::size_t g = 0; g < result.grid.size(); ++g) {
            std::vector<double> row{result.grid[g], result.pdf[g]};
            for (const auto& curve : result.curves) row.push_back(curve.density[g]);
            table.rows.push_back(std::move(row));
          }
          emit_table(table);
          emit_plot(plot);
        } else if constexpr (std::is_same_v<T, SpacingConfig>) {
          const SpacingResult result = run_spacing_check(p);
          Table table{{"n", "k", "mean", "std_error", "target", "abs_error"}, {}};
          PlotSpec plot{"uniform spacings", "k", "mean spacing", {}};
          for (const auto& row : result.rows) {
            summary << "n=" << row.n << " k=" << row.k << " mean=" << format_number(row.mean)
                    << " target=" << format_number(row.target)
                    << " abs_error=" << format_number(row.abs_error)
                    << " se=" << format_number(row.std_error) << '\n';
            table.rows.push_back({static_cast<double>(row.n), static_cast<double>(row.k),
                                  row.mean, row.std_error, row.target, row.abs_error});
            if (plot.series.empty() || plot.series.back().name != "n=" + std::to_string(row.n)) {
              plot.series.push_back({"n=" + std::to_string(row.n), {}, {}});
            }
            plot.series.back().x.push_back(static_cast<double>(row.k));
            plot.series.back().y.push_back(row.mean);
          }
          emit_table(table);
          emit_plot(plot);
        } else {
          const auto rows = run_tail_prob_check(p);
          Table table{{"k", "epsilon", "probability", "std_error", "trials"}, {}};
          Series series{"P(D_k >= eps)", {}, {}};
          for (const auto& row : rows) {
            summary << "k=" << row.k << " eps=" << format_number(p.epsilon)
                    << " p=" << format_number(row.probability)
                    << " se=" << format_number(row.std_error) << '\n';
            table.rows.push_back({static_cast<double>(row.k), p.epsilon, row.probability,
                                  row.std_error, static_cast<double>(p.trials)});
            series.x.push_back(static_cast<double>(row.k));
            series.y.push_back(row.probability);
          }
          emit_table(table);
          emit_plot({"neighbor-distance tail probability", "k", "probability", {series}});
        }
      },
      config.params);

  write_text_file(out_dir / "provenance.json", to_json(config).dump(2) + "\n");
  outputs.files.emplace_back("provenance.json");
  return outputs;
}

}  // namespace smotelab
