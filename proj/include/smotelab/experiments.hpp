#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "smotelab/dataset.hpp"
#include "smotelab/distributions.hpp"
#include "smotelab/metrics.hpp"
#include "smotelab/sampling.hpp"

namespace smotelab {

/// One failed validation rule; `field` is a dotted path into the config.
struct ConfigIssue {
  std::string field;
  std::string message;
};

/// Throws ConfigError with every issue joined into the message.
[[noreturn]] void throw_config_issues(const std::vector<ConfigIssue>& issues);

using Source = std::variant<DistributionSpec, DatasetRef>;

struct SweepConfig {
  Source source = DistributionSpec::uniform();
  std::vector<std::size_t> n_grid{8, 20, 70, 200};
  std::vector<std::size_t> k_values{1, 5};
  std::size_t trials = 50;
  std::size_t draws_per_trial = 2000;
  MetricName metric = MetricName::KS2;
  Variant variant = Variant::FixedRank;
  std::uint64_t seed = 0;
  // Size of the fixed reference draw when the source is a distribution.
  std::size_t reference_size = 100000;
  // Min-max scale a dataset series to [0, 1] before use.
  bool normalize = false;
  // Compare the base subset itself (no synthesis) against the reference.
  bool calibration = false;
  std::size_t n_bins = kDefaultKlBins;
  // Draws per base subset. 0 keeps one subset for the whole trial; g > 0
  // redraws it every g draws so the trial sees the marginal law of Z.
  std::size_t group_size = 0;
  unsigned threads = 0;
};

std::vector<ConfigIssue> validate(const SweepConfig& config);

/// The default n grid of KL sweeps: 8, 12, ..., 72.
std::vector<std::size_t> default_kl_grid();

/// Defaults of a KL sweep: KL metric, the KL grid, a fresh base sample every 10 draws.
SweepConfig default_kl_sweep();

struct SweepRow {
  std::size_t n = 0;
  std::size_t k = 0;
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t trials = 0;

  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

struct SweepResult {
  std::vector<SweepRow> rows;  // ordered by (k, n)
  SweepConfig config;

  /// Row for (n, k); throws InvalidArgument when absent.
  const SweepRow& at(std::size_t n, std::size_t k) const;
};

/// Base subset per trial (or per group_size draws), draws_per_trial synthetic
/// points, KS to the reference (KS2: reference draw or full series; KS1:
/// analytic cdf).
SweepResult run_ks_sweep(const SweepConfig& config);

/// As run_ks_sweep with the Wasserstein-1 distance.
SweepResult run_wasserstein_sweep(const SweepConfig& config);

/// Histogram KL(Z || X) against the analytic source; with group_size g > 0
/// every trial pools draws_per_trial draws over fresh base samples of size n.
SweepResult run_kl_sweep(const SweepConfig& config);

/// Dispatches on config.metric.
SweepResult run_sweep(const SweepConfig& config);

struct OverlayConfig {
  DistributionSpec spec = DistributionSpec::uniform();
  std::vector<std::size_t> n_values{8, 20, 70};
  std::size_t k = 1;
  Variant variant = Variant::FixedRank;
  std::size_t draws = 100000;
  std::size_t group_size = 10;
  // Empty grid means default_overlay_grid(spec, 201).
  std::vector<double> grid;
  std::uint64_t seed = 0;
  unsigned threads = 0;
};

std::vector<ConfigIssue> validate(const OverlayConfig& config);

/// Evenly spaced grid covering the support (bounded) or the 0.001..0.999
/// quantile range (unbounded), padded by 10% of its width.
std::vector<double> default_overlay_grid(const DistributionSpec& spec, std::size_t points);

struct DensityCurve {
  std::size_t n = 0;
  std::vector<double> density;
};

struct OverlayResult {
  std::vector<double> grid;
  std::vector<double> pdf;
  std::vector<DensityCurve> curves;
};

/// KDE of the marginal of Z for each n, next to the analytic pdf.
OverlayResult run_density_overlay(const OverlayConfig& config);

struct SpacingConfig {
  std::vector<std::size_t> n_values{9};
  std::size_t trials = 100000;
  std::uint64_t seed = 0;
  unsigned threads = 0;
};

std::vector<ConfigIssue> validate(const SpacingConfig& config);

struct SpacingRow {
  std::size_t n = 0;
  std::size_t k = 0;
  double mean = 0.0;
  double std_error = 0.0;
  double target = 0.0;  // 1 / (n + 1)
  double abs_error = 0.0;
};

struct SpacingResult {
  std::vector<SpacingRow> rows;
  // Largest |sum_k spacing_k - (U_(n) - U_(1))| seen in any trial.
  double max_telescoping_error = 0.0;
};

/// Monte Carlo means of the uniform spacings U_(k+1) - U_(k), k = 1..n-1.
SpacingResult run_spacing_check(const SpacingConfig& config);

struct TailProbConfig {
  DistributionSpec spec = DistributionSpec::uniform();
  std::size_t n = 50;
  std::vector<std::size_t> k_values{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  double epsilon = 0.05;
  std::size_t trials = 10000;
  std::uint64_t seed = 0;
  unsigned threads = 0;
};

std::vector<ConfigIssue> validate(const TailProbConfig& config);

struct TailProbRow {
  std::size_t k = 0;
  double probability = 0.0;
  double std_error = 0.0;
  std::size_t hits = 0;
};

/// P(D_(k) >= epsilon), D_(k) the distance from X_1 to its rank-k neighbor,
/// estimated on trials shared by every k.
std::vector<TailProbRow> run_tail_prob_check(const TailProbConfig& config);

}  // namespace smotelab
