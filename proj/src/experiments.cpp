#include "smotelab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>

#include "smotelab/error.hpp"
#include "smotelab/parallel.hpp"

namespace smotelab {

namespace {

// Stream tags; every random quantity in a run is keyed by (seed, tag, ...).
enum StreamTag : std::uint64_t {
  kTagReference = 1,
  kTagBase = 2,
  kTagDraws = 3,
  kTagSpacing = 5,
  kTagTail = 6,
  kTagOverlay = 7,
};

constexpr std::size_t kTrialsPerChunk = 1000;
constexpr std::size_t kGroupsPerBlock = 100;

std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

struct MeanSe {
  double mean = 0.0;
  double std_error = 0.0;
};

MeanSe summarize(std::span<const double> values) {
  const double n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  if (values.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / (n - 1.0) / n)};
}

bool strictly_ascending(const std::vector<std::size_t>& v) {
  return std::adjacent_find(v.begin(), v.end(), std::greater_equal<>()) == v.end();
}

std::string list_str(const std::vector<std::size_t>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + std::to_string(v[i]);
  return out + "]";
}

// Draws `n` distinct elements of `pool` by a partial Fisher-Yates shuffle.
std::vector<double> subset_without_replacement(const std::vector<double>& pool, std::size_t n,
                                               RngStream& rng) {
  std::vector<std::size_t> index(pool.size());
  std::iota(index.begin(), index.end(), std::size_t{0});
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = i + rng.uniform_index(pool.size() - i);
    std::swap(index[i], index[j]);
    out[i] = pool[index[i]];
  }
  return out;
}

struct Reference {
  std::vector<double> pool;    // what base subsets are drawn from (datasets, calibration)
  std::vector<double> sorted;  // what KS2 / W1 compare against
};

Reference prepare_reference(const SweepConfig& config) {
  Reference ref;
  const std::size_t max_n = config.n_grid.back();
  if (const auto* dataset = std::get_if<DatasetRef>(&config.source)) {
    auto loaded = load_column(*dataset);
    ref.pool = config.normalize ? normalize_minmax(loaded.values).values : std::move(loaded.values);
    if (ref.pool.size() < max_n) {
      throw Error(ErrorCode::InsufficientData,
                  "dataset has " + std::to_string(ref.pool.size()) +
                      " usable values but n_grid asks for " + std::to_string(max_n));
    }
  } else {
    const bool needs_draw = config.metric == MetricName::KS2 ||
                            config.metric == MetricName::W1 || config.calibration;
    if (!needs_draw) return ref;
    const auto& spec = std::get<DistributionSpec>(config.source);
    RngStream rng(derive_key(config.seed, {kTagReference}));
    ref.pool = sample_iid(spec, config.reference_size, rng);
    if (config.calibration && ref.pool.size() < max_n) {
      throw Error(ErrorCode::InsufficientData,
                  "calibration draws subsets from the reference; reference_size " +
                      std::to_string(ref.pool.size()) + " < " + std::to_string(max_n));
    }
  }
  ref.sorted = ref.pool;
  std::sort(ref.sorted.begin(), ref.sorted.end());
  return ref;
}

std::vector<double> draw_subset(const SweepConfig& config, const Reference& ref, std::size_t n,
                                RngStream& rng) {
  if (config.calibration || std::holds_alternative<DatasetRef>(config.source)) {
    return subset_without_replacement(ref.pool, n, rng);
  }
  return sample_iid(std::get<DistributionSpec>(config.source), n, rng);
}

// draws_per_trial values of Z for rank k. With group_size == 0 one base subset
// serves the whole trial; otherwise a fresh subset is drawn every group_size
// draws, so the pooled values follow the marginal law of Z.
std::vector<double> synthetic_draws(const SweepConfig& config, const Reference& ref,
                                    std::size_t n, std::size_t k, std::uint64_t subset_key,
                                    std::uint64_t draw_key) {
  RngStream subset_rng(subset_key);
  if (config.group_size == 0) {
    const Sample sample = Sample::from_values(draw_subset(config, ref, n, subset_rng));
    return generate_batch(sample, {k, config.variant, draw_key}, config.draws_per_trial).coords();
  }
  RngStream draw_rng(draw_key);
  const SmoteConfig smote{k, config.variant, 0};
  std::vector<double> z;
  z.reserve(config.draws_per_trial);
  while (z.size() < config.draws_per_trial) {
    const Sample sample = Sample::from_values(draw_subset(config, ref, n, subset_rng));
    const std::size_t group = std::min(config.group_size, config.draws_per_trial - z.size());
    for (std::size_t j = 0; j < group; ++j) z.push_back(smote_draw(sample, smote, draw_rng)[0]);
  }
  return z;
}

double trial_metric(const SweepConfig& config, const Reference& ref,
                    std::vector<double>& values) {
  if (config.metric == MetricName::KL) {
    return kl_histogram(values, std::get<DistributionSpec>(config.source), config.n_bins).value;
  }
  std::sort(values.begin(), values.end());
  switch (config.metric) {
    case MetricName::KS2: return ks_two_sample_sorted(values, ref.sorted);
    case MetricName::W1: return wasserstein1_sorted(values, ref.sorted);
    case MetricName::KS1:
      return ks_one_sample(values, std::get<DistributionSpec>(config.source)).value;
    case MetricName::KL: break;
  }
  return 0.0;
}

// One trial: the metric for every k, with subsets and draw streams shared
// across k (common random numbers).
void run_trial(const SweepConfig& config, const Reference& ref, std::size_t n, std::size_t trial,
               std::span<double> out_per_k) {
  const std::uint64_t subset_key = derive_key(config.seed, {kTagBase, n, trial});
  const std::uint64_t draw_key = derive_key(config.seed, {kTagDraws, n, trial});
  if (config.calibration) {
    RngStream rng(subset_key);
    auto subset = draw_subset(config, ref, n, rng);
    std::fill(out_per_k.begin(), out_per_k.end(), trial_metric(config, ref, subset));
    return;
  }
  for (std::size_t ki = 0; ki < config.k_values.size(); ++ki) {
    auto z = synthetic_draws(config, ref, n, config.k_values[ki], subset_key, draw_key);
    out_per_k[ki] = trial_metric(config, ref, z);
  }
}

// Draws `count` values of Z, refreshing the base sample every group_size draws.
std::vector<double> marginal_draws(const DistributionSpec& spec, std::size_t n,
                                   const SmoteConfig& smote, std::size_t count,
                                   std::size_t group_size, RngStream& sample_rng,
                                   RngStream& draw_rng) {
  std::vector<double> z;
  z.reserve(count);
  while (z.size() < count) {
    const Sample sample = Sample::from_values(sample_iid(spec, n, sample_rng));
    const std::size_t group = std::min(group_size, count - z.size());
    for (std::size_t j = 0; j < group; ++j) z.push_back(smote_draw(sample, smote, draw_rng)[0]);
  }
  return z;
}

SweepResult run_sweep_impl(const SweepConfig& config) {
  if (auto issues = validate(config); !issues.empty()) throw_config_issues(issues);

  const Reference ref =
      config.metric == MetricName::KL ? Reference{} : prepare_reference(config);
  const std::size_t nk = config.k_values.size();
  const std::size_t tasks = config.n_grid.size() * config.trials;
  // values[(ni * trials + t) * nk + ki]
  std::vector<double> values(tasks * nk);

  parallel_for(tasks, config.threads, [&](std::size_t task) {
    const std::size_t n = config.n_grid[task / config.trials];
    const std::size_t trial = task % config.trials;
    std::span<double> out(values.data() + task * nk, nk);
    run_trial(config, ref, n, trial, out);
  });

  SweepResult result;
  result.config = config;
  std::vector<double> column(config.trials);
  for (std::size_t ki = 0; ki < nk; ++ki) {
    for (std::size_t ni = 0; ni < config.n_grid.size(); ++ni) {
      for (std::size_t t = 0; t < config.trials; ++t) {
        column[t] = values[(ni * config.trials + t) * nk + ki];
      }
      const auto s = summarize(column);
      result.rows.push_back(
          {config.n_grid[ni], config.k_values[ki], s.mean, s.std_error, config.trials});
    }
  }
  return result;
}

}  // namespace

void throw_config_issues(const std::vector<ConfigIssue>& issues) {
  std::string message;
  for (const auto& issue : issues) {
    if (!message.empty()) message += "; ";
    message += issue.field + ": " + issue.message;
  }
  throw Error(ErrorCode::ConfigError, message);
}

std::vector<std::size_t> default_kl_grid() {
  std::vector<std::size_t> grid;
  for (std::size_t n = 8; n <= 72; n += 4) grid.push_back(n);
  return grid;
}

SweepConfig default_kl_sweep() {
  SweepConfig c;
  c.metric = MetricName::KL;
  c.n_grid = default_kl_grid();
  c.group_size = 10;
  return c;
}

std::vector<ConfigIssue> validate(const SweepConfig& c) {
  std::vector<ConfigIssue> issues;
  if (c.n_grid.empty()) {
    issues.push_back({"n_grid", "must not be empty"});
  } else {
    if (!strictly_ascending(c.n_grid)) issues.push_back({"n_grid", "must be strictly ascending"});
    if (c.n_grid.front() < 2) issues.push_back({"n_grid", "every n must be at least 2"});
  }
  if (c.k_values.empty()) {
    issues.push_back({"k_values", "must not be empty"});
  } else {
    for (std::size_t k : c.k_values) {
      if (k < 1) {
        issues.push_back({"k_values", "every k must be at least 1"});
        break;
      }
    }
    if (!c.n_grid.empty()) {
      const std::size_t min_n = *std::min_element(c.n_grid.begin(), c.n_grid.end());
      const std::size_t max_k = *std::max_element(c.k_values.begin(), c.k_values.end());
      if (max_k >= min_n) {
        issues.push_back({"k_values", "k=" + std::to_string(max_k) +
                                          " must be smaller than min(n_grid)=" +
                                          std::to_string(min_n) + "; n_grid=" +
                                          list_str(c.n_grid)});
      }
    }
  }
  if (c.trials < 1) issues.push_back({"trials", "must be at least 1"});
  if (c.draws_per_trial < 1) issues.push_back({"draws_per_trial", "must be at least 1"});
  if (c.reference_size < 1) issues.push_back({"reference_size", "must be at least 1"});
  if (c.n_bins < 2) issues.push_back({"n_bins", "must be at least 2"});

  const bool is_dataset = std::holds_alternative<DatasetRef>(c.source);
  if (is_dataset) {
    const auto& ref = std::get<DatasetRef>(c.source);
    if (ref.path.empty()) issues.push_back({"source.dataset.path", "must not be empty"});
    if (const auto* name = std::get_if<std::string>(&ref.column); name && name->empty()) {
      issues.push_back({"source.dataset.column", "must name a column or give an index"});
    }
  }
  if (c.metric == MetricName::KL && is_dataset) {
    issues.push_back({"metric", "kl needs an analytic distribution source"});
  }
  if (c.metric == MetricName::KS1 && is_dataset) {
    issues.push_back({"metric", "ks1 needs an analytic distribution source"});
  }
  if (c.metric == MetricName::KL && c.calibration) {
    issues.push_back({"calibration", "not defined for kl sweeps"});
  }
  return issues;
}

const SweepRow& SweepResult::at(std::size_t n, std::size_t k) const {
  for (const auto& row : rows) {
    if (row.n == n && row.k == k) return row;
  }
  throw Error(ErrorCode::InvalidArgument,
              "no row for n=" + std::to_string(n) + ", k=" + std::to_string(k));
}

SweepResult run_ks_sweep(const SweepConfig& config) {
  if (config.metric != MetricName::KS1 && config.metric != MetricName::KS2) {
    throw_config_issues({{"metric", "ks sweeps take ks1 or ks2"}});
  }
  return run_sweep_impl(config);
}

SweepResult run_wasserstein_sweep(const SweepConfig& config) {
  if (config.metric != MetricName::W1) throw_config_issues({{"metric", "must be w1"}});
  return run_sweep_impl(config);
}

SweepResult run_kl_sweep(const SweepConfig& config) {
  if (config.metric != MetricName::KL) throw_config_issues({{"metric", "must be kl"}});
  return run_sweep_impl(config);
}

SweepResult run_sweep(const SweepConfig& config) { return run_sweep_impl(config); }

std::vector<ConfigIssue> validate(const OverlayConfig& c) {
  std::vector<ConfigIssue> issues;
  if (c.n_values.empty()) {
    issues.push_back({"n_values", "must not be empty"});
  } else {
    const std::size_t min_n = *std::min_element(c.n_values.begin(), c.n_values.end());
    if (min_n < 2) issues.push_back({"n_values", "every n must be at least 2"});
    if (c.k >= min_n) {
      issues.push_back({"k", "k=" + std::to_string(c.k) + " must be smaller than min(n_values)=" +
                                 std::to_string(min_n)});
    }
  }
  if (c.k < 1) issues.push_back({"k", "must be at least 1"});
  if (c.draws < 2) issues.push_back({"draws", "must be at least 2"});
  if (c.group_size < 1) issues.push_back({"group_size", "must be at least 1"});
  if (!c.grid.empty() && !std::is_sorted(c.grid.begin(), c.grid.end())) {
    issues.push_back({"grid", "must be ascending"});
  }
  return issues;
}

std::vector<double> default_overlay_grid(const DistributionSpec& spec, std::size_t points) {
  double lo = spec.support_lower();
  double hi = spec.support_upper();
  if (!std::isfinite(lo)) lo = spec.quantile(0.001);
  if (!std::isfinite(hi)) hi = spec.quantile(0.999);
  const double pad = 0.1 * (hi - lo);
  lo -= pad;
  hi += pad;
  std::vector<double> grid(points);
  for (std::size_t i = 0; i < points; ++i) {
    grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
  }
  return grid;
}

OverlayResult run_density_overlay(const OverlayConfig& config) {
  if (auto issues = validate(config); !issues.empty()) throw_config_issues(issues);

  OverlayResult result;
  result.grid = config.grid.empty() ? default_overlay_grid(config.spec, 201) : config.grid;
  for (double x : result.grid) result.pdf.push_back(config.spec.pdf(x));

  const std::size_t groups = ceil_div(config.draws, config.group_size);
  const std::size_t blocks = ceil_div(groups, kGroupsPerBlock);
  const std::size_t draws_per_block = kGroupsPerBlock * config.group_size;
  const SmoteConfig smote{config.k, config.variant, 0};

  for (std::size_t n : config.n_values) {
    std::vector<double> z(config.draws);
    parallel_for(blocks, config.threads, [&](std::size_t block) {
      const std::uint64_t key = derive_key(config.seed, {kTagOverlay, n, block});
      RngStream sample_rng(key, 0);
      RngStream draw_rng(key, 1);
      const std::size_t begin = block * draws_per_block;
      const std::size_t count = std::min(draws_per_block, config.draws - begin);
      const auto part = marginal_draws(config.spec, n, smote, count, config.group_size,
                                       sample_rng, draw_rng);
      std::copy(part.begin(), part.end(), z.begin() + static_cast<std::ptrdiff_t>(begin));
    });
    result.curves.push_back({n, kde_density(z, result.grid)});
  }
  return result;
}

std::vector<ConfigIssue> validate(const SpacingConfig& c) {
  std::vector<ConfigIssue> issues;
  if (c.n_values.empty()) issues.push_back({"n_values", "must not be empty"});
  for (std::size_t n : c.n_values) {
    if (n < 2) {
      issues.push_back({"n_values", "n=" + std::to_string(n) + " has no spacings; need n >= 2"});
      break;
    }
  }
  if (c.trials < 1000) issues.push_back({"trials", "must be at least 1000"});
  return issues;
}

SpacingResult run_spacing_check(const SpacingConfig& config) {
  if (auto issues = validate(config); !issues.empty()) throw_config_issues(issues);

  const std::size_t chunks = ceil_div(config.trials, kTrialsPerChunk);
  struct Partial {
    std::vector<double> sum;     // of (spacing - target)
    std::vector<double> sum_sq;  // of (spacing - target)^2
    double max_telescoping = 0.0;
  };

  SpacingResult result;
  for (std::size_t n : config.n_values) {
    const double target = 1.0 / static_cast<double>(n + 1);
    std::vector<Partial> partials(chunks);
    parallel_for(chunks, config.threads, [&](std::size_t chunk) {
      Partial& p = partials[chunk];
      p.sum.assign(n - 1, 0.0);
      p.sum_sq.assign(n - 1, 0.0);
      RngStream rng(derive_key(config.seed, {kTagSpacing, n, chunk}));
      const std::size_t begin = chunk * kTrialsPerChunk;
      const std::size_t end = std::min(begin + kTrialsPerChunk, config.trials);
      std::vector<double> u(n);
      for (std::size_t t = begin; t < end; ++t) {
        for (auto& v : u) v = rng.open01();
        std::sort(u.begin(), u.end());
        double total = 0.0;
        for (std::size_t k = 0; k + 1 < n; ++k) {
          const double spacing = u[k + 1] - u[k];
          total += spacing;
          const double dev = spacing - target;
          p.sum[k] += dev;
          p.sum_sq[k] += dev * dev;
        }
        p.max_telescoping = std::max(p.max_telescoping, std::abs(total - (u[n - 1] - u[0])));
      }
    });

    std::vector<double> sum(n - 1, 0.0), sum_sq(n - 1, 0.0);
    for (const auto& p : partials) {
      for (std::size_t k = 0; k + 1 < n; ++k) {
        sum[k] += p.sum[k];
        sum_sq[k] += p.sum_sq[k];
      }
      result.max_telescoping_error = std::max(result.max_telescoping_error, p.max_telescoping);
    }
    const double trials = static_cast<double>(config.trials);
    for (std::size_t k = 0; k + 1 < n; ++k) {
      const double mean_dev = sum[k] / trials;
      const double var = std::max(sum_sq[k] - sum[k] * mean_dev, 0.0) / (trials - 1.0);
      result.rows.push_back({n, k + 1, target + mean_dev, std::sqrt(var / trials), target,
                             std::abs(mean_dev)});
    }
  }
  return result;
}

std::vector<ConfigIssue> validate(const TailProbConfig& c) {
  std::vector<ConfigIssue> issues;
  if (!(c.epsilon > 0.0) || !std::isfinite(c.epsilon)) {
    issues.push_back({"epsilon", "must be a positive finite number"});
  }
  if (c.n < 2) issues.push_back({"n", "must be at least 2"});
  if (c.k_values.empty()) {
    issues.push_back({"k_values", "must not be empty"});
  } else {
    if (!strictly_ascending(c.k_values)) {
      issues.push_back({"k_values", "must be strictly ascending"});
    }
    if (c.k_values.front() < 1) issues.push_back({"k_values", "every k must be at least 1"});
    if (c.n >= 2 && c.k_values.back() > c.n - 1) {
      issues.push_back({"k_values", "max k=" + std::to_string(c.k_values.back()) +
                                        " exceeds n-1=" + std::to_string(c.n - 1) + " (n)"});
    }
  }
  if (c.trials < 1) issues.push_back({"trials", "must be at least 1"});
  return issues;
}

std::vector<TailProbRow> run_tail_prob_check(const TailProbConfig& config) {
  if (auto issues = validate(config); !issues.empty()) throw_config_issues(issues);

  const std::size_t chunks = ceil_div(config.trials, kTrialsPerChunk);
  const std::size_t nk = config.k_values.size();
  std::vector<std::size_t> hits(chunks * nk, 0);
  parallel_for(chunks, config.threads, [&](std::size_t chunk) {
    RngStream rng(derive_key(config.seed, {kTagTail, chunk}));
    const std::size_t begin = chunk * kTrialsPerChunk;
    const std::size_t end = std::min(begin + kTrialsPerChunk, config.trials);
    for (std::size_t t = begin; t < end; ++t) {
      const Sample sample = Sample::from_values(sample_iid(config.spec, config.n, rng));
      const auto ordering = neighbor_ordering(sample, 0);
      for (std::size_t ki = 0; ki < nk; ++ki) {
        if (ordering.distances[config.k_values[ki] - 1] >= config.epsilon) ++hits[chunk * nk + ki];
      }
    }
  });

  std::vector<TailProbRow> rows;
  const double trials = static_cast<double>(config.trials);
  for (std::size_t ki = 0; ki < nk; ++ki) {
    std::size_t total = 0;
    for (std::size_t c = 0; c < chunks; ++c) total += hits[c * nk + ki];
    const double p = static_cast<double>(total) / trials;
    rows.push_back({config.k_values[ki], p, std::sqrt(p * (1.0 - p) / trials), total});
  }
  return rows;
}

}  // namespace smotelab
