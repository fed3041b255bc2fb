#include "smotelab/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <numeric>

#include "smotelab/error.hpp"

namespace smotelab {

namespace {

void require_nonempty(std::span<const double> values, const char* what) {
  if (values.empty()) throw Error(ErrorCode::EmptySample, std::string(what) + " is empty");
}

std::vector<double> sorted_copy(std::span<const double> values) {
  std::vector<double> out(values.begin(), values.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Walks the merged distinct support of two sorted samples. At each point x the
// callback receives x and the integer gap |i*nb - j*na|, which is
// |F_a(x) - F_b(x)| scaled by na*nb.
template <typename Visit>
void merged_walk(std::span<const double> a, std::span<const double> b, Visit&& visit) noexcept {
  const auto na = static_cast<std::int64_t>(a.size());
  const auto nb = static_cast<std::int64_t>(b.size());
  std::int64_t i = 0;
  std::int64_t j = 0;
  while (i < na || j < nb) {
    double x;
    if (i == na) {
      x = b[j];
    } else if (j == nb) {
      x = a[i];
    } else {
      x = std::min(a[i], b[j]);
    }
    while (i < na && a[i] == x) ++i;
    while (j < nb && b[j] == x) ++j;
    const std::int64_t gap = i * nb - j * na;
    visit(x, gap < 0 ? -gap : gap);
  }
}

}  // namespace

std::string_view to_string(MetricName name) noexcept {
  switch (name) {
    case MetricName::KS1: return "ks1";
    case MetricName::KS2: return "ks2";
    case MetricName::W1: return "w1";
    case MetricName::KL: return "kl";
  }
  return "unknown";
}

MetricName parse_metric(std::string_view name) {
  if (name == "ks1" || name == "KS1") return MetricName::KS1;
  if (name == "ks2" || name == "KS2") return MetricName::KS2;
  if (name == "w1" || name == "W1") return MetricName::W1;
  if (name == "kl" || name == "KL") return MetricName::KL;
  throw Error(ErrorCode::InvalidArgument,
              "unknown metric '" + std::string(name) + "' (expected ks1, ks2, w1 or kl)");
}

MetricResult ks_one_sample(std::span<const double> sample, const DistributionSpec& spec) {
  require_nonempty(sample, "sample");
  const auto sorted = sorted_copy(sample);
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = spec.cdf(sorted[i]);
    const double above = static_cast<double>(i + 1) / n - f;
    const double below = f - static_cast<double>(i) / n;
    d = std::max({d, above, below});
  }
  return {MetricName::KS1, d, sorted.size(), {{"reference", spec.describe()}}};
}

double ks_two_sample_sorted(std::span<const double> a, std::span<const double> b) noexcept {
  std::int64_t max_gap = 0;
  merged_walk(a, b, [&](double, std::int64_t gap) { max_gap = std::max(max_gap, gap); });
  return static_cast<double>(max_gap) /
         (static_cast<double>(a.size()) * static_cast<double>(b.size()));
}

double wasserstein1_sorted(std::span<const double> a, std::span<const double> b) noexcept {
  double area = 0.0;
  double prev_x = 0.0;
  std::int64_t prev_gap = 0;
  merged_walk(a, b, [&](double x, std::int64_t gap) {
    if (prev_gap != 0) area += static_cast<double>(prev_gap) * (x - prev_x);
    prev_x = x;
    prev_gap = gap;
  });
  return area / (static_cast<double>(a.size()) * static_cast<double>(b.size()));
}

MetricResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
  require_nonempty(a, "first sample");
  require_nonempty(b, "second sample");
  const auto sa = sorted_copy(a);
  const auto sb = sorted_copy(b);
  return {MetricName::KS2, ks_two_sample_sorted(sa, sb), sa.size(),
          {{"n_other", std::to_string(sb.size())}}};
}

MetricResult wasserstein1(std::span<const double> a, std::span<const double> b) {
  require_nonempty(a, "first sample");
  require_nonempty(b, "second sample");
  const auto sa = sorted_copy(a);
  const auto sb = sorted_copy(b);
  return {MetricName::W1, wasserstein1_sorted(sa, sb), sa.size(),
          {{"n_other", std::to_string(sb.size())}}};
}

double kl_divergence(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) {
    throw Error(ErrorCode::InvalidArgument, "mass vectors differ in length");
  }
  double kl = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < 0.0 || q[i] < 0.0) throw Error(ErrorCode::InvalidArgument, "negative mass");
    if (p[i] == 0.0) continue;
    if (q[i] == 0.0) {
      throw Error(ErrorCode::DegenerateSupport, "reference mass is zero where sample mass is not");
    }
    kl += p[i] * std::log(p[i] / q[i]);
  }
  // Rounding can leave a tiny negative total for identical inputs.
  return std::max(kl, 0.0);
}

std::vector<double> smooth_masses(std::span<const double> masses, double epsilon) {
  std::vector<double> out(masses.begin(), masses.end());
  double total = 0.0;
  for (auto& m : out) {
    m += epsilon;
    total += m;
  }
  for (auto& m : out) m /= total;
  return out;
}

std::vector<double> uniform_edges(double lo, double hi, std::size_t n_bins) {
  if (n_bins < 1) throw Error(ErrorCode::InvalidArgument, "need at least one bin");
  if (!(hi > lo)) throw Error(ErrorCode::DegenerateSupport, "histogram range is empty");
  std::vector<double> edges(n_bins + 1);
  const double width = (hi - lo) / static_cast<double>(n_bins);
  for (std::size_t i = 0; i <= n_bins; ++i) edges[i] = lo + width * static_cast<double>(i);
  edges.back() = hi;
  return edges;
}

Histogram empirical_histogram(std::span<const double> values, std::vector<double> edges) {
  require_nonempty(values, "sample");
  if (edges.size() < 2) throw Error(ErrorCode::InvalidArgument, "need at least two edges");
  const std::size_t bins = edges.size() - 1;
  std::vector<double> counts(bins, 0.0);
  for (double v : values) {
    // Bin i covers [edges[i], edges[i+1]); the last bin is closed on the right.
    auto it = std::upper_bound(edges.begin(), edges.end(), v);
    std::size_t bin = it == edges.begin() ? 0 : static_cast<std::size_t>(it - edges.begin()) - 1;
    counts[std::min(bin, bins - 1)] += 1.0;
  }
  const double n = static_cast<double>(values.size());
  for (auto& c : counts) c /= n;
  return {std::move(edges), std::move(counts)};
}

Histogram reference_histogram(const DistributionSpec& spec, std::vector<double> edges) {
  if (edges.size() < 2) throw Error(ErrorCode::InvalidArgument, "need at least two edges");
  std::vector<double> masses(edges.size() - 1);
  double total = 0.0;
  for (std::size_t i = 0; i < masses.size(); ++i) {
    masses[i] = std::max(spec.cdf(edges[i + 1]) - spec.cdf(edges[i]), 0.0);
    total += masses[i];
  }
  if (!(total > 0.0)) {
    throw Error(ErrorCode::DegenerateSupport, "reference puts no mass on the histogram range");
  }
  for (auto& m : masses) m /= total;
  return {std::move(edges), std::move(masses)};
}

MetricResult kl_histogram(std::span<const double> z_sample, const DistributionSpec& spec,
                          std::size_t n_bins) {
  require_nonempty(z_sample, "sample");
  if (n_bins < 2) throw Error(ErrorCode::InvalidArgument, "n_bins must be at least 2");
  const auto [zmin, zmax] = std::minmax_element(z_sample.begin(), z_sample.end());
  if (*zmin == *zmax) {
    throw Error(ErrorCode::DegenerateSupport, "all sample values are equal");
  }
  const double lo = std::min(*zmin, spec.quantile(0.001));
  const double hi = std::max(*zmax, spec.quantile(0.999));
  auto edges = uniform_edges(lo, hi, n_bins);

  const auto p = smooth_masses(empirical_histogram(z_sample, edges).masses, kKlSmoothing);
  const auto q = smooth_masses(reference_histogram(spec, std::move(edges)).masses, kKlSmoothing);

  return {MetricName::KL,
          kl_divergence(p, q),
          z_sample.size(),
          {{"direction", "KL(Z||X)"},
           {"reference", spec.describe()},
           {"n_bins", std::to_string(n_bins)},
           {"range_lo", format_double(lo)},
           {"range_hi", format_double(hi)}}};
}

double silverman_bandwidth(std::span<const double> sample) {
  if (sample.size() < 2) {
    throw Error(ErrorCode::DegenerateSupport, "bandwidth needs at least two values");
  }
  const double n = static_cast<double>(sample.size());
  const double mean = std::accumulate(sample.begin(), sample.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : sample) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / (n - 1.0));
  if (!(sd > 0.0)) throw Error(ErrorCode::DegenerateSupport, "sample has zero spread");
  return 1.06 * sd * std::pow(n, -0.2);
}

std::vector<double> kde_density(std::span<const double> sample, std::span<const double> grid) {
  return kde_density(sample, grid, silverman_bandwidth(sample));
}

std::vector<double> kde_density(std::span<const double> sample, std::span<const double> grid,
                                double bandwidth) {
  require_nonempty(sample, "sample");
  if (!(bandwidth > 0.0)) throw Error(ErrorCode::DegenerateSupport, "bandwidth must be positive");
  const auto sorted = sorted_copy(sample);
  // Kernel weight beyond 9 bandwidths is below 3e-18 of the peak.
  const double reach = 9.0 * bandwidth;
  const double norm =
      1.0 / (static_cast<double>(sorted.size()) * bandwidth * std::sqrt(2.0 * std::numbers::pi));
  std::vector<double> density(grid.size());
  for (std::size_t g = 0; g < grid.size(); ++g) {
    const double x = grid[g];
    auto first = std::lower_bound(sorted.begin(), sorted.end(), x - reach);
    auto last = std::upper_bound(first, sorted.end(), x + reach);
    double sum = 0.0;
    for (auto it = first; it != last; ++it) {
      const double u = (x - *it) / bandwidth;
      sum += std::exp(-0.5 * u * u);
    }
    density[g] = sum * norm;
  }
  return density;
}

}  // namespace smotelab
