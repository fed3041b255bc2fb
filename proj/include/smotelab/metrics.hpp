#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "smotelab/distributions.hpp"

namespace smotelab {

enum class MetricName { KS1, KS2, W1, KL };

std::string_view to_string(MetricName name) noexcept;
MetricName parse_metric(std::string_view name);

struct MetricResult {
  MetricName name = MetricName::KS2;
  double value = 0.0;
  std::size_t n = 0;
  std::map<std::string, std::string> meta;
};

/// Probability masses over strictly increasing bin edges.
struct Histogram {
  std::vector<double> edges;   // n_bins + 1
  std::vector<double> masses;  // n_bins, summing to 1

  std::size_t bins() const noexcept { return masses.size(); }
};

/// sup |F_n - F| over the sample against an analytic cdf.
MetricResult ks_one_sample(std::span<const double> sample, const DistributionSpec& spec);

/// sup |F_a - F_b| over the merged support of two samples.
MetricResult ks_two_sample(std::span<const double> a, std::span<const double> b);

/// Integral of |F_a - F_b| over the merged support of two samples.
MetricResult wasserstein1(std::span<const double> a, std::span<const double> b);

/// Variants for callers that keep their inputs sorted ascending; no copies.
double ks_two_sample_sorted(std::span<const double> a, std::span<const double> b) noexcept;
double wasserstein1_sorted(std::span<const double> a, std::span<const double> b) noexcept;

/// sum p_i ln(p_i / q_i); terms with p_i == 0 contribute 0. Inputs must be
/// equal-length mass vectors; q_i must be positive wherever p_i is.
double kl_divergence(std::span<const double> p, std::span<const double> q);

/// Adds `epsilon` to every mass and renormalizes.
std::vector<double> smooth_masses(std::span<const double> masses, double epsilon);

/// Equal-width edges over [lo, hi].
std::vector<double> uniform_edges(double lo, double hi, std::size_t n_bins);

/// Empirical histogram on the given edges; values outside are clamped into
/// the end bins.
Histogram empirical_histogram(std::span<const double> values, std::vector<double> edges);

/// Reference masses cdf(edge[i+1]) - cdf(edge[i]), normalized.
Histogram reference_histogram(const DistributionSpec& spec, std::vector<double> edges);

inline constexpr std::size_t kDefaultKlBins = 50;
inline constexpr double kKlSmoothing = 1e-10;

/// KL(Z || X) of a sample against an analytic reference. Both are binned on
/// n_bins equal-width bins over the sample range widened to the reference's
/// 0.001..0.999 quantiles, smoothed by kKlSmoothing and renormalized.
MetricResult kl_histogram(std::span<const double> z_sample, const DistributionSpec& spec,
                          std::size_t n_bins = kDefaultKlBins);

/// Silverman's rule 1.06 * sd * n^(-1/5), sd with n - 1 denominator.
double silverman_bandwidth(std::span<const double> sample);

/// Gaussian kernel density with Silverman bandwidth, evaluated on `grid`.
std::vector<double> kde_density(std::span<const double> sample, std::span<const double> grid);

/// Same estimator with an explicit bandwidth (> 0).
std::vector<double> kde_density(std::span<const double> sample, std::span<const double> grid,
                                double bandwidth);

}  // namespace smotelab
