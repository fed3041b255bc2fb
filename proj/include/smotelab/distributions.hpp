#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "smotelab/rng.hpp"

namespace smotelab {

enum class DistKind { Uniform, Gaussian, Exponential };

std::string_view to_string(DistKind kind) noexcept;
DistKind parse_dist_kind(std::string_view name);

/// Uniform(a, b), Gaussian(mean, stddev) or Exponential(rate). Construct via
/// the factories or make(); parameters are validated on construction.
class DistributionSpec {
 public:
  static DistributionSpec uniform(double a = 0.0, double b = 1.0);
  static DistributionSpec gaussian(double mean = 0.0, double stddev = 1.0);
  static DistributionSpec exponential(double rate = 1.0);

  /// Parameters in declaration order; an empty list picks the standard member
  /// of the family (U(0,1), N(0,1), Exp(1)).
  static DistributionSpec make(DistKind kind, const std::vector<double>& params);

  DistKind kind() const noexcept { return kind_; }
  std::vector<double> params() const;

  double pdf(double x) const noexcept;
  double cdf(double x) const noexcept;
  /// Throws DomainError unless 0 < u < 1.
  double quantile(double u) const;

  /// Support endpoints; infinite where unbounded.
  double support_lower() const noexcept;
  double support_upper() const noexcept;

  std::string describe() const;

  friend bool operator==(const DistributionSpec&, const DistributionSpec&) = default;

 private:
  DistributionSpec(DistKind kind, double p0, double p1) : kind_(kind), p0_(p0), p1_(p1) {}

  DistKind kind_ = DistKind::Uniform;
  double p0_ = 0.0;
  double p1_ = 1.0;
};

/// Standard normal helpers.
double normal_cdf(double x) noexcept;
double normal_quantile(double u);

/// n inverse-transform draws from one uniform stream. Throws InvalidCount for n == 0.
std::vector<double> sample_iid(const DistributionSpec& spec, std::size_t n, std::uint64_t seed);
std::vector<double> sample_iid(const DistributionSpec& spec, std::size_t n, RngStream& rng);

}  // namespace smotelab
