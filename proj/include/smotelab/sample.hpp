#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace smotelab {

using Point = std::vector<double>;

/// An ordered collection of equal-dimension points with finite coordinates,
/// stored row-major in one buffer.
class Sample {
 public:
  Sample() = default;

  /// Takes `coords.size() / dim` points. Throws InvalidSample on a zero
  /// dimension, a ragged buffer or a non-finite coordinate.
  Sample(std::vector<double> coords, std::size_t dim);

  /// One-dimensional sample.
  static Sample from_values(std::vector<double> values) { return Sample(std::move(values), 1); }

  static Sample from_points(const std::vector<Point>& points);

  std::size_t size() const noexcept { return dim_ == 0 ? 0 : coords_.size() / dim_; }
  std::size_t dim() const noexcept { return dim_; }
  bool empty() const noexcept { return coords_.empty(); }

  std::span<const double> point(std::size_t i) const noexcept {
    return {coords_.data() + i * dim_, dim_};
  }

  /// Raw row-major coordinates; for dim() == 1 these are the values.
  const std::vector<double>& coords() const noexcept { return coords_; }

  friend bool operator==(const Sample&, const Sample&) = default;

 private:
  std::vector<double> coords_;
  std::size_t dim_ = 0;
};

}  // namespace smotelab
