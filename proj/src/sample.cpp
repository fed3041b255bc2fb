#include "smotelab/sample.hpp"

#include <cmath>
#include <string>

#include "smotelab/error.hpp"

namespace smotelab {

Sample::Sample(std::vector<double> coords, std::size_t dim) : coords_(std::move(coords)), dim_(dim) {
  if (dim_ == 0) throw Error(ErrorCode::InvalidSample, "dimension must be positive");
  if (coords_.size() % dim_ != 0) {
    throw Error(ErrorCode::InvalidSample, "coordinate count " + std::to_string(coords_.size()) +
                                              " is not a multiple of dimension " +
                                              std::to_string(dim_));
  }
  for (std::size_t c = 0; c < coords_.size(); ++c) {
    if (!std::isfinite(coords_[c])) {
      throw Error(ErrorCode::InvalidSample,
                  "point " + std::to_string(c / dim_) + " has a non-finite coordinate");
    }
  }
}

Sample Sample::from_points(const std::vector<Point>& points) {
  if (points.empty()) return Sample();
  const std::size_t dim = points.front().size();
  std::vector<double> flat;
  flat.reserve(points.size() * dim);
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != dim) {
      throw Error(ErrorCode::InvalidSample, "point " + std::to_string(i) + " has dimension " +
                                                std::to_string(points[i].size()) + ", expected " +
                                                std::to_string(dim));
    }
    flat.insert(flat.end(), points[i].begin(), points[i].end());
  }
  return Sample(std::move(flat), dim);
}

}  // namespace smotelab
