#include "smotelab/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "smotelab/error.hpp"
#include "smotelab/parallel.hpp"

namespace smotelab {

namespace {

// (distance key, index); lexicographic order gives the tie-break by index.
using Candidate = std::pair<double, std::size_t>;

// Monotone in Euclidean distance. 1-D uses |a - b| directly.
double distance_key(std::span<const double> a, std::span<const double> b) noexcept {
  if (a.size() == 1) return std::abs(a[0] - b[0]);
  double sum = 0.0;
  for (std::size_t c = 0; c < a.size(); ++c) {
    const double d = a[c] - b[c];
    sum += d * d;
  }
  return sum;
}

void check_base(const Sample& sample, std::size_t base_index) {
  if (sample.size() < 2) {
    throw Error(ErrorCode::SampleTooSmall,
                "need at least 2 points, got " + std::to_string(sample.size()));
  }
  if (base_index >= sample.size()) {
    throw Error(ErrorCode::IndexOutOfRange, "base index " + std::to_string(base_index) +
                                                " outside [0, " + std::to_string(sample.size()) +
                                                ")");
  }
}

void check_rank(const Sample& sample, std::size_t rank) {
  if (sample.size() < 2) {
    throw Error(ErrorCode::SampleTooSmall,
                "need at least 2 points, got " + std::to_string(sample.size()));
  }
  if (rank < 1 || rank >= sample.size()) {
    throw Error(ErrorCode::RankOutOfRange, "rank " + std::to_string(rank) + " outside [1, " +
                                               std::to_string(sample.size() - 1) + "]");
  }
}

void fill_candidates(const Sample& sample, std::size_t base_index, std::vector<Candidate>& out) {
  out.clear();
  const auto base = sample.point(base_index);
  for (std::size_t j = 0; j < sample.size(); ++j) {
    if (j != base_index) out.emplace_back(distance_key(base, sample.point(j)), j);
  }
}

std::size_t rank_neighbor_unchecked(const Sample& sample, std::size_t base_index,
                                    std::size_t rank) {
  thread_local std::vector<Candidate> scratch;
  fill_candidates(sample, base_index, scratch);
  const auto nth = scratch.begin() + static_cast<std::ptrdiff_t>(rank - 1);
  std::nth_element(scratch.begin(), nth, scratch.end());
  return nth->second;
}

// Per-base table of the first `depth` neighbors, reused across a batch.
class NeighborTable {
 public:
  NeighborTable(const Sample& sample, std::size_t depth) : depth_(depth) {
    table_.resize(sample.size() * depth);
    std::vector<Candidate> scratch;
    for (std::size_t i = 0; i < sample.size(); ++i) {
      fill_candidates(sample, i, scratch);
      const auto mid = scratch.begin() + static_cast<std::ptrdiff_t>(depth);
      std::partial_sort(scratch.begin(), mid, scratch.end());
      for (std::size_t r = 0; r < depth; ++r) table_[i * depth + r] = scratch[r].second;
    }
  }

  std::size_t neighbor(std::size_t base, std::size_t rank) const noexcept {
    return table_[base * depth_ + (rank - 1)];
  }

 private:
  std::size_t depth_;
  std::vector<std::size_t> table_;
};

void interpolate_into(const Sample& sample, std::size_t i, std::size_t j, double lambda,
                      std::span<double> out) noexcept {
  const auto base = sample.point(i);
  const auto other = sample.point(j);
  for (std::size_t c = 0; c < base.size(); ++c) out[c] = base[c] + lambda * (other[c] - base[c]);
}

// The frozen draw order: base index, [pool choice], lambda.
template <typename NeighborFn>
void draw_into(const Sample& sample, const SmoteConfig& config, RngStream& rng,
               NeighborFn&& neighbor, std::span<double> out) {
  const std::size_t i = rng.uniform_index(sample.size());
  std::size_t k = config.rank;
  if (config.variant == Variant::RandomFromPool) k = 1 + rng.uniform_index(config.rank);
  const double lambda = rng.uniform01();
  interpolate_into(sample, i, neighbor(i, k), lambda, out);
}

}  // namespace

std::string_view to_string(Variant v) noexcept {
  return v == Variant::FixedRank ? "fixed" : "pool";
}

Variant parse_variant(std::string_view name) {
  if (name == "fixed" || name == "smote-k") return Variant::FixedRank;
  if (name == "pool" || name == "smote-K") return Variant::RandomFromPool;
  throw Error(ErrorCode::InvalidArgument,
              "unknown variant '" + std::string(name) + "' (expected fixed or pool)");
}

NeighborOrdering neighbor_ordering(const Sample& sample, std::size_t base_index) {
  check_base(sample, base_index);
  std::vector<Candidate> candidates;
  candidates.reserve(sample.size() - 1);
  fill_candidates(sample, base_index, candidates);
  std::sort(candidates.begin(), candidates.end());

  NeighborOrdering ordering;
  ordering.base_index = base_index;
  ordering.ordered_indices.reserve(candidates.size());
  ordering.distances.reserve(candidates.size());
  const bool squared = sample.dim() > 1;
  for (const auto& [key, index] : candidates) {
    ordering.ordered_indices.push_back(index);
    ordering.distances.push_back(squared ? std::sqrt(key) : key);
  }
  return ordering;
}

std::size_t rank_neighbor(const Sample& sample, std::size_t base_index, std::size_t rank) {
  check_base(sample, base_index);
  check_rank(sample, rank);
  return rank_neighbor_unchecked(sample, base_index, rank);
}

Point interpolate(const Sample& sample, std::size_t base_index, std::size_t neighbor_index,
                  double lambda) {
  if (base_index >= sample.size() || neighbor_index >= sample.size()) {
    throw Error(ErrorCode::IndexOutOfRange, "interpolation index outside the sample");
  }
  Point z(sample.dim());
  interpolate_into(sample, base_index, neighbor_index, lambda, z);
  return z;
}

Point smote_draw(const Sample& sample, const SmoteConfig& config, RngStream& rng) {
  check_rank(sample, config.rank);
  Point z(sample.dim());
  draw_into(
      sample, config, rng,
      [&](std::size_t i, std::size_t k) { return rank_neighbor_unchecked(sample, i, k); }, z);
  return z;
}

Point smote_k(const Sample& sample, std::size_t k, RngStream& rng) {
  return smote_draw(sample, SmoteConfig{k, Variant::FixedRank, 0}, rng);
}

Point smote_big_k(const Sample& sample, std::size_t pool_size, RngStream& rng) {
  return smote_draw(sample, SmoteConfig{pool_size, Variant::RandomFromPool, 0}, rng);
}

Sample generate_batch(const Sample& sample, const SmoteConfig& config, std::size_t count,
                      unsigned threads) {
  if (count == 0) throw Error(ErrorCode::InvalidCount, "batch size must be at least 1");
  check_rank(sample, config.rank);

  const std::size_t dim = sample.dim();
  std::vector<double> out(count * dim);
  auto emit = [&](auto&& neighbor) {
    parallel_for(count, threads, [&](std::size_t j) {
      RngStream rng(config.seed, j);
      draw_into(sample, config, rng, neighbor, std::span<double>(out.data() + j * dim, dim));
    });
  };
  // The table costs O(n^2); it only pays off once every base point is likely reused.
  if (count >= sample.size()) {
    const NeighborTable table(sample, config.rank);
    emit([&](std::size_t i, std::size_t k) { return table.neighbor(i, k); });
  } else {
    emit([&](std::size_t i, std::size_t k) { return rank_neighbor_unchecked(sample, i, k); });
  }
  return Sample(std::move(out), dim);
}

}  // namespace smotelab
