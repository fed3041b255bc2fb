#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "smotelab/rng.hpp"
#include "smotelab/sample.hpp"

namespace smotelab {

enum class Variant {
  FixedRank,       // SMOTE-k: always the rank-k neighbor
  RandomFromPool,  // SMOTE-K: a neighbor drawn uniformly from the K nearest
};

std::string_view to_string(Variant v) noexcept;
Variant parse_variant(std::string_view name);

struct SmoteConfig {
  std::size_t rank = 1;  // k for FixedRank, K for RandomFromPool
  Variant variant = Variant::FixedRank;
  std::uint64_t seed = 0;
};

struct NeighborOrdering {
  std::size_t base_index = 0;
  std::vector<std::size_t> ordered_indices;
  std::vector<double> distances;  // Euclidean, aligned with ordered_indices
};

/// All other indices of `sample` sorted by Euclidean distance to the base
/// point, ties broken by ascending index.
NeighborOrdering neighbor_ordering(const Sample& sample, std::size_t base_index);

/// Index of the rank-th nearest neighbor of `base_index` (rank is 1-based),
/// using the same ordering as neighbor_ordering() but in O(n).
std::size_t rank_neighbor(const Sample& sample, std::size_t base_index, std::size_t rank);

/// base + lambda * (neighbor - base), componentwise.
Point interpolate(const Sample& sample, std::size_t base_index, std::size_t neighbor_index,
                  double lambda);

/// One SMOTE-k draw. Consumes exactly two draws from `rng`: base index, lambda.
Point smote_k(const Sample& sample, std::size_t k, RngStream& rng);

/// One SMOTE-K draw. Consumes exactly three draws from `rng`: base index,
/// pool choice, lambda.
Point smote_big_k(const Sample& sample, std::size_t pool_size, RngStream& rng);

/// Dispatches on config.variant; config.seed is ignored.
Point smote_draw(const Sample& sample, const SmoteConfig& config, RngStream& rng);

/// `count` synthetic points. Draw j uses its own stream (config.seed, id j),
/// so the output is independent of evaluation order and thread count.
Sample generate_batch(const Sample& sample, const SmoteConfig& config, std::size_t count,
                      unsigned threads = 1);

}  // namespace smotelab
