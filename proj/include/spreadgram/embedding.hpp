#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "spreadgram/graph.hpp"
#include "spreadgram/rng.hpp"

namespace spreadgram {

// Dense per-node embedding vectors, node_count x dimension row-major.
struct EmbeddingTable {
  std::uint32_t dimension = 0;
  std::vector<double> data;

  static EmbeddingTable zeros(std::uint32_t nodes, std::uint32_t dim) {
    EmbeddingTable t;
    t.dimension = dim;
    t.data.assign(static_cast<std::size_t>(nodes) * dim, 0.0);
    return t;
  }

  // Uniform entries in [-0.5/d, +0.5/d): small enough to keep the sigmoid
  // unsaturated at the start.
  static EmbeddingTable random_init(std::uint32_t nodes, std::uint32_t dim,
                                    Rng& rng);

  std::uint32_t node_count() const {
    return dimension == 0
               ? 0
               : static_cast<std::uint32_t>(data.size() / dimension);
  }

  std::span<double> row(NodeId v) {
    return {data.data() + static_cast<std::size_t>(v) * dimension, dimension};
  }
  std::span<const double> row(NodeId v) const {
    return {data.data() + static_cast<std::size_t>(v) * dimension, dimension};
  }

  bool all_finite() const;
};

}  // namespace spreadgram
