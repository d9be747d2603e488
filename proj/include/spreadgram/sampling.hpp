#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "spreadgram/graph.hpp"
#include "spreadgram/rng.hpp"
#include "spreadgram/search.hpp"

namespace spreadgram {

// Training samples for one center node: all neighbors as positives plus up
// to k * |N(y)| uniformly drawn non-neighbor negatives.
struct SampleSet {
  NodeId center = 0;
  std::span<const NodeId> positives;  // aliases the graph adjacency row
  std::vector<NodeId> negatives;
  bool truncated = false;  // eligible pool was smaller than k * |N(y)|

  std::size_t pair_count() const { return positives.size() + negatives.size(); }
};

// Negatives are drawn uniformly without replacement from all nodes outside
// N(y) and y itself, across all components. When the eligible pool is
// smaller than k * |N(y)| every eligible node is taken and `truncated` is
// set.
SampleSet draw_samples(const Graph& g, NodeId y, std::uint32_t k, Rng& rng);

// Lazily yields one SampleSet per node following the activation order.
class PairStream {
 public:
  PairStream(const Graph& g, const ActivationOrder& order, std::uint32_t k,
             Rng rng)
      : g_(&g), order_(&order), k_(k), rng_(rng) {}

  std::optional<SampleSet> next() {
    if (pos_ >= order_->sequence.size()) return std::nullopt;
    return draw_samples(*g_, order_->sequence[pos_++], k_, rng_);
  }

 private:
  const Graph* g_;
  const ActivationOrder* order_;
  std::uint32_t k_;
  std::size_t pos_ = 0;
  Rng rng_;
};

// One SampleSet per node in activation order, materialized.
std::vector<SampleSet> draw_all_samples(const Graph& g,
                                        const ActivationOrder& order,
                                        std::uint32_t k, Rng& rng);

// One SampleSet per node in id order (used for likelihood traces).
std::vector<SampleSet> draw_samples_by_id(const Graph& g, std::uint32_t k,
                                          Rng& rng);

}  // namespace spreadgram
