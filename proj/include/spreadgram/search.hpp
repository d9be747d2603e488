#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "spreadgram/graph.hpp"
#include "spreadgram/rng.hpp"

namespace spreadgram {

// Order in which nodes are activated during one sweep: a permutation of all
// nodes grouped into breadth-first frontiers. frontier_offsets[i] is the
// index in `sequence` where frontier i begins.
struct ActivationOrder {
  std::vector<NodeId> sequence;
  std::vector<std::uint32_t> frontier_offsets;
  std::uint64_t enqueue_count = 0;  // instrumentation for complexity checks

  std::size_t frontier_count() const { return frontier_offsets.size(); }

  std::span<const NodeId> frontier(std::size_t i) const {
    std::size_t begin = frontier_offsets[i];
    std::size_t end = i + 1 < frontier_offsets.size() ? frontier_offsets[i + 1]
                                                      : sequence.size();
    return {sequence.data() + begin, sequence.data() + end};
  }
};

// Spreading-activation node search. Activates a random source, then
// repeatedly activates all not-yet-activated neighbors of the current
// frontier as the next frontier (ascending id within a frontier). Once a
// component is exhausted a fresh random source is drawn from the remaining
// nodes. Candidates are filtered against the activated set when consumed,
// so a node enqueued twice within one expansion is only activated once.
ActivationOrder spread_search(const Graph& g, Rng& rng);

// Range over the contiguous frontier slices of an order.
class FrontierRange {
 public:
  class iterator {
   public:
    iterator(const ActivationOrder* order, std::size_t i)
        : order_(order), i_(i) {}
    std::span<const NodeId> operator*() const { return order_->frontier(i_); }
    iterator& operator++() {
      ++i_;
      return *this;
    }
    bool operator!=(const iterator& other) const { return i_ != other.i_; }

   private:
    const ActivationOrder* order_;
    std::size_t i_;
  };

  explicit FrontierRange(const ActivationOrder& order) : order_(&order) {}
  iterator begin() const { return {order_, 0}; }
  iterator end() const { return {order_, order_->frontier_count()}; }

 private:
  const ActivationOrder* order_;
};

inline FrontierRange frontiers(const ActivationOrder& order) {
  return FrontierRange(order);
}

}  // namespace spreadgram
