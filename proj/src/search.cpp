#include "spreadgram/search.hpp"

#include <algorithm>

namespace spreadgram {

ActivationOrder spread_search(const Graph& g, Rng& rng) {
  ActivationOrder order;
  const std::uint32_t n = g.node_count;
  if (n == 0) return order;
  order.sequence.reserve(n);

  std::vector<std::uint8_t> activated(n, 0);
  // Remaining nodes with O(1) removal, for uniform seed draws.
  std::vector<NodeId> remaining(n);
  std::vector<std::uint32_t> position(n);
  for (NodeId v = 0; v < n; ++v) {
    remaining[v] = v;
    position[v] = v;
  }
  auto activate = [&](NodeId v) {
    activated[v] = 1;
    std::uint32_t pos = position[v];
    NodeId last = remaining.back();
    remaining[pos] = last;
    position[last] = pos;
    remaining.pop_back();
  };

  std::vector<NodeId> frontier, next, candidates;
  while (!remaining.empty()) {
    NodeId seed = remaining[rng.below32(
        static_cast<std::uint32_t>(remaining.size()))];
    activate(seed);
    frontier.assign(1, seed);
    ++order.enqueue_count;
    while (!frontier.empty()) {
      order.frontier_offsets.push_back(
          static_cast<std::uint32_t>(order.sequence.size()));
      order.sequence.insert(order.sequence.end(), frontier.begin(),
                            frontier.end());
      candidates.clear();
      for (NodeId v : frontier) {
        auto row = g.neighbors(v);
        candidates.insert(candidates.end(), row.begin(), row.end());
        order.enqueue_count += row.size();
      }
      next.clear();
      for (NodeId u : candidates) {
        if (!activated[u]) {
          activate(u);
          next.push_back(u);
        }
      }
      std::sort(next.begin(), next.end());
      frontier.swap(next);
    }
  }
  return order;
}

}  // namespace spreadgram
