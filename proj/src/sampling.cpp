#include "spreadgram/sampling.hpp"

#include <algorithm>

namespace spreadgram {

SampleSet draw_samples(const Graph& g, NodeId y, std::uint32_t k, Rng& rng) {
  if (y >= g.node_count) throw std::out_of_range("sample center out of range");
  SampleSet s;
  s.center = y;
  s.positives = g.neighbors(y);

  const std::uint64_t want =
      static_cast<std::uint64_t>(k) * s.positives.size();
  const std::uint64_t pool =
      static_cast<std::uint64_t>(g.node_count) - 1 - s.positives.size();
  if (want == 0) return s;
  if (pool == 0) {
    s.truncated = true;
    return s;
  }

  auto eligible = [&](NodeId v) { return v != y && !g.has_edge(y, v); };

  if (want >= pool) {
    // Pool exhausted: take every eligible node.
    s.negatives.reserve(pool);
    for (NodeId v = 0; v < g.node_count; ++v)
      if (eligible(v)) s.negatives.push_back(v);
    s.truncated = want > pool;
  } else if (want * 3 >= pool) {
    // Dense draw: partial Fisher-Yates over the materialized pool.
    std::vector<NodeId> candidates;
    candidates.reserve(pool);
    for (NodeId v = 0; v < g.node_count; ++v)
      if (eligible(v)) candidates.push_back(v);
    s.negatives.reserve(want);
    for (std::uint64_t i = 0; i < want; ++i) {
      std::uint64_t j = i + rng.below(candidates.size() - i);
      std::swap(candidates[i], candidates[j]);
      s.negatives.push_back(candidates[i]);
    }
  } else {
    // Sparse draw: rejection sampling against neighbors and prior draws.
    s.negatives.reserve(want);
    std::vector<NodeId> drawn;  // kept sorted, small
    drawn.reserve(want);
    while (s.negatives.size() < want) {
      NodeId v = rng.below32(g.node_count);
      if (!eligible(v)) continue;
      auto it = std::lower_bound(drawn.begin(), drawn.end(), v);
      if (it != drawn.end() && *it == v) continue;
      drawn.insert(it, v);
      s.negatives.push_back(v);
    }
  }
  return s;
}

std::vector<SampleSet> draw_all_samples(const Graph& g,
                                        const ActivationOrder& order,
                                        std::uint32_t k, Rng& rng) {
  std::vector<SampleSet> out;
  out.reserve(order.sequence.size());
  for (NodeId y : order.sequence) out.push_back(draw_samples(g, y, k, rng));
  return out;
}

std::vector<SampleSet> draw_samples_by_id(const Graph& g, std::uint32_t k,
                                          Rng& rng) {
  std::vector<SampleSet> out;
  out.reserve(g.node_count);
  for (NodeId y = 0; y < g.node_count; ++y)
    out.push_back(draw_samples(g, y, k, rng));
  return out;
}

}  // namespace spreadgram
