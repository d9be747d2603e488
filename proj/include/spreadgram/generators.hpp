#pragma once

#include <cstdint>
#include <vector>

#include "spreadgram/graph.hpp"

namespace spreadgram {

struct SbmGraph {
  Graph graph;
  std::vector<std::uint32_t> block;  // per node
};

// Stochastic block model with node labels "n0".."n{N-1}". Any node left
// isolated by the draw is wired to a random other node so the graph meets
// the no-isolated-node contract.
SbmGraph make_sbm(const std::vector<std::uint32_t>& block_sizes, double p_in,
                  double p_out, std::uint64_t seed);

Graph make_erdos_renyi(std::uint32_t n, double p, std::uint64_t seed);

}  // namespace spreadgram
