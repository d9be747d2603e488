#include "spreadgram/generators.hpp"

#include <numeric>
#include <string>

#include "spreadgram/rng.hpp"

namespace spreadgram {

namespace {

std::string node_label(std::uint32_t i) { return "n" + std::to_string(i); }

Graph build_with_isolated_fix(std::uint32_t n,
                              std::vector<std::pair<NodeId, NodeId>> edges,
                              Rng& rng) {
  std::vector<std::uint32_t> deg(n, 0);
  for (auto [u, v] : edges) {
    ++deg[u];
    ++deg[v];
  }
  // Wire isolated nodes to a random partner; the graph contract forbids
  // degree-zero nodes.
  for (NodeId v = 0; v < n; ++v) {
    if (deg[v] == 0 && n > 1) {
      NodeId u = static_cast<NodeId>(rng.below(n - 1));
      if (u >= v) ++u;
      edges.emplace_back(v, u);
      ++deg[v];
      ++deg[u];
    }
  }
  std::vector<std::pair<std::string, std::string>> labelled;
  labelled.reserve(edges.size());
  for (auto& [u, v] : edges)
    labelled.emplace_back(node_label(u), node_label(v));
  return graph_from_edges(labelled);
}

}  // namespace

SbmGraph make_sbm(const std::vector<std::uint32_t>& block_sizes, double p_in,
                  double p_out, std::uint64_t seed) {
  std::uint32_t n = std::accumulate(block_sizes.begin(), block_sizes.end(), 0u);
  std::vector<std::uint32_t> block(n);
  std::uint32_t pos = 0;
  for (std::uint32_t b = 0; b < block_sizes.size(); ++b)
    for (std::uint32_t i = 0; i < block_sizes[b]; ++i) block[pos++] = b;

  Rng rng(seed);
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = i + 1; j < n; ++j) {
      double p = block[i] == block[j] ? p_in : p_out;
      if (rng.real() < p) edges.emplace_back(i, j);
    }
  }
  SbmGraph out;
  out.graph = build_with_isolated_fix(n, std::move(edges), rng);
  // Ids follow first appearance in the edge list, not numeric order.
  out.block.assign(n, 0);
  for (std::uint32_t i = 0; i < n; ++i)
    out.block[out.graph.label_ids.at(node_label(i))] = block[i];
  return out;
}

Graph make_erdos_renyi(std::uint32_t n, double p, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j)
      if (rng.real() < p) edges.emplace_back(i, j);
  return build_with_isolated_fix(n, std::move(edges), rng);
}

}  // namespace spreadgram
