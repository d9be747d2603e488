#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace spreadgram {

using NodeId = std::uint32_t;

// Immutable undirected graph with dense node ids, per-node type indices and
// connected-component labels. Adjacency rows are sorted and deduplicated;
// self-loops are never stored. Safe to share across threads once built.
struct Graph {
  std::uint32_t node_count = 0;
  std::uint64_t edge_count = 0;  // unique undirected edges

  std::vector<std::uint64_t> adj_offsets;  // size node_count + 1
  std::vector<NodeId> adj;                 // size 2 * edge_count

  std::vector<std::uint16_t> node_type;  // per-node type index
  std::uint16_t type_count = 1;
  std::vector<std::string> type_names;

  std::vector<std::uint32_t> component_id;  // labels 0..component_count-1
  std::uint32_t component_count = 0;

  std::vector<std::string> labels;                    // id -> external label
  std::unordered_map<std::string, NodeId> label_ids;  // external label -> id

  std::span<const NodeId> neighbors(NodeId v) const {
    return {adj.data() + adj_offsets[v], adj.data() + adj_offsets[v + 1]};
  }

  // |N(v)|. Throws on an out-of-range id.
  std::uint32_t degree(NodeId v) const;

  // Binary search in u's adjacency row.
  bool has_edge(NodeId u, NodeId v) const;

  bool heterogeneous() const { return type_count > 1; }
};

// Build a graph from labelled edges. Arcs are symmetrized, duplicate edges
// merged and self-loops dropped (with a warning). Ids follow first
// appearance in the kept edges. When node_types is non-empty every surviving
// node must receive a type; type entries for unknown labels are dropped with
// a warning.
Graph graph_from_edges(
    const std::vector<std::pair<std::string, std::string>>& edges,
    const std::vector<std::pair<std::string, std::string>>& node_types = {},
    std::vector<std::string>* warnings = nullptr);

// Parse `src dst [weight]` lines (the weight is accepted and ignored,
// `#`-prefixed and blank lines skipped) plus optional `label type` lines.
// Malformed lines raise std::runtime_error with the line number.
Graph load_edge_list(std::istream& edges, std::istream* node_types = nullptr,
                     std::vector<std::string>* warnings = nullptr);

Graph load_edge_list_files(const std::string& edge_path,
                           const std::string& type_path = "",
                           std::vector<std::string>* warnings = nullptr);

// One `src dst` line per unique undirected edge, in id order.
void save_edge_list(std::ostream& out, const Graph& g);

// Fresh component labelling: labels 0..C-1, two nodes share a label iff a
// path connects them. The Graph caches this at build time in component_id.
std::pair<std::vector<std::uint32_t>, std::uint32_t> connected_components(
    const Graph& g);

}  // namespace spreadgram
