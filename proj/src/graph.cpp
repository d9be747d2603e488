#include "spreadgram/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace spreadgram {

std::uint32_t Graph::degree(NodeId v) const {
  if (v >= node_count)
    throw std::out_of_range("node id " + std::to_string(v) +
                            " out of range (node count " +
                            std::to_string(node_count) + ")");
  return static_cast<std::uint32_t>(adj_offsets[v + 1] - adj_offsets[v]);
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  auto row = neighbors(u);
  return std::binary_search(row.begin(), row.end(), v);
}

Graph graph_from_edges(
    const std::vector<std::pair<std::string, std::string>>& edges,
    const std::vector<std::pair<std::string, std::string>>& node_types,
    std::vector<std::string>* warnings) {
  Graph g;
  auto intern = [&g](const std::string& label) -> NodeId {
    auto it = g.label_ids.find(label);
    if (it != g.label_ids.end()) return it->second;
    NodeId id = static_cast<NodeId>(g.labels.size());
    g.labels.push_back(label);
    g.label_ids.emplace(label, id);
    return id;
  };

  std::vector<std::pair<NodeId, NodeId>> arcs;
  arcs.reserve(edges.size());
  for (const auto& [src, dst] : edges) {
    if (src == dst) {
      if (warnings)
        warnings->push_back("self-loop on node '" + src + "' ignored");
      continue;
    }
    NodeId u = intern(src);  // sequenced: ids follow first appearance
    NodeId v = intern(dst);
    arcs.emplace_back(u, v);
  }
  g.node_count = static_cast<std::uint32_t>(g.labels.size());

  std::vector<std::vector<NodeId>> rows(g.node_count);
  for (auto [u, v] : arcs) {
    rows[u].push_back(v);
    rows[v].push_back(u);
  }
  g.adj_offsets.assign(g.node_count + 1, 0);
  for (NodeId v = 0; v < g.node_count; ++v) {
    auto& row = rows[v];
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
    g.adj_offsets[v + 1] = g.adj_offsets[v] + row.size();
  }
  g.adj.reserve(g.adj_offsets[g.node_count]);
  for (auto& row : rows) g.adj.insert(g.adj.end(), row.begin(), row.end());
  g.edge_count = g.adj.size() / 2;

  g.node_type.assign(g.node_count, 0);
  if (node_types.empty()) {
    g.type_count = 1;
    g.type_names = {"default"};
  } else {
    std::unordered_map<std::string, std::uint16_t> type_ids;
    std::vector<std::uint8_t> typed(g.node_count, 0);
    for (const auto& [label, type_name] : node_types) {
      auto it = g.label_ids.find(label);
      if (it == g.label_ids.end()) {
        if (warnings)
          warnings->push_back("node '" + label +
                              "' appears in the type file but not in the "
                              "edge list; dropped");
        continue;
      }
      auto [tit, fresh] = type_ids.emplace(
          type_name, static_cast<std::uint16_t>(g.type_names.size()));
      if (fresh) g.type_names.push_back(type_name);
      g.node_type[it->second] = tit->second;
      typed[it->second] = 1;
    }
    for (NodeId v = 0; v < g.node_count; ++v) {
      if (!typed[v])
        throw std::runtime_error("node '" + g.labels[v] +
                                 "' is missing from the node-type file");
    }
    g.type_count = static_cast<std::uint16_t>(g.type_names.size());
  }

  auto [comp, count] = connected_components(g);
  g.component_id = std::move(comp);
  g.component_count = count;
  return g;
}

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

}  // namespace

Graph load_edge_list(std::istream& edges, std::istream* node_types,
                     std::vector<std::string>* warnings) {
  std::vector<std::pair<std::string, std::string>> edge_pairs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(edges, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    auto toks = split_ws(line);
    if (toks.empty()) continue;
    if (toks.size() != 2 && toks.size() != 3)
      throw std::runtime_error(
          "edge list line " + std::to_string(lineno) +
          ": expected 'src dst [weight]', got " + std::to_string(toks.size()) +
          " fields");
    edge_pairs.emplace_back(toks[0], toks[1]);  // weight ignored
  }

  std::vector<std::pair<std::string, std::string>> type_pairs;
  if (node_types) {
    lineno = 0;
    while (std::getline(*node_types, line)) {
      ++lineno;
      if (line.empty() || line[0] == '#') continue;
      auto toks = split_ws(line);
      if (toks.empty()) continue;
      if (toks.size() != 2)
        throw std::runtime_error("node-type line " + std::to_string(lineno) +
                                 ": expected 'label type'");
      type_pairs.emplace_back(toks[0], toks[1]);
    }
  }
  return graph_from_edges(edge_pairs, type_pairs, warnings);
}

Graph load_edge_list_files(const std::string& edge_path,
                           const std::string& type_path,
                           std::vector<std::string>* warnings) {
  std::ifstream edges(edge_path);
  if (!edges) throw std::runtime_error("cannot open edge list: " + edge_path);
  if (type_path.empty()) return load_edge_list(edges, nullptr, warnings);
  std::ifstream types(type_path);
  if (!types)
    throw std::runtime_error("cannot open node-type file: " + type_path);
  return load_edge_list(edges, &types, warnings);
}

void save_edge_list(std::ostream& out, const Graph& g) {
  for (NodeId v = 0; v < g.node_count; ++v) {
    for (NodeId u : g.neighbors(v)) {
      if (v < u) out << g.labels[v] << ' ' << g.labels[u] << '\n';
    }
  }
}

std::pair<std::vector<std::uint32_t>, std::uint32_t> connected_components(
    const Graph& g) {
  constexpr std::uint32_t kUnset = 0xffffffffu;
  std::vector<std::uint32_t> comp(g.node_count, kUnset);
  std::uint32_t count = 0;
  std::vector<NodeId> stack;
  for (NodeId start = 0; start < g.node_count; ++start) {
    if (comp[start] != kUnset) continue;
    comp[start] = count;
    stack.push_back(start);
    while (!stack.empty()) {
      NodeId v = stack.back();
      stack.pop_back();
      for (NodeId u : g.neighbors(v)) {
        if (comp[u] == kUnset) {
          comp[u] = count;
          stack.push_back(u);
        }
      }
    }
    ++count;
  }
  return {std::move(comp), count};
}

}  // namespace spreadgram
