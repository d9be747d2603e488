#include <doctest.h>

#include <map>
#include <sstream>
#include <stdexcept>

#include "spreadgram/graph.hpp"
#include "spreadgram/rng.hpp"
#include "support/oracles.hpp"

using namespace spreadgram;

namespace {

Graph from_lines(const std::string& edges, const std::string& types = "") {
  std::istringstream es(edges);
  if (types.empty()) return load_edge_list(es);
  std::istringstream ts(types);
  return load_edge_list(es, &ts);
}

}  // namespace

TEST_CASE("path graph loads with symmetric adjacency") {
  Graph g = from_lines("a b\nb c\n");
  CHECK(g.node_count == 3);
  CHECK(g.edge_count == 2);
  NodeId b = g.label_ids.at("b");
  auto nb = g.neighbors(b);
  CHECK(nb.size() == 2);
  CHECK(g.has_edge(b, g.label_ids.at("a")));
  CHECK(g.has_edge(b, g.label_ids.at("c")));
  CHECK(g.component_count == 1);
}

TEST_CASE("directed duplicates merge into one undirected edge") {
  Graph g = from_lines("a b\nb a\na b\n");
  CHECK(g.node_count == 2);
  CHECK(g.edge_count == 1);
  CHECK(g.neighbors(0).size() == 1);
}

TEST_CASE("labels get dense ids in first-seen order") {
  Graph g = from_lines("x y\nz x\n");
  CHECK(g.label_ids.at("x") == 0);
  CHECK(g.label_ids.at("y") == 1);
  CHECK(g.label_ids.at("z") == 2);
  CHECK(g.labels[0] == "x");
}

TEST_CASE("comments, blank lines and weights are accepted") {
  Graph g = from_lines("# header\na b 0.5\n\nb c 2\n");
  CHECK(g.node_count == 3);
  CHECK(g.edge_count == 2);
}

TEST_CASE("malformed line reports its number") {
  std::istringstream es("a b\nc\n");
  CHECK_THROWS_WITH_AS(load_edge_list(es),
                       doctest::Contains("line 2"), std::runtime_error);
}

TEST_CASE("self-loops are dropped with a warning") {
  std::istringstream es("a a\na b\n");
  std::vector<std::string> warnings;
  Graph g = load_edge_list(es, nullptr, &warnings);
  CHECK(g.node_count == 2);
  CHECK(g.edge_count == 1);
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("self-loop") != std::string::npos);
}

TEST_CASE("node types load and unknown labels are dropped with warning") {
  std::istringstream es("a b\nb c\n");
  std::istringstream ts("a author\nb paper\nc author\nghost paper\n");
  std::vector<std::string> warnings;
  Graph g = load_edge_list(es, &ts, &warnings);
  CHECK(g.type_count == 2);
  CHECK(g.node_type[g.label_ids.at("a")] == g.node_type[g.label_ids.at("c")]);
  CHECK(g.node_type[g.label_ids.at("a")] != g.node_type[g.label_ids.at("b")]);
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("ghost") != std::string::npos);
}

TEST_CASE("node missing from a given type file is a hard error") {
  std::istringstream es("a b\nb c\n");
  std::istringstream ts("a author\nb paper\n");
  CHECK_THROWS_WITH_AS(load_edge_list(es, &ts),
                       doctest::Contains("'c'"), std::runtime_error);
}

TEST_CASE("degree and out-of-range error") {
  Graph g = from_lines("hub s1\nhub s2\nhub s3\nhub s4\n");
  CHECK(g.degree(g.label_ids.at("hub")) == 4);
  CHECK(g.degree(g.label_ids.at("s1")) == 1);
  CHECK_THROWS_AS(g.degree(99), std::out_of_range);
}

TEST_CASE("two separate edges give two components") {
  Graph g = from_lines("a b\nc d\n");
  CHECK(g.component_count == 2);
  CHECK(g.component_id[g.label_ids.at("a")] ==
        g.component_id[g.label_ids.at("b")]);
  CHECK(g.component_id[g.label_ids.at("a")] !=
        g.component_id[g.label_ids.at("c")]);
}

TEST_CASE("handshake identity holds on random graphs") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(seed);
    std::vector<std::pair<std::string, std::string>> edges;
    for (int i = 0; i < 40; ++i) {
      auto u = rng.below(25), v = rng.below(25);
      if (u == v) continue;
      edges.emplace_back("v" + std::to_string(u), "v" + std::to_string(v));
    }
    if (edges.empty()) continue;
    Graph g = graph_from_edges(edges);
    std::uint64_t total = 0;
    for (NodeId v = 0; v < g.node_count; ++v) total += g.degree(v);
    CHECK(total == 2 * g.edge_count);
  }
}

TEST_CASE("component labelling agrees with a reachability oracle") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed * 7 + 1);
    std::vector<std::pair<std::string, std::string>> edges;
    int n = 5 + static_cast<int>(rng.below(45));
    for (int i = 0; i < n; ++i) {
      auto u = rng.below(n), v = rng.below(n);
      if (u == v) continue;
      edges.emplace_back("v" + std::to_string(u), "v" + std::to_string(v));
    }
    if (edges.empty()) continue;
    Graph g = graph_from_edges(edges);
    auto [mine, count] = connected_components(g);
    auto ref = oracle::reachability_components(g);
    std::uint32_t distinct = 0;
    std::map<std::uint32_t, std::uint32_t> seen;
    for (NodeId v = 0; v < g.node_count; ++v)
      if (seen.emplace(ref[v], distinct).second) ++distinct;
    REQUIRE(count == distinct);
    for (NodeId u = 0; u < g.node_count; ++u)
      for (NodeId v = 0; v < g.node_count; ++v)
        CHECK((mine[u] == mine[v]) == (ref[u] == ref[v]));
  }
}

TEST_CASE("edge list round-trips to an identical graph") {
  Graph g = from_lines("a b\nb c\nc a\nd a\n");
  std::ostringstream out;
  save_edge_list(out, g);
  std::istringstream in(out.str());
  Graph h = load_edge_list(in);
  CHECK(h.node_count == g.node_count);
  CHECK(h.edge_count == g.edge_count);
  CHECK(h.adj == g.adj);
  CHECK(h.adj_offsets == g.adj_offsets);
  CHECK(h.labels == g.labels);
}
