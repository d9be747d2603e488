#include <doctest.h>

#include <algorithm>
#include <set>

#include "spreadgram/generators.hpp"
#include "spreadgram/search.hpp"
#include "support/search_check.hpp"

using namespace spreadgram;

namespace {

void check_order(const Graph& g, const ActivationOrder& order) {
  std::string verdict = oracle::check_activation_order(g, order);
  REQUIRE_MESSAGE(verdict.empty(), verdict);
}

}  // namespace

TEST_CASE("star graph: seed center then leaves ascending") {
  Graph g = graph_from_edges({{"c", "l1"}, {"c", "l2"}, {"c", "l3"},
                              {"c", "l4"}});
  NodeId center = g.label_ids.at("c");
  // Try seeds until the center comes up first.
  for (std::uint64_t s = 0; s < 50; ++s) {
    Rng rng(s);
    ActivationOrder order = spread_search(g, rng);
    check_order(g, order);
    if (order.sequence[0] == center) {
      REQUIRE(order.frontier_count() == 2);
      auto leaves = order.frontier(1);
      CHECK(std::is_sorted(leaves.begin(), leaves.end()));
      CHECK(leaves.size() == 4);
      return;
    }
  }
  FAIL("center never drawn as seed");
}

TEST_CASE("path graph from an end activates in line order") {
  Graph g = graph_from_edges({{"a", "b"}, {"b", "c"}});
  NodeId a = g.label_ids.at("a");
  for (std::uint64_t s = 0; s < 50; ++s) {
    Rng rng(s);
    ActivationOrder order = spread_search(g, rng);
    check_order(g, order);
    if (order.sequence[0] == a) {
      CHECK(order.sequence[1] == g.label_ids.at("b"));
      CHECK(order.sequence[2] == g.label_ids.at("c"));
      CHECK(order.frontier_count() == 3);
      return;
    }
  }
  FAIL("end node never drawn as seed");
}

TEST_CASE("empty graph gives an empty order") {
  Graph g;
  Rng rng(1);
  ActivationOrder order = spread_search(g, rng);
  CHECK(order.sequence.empty());
  CHECK(order.frontier_count() == 0);
}

TEST_CASE("deterministic for a fixed seed") {
  Graph g = make_erdos_renyi(40, 0.1, 99);
  Rng r1(123), r2(123);
  ActivationOrder a = spread_search(g, r1);
  ActivationOrder b = spread_search(g, r2);
  CHECK(a.sequence == b.sequence);
  CHECK(a.frontier_offsets == b.frontier_offsets);
}

TEST_CASE("oracle suite over random graphs incl. multi-component") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    Graph g = make_erdos_renyi(30, seed % 3 ? 0.08 : 0.02, seed);
    Rng rng(seed * 13);
    ActivationOrder order = spread_search(g, rng);
    check_order(g, order);
    // Enqueue accounting: every activation enqueues its neighbor list once,
    // plus one seed per component.
    CHECK(order.enqueue_count == 2 * g.edge_count + g.component_count);
  }
}

TEST_CASE("frontier iteration concatenates back to the sequence") {
  Graph g = make_erdos_renyi(25, 0.1, 5);
  Rng rng(7);
  ActivationOrder order = spread_search(g, rng);
  std::vector<NodeId> glued;
  for (auto f : frontiers(order)) glued.insert(glued.end(), f.begin(), f.end());
  CHECK(glued == order.sequence);
}

TEST_CASE("two-component graph frontiers never span components") {
  Graph g = graph_from_edges({{"a", "b"}, {"b", "c"}, {"x", "y"}, {"y", "z"}});
  for (std::uint64_t s = 0; s < 10; ++s) {
    Rng rng(s);
    ActivationOrder order = spread_search(g, rng);
    check_order(g, order);
    for (auto f : frontiers(order)) {
      for (NodeId v : f)
        CHECK(g.component_id[v] == g.component_id[f.front()]);
    }
  }
}
