#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "spreadgram/generators.hpp"
#include "spreadgram/hetero.hpp"
#include "spreadgram/search.hpp"
#include "support/oracles.hpp"

using namespace spreadgram;

namespace {

bool rel_close(double a, double b, double tol) {
  double scale = std::max({std::abs(a), std::abs(b), 1e-8});
  return std::abs(a - b) <= tol * scale;
}

// Random graph with `types` node types assigned round-robin by id.
Graph random_typed_graph(std::uint32_t n, double p, std::uint16_t types,
                         std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::pair<std::string, std::string>> edges;
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = i + 1; j < n; ++j)
      if (rng.real() < p)
        edges.emplace_back("v" + std::to_string(i), "v" + std::to_string(j));
  }
  for (std::uint32_t i = 0; i < n; ++i) {
    bool present = false;
    for (auto& [a, b] : edges)
      present |= a == "v" + std::to_string(i) || b == "v" + std::to_string(i);
    if (!present)
      edges.emplace_back("v" + std::to_string(i),
                         "v" + std::to_string((i + 1) % n));
  }
  std::vector<std::pair<std::string, std::string>> node_types;
  for (std::uint32_t i = 0; i < n; ++i)
    node_types.emplace_back("v" + std::to_string(i),
                            "t" + std::to_string(i % types));
  return graph_from_edges(edges, node_types);
}

EmbeddingTable random_table(const Graph& g, std::uint32_t dim,
                            std::uint64_t seed, double scale = 1.0) {
  Rng rng(seed);
  EmbeddingTable emb = EmbeddingTable::random_init(g.node_count, dim, rng);
  for (double& x : emb.data) x *= scale * dim;
  return emb;
}

MappingMatrices random_maps(std::uint16_t types, std::uint32_t dim,
                            std::uint64_t seed) {
  MappingMatrices maps = MappingMatrices::identity(types, dim);
  Rng rng(seed);
  for (double& x : maps.data) x += rng.range(-0.4, 0.4);
  return maps;
}

}  // namespace

TEST_CASE("identity matrices leave vectors unchanged") {
  Graph g = random_typed_graph(6, 0.5, 2, 1);
  EmbeddingTable emb = random_table(g, 4, 2);
  MappingMatrices maps = MappingMatrices::identity(2, 4);
  for (NodeId v = 0; v < g.node_count; ++v) {
    auto mapped = map_to_benchmark(g, v, emb, maps);
    auto row = emb.row(v);
    for (std::uint32_t j = 0; j < 4; ++j) CHECK(mapped[j] == row[j]);
  }
}

TEST_CASE("doubled identity doubles every coordinate") {
  Graph g = random_typed_graph(5, 0.6, 1, 3);
  EmbeddingTable emb = random_table(g, 3, 4);
  MappingMatrices maps = MappingMatrices::identity(1, 3);
  for (double& x : maps.data) x *= 2.0;
  auto mapped = map_to_benchmark(g, 0, emb, maps);
  for (std::uint32_t j = 0; j < 3; ++j)
    CHECK(mapped[j] == doctest::Approx(2.0 * emb.row(0)[j]));
}

TEST_CASE("mapping matches an independent long-double multiply") {
  Graph g = random_typed_graph(8, 0.4, 3, 5);
  EmbeddingTable emb = random_table(g, 6, 6, 2.0);
  MappingMatrices maps = random_maps(3, 6, 7);
  for (NodeId v = 0; v < g.node_count; ++v) {
    auto mine = map_to_benchmark(g, v, emb, maps);
    auto w = maps.matrix(g.node_type[v]);
    auto a = emb.row(v);
    for (std::uint32_t i = 0; i < 6; ++i) {
      long double ref = 0.0L;
      for (std::uint32_t j = 0; j < 6; ++j)
        ref += static_cast<long double>(w[i * 6 + j]) * a[j];
      REQUIRE(rel_close(mine[i], static_cast<double>(ref), 1e-12));
    }
  }
}

TEST_CASE("sigma0 reduces to sigma under identity matrices") {
  Graph g = random_typed_graph(6, 0.5, 1, 8);
  EmbeddingTable emb = random_table(g, 5, 9, 2.0);
  MappingMatrices maps = MappingMatrices::identity(1, 5);
  for (NodeId x = 0; x < g.node_count; ++x)
    for (NodeId y = 0; y < g.node_count; ++y)
      CHECK(sigma0(g, x, y, emb, maps) == sigma(emb.row(x), emb.row(y)));
  Rng rng(10);
  for (NodeId y = 0; y < g.node_count; ++y) {
    SampleSet s = draw_samples(g, y, 2, rng);
    CHECK(hetero_center_gradient(g, emb, maps, s) == center_gradient(emb, s));
    CHECK(hetero_center_log_likelihood(g, emb, maps, s) ==
          center_log_likelihood(emb, s));
  }
}

TEST_CASE("sigma0 is 0.5 when one side is zero") {
  Graph g = random_typed_graph(4, 0.7, 2, 10);
  EmbeddingTable emb = random_table(g, 4, 11);
  for (double& v : emb.row(0)) v = 0.0;
  MappingMatrices maps = random_maps(2, 4, 12);
  CHECK(sigma0(g, 0, 1, emb, maps) == 0.5);
}

TEST_CASE("sigma0 equals the map-then-sigma composition") {
  Graph g = random_typed_graph(7, 0.4, 2, 13);
  EmbeddingTable emb = random_table(g, 5, 14, 2.0);
  MappingMatrices maps = random_maps(2, 5, 15);
  for (NodeId x = 0; x < g.node_count; ++x) {
    for (NodeId y = 0; y < g.node_count; ++y) {
      auto mx = map_to_benchmark(g, x, emb, maps);
      auto my = map_to_benchmark(g, y, emb, maps);
      REQUIRE(rel_close(sigma0(g, x, y, emb, maps), sigma(mx, my), 1e-12));
    }
  }
}

TEST_CASE("hetero center gradient matches finite differences") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    Graph g = random_typed_graph(8 + seed, 0.3, 2, seed * 17);
    std::uint32_t dim = 3 + seed % 4;
    EmbeddingTable emb = random_table(g, dim, seed * 5, 1.5);
    MappingMatrices maps = random_maps(2, dim, seed * 7);
    Rng rng(seed);
    for (NodeId y = 0; y < g.node_count; ++y) {
      SampleSet s = draw_samples(g, y, 2, rng);
      auto grad = hetero_center_gradient(g, emb, maps, s);
      for (std::uint32_t j = 0; j < dim; ++j) {
        EmbeddingTable probe = emb;
        double fd = oracle::central_diff(
            [&](double t) {
              probe.row(y)[j] = t;
              return hetero_center_log_likelihood(g, probe, maps, s);
            },
            emb.row(y)[j], 1e-5);
        REQUIRE(rel_close(grad[j], fd, 1e-4));
      }
    }
  }
}

TEST_CASE("matrix gradient matches finite differences") {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    Graph g = random_typed_graph(8, 0.35, 2, seed * 23);
    std::uint32_t dim = 3 + seed;
    EmbeddingTable emb = random_table(g, dim, seed * 3, 1.5);
    MappingMatrices maps = random_maps(2, dim, seed * 9);
    Rng rng(seed * 2);
    std::vector<SampleSet> samples = draw_samples_by_id(g, 2, rng);
    MappingMatrices grad = matrix_gradient(g, emb, maps, samples);
    for (std::size_t e = 0; e < maps.data.size(); ++e) {
      MappingMatrices probe = maps;
      double fd = oracle::central_diff(
          [&](double t) {
            probe.data[e] = t;
            return hetero_log_likelihood(g, emb, probe, samples);
          },
          maps.data[e], 1e-5);
      REQUIRE(rel_close(grad.data[e], fd, 1e-4));
    }
  }
}

TEST_CASE("zero embeddings give a zero matrix gradient and fixed point") {
  Graph g = random_typed_graph(8, 0.4, 2, 40);
  EmbeddingTable emb = EmbeddingTable::zeros(g.node_count, 4);
  MappingMatrices maps = random_maps(2, 4, 41);
  Rng rng(42);
  auto samples = draw_samples_by_id(g, 2, rng);
  MappingMatrices grad = matrix_gradient(g, emb, maps, samples);
  for (double x : grad.data) CHECK(x == 0.0);
  for (const auto& s : samples)
    REQUIRE(hetero_update_center(g, s.center, s, emb, maps, 0.1));
  for (double x : emb.data) CHECK(x == 0.0);
}

TEST_CASE("single update is bitwise equal to the homogeneous one under identity") {
  Graph g = random_typed_graph(10, 0.3, 1, 50);
  EmbeddingTable a = random_table(g, 4, 51, 2.0);
  EmbeddingTable b = a;
  MappingMatrices maps = MappingMatrices::identity(1, 4);
  Rng r1(5), r2(5);
  for (NodeId y = 0; y < g.node_count; ++y) {
    SampleSet s1 = draw_samples(g, y, 2, r1);
    SampleSet s2 = draw_samples(g, y, 2, r2);
    REQUIRE(update_center(y, s1, a, 0.05));
    REQUIRE(hetero_update_center(g, y, s2, b, maps, 0.05));
  }
  CHECK(a.data == b.data);  // bitwise
}

TEST_CASE("frozen identity training reduces bitwise to the homogeneous path") {
  Graph g = random_typed_graph(18, 0.2, 1, 60);
  TrainConfig cfg;
  cfg.dimension = 5;
  cfg.iterations = 12;
  cfg.seed = 61;
  cfg.train_matrices = false;
  TrainResult homo = train(g, cfg);
  HeteroTrainResult hetero = train_hetero(g, cfg);
  REQUIRE_FALSE(homo.diverged);
  REQUIRE_FALSE(hetero.diverged);
  CHECK(homo.embeddings.data == hetero.embeddings.data);  // bitwise
  REQUIRE(homo.trace.size() == hetero.trace.size());
  for (std::size_t i = 0; i < homo.trace.size(); ++i)
    CHECK(homo.trace[i].log_likelihood == hetero.trace[i].log_likelihood);
  // Matrices stayed identity.
  MappingMatrices id = MappingMatrices::identity(1, 5);
  CHECK(hetero.matrices.data == id.data);
}

TEST_CASE("bipartite toy trains without divergence and improves") {
  Graph g = graph_from_edges(
      {{"a1", "p1"}, {"a1", "p2"}, {"a2", "p1"}, {"a2", "p3"},
       {"a3", "p2"}, {"a3", "p3"}},
      {{"a1", "author"}, {"a2", "author"}, {"a3", "author"},
       {"p1", "paper"}, {"p2", "paper"}, {"p3", "paper"}});
  REQUIRE(g.type_count == 2);
  TrainConfig cfg;
  cfg.dimension = 4;
  cfg.iterations = 30;
  cfg.seed = 3;
  HeteroTrainResult r = train_hetero(g, cfg);
  REQUIRE_FALSE(r.diverged);
  CHECK(r.embeddings.all_finite());
  CHECK(r.matrices.all_finite());
  CHECK(r.trace.back().log_likelihood > r.trace.front().log_likelihood);
}

TEST_CASE("hetero work counters match the closed form and scale with d") {
  auto run = [](const Graph& g, std::uint32_t dim) {
    TrainConfig cfg;
    cfg.dimension = dim;
    cfg.iterations = 1;
    cfg.negative = 2;
    cfg.seed = 4;
    HeteroTrainResult r = train_hetero(g, cfg);
    REQUIRE_FALSE(r.diverged);
    std::uint64_t d = dim, n = g.node_count;
    std::uint64_t t = 2 * g.edge_count * (cfg.negative + 1);
    REQUIRE(r.trace[1].embed_work ==
            (d * d + d) * n + (3 * d * d + 3 * d) * t);
    REQUIRE(r.trace[1].matrix_work ==
            d * d * n + (3 * d * d + d) * t + g.type_count * d * d);
    return std::make_pair(r.trace[1].embed_work, r.trace[1].matrix_work);
  };
  Graph g1 = random_typed_graph(30, 0.1, 2, 70);
  auto [e4, m4] = run(g1, 4);
  auto [e8, m8] = run(g1, 8);
  double embed_ratio = static_cast<double>(e8) / static_cast<double>(e4);
  double matrix_ratio = static_cast<double>(m8) / static_cast<double>(m4);
  CHECK(embed_ratio > 3.2);
  CHECK(embed_ratio < 4.05);
  CHECK(matrix_ratio > 3.2);
  CHECK(matrix_ratio < 4.05);

  // Disjoint double of the same graph: work doubles with |E|.
  std::vector<std::pair<std::string, std::string>> doubled_edges;
  std::vector<std::pair<std::string, std::string>> doubled_types;
  for (NodeId v = 0; v < g1.node_count; ++v) {
    for (int c = 0; c < 2; ++c)
      doubled_types.emplace_back("c" + std::to_string(c) + g1.labels[v],
                                 g1.type_names[g1.node_type[v]]);
    for (NodeId u : g1.neighbors(v))
      if (v < u)
        for (int c = 0; c < 2; ++c)
          doubled_edges.emplace_back("c" + std::to_string(c) + g1.labels[v],
                                     "c" + std::to_string(c) + g1.labels[u]);
  }
  Graph g2 = graph_from_edges(doubled_edges, doubled_types);
  REQUIRE(g2.edge_count == 2 * g1.edge_count);
  auto [e4b, m4b] = run(g2, 4);
  CHECK(static_cast<double>(e4b) / e4 > 1.8);
  CHECK(static_cast<double>(e4b) / e4 < 2.2);
  CHECK(static_cast<double>(m4b) / m4 > 1.8);
  CHECK(static_cast<double>(m4b) / m4 < 2.2);
}

TEST_CASE("parallel hetero training stays finite and improves") {
  Graph g = random_typed_graph(40, 0.12, 2, 90);
  TrainConfig cfg;
  cfg.dimension = 4;
  cfg.iterations = 5;
  cfg.seed = 6;
  cfg.parallel = true;
  cfg.threads = 4;
  HeteroTrainResult r = train_hetero(g, cfg);
  REQUIRE_FALSE(r.diverged);
  CHECK(r.embeddings.all_finite());
  CHECK(r.matrices.all_finite());
  CHECK(r.trace.back().log_likelihood > r.trace.front().log_likelihood);
}

TEST_CASE("missing matrix for a type raises") {
  Graph g = random_typed_graph(5, 0.5, 2, 80);
  EmbeddingTable emb = random_table(g, 3, 81);
  MappingMatrices maps = MappingMatrices::identity(1, 3);  // one short
  NodeId second_type = 0;
  while (g.node_type[second_type] == 0) ++second_type;
  CHECK_THROWS_AS(map_to_benchmark(g, second_type, emb, maps),
                  std::out_of_range);
}
