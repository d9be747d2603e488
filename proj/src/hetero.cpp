#include "spreadgram/hetero.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

#include "spreadgram/search.hpp"
#include "vecops.hpp"

namespace spreadgram {

MappingMatrices MappingMatrices::identity(std::uint16_t types,
                                          std::uint32_t dim) {
  MappingMatrices m;
  m.dimension = dim;
  m.type_count = types;
  m.data.assign(static_cast<std::size_t>(types) * dim * dim, 0.0);
  for (std::uint16_t t = 0; t < types; ++t) {
    auto mat = m.matrix(t);
    for (std::uint32_t i = 0; i < dim; ++i) mat[i * dim + i] = 1.0;
  }
  return m;
}

bool MappingMatrices::all_finite() const {
  for (double x : data)
    if (!std::isfinite(x)) return false;
  return true;
}

void map_to_benchmark(const Graph& g, NodeId v, const EmbeddingTable& emb,
                      const MappingMatrices& maps, std::span<double> out) {
  if (emb.dimension != maps.dimension)
    throw std::invalid_argument("embedding/matrix dimension mismatch");
  std::uint16_t t = g.node_type[v];
  if (t >= maps.type_count)
    throw std::out_of_range("no mapping matrix for node type " +
                            std::to_string(t));
  vec::matvec(maps.matrix(t).data(), emb.row(v).data(), out.data(),
              emb.dimension);
}

std::vector<double> map_to_benchmark(const Graph& g, NodeId v,
                                     const EmbeddingTable& emb,
                                     const MappingMatrices& maps) {
  std::vector<double> out(emb.dimension);
  map_to_benchmark(g, v, emb, maps, out);
  return out;
}

double sigma0(const Graph& g, NodeId x, NodeId y, const EmbeddingTable& emb,
              const MappingMatrices& maps) {
  std::vector<double> mx = map_to_benchmark(g, x, emb, maps);
  std::vector<double> my = map_to_benchmark(g, y, emb, maps);
  return sigmoid(vec::dot(mx.data(), my.data(), emb.dimension));
}

double hetero_center_log_likelihood(const Graph& g, const EmbeddingTable& emb,
                                    const MappingMatrices& maps,
                                    const SampleSet& s) {
  const std::size_t d = emb.dimension;
  std::vector<double> my = map_to_benchmark(g, s.center, emb, maps);
  std::vector<double> mx(d);
  double ll = 0.0;
  auto term = [&](NodeId x, bool positive) {
    vec::matvec(maps.matrix(g.node_type[x]).data(), emb.row(x).data(),
                mx.data(), d);
    double z = vec::dot(mx.data(), my.data(), d);
    ll += log_sigmoid(positive ? z : -z);
  };
  for (NodeId x : s.positives) term(x, true);
  for (NodeId x : s.negatives) term(x, false);
  return ll;
}

double hetero_log_likelihood(const Graph& g, const EmbeddingTable& emb,
                             const MappingMatrices& maps,
                             const std::vector<SampleSet>& samples) {
  double ll = 0.0;
  for (const SampleSet& s : samples)
    ll += hetero_center_log_likelihood(g, emb, maps, s);
  return ll;
}

std::vector<double> hetero_center_gradient(const Graph& g,
                                           const EmbeddingTable& emb,
                                           const MappingMatrices& maps,
                                           const SampleSet& s) {
  const std::size_t d = emb.dimension;
  const double* wy = maps.matrix(g.node_type[s.center]).data();
  std::vector<double> my = map_to_benchmark(g, s.center, emb, maps);
  std::vector<double> mx(d), ydir(d);
  std::vector<double> grad(d, 0.0);
  auto add = [&](NodeId x, double u) {
    vec::matvec(maps.matrix(g.node_type[x]).data(), emb.row(x).data(),
                mx.data(), d);
    double c = u - sigmoid(vec::dot(mx.data(), my.data(), d));
    vec::matvec_t(wy, mx.data(), ydir.data(), d);
    vec::axpy(grad.data(), c, ydir.data(), d);
  };
  for (NodeId x : s.positives) add(x, 1.0);
  for (NodeId x : s.negatives) add(x, 0.0);
  return grad;
}

bool hetero_update_center(const Graph& g, NodeId y, const SampleSet& s,
                          EmbeddingTable& emb, const MappingMatrices& maps,
                          double learning_rate, WorkCounter* work) {
  const std::size_t d = emb.dimension;
  const double* wy = maps.matrix(g.node_type[y]).data();
  std::vector<double> y_old(emb.row(y).begin(), emb.row(y).end());
  std::vector<double> my(d);
  vec::matvec(wy, y_old.data(), my.data(), d);
  std::vector<double> acc(d, 0.0);
  std::vector<double> mx(d), ydir(d), xdir(d);
  std::uint64_t units = d * d;
  bool ok = true;

  auto visit = [&](NodeId x, double u) {
    const double* wx = maps.matrix(g.node_type[x]).data();
    double* ax = emb.row(x).data();  // pre-write value of x
    vec::matvec(wx, ax, mx.data(), d);
    double z = vec::dot(mx.data(), my.data(), d);
    double c = u - sigmoid(z);
    ok &= std::isfinite(c);
    vec::matvec_t(wy, mx.data(), ydir.data(), d);
    ok &= vec::axpy(acc.data(), c, ydir.data(), d);
    vec::matvec_t(wx, my.data(), xdir.data(), d);
    ok &= vec::axpy(ax, learning_rate * c, xdir.data(), d);
    units += 3 * d * d + 3 * d;
  };
  for (NodeId x : s.positives) visit(x, 1.0);
  for (NodeId x : s.negatives) visit(x, 0.0);

  ok &= vec::scale_add(emb.row(y).data(), y_old.data(), learning_rate,
                       acc.data(), d);
  units += d;
  if (work) work->embed += units;
  return ok;
}

MappingMatrices matrix_gradient(const Graph& g, const EmbeddingTable& emb,
                                const MappingMatrices& maps,
                                const std::vector<SampleSet>& samples,
                                WorkCounter* work) {
  const std::size_t d = emb.dimension;
  MappingMatrices grad;
  grad.dimension = maps.dimension;
  grad.type_count = maps.type_count;
  grad.data.assign(maps.data.size(), 0.0);
  std::vector<double> my(d), mx(d);
  std::uint64_t units = 0;

  for (const SampleSet& s : samples) {
    NodeId y = s.center;
    std::uint16_t ty = g.node_type[y];
    const double* ay = emb.row(y).data();
    vec::matvec(maps.matrix(ty).data(), ay, my.data(), d);
    units += d * d;
    auto accumulate = [&](NodeId x, double u) {
      std::uint16_t tx = g.node_type[x];
      const double* ax = emb.row(x).data();
      vec::matvec(maps.matrix(tx).data(), ax, mx.data(), d);
      double c = u - sigmoid(vec::dot(mx.data(), my.data(), d));
      // d/dW_{ty} of the pair term, and the symmetric d/dW_{tx} part.
      vec::outer_acc(grad.matrix(ty).data(), c, mx.data(), ay, d);
      vec::outer_acc(grad.matrix(tx).data(), c, my.data(), ax, d);
      units += 3 * d * d + d;
    };
    for (NodeId x : s.positives) accumulate(x, 1.0);
    for (NodeId x : s.negatives) accumulate(x, 0.0);
  }
  if (work) work->matrix += units;
  return grad;
}

bool update_mapping_matrices(const Graph& g, const EmbeddingTable& emb,
                             MappingMatrices& maps,
                             const std::vector<SampleSet>& samples,
                             double matrix_lr, WorkCounter* work) {
  MappingMatrices grad = matrix_gradient(g, emb, maps, samples, work);
  bool ok = vec::axpy(maps.data.data(), matrix_lr, grad.data.data(),
                      maps.data.size());
  if (work)
    work->matrix += static_cast<std::uint64_t>(maps.type_count) *
                    maps.dimension * maps.dimension;
  return ok;
}

namespace {

bool hetero_sweep(const Graph& g, const ActivationOrder& order,
                  const TrainConfig& cfg, std::uint32_t iteration,
                  EmbeddingTable& emb, const MappingMatrices& maps,
                  std::vector<SampleSet>& retained, WorkCounter& work) {
  retained.clear();
  retained.resize(order.sequence.size());
  if (!cfg.parallel) {
    Rng sample_rng = substream(cfg.seed, "sampling", iteration);
    for (std::size_t i = 0; i < order.sequence.size(); ++i) {
      NodeId y = order.sequence[i];
      retained[i] = draw_samples(g, y, cfg.negative, sample_rng);
      if (!hetero_update_center(g, y, retained[i], emb, maps,
                                cfg.learning_rate, &work))
        return false;
    }
    return true;
  }

  std::uint32_t nthreads = cfg.threads ? cfg.threads
                                       : std::thread::hardware_concurrency();
  if (nthreads == 0) nthreads = 2;
  bool all_ok = true;
  std::size_t base = 0;
  for (auto frontier : frontiers(order)) {
    std::uint32_t used = std::min<std::uint32_t>(
        nthreads, static_cast<std::uint32_t>(frontier.size()));
    std::vector<std::thread> pool;
    std::vector<WorkCounter> local(std::max<std::uint32_t>(used, 1));
    std::vector<std::uint8_t> oks(std::max<std::uint32_t>(used, 1), 1);
    auto run = [&](std::uint32_t t) {
      for (std::size_t i = t; i < frontier.size(); i += used) {
        NodeId y = frontier[i];
        Rng rng = substream(cfg.seed, "psample",
                            (static_cast<std::uint64_t>(iteration) << 32) | y);
        retained[base + i] = draw_samples(g, y, cfg.negative, rng);
        if (!hetero_update_center(g, y, retained[base + i], emb, maps,
                                  cfg.learning_rate, &local[t]))
          oks[t] = 0;
      }
    };
    if (used <= 1) {
      run(0);
    } else {
      for (std::uint32_t t = 0; t < used; ++t) pool.emplace_back(run, t);
      for (auto& th : pool) th.join();
    }
    for (std::uint32_t t = 0; t < local.size(); ++t) {
      work.embed += local[t].embed;
      all_ok &= oks[t] != 0;
    }
    base += frontier.size();
  }
  return all_ok;
}

}  // namespace

HeteroTrainResult train_hetero(const Graph& g, const TrainConfig& cfg,
                               const IterationCallback& per_iteration) {
  cfg.validate();
  HeteroTrainResult result;
  Rng init_rng = substream(cfg.seed, "init");
  result.embeddings =
      EmbeddingTable::random_init(g.node_count, cfg.dimension, init_rng);
  result.matrices = MappingMatrices::identity(g.type_count, cfg.dimension);

  Rng trace_rng = substream(cfg.seed, "trace");
  std::vector<SampleSet> trace_samples =
      draw_samples_by_id(g, cfg.negative, trace_rng);

  result.trace.push_back({hetero_log_likelihood(g, result.embeddings,
                                                result.matrices,
                                                trace_samples),
                          0, 0});
  if (per_iteration) per_iteration(0, result.embeddings, &result.matrices);

  const double matrix_lr = cfg.effective_matrix_lr();
  std::vector<double> emb_snapshot, mat_snapshot;
  std::vector<SampleSet> retained;
  for (std::uint32_t it = 1; it <= cfg.iterations; ++it) {
    emb_snapshot = result.embeddings.data;
    mat_snapshot = result.matrices.data;
    Rng search_rng = substream(cfg.seed, "search", it);
    ActivationOrder order = spread_search(g, search_rng);
    WorkCounter work;
    bool ok = hetero_sweep(g, order, cfg, it, result.embeddings,
                           result.matrices, retained, work);
    if (ok && cfg.train_matrices) {
      ok = update_mapping_matrices(g, result.embeddings, result.matrices,
                                   retained, matrix_lr, &work);
    }
    if (!ok || !result.embeddings.all_finite() ||
        !result.matrices.all_finite()) {
      result.embeddings.data = emb_snapshot;
      result.matrices.data = mat_snapshot;
      result.diverged = true;
      result.diagnostic =
          "non-finite value during iteration " + std::to_string(it) +
          "; returned the previous iteration's state (try lower learning "
          "rates)";
      break;
    }
    result.trace.push_back({hetero_log_likelihood(g, result.embeddings,
                                                  result.matrices,
                                                  trace_samples),
                            work.embed, work.matrix});
    result.completed_iterations = it;
    if (per_iteration) per_iteration(it, result.embeddings, &result.matrices);
  }
  return result;
}

}  // namespace spreadgram
