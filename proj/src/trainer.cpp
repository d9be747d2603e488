#include "spreadgram/trainer.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

#include "spreadgram/search.hpp"
#include "vecops.hpp"

namespace spreadgram {

EmbeddingTable EmbeddingTable::random_init(std::uint32_t nodes,
                                           std::uint32_t dim, Rng& rng) {
  EmbeddingTable t;
  t.dimension = dim;
  t.data.resize(static_cast<std::size_t>(nodes) * dim);
  const double half = 0.5 / dim;
  for (double& x : t.data) x = rng.range(-half, half);
  return t;
}

bool EmbeddingTable::all_finite() const {
  for (double x : data)
    if (!std::isfinite(x)) return false;
  return true;
}

void TrainConfig::validate() const {
  if (dimension == 0) throw std::invalid_argument("dimension must be >= 1");
  if (negative == 0)
    throw std::invalid_argument("negative coefficient must be >= 1");
  if (!(learning_rate > 0))
    throw std::invalid_argument("learning rate must be > 0");
  if (matrix_learning_rate >= 0 && !(matrix_learning_rate > 0))
    throw std::invalid_argument("matrix learning rate must be > 0");
}

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  double e = std::exp(z);
  return e / (1.0 + e);
}

double sigma(std::span<const double> ax, std::span<const double> ay) {
  if (ax.size() != ay.size())
    throw std::invalid_argument("sigma: dimension mismatch");
  return sigmoid(vec::dot(ax.data(), ay.data(), ax.size()));
}

double log_sigmoid(double z) {
  if (z >= 0) return -std::log1p(std::exp(-z));
  return z - std::log1p(std::exp(z));
}

double center_log_likelihood(const EmbeddingTable& emb, const SampleSet& s) {
  const std::size_t d = emb.dimension;
  auto ay = emb.row(s.center);
  double ll = 0.0;
  for (NodeId x : s.positives)
    ll += log_sigmoid(vec::dot(emb.row(x).data(), ay.data(), d));
  for (NodeId x : s.negatives)
    ll += log_sigmoid(-vec::dot(emb.row(x).data(), ay.data(), d));
  return ll;
}

double log_likelihood(const EmbeddingTable& emb,
                      const std::vector<SampleSet>& samples) {
  double ll = 0.0;
  for (const SampleSet& s : samples) ll += center_log_likelihood(emb, s);
  return ll;
}

std::vector<double> center_gradient(const EmbeddingTable& emb,
                                    const SampleSet& s) {
  const std::size_t d = emb.dimension;
  auto ay = emb.row(s.center);
  std::vector<double> grad(d, 0.0);
  auto add = [&](NodeId x, double u) {
    auto ax = emb.row(x);
    double c = u - sigmoid(vec::dot(ax.data(), ay.data(), d));
    vec::axpy(grad.data(), c, ax.data(), d);
  };
  for (NodeId x : s.positives) add(x, 1.0);
  for (NodeId x : s.negatives) add(x, 0.0);
  return grad;
}

bool update_center(NodeId y, const SampleSet& s, EmbeddingTable& emb,
                   double learning_rate, WorkCounter* work) {
  const std::size_t d = emb.dimension;
  // Snapshot the center so every pair sees its pre-call value.
  std::vector<double> y_old(emb.row(y).begin(), emb.row(y).end());
  std::vector<double> acc(d, 0.0);
  std::uint64_t units = 0;
  bool ok = true;

  auto visit = [&](NodeId x, double u) {
    double* ax = emb.row(x).data();  // pre-write value of x
    double z = vec::dot(ax, y_old.data(), d);
    double c = u - sigmoid(z);
    ok &= std::isfinite(c);
    ok &= vec::axpy(acc.data(), c, ax, d);
    ok &= vec::axpy(ax, learning_rate * c, y_old.data(), d);
    units += 3 * d;
  };
  for (NodeId x : s.positives) visit(x, 1.0);
  for (NodeId x : s.negatives) visit(x, 0.0);

  ok &= vec::scale_add(emb.row(y).data(), y_old.data(), learning_rate,
                       acc.data(), d);
  units += d;
  if (work) work->embed += units;
  return ok;
}

namespace {

// One full pass over the activation order, sequential. Samples are drawn
// node by node from `sample_rng`.
bool homo_sweep(const Graph& g, const ActivationOrder& order,
                std::uint32_t k, double lr, Rng& sample_rng,
                EmbeddingTable& emb, WorkCounter& work) {
  for (NodeId y : order.sequence) {
    SampleSet s = draw_samples(g, y, k, sample_rng);
    if (!update_center(y, s, emb, lr, &work)) return false;
  }
  return true;
}

// Frontier-parallel pass: nodes within one frontier are processed
// concurrently with unsynchronized writes (last writer wins per
// coordinate). Sampling uses per-node substreams so the drawn samples stay
// reproducible even though update interleaving does not.
bool parallel_sweep(const Graph& g, const ActivationOrder& order,
                    const TrainConfig& cfg, std::uint32_t iteration,
                    EmbeddingTable& emb, WorkCounter& work) {
  std::uint32_t nthreads = cfg.threads ? cfg.threads
                                       : std::thread::hardware_concurrency();
  if (nthreads == 0) nthreads = 2;
  bool all_ok = true;
  for (auto frontier : frontiers(order)) {
    std::uint32_t used =
        std::min<std::uint32_t>(nthreads,
                                static_cast<std::uint32_t>(frontier.size()));
    if (used <= 1) {
      for (NodeId y : frontier) {
        Rng rng = substream(cfg.seed, "psample",
                            (static_cast<std::uint64_t>(iteration) << 32) | y);
        SampleSet s = draw_samples(g, y, cfg.negative, rng);
        all_ok &= update_center(y, s, emb, cfg.learning_rate, &work);
      }
      continue;
    }
    std::vector<std::thread> pool;
    std::vector<WorkCounter> local(used);
    std::vector<std::uint8_t> oks(used, 1);
    for (std::uint32_t t = 0; t < used; ++t) {
      pool.emplace_back([&, t] {
        for (std::size_t i = t; i < frontier.size(); i += used) {
          NodeId y = frontier[i];
          Rng rng =
              substream(cfg.seed, "psample",
                        (static_cast<std::uint64_t>(iteration) << 32) | y);
          SampleSet s = draw_samples(g, y, cfg.negative, rng);
          if (!update_center(y, s, emb, cfg.learning_rate, &local[t]))
            oks[t] = 0;
        }
      });
    }
    for (auto& th : pool) th.join();
    for (std::uint32_t t = 0; t < used; ++t) {
      work.embed += local[t].embed;
      all_ok &= oks[t] != 0;
    }
  }
  return all_ok;
}

}  // namespace

TrainResult train(const Graph& g, const TrainConfig& cfg,
                  const IterationCallback& per_iteration) {
  cfg.validate();
  TrainResult result;
  Rng init_rng = substream(cfg.seed, "init");
  result.embeddings =
      EmbeddingTable::random_init(g.node_count, cfg.dimension, init_rng);

  Rng trace_rng = substream(cfg.seed, "trace");
  std::vector<SampleSet> trace_samples =
      draw_samples_by_id(g, cfg.negative, trace_rng);

  result.trace.push_back(
      {log_likelihood(result.embeddings, trace_samples), 0, 0});
  if (per_iteration) per_iteration(0, result.embeddings, nullptr);

  std::vector<double> snapshot;
  for (std::uint32_t it = 1; it <= cfg.iterations; ++it) {
    snapshot = result.embeddings.data;
    Rng search_rng = substream(cfg.seed, "search", it);
    ActivationOrder order = spread_search(g, search_rng);
    WorkCounter work;
    bool ok;
    if (cfg.parallel) {
      ok = parallel_sweep(g, order, cfg, it, result.embeddings, work);
    } else {
      Rng sample_rng = substream(cfg.seed, "sampling", it);
      ok = homo_sweep(g, order, cfg.negative, cfg.learning_rate, sample_rng,
                      result.embeddings, work);
    }
    if (!ok || !result.embeddings.all_finite()) {
      result.embeddings.data = snapshot;
      result.diverged = true;
      result.diagnostic =
          "non-finite embedding during iteration " + std::to_string(it) +
          "; returned the previous iteration's state (try a lower "
          "learning rate)";
      break;
    }
    result.trace.push_back({log_likelihood(result.embeddings, trace_samples),
                            work.embed, work.matrix});
    result.completed_iterations = it;
    if (per_iteration) per_iteration(it, result.embeddings, nullptr);
  }
  return result;
}

}  // namespace spreadgram
