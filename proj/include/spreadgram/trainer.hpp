#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "spreadgram/embedding.hpp"
#include "spreadgram/graph.hpp"
#include "spreadgram/sampling.hpp"

namespace spreadgram {

struct MappingMatrices;  // hetero.hpp

struct TrainConfig {
  std::uint32_t dimension = 128;
  std::uint32_t negative = 5;  // negative-sampling coefficient k
  double learning_rate = 0.025;
  std::uint32_t iterations = 30;
  std::uint64_t seed = 1;

  // Frontier-parallel sweeps trade determinism for speed; acceptance and
  // reproducibility contracts hold in sequential mode only.
  bool parallel = false;
  std::uint32_t threads = 0;  // 0 = hardware default (parallel mode)

  // Heterogeneous training only.
  double matrix_learning_rate = -1.0;  // < 0 selects learning_rate / 10
  bool train_matrices = true;

  double effective_matrix_lr() const {
    return matrix_learning_rate < 0 ? learning_rate / 10.0
                                    : matrix_learning_rate;
  }
  void validate() const;  // throws std::invalid_argument
};

struct WorkCounter {
  std::uint64_t embed = 0;   // dot/axpy/matvec units in center updates
  std::uint64_t matrix = 0;  // units spent updating mapping matrices
};

struct IterationStats {
  double log_likelihood = 0.0;
  std::uint64_t embed_work = 0;
  std::uint64_t matrix_work = 0;
};

struct TrainResult {
  EmbeddingTable embeddings;
  std::vector<IterationStats> trace;  // [0] = initial state, one per sweep
  std::uint32_t completed_iterations = 0;
  bool diverged = false;
  std::string diagnostic;
};

using IterationCallback = std::function<void(
    std::uint32_t iteration, const EmbeddingTable&, const MappingMatrices*)>;

// Numerically stable sigmoid of the inner product; never exponentiates a
// positive argument.
double sigmoid(double z);
double sigma(std::span<const double> ax, std::span<const double> ay);

// log(sigmoid(z)) without underflow to -inf for moderate z.
double log_sigmoid(double z);

// Negative-sampled log-likelihood over the given sample sets: positives
// contribute log sigma, negatives log(1 - sigma). Always <= 0.
double log_likelihood(const EmbeddingTable& emb,
                      const std::vector<SampleSet>& samples);
double center_log_likelihood(const EmbeddingTable& emb, const SampleSet& s);

// Sampled likelihood gradient with respect to the center's vector:
// sum over x in the sample set of a(x) * (u - sigma(x, y)).
std::vector<double> center_gradient(const EmbeddingTable& emb,
                                    const SampleSet& s);

// In-place proximity update for one center. The center receives the
// learning-rate-scaled sampled gradient; every sampled x simultaneously
// receives its mirrored pull from the center's previous value. All values on
// the right-hand side are the pre-call ones. Returns false if any written
// value came out non-finite (table is then partially updated).
bool update_center(NodeId y, const SampleSet& s, EmbeddingTable& emb,
                   double learning_rate, WorkCounter* work = nullptr);

// Full training loop: per iteration a fresh activation order is drawn, each
// node is visited in order with fresh samples, and the likelihood of a fixed
// trace sample set is recorded. Deterministic for a fixed seed in sequential
// mode. On divergence the last finite iteration's state is returned with
// `diverged` set.
TrainResult train(const Graph& g, const TrainConfig& cfg,
                  const IterationCallback& per_iteration = {});

}  // namespace spreadgram
