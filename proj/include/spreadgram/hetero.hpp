#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "spreadgram/embedding.hpp"
#include "spreadgram/graph.hpp"
#include "spreadgram/sampling.hpp"
#include "spreadgram/trainer.hpp"

namespace spreadgram {

// One d x d mapping matrix per node type, projecting each type's semantic
// space into the shared benchmark space.
struct MappingMatrices {
  std::uint32_t dimension = 0;
  std::uint16_t type_count = 0;
  std::vector<double> data;  // type_count * d * d, row-major per matrix

  static MappingMatrices identity(std::uint16_t types, std::uint32_t dim);

  std::span<double> matrix(std::uint16_t t) {
    std::size_t n = static_cast<std::size_t>(dimension) * dimension;
    return {data.data() + t * n, n};
  }
  std::span<const double> matrix(std::uint16_t t) const {
    std::size_t n = static_cast<std::size_t>(dimension) * dimension;
    return {data.data() + t * n, n};
  }

  bool empty() const { return data.empty(); }
  bool all_finite() const;
};

// Benchmark-space image of v: W_{type(v)} * a(v).
void map_to_benchmark(const Graph& g, NodeId v, const EmbeddingTable& emb,
                      const MappingMatrices& maps, std::span<double> out);
std::vector<double> map_to_benchmark(const Graph& g, NodeId v,
                                     const EmbeddingTable& emb,
                                     const MappingMatrices& maps);

// Stable sigmoid of the benchmark-space inner product of x and y.
double sigma0(const Graph& g, NodeId x, NodeId y, const EmbeddingTable& emb,
              const MappingMatrices& maps);

double hetero_center_log_likelihood(const Graph& g, const EmbeddingTable& emb,
                                    const MappingMatrices& maps,
                                    const SampleSet& s);
double hetero_log_likelihood(const Graph& g, const EmbeddingTable& emb,
                             const MappingMatrices& maps,
                             const std::vector<SampleSet>& samples);

// Sampled gradient with respect to the center's vector:
// sum over x of W_{type(y)}^T W_{type(x)} a(x) * (u - sigma0(x, y)).
std::vector<double> hetero_center_gradient(const Graph& g,
                                           const EmbeddingTable& emb,
                                           const MappingMatrices& maps,
                                           const SampleSet& s);

// Sampled gradient of the mapping matrices over a full sweep's sample sets:
// for each sampled pair the matrix of y's type accumulates
// W_{type(x)} a(x) a(y)^T (u - sigma0), and symmetrically for x's type.
MappingMatrices matrix_gradient(const Graph& g, const EmbeddingTable& emb,
                                const MappingMatrices& maps,
                                const std::vector<SampleSet>& samples,
                                WorkCounter* work = nullptr);

// Benchmark-space counterpart of update_center; same read-before-write
// discipline. Matrices are read only.
bool hetero_update_center(const Graph& g, NodeId y, const SampleSet& s,
                          EmbeddingTable& emb, const MappingMatrices& maps,
                          double learning_rate, WorkCounter* work = nullptr);

// Batched end-of-iteration matrix step: W_t += matrix_lr * gradient, with
// sigma0 evaluated at the pre-update matrices.
bool update_mapping_matrices(const Graph& g, const EmbeddingTable& emb,
                             MappingMatrices& maps,
                             const std::vector<SampleSet>& samples,
                             double matrix_lr, WorkCounter* work = nullptr);

struct HeteroTrainResult : TrainResult {
  MappingMatrices matrices;
};

// Heterogeneous training loop: per iteration a fresh activation order, a
// hetero_update_center sweep (samples retained), then one batched matrix
// update. With a single node type, identity matrices and train_matrices
// off, the embedding trajectory is bitwise identical to train().
HeteroTrainResult train_hetero(const Graph& g, const TrainConfig& cfg,
                               const IterationCallback& per_iteration = {});

}  // namespace spreadgram
