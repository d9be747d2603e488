#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "spreadgram/embedding.hpp"
#include "spreadgram/graph.hpp"
#include "spreadgram/hetero.hpp"
#include "spreadgram/rng.hpp"
#include "spreadgram/trainer.hpp"

namespace spreadgram {

struct LabeledPair {
  NodeId a = 0;
  NodeId b = 0;
  bool connected = false;
};

// Link-prediction dataset: per node one random neighbor (positive) and one
// random non-neighbor (negative), split 70/30. The split is decided per
// unordered pair so a pair picked from both endpoints cannot leak across
// the split.
struct LabeledPairSet {
  std::vector<LabeledPair> pairs;
  std::vector<std::uint8_t> in_train;  // parallel to pairs
};

// On heterogeneous graphs both the neighbor and the non-neighbor are drawn
// from types distinct from the node's own; nodes with no eligible partner
// are skipped with a warning.
LabeledPairSet build_link_dataset(const Graph& g, Rng& rng,
                                  std::vector<std::string>* warnings =
                                      nullptr);

// Trains the in-repo linear logistic classifier on the elementwise absolute
// embedding difference of each pair (benchmark-space vectors when maps are
// given) and returns the mean test accuracy.
double link_predict(const LabeledPairSet& ds, const Graph& g,
                    const EmbeddingTable& emb,
                    const MappingMatrices* maps = nullptr);

struct ClassificationSet {
  std::vector<NodeId> nodes;
  std::vector<std::vector<std::uint32_t>> node_labels;  // category ids
  std::vector<std::string> categories;
  std::vector<std::uint8_t> in_train;
  bool multi_label = false;
};

// Keeps the max_categories most frequent categories; nodes left without any
// category are dropped with a warning. Nodes are split 70/30.
ClassificationSet build_classification_set(
    const Graph& g,
    const std::vector<std::pair<std::string, std::string>>& node_categories,
    std::uint32_t max_categories, Rng& rng,
    std::vector<std::string>* warnings = nullptr);

// One-vs-rest logistic classifiers on the raw embeddings. Returns macro-F1
// for single-label sets and mean per-category AUC for multi-label sets.
// Categories absent from the train split are dropped with a warning.
double node_classify(const ClassificationSet& cset, const EmbeddingTable& emb,
                     std::vector<std::string>* warnings = nullptr);

struct MetricTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct TraceOptions {
  bool likelihood = true;
  bool link = false;
  bool f1 = false;
  const ClassificationSet* classes = nullptr;  // required when f1 is set
};

// Trains with cfg and evaluates the requested metrics after every
// iteration (row 0 is the initial state). Datasets are built once from the
// run's seed, so successive rows are comparable.
MetricTable iteration_trace(const Graph& g, const TrainConfig& cfg,
                            const TraceOptions& opts);

// Tab-separated, header row first, full decimal precision.
void write_metric_table(std::ostream& out, const MetricTable& table);

// Pair-set round trip: `a b connected split` per line, node labels.
void write_pair_set(std::ostream& out, const Graph& g,
                    const LabeledPairSet& ds);
LabeledPairSet read_pair_set(std::istream& in, const Graph& g);

}  // namespace spreadgram
