#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "spreadgram/evaluation.hpp"
#include "spreadgram/generators.hpp"
#include "spreadgram/graph.hpp"
#include "spreadgram/hetero.hpp"
#include "spreadgram/manifest.hpp"
#include "spreadgram/sampling.hpp"
#include "spreadgram/search.hpp"
#include "spreadgram/text_io.hpp"
#include "spreadgram/trainer.hpp"

namespace py = pybind11;
using namespace spreadgram;

namespace {

TrainConfig make_config(std::uint32_t dimension, std::uint32_t iterations,
                        double learning_rate, std::uint32_t negative,
                        std::uint64_t seed, bool parallel,
                        double matrix_learning_rate, bool train_matrices) {
  TrainConfig cfg;
  cfg.dimension = dimension;
  cfg.iterations = iterations;
  cfg.learning_rate = learning_rate;
  cfg.negative = negative;
  cfg.seed = seed;
  cfg.parallel = parallel;
  cfg.matrix_learning_rate = matrix_learning_rate;
  cfg.train_matrices = train_matrices;
  return cfg;
}

std::vector<double> likelihoods(const std::vector<IterationStats>& trace) {
  std::vector<double> out;
  out.reserve(trace.size());
  for (const auto& s : trace) out.push_back(s.log_likelihood);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Spread-gram network representation learning core.";

  py::class_<Graph>(m, "Graph")
      .def_readonly("node_count", &Graph::node_count)
      .def_readonly("edge_count", &Graph::edge_count)
      .def_readonly("type_count", &Graph::type_count)
      .def_readonly("component_count", &Graph::component_count)
      .def("degree", &Graph::degree, py::arg("node"))
      .def("has_edge", &Graph::has_edge, py::arg("u"), py::arg("v"))
      .def(
          "neighbors",
          [](const Graph& g, NodeId v) {
            auto row = g.neighbors(v);
            return std::vector<NodeId>(row.begin(), row.end());
          },
          py::arg("node"))
      .def("label", [](const Graph& g, NodeId v) { return g.labels.at(v); },
           py::arg("node"))
      .def(
          "node_id",
          [](const Graph& g, const std::string& label) {
            auto it = g.label_ids.find(label);
            if (it == g.label_ids.end())
              throw std::out_of_range("unknown node label: " + label);
            return it->second;
          },
          py::arg("label"))
      .def_property_readonly("labels",
                             [](const Graph& g) { return g.labels; })
      .def("component_of",
           [](const Graph& g, NodeId v) { return g.component_id.at(v); })
      .def("type_of",
           [](const Graph& g, NodeId v) { return g.node_type.at(v); })
      .def("type_name",
           [](const Graph& g, std::uint16_t t) { return g.type_names.at(t); })
      .def("__repr__", [](const Graph& g) {
        return "<spreadgram.Graph nodes=" + std::to_string(g.node_count) +
               " edges=" + std::to_string(g.edge_count) +
               " types=" + std::to_string(g.type_count) + ">";
      });

  m.def(
      "load_graph",
      [](const std::string& edges, const std::string& types) {
        return load_edge_list_files(edges, types);
      },
      py::arg("edges"), py::arg("types") = "");
  m.def(
      "graph_from_edges",
      [](const std::vector<std::pair<std::string, std::string>>& edges,
         const std::vector<std::pair<std::string, std::string>>& node_types) {
        return graph_from_edges(edges, node_types);
      },
      py::arg("edges"),
      py::arg("node_types") =
          std::vector<std::pair<std::string, std::string>>{});
  m.def(
      "make_sbm",
      [](const std::vector<std::uint32_t>& sizes, double p_in, double p_out,
         std::uint64_t seed) {
        SbmGraph s = make_sbm(sizes, p_in, p_out, seed);
        return py::make_tuple(std::move(s.graph), std::move(s.block));
      },
      py::arg("block_sizes"), py::arg("p_in"), py::arg("p_out"),
      py::arg("seed"));
  m.def("make_erdos_renyi", &make_erdos_renyi, py::arg("n"), py::arg("p"),
        py::arg("seed"));

  py::class_<EmbeddingTable>(m, "EmbeddingTable")
      .def_readonly("dimension", &EmbeddingTable::dimension)
      .def_property_readonly("node_count", &EmbeddingTable::node_count)
      .def(
          "row",
          [](const EmbeddingTable& t, NodeId v) {
            auto r = t.row(v);
            return std::vector<double>(r.begin(), r.end());
          },
          py::arg("node"))
      .def("to_list", [](const EmbeddingTable& t) {
        std::vector<std::vector<double>> out;
        out.reserve(t.node_count());
        for (NodeId v = 0; v < t.node_count(); ++v) {
          auto r = t.row(v);
          out.emplace_back(r.begin(), r.end());
        }
        return out;
      });

  py::class_<MappingMatrices>(m, "MappingMatrices")
      .def_readonly("dimension", &MappingMatrices::dimension)
      .def_readonly("type_count", &MappingMatrices::type_count)
      .def("matrix", [](const MappingMatrices& m_, std::uint16_t t) {
        auto mat = m_.matrix(t);
        std::vector<std::vector<double>> out(m_.dimension);
        for (std::uint32_t i = 0; i < m_.dimension; ++i)
          out[i].assign(mat.begin() + i * m_.dimension,
                        mat.begin() + (i + 1) * m_.dimension);
        return out;
      });

  py::class_<TrainResult>(m, "TrainResult")
      .def_readonly("embeddings", &TrainResult::embeddings)
      .def_readonly("completed_iterations", &TrainResult::completed_iterations)
      .def_readonly("diverged", &TrainResult::diverged)
      .def_readonly("diagnostic", &TrainResult::diagnostic)
      .def_property_readonly("likelihood_trace", [](const TrainResult& r) {
        return likelihoods(r.trace);
      });

  py::class_<HeteroTrainResult, TrainResult>(m, "HeteroTrainResult")
      .def_readonly("matrices", &HeteroTrainResult::matrices);

  m.def(
      "spread_search",
      [](const Graph& g, std::uint64_t seed) {
        Rng rng(seed);
        ActivationOrder order = spread_search(g, rng);
        py::dict out;
        out["sequence"] = order.sequence;
        out["frontier_offsets"] = order.frontier_offsets;
        out["enqueue_count"] = order.enqueue_count;
        return out;
      },
      py::arg("graph"), py::arg("seed"));

  m.def(
      "draw_samples",
      [](const Graph& g, NodeId center, std::uint32_t k, std::uint64_t seed) {
        Rng rng(seed);
        SampleSet s = draw_samples(g, center, k, rng);
        py::dict out;
        out["center"] = s.center;
        out["positives"] =
            std::vector<NodeId>(s.positives.begin(), s.positives.end());
        out["negatives"] = s.negatives;
        out["truncated"] = s.truncated;
        return out;
      },
      py::arg("graph"), py::arg("center"), py::arg("k"), py::arg("seed"));

  m.def(
      "train",
      [](const Graph& g, std::uint32_t dimension, std::uint32_t iterations,
         double learning_rate, std::uint32_t negative, std::uint64_t seed,
         bool parallel) {
        return train(g, make_config(dimension, iterations, learning_rate,
                                    negative, seed, parallel, -1.0, true));
      },
      py::arg("graph"), py::arg("dimension") = 128,
      py::arg("iterations") = 30, py::arg("learning_rate") = 0.025,
      py::arg("negative") = 5, py::arg("seed") = 1,
      py::arg("parallel") = false);

  m.def(
      "train_hetero",
      [](const Graph& g, std::uint32_t dimension, std::uint32_t iterations,
         double learning_rate, std::uint32_t negative, std::uint64_t seed,
         bool parallel, double matrix_learning_rate, bool train_matrices) {
        return train_hetero(
            g, make_config(dimension, iterations, learning_rate, negative,
                           seed, parallel, matrix_learning_rate,
                           train_matrices));
      },
      py::arg("graph"), py::arg("dimension") = 128,
      py::arg("iterations") = 30, py::arg("learning_rate") = 0.025,
      py::arg("negative") = 5, py::arg("seed") = 1,
      py::arg("parallel") = false, py::arg("matrix_learning_rate") = -1.0,
      py::arg("train_matrices") = true);

  m.def(
      "link_prediction_accuracy",
      [](const Graph& g, const EmbeddingTable& emb, std::uint64_t seed,
         const MappingMatrices* maps) {
        Rng rng(seed);
        LabeledPairSet ds = build_link_dataset(g, rng);
        return link_predict(ds, g, emb, maps);
      },
      py::arg("graph"), py::arg("embeddings"), py::arg("seed"),
      py::arg("matrices") = nullptr);

  m.def(
      "classification_score",
      [](const Graph& g, const EmbeddingTable& emb,
         const std::vector<std::pair<std::string, std::string>>& labels,
         std::uint64_t seed, std::uint32_t max_categories) {
        Rng rng(seed);
        ClassificationSet cset =
            build_classification_set(g, labels, max_categories, rng);
        return node_classify(cset, emb);
      },
      py::arg("graph"), py::arg("embeddings"), py::arg("labels"),
      py::arg("seed"), py::arg("max_categories") = 15);

  m.def("save_embeddings", &write_embeddings_file, py::arg("path"),
        py::arg("graph"), py::arg("embeddings"));
  m.def("load_embeddings", &read_embeddings_file, py::arg("path"),
        py::arg("graph"));
  m.def("file_digest", &file_digest, py::arg("path"));

#ifdef SPREADGRAM_VERSION
  m.attr("__version__") = SPREADGRAM_VERSION;
#else
  m.attr("__version__") = kVersion;
#endif
}
