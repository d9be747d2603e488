// Command-line front end: train / eval / search / export.

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "spreadgram/evaluation.hpp"
#include "spreadgram/graph.hpp"
#include "spreadgram/hetero.hpp"
#include "spreadgram/manifest.hpp"
#include "spreadgram/search.hpp"
#include "spreadgram/text_io.hpp"
#include "spreadgram/trainer.hpp"

using json = nlohmann::ordered_json;
using namespace spreadgram;

namespace {

struct CommonArgs {
  std::string edges;
  std::string types;
  std::uint64_t seed = 1;
};

struct TrainArgs : CommonArgs {
  std::uint32_t dim = 128;
  std::uint32_t iters = 30;
  double lr = 0.025;
  std::uint32_t neg = 5;
  double lr_w = -1.0;
  bool freeze_matrices = false;
  bool parallel = false;
  std::uint32_t threads = 0;
  std::string out;
};

TrainConfig to_config(const TrainArgs& a) {
  TrainConfig cfg;
  cfg.dimension = a.dim;
  cfg.iterations = a.iters;
  cfg.learning_rate = a.lr;
  cfg.negative = a.neg;
  cfg.seed = a.seed;
  cfg.parallel = a.parallel;
  cfg.threads = a.threads;
  cfg.matrix_learning_rate = a.lr_w;
  cfg.train_matrices = !a.freeze_matrices;
  return cfg;
}

void print_warnings(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

Graph load_graph_cli(const CommonArgs& a) {
  std::vector<std::string> warnings;
  Graph g = load_edge_list_files(a.edges, a.types, &warnings);
  print_warnings(warnings);
  return g;
}

std::vector<std::pair<std::string, std::string>> read_label_file(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open label file: " + path);
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    std::string label, category;
    if (!(ss >> label >> category))
      throw std::runtime_error("label file line " + std::to_string(lineno) +
                               ": expected 'node category'");
    out.emplace_back(label, category);
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}


int run_train(const TrainArgs& a) {
  Graph g = load_graph_cli(a);
  TrainConfig cfg = to_config(a);

  const std::string emb_path = a.out + ".emb";
  const std::string trace_path = a.out + ".trace.tsv";
  const std::string mats_path = a.out + ".mats";
  const std::string manifest_path = a.out + ".manifest.json";

  MetricTable trace_table;
  trace_table.columns = {"iteration", "log_likelihood", "embed_work",
                         "matrix_work"};
  auto fill_trace = [&](const std::vector<IterationStats>& trace) {
    for (std::size_t i = 0; i < trace.size(); ++i)
      trace_table.rows.push_back({static_cast<double>(i),
                                  trace[i].log_likelihood,
                                  static_cast<double>(trace[i].embed_work),
                                  static_cast<double>(trace[i].matrix_work)});
  };

  bool hetero = g.heterogeneous();
  if (hetero) {
    HeteroTrainResult r = train_hetero(g, cfg);
    if (r.diverged) {
      std::cerr << "error: " << r.diagnostic << "\n";
      return 1;
    }
    write_embeddings_file(emb_path, g, r.embeddings);
    write_matrices_file(mats_path, g, r.matrices);
    fill_trace(r.trace);
  } else {
    TrainResult r = train(g, cfg);
    if (r.diverged) {
      std::cerr << "error: " << r.diagnostic << "\n";
      return 1;
    }
    write_embeddings_file(emb_path, g, r.embeddings);
    fill_trace(r.trace);
  }
  {
    std::ofstream out(trace_path);
    if (!out) throw std::runtime_error("cannot write " + trace_path);
    write_metric_table(out, trace_table);
  }

  json manifest;
  manifest["tool"] = "spreadgram";
  manifest["version"] = kVersion;
  manifest["command"] = "train";
  manifest["mode"] = cfg.parallel ? "parallel" : "sequential";
  json jcfg;
  jcfg["dim"] = cfg.dimension;
  jcfg["iters"] = cfg.iterations;
  jcfg["lr"] = cfg.learning_rate;
  jcfg["neg"] = cfg.negative;
  jcfg["seed"] = cfg.seed;
  if (hetero) {
    jcfg["lr_w"] = cfg.effective_matrix_lr();
    jcfg["train_matrices"] = cfg.train_matrices;
  }
  manifest["config"] = jcfg;
  json inputs;
  inputs["edges"] = {{"path", a.edges}, {"digest", file_digest(a.edges)}};
  if (!a.types.empty())
    inputs["types"] = {{"path", a.types}, {"digest", file_digest(a.types)}};
  manifest["inputs"] = inputs;
  json outputs;
  outputs["embeddings"] = emb_path;
  outputs["trace"] = trace_path;
  if (hetero) outputs["matrices"] = mats_path;
  manifest["outputs"] = outputs;
  write_text_file(manifest_path, manifest.dump(2) + "\n");

  std::cout << "wrote " << emb_path << "\n";
  return 0;
}

struct EvalArgs : CommonArgs {
  std::string task;
  std::string emb;
  std::string mats;
  std::string labels;
  std::string pairs;
  std::string out;
  std::uint32_t top = 15;
  // trace task re-trains with these:
  std::uint32_t dim = 128;
  std::uint32_t iters = 30;
  double lr = 0.025;
  std::uint32_t neg = 5;
  std::string hooks = "likelihood,link";
};

int run_eval(const EvalArgs& a) {
  Graph g = load_graph_cli(a);
  std::ostringstream report;

  if (a.task == "link" || a.task == "classify") {
    if (a.emb.empty()) throw std::runtime_error("--emb is required");
    EmbeddingTable emb = read_embeddings_file(a.emb, g);
    if (a.task == "link") {
      MappingMatrices maps;
      if (g.heterogeneous()) {
        if (a.mats.empty())
          throw std::runtime_error(
              "--mats is required for link prediction on heterogeneous "
              "graphs");
        maps = read_matrices_file(a.mats, g);
      }
      LabeledPairSet ds;
      if (!a.pairs.empty()) {
        std::ifstream in(a.pairs);
        if (!in) throw std::runtime_error("cannot open " + a.pairs);
        ds = read_pair_set(in, g);
      } else {
        Rng rng = substream(a.seed, "eval-link");
        std::vector<std::string> warnings;
        ds = build_link_dataset(g, rng, &warnings);
        print_warnings(warnings);
      }
      double acc =
          link_predict(ds, g, emb, maps.empty() ? nullptr : &maps);
      report << "task link\naccuracy " << format_double(acc) << "\n";
    } else {
      if (a.labels.empty()) throw std::runtime_error("--labels is required");
      auto pairs = read_label_file(a.labels);
      Rng rng = substream(a.seed, "eval-class");
      std::vector<std::string> warnings;
      ClassificationSet cset =
          build_classification_set(g, pairs, a.top, rng, &warnings);
      double score = node_classify(cset, emb, &warnings);
      print_warnings(warnings);
      report << "task classify\n"
             << (cset.multi_label ? "mean_auc " : "macro_f1 ")
             << format_double(score) << "\n";
    }
  } else if (a.task == "trace") {
    TraceOptions opts;
    opts.likelihood = a.hooks.find("likelihood") != std::string::npos;
    opts.link = a.hooks.find("link") != std::string::npos;
    opts.f1 = a.hooks.find("f1") != std::string::npos;
    ClassificationSet cset;
    if (opts.f1) {
      if (a.labels.empty())
        throw std::runtime_error("--labels is required for the f1 hook");
      Rng rng = substream(a.seed, "eval-class");
      std::vector<std::string> warnings;
      cset = build_classification_set(g, read_label_file(a.labels), a.top,
                                      rng, &warnings);
      print_warnings(warnings);
      opts.classes = &cset;
    }
    TrainArgs ta;
    static_cast<CommonArgs&>(ta) = a;
    ta.dim = a.dim;
    ta.iters = a.iters;
    ta.lr = a.lr;
    ta.neg = a.neg;
    MetricTable table = iteration_trace(g, to_config(ta), opts);
    std::ostringstream body;
    write_metric_table(body, table);
    report << body.str();
  } else {
    throw std::runtime_error("unknown task '" + a.task +
                             "' (expected link, classify or trace)");
  }

  std::cout << report.str();
  if (!a.out.empty()) write_text_file(a.out, report.str());
  return 0;
}

struct SearchArgs : CommonArgs {
  std::string out;
};

int run_search(const SearchArgs& a) {
  Graph g = load_graph_cli(a);
  Rng rng = substream(a.seed, "search", 1);
  ActivationOrder order = spread_search(g, rng);
  std::ostringstream body;
  for (std::size_t f = 0; f < order.frontier_count(); ++f) {
    if (f) body << "\n";
    for (NodeId v : order.frontier(f)) body << g.labels[v] << "\n";
  }
  std::cout << body.str();
  if (!a.out.empty()) write_text_file(a.out, body.str());
  return 0;
}

struct ExportArgs : CommonArgs {
  std::string what;
  std::string emb;
  std::string out;
};

int run_export(const ExportArgs& a) {
  Graph g = load_graph_cli(a);
  if (a.what == "pairs") {
    Rng rng = substream(a.seed, "eval-link");
    std::vector<std::string> warnings;
    LabeledPairSet ds = build_link_dataset(g, rng, &warnings);
    print_warnings(warnings);
    std::ostringstream body;
    write_pair_set(body, g, ds);
    write_text_file(a.out, body.str());
  } else if (a.what == "coords") {
    if (a.emb.empty()) throw std::runtime_error("--emb is required");
    EmbeddingTable emb = read_embeddings_file(a.emb, g);
    if (emb.dimension < 2)
      throw std::runtime_error("coords export needs dimension >= 2");
    std::ostringstream body;
    for (NodeId v = 0; v < g.node_count; ++v) {
      auto row = emb.row(v);
      body << g.labels[v] << ' ' << format_double(row[0]) << ' '
           << format_double(row[1]) << "\n";
    }
    write_text_file(a.out, body.str());
  } else {
    throw std::runtime_error("unknown export kind '" + a.what +
                             "' (expected pairs or coords)");
  }
  std::cout << "wrote " << a.out << "\n";
  return 0;
}

void add_common(CLI::App* cmd, CommonArgs& a, std::string* config_path,
                bool types_allowed = true) {
  cmd->add_option("--edges", a.edges, "Edge list file")->required();
  if (types_allowed) cmd->add_option("--types", a.types, "Node-type file");
  cmd->add_option("--seed", a.seed, "Root random seed");
  cmd->add_option("--config", *config_path,
                  "key=value config file (explicit flags win)");
}

// Plain key=value config support: file values become trailing flags for the
// chosen subcommand unless the same flag was given explicitly, so the
// precedence is flags > file > defaults.
std::vector<std::string> merge_config_args(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return args;
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  auto given = [&](const std::string& flag) {
    for (const auto& a : args)
      if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
    return false;
  };
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos || eq == 0)
      throw std::runtime_error("config file line " + std::to_string(lineno) +
                               ": expected key=value");
    std::string key = line.substr(0, eq), value = line.substr(eq + 1);
    if (!given("--" + key))  // --key=value works for flags and options alike
      args.push_back(value.empty() ? "--" + key : "--" + key + "=" + value);
  }
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spread-gram network representation learning"};
  app.require_subcommand(1);
  std::string config_path;

  TrainArgs train_args;
  auto* train_cmd =
      app.add_subcommand("train", "Learn node embeddings from an edge list");
  add_common(train_cmd, train_args, &config_path);
  train_cmd->add_option("--dim", train_args.dim, "Embedding dimension");
  train_cmd->add_option("--iters", train_args.iters, "Training iterations");
  train_cmd->add_option("--lr", train_args.lr, "Learning rate");
  train_cmd->add_option("--neg", train_args.neg,
                        "Negative samples per positive");
  train_cmd->add_option("--lr-w", train_args.lr_w,
                        "Mapping-matrix learning rate (default lr/10)");
  train_cmd->add_flag("--freeze-matrices", train_args.freeze_matrices,
                      "Keep mapping matrices at identity");
  train_cmd->add_flag("--parallel", train_args.parallel,
                      "Frontier-parallel sweeps (non-deterministic)");
  train_cmd->add_option("--threads", train_args.threads,
                        "Thread count for --parallel");
  train_cmd->add_option("--out", train_args.out, "Output prefix")->required();

  EvalArgs eval_args;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate trained embeddings");
  add_common(eval_cmd, eval_args, &config_path);
  eval_cmd->add_option("--task", eval_args.task, "link | classify | trace")
      ->required();
  eval_cmd->add_option("--emb", eval_args.emb, "Embedding file");
  eval_cmd->add_option("--mats", eval_args.mats, "Mapping-matrix file");
  eval_cmd->add_option("--labels", eval_args.labels,
                       "Node category file (label category per line)");
  eval_cmd->add_option("--pairs", eval_args.pairs,
                       "Use an exported pair dataset instead of drawing one");
  eval_cmd->add_option("--top", eval_args.top,
                       "Keep the N most frequent categories");
  eval_cmd->add_option("--out", eval_args.out, "Report file");
  eval_cmd->add_option("--dim", eval_args.dim, "trace: embedding dimension");
  eval_cmd->add_option("--iters", eval_args.iters, "trace: iterations");
  eval_cmd->add_option("--lr", eval_args.lr, "trace: learning rate");
  eval_cmd->add_option("--neg", eval_args.neg, "trace: negative coefficient");
  eval_cmd->add_option("--hooks", eval_args.hooks,
                       "trace: comma list of likelihood,link,f1");

  SearchArgs search_args;
  auto* search_cmd = app.add_subcommand(
      "search", "Dump one spreading-activation order (frontiers "
                "separated by blank lines)");
  add_common(search_cmd, search_args, &config_path);
  search_cmd->add_option("--out", search_args.out, "Write the dump here too");

  ExportArgs export_args;
  auto* export_cmd =
      app.add_subcommand("export", "Export datasets derived from a run");
  add_common(export_cmd, export_args, &config_path);
  export_cmd->add_option("--what", export_args.what, "pairs | coords")
      ->required();
  export_cmd->add_option("--emb", export_args.emb, "Embedding file (coords)");
  export_cmd->add_option("--out", export_args.out, "Output file")->required();

  try {
    std::vector<std::string> args = merge_config_args(argc, argv);
    std::reverse(args.begin(), args.end());  // CLI11 consumes from the back
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*train_cmd) return run_train(train_args);
    if (*eval_cmd) return run_eval(eval_args);
    if (*search_cmd) return run_search(search_args);
    if (*export_cmd) return run_export(export_args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
