#include "spreadgram/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "spreadgram/classifier.hpp"

namespace spreadgram {

namespace {

bool cross_type_ok(const Graph& g, NodeId a, NodeId b) {
  return !g.heterogeneous() || g.node_type[a] != g.node_type[b];
}

// Uniform draw from the eligible non-neighbors of y (cross-type on
// heterogeneous graphs). Falls back to enumeration when rejection keeps
// missing, so small pools stay uniform too.
bool draw_negative(const Graph& g, NodeId y, Rng& rng, NodeId* out) {
  const std::uint32_t n = g.node_count;
  auto eligible = [&](NodeId v) {
    return v != y && !g.has_edge(y, v) && cross_type_ok(g, y, v);
  };
  for (int attempt = 0; attempt < 64; ++attempt) {
    NodeId v = rng.below32(n);
    if (eligible(v)) {
      *out = v;
      return true;
    }
  }
  std::vector<NodeId> pool;
  for (NodeId v = 0; v < n; ++v)
    if (eligible(v)) pool.push_back(v);
  if (pool.empty()) return false;
  *out = pool[rng.below(pool.size())];
  return true;
}

std::uint64_t pair_key(NodeId a, NodeId b) {
  NodeId lo = std::min(a, b), hi = std::max(a, b);
  return (static_cast<std::uint64_t>(lo) << 32) | hi;
}

}  // namespace

LabeledPairSet build_link_dataset(const Graph& g, Rng& rng,
                                  std::vector<std::string>* warnings) {
  LabeledPairSet ds;
  for (NodeId y = 0; y < g.node_count; ++y) {
    std::vector<NodeId> nbrs;
    for (NodeId u : g.neighbors(y))
      if (cross_type_ok(g, y, u)) nbrs.push_back(u);
    if (nbrs.empty()) {
      if (warnings)
        warnings->push_back("node '" + g.labels[y] +
                            "' has no eligible neighbor; skipped");
    } else {
      ds.pairs.push_back({y, nbrs[rng.below(nbrs.size())], true});
    }
    NodeId neg;
    if (draw_negative(g, y, rng, &neg)) {
      ds.pairs.push_back({y, neg, false});
    } else if (warnings) {
      warnings->push_back("node '" + g.labels[y] +
                          "' has no eligible non-neighbor; skipped");
    }
  }

  // 70/30 split decided per unordered pair: duplicate picks share a side.
  std::vector<std::uint64_t> keys;
  std::map<std::uint64_t, std::uint8_t> side;
  for (const auto& p : ds.pairs) {
    auto k = pair_key(p.a, p.b);
    if (side.emplace(k, 1).second) keys.push_back(k);
  }
  for (std::size_t i = keys.size(); i > 1; --i)
    std::swap(keys[i - 1], keys[rng.below(i)]);
  std::size_t train_count =
      static_cast<std::size_t>(std::ceil(0.7 * static_cast<double>(keys.size())));
  for (std::size_t i = train_count; i < keys.size(); ++i) side[keys[i]] = 0;
  ds.in_train.reserve(ds.pairs.size());
  for (const auto& p : ds.pairs)
    ds.in_train.push_back(side[pair_key(p.a, p.b)]);
  return ds;
}

double link_predict(const LabeledPairSet& ds, const Graph& g,
                    const EmbeddingTable& emb, const MappingMatrices* maps) {
  const std::size_t d = emb.dimension;
  // Elementwise absolute difference: pair orientation is arbitrary, so the
  // signed difference is symmetric under swapping and carries no linearly
  // separable signal.
  auto feature = [&](const LabeledPair& p, double* out) {
    if (maps && !maps->empty()) {
      std::vector<double> fa = map_to_benchmark(g, p.a, emb, *maps);
      std::vector<double> fb = map_to_benchmark(g, p.b, emb, *maps);
      for (std::size_t j = 0; j < d; ++j) out[j] = std::abs(fa[j] - fb[j]);
    } else {
      auto fa = emb.row(p.a);
      auto fb = emb.row(p.b);
      for (std::size_t j = 0; j < d; ++j) out[j] = std::abs(fa[j] - fb[j]);
    }
  };

  std::vector<double> train_x, test_x;
  std::vector<std::uint8_t> train_y, test_y;
  std::vector<double> buf(d);
  for (std::size_t i = 0; i < ds.pairs.size(); ++i) {
    feature(ds.pairs[i], buf.data());
    if (ds.in_train[i]) {
      train_x.insert(train_x.end(), buf.begin(), buf.end());
      train_y.push_back(ds.pairs[i].connected ? 1 : 0);
    } else {
      test_x.insert(test_x.end(), buf.begin(), buf.end());
      test_y.push_back(ds.pairs[i].connected ? 1 : 0);
    }
  }
  if (test_y.empty()) throw std::runtime_error("link_predict: empty test split");
  LogisticModel m = fit_logistic(train_x, d, train_y);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < test_y.size(); ++i) {
    bool pred = m.predict({test_x.data() + i * d, d});
    hits += pred == (test_y[i] != 0);
  }
  return static_cast<double>(hits) / static_cast<double>(test_y.size());
}

ClassificationSet build_classification_set(
    const Graph& g,
    const std::vector<std::pair<std::string, std::string>>& node_categories,
    std::uint32_t max_categories, Rng& rng,
    std::vector<std::string>* warnings) {
  // Count category frequency over nodes that exist in the graph.
  std::map<std::string, std::uint32_t> freq;
  std::vector<std::pair<NodeId, std::string>> entries;
  for (const auto& [label, category] : node_categories) {
    auto it = g.label_ids.find(label);
    if (it == g.label_ids.end()) {
      if (warnings)
        warnings->push_back("labelled node '" + label +
                            "' not in the graph; dropped");
      continue;
    }
    entries.emplace_back(it->second, category);
    ++freq[category];
  }

  std::vector<std::pair<std::string, std::uint32_t>> ranked(freq.begin(),
                                                            freq.end());
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) {
                     return a.second > b.second;
                   });
  if (ranked.size() > max_categories) ranked.resize(max_categories);

  ClassificationSet cset;
  std::map<std::string, std::uint32_t> cat_ids;
  for (const auto& [name, count] : ranked) {
    cat_ids.emplace(name, static_cast<std::uint32_t>(cset.categories.size()));
    cset.categories.push_back(name);
  }

  std::map<NodeId, std::vector<std::uint32_t>> per_node;
  std::vector<NodeId> dropped;
  for (const auto& [node, category] : entries) {
    auto it = cat_ids.find(category);
    if (it == cat_ids.end()) continue;  // below the frequency cut
    per_node[node].push_back(it->second);
  }
  for (auto& [node, cats] : per_node) {
    std::sort(cats.begin(), cats.end());
    cats.erase(std::unique(cats.begin(), cats.end()), cats.end());
    cset.nodes.push_back(node);
    if (cats.size() > 1) cset.multi_label = true;
    cset.node_labels.push_back(cats);
  }

  // 70/30 node split.
  std::vector<std::size_t> idx(cset.nodes.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  for (std::size_t i = idx.size(); i > 1; --i)
    std::swap(idx[i - 1], idx[rng.below(i)]);
  cset.in_train.assign(cset.nodes.size(), 0);
  std::size_t train_count = static_cast<std::size_t>(
      std::ceil(0.7 * static_cast<double>(idx.size())));
  for (std::size_t i = 0; i < train_count; ++i) cset.in_train[idx[i]] = 1;
  return cset;
}

namespace {

double macro_f1(const std::vector<std::uint32_t>& truth,
                const std::vector<std::uint32_t>& predicted,
                const std::vector<std::uint32_t>& category_ids) {
  double sum = 0.0;
  for (std::uint32_t c : category_ids) {
    std::size_t tp = 0, fp = 0, fn = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
      bool t = truth[i] == c, p = predicted[i] == c;
      tp += t && p;
      fp += !t && p;
      fn += t && !p;
    }
    double denom = static_cast<double>(2 * tp + fp + fn);
    sum += denom > 0 ? 2.0 * static_cast<double>(tp) / denom : 0.0;
  }
  return sum / static_cast<double>(category_ids.size());
}

}  // namespace

double node_classify(const ClassificationSet& cset, const EmbeddingTable& emb,
                     std::vector<std::string>* warnings) {
  const std::size_t d = emb.dimension;
  const std::size_t n = cset.nodes.size();
  std::vector<std::size_t> train_idx, test_idx;
  for (std::size_t i = 0; i < n; ++i)
    (cset.in_train[i] ? train_idx : test_idx).push_back(i);
  if (train_idx.empty() || test_idx.empty())
    throw std::runtime_error("node_classify: empty split");

  std::vector<double> train_x;
  train_x.reserve(train_idx.size() * d);
  for (std::size_t i : train_idx) {
    auto row = emb.row(cset.nodes[i]);
    train_x.insert(train_x.end(), row.begin(), row.end());
  }

  auto has_category = [&](std::size_t i, std::uint32_t c) {
    const auto& cats = cset.node_labels[i];
    return std::binary_search(cats.begin(), cats.end(), c);
  };

  // Keep the categories that actually occur in the train split.
  std::vector<std::uint32_t> kept;
  for (std::uint32_t c = 0; c < cset.categories.size(); ++c) {
    bool any = false, all = true;
    for (std::size_t i : train_idx) {
      bool h = has_category(i, c);
      any |= h;
      all &= h;
    }
    if (!any || all) {
      if (warnings)
        warnings->push_back("category '" + cset.categories[c] +
                            (any ? "' covers the whole train split; dropped"
                                 : "' absent from the train split; dropped"));
      continue;
    }
    kept.push_back(c);
  }
  if (kept.size() < (cset.multi_label ? 1u : 2u))
    throw std::runtime_error("node_classify: fewer than the required "
                             "categories remain in the train split");

  // One-vs-rest scores per kept category.
  std::vector<std::vector<double>> test_scores(kept.size());
  for (std::size_t ci = 0; ci < kept.size(); ++ci) {
    std::vector<std::uint8_t> ty;
    ty.reserve(train_idx.size());
    for (std::size_t i : train_idx)
      ty.push_back(has_category(i, kept[ci]) ? 1 : 0);
    LogisticModel m = fit_logistic(train_x, d, ty);
    auto& scores = test_scores[ci];
    scores.reserve(test_idx.size());
    for (std::size_t i : test_idx)
      scores.push_back(m.score(emb.row(cset.nodes[i])));
  }

  if (cset.multi_label) {
    double sum = 0.0;
    std::size_t evaluated = 0;
    for (std::size_t ci = 0; ci < kept.size(); ++ci) {
      std::vector<std::uint8_t> truth;
      truth.reserve(test_idx.size());
      bool has0 = false, has1 = false;
      for (std::size_t i : test_idx) {
        bool h = has_category(i, kept[ci]);
        truth.push_back(h ? 1 : 0);
        (h ? has1 : has0) = true;
      }
      if (!has0 || !has1) {
        if (warnings)
          warnings->push_back("category '" + cset.categories[kept[ci]] +
                              "' one-sided in the test split; skipped");
        continue;
      }
      sum += auc_score(test_scores[ci], truth);
      ++evaluated;
    }
    if (evaluated == 0)
      throw std::runtime_error("node_classify: no category evaluable");
    return sum / static_cast<double>(evaluated);
  }

  std::vector<std::uint32_t> truth, predicted;
  for (std::size_t t = 0; t < test_idx.size(); ++t) {
    truth.push_back(cset.node_labels[test_idx[t]].front());
    std::size_t best = 0;
    for (std::size_t ci = 1; ci < kept.size(); ++ci)
      if (test_scores[ci][t] > test_scores[best][t]) best = ci;
    predicted.push_back(kept[best]);
  }
  return macro_f1(truth, predicted, kept);
}

MetricTable iteration_trace(const Graph& g, const TrainConfig& cfg,
                            const TraceOptions& opts) {
  if (opts.f1 && !opts.classes)
    throw std::invalid_argument("iteration_trace: f1 needs a class set");

  MetricTable table;
  table.columns.push_back("iteration");
  if (opts.likelihood) table.columns.push_back("log_likelihood");
  if (opts.link) table.columns.push_back("link_accuracy");
  if (opts.f1)
    table.columns.push_back(opts.classes->multi_label ? "mean_auc" : "f1");

  LabeledPairSet link_ds;
  if (opts.link) {
    Rng link_rng = substream(cfg.seed, "eval-link");
    link_ds = build_link_dataset(g, link_rng);
  }

  auto evaluate = [&](std::uint32_t iteration, const EmbeddingTable& emb,
                      const MappingMatrices* maps) {
    std::vector<double> row;
    row.push_back(iteration);
    if (opts.likelihood) row.push_back(0.0);  // filled from the train trace
    if (opts.link) row.push_back(link_predict(link_ds, g, emb, maps));
    if (opts.f1) row.push_back(node_classify(*opts.classes, emb));
    table.rows.push_back(std::move(row));
  };

  std::vector<IterationStats> trace;
  if (g.heterogeneous()) {
    HeteroTrainResult r = train_hetero(g, cfg, evaluate);
    trace = std::move(r.trace);
  } else {
    TrainResult r = train(g, cfg, evaluate);
    trace = std::move(r.trace);
  }
  if (opts.likelihood) {
    for (std::size_t i = 0; i < table.rows.size() && i < trace.size(); ++i)
      table.rows[i][1] = trace[i].log_likelihood;
  }
  return table;
}

void write_metric_table(std::ostream& out, const MetricTable& table) {
  for (std::size_t c = 0; c < table.columns.size(); ++c)
    out << (c ? "\t" : "") << table.columns[c];
  out << '\n';
  char buf[64];
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      std::snprintf(buf, sizeof buf, "%.17g", row[c]);
      out << (c ? "\t" : "") << buf;
    }
    out << '\n';
  }
}

void write_pair_set(std::ostream& out, const Graph& g,
                    const LabeledPairSet& ds) {
  for (std::size_t i = 0; i < ds.pairs.size(); ++i) {
    const auto& p = ds.pairs[i];
    out << g.labels[p.a] << ' ' << g.labels[p.b] << ' '
        << (p.connected ? 1 : 0) << ' '
        << (ds.in_train[i] ? "train" : "test") << '\n';
  }
}

LabeledPairSet read_pair_set(std::istream& in, const Graph& g) {
  LabeledPairSet ds;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    std::string a, b, split;
    int connected;
    if (!(ss >> a >> b >> connected >> split))
      throw std::runtime_error("pair set line " + std::to_string(lineno) +
                               ": expected 'a b connected split'");
    auto ia = g.label_ids.find(a), ib = g.label_ids.find(b);
    if (ia == g.label_ids.end() || ib == g.label_ids.end())
      throw std::runtime_error("pair set line " + std::to_string(lineno) +
                               ": unknown node label");
    ds.pairs.push_back({ia->second, ib->second, connected != 0});
    ds.in_train.push_back(split == "train" ? 1 : 0);
  }
  return ds;
}

}  // namespace spreadgram
