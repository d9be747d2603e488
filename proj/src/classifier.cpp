#include "spreadgram/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "spreadgram/trainer.hpp"

namespace spreadgram {

double LogisticModel::score(std::span<const double> x) const {
  double z = bias;
  for (std::size_t j = 0; j < weights.size(); ++j) z += weights[j] * x[j];
  return z;
}

namespace {

double mean_loss(const std::vector<double>& features, std::size_t dim,
                 const std::vector<std::uint8_t>& labels,
                 const LogisticModel& m, double l2) {
  const std::size_t n = labels.size();
  double loss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double z = m.score({features.data() + i * dim, dim});
    loss -= labels[i] ? log_sigmoid(z) : log_sigmoid(-z);
  }
  loss /= static_cast<double>(n);
  double reg = 0.0;
  for (double w : m.weights) reg += w * w;
  return loss + 0.5 * l2 * reg;
}

}  // namespace

LogisticModel fit_logistic(const std::vector<double>& features,
                           std::size_t dim,
                           const std::vector<std::uint8_t>& labels,
                           double l2, std::uint32_t steps) {
  const std::size_t n = labels.size();
  if (n == 0 || dim == 0)
    throw std::invalid_argument("fit_logistic: empty training set");
  if (features.size() != n * dim)
    throw std::invalid_argument("fit_logistic: feature size mismatch");
  bool has0 = false, has1 = false;
  for (auto l : labels) (l ? has1 : has0) = true;
  if (!has0 || !has1)
    throw std::runtime_error(
        "fit_logistic: degenerate single-class training split");

  LogisticModel m;
  m.weights.assign(dim, 0.0);
  m.initial_loss = mean_loss(features, dim, labels, m, l2);

  std::vector<double> gw(dim);
  for (std::uint32_t t = 0; t < steps; ++t) {
    std::fill(gw.begin(), gw.end(), 0.0);
    double gb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double* x = features.data() + i * dim;
      double z = m.bias;
      for (std::size_t j = 0; j < dim; ++j) z += m.weights[j] * x[j];
      double err = sigmoid(z) - (labels[i] ? 1.0 : 0.0);
      for (std::size_t j = 0; j < dim; ++j) gw[j] += err * x[j];
      gb += err;
    }
    const double inv_n = 1.0 / static_cast<double>(n);
    const double step = 1.0 / (1.0 + 0.01 * t);
    for (std::size_t j = 0; j < dim; ++j)
      m.weights[j] -= step * (gw[j] * inv_n + l2 * m.weights[j]);
    m.bias -= step * gb * inv_n;
  }
  m.final_loss = mean_loss(features, dim, labels, m, l2);
  return m;
}

double auc_score(const std::vector<double>& scores,
                 const std::vector<std::uint8_t>& labels) {
  const std::size_t n = scores.size();
  if (n != labels.size())
    throw std::invalid_argument("auc_score: size mismatch");
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  double pos = 0, neg = 0, rank_sum = 0;
  std::size_t i = 0;
  double rank = 1;
  while (i < n) {
    std::size_t j = i;
    while (j < n && scores[idx[j]] == scores[idx[i]]) ++j;
    double avg_rank = rank + 0.5 * static_cast<double>(j - i - 1);
    for (std::size_t k = i; k < j; ++k) {
      if (labels[idx[k]]) {
        rank_sum += avg_rank;
        ++pos;
      } else {
        ++neg;
      }
    }
    rank += static_cast<double>(j - i);
    i = j;
  }
  if (pos == 0 || neg == 0)
    throw std::runtime_error("auc_score: needs both classes");
  return (rank_sum - pos * (pos + 1) / 2.0) / (pos * neg);
}

}  // namespace spreadgram
