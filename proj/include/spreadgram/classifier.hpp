#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace spreadgram {

// L2-regularized binary logistic regression trained with decreasing-step
// full-batch gradient descent. Deterministic: weights start at zero.
struct LogisticModel {
  std::vector<double> weights;
  double bias = 0.0;
  double initial_loss = 0.0;
  double final_loss = 0.0;

  double score(std::span<const double> x) const;  // w.x + b
  bool predict(std::span<const double> x) const { return score(x) > 0.0; }
};

// features: n x dim row-major, labels in {0,1}. The bias is not regularized.
LogisticModel fit_logistic(const std::vector<double>& features,
                           std::size_t dim,
                           const std::vector<std::uint8_t>& labels,
                           double l2 = 1e-3, std::uint32_t steps = 500);

// Area under the ROC curve from scores; ties get average rank.
double auc_score(const std::vector<double>& scores,
                 const std::vector<std::uint8_t>& labels);

}  // namespace spreadgram
