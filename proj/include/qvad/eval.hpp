#pragma once

#include <Eigen/Core>

#include <vector>

namespace qvad {

/// Per-frame scores with binary ground-truth labels.
struct LabeledSeries {
  Eigen::ArrayXd scores;
  Eigen::ArrayXi labels;  // 0 or 1
};

/// Rank-statistic ROC-AUC: the probability a random positive outranks a
/// random negative, ties counting one half. Requires both classes; throws
/// std::invalid_argument("degenerate labels") otherwise.
double roc_auc(const Eigen::ArrayXd& scores, const Eigen::ArrayXi& labels);

/// Average precision over the descending-score sweep with step-wise
/// interpolation; tied scores are processed as one block. Requires at
/// least one positive label.
double average_precision(const Eigen::ArrayXd& scores, const Eigen::ArrayXi& labels);

/// Metrics over the frame-level concatenation of all videos.
std::pair<double, double> micro_average(const std::vector<LabeledSeries>& per_video);

}  // namespace qvad
