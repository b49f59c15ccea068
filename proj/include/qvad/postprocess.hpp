#pragma once

#include "qvad/agent_loop.hpp"

#include <Eigen/Core>

#include <vector>

namespace qvad {

/// Score calibration and smoothing parameters (dataset-specific).
struct PostConfig {
  double alpha = 0.05;
  double sigma1 = 280.0;
  double sigma2 = 0.3;
};

/// Per-frame score evolution, intermediates retained for inspection.
struct ScoreSeries {
  Eigen::ArrayXi g;         // max-pooled binary flags
  Eigen::ArrayXd p;         // max-pooled probabilities
  Eigen::ArrayXd calibrated;  // L: alpha floor/ceiling applied
  Eigen::ArrayXd smoothed;    // L~: first Gaussian pass
  Eigen::ArrayXd final;       // p^: second pass, clamped to [0,1]

  Eigen::Index length() const { return p.size(); }
};

/// Max-pools window verdicts to frames. Window t covers frame i when
/// t <= i < t + min(w, video_len - t). Failed windows contribute (0, 0).
/// Throws std::invalid_argument("coverage gap") when a frame is covered by
/// no window.
std::pair<Eigen::ArrayXi, Eigen::ArrayXd> aggregate_frames(
    const std::vector<WindowResult>& results, int video_len, int w);

/// Per-frame calibration: a lower bound alpha on anomalous frames, an
/// upper bound alpha on normal ones.
Eigen::ArrayXd calibrate(const Eigen::ArrayXi& g, const Eigen::ArrayXd& p, double alpha);

/// The full chain: aggregate, calibrate, smooth twice, clamp.
ScoreSeries final_scores(const std::vector<WindowResult>& results, int video_len, int w,
                         const PostConfig& cfg);

}  // namespace qvad
