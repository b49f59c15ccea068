#include "qvad/postprocess.hpp"

#include "qvad/gaussian.hpp"

#include <algorithm>
#include <stdexcept>

namespace qvad {

std::pair<Eigen::ArrayXi, Eigen::ArrayXd> aggregate_frames(
    const std::vector<WindowResult>& results, int video_len, int w) {
  if (video_len < 1) throw std::invalid_argument("aggregate_frames: empty video");

  Eigen::ArrayXi covered = Eigen::ArrayXi::Zero(video_len);
  Eigen::ArrayXi g = Eigen::ArrayXi::Zero(video_len);
  Eigen::ArrayXd p = Eigen::ArrayXd::Zero(video_len);
  for (const WindowResult& result : results) {
    const int flag = result.failed ? 0 : result.final_flag;
    const double prob = result.failed ? 0.0 : result.final_probability;
    const int begin = std::max(0, result.window_start);
    const int end = std::min(video_len, result.window_start + w);
    for (int i = begin; i < end; ++i) {
      covered(i) += 1;
      g(i) = std::max(g(i), flag);
      p(i) = std::max(p(i), prob);
    }
  }
  if ((covered == 0).any()) throw std::invalid_argument("coverage gap");
  return {std::move(g), std::move(p)};
}

Eigen::ArrayXd calibrate(const Eigen::ArrayXi& g, const Eigen::ArrayXd& p, double alpha) {
  if (g.size() != p.size()) throw std::invalid_argument("calibrate: length mismatch");
  Eigen::ArrayXd calibrated(p.size());
  for (Eigen::Index i = 0; i < p.size(); ++i)
    calibrated(i) = g(i) ? std::max(p(i), alpha) : std::min(p(i), alpha);
  return calibrated;
}

ScoreSeries final_scores(const std::vector<WindowResult>& results, int video_len, int w,
                         const PostConfig& cfg) {
  ScoreSeries series;
  std::tie(series.g, series.p) = aggregate_frames(results, video_len, w);
  series.calibrated = calibrate(series.g, series.p, cfg.alpha);
  series.smoothed = gaussian_smooth(series.calibrated, cfg.sigma1);
  series.final = gaussian_smooth(series.smoothed, cfg.sigma2).cwiseMin(1.0).cwiseMax(0.0);
  return series;
}

}  // namespace qvad
