#include "qvad/frame_pipeline.hpp"

#include "qvad/gaussian.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace qvad {

std::vector<Window> slide_windows(const FrameSequence& video, int w, int s) {
  if (video.empty()) throw std::invalid_argument("empty input");
  if (w < 1) throw std::invalid_argument("slide_windows: window size must be >= 1");
  if (s < 1 || s > w) throw std::invalid_argument("slide_windows: stride must be in [1, w]");

  const int total = static_cast<int>(video.size());
  std::vector<Window> windows;
  for (int start = 0; start < total; start += s) {
    Window win;
    win.start = start;
    const int end = std::min(start + w, total);
    win.frames.assign(video.begin() + start, video.begin() + end);
    windows.push_back(std::move(win));
    if (start + w >= total) break;  // this window reached the end of the video
  }
  return windows;
}

std::vector<Frame> uniform_sample(const Window& window, int n_uniform) {
  if (window.frames.empty()) throw std::invalid_argument("uniform_sample: empty window");
  if (n_uniform < 1) throw std::invalid_argument("uniform_sample: n_uniform must be >= 1");

  const int len = static_cast<int>(window.frames.size());
  if (len < n_uniform) return window.frames;
  const int step = std::max(1, len / n_uniform);
  std::vector<Frame> sampled;
  sampled.reserve(n_uniform);
  for (int i = 0; i < n_uniform; ++i) sampled.push_back(window.frames[i * step]);
  return sampled;
}

std::vector<double> motion_saliency(const std::vector<Frame>& candidates,
                                    const MotionConfig& cfg) {
  if (candidates.size() < 2)
    throw std::invalid_argument("insufficient frames for motion");

  const auto n = candidates.size();
  std::vector<double> scores(n, 0.0);
  Eigen::ArrayXXd prev_blur =
      gaussian_blur_2d<double>(candidates[0].pixels.cast<double>().array(),
                               cfg.blur_kernel_size);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    Eigen::ArrayXXd next_blur =
        gaussian_blur_2d<double>(candidates[i + 1].pixels.cast<double>().array(),
                                 cfg.blur_kernel_size);
    const Eigen::ArrayXXd diff = (next_blur - prev_blur).abs();
    const auto mask_count = (diff > cfg.motion_threshold).count();
    scores[i] = static_cast<double>(mask_count) / static_cast<double>(diff.size());
    prev_blur = std::move(next_blur);
  }
  scores[n - 1] = scores[n - 2];
  return scores;
}

SelectedClip select_motion_frames(const std::vector<Frame>& candidates,
                                  const std::vector<double>& scores, int n_select,
                                  int source_window_start) {
  if (candidates.size() != scores.size() || candidates.size() < 2)
    throw std::invalid_argument("select_motion_frames: need >= 2 scored candidates");

  const int n = static_cast<int>(candidates.size());
  std::vector<int> chosen;
  if (n <= n_select) {
    chosen.resize(n);
    std::iota(chosen.begin(), chosen.end(), 0);
  } else {
    std::vector<int> interior;
    interior.reserve(n - 2);
    for (int i = 1; i + 1 < n; ++i) interior.push_back(i);
    // Descending score, ascending index on ties.
    std::sort(interior.begin(), interior.end(), [&](int a, int b) {
      if (scores[a] != scores[b]) return scores[a] > scores[b];
      return a < b;
    });
    chosen = {0, n - 1};
    chosen.insert(chosen.end(), interior.begin(),
                  interior.begin() + std::max(0, n_select - 2));
    std::sort(chosen.begin(), chosen.end());
  }

  SelectedClip clip;
  clip.source_window_start = source_window_start;
  clip.frames.reserve(chosen.size());
  for (int idx : chosen) clip.frames.push_back(candidates[idx]);
  return clip;
}

SelectedClip select_clip(const Window& window, const MotionConfig& cfg) {
  std::vector<Frame> candidates = uniform_sample(window, cfg.n_uniform);
  if (static_cast<int>(candidates.size()) <= cfg.n_select) {
    SelectedClip clip;
    clip.source_window_start = window.start;
    clip.frames = std::move(candidates);
    return clip;
  }
  const std::vector<double> scores = motion_saliency(candidates, cfg);
  return select_motion_frames(candidates, scores, cfg.n_select, window.start);
}

}  // namespace qvad
