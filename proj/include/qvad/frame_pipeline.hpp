#pragma once

#include "qvad/frame.hpp"

#include <vector>

namespace qvad {

/// Parameters of the two-stage frame abstraction (uniform pre-sample
/// followed by motion-saliency selection).
struct MotionConfig {
  int blur_kernel_size = 21;  // square Gaussian kernel side, odd
  double motion_threshold = 25.0;
  int n_uniform = 32;
  int n_select = 8;
};

/// Cuts a video into overlapping windows of `w` frames with stride `s`.
/// Windows start at 0, s, 2s, ...; the schedule stops after the first
/// window that reaches the end of the video, so only the final window can
/// be shorter than `w`. Throws std::invalid_argument("empty input") on an
/// empty video.
std::vector<Window> slide_windows(const FrameSequence& video, int w, int s);

/// Uniformly samples up to `n_uniform` candidate frames from a window at
/// stride max(1, floor(len / n_uniform)). Windows shorter than `n_uniform`
/// pass through whole.
std::vector<Frame> uniform_sample(const Window& window, int n_uniform);

/// Motion saliency per candidate: blur consecutive frames, threshold the
/// absolute difference at cfg.motion_threshold (strict >), and take the
/// mask mean. The last frame copies its predecessor's score. Requires at
/// least two candidates.
std::vector<double> motion_saliency(const std::vector<Frame>& candidates,
                                    const MotionConfig& cfg);

/// Keeps the first and last candidates plus the (n_select - 2) highest
/// scoring interior ones; ties break toward the lower frame index. Output
/// is in ascending index order. If there are at most n_select candidates,
/// all are kept.
SelectedClip select_motion_frames(const std::vector<Frame>& candidates,
                                  const std::vector<double>& scores, int n_select,
                                  int source_window_start);

/// Full per-window reduction: uniform sample, then motion selection.
/// Degenerate windows (not enough candidates to rank) pass through whole.
SelectedClip select_clip(const Window& window, const MotionConfig& cfg);

}  // namespace qvad
