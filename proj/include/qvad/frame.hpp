#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <vector>

namespace qvad {

/// Raster-order grayscale pixel buffer (8-bit intensities, 0-255).
using PixelMatrix =
    Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// One grayscale video frame. All frames of a video share height and width.
struct Frame {
  int index = 0;  // 0-based position in the video
  PixelMatrix pixels;

  Eigen::Index height() const { return pixels.rows(); }
  Eigen::Index width() const { return pixels.cols(); }
};

using FrameSequence = std::vector<Frame>;

/// A contiguous temporal window produced by the sliding-window sampler.
struct Window {
  int start = 0;  // index of the first frame
  std::vector<Frame> frames;

  Eigen::Index size() const { return static_cast<Eigen::Index>(frames.size()); }
};

/// The motion-selected frames handed to the perception backend.
struct SelectedClip {
  std::vector<Frame> frames;
  int source_window_start = 0;
};

}  // namespace qvad
