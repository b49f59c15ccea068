#pragma once

#include "qvad/frame.hpp"

#include <vector>

namespace qvad {

/// Serializes a grayscale pixel matrix as an 8-bit PNG byte stream.
std::vector<unsigned char> encode_gray_png(const PixelMatrix& pixels);

/// Decodes an 8-bit grayscale PNG back into a pixel matrix. Color inputs
/// are converted with the 0.299/0.587/0.114 luma weights. Throws
/// std::runtime_error on malformed data.
PixelMatrix decode_gray_png(const std::vector<unsigned char>& bytes);

}  // namespace qvad
