#pragma once

#include <Eigen/Core>

#include <cmath>
#include <stdexcept>

namespace qvad {

using Eigen::Index;

/// Reflects an out-of-range index back into [0, n). Edge sample is repeated
/// (-1 -> 0, n -> n-1); folds as often as needed for kernels wider than the
/// signal.
inline Index reflect_index(Index i, Index n) {
  if (n == 1) return 0;
  while (i < 0 || i >= n) {
    if (i < 0) i = -i - 1;
    if (i >= n) i = 2 * n - i - 1;
  }
  return i;
}

/// Builds a normalized 1-D Gaussian kernel of standard deviation `sigma`
/// with the given radius (length 2*radius+1). Weights sum to exactly 1.0:
/// the trailing weight absorbs the normalization residual, so convolving a
/// constant signal reproduces it to the last ulp.
template <typename Scalar>
Eigen::Array<Scalar, Eigen::Dynamic, 1> gaussian_kernel(Scalar sigma, Index radius) {
  if (sigma <= Scalar(0)) throw std::invalid_argument("gaussian_kernel: sigma must be > 0");
  if (radius < 1) throw std::invalid_argument("gaussian_kernel: radius must be >= 1");
  Eigen::Array<Scalar, Eigen::Dynamic, 1> k(2 * radius + 1);
  const Scalar inv2s2 = Scalar(1) / (Scalar(2) * sigma * sigma);
  for (Index j = -radius; j <= radius; ++j)
    k(j + radius) = std::exp(-Scalar(j) * Scalar(j) * inv2s2);
  k /= k.sum();
  Scalar partial = 0;
  for (Index j = 0; j + 1 < k.size(); ++j) partial += k(j);
  k(k.size() - 1) = Scalar(1) - partial;
  return k;
}

/// Kernel radius convention: ceil(3*sigma), at least 1.
template <typename Scalar>
Index gaussian_radius(Scalar sigma) {
  return std::max<Index>(1, static_cast<Index>(std::ceil(Scalar(3) * sigma)));
}

/// 1-D Gaussian smoothing with reflected boundaries. sigma == 0 is the
/// identity.
template <typename Derived>
Eigen::Array<typename Derived::Scalar, Eigen::Dynamic, 1>
gaussian_smooth(const Eigen::ArrayBase<Derived>& series, typename Derived::Scalar sigma) {
  using Scalar = typename Derived::Scalar;
  if (series.size() == 0) throw std::invalid_argument("gaussian_smooth: empty series");
  if (sigma < Scalar(0)) throw std::invalid_argument("gaussian_smooth: sigma must be >= 0");
  if (sigma == Scalar(0)) return series;
  const Index n = series.size();
  const Index radius = gaussian_radius(sigma);
  const auto kernel = gaussian_kernel<Scalar>(sigma, radius);
  Eigen::Array<Scalar, Eigen::Dynamic, 1> out(n);
  for (Index i = 0; i < n; ++i) {
    Scalar acc = 0;
    for (Index j = -radius; j <= radius; ++j)
      acc += kernel(j + radius) * series(reflect_index(i + j, n));
    out(i) = acc;
  }
  return out;
}

/// Separable 2-D Gaussian blur (rows, then columns) with reflected
/// boundaries. `kernel_size` is the square kernel side length; it must be
/// odd. The standard deviation is derived as (kernel_size - 1) / 6 so the
/// kernel spans +-3 sigma.
template <typename Scalar>
Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic>
gaussian_blur_2d(const Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic>& image,
                 Index kernel_size) {
  if (kernel_size < 1 || kernel_size % 2 == 0)
    throw std::invalid_argument("gaussian_blur_2d: kernel size must be odd and >= 1");
  if (image.size() == 0) throw std::invalid_argument("gaussian_blur_2d: empty image");
  if (kernel_size == 1) return image;
  const Index radius = (kernel_size - 1) / 2;
  const Scalar sigma = Scalar(kernel_size - 1) / Scalar(6);
  const auto kernel = gaussian_kernel<Scalar>(sigma, radius);
  const Index rows = image.rows();
  const Index cols = image.cols();

  Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic> tmp(rows, cols);
  for (Index r = 0; r < rows; ++r)
    for (Index c = 0; c < cols; ++c) {
      Scalar acc = 0;
      for (Index j = -radius; j <= radius; ++j)
        acc += kernel(j + radius) * image(r, reflect_index(c + j, cols));
      tmp(r, c) = acc;
    }
  Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(rows, cols);
  for (Index r = 0; r < rows; ++r)
    for (Index c = 0; c < cols; ++c) {
      Scalar acc = 0;
      for (Index j = -radius; j <= radius; ++j)
        acc += kernel(j + radius) * tmp(reflect_index(r + j, rows), c);
      out(r, c) = acc;
    }
  return out;
}

}  // namespace qvad
