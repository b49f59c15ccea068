#include "qvad/png_codec.hpp"

#include <png.h>

#include <cmath>
#include <csetjmp>
#include <cstring>
#include <stdexcept>

namespace qvad {

namespace {

struct ByteSink {
  std::vector<unsigned char>* out;
};

void write_callback(png_structp png, png_bytep data, png_size_t length) {
  auto* sink = static_cast<ByteSink*>(png_get_io_ptr(png));
  sink->out->insert(sink->out->end(), data, data + length);
}

void flush_callback(png_structp) {}

struct ByteSource {
  const unsigned char* data;
  std::size_t size;
  std::size_t offset;
};

void read_callback(png_structp png, png_bytep out, png_size_t length) {
  auto* src = static_cast<ByteSource*>(png_get_io_ptr(png));
  if (src->offset + length > src->size) png_error(png, "png: truncated stream");
  std::memcpy(out, src->data + src->offset, length);
  src->offset += length;
}

}  // namespace

std::vector<unsigned char> encode_gray_png(const PixelMatrix& pixels) {
  if (pixels.size() == 0) throw std::invalid_argument("encode_gray_png: empty image");

  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw std::runtime_error("png: write struct allocation failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw std::runtime_error("png: info struct allocation failed");
  }

  std::vector<unsigned char> bytes;
  ByteSink sink{&bytes};
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw std::runtime_error("png: encode failed");
  }
  png_set_write_fn(png, &sink, write_callback, flush_callback);
  png_set_IHDR(png, info, static_cast<png_uint_32>(pixels.cols()),
               static_cast<png_uint_32>(pixels.rows()), 8, PNG_COLOR_TYPE_GRAY,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (Eigen::Index r = 0; r < pixels.rows(); ++r)
    png_write_row(png, const_cast<png_bytep>(pixels.data() + r * pixels.cols()));
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return bytes;
}

PixelMatrix decode_gray_png(const std::vector<unsigned char>& bytes) {
  if (bytes.size() < 8 || png_sig_cmp(bytes.data(), 0, 8) != 0)
    throw std::runtime_error("png: bad signature");

  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw std::runtime_error("png: read struct allocation failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw std::runtime_error("png: info struct allocation failed");
  }

  ByteSource src{bytes.data(), bytes.size(), 0};
  std::vector<png_bytep> row_pointers;
  std::vector<unsigned char> raster;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw std::runtime_error("png: decode failed");
  }
  png_set_read_fn(png, &src, read_callback);
  png_read_info(png, info);

  const png_uint_32 width = png_get_image_width(png, info);
  const png_uint_32 height = png_get_image_height(png, info);
  const png_byte color_type = png_get_color_type(png, info);
  const png_byte bit_depth = png_get_bit_depth(png, info);

  if (bit_depth == 16) png_set_strip_16(png);
  if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
  png_set_strip_alpha(png);
  png_read_update_info(png, info);

  const int channels = png_get_channels(png, info);
  raster.resize(static_cast<std::size_t>(width) * height * channels);
  row_pointers.resize(height);
  for (png_uint_32 r = 0; r < height; ++r)
    row_pointers[r] = raster.data() + static_cast<std::size_t>(r) * width * channels;
  png_read_image(png, row_pointers.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);

  PixelMatrix pixels(height, width);
  for (png_uint_32 r = 0; r < height; ++r)
    for (png_uint_32 c = 0; c < width; ++c) {
      const unsigned char* px = raster.data() +
                                (static_cast<std::size_t>(r) * width + c) * channels;
      if (channels == 1) {
        pixels(r, c) = px[0];
      } else {
        const double luma = 0.299 * px[0] + 0.587 * px[1] + 0.114 * px[2];
        pixels(r, c) = static_cast<std::uint8_t>(std::lround(luma));
      }
    }
  return pixels;
}

}  // namespace qvad
