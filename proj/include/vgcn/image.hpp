#pragma once

#include "vgcn/types.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace vgcn {

// 8-bit image, row-major, channel-interleaved. channels is 1 (gray) or 3 (RGB).
struct RawImage {
  int width = 0;
  int height = 0;
  int channels = 1;
  std::vector<std::uint8_t> data;

  std::uint8_t at(int x, int y, int c = 0) const {
    return data[static_cast<std::size_t>((y * width + x) * channels + c)];
  }
  int pixel_count() const { return width * height; }
};

// Same shape as RawImage with intensities in [0,1].
struct NormImage {
  int width = 0;
  int height = 0;
  int channels = 1;
  std::vector<Scalar> data;

  Scalar at(int x, int y, int c = 0) const {
    return data[static_cast<std::size_t>((y * width + x) * channels + c)];
  }
  int pixel_count() const { return width * height; }
};

// Throws std::invalid_argument if the shape invariants do not hold.
void validate_image(const RawImage& img);

// Maps every byte b to b/255 exactly. The single point where pixel data
// becomes floating point.
NormImage normalize_image(const RawImage& img);

// sRGB components in [0,1] -> CIELAB under D65. L in [0,100].
std::array<Scalar, 3> srgb_to_lab(Scalar r, Scalar g, Scalar b);

// Nearest-neighbor upscale by an integer factor (benchmark helper).
RawImage upscale_nearest(const RawImage& img, int factor);

}  // namespace vgcn
