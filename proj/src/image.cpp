#include "vgcn/image.hpp"

#include <cmath>
#include <stdexcept>

namespace vgcn {

void validate_image(const RawImage& img) {
  if (img.width <= 0 || img.height <= 0)
    throw std::invalid_argument("image dimensions must be positive");
  if (img.channels != 1 && img.channels != 3)
    throw std::invalid_argument("image channels must be 1 or 3");
  const auto expected = static_cast<std::size_t>(img.width) * img.height * img.channels;
  if (img.data.size() != expected)
    throw std::invalid_argument("image data length does not match width*height*channels");
}

NormImage normalize_image(const RawImage& img) {
  validate_image(img);
  NormImage out;
  out.width = img.width;
  out.height = img.height;
  out.channels = img.channels;
  out.data.resize(img.data.size());
  for (std::size_t i = 0; i < img.data.size(); ++i)
    out.data[i] = static_cast<Scalar>(img.data[i]) / 255.0;
  return out;
}

namespace {

Scalar srgb_to_linear(Scalar c) {
  return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
}

Scalar lab_f(Scalar t) {
  constexpr Scalar delta = 6.0 / 29.0;
  return t > delta * delta * delta ? std::cbrt(t) : t / (3 * delta * delta) + 4.0 / 29.0;
}

}  // namespace

std::array<Scalar, 3> srgb_to_lab(Scalar r, Scalar g, Scalar b) {
  const Scalar rl = srgb_to_linear(r);
  const Scalar gl = srgb_to_linear(g);
  const Scalar bl = srgb_to_linear(b);
  // D65 reference white.
  const Scalar x = (0.4124564 * rl + 0.3575761 * gl + 0.1804375 * bl) / 0.95047;
  const Scalar y = 0.2126729 * rl + 0.7151522 * gl + 0.0721750 * bl;
  const Scalar z = (0.0193339 * rl + 0.1191920 * gl + 0.9503041 * bl) / 1.08883;
  const Scalar fx = lab_f(x), fy = lab_f(y), fz = lab_f(z);
  return {116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

RawImage upscale_nearest(const RawImage& img, int factor) {
  validate_image(img);
  if (factor < 1) throw std::invalid_argument("upscale factor must be >= 1");
  RawImage out;
  out.width = img.width * factor;
  out.height = img.height * factor;
  out.channels = img.channels;
  out.data.resize(static_cast<std::size_t>(out.width) * out.height * out.channels);
  for (int y = 0; y < out.height; ++y)
    for (int x = 0; x < out.width; ++x)
      for (int c = 0; c < out.channels; ++c)
        out.data[(static_cast<std::size_t>(y) * out.width + x) * out.channels + c] =
            img.at(x / factor, y / factor, c);
  return out;
}

}  // namespace vgcn
