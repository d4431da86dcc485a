#include "vgcn/synthdata.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace vgcn {

namespace {

constexpr int kSide = 28;

struct Canvas {
  std::array<double, kSide * kSide> v{};

  void stamp(int x, int y, double value) {
    if (x < 0 || x >= kSide || y < 0 || y >= kSide) return;
    double& cell = v[static_cast<std::size_t>(y) * kSide + x];
    cell = std::max(cell, value);
  }
};

double segment_distance(double px, double py, double ax, double ay, double bx, double by) {
  const double dx = bx - ax, dy = by - ay;
  const double len2 = dx * dx + dy * dy;
  double t = len2 > 0 ? ((px - ax) * dx + (py - ay) * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  const double ex = px - (ax + t * dx), ey = py - (ay + t * dy);
  return std::sqrt(ex * ex + ey * ey);
}

// Anti-aliased stroke: full intensity inside the core, linear falloff over
// the last pixel of the half-width.
double falloff(double dist, double half_width) {
  if (dist <= half_width - 1.0) return 1.0;
  if (dist >= half_width) return 0.0;
  return half_width - dist;
}

void draw_segment(Canvas& canvas, double ax, double ay, double bx, double by, double width,
                  double intensity) {
  for (int y = 0; y < kSide; ++y)
    for (int x = 0; x < kSide; ++x) {
      const double d = segment_distance(x + 0.5, y + 0.5, ax, ay, bx, by);
      const double a = falloff(d, width / 2);
      if (a > 0) canvas.stamp(x, y, intensity * a);
    }
}

void draw_ring(Canvas& canvas, double cx, double cy, double radius, double width,
               double intensity) {
  for (int y = 0; y < kSide; ++y)
    for (int x = 0; x < kSide; ++x) {
      const double d =
          std::abs(std::hypot(x + 0.5 - cx, y + 0.5 - cy) - radius);
      const double a = falloff(d, width / 2);
      if (a > 0) canvas.stamp(x, y, intensity * a);
    }
}

void draw_disc(Canvas& canvas, double cx, double cy, double radius, double intensity) {
  for (int y = 0; y < kSide; ++y)
    for (int x = 0; x < kSide; ++x) {
      const double d = std::hypot(x + 0.5 - cx, y + 0.5 - cy);
      const double a = d <= radius - 1 ? 1.0 : (d >= radius ? 0.0 : radius - d);
      if (a > 0) canvas.stamp(x, y, intensity * a);
    }
}

}  // namespace

LabeledSet make_synthetic_digits(int count, std::uint64_t seed) {
  LabeledSet set;
  set.images.reserve(count);
  set.labels.reserve(count);
  for (int i = 0; i < count; ++i) {
    const int label = i % 10;
    std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(i));
    std::uniform_real_distribution<double> jitter(-2.0, 2.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double ox = 14 + jitter(rng);
    const double oy = 14 + jitter(rng);
    const double width = 2.5 + unit(rng);
    const double intensity = 0.75 + 0.25 * unit(rng);

    Canvas canvas;
    const double arm = 8.5 + jitter(rng) / 2;
    switch (label) {
      case 0: draw_ring(canvas, ox, oy, 8.0 + unit(rng) * 2, width, intensity); break;
      case 1: draw_segment(canvas, ox, oy - arm, ox, oy + arm, width, intensity); break;
      case 2: draw_segment(canvas, ox - arm, oy, ox + arm, oy, width, intensity); break;
      case 3:
        draw_segment(canvas, ox, oy - arm, ox, oy + arm, width, intensity);
        draw_segment(canvas, ox - arm, oy, ox + arm, oy, width, intensity);
        break;
      case 4: draw_segment(canvas, ox - arm, oy - arm, ox + arm, oy + arm, width, intensity); break;
      case 5: draw_segment(canvas, ox + arm, oy - arm, ox - arm, oy + arm, width, intensity); break;
      case 6: draw_disc(canvas, ox, oy, 5.5 + unit(rng), intensity); break;
      case 7: draw_segment(canvas, ox - arm, oy - 6, ox + arm, oy - 6, width, intensity); break;
      case 8: draw_segment(canvas, ox - arm, oy + 6, ox + arm, oy + 6, width, intensity); break;
      case 9:
        draw_segment(canvas, ox - arm, oy - arm, ox + arm, oy + arm, width, intensity);
        draw_segment(canvas, ox + arm, oy - arm, ox - arm, oy + arm, width, intensity);
        break;
      default: break;
    }

    RawImage img;
    img.width = kSide;
    img.height = kSide;
    img.channels = 1;
    img.data.resize(kSide * kSide);
    std::uniform_real_distribution<double> noise(0.0, 0.04);
    for (int p = 0; p < kSide * kSide; ++p) {
      const double value = std::clamp(canvas.v[p] + noise(rng), 0.0, 1.0);
      img.data[p] = static_cast<std::uint8_t>(std::lround(value * 255.0));
    }
    set.images.push_back(std::move(img));
    set.labels.push_back(label);
  }
  return set;
}

void write_idx_pair(const std::filesystem::path& images_path,
                    const std::filesystem::path& labels_path, const LabeledSet& set) {
  write_idx_images(images_path, set.images);
  write_idx_labels(labels_path, set.labels);
}

}  // namespace vgcn
