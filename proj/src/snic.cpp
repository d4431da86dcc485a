#include "vgcn/snic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <stdexcept>

namespace vgcn {

std::vector<std::pair<int, int>> init_seeds(int width, int height, int k) {
  if (width <= 0 || height <= 0) throw std::invalid_argument("image dimensions must be positive");
  if (k < 1) throw std::invalid_argument("seed count must be >= 1");
  const std::int64_t pixels = static_cast<std::int64_t>(width) * height;
  if (k > pixels) throw std::invalid_argument("seed count exceeds pixel count");

  const int cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(k))));
  const int rows = (k + cols - 1) / cols;
  std::vector<std::pair<int, int>> seeds;
  seeds.reserve(k);
  std::vector<char> taken(static_cast<std::size_t>(pixels), 0);
  for (int i = 0; i < k; ++i) {
    const int gx = i % cols;
    const int gy = i / cols;
    int x = std::clamp(static_cast<int>(std::floor((gx + 0.5) * width / cols)), 0, width - 1);
    int y = std::clamp(static_cast<int>(std::floor((gy + 0.5) * height / rows)), 0, height - 1);
    // Collision only happens when cells are narrower than a pixel; probe
    // row-major for the next free pixel.
    std::int64_t idx = static_cast<std::int64_t>(y) * width + x;
    while (taken[idx]) idx = (idx + 1) % pixels;
    taken[idx] = 1;
    seeds.emplace_back(static_cast<int>(idx % width), static_cast<int>(idx / width));
  }
  return seeds;
}

namespace {

struct Candidate {
  Scalar dist2;
  std::int32_t pixel;
  std::int32_t region;
};

// Lowest (distance, row-major pixel index, region id) wins; the total order
// makes the growth deterministic.
struct CandidateAfter {
  bool operator()(const Candidate& a, const Candidate& b) const {
    if (a.dist2 != b.dist2) return a.dist2 > b.dist2;
    if (a.pixel != b.pixel) return a.pixel > b.pixel;
    return a.region > b.region;
  }
};

// Color feature used inside the clustering distance. Single-channel inputs
// use the intensity scaled to the 0-100 lightness range; RGB inputs use
// CIELAB, plain scaled RGB, or luma depending on the configuration.
std::vector<std::array<Scalar, 3>> color_features(const NormImage& img, ColorSpace space,
                                                  int* dims_out) {
  const int n = img.pixel_count();
  std::vector<std::array<Scalar, 3>> feat(static_cast<std::size_t>(n), {0, 0, 0});
  int dims;
  if (img.channels == 1) {
    dims = 1;
    for (int i = 0; i < n; ++i) feat[i][0] = 100.0 * img.data[i];
  } else if (space == ColorSpace::gray) {
    dims = 1;
    for (int i = 0; i < n; ++i) {
      const Scalar* p = &img.data[static_cast<std::size_t>(i) * 3];
      feat[i][0] = 100.0 * (0.299 * p[0] + 0.587 * p[1] + 0.114 * p[2]);
    }
  } else if (space == ColorSpace::rgb) {
    dims = 3;
    for (int i = 0; i < n; ++i)
      for (int c = 0; c < 3; ++c) feat[i][c] = 100.0 * img.data[static_cast<std::size_t>(i) * 3 + c];
  } else {
    dims = 3;
    for (int i = 0; i < n; ++i) {
      const Scalar* p = &img.data[static_cast<std::size_t>(i) * 3];
      const auto lab = srgb_to_lab(p[0], p[1], p[2]);
      feat[i] = {lab[0], lab[1], lab[2]};
    }
  }
  *dims_out = dims;
  return feat;
}

struct RegionAccum {
  Scalar sum_x = 0, sum_y = 0;
  std::array<Scalar, 3> sum_color{0, 0, 0};
  std::int64_t count = 0;
};

// Merge regions smaller than max(4, 0.05*pixels/k) into the neighbor with
// the longest shared border, then compact labels in ascending order.
void merge_tiny_regions(std::vector<int>& labels, int width, int height, int k) {
  const std::int64_t n = static_cast<std::int64_t>(width) * height;
  const std::int64_t min_size =
      std::max<std::int64_t>(4, static_cast<std::int64_t>(0.05 * static_cast<double>(n) / k));

  while (true) {
    int region_count = 0;
    for (int l : labels) region_count = std::max(region_count, l + 1);
    std::vector<std::int64_t> sizes(region_count, 0);
    for (int l : labels) ++sizes[l];

    int smallest = -1;
    for (int r = 0; r < region_count; ++r)
      if (sizes[r] > 0 && sizes[r] < min_size && (smallest < 0 || sizes[r] < sizes[smallest]))
        smallest = r;
    if (smallest < 0) break;

    // Border lengths of the small region against each neighbor.
    std::map<int, int> border;
    for (int y = 0; y < height; ++y)
      for (int x = 0; x < width; ++x) {
        const int a = labels[static_cast<std::size_t>(y) * width + x];
        if (x + 1 < width) {
          const int b = labels[static_cast<std::size_t>(y) * width + x + 1];
          if (a == smallest && b != smallest) ++border[b];
          if (b == smallest && a != smallest) ++border[a];
        }
        if (y + 1 < height) {
          const int b = labels[(static_cast<std::size_t>(y) + 1) * width + x];
          if (a == smallest && b != smallest) ++border[b];
          if (b == smallest && a != smallest) ++border[a];
        }
      }
    if (border.empty()) break;  // single region left
    int target = border.begin()->first;
    int best_len = border.begin()->second;
    for (const auto& [r, len] : border)
      if (len > best_len) {
        target = r;
        best_len = len;
      }
    for (int& l : labels)
      if (l == smallest) l = target;
  }

  // Compact ids, preserving ascending order.
  int region_count = 0;
  for (int l : labels) region_count = std::max(region_count, l + 1);
  std::vector<int> remap(region_count, -1);
  int next = 0;
  std::vector<std::int64_t> sizes(region_count, 0);
  for (int l : labels) ++sizes[l];
  for (int r = 0; r < region_count; ++r)
    if (sizes[r] > 0) remap[r] = next++;
  for (int& l : labels) l = remap[l];
}

}  // namespace

Segmentation snic_segment(const NormImage& img, const SnicConfig& cfg) {
  if (img.width <= 0 || img.height <= 0) throw std::invalid_argument("empty image");
  if (img.channels != 1 && img.channels != 3)
    throw std::invalid_argument("image channels must be 1 or 3");
  if (cfg.k < 1) throw std::invalid_argument("region count must be >= 1");
  if (cfg.compactness <= 0) throw std::invalid_argument("compactness must be positive");
  const int width = img.width, height = img.height;
  const std::int64_t n = static_cast<std::int64_t>(width) * height;
  if (cfg.k > n) throw std::invalid_argument("region count exceeds pixel count");

  const Scalar spacing =
      cfg.spacing > 0 ? cfg.spacing : std::sqrt(static_cast<Scalar>(n) / cfg.k);
  const Scalar spatial_weight =
      (cfg.compactness * cfg.compactness) / (spacing * spacing);

  int color_dims = 0;
  const auto feat = color_features(img, cfg.color_space, &color_dims);
  const auto seeds = init_seeds(width, height, cfg.k);

  std::vector<int> labels(static_cast<std::size_t>(n), -1);
  std::vector<RegionAccum> acc(seeds.size());
  std::priority_queue<Candidate, std::vector<Candidate>, CandidateAfter> queue;
  for (std::size_t r = 0; r < seeds.size(); ++r) {
    const auto [sx, sy] = seeds[r];
    queue.push({0.0, sy * width + sx, static_cast<std::int32_t>(r)});
  }

  std::int64_t pops = 0;
  const int dx[4] = {1, -1, 0, 0};
  const int dy[4] = {0, 0, 1, -1};
  while (!queue.empty()) {
    const Candidate c = queue.top();
    queue.pop();
    ++pops;
    if (labels[c.pixel] >= 0) continue;
    labels[c.pixel] = c.region;
    const int px = c.pixel % width;
    const int py = c.pixel / width;
    RegionAccum& a = acc[c.region];
    a.sum_x += px + 0.5;
    a.sum_y += py + 0.5;
    for (int d = 0; d < color_dims; ++d) a.sum_color[d] += feat[c.pixel][d];
    ++a.count;

    const Scalar inv = 1.0 / static_cast<Scalar>(a.count);
    const Scalar cx = a.sum_x * inv;
    const Scalar cy = a.sum_y * inv;
    for (int k4 = 0; k4 < 4; ++k4) {
      const int qx = px + dx[k4];
      const int qy = py + dy[k4];
      if (qx < 0 || qx >= width || qy < 0 || qy >= height) continue;
      const std::int32_t q = qy * width + qx;
      if (labels[q] >= 0) continue;
      Scalar d_color2 = 0;
      for (int d = 0; d < color_dims; ++d) {
        const Scalar dc = feat[q][d] - a.sum_color[d] * inv;
        d_color2 += dc * dc;
      }
      const Scalar ex = (qx + 0.5) - cx;
      const Scalar ey = (qy + 0.5) - cy;
      const Scalar d_xy2 = ex * ex + ey * ey;
      // Keyed by D^2; monotone in D, so the pop order is unchanged.
      queue.push({d_color2 + d_xy2 * spatial_weight, q, c.region});
    }
  }

  merge_tiny_regions(labels, width, height, cfg.k);

  Segmentation seg;
  seg.width = width;
  seg.height = height;
  seg.labels = std::move(labels);
  seg.queue_pops = pops;
  int regions = 0;
  for (int l : seg.labels) regions = std::max(regions, l + 1);
  seg.generators.assign(regions, Point::Zero());
  seg.region_sizes.assign(regions, 0);
  seg.region_means = Matrix::Zero(regions, img.channels);
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x) {
      const int r = seg.labels[static_cast<std::size_t>(y) * width + x];
      seg.generators[r] += Point(x + 0.5, y + 0.5);
      ++seg.region_sizes[r];
      for (int c = 0; c < img.channels; ++c) seg.region_means(r, c) += img.at(x, y, c);
    }
  for (int r = 0; r < regions; ++r) {
    seg.generators[r] /= seg.region_sizes[r];
    seg.region_means.row(r) /= seg.region_sizes[r];
  }
  return seg;
}

std::set<std::pair<int, int>> region_adjacency(const Segmentation& seg) {
  std::set<std::pair<int, int>> pairs;
  for (int y = 0; y < seg.height; ++y)
    for (int x = 0; x < seg.width; ++x) {
      const int a = seg.label_at(x, y);
      if (x + 1 < seg.width) {
        const int b = seg.label_at(x + 1, y);
        if (a != b) pairs.emplace(std::min(a, b), std::max(a, b));
      }
      if (y + 1 < seg.height) {
        const int b = seg.label_at(x, y + 1);
        if (a != b) pairs.emplace(std::min(a, b), std::max(a, b));
      }
    }
  return pairs;
}

}  // namespace vgcn
