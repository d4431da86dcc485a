#pragma once

#include "vgcn/image.hpp"
#include "vgcn/types.hpp"

#include <cstdint>
#include <set>
#include <utility>
#include <vector>

namespace vgcn {

enum class ColorSpace { gray, rgb, lab };

// Parameters for non-iterative priority-queue superpixel growth. The
// clustering distance between a pixel and a region's running centroid is
//   D = sqrt(d_color^2 + (d_xy / S)^2 * m^2)
// where d_color is measured in the selected color space (CIELAB for RGB
// inputs by default; single-channel inputs use intensity scaled to the
// 0-100 lightness range).
struct SnicConfig {
  int k = 64;                                // requested region count
  Scalar compactness = 10.0;                 // m
  Scalar spacing = 0.0;                      // S; <= 0 selects sqrt(pixels/k)
  ColorSpace color_space = ColorSpace::lab;  // applies to 3-channel inputs
};

// A full labeling of the image into connected regions, with per-region
// centroids (generator points, pixel-center coordinates where pixel (x,y)
// spans [x,x+1)x[y,y+1)) and mean colors in [0,1].
struct Segmentation {
  int width = 0;
  int height = 0;
  std::vector<int> labels;       // width*height region ids, row-major
  std::vector<Point> generators; // centroid per region
  Matrix region_means;           // regions x channels
  std::vector<int> region_sizes;
  std::int64_t queue_pops = 0;   // instrumentation: bounded by 8 * pixels

  int region_count() const { return static_cast<int>(region_sizes.size()); }
  int label_at(int x, int y) const { return labels[static_cast<std::size_t>(y) * width + x]; }
};

// Seeds on a near-square grid of ceil(sqrt(k)) columns, one per cell,
// at the cell centers clipped to image bounds. Exactly k distinct pixels.
std::vector<std::pair<int, int>> init_seeds(int width, int height, int k);

Segmentation snic_segment(const NormImage& img, const SnicConfig& cfg);

// All unordered region-id pairs (i,j) such that some pixel of i is
// 4-adjacent to some pixel of j. Brute-force dual oracle.
std::set<std::pair<int, int>> region_adjacency(const Segmentation& seg);

}  // namespace vgcn
