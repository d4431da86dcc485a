#pragma once

#include "vgcn/boundary.hpp"
#include "vgcn/snic.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace vgcn {

struct DualConfig {
  bool perp_check = false;          // keep an edge only if generator and border
  Scalar perp_tolerance_deg = 30.0; // segments are perpendicular within this
  int neighborhood_radius = 1;      // window used to resolve shared regions
};

// The tessellation graph dual to the Voronoi graph: one node per region at
// its generator point, edges joining generators of regions adjacent across
// a simplified border edge.
struct DelaunayGraph {
  std::vector<Point> nodes;                  // generator coordinates
  std::vector<std::pair<int, int>> edges;    // unordered node-index pairs
  Matrix features;                           // nodes x (3 or 5), filled by node_features
  int width = 0;                             // source image dims
  int height = 0;
  int skipped_edges = 0;

  int node_count() const { return static_cast<int>(nodes.size()); }
  int edge_count() const { return static_cast<int>(edges.size()); }
};

struct DegreeStats {
  int min = 0;
  int max = 0;
  Scalar mean = 0;
  std::vector<std::int64_t> histogram;  // histogram[d] = number of nodes with degree d
};

// The two region ids found in the label windows of both edge endpoints.
// Falls back to the edge's stored annotation when the windows do not agree
// on exactly two non-frame regions; nullopt (skip) when they agree on the
// frame alone.
std::optional<std::pair<int, int>> shared_regions(const VoronoiEdge& edge,
                                                  const VoronoiGraph& vg,
                                                  const Segmentation& seg,
                                                  const DualConfig& cfg);

// True iff the angle between the two segments is within tol of 90 degrees.
// Zero-length segments fail the test.
bool perpendicularity_test(const Point& p1, const Point& p2, const Point& x1, const Point& x2,
                           Scalar tol_deg);

DelaunayGraph build_delaunay(const VoronoiGraph& vg, const Segmentation& seg,
                             const DualConfig& cfg);

// Per-node features, all in [0,1]: [x/width, y/height, mean intensity] for
// gray sources, [x/width, y/height, mean r, g, b] for RGB.
Matrix node_features(const Segmentation& seg, const NormImage& img);

DegreeStats degree_stats(const DelaunayGraph& g);

// Full conversion: normalize -> segment -> trace borders -> simplify ->
// Voronoi graph -> dual graph -> features.
DelaunayGraph image_to_graph(const RawImage& img, const SnicConfig& snic_cfg,
                             const DualConfig& dual_cfg, Scalar dp_eps);

}  // namespace vgcn
