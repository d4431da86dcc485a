#pragma once

#include "vgcn/snic.hpp"
#include "vgcn/types.hpp"

#include <vector>

namespace vgcn {

// The image frame acts as pseudo-region -1 when junctions are detected; it
// never appears as a chain side.
constexpr int kFrameRegion = -1;

// An ordered run of pixel-corner lattice points tracing the shared border
// between exactly two regions. Pixel (x,y) spans [x,x+1)x[y,y+1), so corners
// sit at integer coordinates; consecutive vertices are unit steps. Endpoints
// are junction corners (>= 3 incident labels, frame included) or the
// pseudo-junctions introduced when a closed loop is cut.
struct BoundaryChain {
  std::vector<Point> vertices;
  int left_region = kFrameRegion;
  int right_region = kFrameRegion;
};

// Traces every inter-region border segment into exactly one chain. Closed
// loops (a region fully inside another) are cut at the corner nearest the
// midpoint of the two generators and at the corner halfway around, leaving
// two open chains.
std::vector<BoundaryChain> extract_boundaries(const Segmentation& seg);

// Classic recursive simplification: keep both endpoints, split at the point
// of maximum deviation while it exceeds eps. The result is a subsequence of
// the input and every dropped point lies within eps of the kept polyline.
std::vector<Point> douglas_peucker(const std::vector<Point>& points, Scalar eps);

// Applies douglas_peucker to every chain with a common tolerance.
std::vector<BoundaryChain> simplify_chains(std::vector<BoundaryChain> chains, Scalar eps);

struct VoronoiEdge {
  int a = 0;  // indices into VoronoiGraph::vertices
  int b = 0;
  int left_region = kFrameRegion;
  int right_region = kFrameRegion;
};

// Junctions and straight border edges of the simplified diagram.
struct VoronoiGraph {
  std::vector<Point> vertices;
  std::vector<VoronoiEdge> edges;
  int dropped_degenerate = 0;  // zero-length edges discarded
};

// Consecutive simplified points become edges; shared junctions are
// deduplicated by exact coordinate, duplicate edges collapse.
VoronoiGraph build_voronoi_graph(const std::vector<BoundaryChain>& chains);

}  // namespace vgcn
