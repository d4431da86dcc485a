#include "vgcn/dualgraph.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

namespace vgcn {

namespace {

// Labels inside the square window around a corner coordinate; cells outside
// the image contribute the frame label.
std::set<int> window_labels(const Point& corner, const Segmentation& seg, int radius) {
  const int cx = std::clamp(static_cast<int>(std::floor(corner.x())), 0, seg.width - 1);
  const int cy = std::clamp(static_cast<int>(std::floor(corner.y())), 0, seg.height - 1);
  std::set<int> labels;
  for (int y = cy - radius; y <= cy + radius; ++y)
    for (int x = cx - radius; x <= cx + radius; ++x) {
      if (x < 0 || x >= seg.width || y < 0 || y >= seg.height)
        labels.insert(kFrameRegion);
      else
        labels.insert(seg.label_at(x, y));
    }
  return labels;
}

}  // namespace

std::optional<std::pair<int, int>> shared_regions(const VoronoiEdge& edge, const VoronoiGraph& vg,
                                                  const Segmentation& seg, const DualConfig& cfg) {
  const auto la = window_labels(vg.vertices[edge.a], seg, cfg.neighborhood_radius);
  const auto lb = window_labels(vg.vertices[edge.b], seg, cfg.neighborhood_radius);
  std::vector<int> common;
  std::set_intersection(la.begin(), la.end(), lb.begin(), lb.end(), std::back_inserter(common));
  std::vector<int> regions;
  bool frame = false;
  for (int l : common) {
    if (l == kFrameRegion)
      frame = true;
    else
      regions.push_back(l);
  }
  if (regions.size() == 2) return std::make_pair(regions[0], regions[1]);
  if (regions.empty() && frame) return std::nullopt;  // only the frame is shared
  return std::make_pair(std::min(edge.left_region, edge.right_region),
                        std::max(edge.left_region, edge.right_region));
}

bool perpendicularity_test(const Point& p1, const Point& p2, const Point& x1, const Point& x2,
                           Scalar tol_deg) {
  const Point u = p2 - p1;
  const Point v = x2 - x1;
  const Scalar nu = u.norm();
  const Scalar nv = v.norm();
  if (nu == 0 || nv == 0) return false;
  const Scalar c = std::clamp(u.dot(v) / (nu * nv), -1.0, 1.0);
  const Scalar angle = std::acos(std::abs(c)) * 180.0 / std::numbers::pi;  // in [0,90]
  return std::abs(angle - 90.0) <= tol_deg;
}

DelaunayGraph build_delaunay(const VoronoiGraph& vg, const Segmentation& seg,
                             const DualConfig& cfg) {
  DelaunayGraph graph;
  graph.nodes = seg.generators;
  graph.width = seg.width;
  graph.height = seg.height;
  std::set<std::pair<int, int>> edges;
  for (const VoronoiEdge& edge : vg.edges) {
    const auto regions = shared_regions(edge, vg, seg, cfg);
    if (!regions) {
      ++graph.skipped_edges;
      continue;
    }
    const auto [r1, r2] = *regions;
    if (r1 == r2) {
      ++graph.skipped_edges;
      continue;
    }
    if (cfg.perp_check &&
        !perpendicularity_test(graph.nodes[r1], graph.nodes[r2], vg.vertices[edge.a],
                               vg.vertices[edge.b], cfg.perp_tolerance_deg)) {
      ++graph.skipped_edges;
      continue;
    }
    edges.emplace(std::min(r1, r2), std::max(r1, r2));
  }
  graph.edges.assign(edges.begin(), edges.end());
  return graph;
}

Matrix node_features(const Segmentation& seg, const NormImage& img) {
  if (seg.width != img.width || seg.height != img.height)
    throw std::invalid_argument("segmentation and image dimensions differ");
  const int regions = seg.region_count();
  const int width = img.channels == 1 ? 3 : 5;
  Matrix features(regions, width);
  for (int r = 0; r < regions; ++r) {
    features(r, 0) = seg.generators[r].x() / seg.width;
    features(r, 1) = seg.generators[r].y() / seg.height;
    for (int c = 0; c < img.channels; ++c) features(r, 2 + c) = seg.region_means(r, c);
  }
  return features;
}

DegreeStats degree_stats(const DelaunayGraph& g) {
  DegreeStats stats;
  if (g.nodes.empty()) return stats;
  std::vector<int> degree(g.nodes.size(), 0);
  for (const auto& [a, b] : g.edges) {
    ++degree[a];
    ++degree[b];
  }
  stats.min = *std::min_element(degree.begin(), degree.end());
  stats.max = *std::max_element(degree.begin(), degree.end());
  stats.mean = 2.0 * static_cast<Scalar>(g.edges.size()) / static_cast<Scalar>(g.nodes.size());
  stats.histogram.assign(stats.max + 1, 0);
  for (int d : degree) ++stats.histogram[d];
  return stats;
}

DelaunayGraph image_to_graph(const RawImage& img, const SnicConfig& snic_cfg,
                             const DualConfig& dual_cfg, Scalar dp_eps) {
  const NormImage norm = normalize_image(img);
  const Segmentation seg = snic_segment(norm, snic_cfg);
  const auto chains = simplify_chains(extract_boundaries(seg), dp_eps);
  const VoronoiGraph vg = build_voronoi_graph(chains);
  DelaunayGraph graph = build_delaunay(vg, seg, dual_cfg);
  graph.features = node_features(seg, norm);
  return graph;
}

}  // namespace vgcn
