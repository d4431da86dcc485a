#include "vgcn/boundary.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>

namespace vgcn {

namespace {

// Border tracing runs on the (width+1) x (height+1) corner lattice. A
// horizontal segment H(x,y) joins corners (x,y)-(x+1,y) and separates the
// pixels above/below; a vertical segment V(x,y) joins (x,y)-(x,y+1) and
// separates the pixels west/east. Only segments between two real regions
// are traced; the frame participates in junction detection as label -1.
struct Tracer {
  const Segmentation& seg;
  int width, height;
  std::vector<char> used_h;  // width * (height+1)
  std::vector<char> used_v;  // (width+1) * height

  explicit Tracer(const Segmentation& s)
      : seg(s),
        width(s.width),
        height(s.height),
        used_h(static_cast<std::size_t>(s.width) * (s.height + 1), 0),
        used_v(static_cast<std::size_t>(s.width + 1) * s.height, 0) {}

  int label(int x, int y) const {
    if (x < 0 || x >= width || y < 0 || y >= height) return kFrameRegion;
    return seg.label_at(x, y);
  }

  bool boundary_h(int x, int y) const {
    if (x < 0 || x >= width || y < 1 || y > height - 1) return false;
    return seg.label_at(x, y - 1) != seg.label_at(x, y);
  }
  bool boundary_v(int x, int y) const {
    if (x < 1 || x > width - 1 || y < 0 || y >= height) return false;
    return seg.label_at(x - 1, y) != seg.label_at(x, y);
  }

  std::size_t h_index(int x, int y) const { return static_cast<std::size_t>(y) * width + x; }
  std::size_t v_index(int x, int y) const { return static_cast<std::size_t>(y) * (width + 1) + x; }

  // Incident boundary segments at a corner, in the fixed order
  // up, right, down, left. Each entry is (horizontal?, x, y).
  struct Incident {
    bool horizontal;
    int x, y;
  };
  int incident(int cx, int cy, std::array<Incident, 4>& out) const {
    int count = 0;
    if (boundary_v(cx, cy - 1)) out[count++] = {false, cx, cy - 1};
    if (boundary_h(cx, cy)) out[count++] = {true, cx, cy};
    if (boundary_v(cx, cy)) out[count++] = {false, cx, cy};
    if (boundary_h(cx - 1, cy)) out[count++] = {true, cx - 1, cy};
    return count;
  }

  bool is_junction(int cx, int cy) const {
    const int l[4] = {label(cx - 1, cy - 1), label(cx, cy - 1), label(cx - 1, cy),
                      label(cx, cy)};
    int distinct = 0;
    for (int i = 0; i < 4; ++i) {
      bool seen = false;
      for (int j = 0; j < i; ++j) seen = seen || l[i] == l[j];
      if (!seen) ++distinct;
    }
    if (distinct >= 3) return true;
    // A checkerboard corner (two labels, four incident segments) would let
    // the border cross itself; treat it as a junction too.
    std::array<Incident, 4> inc;
    return distinct == 2 && incident(cx, cy, inc) == 4;
  }

  bool seg_used(const Incident& s) const {
    return s.horizontal ? used_h[h_index(s.x, s.y)] : used_v[v_index(s.x, s.y)];
  }
  void mark_used(const Incident& s) {
    (s.horizontal ? used_h[h_index(s.x, s.y)] : used_v[v_index(s.x, s.y)]) = 1;
  }

  // The corner at the other end of `s` as seen from (cx,cy).
  std::pair<int, int> other_end(const Incident& s, int cx, int cy) const {
    if (s.horizontal) return {s.x == cx ? cx + 1 : cx - 1, cy};
    return {cx, s.y == cy ? cy + 1 : cy - 1};
  }

  // Regions to the left/right of `s` when traveling from (cx,cy) through it.
  std::pair<int, int> sides(const Incident& s, int cx, int cy) const {
    if (s.horizontal) {
      const int above = seg.label_at(s.x, s.y - 1);
      const int below = seg.label_at(s.x, s.y);
      return s.x == cx ? std::pair{above, below} : std::pair{below, above};
    }
    const int west = seg.label_at(s.x - 1, s.y);
    const int east = seg.label_at(s.x, s.y);
    return s.y == cy ? std::pair{east, west} : std::pair{west, east};
  }

  // Walks from a corner through a starting segment until a junction (or the
  // start corner, for loops) is reached. Marks segments used.
  BoundaryChain walk(int cx, int cy, Incident first, bool stop_at_start) {
    BoundaryChain chain;
    chain.vertices.emplace_back(cx, cy);
    std::tie(chain.left_region, chain.right_region) = sides(first, cx, cy);
    Incident cur = first;
    int x = cx, y = cy;
    while (true) {
      mark_used(cur);
      std::tie(x, y) = other_end(cur, x, y);
      chain.vertices.emplace_back(x, y);
      if (is_junction(x, y)) break;
      if (stop_at_start && x == cx && y == cy) break;
      std::array<Incident, 4> inc;
      const int count = incident(x, y, inc);
      Incident next{};
      int unused = 0;
      for (int i = 0; i < count; ++i)
        if (!seg_used(inc[i])) {
          next = inc[i];
          ++unused;
        }
      if (unused != 1) break;  // defensive; degree-2 corners have exactly one
      cur = next;
    }
    return chain;
  }
};

}  // namespace

std::vector<BoundaryChain> extract_boundaries(const Segmentation& seg) {
  Tracer tracer(seg);
  std::vector<BoundaryChain> chains;

  // Chains anchored at junction corners.
  for (int cy = 0; cy <= seg.height; ++cy)
    for (int cx = 0; cx <= seg.width; ++cx) {
      if (!tracer.is_junction(cx, cy)) continue;
      std::array<Tracer::Incident, 4> inc;
      const int count = tracer.incident(cx, cy, inc);
      for (int i = 0; i < count; ++i)
        if (!tracer.seg_used(inc[i])) chains.push_back(tracer.walk(cx, cy, inc[i], false));
    }

  // Remaining segments form closed loops (a region fully inside another).
  // Cut each loop at the corner nearest the midpoint of the two generators
  // and at the corner halfway around, leaving two open chains.
  auto trace_loops = [&](bool horizontal, int xmax, int ymax) {
    for (int y = 0; y <= ymax; ++y)
      for (int x = 0; x <= xmax; ++x) {
        const bool boundary = horizontal ? tracer.boundary_h(x, y) : tracer.boundary_v(x, y);
        if (!boundary) continue;
        const Tracer::Incident start{horizontal, x, y};
        if (tracer.seg_used(start)) continue;
        BoundaryChain loop = tracer.walk(x, y, start, true);
        const std::size_t n = loop.vertices.size() - 1;  // distinct corners
        const Point mid =
            0.5 * (seg.generators[loop.left_region] + seg.generators[loop.right_region]);
        std::size_t cut = 0;
        Scalar best = (loop.vertices[0] - mid).squaredNorm();
        for (std::size_t i = 1; i < n; ++i) {
          const Scalar d = (loop.vertices[i] - mid).squaredNorm();
          if (d < best) {
            best = d;
            cut = i;
          }
        }
        auto at = [&](std::size_t i) { return loop.vertices[(cut + i) % n]; };
        const std::size_t half = n / 2;
        BoundaryChain first{{}, loop.left_region, loop.right_region};
        BoundaryChain second{{}, loop.left_region, loop.right_region};
        for (std::size_t i = 0; i <= half; ++i) first.vertices.push_back(at(i));
        for (std::size_t i = half; i <= n; ++i) second.vertices.push_back(at(i));
        chains.push_back(std::move(first));
        chains.push_back(std::move(second));
      }
  };
  trace_loops(true, seg.width - 1, seg.height);
  trace_loops(false, seg.width, seg.height - 1);

  return chains;
}

namespace {

Scalar point_to_segment(const Point& p, const Point& a, const Point& b) {
  const Point d = b - a;
  const Scalar len2 = d.squaredNorm();
  if (len2 == 0) return (p - a).norm();
  const Scalar t = std::clamp((p - a).dot(d) / len2, 0.0, 1.0);
  return (p - (a + t * d)).norm();
}

}  // namespace

std::vector<Point> douglas_peucker(const std::vector<Point>& points, Scalar eps) {
  if (points.size() < 2) throw std::invalid_argument("polyline needs at least 2 points");
  if (eps < 0) throw std::invalid_argument("tolerance must be >= 0");
  const std::size_t n = points.size();
  std::vector<char> keep(n, 0);
  keep[0] = keep[n - 1] = 1;
  std::vector<std::pair<std::size_t, std::size_t>> stack{{0, n - 1}};
  while (!stack.empty()) {
    const auto [lo, hi] = stack.back();
    stack.pop_back();
    if (hi - lo < 2) continue;
    std::size_t split = lo;
    Scalar max_dist = -1;
    for (std::size_t i = lo + 1; i < hi; ++i) {
      const Scalar d = point_to_segment(points[i], points[lo], points[hi]);
      if (d > max_dist) {
        max_dist = d;
        split = i;
      }
    }
    if (max_dist > eps) {
      keep[split] = 1;
      stack.emplace_back(lo, split);
      stack.emplace_back(split, hi);
    }
  }
  std::vector<Point> out;
  for (std::size_t i = 0; i < n; ++i)
    if (keep[i]) out.push_back(points[i]);
  return out;
}

std::vector<BoundaryChain> simplify_chains(std::vector<BoundaryChain> chains, Scalar eps) {
  for (BoundaryChain& chain : chains) chain.vertices = douglas_peucker(chain.vertices, eps);
  return chains;
}

VoronoiGraph build_voronoi_graph(const std::vector<BoundaryChain>& chains) {
  VoronoiGraph graph;
  std::map<std::pair<Scalar, Scalar>, int> index;
  auto vertex_id = [&](const Point& p) {
    const auto [it, inserted] = index.try_emplace({p.x(), p.y()}, 0);
    if (inserted) {
      it->second = static_cast<int>(graph.vertices.size());
      graph.vertices.push_back(p);
    }
    return it->second;
  };
  std::set<std::tuple<int, int, int, int>> seen;
  for (const BoundaryChain& chain : chains) {
    for (std::size_t i = 0; i + 1 < chain.vertices.size(); ++i) {
      const Point& p = chain.vertices[i];
      const Point& q = chain.vertices[i + 1];
      if (p == q) {
        ++graph.dropped_degenerate;
        continue;
      }
      const int a = vertex_id(p);
      const int b = vertex_id(q);
      const auto key = std::make_tuple(std::min(a, b), std::max(a, b),
                                       std::min(chain.left_region, chain.right_region),
                                       std::max(chain.left_region, chain.right_region));
      if (seen.insert(key).second)
        graph.edges.push_back({a, b, chain.left_region, chain.right_region});
    }
  }
  return graph;
}

}  // namespace vgcn
