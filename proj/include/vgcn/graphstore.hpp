#pragma once

#include "vgcn/dualgraph.hpp"
#include "vgcn/types.hpp"

#include <cstdint>
#include <filesystem>
#include <utility>
#include <vector>

namespace vgcn {

// One converted graph: per-node features, undirected edge list and a class
// label. The on-disk form is fixed little-endian (see write_graphs).
struct GraphRecord {
  int label = 0;
  Matrix features;  // nodes x feature_width
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;

  int node_count() const { return static_cast<int>(features.rows()); }
  int feature_width() const { return static_cast<int>(features.cols()); }
};

GraphRecord to_record(const DelaunayGraph& graph, int label);

// "VGR1" container:
//   magic(4) | version(1) | record_count(8 LE) | feature_width(4 LE) |
//   records: node_count(4) | edge_count(4) | label(4) |
//            features (node_count*feature_width f64 LE) |
//            edges (edge_count pairs of u32 LE)
// Returns the number of bytes written. Round-trips are lossless.
std::uint64_t write_graphs(const std::filesystem::path& path,
                           const std::vector<GraphRecord>& records);
std::vector<GraphRecord> read_graphs(const std::filesystem::path& path);

// Block-diagonal union of several graphs: features stacked, edges shifted
// by each graph's node offset, one graph id per node.
struct Batch {
  Matrix features;  // total_nodes x F
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  std::vector<int> graph_id;     // per node, non-decreasing
  std::vector<int> labels;       // per graph
  std::vector<int> node_offset;  // size graph_count()+1

  int graph_count() const { return static_cast<int>(labels.size()); }
  int total_nodes() const { return static_cast<int>(features.rows()); }
};

Batch batch_graphs(const std::vector<GraphRecord>& records);
Batch batch_graphs(const std::vector<const GraphRecord*>& records);

}  // namespace vgcn
