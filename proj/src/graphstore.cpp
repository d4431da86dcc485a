#include "vgcn/graphstore.hpp"

#include "vgcn/detail/wire.hpp"

#include <string>

namespace vgcn {

namespace {

constexpr char kMagic[4] = {'V', 'G', 'R', '1'};
constexpr std::uint8_t kVersion = 1;

}  // namespace

GraphRecord to_record(const DelaunayGraph& graph, int label) {
  GraphRecord record;
  record.label = label;
  record.features = graph.features;
  record.edges.reserve(graph.edges.size());
  for (const auto& [a, b] : graph.edges)
    record.edges.emplace_back(static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b));
  return record;
}

std::uint64_t write_graphs(const std::filesystem::path& path,
                           const std::vector<GraphRecord>& records) {
  const int feature_width = records.empty() ? 0 : records.front().feature_width();
  detail::ByteWriter out;
  out.raw(kMagic, 4);
  out.u8(kVersion);
  out.u64(records.size());
  out.u32(static_cast<std::uint32_t>(feature_width));
  for (const GraphRecord& record : records) {
    if (record.feature_width() != feature_width)
      throw std::invalid_argument("write_graphs: records must share one feature width");
    out.u32(static_cast<std::uint32_t>(record.node_count()));
    out.u32(static_cast<std::uint32_t>(record.edges.size()));
    out.u32(static_cast<std::uint32_t>(record.label));
    for (int i = 0; i < record.node_count(); ++i)
      for (int j = 0; j < feature_width; ++j) out.f64(record.features(i, j));
    for (const auto& [a, b] : record.edges) {
      out.u32(a);
      out.u32(b);
    }
  }
  return out.save(path);
}

std::vector<GraphRecord> read_graphs(const std::filesystem::path& path) {
  detail::ByteReader reader(path);
  reader.expect_magic(kMagic, "VGR1");
  const std::uint8_t version = reader.u8();
  if (version != kVersion)
    throw FormatError(path.string() + ": unsupported VGR version " + std::to_string(version));
  const std::uint64_t count = reader.u64();
  const std::uint32_t feature_width = reader.u32();
  std::vector<GraphRecord> records;
  records.reserve(count);
  for (std::uint64_t r = 0; r < count; ++r) {
    GraphRecord record;
    const std::uint32_t nodes = reader.u32();
    const std::uint32_t edge_count = reader.u32();
    record.label = static_cast<int>(reader.u32());
    record.features.resize(nodes, feature_width);
    for (std::uint32_t i = 0; i < nodes; ++i)
      for (std::uint32_t j = 0; j < feature_width; ++j) record.features(i, j) = reader.f64();
    record.edges.reserve(edge_count);
    for (std::uint32_t e = 0; e < edge_count; ++e) {
      const std::uint32_t a = reader.u32();
      const std::uint32_t b = reader.u32();
      if (a >= nodes || b >= nodes)
        throw FormatError(path.string() + ": edge index out of range in record " +
                          std::to_string(r));
      record.edges.emplace_back(a, b);
    }
    records.push_back(std::move(record));
  }
  reader.expect_end();
  return records;
}

Batch batch_graphs(const std::vector<const GraphRecord*>& records) {
  if (records.empty()) throw std::invalid_argument("batch_graphs: empty batch");
  const int feature_width = records.front()->feature_width();
  int total_nodes = 0;
  for (const GraphRecord* record : records) {
    if (record->feature_width() != feature_width)
      throw std::invalid_argument("batch_graphs: mixed feature widths");
    total_nodes += record->node_count();
  }
  Batch batch;
  batch.features.resize(total_nodes, feature_width);
  batch.graph_id.resize(total_nodes);
  batch.node_offset.assign(1, 0);
  int offset = 0;
  for (std::size_t g = 0; g < records.size(); ++g) {
    const GraphRecord& record = *records[g];
    batch.features.middleRows(offset, record.node_count()) = record.features;
    for (int i = 0; i < record.node_count(); ++i) batch.graph_id[offset + i] = static_cast<int>(g);
    for (const auto& [a, b] : record.edges) batch.edges.emplace_back(a + offset, b + offset);
    batch.labels.push_back(record.label);
    offset += record.node_count();
    batch.node_offset.push_back(offset);
  }
  return batch;
}

Batch batch_graphs(const std::vector<GraphRecord>& records) {
  std::vector<const GraphRecord*> pointers;
  pointers.reserve(records.size());
  for (const GraphRecord& record : records) pointers.push_back(&record);
  return batch_graphs(pointers);
}

}  // namespace vgcn
