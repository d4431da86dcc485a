#include "vgcn/graphstore.hpp"

#include "test_helpers.hpp"

#include <doctest.h>

#include <fstream>
#include <random>

using namespace vgcn;
using test::TempDir;

namespace {

std::vector<char> read_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

bool records_equal(const GraphRecord& a, const GraphRecord& b) {
  return a.label == b.label && a.edges == b.edges && a.features.rows() == b.features.rows() &&
         a.features.cols() == b.features.cols() && (a.features - b.features).norm() == 0.0;
}

}  // namespace

TEST_CASE("write/read: lossless round trip, byte-identical rewrite") {
  TempDir dir("vgr");
  std::mt19937_64 rng(3);
  std::vector<GraphRecord> records;
  for (int i = 0; i < 3; ++i) records.push_back(test::random_record(rng));

  const auto bytes = write_graphs(dir.file("a.vgr"), records);
  CHECK(bytes > 0);
  const auto loaded = read_graphs(dir.file("a.vgr"));
  REQUIRE(loaded.size() == records.size());
  for (std::size_t i = 0; i < records.size(); ++i) CHECK(records_equal(records[i], loaded[i]));

  write_graphs(dir.file("b.vgr"), loaded);
  CHECK(read_bytes(dir.file("a.vgr")) == read_bytes(dir.file("b.vgr")));
}

TEST_CASE("write/read: empty record list") {
  TempDir dir("vgr");
  write_graphs(dir.file("empty.vgr"), {});
  CHECK(read_graphs(dir.file("empty.vgr")).empty());
}

TEST_CASE("read: wrong magic and truncation") {
  TempDir dir("vgr");
  {
    std::ofstream out(dir.file("bad.vgr"), std::ios::binary);
    out << "NOPE and some more bytes";
  }
  CHECK_THROWS_AS(read_graphs(dir.file("bad.vgr")), FormatError);

  std::mt19937_64 rng(5);
  write_graphs(dir.file("ok.vgr"), {test::random_record(rng)});
  auto bytes = read_bytes(dir.file("ok.vgr"));
  bytes.resize(bytes.size() - 3);
  {
    std::ofstream out(dir.file("cut.vgr"), std::ios::binary);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  }
  CHECK_THROWS_AS(read_graphs(dir.file("cut.vgr")), FormatError);
}

TEST_CASE("batch_graphs: 3 + 4 nodes") {
  GraphRecord a;
  a.label = 2;
  a.features = Matrix::Ones(3, 3);
  a.edges = {{0, 1}, {1, 2}};
  GraphRecord b;
  b.label = 5;
  b.features = 2.0 * Matrix::Ones(4, 3);
  b.edges = {{0, 3}};

  const Batch batch = batch_graphs(std::vector<GraphRecord>{a, b});
  CHECK(batch.total_nodes() == 7);
  CHECK(batch.graph_id == std::vector<int>{0, 0, 0, 1, 1, 1, 1});
  CHECK(batch.labels == std::vector<int>{2, 5});
  CHECK(batch.node_offset == std::vector<int>{0, 3, 7});
  REQUIRE(batch.edges.size() == 3);
  CHECK(batch.edges[2] == std::pair<std::uint32_t, std::uint32_t>{3, 6});
}

TEST_CASE("batch_graphs: single graph is the identity") {
  std::mt19937_64 rng(7);
  const GraphRecord record = test::random_record(rng);
  const Batch batch = batch_graphs(std::vector<GraphRecord>{record});
  CHECK(batch.total_nodes() == record.node_count());
  CHECK((batch.features - record.features).norm() == 0.0);
  CHECK(batch.edges == record.edges);
  CHECK(batch.labels == std::vector<int>{record.label});
}

TEST_CASE("batch_graphs: block-diagonal, and unbatching recovers the originals") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<GraphRecord> records;
    const int count = 1 + static_cast<int>(rng() % 6);
    for (int i = 0; i < count; ++i) records.push_back(test::random_record(rng));
    const Batch batch = batch_graphs(records);

    // No edge crosses a graph boundary.
    for (const auto& [a, b] : batch.edges) {
      CHECK(batch.graph_id[a] == batch.graph_id[b]);
    }
    // Non-decreasing graph ids partitioned by offsets.
    for (std::size_t i = 1; i < batch.graph_id.size(); ++i)
      CHECK(batch.graph_id[i] >= batch.graph_id[i - 1]);

    // Unbatch and compare.
    for (int g = 0; g < batch.graph_count(); ++g) {
      const int start = batch.node_offset[g];
      const int nodes = batch.node_offset[g + 1] - start;
      CHECK(nodes == records[g].node_count());
      CHECK((batch.features.middleRows(start, nodes) - records[g].features).norm() == 0.0);
      CHECK(batch.labels[g] == records[g].label);
      std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
      for (const auto& [a, b] : batch.edges)
        if (batch.graph_id[a] == g)
          edges.emplace_back(a - start, b - start);
      CHECK(edges == records[g].edges);
    }
  }
}

TEST_CASE("batch_graphs: mixed feature widths and empty batch are rejected") {
  GraphRecord a;
  a.features = Matrix::Ones(2, 3);
  GraphRecord b;
  b.features = Matrix::Ones(2, 5);
  CHECK_THROWS_AS(batch_graphs(std::vector<GraphRecord>{a, b}), std::invalid_argument);
  CHECK_THROWS_AS(batch_graphs(std::vector<GraphRecord>{}), std::invalid_argument);
}
