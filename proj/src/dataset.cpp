#include "vgcn/dataset.hpp"

#include <cstdio>
#include <fstream>
#include <string>

namespace vgcn {

namespace {

constexpr std::uint32_t kImagesMagic = 0x00000803;
constexpr std::uint32_t kLabelsMagic = 0x00000801;
constexpr std::size_t kCifarRecordBytes = 3073;  // 1 label + 3*1024 pixels
constexpr int kClassCount = 10;

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open file: " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return bytes;
}

std::uint32_t read_be_u32(const std::vector<std::uint8_t>& b, std::size_t off) {
  return (std::uint32_t(b[off]) << 24) | (std::uint32_t(b[off + 1]) << 16) |
         (std::uint32_t(b[off + 2]) << 8) | std::uint32_t(b[off + 3]);
}

void write_be_u32(std::ofstream& out, std::uint32_t v) {
  const std::uint8_t b[4] = {std::uint8_t(v >> 24), std::uint8_t(v >> 16), std::uint8_t(v >> 8),
                             std::uint8_t(v)};
  out.write(reinterpret_cast<const char*>(b), 4);
}

}  // namespace

std::vector<RawImage> load_idx_images(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  if (bytes.size() < 16) throw FormatError(path.string() + ": truncated IDX image header");
  if (read_be_u32(bytes, 0) != kImagesMagic)
    throw FormatError(path.string() + ": bad IDX image magic");
  const std::uint32_t count = read_be_u32(bytes, 4);
  const std::uint32_t rows = read_be_u32(bytes, 8);
  const std::uint32_t cols = read_be_u32(bytes, 12);
  const std::size_t expected = 16 + std::size_t(count) * rows * cols;
  if (bytes.size() != expected)
    throw FormatError(path.string() + ": IDX payload length mismatch (expected " +
                      std::to_string(expected) + " bytes, got " + std::to_string(bytes.size()) +
                      ")");
  std::vector<RawImage> images(count);
  std::size_t off = 16;
  for (std::uint32_t i = 0; i < count; ++i) {
    RawImage& img = images[i];
    img.width = static_cast<int>(cols);
    img.height = static_cast<int>(rows);
    img.channels = 1;
    img.data.assign(bytes.begin() + off, bytes.begin() + off + std::size_t(rows) * cols);
    off += std::size_t(rows) * cols;
  }
  return images;
}

std::vector<int> load_idx_labels(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  if (bytes.size() < 8) throw FormatError(path.string() + ": truncated IDX label header");
  if (read_be_u32(bytes, 0) != kLabelsMagic)
    throw FormatError(path.string() + ": bad IDX label magic");
  const std::uint32_t count = read_be_u32(bytes, 4);
  if (bytes.size() != 8 + std::size_t(count))
    throw FormatError(path.string() + ": IDX label payload length mismatch");
  std::vector<int> labels(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    const int label = bytes[8 + i];
    if (label >= kClassCount)
      throw FormatError(path.string() + ": label " + std::to_string(label) +
                        " out of range for a 10-class dataset");
    labels[i] = label;
  }
  return labels;
}

void write_idx_images(const std::filesystem::path& path, const std::vector<RawImage>& images) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("cannot open file for writing: " + path.string());
  const int rows = images.empty() ? 0 : images.front().height;
  const int cols = images.empty() ? 0 : images.front().width;
  write_be_u32(out, kImagesMagic);
  write_be_u32(out, static_cast<std::uint32_t>(images.size()));
  write_be_u32(out, static_cast<std::uint32_t>(rows));
  write_be_u32(out, static_cast<std::uint32_t>(cols));
  for (const RawImage& img : images) {
    if (img.channels != 1 || img.height != rows || img.width != cols)
      throw std::invalid_argument("IDX images must be single-channel and uniformly sized");
    out.write(reinterpret_cast<const char*>(img.data.data()),
              static_cast<std::streamsize>(img.data.size()));
  }
}

void write_idx_labels(const std::filesystem::path& path, const std::vector<int>& labels) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("cannot open file for writing: " + path.string());
  write_be_u32(out, kLabelsMagic);
  write_be_u32(out, static_cast<std::uint32_t>(labels.size()));
  for (int label : labels) {
    if (label < 0 || label >= kClassCount)
      throw std::invalid_argument("label out of range for a 10-class dataset");
    const auto b = static_cast<std::uint8_t>(label);
    out.write(reinterpret_cast<const char*>(&b), 1);
  }
}

LabeledSet load_cifar10_batch(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  if (bytes.size() % kCifarRecordBytes != 0)
    throw FormatError(path.string() + ": file length is not a multiple of 3073");
  const std::size_t count = bytes.size() / kCifarRecordBytes;
  LabeledSet set;
  set.images.resize(count);
  set.labels.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t base = i * kCifarRecordBytes;
    const int label = bytes[base];
    if (label >= kClassCount)
      throw FormatError(path.string() + ": label " + std::to_string(label) +
                        " out of range for a 10-class dataset");
    set.labels[i] = label;
    RawImage& img = set.images[i];
    img.width = 32;
    img.height = 32;
    img.channels = 3;
    img.data.resize(32 * 32 * 3);
    // Channel-planar record -> channel-interleaved row-major image.
    for (int y = 0; y < 32; ++y)
      for (int x = 0; x < 32; ++x)
        for (int c = 0; c < 3; ++c)
          img.data[(std::size_t(y) * 32 + x) * 3 + c] =
              bytes[base + 1 + std::size_t(c) * 1024 + std::size_t(y) * 32 + x];
  }
  return set;
}

}  // namespace vgcn
