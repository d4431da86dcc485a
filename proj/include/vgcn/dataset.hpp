#pragma once

#include "vgcn/image.hpp"

#include <filesystem>
#include <vector>

namespace vgcn {

// Images with their class indices (0-9).
struct LabeledSet {
  std::vector<RawImage> images;
  std::vector<int> labels;

  std::size_t size() const { return images.size(); }
};

// IDX container (big-endian magic + dims, raw ubyte payload).
//   images: 0x00000803 | count | rows | cols | pixels
//   labels: 0x00000801 | count | bytes
// Parsing is strict: any variant header is a FormatError.
std::vector<RawImage> load_idx_images(const std::filesystem::path& path);
std::vector<int> load_idx_labels(const std::filesystem::path& path);

// Writers for the same container; write(load(f)) reproduces f bit-exactly.
void write_idx_images(const std::filesystem::path& path, const std::vector<RawImage>& images);
void write_idx_labels(const std::filesystem::path& path, const std::vector<int>& labels);

// CIFAR-10 binary batch: 3073-byte records, 1 label byte + 3x1024
// channel-planar pixels. Output images are 32x32x3 channel-interleaved.
LabeledSet load_cifar10_batch(const std::filesystem::path& path);

}  // namespace vgcn
