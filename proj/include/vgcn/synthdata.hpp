#pragma once

#include "vgcn/dataset.hpp"

#include <cstdint>

namespace vgcn {

// Procedurally drawn 28x28 grayscale glyphs in ten shape classes (ring,
// bars, diagonals, disc, cross, ...) with jittered placement, thickness and
// intensity. Balanced labels, deterministic for a fixed seed. A stand-in
// corpus with the same container formats and scale as the handwritten-digit
// sets, for tests and demos when no dataset files are on disk.
LabeledSet make_synthetic_digits(int count, std::uint64_t seed);

// Writes a set as an IDX image/label file pair.
void write_idx_pair(const std::filesystem::path& images_path,
                    const std::filesystem::path& labels_path, const LabeledSet& set);

}  // namespace vgcn
