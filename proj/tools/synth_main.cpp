// Writes a procedurally generated glyph corpus as IDX image/label files,
// for running the pipeline without dataset files on disk.

#include "vgcn/synthdata.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"Generate a synthetic 28x28 glyph corpus in IDX format"};
  std::string out_dir = ".";
  std::string prefix = "train";
  int count = 1000;
  std::uint64_t seed = 0;
  app.add_option("--out-dir", out_dir, "Output directory")->capture_default_str();
  app.add_option("--prefix", prefix, "File prefix (train or t10k)")->capture_default_str();
  app.add_option("--count", count, "Number of images")->capture_default_str();
  app.add_option("--seed", seed, "RNG seed")->envname("VGCN_SEED");
  CLI11_PARSE(app, argc, argv);

  const std::filesystem::path dir(out_dir);
  std::filesystem::create_directories(dir);
  const auto set = vgcn::make_synthetic_digits(count, seed);
  const auto images = dir / (prefix + "-images-idx3-ubyte");
  const auto labels = dir / (prefix + "-labels-idx1-ubyte");
  vgcn::write_idx_pair(images, labels, set);
  std::cout << "wrote " << images.string() << " and " << labels.string() << " (" << count
            << " images)\n";
  return 0;
}
