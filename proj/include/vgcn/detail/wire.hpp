#pragma once

#include "vgcn/types.hpp"

#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>

namespace vgcn::detail {

// Fixed little-endian encoding, independent of host byte order.
class ByteWriter {
 public:
  void u8(std::uint8_t v) { out_.push_back(static_cast<char>(v)); }
  void u32(std::uint32_t v) { uint(v, 4); }
  void u64(std::uint64_t v) { uint(v, 8); }
  void f64(double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, 8);
    u64(bits);
  }
  void raw(const char* data, std::size_t n) { out_.append(data, n); }

  const std::string& bytes() const { return out_; }

  std::uint64_t save(const std::filesystem::path& path) const {
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw FormatError("cannot open file for writing: " + path.string());
    file.write(out_.data(), static_cast<std::streamsize>(out_.size()));
    if (!file) throw FormatError("write failed: " + path.string());
    return out_.size();
  }

 private:
  void uint(std::uint64_t v, int n) {
    for (int i = 0; i < n; ++i) out_.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  }

  std::string out_;
};

class ByteReader {
 public:
  explicit ByteReader(const std::filesystem::path& path) : path_(path.string()) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open file: " + path_);
    bytes_.assign((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  }

  std::uint8_t u8() { return static_cast<std::uint8_t>(uint(1)); }
  std::uint32_t u32() { return static_cast<std::uint32_t>(uint(4)); }
  std::uint64_t u64() { return uint(8); }
  double f64() {
    const std::uint64_t bits = u64();
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
  }
  void expect_magic(const char magic[4], const char* what) {
    if (bytes_.size() < 4 || std::memcmp(bytes_.data(), magic, 4) != 0)
      throw FormatError(path_ + ": bad magic, not a " + what + " file");
    pos_ = 4;
  }
  void expect_end() const {
    if (pos_ != bytes_.size()) throw FormatError(path_ + ": trailing bytes");
  }
  std::size_t remaining() const { return bytes_.size() - pos_; }
  const std::string& path() const { return path_; }

 private:
  std::uint64_t uint(int n) {
    if (pos_ + n > bytes_.size()) throw FormatError(path_ + ": truncated file");
    std::uint64_t v = 0;
    for (int i = 0; i < n; ++i)
      v |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes_[pos_ + i])) << (8 * i);
    pos_ += n;
    return v;
  }

  std::string path_;
  std::string bytes_;
  std::size_t pos_ = 0;
};

}  // namespace vgcn::detail
