#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>

namespace vgcn {

using Scalar = double;

template <typename S>
using MatrixX = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
template <typename S>
using VectorX = Eigen::Matrix<S, Eigen::Dynamic, 1>;

// All numeric work runs in double; row-major to match the on-disk layout.
using Matrix = MatrixX<Scalar>;
using Vector = VectorX<Scalar>;
using Point = Eigen::Vector2d;

// Malformed or truncated input data. Maps to process exit code 2.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A computation degenerated numerically (non-finite loss, zero-degree
// normalization, ...). Maps to process exit code 3.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace vgcn
