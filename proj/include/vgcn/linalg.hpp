#pragma once

#include "vgcn/types.hpp"

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

namespace vgcn {

// Cost-model stages: the two diagonal degree scalings, the sparse adjacency
// product, and the dense weight product. Everything else lands in `other`.
enum class Stage { deg_scale_pre = 0, adjacency, deg_scale_post, weight, other };
constexpr int kStageCount = 5;

// Running count of scalar multiplications, attributable to named stages.
// Monotone non-decreasing between resets.
class MultCounter {
 public:
  void add(Stage s, std::int64_t n) { counts_[static_cast<int>(s)] += n; }
  std::int64_t stage(Stage s) const { return counts_[static_cast<int>(s)]; }
  std::int64_t total() const {
    std::int64_t sum = 0;
    for (auto c : counts_) sum += c;
    return sum;
  }
  void reset() { counts_.fill(0); }

 private:
  std::array<std::int64_t, kStageCount> counts_{};
};

// Structurally symmetric CSR matrix with a constant diagonal (the self-loop
// weight). Off-diagonal entries are the symmetric closure of an edge list
// with unit weights; degree_normalize rescales a copy's values in place.
class SparseAdjacency {
 public:
  SparseAdjacency() = default;

  int node_count() const { return static_cast<int>(row_offsets_.size()) - 1; }
  std::int64_t nnz() const { return static_cast<std::int64_t>(values_.size()); }
  Scalar self_loop_weight() const { return self_loop_; }

  const std::vector<int>& row_offsets() const { return row_offsets_; }
  const std::vector<int>& col_indices() const { return col_indices_; }
  const std::vector<Scalar>& values() const { return values_; }
  std::vector<Scalar>& mutable_values() { return values_; }

  Matrix to_dense() const;
  Vector row_sums() const;

  friend SparseAdjacency sparse_from_edges(const std::vector<std::pair<int, int>>& edges,
                                           int node_count, Scalar self_loop_weight);

 private:
  std::vector<int> row_offsets_{0};
  std::vector<int> col_indices_;
  std::vector<Scalar> values_;
  Scalar self_loop_ = 0;
};

// Symmetric closure of `edges` with unit weights plus a diagonal of
// `self_loop_weight`. self_loop_weight = 1 reproduces A + I.
SparseAdjacency sparse_from_edges(const std::vector<std::pair<int, int>>& edges, int node_count,
                                  Scalar self_loop_weight);

// Stored edge lists use u32 indices; adjacency construction wants ints.
std::vector<std::pair<int, int>> to_int_edges(
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges);

// Exact dense product; charges rows*inner*cols multiplications.
Matrix dense_matmul(const Matrix& a, const Matrix& b, MultCounter* counter = nullptr,
                    Stage stage = Stage::weight);

// Sparse-dense product; charges nnz * columns multiplications.
Matrix spmm(const SparseAdjacency& adj, const Matrix& h, MultCounter* counter = nullptr,
            Stage stage = Stage::adjacency);

// diag(d) * H; charges rows * columns multiplications.
Matrix row_scale(const Vector& d, const Matrix& h, MultCounter* counter = nullptr,
                 Stage stage = Stage::deg_scale_pre);

// value(i,j) -> value(i,j) / sqrt(d_i d_j) with d the row sums of the input.
// Charges 2*nnz; throws NumericError on a zero-degree row. The per-apply
// degree scalings of a layer are charged by the layer, not here.
SparseAdjacency degree_normalize(const SparseAdjacency& adj, MultCounter* counter = nullptr);

// Shannon entropy in nats of a probability vector (must be non-negative and
// sum to 1 within 1e-6).
Scalar feature_entropy(const std::vector<Scalar>& probs);

}  // namespace vgcn
