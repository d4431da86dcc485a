#include "vgcn/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

namespace vgcn {

Matrix SparseAdjacency::to_dense() const {
  const int m = node_count();
  Matrix dense = Matrix::Zero(m, m);
  for (int i = 0; i < m; ++i)
    for (int k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k)
      dense(i, col_indices_[k]) = values_[k];
  return dense;
}

Vector SparseAdjacency::row_sums() const {
  const int m = node_count();
  Vector sums = Vector::Zero(m);
  for (int i = 0; i < m; ++i)
    for (int k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) sums[i] += values_[k];
  return sums;
}

SparseAdjacency sparse_from_edges(const std::vector<std::pair<int, int>>& edges, int node_count,
                                  Scalar self_loop_weight) {
  if (node_count < 0) throw std::invalid_argument("node count must be non-negative");
  // Column sets per row: diagonal plus the symmetric closure of the edges.
  std::vector<std::set<int>> columns(node_count);
  for (int i = 0; i < node_count; ++i) columns[i].insert(i);
  for (const auto& [a, b] : edges) {
    if (a < 0 || a >= node_count || b < 0 || b >= node_count)
      throw std::invalid_argument("edge index out of range: (" + std::to_string(a) + "," +
                                  std::to_string(b) + ")");
    if (a == b) continue;
    columns[a].insert(b);
    columns[b].insert(a);
  }
  SparseAdjacency adj;
  adj.self_loop_ = self_loop_weight;
  adj.row_offsets_.assign(1, 0);
  adj.row_offsets_.reserve(node_count + 1);
  for (int i = 0; i < node_count; ++i) {
    for (int j : columns[i]) {
      adj.col_indices_.push_back(j);
      adj.values_.push_back(i == j ? self_loop_weight : 1.0);
    }
    adj.row_offsets_.push_back(static_cast<int>(adj.col_indices_.size()));
  }
  return adj;
}

std::vector<std::pair<int, int>> to_int_edges(
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges) {
  std::vector<std::pair<int, int>> converted;
  converted.reserve(edges.size());
  for (const auto& [a, b] : edges)
    converted.emplace_back(static_cast<int>(a), static_cast<int>(b));
  return converted;
}

Matrix dense_matmul(const Matrix& a, const Matrix& b, MultCounter* counter, Stage stage) {
  if (a.cols() != b.rows()) throw std::invalid_argument("dense_matmul: inner dimensions differ");
  if (counter) counter->add(stage, static_cast<std::int64_t>(a.rows()) * a.cols() * b.cols());
  return a * b;
}

Matrix spmm(const SparseAdjacency& adj, const Matrix& h, MultCounter* counter, Stage stage) {
  if (adj.node_count() != h.rows())
    throw std::invalid_argument("spmm: adjacency and feature row counts differ");
  if (counter) counter->add(stage, adj.nnz() * h.cols());
  Matrix out = Matrix::Zero(h.rows(), h.cols());
  const auto& offsets = adj.row_offsets();
  const auto& cols = adj.col_indices();
  const auto& vals = adj.values();
  for (int i = 0; i < adj.node_count(); ++i)
    for (int k = offsets[i]; k < offsets[i + 1]; ++k) out.row(i) += vals[k] * h.row(cols[k]);
  return out;
}

Matrix row_scale(const Vector& d, const Matrix& h, MultCounter* counter, Stage stage) {
  if (d.size() != h.rows()) throw std::invalid_argument("row_scale: size mismatch");
  if (counter) counter->add(stage, static_cast<std::int64_t>(h.rows()) * h.cols());
  return d.asDiagonal() * h;
}

SparseAdjacency degree_normalize(const SparseAdjacency& adj, MultCounter* counter) {
  const Vector degrees = adj.row_sums();
  for (int i = 0; i < adj.node_count(); ++i)
    if (degrees[i] <= 0)
      throw NumericError("degree_normalize: row " + std::to_string(i) + " has sum <= 0");
  const Vector inv_sqrt = degrees.array().rsqrt().matrix();
  SparseAdjacency out = adj;
  const auto& offsets = out.row_offsets();
  const auto& cols = out.col_indices();
  auto& vals = out.mutable_values();
  for (int i = 0; i < out.node_count(); ++i)
    for (int k = offsets[i]; k < offsets[i + 1]; ++k)
      vals[k] *= inv_sqrt[i] * inv_sqrt[cols[k]];
  if (counter) counter->add(Stage::other, 2 * adj.nnz());
  return out;
}

Scalar feature_entropy(const std::vector<Scalar>& probs) {
  Scalar sum = 0;
  for (Scalar p : probs) {
    if (p < 0) throw std::invalid_argument("feature_entropy: negative probability");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-6)
    throw std::invalid_argument("feature_entropy: probabilities must sum to 1");
  Scalar h = 0;
  for (Scalar p : probs)
    if (p > 0) h -= p * std::log(p);
  return h;
}

}  // namespace vgcn
