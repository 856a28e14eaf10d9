#pragma once

#include <vector>

#include "torhom/poly.hpp"

namespace torhom {

/// Graded matrix over the ambient polynomial ring. Entry (i,j) is zero or
/// homogeneous of degree col_degs[j] - row_degs[i], so the matrix is a degree-0
/// map between the free modules with those generator degrees.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(PolyRingPtr ring, size_t rows, size_t cols);

  static PolyMatrix identity(const PolyRingPtr& ring, size_t n,
                             std::vector<long> degs = {});
  static PolyMatrix from_rows(const PolyRingPtr& ring,
                              const std::vector<std::vector<Poly>>& rows);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  const PolyRingPtr& ring() const { return ring_; }
  const Poly& at(size_t i, size_t j) const { return ent_[i * cols_ + j]; }
  Poly& at(size_t i, size_t j) { return ent_[i * cols_ + j]; }

  std::vector<long>& row_degs() { return row_degs_; }
  std::vector<long>& col_degs() { return col_degs_; }
  const std::vector<long>& row_degs() const { return row_degs_; }
  const std::vector<long>& col_degs() const { return col_degs_; }

  bool is_graded() const;  // every entry zero or homogeneous of the labelled degree
  /// Infer degree labels from the entries (row 0 of each connected block pinned
  /// to zero). Throws NotGraded when no consistent assignment exists.
  void infer_degrees();

  PolyMatrix mul(const PolyMatrix& o) const;
  PolyMatrix transpose() const;
  PolyMatrix direct_sum(const PolyMatrix& o) const;
  /// A (x) Id_n acting on pair indices (a, b) -> a * n + b.
  PolyMatrix kron_id_right(size_t n, const std::vector<long>& degs) const;
  /// Id_n (x) A acting on pair indices (a, b) -> a * cols/rows + b.
  PolyMatrix kron_id_left(size_t n, const std::vector<long>& degs) const;

  std::vector<Poly> col(size_t j) const;
  bool is_zero() const;
  bool operator==(const PolyMatrix& o) const;

  std::string str() const;

 private:
  PolyRingPtr ring_;
  size_t rows_ = 0, cols_ = 0;
  std::vector<Poly> ent_;  // row-major
  std::vector<long> row_degs_, col_degs_;
};

/// Exact determinant by Laplace expansion along the sparsest row.
Poly determinant(const PolyMatrix& A);

}  // namespace torhom
