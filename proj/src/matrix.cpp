#include "torhom/matrix.hpp"

#include <algorithm>
#include <sstream>

namespace torhom {

PolyMatrix::PolyMatrix(PolyRingPtr ring, size_t rows, size_t cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols) {
  ent_.assign(rows * cols, Poly(ring_));
  row_degs_.assign(rows, 0);
  col_degs_.assign(cols, 0);
}

PolyMatrix PolyMatrix::identity(const PolyRingPtr& ring, size_t n, std::vector<long> degs) {
  PolyMatrix m(ring, n, n);
  for (size_t i = 0; i < n; ++i) m.at(i, i) = Poly::constant(ring, 1);
  if (!degs.empty()) {
    m.row_degs_ = degs;
    m.col_degs_ = std::move(degs);
  }
  return m;
}

PolyMatrix PolyMatrix::from_rows(const PolyRingPtr& ring,
                                 const std::vector<std::vector<Poly>>& rows) {
  size_t r = rows.size();
  size_t c = r ? rows[0].size() : 0;
  for (const auto& row : rows)
    if (row.size() != c) fail(Err::ShapeMismatch, "ragged matrix rows");
  PolyMatrix m(ring, r, c);
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
  return m;
}

bool PolyMatrix::is_graded() const {
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) {
      const Poly& p = at(i, j);
      if (!p.is_zero() && !p.is_homogeneous_of(col_degs_[j] - row_degs_[i])) return false;
    }
  return true;
}

void PolyMatrix::infer_degrees() {
  row_degs_.assign(rows_, 0);
  col_degs_.assign(cols_, 0);
  std::vector<int> rseen(rows_, 0), cseen(cols_, 0);
  // BFS over the bipartite incidence graph of nonzero entries
  for (size_t start = 0; start < rows_; ++start) {
    if (rseen[start]) continue;
    rseen[start] = 1;
    row_degs_[start] = 0;
    std::vector<std::pair<bool, size_t>> queue{{true, start}};  // (is_row, index)
    while (!queue.empty()) {
      auto [is_row, idx] = queue.back();
      queue.pop_back();
      if (is_row) {
        for (size_t j = 0; j < cols_; ++j) {
          const Poly& p = at(idx, j);
          if (p.is_zero()) continue;
          auto d = p.weighted_degree();
          if (!d) fail(Err::NotGraded, "matrix entry not homogeneous");
          long cd = row_degs_[idx] + *d;
          if (!cseen[j]) {
            cseen[j] = 1;
            col_degs_[j] = cd;
            queue.push_back({false, j});
          } else if (col_degs_[j] != cd) {
            fail(Err::NotGraded, "inconsistent entry degrees in matrix");
          }
        }
      } else {
        for (size_t i = 0; i < rows_; ++i) {
          const Poly& p = at(i, idx);
          if (p.is_zero()) continue;
          auto d = p.weighted_degree();
          if (!d) fail(Err::NotGraded, "matrix entry not homogeneous");
          long rd = col_degs_[idx] - *d;
          if (!rseen[i]) {
            rseen[i] = 1;
            row_degs_[i] = rd;
            queue.push_back({true, i});
          } else if (row_degs_[i] != rd) {
            fail(Err::NotGraded, "inconsistent entry degrees in matrix");
          }
        }
      }
    }
  }
}

PolyMatrix PolyMatrix::mul(const PolyMatrix& o) const {
  if (ring_.get() != o.ring_.get()) fail(Err::RingMismatch, "matrix product over different rings");
  if (cols_ != o.rows_) fail(Err::ShapeMismatch, "matrix product shape mismatch");
  PolyMatrix r(ring_, rows_, o.cols_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < o.cols_; ++j) {
      Poly s(ring_);
      for (size_t k = 0; k < cols_; ++k) {
        const Poly& a = at(i, k);
        const Poly& b = o.at(k, j);
        if (!a.is_zero() && !b.is_zero()) s = s + a * b;
      }
      r.at(i, j) = s;
    }
  r.row_degs_ = row_degs_;
  r.col_degs_ = o.col_degs_;
  return r;
}

PolyMatrix PolyMatrix::transpose() const {
  PolyMatrix r(ring_, cols_, rows_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  for (size_t j = 0; j < cols_; ++j) r.row_degs_[j] = -col_degs_[j];
  for (size_t i = 0; i < rows_; ++i) r.col_degs_[i] = -row_degs_[i];
  return r;
}

PolyMatrix PolyMatrix::direct_sum(const PolyMatrix& o) const {
  if (ring_.get() != o.ring_.get()) fail(Err::RingMismatch, "direct sum over different rings");
  PolyMatrix r(ring_, rows_ + o.rows_, cols_ + o.cols_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
  for (size_t i = 0; i < o.rows_; ++i)
    for (size_t j = 0; j < o.cols_; ++j) r.at(rows_ + i, cols_ + j) = o.at(i, j);
  for (size_t i = 0; i < rows_; ++i) r.row_degs_[i] = row_degs_[i];
  for (size_t i = 0; i < o.rows_; ++i) r.row_degs_[rows_ + i] = o.row_degs_[i];
  for (size_t j = 0; j < cols_; ++j) r.col_degs_[j] = col_degs_[j];
  for (size_t j = 0; j < o.cols_; ++j) r.col_degs_[cols_ + j] = o.col_degs_[j];
  return r;
}

PolyMatrix PolyMatrix::kron_id_right(size_t n, const std::vector<long>& degs) const {
  PolyMatrix r(ring_, rows_ * n, cols_ * n);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j)
      for (size_t b = 0; b < n; ++b) r.at(i * n + b, j * n + b) = at(i, j);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t b = 0; b < n; ++b) r.row_degs_[i * n + b] = row_degs_[i] + degs[b];
  for (size_t j = 0; j < cols_; ++j)
    for (size_t b = 0; b < n; ++b) r.col_degs_[j * n + b] = col_degs_[j] + degs[b];
  return r;
}

PolyMatrix PolyMatrix::kron_id_left(size_t n, const std::vector<long>& degs) const {
  PolyMatrix r(ring_, n * rows_, n * cols_);
  for (size_t a = 0; a < n; ++a)
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j) r.at(a * rows_ + i, a * cols_ + j) = at(i, j);
  for (size_t a = 0; a < n; ++a)
    for (size_t i = 0; i < rows_; ++i) r.row_degs_[a * rows_ + i] = degs[a] + row_degs_[i];
  for (size_t a = 0; a < n; ++a)
    for (size_t j = 0; j < cols_; ++j) r.col_degs_[a * cols_ + j] = degs[a] + col_degs_[j];
  return r;
}

std::vector<Poly> PolyMatrix::col(size_t j) const {
  std::vector<Poly> c;
  c.reserve(rows_);
  for (size_t i = 0; i < rows_; ++i) c.push_back(at(i, j));
  return c;
}

bool PolyMatrix::is_zero() const {
  for (const auto& p : ent_)
    if (!p.is_zero()) return false;
  return true;
}

bool PolyMatrix::operator==(const PolyMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return false;
  for (size_t k = 0; k < ent_.size(); ++k)
    if (!(ent_[k] == o.ent_[k])) return false;
  return true;
}

std::string PolyMatrix::str() const {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < rows_; ++i) {
    if (i) os << "; ";
    os << "[";
    for (size_t j = 0; j < cols_; ++j) {
      if (j) os << ", ";
      os << at(i, j).str();
    }
    os << "]";
  }
  os << "]";
  return os.str();
}

Poly determinant(const PolyMatrix& A) {
  if (A.rows() != A.cols()) fail(Err::ShapeMismatch, "determinant of non-square matrix");
  size_t n = A.rows();
  const auto& ring = A.ring();
  if (n == 0) return Poly::constant(ring, 1);
  if (n == 1) return A.at(0, 0);
  // expand along the row with the most zeros
  size_t best = 0, best_zeros = 0;
  for (size_t i = 0; i < n; ++i) {
    size_t z = 0;
    for (size_t j = 0; j < n; ++j)
      if (A.at(i, j).is_zero()) ++z;
    if (z >= best_zeros) best_zeros = z, best = i;
  }
  Poly det(ring);
  for (size_t j = 0; j < n; ++j) {
    const Poly& a = A.at(best, j);
    if (a.is_zero()) continue;
    PolyMatrix sub(ring, n - 1, n - 1);
    size_t ri = 0;
    for (size_t i = 0; i < n; ++i) {
      if (i == best) continue;
      size_t cj = 0;
      for (size_t k = 0; k < n; ++k) {
        if (k == j) continue;
        sub.at(ri, cj) = A.at(i, k);
        ++cj;
      }
      ++ri;
    }
    Poly term = a * determinant(sub);
    det = ((best + j) % 2 == 0) ? det + term : det - term;
  }
  return det;
}

}  // namespace torhom
