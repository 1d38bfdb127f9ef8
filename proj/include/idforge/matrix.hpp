#ifndef IDFORGE_MATRIX_HPP
#define IDFORGE_MATRIX_HPP

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace idforge {

/// Dense matrix over an exact field context F (GfpField or QSqrt2Field).
template <typename F>
class ExactMatrix {
public:
  using Elem = typename F::Elem;

  ExactMatrix(F field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)), rows_(rows), cols_(cols),
        data_(rows * cols, field_.zero()) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const F& field() const { return field_; }

  Elem& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Elem& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<Elem>& data() { return data_; }
  const std::vector<Elem>& data() const { return data_; }

  /// In-place reduced row echelon form via Gauss-Jordan with leftmost-pivot
  /// selection (first nonzero entry scanning rows top to bottom).
  /// Returns the rank.
  std::size_t rref() {
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols_ && rank < rows_; ++col) {
      std::size_t pivot = rows_;
      for (std::size_t i = rank; i < rows_; ++i)
        if (!field_.is_zero(at(i, col))) { pivot = i; break; }
      if (pivot == rows_) continue;
      if (pivot != rank)
        for (std::size_t j = col; j < cols_; ++j)
          std::swap(at(pivot, j), at(rank, j));
      Elem s = field_.inv(at(rank, col));
      for (std::size_t j = col; j < cols_; ++j)
        at(rank, j) = field_.mul(at(rank, j), s);
      for (std::size_t i = 0; i < rows_; ++i) {
        if (i == rank || field_.is_zero(at(i, col))) continue;
        Elem f = at(i, col);
        for (std::size_t j = col; j < cols_; ++j)
          at(i, j) = field_.sub(at(i, j), field_.mul(f, at(rank, j)));
      }
      ++rank;
    }
    return rank;
  }

  std::size_t rank() const {
    ExactMatrix copy = *this;
    return copy.rref();
  }

  /// Canonical nullspace basis: reduce to RREF, set each free variable to 1
  /// in turn (others 0), solve for the pivot variables, then put the basis
  /// itself in RREF form.  Rows are returned in that canonical order.
  std::vector<std::vector<Elem>> nullspace_basis() const {
    ExactMatrix r = *this;
    std::size_t rank = r.rref();
    std::vector<std::size_t> pivot_col;
    std::vector<bool> is_pivot(cols_, false);
    {
      std::size_t col = 0;
      for (std::size_t i = 0; i < rank; ++i) {
        while (col < cols_ && r.field_.is_zero(r.at(i, col))) ++col;
        pivot_col.push_back(col);
        is_pivot[col] = true;
      }
    }
    std::vector<std::vector<Elem>> basis;
    for (std::size_t freec = 0; freec < cols_; ++freec) {
      if (is_pivot[freec]) continue;
      std::vector<Elem> v(cols_, field_.zero());
      v[freec] = field_.one();
      for (std::size_t i = 0; i < rank; ++i)
        v[pivot_col[i]] = field_.neg(r.at(i, freec));
      basis.push_back(std::move(v));
    }
    if (!basis.empty()) {
      ExactMatrix b(field_, basis.size(), cols_);
      for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < cols_; ++j) b.at(i, j) = basis[i][j];
      b.rref();
      for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < cols_; ++j) basis[i][j] = b.at(i, j);
    }
    return basis;
  }

  /// Multiply this matrix by a column vector.
  std::vector<Elem> apply(const std::vector<Elem>& v) const {
    if (v.size() != cols_) throw std::invalid_argument("ExactMatrix::apply: size mismatch");
    std::vector<Elem> out(rows_, field_.zero());
    for (std::size_t i = 0; i < rows_; ++i) {
      Elem acc = field_.zero();
      for (std::size_t j = 0; j < cols_; ++j)
        acc = field_.add(acc, field_.mul(at(i, j), v[j]));
      out[i] = acc;
    }
    return out;
  }

private:
  F field_;
  std::size_t rows_, cols_;
  std::vector<Elem> data_;
};

} // namespace idforge

#endif
