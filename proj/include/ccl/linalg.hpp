#pragma once
// Dense linear algebra over F_p.

#include <cstddef>
#include <vector>

#include "ccl/field.hpp"

namespace ccl {

/// Row-major dense matrix with entries in [0, p).
class FpMatrix {
 public:
  FpMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Coeff& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Coeff at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Coeff* row(std::size_t r) { return data_.data() + r * cols_; }
  const Coeff* row(std::size_t r) const { return data_.data() + r * cols_; }

 private:
  std::size_t rows_, cols_;
  std::vector<Coeff> data_;
};

/// Reduced row echelon form in place; returns the pivot column of each
/// nonzero row.
std::vector<std::size_t> row_reduce(FpMatrix& A, const PrimeField& F);

/// Basis of {v : A v = 0}, one vector per free column.
std::vector<std::vector<Coeff>> nullspace(FpMatrix A, const PrimeField& F);

}  // namespace ccl
