#include "ccl/linalg.hpp"

#include <utility>

#include "ccl/kernels.hpp"

namespace ccl {

std::vector<std::size_t> row_reduce(FpMatrix& A, const PrimeField& F) {
  const auto& K = kernels::active();
  const std::uint32_t p = F.prime();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < A.cols() && r < A.rows(); ++c) {
    std::size_t sel = r;
    while (sel < A.rows() && A.at(sel, c) == 0) ++sel;
    if (sel == A.rows()) continue;
    if (sel != r) {
      for (std::size_t k = 0; k < A.cols(); ++k) std::swap(A.at(sel, k), A.at(r, k));
    }
    Coeff inv = F.inv(A.at(r, c));
    for (std::size_t k = 0; k < A.cols(); ++k) A.at(r, k) = F.mul(A.at(r, k), inv);
    for (std::size_t i = 0; i < A.rows(); ++i) {
      if (i == r || A.at(i, c) == 0) continue;
      K.axpy_mod(A.row(i), A.row(r), F.neg(A.at(i, c)), p, A.cols());
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::vector<std::vector<Coeff>> nullspace(FpMatrix A, const PrimeField& F) {
  std::vector<std::size_t> pivots = row_reduce(A, F);
  std::vector<bool> is_pivot(A.cols(), false);
  for (std::size_t c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Coeff>> basis;
  for (std::size_t free = 0; free < A.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Coeff> v(A.cols(), 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = F.neg(A.at(r, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace ccl
