#pragma once

// Independent dense rational Gauss-Jordan, used only as a cross-check oracle
// for the production fraction-free elimination.

#include <vector>

#include "jetvariant/rational.hpp"

namespace jetvariant::testoracle {

struct DenseKernel {
  int rank = 0;
  std::vector<std::vector<Rational>> basis;
};

inline DenseKernel dense_kernel(std::vector<std::vector<Rational>> A, int ncols) {
  size_t rows = A.size();
  std::vector<int> pivot_of_col(static_cast<size_t>(ncols), -1);
  size_t r = 0;
  for (int c = 0; c < ncols && r < rows; ++c) {
    size_t p = r;
    while (p < rows && A[p][static_cast<size_t>(c)].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(A[p], A[r]);
    Rational inv = A[r][static_cast<size_t>(c)].inverse();
    for (int j = 0; j < ncols; ++j) A[r][static_cast<size_t>(j)] *= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || A[i][static_cast<size_t>(c)].is_zero()) continue;
      Rational f = A[i][static_cast<size_t>(c)];
      for (int j = 0; j < ncols; ++j)
        A[i][static_cast<size_t>(j)] -= f * A[r][static_cast<size_t>(j)];
    }
    pivot_of_col[static_cast<size_t>(c)] = static_cast<int>(r);
    ++r;
  }

  DenseKernel out;
  out.rank = static_cast<int>(r);
  for (int c = 0; c < ncols; ++c) {
    if (pivot_of_col[static_cast<size_t>(c)] >= 0) continue;
    std::vector<Rational> v(static_cast<size_t>(ncols), Rational(0));
    v[static_cast<size_t>(c)] = Rational(1);
    for (int j = 0; j < ncols; ++j) {
      int pr = pivot_of_col[static_cast<size_t>(j)];
      if (pr >= 0) v[static_cast<size_t>(j)] = -A[static_cast<size_t>(pr)][static_cast<size_t>(c)];
    }
    out.basis.push_back(std::move(v));
  }
  return out;
}

inline int dense_rank(const std::vector<std::vector<Rational>>& A) {
  if (A.empty()) return 0;
  return dense_kernel(A, static_cast<int>(A[0].size())).rank;
}

}  // namespace jetvariant::testoracle
