#pragma once

#include <optional>
#include <vector>

#include "jetvariant/ratfun.hpp"

namespace jetvariant {

using QMatrix = std::vector<std::vector<Rational>>;

/// Exact rank over the rationals by fraction-free elimination (rows are first
/// scaled to integers, updates are two-term with gcd stripping). Never uses
/// floating point.
int exact_rank(QMatrix A);

/// Sparse linear system row: coefficient per column index.
using SparseRow = std::vector<std::pair<int, Rational>>;  // ascending column

struct KernelResult {
  int rank = 0;
  std::vector<int> pivot_cols;
  /// Kernel basis in reduced-echelon convention: vector r has 1 at its free
  /// column, 0 at other free columns.
  std::vector<std::vector<Rational>> basis;
};

/// Exact kernel of the homogeneous system rows * x = 0 with ncols unknowns.
/// Fraction-free elimination; pivot column chosen with largest support first,
/// ties by column order (earlier column wins); pivot row with smallest
/// support, ties by row order.
KernelResult exact_kernel(std::vector<SparseRow> rows, int ncols);

/// Solves A x = b over the rational-function field; nullopt when the system
/// is inconsistent. A may be rectangular (least constraints win; free
/// unknowns are set to zero deterministically).
std::optional<std::vector<RatFun>> solve_ratfun_system(std::vector<std::vector<RatFun>> A,
                                                       std::vector<RatFun> b);

/// Inverse of a square RatFun matrix, or nullopt when the determinant is the
/// zero function.
std::optional<std::vector<std::vector<RatFun>>> invert_ratfun_matrix(
    std::vector<std::vector<RatFun>> A);

}  // namespace jetvariant
