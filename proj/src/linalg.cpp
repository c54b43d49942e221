#include "jetvariant/linalg.hpp"

#include <algorithm>

#include "jetvariant/error.hpp"

namespace jetvariant {

namespace {

/// Scales a row of rationals to coprime integers (in place).
void integerize(std::vector<Rational>& row) {
  Rational lcm(1);
  for (const auto& x : row) {
    if (x.is_zero()) continue;
    mpz_lcm(mpq_numref(lcm.raw()), mpq_numref(lcm.raw()), mpq_denref(x.raw()));
  }
  Rational g(0);
  for (auto& x : row) {
    x *= lcm;
    g = rational_content_gcd(g, x);
  }
  if (!g.is_zero() && !g.is_one()) {
    Rational inv = g.inverse();
    for (auto& x : row) x *= inv;
  }
}

void integerize_sparse(SparseRow& row) {
  Rational lcm(1);
  for (const auto& [c, x] : row)
    mpz_lcm(mpq_numref(lcm.raw()), mpq_numref(lcm.raw()), mpq_denref(x.raw()));
  Rational g(0);
  for (auto& [c, x] : row) {
    x *= lcm;
    g = rational_content_gcd(g, x);
  }
  if (!g.is_zero() && !g.is_one()) {
    Rational inv = g.inverse();
    for (auto& [c, x] : row) x *= inv;
  }
}

}  // namespace

int exact_rank(QMatrix A) {
  if (A.empty()) return 0;
  size_t rows = A.size(), cols = A[0].size();
  for (auto& r : A) integerize(r);
  int rank = 0;
  size_t row = 0;
  for (size_t col = 0; col < cols && row < rows; ++col) {
    size_t piv = row;
    while (piv < rows && A[piv][col].is_zero()) ++piv;
    if (piv == rows) continue;
    std::swap(A[piv], A[row]);
    const std::vector<Rational> pivot_row = A[row];
    const Rational& p = pivot_row[col];
    for (size_t i = row + 1; i < rows; ++i) {
      if (A[i][col].is_zero()) continue;
      Rational f = A[i][col];
      Rational g(0);
      for (size_t j = col; j < cols; ++j) {
        A[i][j] = A[i][j] * p - pivot_row[j] * f;
        g = rational_content_gcd(g, A[i][j]);
      }
      if (!g.is_zero() && !g.is_one()) {
        Rational inv = g.inverse();
        for (size_t j = col; j < cols; ++j) A[i][j] *= inv;
      }
    }
    ++row;
    ++rank;
  }
  return rank;
}

KernelResult exact_kernel(std::vector<SparseRow> rows, int ncols) {
  for (auto& r : rows) integerize_sparse(r);
  std::erase_if(rows, [](const SparseRow& r) { return r.empty(); });

  // Column support counters over the still-active rows.
  std::vector<int> support(static_cast<size_t>(ncols), 0);
  for (const auto& r : rows)
    for (const auto& [c, x] : r) ++support[static_cast<size_t>(c)];

  std::vector<char> is_pivot_col(static_cast<size_t>(ncols), 0);
  std::vector<std::pair<int, SparseRow>> pivots;  // (pivot column, row)

  auto coeff_at = [](const SparseRow& r, int col) -> const Rational* {
    auto it = std::lower_bound(r.begin(), r.end(), col,
                               [](const auto& a, int c) { return a.first < c; });
    if (it != r.end() && it->first == col) return &it->second;
    return nullptr;
  };

  // r := r * p - piv * f where f = r[col], p = piv[col]; gcd-stripped.
  auto eliminate = [&](const SparseRow& piv, int col, SparseRow& r) {
    const Rational* fp = coeff_at(r, col);
    if (!fp) return false;
    Rational f = *fp;
    const Rational p = *coeff_at(piv, col);
    SparseRow out;
    out.reserve(r.size() + piv.size());
    size_t i = 0, j = 0;
    while (i < r.size() || j < piv.size()) {
      if (j == piv.size() || (i < r.size() && r[i].first < piv[j].first)) {
        out.emplace_back(r[i].first, r[i].second * p);
        ++i;
      } else if (i == r.size() || piv[j].first < r[i].first) {
        out.emplace_back(piv[j].first, -(piv[j].second * f));
        ++j;
      } else {
        Rational v = r[i].second * p - piv[j].second * f;
        if (!v.is_zero()) out.emplace_back(r[i].first, std::move(v));
        ++i;
        ++j;
      }
    }
    integerize_sparse(out);
    r = std::move(out);
    return true;
  };

  while (!rows.empty()) {
    // Pivot column: largest support, ties by column order.
    int best_col = -1;
    for (int c = 0; c < ncols; ++c) {
      if (is_pivot_col[static_cast<size_t>(c)] || support[static_cast<size_t>(c)] == 0) continue;
      if (best_col < 0 || support[static_cast<size_t>(c)] > support[static_cast<size_t>(best_col)])
        best_col = c;
    }
    if (best_col < 0) break;

    // Pivot row: smallest support among rows hitting the column, ties by order.
    size_t best_row = rows.size();
    for (size_t i = 0; i < rows.size(); ++i) {
      if (!coeff_at(rows[i], best_col)) continue;
      if (best_row == rows.size() || rows[i].size() < rows[best_row].size()) best_row = i;
    }

    SparseRow piv = std::move(rows[best_row]);
    rows.erase(rows.begin() + static_cast<long>(best_row));
    for (const auto& [c, x] : piv) --support[static_cast<size_t>(c)];

    for (auto& r : rows) {
      if (!coeff_at(r, best_col)) continue;
      for (const auto& [c, x] : r) --support[static_cast<size_t>(c)];
      eliminate(piv, best_col, r);
      for (const auto& [c, x] : r) ++support[static_cast<size_t>(c)];
    }
    std::erase_if(rows, [](const SparseRow& r) { return r.empty(); });

    is_pivot_col[static_cast<size_t>(best_col)] = 1;
    pivots.emplace_back(best_col, std::move(piv));
  }

  // Back-substitution among pivot rows (reduced echelon form).
  for (size_t a = pivots.size(); a-- > 0;) {
    for (size_t b = 0; b < pivots.size(); ++b) {
      if (a == b) continue;
      eliminate(pivots[a].second, pivots[a].first, pivots[b].second);
    }
  }

  KernelResult out;
  out.rank = static_cast<int>(pivots.size());
  std::sort(pivots.begin(), pivots.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [c, r] : pivots) out.pivot_cols.push_back(c);

  for (int free_col = 0; free_col < ncols; ++free_col) {
    if (is_pivot_col[static_cast<size_t>(free_col)]) continue;
    std::vector<Rational> v(static_cast<size_t>(ncols), Rational(0));
    v[static_cast<size_t>(free_col)] = Rational(1);
    for (const auto& [pc, prow] : pivots) {
      const Rational* pcoef = nullptr;
      const Rational* fcoef = nullptr;
      for (const auto& [c, x] : prow) {
        if (c == pc) pcoef = &x;
        if (c == free_col) fcoef = &x;
      }
      if (fcoef && pcoef) v[static_cast<size_t>(pc)] = -(*fcoef / *pcoef);
    }
    out.basis.push_back(std::move(v));
  }
  return out;
}

std::optional<std::vector<RatFun>> solve_ratfun_system(std::vector<std::vector<RatFun>> A,
                                                       std::vector<RatFun> b) {
  size_t rows = A.size();
  size_t cols = rows == 0 ? 0 : A[0].size();
  std::vector<int> pivot_col_of_row(rows, -1);
  size_t row = 0;
  for (size_t col = 0; col < cols && row < rows; ++col) {
    size_t piv = row;
    while (piv < rows && A[piv][col].is_zero()) ++piv;
    if (piv == rows) continue;
    std::swap(A[piv], A[row]);
    std::swap(b[piv], b[row]);
    RatFun inv = RatFun::one() / A[row][col];
    for (size_t j = col; j < cols; ++j) A[row][j] = A[row][j] * inv;
    b[row] = b[row] * inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == row || A[i][col].is_zero()) continue;
      RatFun f = A[i][col];
      for (size_t j = col; j < cols; ++j) A[i][j] = A[i][j] - f * A[row][j];
      b[i] = b[i] - f * b[row];
    }
    pivot_col_of_row[row] = static_cast<int>(col);
    ++row;
  }
  for (size_t i = row; i < rows; ++i)
    if (!b[i].is_zero()) return std::nullopt;  // inconsistent

  std::vector<RatFun> x(cols, RatFun::zero());
  for (size_t i = 0; i < row; ++i) x[static_cast<size_t>(pivot_col_of_row[i])] = b[i];
  return x;
}

std::optional<std::vector<std::vector<RatFun>>> invert_ratfun_matrix(
    std::vector<std::vector<RatFun>> A) {
  size_t n = A.size();
  std::vector<std::vector<RatFun>> inv(n, std::vector<RatFun>(n, RatFun::zero()));
  for (size_t i = 0; i < n; ++i) inv[i][i] = RatFun::one();
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && A[piv][col].is_zero()) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(A[piv], A[col]);
    std::swap(inv[piv], inv[col]);
    RatFun s = RatFun::one() / A[col][col];
    for (size_t j = 0; j < n; ++j) {
      A[col][j] = A[col][j] * s;
      inv[col][j] = inv[col][j] * s;
    }
    for (size_t i = 0; i < n; ++i) {
      if (i == col || A[i][col].is_zero()) continue;
      RatFun f = A[i][col];
      for (size_t j = 0; j < n; ++j) {
        A[i][j] = A[i][j] - f * A[col][j];
        inv[i][j] = inv[i][j] - f * inv[col][j];
      }
    }
  }
  return inv;
}

}  // namespace jetvariant
