#include "peirce/exact_linalg.hpp"

#include <algorithm>
#include <utility>

namespace peirce {
namespace {

IntMatrix identity_matrix(std::size_t n) {
  IntMatrix id(n, std::vector<Integer>(n, 0));
  for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;
  return id;
}

// g = a*x + b*y with g = gcd(x, y) >= 0
struct ExtGcd {
  Integer g, a, b;
};

ExtGcd ext_gcd(Integer x, Integer y) {
  Integer a0 = 1, b0 = 0, a1 = 0, b1 = 1;
  while (y != 0) {
    Integer q = x / y;
    Integer r = x - q * y;
    x = std::move(y);
    y = std::move(r);
    Integer t = a0 - q * a1;
    a0 = std::move(a1);
    a1 = std::move(t);
    t = b0 - q * b1;
    b0 = std::move(b1);
    b1 = std::move(t);
  }
  if (x < 0) return {-x, -a0, -b0};
  return {x, a0, b0};
}

struct Worker {
  IntMatrix A, U, V, Vinv;
  std::size_t m, n;

  void swap_rows(std::size_t i, std::size_t j) {
    std::swap(A[i], A[j]);
    std::swap(U[i], U[j]);
  }
  void swap_cols(std::size_t i, std::size_t j) {
    for (auto& row : A) std::swap(row[i], row[j]);
    for (auto& row : V) std::swap(row[i], row[j]);
    std::swap(Vinv[i], Vinv[j]);
  }
  // row_r -= q * row_t
  void row_sub(std::size_t r, std::size_t t, const Integer& q) {
    for (std::size_t c = 0; c < n; ++c)
      if (A[t][c] != 0) A[r][c] -= q * A[t][c];
    for (std::size_t c = 0; c < m; ++c)
      if (U[t][c] != 0) U[r][c] -= q * U[t][c];
  }
  // col_c -= q * col_t
  void col_sub(std::size_t c, std::size_t t, const Integer& q) {
    for (std::size_t r = 0; r < m; ++r)
      if (A[r][t] != 0) A[r][c] -= q * A[r][t];
    for (std::size_t r = 0; r < n; ++r)
      if (V[r][t] != 0) V[r][c] -= q * V[r][t];
    for (std::size_t k = 0; k < n; ++k)
      if (Vinv[c][k] != 0) Vinv[t][k] += q * Vinv[c][k];
  }
  void negate_row(std::size_t r) {
    for (auto& x : A[r]) x = -x;
    for (auto& x : U[r]) x = -x;
  }

  bool pivot_into(std::size_t t) {
    std::size_t br = m, bc = n;
    Integer best;
    for (std::size_t r = t; r < m; ++r)
      for (std::size_t c = t; c < n; ++c) {
        if (A[r][c] == 0) continue;
        Integer v = abs(A[r][c]);
        if (br == m || v < best) {
          best = v;
          br = r;
          bc = c;
        }
      }
    if (br == m) return false;
    if (br != t) swap_rows(t, br);
    if (bc != t) swap_cols(t, bc);
    return true;
  }

  void diagonalize() {
    const std::size_t r = std::min(m, n);
    for (std::size_t t = 0; t < r; ++t) {
      if (!pivot_into(t)) return;
      for (;;) {
        bool clean = true;
        for (std::size_t i = t + 1; i < m; ++i) {
          if (A[i][t] == 0) continue;
          Integer q = A[i][t] / A[t][t];
          if (q != 0) row_sub(i, t, q);
          if (A[i][t] != 0) clean = false;
        }
        for (std::size_t c = t + 1; c < n; ++c) {
          if (A[t][c] == 0) continue;
          Integer q = A[t][c] / A[t][t];
          if (q != 0) col_sub(c, t, q);
          if (A[t][c] != 0) clean = false;
        }
        if (clean) break;
        pivot_into(t);
      }
      if (A[t][t] < 0) negate_row(t);
    }
  }

  // diag(s_i, s_j) -> diag(gcd, lcm) by unimodular row and column operations.
  void fix_pair(std::size_t i, std::size_t j) {
    const Integer si = A[i][i], sj = A[j][j];
    if (si == 0 && sj == 0) return;
    if (si == 0) {
      swap_rows(i, j);
      swap_cols(i, j);
      return;
    }
    if (sj % si == 0) return;
    auto [g, a, b] = ext_gcd(si, sj);
    const Integer sjg = sj / g, sig = si / g;
    // rows: [[a, b], [-sj/g, si/g]]
    for (std::size_t c = 0; c < m; ++c) {
      Integer ri = U[i][c], rj = U[j][c];
      U[i][c] = a * ri + b * rj;
      U[j][c] = -sjg * ri + sig * rj;
    }
    // columns: [[1, -b sj/g], [1, a si/g]]
    for (std::size_t r = 0; r < n; ++r) {
      Integer ci = V[r][i], cj = V[r][j];
      V[r][i] = ci + cj;
      V[r][j] = -b * sjg * ci + a * sig * cj;
    }
    for (std::size_t k = 0; k < n; ++k) {
      Integer ri = Vinv[i][k], rj = Vinv[j][k];
      Vinv[i][k] = a * sig * ri + b * sjg * rj;
      Vinv[j][k] = -ri + rj;
    }
    A[i][i] = g;
    A[j][j] = si * sjg;
  }

  void fix_divisibility() {
    const std::size_t r = std::min(m, n);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = i + 1; j < r; ++j) fix_pair(i, j);
  }
};

}  // namespace

SmithForm smith_normal_form(const IntMatrix& M) {
  Worker w;
  w.m = M.size();
  w.n = w.m == 0 ? 0 : M[0].size();
  w.A = M;
  w.U = identity_matrix(w.m);
  w.V = identity_matrix(w.n);
  w.Vinv = identity_matrix(w.n);
  w.diagonalize();
  w.fix_divisibility();
  return {std::move(w.A), std::move(w.U), std::move(w.V), std::move(w.Vinv)};
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t m = a.size();
  const std::size_t k = b.size();
  const std::size_t n = k == 0 ? 0 : b[0].size();
  IntMatrix out(m, std::vector<Integer>(n, 0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t t = 0; t < k; ++t) {
      if (a[i][t] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) out[i][j] += a[i][t] * b[t][j];
    }
  return out;
}

// Fraction-free Bareiss elimination.
Integer determinant(const IntMatrix& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && a[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(a[k], a[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

}  // namespace peirce
