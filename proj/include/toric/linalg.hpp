#pragma once

// Exact integer linear algebra: lattice vectors, Hermite normal form with
// transformation matrix, saturated kernels, ranks and simplex indices.

#include <algorithm>
#include <numeric>
#include <utility>
#include <vector>

#include "toric/base.hpp"

namespace toric {

using LatticeVector = std::vector<Integer>;
using QVector = std::vector<Rational>;

inline bool is_zero(const LatticeVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

inline LatticeVector add(const LatticeVector& a, const LatticeVector& b) {
  LatticeVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

inline LatticeVector sub(const LatticeVector& a, const LatticeVector& b) {
  LatticeVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

inline LatticeVector scale(const Integer& c, const LatticeVector& v) {
  LatticeVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = c * v[i];
  return out;
}

inline LatticeVector negate(const LatticeVector& v) { return scale(Integer(-1), v); }

inline Integer dot(const LatticeVector& a, const LatticeVector& b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Rational dot(const QVector& a, const LatticeVector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * Rational(b[i]);
  return s;
}

// gcd of the coordinates; 0 for the zero vector.
inline Integer content(const LatticeVector& v) {
  Integer g = 0;
  for (const Integer& x : v) g = boost::multiprecision::gcd(g, x);
  return g;
}

inline bool is_primitive(const LatticeVector& v) { return content(v) == 1; }

// v / gcd(v); direction is preserved.
inline LatticeVector primitive(const LatticeVector& v) {
  Integer g = content(v);
  if (g == 0) fail(ErrorCode::ZeroVector, "primitive() of the zero vector");
  LatticeVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / g;
  return out;
}

struct IntegerMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<Integer> data;  // row-major

  IntegerMatrix() = default;
  IntegerMatrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c) {}

  Integer& at(int i, int j) { return data[static_cast<std::size_t>(i) * cols + j]; }
  const Integer& at(int i, int j) const { return data[static_cast<std::size_t>(i) * cols + j]; }

  LatticeVector row(int i) const {
    LatticeVector out(cols);
    for (int j = 0; j < cols; ++j) out[j] = at(i, j);
    return out;
  }

  LatticeVector col(int j) const {
    LatticeVector out(rows);
    for (int i = 0; i < rows; ++i) out[i] = at(i, j);
    return out;
  }

  static IntegerMatrix identity(int n) {
    IntegerMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  static IntegerMatrix from_rows(const std::vector<LatticeVector>& rows_in, int ncols) {
    IntegerMatrix m(static_cast<int>(rows_in.size()), ncols);
    for (int i = 0; i < m.rows; ++i)
      for (int j = 0; j < ncols; ++j) m.at(i, j) = rows_in[i][j];
    return m;
  }

  static IntegerMatrix from_cols(const std::vector<LatticeVector>& cols_in, int nrows) {
    IntegerMatrix m(nrows, static_cast<int>(cols_in.size()));
    for (int j = 0; j < m.cols; ++j)
      for (int i = 0; i < nrows; ++i) m.at(i, j) = cols_in[j][i];
    return m;
  }

  IntegerMatrix transposed() const {
    IntegerMatrix t(cols, rows);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  bool operator==(const IntegerMatrix& o) const {
    return rows == o.rows && cols == o.cols && data == o.data;
  }
};

inline IntegerMatrix multiply(const IntegerMatrix& a, const IntegerMatrix& b) {
  IntegerMatrix out(a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int k = 0; k < a.cols; ++k) {
      const Integer& aik = a.at(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < b.cols; ++j) out.at(i, j) += aik * b.at(k, j);
    }
  return out;
}

namespace detail {

inline void swap_rows(IntegerMatrix& m, int a, int b) {
  if (a == b) return;
  for (int j = 0; j < m.cols; ++j) std::swap(m.at(a, j), m.at(b, j));
}

// Extended gcd: returns g and x, y with x*a + y*b = g, g >= 0.
inline Integer ext_gcd(const Integer& a, const Integer& b, Integer& x, Integer& y) {
  if (b == 0) {
    if (a >= 0) { x = 1; y = 0; return a; }
    x = -1; y = 0; return -a;
  }
  Integer x1, y1;
  Integer g = ext_gcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

}  // namespace detail

struct HermiteResult {
  IntegerMatrix h;  // row-style Hermite normal form
  IntegerMatrix u;  // unimodular, h = u * m
  int rank = 0;
  std::vector<int> pivot_cols;
};

// Row-style HNF: pivots positive, entries above a pivot reduced into
// [0, pivot), zero rows at the bottom. U tracks the row operations.
inline HermiteResult hermite_normal_form(const IntegerMatrix& m) {
  HermiteResult res;
  res.h = m;
  res.u = IntegerMatrix::identity(m.rows);
  IntegerMatrix& h = res.h;
  IntegerMatrix& u = res.u;
  int r = 0;
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    int piv = -1;
    for (int i = r; i < m.rows; ++i)
      if (h.at(i, c) != 0) { piv = i; break; }
    if (piv < 0) continue;
    detail::swap_rows(h, r, piv);
    detail::swap_rows(u, r, piv);
    for (int i = r + 1; i < m.rows; ++i) {
      if (h.at(i, c) == 0) continue;
      Integer x, y;
      Integer g = detail::ext_gcd(h.at(r, c), h.at(i, c), x, y);
      Integer ar = h.at(r, c) / g, ai = h.at(i, c) / g;
      for (int j = 0; j < m.cols; ++j) {
        Integer hr = h.at(r, j), hi = h.at(i, j);
        h.at(r, j) = x * hr + y * hi;
        h.at(i, j) = ar * hi - ai * hr;
      }
      for (int j = 0; j < m.rows; ++j) {
        Integer ur = u.at(r, j), ui = u.at(i, j);
        u.at(r, j) = x * ur + y * ui;
        u.at(i, j) = ar * ui - ai * ur;
      }
    }
    if (h.at(r, c) < 0) {
      for (int j = 0; j < m.cols; ++j) h.at(r, j) = -h.at(r, j);
      for (int j = 0; j < m.rows; ++j) u.at(r, j) = -u.at(r, j);
    }
    for (int i = 0; i < r; ++i) {
      Integer q = h.at(i, c) / h.at(r, c);
      if (h.at(i, c) % h.at(r, c) < 0) --q;
      if (q == 0) continue;
      for (int j = 0; j < m.cols; ++j) h.at(i, j) -= q * h.at(r, j);
      for (int j = 0; j < m.rows; ++j) u.at(i, j) -= q * u.at(r, j);
    }
    res.pivot_cols.push_back(c);
    ++r;
  }
  res.rank = r;
  return res;
}

inline int rank_of(const IntegerMatrix& m) { return hermite_normal_form(m).rank; }

inline int rank_of(const std::vector<LatticeVector>& vectors, int dim) {
  if (vectors.empty()) return 0;
  return rank_of(IntegerMatrix::from_rows(vectors, dim));
}

// Basis of ker(m) over the integers; the generated sublattice is saturated
// (rows of U paired with zero rows of the HNF of the transpose).
inline std::vector<LatticeVector> kernel_basis(const IntegerMatrix& m) {
  HermiteResult t = hermite_normal_form(m.transposed());
  std::vector<LatticeVector> out;
  for (int i = t.rank; i < t.h.rows; ++i) out.push_back(t.u.row(i));
  return out;
}

inline Integer determinant(IntegerMatrix m) {
  if (m.rows != m.cols) fail(ErrorCode::BadArgument, "determinant of a non-square matrix");
  // Bareiss fraction-free elimination.
  int n = m.rows;
  Integer sign = 1, prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m.at(k, k) == 0) {
      int piv = -1;
      for (int i = k + 1; i < n; ++i)
        if (m.at(i, k) != 0) { piv = i; break; }
      if (piv < 0) return 0;
      detail::swap_rows(m, k, piv);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        m.at(i, j) = (m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j)) / prev;
    prev = m.at(k, k);
  }
  return sign * m.at(n - 1, n - 1);
}

// gcd of all k x k minors of a k x n matrix of (independent) generators;
// this is the lattice index of the sublattice they span inside its
// saturation, i.e. the multiplicity of the simplicial cone they generate.
inline Integer simplex_index(const std::vector<LatticeVector>& gens, int dim) {
  int k = static_cast<int>(gens.size());
  if (k == 0) return 1;
  IntegerMatrix m = IntegerMatrix::from_rows(gens, dim);
  std::vector<int> pick(k);
  std::iota(pick.begin(), pick.end(), 0);
  Integer g = 0;
  // iterate over k-subsets of columns
  while (true) {
    IntegerMatrix sq(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) sq.at(i, j) = m.at(i, pick[j]);
    g = boost::multiprecision::gcd(g, determinant(sq));
    int i = k - 1;
    while (i >= 0 && pick[i] == dim - k + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  return g < 0 ? -g : g;
}

// Solve A x = b over the rationals (A given by integer rows). Returns false
// if inconsistent; otherwise writes one solution (free variables set to 0).
inline bool solve_rational(const std::vector<LatticeVector>& rows, const std::vector<Rational>& rhs,
                           int ncols, QVector& solution) {
  int nrows = static_cast<int>(rows.size());
  std::vector<QVector> a(nrows, QVector(ncols));
  QVector b(rhs);
  for (int i = 0; i < nrows; ++i)
    for (int j = 0; j < ncols; ++j) a[i][j] = Rational(rows[i][j]);
  std::vector<int> pivot_col;
  int r = 0;
  for (int c = 0; c < ncols && r < nrows; ++c) {
    int piv = -1;
    for (int i = r; i < nrows; ++i)
      if (a[i][c] != 0) { piv = i; break; }
    if (piv < 0) continue;
    std::swap(a[r], a[piv]);
    std::swap(b[r], b[piv]);
    Rational inv = a[r][c];
    for (int j = c; j < ncols; ++j) a[r][j] /= inv;
    b[r] /= inv;
    for (int i = 0; i < nrows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rational f = a[i][c];
      for (int j = c; j < ncols; ++j) a[i][j] -= f * a[r][j];
      b[i] -= f * b[r];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (int i = r; i < nrows; ++i)
    if (b[i] != 0) return false;
  solution.assign(ncols, Rational(0));
  for (int i = 0; i < r; ++i) solution[pivot_col[i]] = b[i];
  return true;
}

// Lexicographic comparison, used wherever a deterministic order is needed.
inline bool lex_less(const LatticeVector& a, const LatticeVector& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace toric
