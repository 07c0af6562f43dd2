#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <vector>

#include "errors.hpp"

namespace locparam {

// Integer matrix helpers used by the cocharacter-lattice computations.

using ZMat = std::vector<std::vector<mpz_class>>;

inline ZMat zmat_identity(size_t n) {
  ZMat m(n, std::vector<mpz_class>(n, 0));
  for (size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline ZMat zmat_mul(const ZMat& a, const ZMat& b) {
  size_t n = a.size(), k = b.size(), p = b.empty() ? 0 : b[0].size();
  ZMat r(n, std::vector<mpz_class>(p, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < p; ++j)
      for (size_t t = 0; t < k; ++t) r[i][j] += a[i][t] * b[t][j];
  return r;
}

struct SmithForm {
  ZMat U, V;                       // U * A * V = D, both unimodular
  ZMat D;                          // diagonal, divisors[i] | divisors[i+1]
  std::vector<mpz_class> divisors;  // positive nonzero diagonal entries
  size_t rank = 0;
};

inline SmithForm smith_normal_form(ZMat A) {
  size_t rows = A.size(), cols = rows ? A[0].size() : 0;
  SmithForm out;
  out.U = zmat_identity(rows);
  out.V = zmat_identity(cols);

  auto swap_rows = [&](size_t a, size_t b) {
    std::swap(A[a], A[b]);
    std::swap(out.U[a], out.U[b]);
  };
  auto swap_cols = [&](size_t a, size_t b) {
    for (size_t i = 0; i < rows; ++i) std::swap(A[i][a], A[i][b]);
    for (size_t i = 0; i < cols; ++i) std::swap(out.V[i][a], out.V[i][b]);
  };
  auto addmul_row = [&](size_t dst, size_t src, const mpz_class& c) {
    for (size_t j = 0; j < cols; ++j) A[dst][j] += c * A[src][j];
    for (size_t j = 0; j < rows; ++j) out.U[dst][j] += c * out.U[src][j];
  };
  auto addmul_col = [&](size_t dst, size_t src, const mpz_class& c) {
    for (size_t i = 0; i < rows; ++i) A[i][dst] += c * A[i][src];
    for (size_t i = 0; i < cols; ++i) out.V[i][dst] += c * out.V[i][src];
  };
  auto negate_row = [&](size_t r) {
    for (size_t j = 0; j < cols; ++j) A[r][j] = -A[r][j];
    for (size_t j = 0; j < rows; ++j) out.U[r][j] = -out.U[r][j];
  };

  size_t t = 0;
  while (t < rows && t < cols) {
    // find a nonzero pivot of minimal absolute value in the trailing block
    size_t pi = t, pj = t;
    bool found = false;
    for (size_t i = t; i < rows; ++i)
      for (size_t j = t; j < cols; ++j) {
        if (A[i][j] == 0) continue;
        if (!found || mpz_cmpabs(A[i][j].get_mpz_t(), A[pi][pj].get_mpz_t()) < 0) {
          pi = i;
          pj = j;
          found = true;
        }
      }
    if (!found) break;
    swap_rows(t, pi);
    swap_cols(t, pj);

    bool clean = false;
    while (!clean) {
      clean = true;
      for (size_t i = t + 1; i < rows; ++i)
        if (A[i][t] != 0) {
          mpz_class q = A[i][t] / A[t][t];
          if (q != 0) addmul_row(i, t, -q);
          if (A[i][t] != 0) {
            swap_rows(t, i);
            clean = false;
          }
        }
      for (size_t j = t + 1; j < cols; ++j)
        if (A[t][j] != 0) {
          mpz_class q = A[t][j] / A[t][t];
          if (q != 0) addmul_col(j, t, -q);
          if (A[t][j] != 0) {
            swap_cols(t, j);
            clean = false;
          }
        }
    }
    // enforce the divisibility chain: pivot must divide the trailing block
    bool redo = false;
    for (size_t i = t + 1; i < rows && !redo; ++i)
      for (size_t j = t + 1; j < cols && !redo; ++j)
        if (A[i][j] % A[t][t] != 0) {
          addmul_col(t, j, 1);
          redo = true;
        }
    if (redo) continue;
    if (A[t][t] < 0) negate_row(t);
    ++t;
  }

  out.D = A;
  for (size_t i = 0; i < std::min(rows, cols); ++i)
    if (A[i][i] != 0) {
      out.divisors.push_back(A[i][i]);
      ++out.rank;
    }
  return out;
}

inline size_t zmat_rank(const ZMat& a) { return smith_normal_form(a).rank; }

// coker(A: Z^cols -> Z^rows) = Z^{rows-rank} x prod Z/d_i (d_i > 1)
struct CokernelShape {
  size_t free_rank = 0;
  std::vector<mpz_class> torsion;  // invariant factors > 1
};

inline CokernelShape cokernel_shape(const ZMat& A) {
  size_t rows = A.size();
  SmithForm s = smith_normal_form(A);
  CokernelShape out;
  out.free_rank = rows - s.rank;
  for (const auto& d : s.divisors)
    if (d > 1) out.torsion.push_back(d);
  return out;
}

}  // namespace locparam
