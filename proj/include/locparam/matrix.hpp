#pragma once

#include <optional>
#include <vector>

#include "poly.hpp"

namespace locparam {

// advance a strictly increasing index tuple below n; false when exhausted
inline bool next_combination(std::vector<size_t>& idx, size_t n) {
  size_t k = idx.size();
  for (size_t i = k; i-- > 0;) {
    if (idx[i] + (k - i) < n) {
      ++idx[i];
      for (size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

// dense exact matrices over a coefficient field

class Matrix {
 public:
  Matrix() = default;
  Matrix(FieldPtr f, size_t rows, size_t cols)
      : f_(std::move(f)), r_(rows), c_(cols), d_(rows * cols, Field::zero(f_)) {}

  static Matrix identity(const FieldPtr& f, size_t n) {
    Matrix m(f, n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = Field::one(f);
    return m;
  }

  size_t rows() const { return r_; }
  size_t cols() const { return c_; }
  const FieldPtr& field() const { return f_; }
  FieldElem& at(size_t i, size_t j) { return d_[i * c_ + j]; }
  const FieldElem& at(size_t i, size_t j) const { return d_[i * c_ + j]; }

  Matrix operator*(const Matrix& o) const {
    if (c_ != o.r_ || !same_field(f_, o.f_)) throw AmbientMismatch("matrix product shape");
    Matrix m(f_, r_, o.c_);
    for (size_t i = 0; i < r_; ++i)
      for (size_t k = 0; k < c_; ++k) {
        if (at(i, k).is_zero()) continue;
        for (size_t j = 0; j < o.c_; ++j) m.at(i, j) += at(i, k) * o.at(k, j);
      }
    return m;
  }
  Matrix operator+(const Matrix& o) const {
    if (r_ != o.r_ || c_ != o.c_) throw AmbientMismatch("matrix sum shape");
    Matrix m = *this;
    for (size_t i = 0; i < d_.size(); ++i) m.d_[i] += o.d_[i];
    return m;
  }
  Matrix operator-(const Matrix& o) const {
    if (r_ != o.r_ || c_ != o.c_) throw AmbientMismatch("matrix difference shape");
    Matrix m = *this;
    for (size_t i = 0; i < d_.size(); ++i) m.d_[i] -= o.d_[i];
    return m;
  }
  Matrix scaled(const FieldElem& c) const {
    Matrix m = *this;
    for (auto& x : m.d_) x = x * c;
    return m;
  }
  Matrix transpose() const {
    Matrix m(f_, c_, r_);
    for (size_t i = 0; i < r_; ++i)
      for (size_t j = 0; j < c_; ++j) m.at(j, i) = at(i, j);
    return m;
  }
  bool operator==(const Matrix& o) const { return r_ == o.r_ && c_ == o.c_ && d_ == o.d_; }

  FieldElem trace() const {
    FieldElem t = Field::zero(f_);
    for (size_t i = 0; i < r_ && i < c_; ++i) t += at(i, i);
    return t;
  }

  Matrix pow(long e) const {
    if (r_ != c_) throw AmbientMismatch("power of a non-square matrix");
    if (e < 0) return inverse().pow(-e);
    Matrix acc = identity(f_, r_), b = *this;
    unsigned long k = (unsigned long)e;
    while (k) {
      if (k & 1) acc = acc * b;
      b = b * b;
      k >>= 1;
    }
    return acc;
  }

  Matrix pow_mpz(const mpz_class& e) const {
    if (r_ != c_) throw AmbientMismatch("power of a non-square matrix");
    if (e < 0) return inverse().pow_mpz(-e);
    Matrix acc = identity(f_, r_), b = *this;
    mpz_class k = e;
    while (k > 0) {
      if (mpz_odd_p(k.get_mpz_t())) acc = acc * b;
      b = b * b;
      k >>= 1;
    }
    return acc;
  }

  // row echelon rank; does not modify *this
  size_t rank() const {
    Matrix m = *this;
    size_t rank = 0;
    for (size_t col = 0; col < c_ && rank < r_; ++col) {
      size_t piv = rank;
      while (piv < r_ && m.at(piv, col).is_zero()) ++piv;
      if (piv == r_) continue;
      m.swap_rows(piv, rank);
      FieldElem inv = m.at(rank, col).inverse();
      for (size_t i = rank + 1; i < r_; ++i) {
        if (m.at(i, col).is_zero()) continue;
        FieldElem fac = m.at(i, col) * inv;
        for (size_t j = col; j < c_; ++j) m.at(i, j) -= fac * m.at(rank, j);
      }
      ++rank;
    }
    return rank;
  }

  // basis of the right kernel {x : Mx = 0}
  std::vector<std::vector<FieldElem>> kernel_basis() const {
    Matrix m = *this;
    std::vector<int> pivot_of_col(c_, -1);
    size_t rank = 0;
    for (size_t col = 0; col < c_ && rank < r_; ++col) {
      size_t piv = rank;
      while (piv < r_ && m.at(piv, col).is_zero()) ++piv;
      if (piv == r_) continue;
      m.swap_rows(piv, rank);
      FieldElem inv = m.at(rank, col).inverse();
      for (size_t j = col; j < c_; ++j) m.at(rank, j) = m.at(rank, j) * inv;
      for (size_t i = 0; i < r_; ++i) {
        if (i == rank || m.at(i, col).is_zero()) continue;
        FieldElem fac = m.at(i, col);
        for (size_t j = col; j < c_; ++j) m.at(i, j) -= fac * m.at(rank, j);
      }
      pivot_of_col[col] = (int)rank;
      ++rank;
    }
    std::vector<std::vector<FieldElem>> basis;
    for (size_t free = 0; free < c_; ++free) {
      if (pivot_of_col[free] >= 0) continue;
      std::vector<FieldElem> v(c_, Field::zero(f_));
      v[free] = Field::one(f_);
      for (size_t col = 0; col < c_; ++col)
        if (pivot_of_col[col] >= 0) v[col] = -m.at((size_t)pivot_of_col[col], free);
      basis.push_back(std::move(v));
    }
    return basis;
  }

  Matrix inverse() const {
    if (r_ != c_) throw NotInvertible("non-square matrix");
    Matrix m = *this, inv = identity(f_, r_);
    for (size_t col = 0; col < c_; ++col) {
      size_t piv = col;
      while (piv < r_ && m.at(piv, col).is_zero()) ++piv;
      if (piv == r_) throw NotInvertible();
      m.swap_rows(piv, col);
      inv.swap_rows(piv, col);
      FieldElem d = m.at(col, col).inverse();
      for (size_t j = 0; j < c_; ++j) {
        m.at(col, j) = m.at(col, j) * d;
        inv.at(col, j) = inv.at(col, j) * d;
      }
      for (size_t i = 0; i < r_; ++i) {
        if (i == col || m.at(i, col).is_zero()) continue;
        FieldElem fac = m.at(i, col);
        for (size_t j = 0; j < c_; ++j) {
          m.at(i, j) -= fac * m.at(col, j);
          inv.at(i, j) -= fac * inv.at(col, j);
        }
      }
    }
    return inv;
  }

  FieldElem det() const {
    if (r_ != c_) throw AmbientMismatch("determinant of a non-square matrix");
    Matrix m = *this;
    FieldElem d = Field::one(f_);
    for (size_t col = 0; col < c_; ++col) {
      size_t piv = col;
      while (piv < r_ && m.at(piv, col).is_zero()) ++piv;
      if (piv == r_) return Field::zero(f_);
      if (piv != col) {
        m.swap_rows(piv, col);
        d = -d;
      }
      d = d * m.at(col, col);
      FieldElem inv = m.at(col, col).inverse();
      for (size_t i = col + 1; i < r_; ++i) {
        if (m.at(i, col).is_zero()) continue;
        FieldElem fac = m.at(i, col) * inv;
        for (size_t j = col; j < c_; ++j) m.at(i, j) -= fac * m.at(col, j);
      }
    }
    return d;
  }

  bool is_zero() const {
    for (const auto& x : d_)
      if (!x.is_zero()) return false;
    return true;
  }

  // e_1, ..., e_n: sums of principal minors (coefficients of the
  // characteristic polynomial up to sign)
  std::vector<FieldElem> char_invariants() const {
    if (r_ != c_) throw AmbientMismatch("invariants of a non-square matrix");
    std::vector<FieldElem> out;
    size_t n = r_;
    for (size_t k = 1; k <= n; ++k) {
      FieldElem sum = Field::zero(f_);
      std::vector<size_t> idx(k);
      for (size_t i = 0; i < k; ++i) idx[i] = i;
      do {
        Matrix sub(f_, k, k);
        for (size_t i = 0; i < k; ++i)
          for (size_t j = 0; j < k; ++j) sub.at(i, j) = at(idx[i], idx[j]);
        sum += sub.det();
      } while (next_combination(idx, n));
      out.push_back(sum);
    }
    return out;
  }

 private:
  FieldPtr f_;
  size_t r_ = 0, c_ = 0;
  std::vector<FieldElem> d_;

  void swap_rows(size_t a, size_t b) {
    if (a == b) return;
    for (size_t j = 0; j < c_; ++j) std::swap(at(a, j), at(b, j));
  }
};

// dense univariate polynomials over a field, low-degree-first

struct UPoly {
  FieldPtr f;
  std::vector<FieldElem> c;

  static UPoly zero(const FieldPtr& fld) { return {fld, {}}; }
  static UPoly constant(const FieldPtr& fld, const FieldElem& v) {
    UPoly p{fld, {v}};
    p.trim();
    return p;
  }
  static UPoly from_coeffs(const FieldPtr& fld, std::vector<FieldElem> cs) {
    UPoly p{fld, std::move(cs)};
    p.trim();
    return p;
  }

  void trim() {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
  }
  bool is_zero() const { return c.empty(); }
  int degree() const { return (int)c.size() - 1; }
  const FieldElem& lead() const { return c.back(); }

  UPoly operator+(const UPoly& o) const {
    UPoly r = *this;
    r.c.resize(std::max(c.size(), o.c.size()), Field::zero(f));
    for (size_t i = 0; i < o.c.size(); ++i) r.c[i] += o.c[i];
    r.trim();
    return r;
  }
  UPoly operator-(const UPoly& o) const {
    UPoly r = *this;
    r.c.resize(std::max(c.size(), o.c.size()), Field::zero(f));
    for (size_t i = 0; i < o.c.size(); ++i) r.c[i] -= o.c[i];
    r.trim();
    return r;
  }
  UPoly operator*(const UPoly& o) const {
    if (is_zero() || o.is_zero()) return zero(f);
    UPoly r{f, std::vector<FieldElem>(c.size() + o.c.size() - 1, Field::zero(f))};
    for (size_t i = 0; i < c.size(); ++i) {
      if (c[i].is_zero()) continue;
      for (size_t j = 0; j < o.c.size(); ++j) r.c[i + j] += c[i] * o.c[j];
    }
    r.trim();
    return r;
  }

  // division with remainder by a nonzero divisor
  std::pair<UPoly, UPoly> divmod(const UPoly& d) const {
    if (d.is_zero()) throw DivisionByZero("univariate division by zero");
    UPoly rem = *this, quo = zero(f);
    quo.c.assign(c.size() > d.c.size() ? c.size() - d.c.size() + 1 : 1, Field::zero(f));
    FieldElem li = d.lead().inverse();
    while (!rem.is_zero() && rem.c.size() >= d.c.size()) {
      FieldElem q = rem.lead() * li;
      size_t sh = rem.c.size() - d.c.size();
      quo.c[sh] += q;
      for (size_t i = 0; i < d.c.size(); ++i) rem.c[sh + i] -= q * d.c[i];
      rem.trim();
    }
    quo.trim();
    return {quo, rem};
  }

  UPoly monic() const {
    if (is_zero()) return *this;
    UPoly r = *this;
    FieldElem li = lead().inverse();
    for (auto& x : r.c) x = x * li;
    return r;
  }

  UPoly derivative() const {
    UPoly r = zero(f);
    for (size_t i = 1; i < c.size(); ++i)
      r.c.push_back(c[i] * Field::from_long(f, (long)i));
    r.trim();
    return r;
  }

  FieldElem eval(const FieldElem& x) const {
    FieldElem acc = Field::zero(f);
    for (size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
    return acc;
  }

  // x^deg * p(1/x)
  UPoly reversed() const {
    UPoly r = *this;
    std::reverse(r.c.begin(), r.c.end());
    r.trim();
    return r;
  }

  bool operator==(const UPoly& o) const { return c == o.c; }
};

inline UPoly upoly_gcd(UPoly a, UPoly b) {
  while (!b.is_zero()) {
    UPoly r = a.divmod(b).second;
    a = b;
    b = r;
  }
  return a.monic();
}

inline bool upoly_squarefree(const UPoly& p) {
  if (p.is_zero()) return false;
  UPoly d = p.derivative();
  if (d.is_zero()) return false;  // inseparable or constant
  return upoly_gcd(p, d).degree() == 0;
}

// square matrices with polynomial entries

struct PolyMat {
  RingPtr r;
  size_t n = 0;
  std::vector<Polynomial> d;

  PolyMat() = default;
  PolyMat(RingPtr ring, size_t dim)
      : r(std::move(ring)), n(dim), d(dim * dim, Polynomial::zero(r)) {}

  static PolyMat identity(const RingPtr& ring, size_t dim) {
    PolyMat m(ring, dim);
    for (size_t i = 0; i < dim; ++i) m.at(i, i) = Polynomial::constant(ring, 1);
    return m;
  }

  Polynomial& at(size_t i, size_t j) { return d[i * n + j]; }
  const Polynomial& at(size_t i, size_t j) const { return d[i * n + j]; }

  PolyMat operator*(const PolyMat& o) const {
    PolyMat m(r, n);
    for (size_t i = 0; i < n; ++i)
      for (size_t k = 0; k < n; ++k) {
        if (at(i, k).is_zero()) continue;
        for (size_t j = 0; j < n; ++j) m.at(i, j) += at(i, k) * o.at(k, j);
      }
    return m;
  }
  PolyMat operator-(const PolyMat& o) const {
    PolyMat m = *this;
    for (size_t i = 0; i < d.size(); ++i) m.d[i] -= o.d[i];
    return m;
  }
  PolyMat operator+(const PolyMat& o) const {
    PolyMat m = *this;
    for (size_t i = 0; i < d.size(); ++i) m.d[i] += o.d[i];
    return m;
  }
  PolyMat scaled(const Polynomial& p) const {
    PolyMat m = *this;
    for (auto& x : m.d) x = x * p;
    return m;
  }

  PolyMat pow(unsigned long e, unsigned long cap = 16) const {
    if (e > cap) throw BudgetExceeded("matrix power exponent above cap");
    PolyMat acc = identity(r, n), b = *this;
    while (e) {
      if (e & 1) acc = acc * b;
      b = b * b;
      e >>= 1;
    }
    return acc;
  }

  Polynomial trace() const {
    Polynomial t = Polynomial::zero(r);
    for (size_t i = 0; i < n; ++i) t += at(i, i);
    return t;
  }

  Polynomial det() const {
    if (n == 1) return at(0, 0);
    if (n == 2) return at(0, 0) * at(1, 1) - at(0, 1) * at(1, 0);
    Polynomial acc = Polynomial::zero(r);
    for (size_t j = 0; j < n; ++j) {
      PolyMat sub(r, n - 1);
      for (size_t i = 1; i < n; ++i) {
        size_t cc = 0;
        for (size_t k = 0; k < n; ++k) {
          if (k == j) continue;
          sub.at(i - 1, cc++) = at(i, k);
        }
      }
      Polynomial term = at(0, j) * sub.det();
      if (j % 2 == 1) term = -term;
      acc += term;
    }
    return acc;
  }

  // adjugate transpose convention: adj * M = det(M) * I
  PolyMat adjugate() const {
    PolyMat adj(r, n);
    if (n == 1) {
      adj.at(0, 0) = Polynomial::constant(r, 1);
      return adj;
    }
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) {
        PolyMat sub(r, n - 1);
        size_t rr = 0;
        for (size_t a = 0; a < n; ++a) {
          if (a == i) continue;
          size_t cc = 0;
          for (size_t b = 0; b < n; ++b) {
            if (b == j) continue;
            sub.at(rr, cc++) = at(a, b);
          }
          ++rr;
        }
        Polynomial cof = sub.det();
        if ((i + j) % 2 == 1) cof = -cof;
        adj.at(j, i) = cof;
      }
    return adj;
  }

  // e_1..e_n as polynomials: sums of principal minors
  std::vector<Polynomial> char_invariants() const {
    std::vector<Polynomial> out;
    for (size_t k = 1; k <= n; ++k) {
      Polynomial sum = Polynomial::zero(r);
      std::vector<size_t> idx(k);
      for (size_t i = 0; i < k; ++i) idx[i] = i;
      do {
        PolyMat sub(r, k);
        for (size_t i = 0; i < k; ++i)
          for (size_t j = 0; j < k; ++j) sub.at(i, j) = at(idx[i], idx[j]);
        sum += sub.det();
      } while (next_combination(idx, n));
      out.push_back(sum);
    }
    return out;
  }

  Matrix eval(const FieldPtr& target, const std::vector<FieldElem>& values) const {
    Matrix m(target, n, n);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) m.at(i, j) = at(i, j).eval(target, values);
    return m;
  }
};

}  // namespace locparam
