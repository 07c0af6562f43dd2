#pragma once

#include "matrix.hpp"
#include "zlattice.hpp"

namespace locparam {

// Supported reductive groups: GL(n) for n <= 3, SL(n) for n in {2,3},
// and tori given by the integer matrix of Frobenius on the cocharacter
// lattice (identity = split torus).

enum class GroupKind { GL, SL, Torus };

enum class TwistKind { Plain, Cyclotomic };

struct GroupSpec {
  GroupKind kind = GroupKind::GL;
  size_t n = 2;       // matrix size for GL/SL
  size_t rank = 1;    // torus rank
  ZMat frobenius;     // torus only; square rank x rank

  static GroupSpec gl(size_t n) {
    if (n < 1 || n > 3) throw UnsupportedGroup("GL(n) supported for n <= 3");
    GroupSpec s;
    s.kind = GroupKind::GL;
    s.n = n;
    return s;
  }
  static GroupSpec sl(size_t n) {
    if (n < 2 || n > 3) throw UnsupportedGroup("SL(n) supported for n in {2,3}");
    GroupSpec s;
    s.kind = GroupKind::SL;
    s.n = n;
    return s;
  }
  static GroupSpec torus(size_t rank, ZMat frobenius = {}) {
    if (rank < 1 || rank > 4) throw UnsupportedGroup("torus rank supported up to 4");
    GroupSpec s;
    s.kind = GroupKind::Torus;
    s.rank = rank;
    if (frobenius.empty()) frobenius = zmat_identity(rank);
    if (frobenius.size() != rank || frobenius[0].size() != rank)
      throw InvalidParameter("frobenius matrix must be rank x rank");
    ZMat acc = frobenius;
    bool finite_order = false;
    for (int k = 1; k <= 24 && !finite_order; ++k) {
      if (acc == zmat_identity(rank)) finite_order = true;
      acc = zmat_mul(acc, frobenius);
    }
    if (!finite_order) throw InvalidParameter("frobenius matrix must have finite order");
    s.frobenius = std::move(frobenius);
    return s;
  }

  size_t matrix_size() const { return kind == GroupKind::Torus ? rank : n; }
  size_t dim() const {
    switch (kind) {
      case GroupKind::GL: return n * n;
      case GroupKind::SL: return n * n - 1;
      case GroupKind::Torus: return rank;
    }
    return 0;
  }
  bool is_split_torus() const {
    return kind == GroupKind::Torus && frobenius == zmat_identity(rank);
  }
  std::string name() const {
    switch (kind) {
      case GroupKind::GL: return "GL" + std::to_string(n);
      case GroupKind::SL: return "SL" + std::to_string(n);
      case GroupKind::Torus:
        return std::string(is_split_torus() ? "T" : "T~") + std::to_string(rank);
    }
    return "?";
  }
};

inline std::string twist_name(TwistKind t) {
  return t == TwistKind::Plain ? "plain" : "cyclotomic";
}

// basis of the Lie algebra inside n x n matrices
inline std::vector<Matrix> lie_basis(const GroupSpec& spec, const FieldPtr& f) {
  size_t n = spec.matrix_size();
  std::vector<Matrix> basis;
  auto unit = [&](size_t i, size_t j) {
    Matrix m(f, n, n);
    m.at(i, j) = Field::one(f);
    return m;
  };
  switch (spec.kind) {
    case GroupKind::GL:
      for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) basis.push_back(unit(i, j));
      break;
    case GroupKind::SL:
      for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
          if (i != j) basis.push_back(unit(i, j));
      for (size_t i = 0; i + 1 < n; ++i) basis.push_back(unit(i, i) - unit(i + 1, i + 1));
      break;
    case GroupKind::Torus:
      for (size_t i = 0; i < n; ++i) basis.push_back(unit(i, i));
      break;
  }
  return basis;
}

// coordinates of X in the Lie algebra basis; throws if X is outside
inline std::vector<FieldElem> lie_coords(const GroupSpec& spec, const Matrix& X) {
  const FieldPtr& f = X.field();
  size_t n = spec.matrix_size();
  std::vector<FieldElem> out;
  switch (spec.kind) {
    case GroupKind::GL:
      for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) out.push_back(X.at(i, j));
      break;
    case GroupKind::SL: {
      if (!X.trace().is_zero()) throw AmbientMismatch("matrix is not traceless");
      for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
          if (i != j) out.push_back(X.at(i, j));
      // diagonal in the H_i basis: X_ii = a_i - a_{i-1} with a_0 = X_00
      FieldElem acc = Field::zero(f);
      for (size_t i = 0; i + 1 < n; ++i) {
        acc += X.at(i, i);
        out.push_back(acc);
      }
      break;
    }
    case GroupKind::Torus:
      for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
          if (i != j && !X.at(i, j).is_zero())
            throw AmbientMismatch("matrix is not diagonal");
      for (size_t i = 0; i < n; ++i) out.push_back(X.at(i, i));
      break;
  }
  return out;
}

// matrix of Ad(g) : X -> g X g^{-1} in the Lie algebra basis
inline Matrix ad_matrix(const GroupSpec& spec, const Matrix& g) {
  std::vector<Matrix> basis = lie_basis(spec, g.field());
  size_t d = basis.size();
  Matrix out(g.field(), d, d);
  Matrix ginv = g.inverse();
  for (size_t j = 0; j < d; ++j) {
    std::vector<FieldElem> col = lie_coords(spec, g * basis[j] * ginv);
    for (size_t i = 0; i < d; ++i) out.at(i, j) = col[i];
  }
  return out;
}

// diag(x^{n-1}, ..., x, 1); trivial for tori
inline Matrix rho_ell(const GroupSpec& spec, const FieldElem& x) {
  size_t n = spec.matrix_size();
  Matrix m(x.fld, n, n);
  if (spec.kind == GroupKind::Torus) return Matrix::identity(x.fld, n);
  FieldElem p = Field::one(x.fld);
  for (size_t i = n; i-- > 0;) {
    m.at(i, i) = p;
    p = p * x;
  }
  return m;
}

// sigma-matrix after absorbing the cyclotomic twist
inline Matrix effective_sigma(const GroupSpec& spec, TwistKind twist, const Matrix& S, long q) {
  if (twist == TwistKind::Plain) return S;
  const FieldPtr& f = S.field();
  if (!f->char_zero() && q % (long)f->p == 0)
    throw BadCharacteristic("cyclotomic twist needs q invertible");
  FieldElem qinv = Field::from_long(f, q).inverse();
  return S * rho_ell(spec, qinv);
}

}  // namespace locparam
