#pragma once

// Cohomology of the q-tame group at a parameter point with adjoint
// coefficients, plus the singular-support fiber with its nilpotency test.

#include <utility>
#include <vector>

#include "algroup.hpp"
#include "grouppres.hpp"
#include "repscheme.hpp"

namespace locparam {

enum class CoeffKind { Ad, AdStar };

// eigenvalue convention for the sigma condition cutting out the H^2 fiber
enum class SigmaEigen { QInverse, Q };

// three-term complex 0 -> g --d0--> g^2 --d1--> g -> 0
struct CochainComplex {
  Matrix d0;  // 2g x g
  Matrix d1;  // g x 2g
  size_t g = 0;
};

struct CochainReport {
  long h0 = 0;
  long h1 = 0;
  long h2 = 0;
  long euler = 0;
  bool smooth_certificate = false;
  bool tangent_consistency = false;
};

struct SingularFiber {
  std::vector<Matrix> basis;  // solutions inside the ambient matrix algebra
  long dim = 0;
  bool all_nilpotent = true;
  SigmaEigen convention = SigmaEigen::QInverse;
};

namespace detail {

// Ad matrices of (tau, effective sigma); tori carry the Frobenius action
inline std::pair<Matrix, Matrix> adjoint_pair(const GroupSpec& G, TwistKind twist,
                                              const RepPoint& pt) {
  if (G.kind == GroupKind::Torus) {
    size_t r = G.rank;
    Matrix at = Matrix::identity(pt.field, r);
    Matrix as(pt.field, r, r);
    for (size_t i = 0; i < r; ++i)
      for (size_t j = 0; j < r; ++j)
        as.at(i, j) = Field::from_mpq(pt.field, mpq_class(G.frobenius[i][j]));
    return {at, as};
  }
  Matrix seff = effective_sigma(G, twist, pt.mats[1], pt.q);
  return {ad_matrix(G, pt.mats[0]), ad_matrix(G, seff)};
}

inline Matrix dualize(const Matrix& a) { return a.inverse().transpose(); }

inline void require_on_tame(const GroupSpec& G, TwistKind twist, const RepPoint& pt) {
  ParamScheme S = tame_framed_ideal(G, pt.q, pt.field, twist);
  if (!on_scheme(S, pt)) throw PointNotOnScheme();
}

}  // namespace detail

inline CochainComplex gamma_q_cochain(const RepPoint& pt, const GroupSpec& G, TwistKind twist,
                                      CoeffKind coeff = CoeffKind::AdStar) {
  detail::require_on_tame(G, twist, pt);
  auto [at, as] = detail::adjoint_pair(G, twist, pt);
  if (coeff == CoeffKind::AdStar) {
    at = detail::dualize(at);
    as = detail::dualize(as);
  }
  size_t g = at.rows();
  ResolutionData res = tame_resolution(pt.q);
  Matrix b00 = right_action_matrix(res.d1_first, as, at);
  Matrix b01 = right_action_matrix(res.d1_second, as, at);
  Matrix b10 = right_action_matrix(res.d2_first, as, at);
  Matrix b11 = right_action_matrix(res.d2_second, as, at);
  CochainComplex C{Matrix(pt.field, 2 * g, g), Matrix(pt.field, g, 2 * g), g};
  for (size_t i = 0; i < g; ++i)
    for (size_t j = 0; j < g; ++j) {
      C.d0.at(i, j) = b00.at(i, j);
      C.d0.at(g + i, j) = b01.at(i, j);
      C.d1.at(i, j) = b10.at(i, j);
      C.d1.at(i, g + j) = b11.at(i, j);
    }
  return C;
}

inline CochainReport cohomology_report(const RepPoint& pt, const GroupSpec& G, TwistKind twist) {
  CochainComplex C = gamma_q_cochain(pt, G, twist, CoeffKind::AdStar);
  long g = (long)C.g;
  long r0 = (long)C.d0.rank();
  long r1 = (long)C.d1.rank();
  CochainReport rep;
  rep.h0 = g - r0;
  rep.h1 = 2 * g - r0 - r1;
  rep.h2 = g - r1;
  rep.euler = rep.h0 - rep.h1 + rep.h2;
  if (rep.euler != 0) throw Error("euler characteristic nonzero");
  rep.smooth_certificate = rep.h2 == 0;
  ParamScheme S = tame_framed_ideal(G, pt.q, pt.field, twist);
  TangentData td = tangent_data(S, pt);
  rep.tangent_consistency = td.corank == (long)G.dim() + rep.h2;
  return rep;
}

// solutions X with Ad(tau) X = X and Ad(sigma_eff) X = q^{-1} X (or q X)
inline SingularFiber singular_fiber(const RepPoint& pt, const GroupSpec& G, TwistKind twist,
                                    SigmaEigen convention = SigmaEigen::QInverse) {
  detail::require_on_tame(G, twist, pt);
  const FieldPtr& K = pt.field;
  if (!K->char_zero() && pt.q % (long)K->p == 0) throw BadCharacteristic();
  auto [at, as] = detail::adjoint_pair(G, twist, pt);
  size_t g = at.rows();
  FieldElem qe = Field::from_long(K, pt.q);
  FieldElem c = convention == SigmaEigen::QInverse ? qe.inverse() : qe;
  Matrix sys(K, 2 * g, g);
  for (size_t i = 0; i < g; ++i)
    for (size_t j = 0; j < g; ++j) {
      sys.at(i, j) = at.at(i, j);
      sys.at(g + i, j) = as.at(i, j);
    }
  for (size_t i = 0; i < g; ++i) {
    sys.at(i, i) = sys.at(i, i) - Field::one(K);
    sys.at(g + i, i) = sys.at(g + i, i) - c;
  }
  std::vector<Matrix> lb = lie_basis(G, K);
  size_t n = G.matrix_size();
  Matrix zero(K, n, n);
  SingularFiber out;
  out.convention = convention;
  for (const auto& v : sys.kernel_basis()) {
    Matrix X(K, n, n);
    for (size_t j = 0; j < g; ++j) X = X + lb[j].scaled(v[j]);
    if (!(X.pow((long)n) == zero)) out.all_nilpotent = false;
    out.basis.push_back(X);
  }
  out.dim = (long)out.basis.size();
  return out;
}

}  // namespace locparam
