#pragma once

// Satake comparisons: the tame-center presentation for tori as an abelian
// group algebra, the derived Satake match for tori through Ext, and the
// degree-zero unramified Satake match for split rank one.

#include <algorithm>
#include <cstdlib>
#include <map>
#include <string>
#include <vector>

#include "algroup.hpp"
#include "groebner.hpp"
#include "modgb.hpp"
#include "repscheme.hpp"
#include "zlattice.hpp"

namespace locparam {

struct GroupAlgebraPresentation {
  size_t free_rank = 0;
  std::vector<unsigned long> torsion;  // invariant factors > 1
  RingPtr ring;
  std::vector<size_t> torsion_vars;
  std::vector<size_t> free_vars, free_inv_vars;
  Ideal algebra;
};

struct CenterReport {
  ParamScheme scheme;
  GroupAlgebraPresentation group_algebra;
  std::vector<Polynomial> to_group;   // image of each scheme-ring variable
  std::vector<Polynomial> to_scheme;  // image of each group-ring variable
  bool round_trip = false;
};

namespace detail {

// substitute images[v] for variable v; images live in the target ring
inline Polynomial substitute(const Polynomial& p, const RingPtr& target,
                             const std::vector<Polynomial>& images) {
  Polynomial out = Polynomial::zero(target);
  size_t nv = p.ring()->nvars();
  for (const auto& t : p.terms()) {
    Polynomial m = Polynomial::constant(target, t.c);
    for (size_t v = 0; v < nv; ++v)
      for (uint32_t k = 0; k < t.m.e[v]; ++k) m = m * images[v];
    out = out + m;
  }
  return out;
}

inline ZMat zmat_inverse_unimodular(const ZMat& U) {
  size_t n = U.size();
  std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(2 * n, 0));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) a[i][j] = mpq_class(U[i][j]);
    a[i][n + i] = 1;
  }
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) throw InvalidParameter("matrix is singular");
    std::swap(a[piv], a[c]);
    mpq_class inv = 1 / a[c][c];
    for (size_t j = 0; j < 2 * n; ++j) a[c][j] *= inv;
    for (size_t i = 0; i < n; ++i) {
      if (i == c || a[i][c] == 0) continue;
      mpq_class f = a[i][c];
      for (size_t j = 0; j < 2 * n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  ZMat inv(n, std::vector<mpz_class>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      if (a[i][n + j].get_den() != 1) throw InvalidParameter("inverse is not integral");
      inv[i][j] = a[i][n + j].get_num();
    }
  return inv;
}

inline long mod_reduce(const mpz_class& v, unsigned long d) {
  mpz_class r = v % (long)d;
  if (r < 0) r += (long)d;
  return mpz_get_si(r.get_mpz_t());
}

}  // namespace detail

// presents the tame torus scheme ring and the matching group algebra of
// Z^r times coker(A - q), with an explicit substitution witness
inline CenterReport torus_tame_center(const GroupSpec& T, long q, const FieldPtr& field) {
  if (T.kind != GroupKind::Torus) throw WrongKind("tame center computed for tori");
  CenterReport rep{tame_framed_ideal(T, q, field)};
  size_t r = T.rank;

  ZMat Mt(r, std::vector<mpz_class>(r, 0));
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < r; ++j) Mt[j][i] = T.frobenius[i][j] - (i == j ? q : 0);
  SmithForm snf = smith_normal_form(Mt);
  std::vector<unsigned long> ords(r, 1);
  for (size_t i = 0; i < r; ++i) {
    mpz_class d = i < snf.divisors.size() ? snf.divisors[i] : 0;
    if (d < 0) d = -d;
    if (d == 0) throw InvalidParameter("frobenius minus q is singular");
    ords[i] = mpz_get_ui(d.get_mpz_t());
  }

  GroupAlgebraPresentation ga;
  ga.free_rank = r;
  std::vector<std::string> names;
  std::vector<int> row_var(r, -1);  // SNF row index -> torsion variable
  for (size_t i = 0; i < r; ++i)
    if (ords[i] > 1) {
      row_var[i] = (int)names.size();
      ga.torsion.push_back(ords[i]);
      ga.torsion_vars.push_back(names.size());
      names.push_back("x" + std::to_string(ga.torsion.size()));
    }
  for (size_t j = 0; j < r; ++j) {
    ga.free_vars.push_back(names.size());
    names.push_back("z" + std::to_string(j + 1));
  }
  for (size_t j = 0; j < r; ++j) {
    ga.free_inv_vars.push_back(names.size());
    names.push_back("zi" + std::to_string(j + 1));
  }
  ga.ring = make_ring(field, names);
  std::vector<Polynomial> ggens;
  for (size_t k = 0; k < ga.torsion.size(); ++k)
    ggens.push_back(Polynomial::variable(ga.ring, ga.torsion_vars[k], (uint32_t)ga.torsion[k]) -
                    Polynomial::constant(ga.ring, 1));
  for (size_t j = 0; j < r; ++j)
    ggens.push_back(Polynomial::variable(ga.ring, ga.free_vars[j]) *
                        Polynomial::variable(ga.ring, ga.free_inv_vars[j]) -
                    Polynomial::constant(ga.ring, 1));
  ga.algebra = Ideal(ga.ring, ggens);

  // witness: t_j and its inverse map to torsion monomials through U,
  // sigma coordinates map to the free unit pairs
  const SchemeLayout& lay = rep.scheme.layout;
  const RingPtr& SR = rep.scheme.ring;
  size_t nv = SR->nvars();
  std::vector<Polynomial> to_group(nv, Polynomial::constant(ga.ring, 1));
  ZMat Uinv = detail::zmat_inverse_unimodular(snf.U);
  for (size_t j = 0; j < r; ++j) {
    Polynomial fwd = Polynomial::constant(ga.ring, 1);
    Polynomial bwd = Polynomial::constant(ga.ring, 1);
    for (size_t i = 0; i < r; ++i) {
      if (row_var[i] < 0) continue;
      long e = detail::mod_reduce(snf.U[i][j], ords[i]);
      long ei = detail::mod_reduce(-snf.U[i][j], ords[i]);
      if (e > 0) fwd = fwd * Polynomial::variable(ga.ring, (size_t)row_var[i], (uint32_t)e);
      if (ei > 0) bwd = bwd * Polynomial::variable(ga.ring, (size_t)row_var[i], (uint32_t)ei);
    }
    size_t n = T.matrix_size();
    to_group[(size_t)lay.entry[0][j * n + j]] = fwd;
    to_group[(size_t)lay.torus_inv[0][j]] = bwd;
    to_group[(size_t)lay.entry[1][j * n + j]] = Polynomial::variable(ga.ring, ga.free_vars[j]);
    to_group[(size_t)lay.torus_inv[1][j]] = Polynomial::variable(ga.ring, ga.free_inv_vars[j]);
  }

  std::vector<Polynomial> to_scheme(ga.ring->nvars(), Polynomial::constant(SR, 1));
  for (size_t k = 0; k < ga.torsion.size(); ++k) {
    size_t i = 0, seen = 0;
    while (i < r) {
      if (row_var[i] >= 0 && seen++ == k) break;
      ++i;
    }
    Polynomial img = Polynomial::constant(SR, 1);
    size_t n = T.matrix_size();
    for (size_t j = 0; j < r; ++j) {
      mpz_class e = Uinv[j][i];
      if (e > 0)
        img = img * Polynomial::variable(SR, (size_t)lay.entry[0][j * n + j],
                                         (uint32_t)mpz_get_ui(e.get_mpz_t()));
      else if (e < 0)
        img = img * Polynomial::variable(SR, (size_t)lay.torus_inv[0][j],
                                         (uint32_t)mpz_get_ui(mpz_class(-e).get_mpz_t()));
    }
    to_scheme[ga.torsion_vars[k]] = img;
  }
  for (size_t j = 0; j < r; ++j) {
    size_t n = T.matrix_size();
    to_scheme[ga.free_vars[j]] = Polynomial::variable(SR, (size_t)lay.entry[1][j * n + j]);
    to_scheme[ga.free_inv_vars[j]] = Polynomial::variable(SR, (size_t)lay.torus_inv[1][j]);
  }

  // normal-form round trip in both directions
  Ideal IS = rep.scheme.ideal();
  bool ok = true;
  for (const auto& g : rep.scheme.all_gens())
    ok = ok && ga.algebra.reduce(detail::substitute(g, ga.ring, to_group)).is_zero();
  for (const auto& g : ggens)
    ok = ok && IS.reduce(detail::substitute(g, SR, to_scheme)).is_zero();
  for (size_t v = 0; v < nv; ++v) {
    Polynomial back = detail::substitute(to_group[v], SR, to_scheme);
    ok = ok && IS.reduce(back - Polynomial::variable(SR, v)).is_zero();
  }
  for (size_t u = 0; u < ga.ring->nvars(); ++u) {
    Polynomial fwd = detail::substitute(to_scheme[u], ga.ring, to_group);
    ok = ok && ga.algebra.reduce(fwd - Polynomial::variable(ga.ring, u)).is_zero();
  }
  rep.group_algebra = std::move(ga);
  rep.to_group = std::move(to_group);
  rep.to_scheme = std::move(to_scheme);
  rep.round_trip = ok;
  return rep;
}

struct SatakeReport {
  std::vector<long> geometric;
  std::vector<long> group_side;
  bool match = false;
  int first_mismatch = -1;
};

namespace detail {

inline bool small_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace detail

// Ext of the unramified sheaf against itself over F_ell, compared with the
// cohomology of the ell-part of the residue torus
inline SatakeReport derived_satake_torus(const GroupSpec& T, long q, long ell,
                                         size_t max_degree) {
  if (T.kind != GroupKind::Torus) throw WrongKind("derived Satake computed for tori");
  if (q < 2 || q > 16) throw InvalidParameter("q out of supported range");
  if (!detail::small_prime(ell)) throw InvalidParameter("ell must be prime");
  if (q % ell == 0) throw InvalidParameter("ell must not divide q");
  size_t r = T.rank;

  ZMat Mt(r, std::vector<mpz_class>(r, 0));
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < r; ++j) Mt[j][i] = T.frobenius[i][j] - (i == j ? q : 0);
  SmithForm snf = smith_normal_form(Mt);
  std::vector<unsigned long> tors;
  for (size_t i = 0; i < r; ++i) {
    mpz_class d = i < snf.divisors.size() ? snf.divisors[i] : 0;
    if (d < 0) d = -d;
    if (d == 0) throw InvalidParameter("frobenius minus q is singular");
    unsigned long di = mpz_get_ui(d.get_mpz_t());
    if (di > 1) tors.push_back(di);
  }

  SatakeReport rep;
  FieldPtr k = Field::prime((unsigned long)ell);
  if (tors.empty()) {
    rep.geometric.assign(max_degree + 1, 0);
    rep.geometric[0] = 1;
  } else {
    // the free sigma directions change flatly along the base and are
    // dropped; Ext is computed over the finite part alone
    std::vector<std::string> names;
    for (size_t i = 0; i < tors.size(); ++i) names.push_back("x" + std::to_string(i + 1));
    RingPtr R = make_ring(k, names);
    std::vector<Polynomial> base, aug;
    for (size_t i = 0; i < tors.size(); ++i) {
      base.push_back(Polynomial::variable(R, i, (uint32_t)tors[i]) -
                     Polynomial::constant(R, 1));
      aug.push_back(Polynomial::variable(R, i) - Polynomial::constant(R, 1));
    }
    ModCtx ctx(R, base);
    FPModule M = FPModule::cyclic(ctx, aug);
    ExtResult er = ext_dims(M, M, max_degree);
    rep.geometric = er.dims;
  }

  // group side: cohomology of the ell-Sylow subgroup, one [1,1,1,...]
  // factor per cyclic summand of ell-divisible order
  rep.group_side.assign(max_degree + 1, 0);
  rep.group_side[0] = 1;
  for (unsigned long d : tors) {
    if (d % (unsigned long)ell != 0) continue;
    std::vector<long> next(max_degree + 1, 0);
    for (size_t t = 0; t <= max_degree; ++t)
      for (size_t u = 0; u <= t; ++u) next[t] += rep.group_side[u];
    rep.group_side = next;
  }

  rep.match = true;
  for (size_t i = 0; i <= max_degree; ++i)
    if (rep.geometric[i] != rep.group_side[i]) {
      rep.match = false;
      rep.first_mismatch = (int)i;
      break;
    }
  return rep;
}

struct H0SatakeReport {
  std::vector<long> invariant_dims;
  std::vector<long> torus_side_dims;
  bool match = false;
  int first_mismatch = -1;
};

namespace detail {

inline void enumerate_weighted(size_t var, std::vector<uint32_t>& e, size_t left,
                               const std::vector<size_t>& w,
                               std::vector<std::vector<uint32_t>>& out) {
  if (var == e.size()) {
    out.push_back(e);
    return;
  }
  for (size_t k = 0; k * w[var] <= left; ++k) {
    e[var] = (uint32_t)k;
    enumerate_weighted(var + 1, e, left - k * w[var], w, out);
  }
  e[var] = 0;
}

}  // namespace detail

// conjugation invariants of the unramified scheme degree-by-degree against
// the symmetric Laurent count on the dual torus
inline H0SatakeReport unramified_satake_h0(const GroupSpec& G, const FieldPtr& field,
                                           size_t degree_bound) {
  if (!field->char_zero()) throw BadCharacteristic();
  if (G.n != 2 || G.kind == GroupKind::Torus)
    throw UnsupportedGroup("degree-zero Satake covers GL(2) and SL(2)");
  bool gl = G.kind == GroupKind::GL;

  std::vector<std::string> names = {"s11", "s12", "s21", "s22"};
  if (gl) names.push_back("dsi");
  RingPtr R = make_ring(field, names);
  PolyMat Sm(R, 2);
  for (size_t i = 0; i < 2; ++i)
    for (size_t j = 0; j < 2; ++j) Sm.at(i, j) = Polynomial::variable(R, i * 2 + j);
  Polynomial det = Sm.at(0, 0) * Sm.at(1, 1) - Sm.at(0, 1) * Sm.at(1, 0);
  std::vector<Polynomial> gens;
  if (gl)
    gens.push_back(det * Polynomial::variable(R, 4) - Polynomial::constant(R, 1));
  else
    gens.push_back(det - Polynomial::constant(R, 1));
  Ideal I(R, gens);
  const std::vector<Polynomial>& gb = I.groebner();

  std::vector<size_t> w(R->nvars(), 1);
  if (gl) w[4] = 2;
  std::vector<std::vector<uint32_t>> exps;
  std::vector<uint32_t> cur(R->nvars(), 0);
  detail::enumerate_weighted(0, cur, degree_bound, w, exps);

  std::vector<Monomial> mons;
  std::map<std::vector<uint32_t>, size_t> index;
  for (const auto& e : exps) {
    Monomial m = Monomial::unit(R->nvars());
    uint32_t deg = 0;
    for (size_t v = 0; v < e.size(); ++v) {
      m.e[v] = e[v];
      deg += e[v];
    }
    m.deg = deg;
    bool standard = true;
    for (const auto& g : gb)
      if (g.lm().divides(m)) standard = false;
    if (!standard) continue;
    index[m.e] = mons.size();
    mons.push_back(m);
  }
  auto wdeg = [&](const Monomial& m) {
    size_t d = 0;
    for (size_t v = 0; v < m.e.size(); ++v) d += m.e[v] * w[v];
    return d;
  };

  // stacked derivation matrix: one block row per Lie-algebra direction
  std::vector<Matrix> basis = lie_basis(G, field);
  size_t nm = mons.size();
  Matrix D(field, basis.size() * nm, nm);
  for (size_t b = 0; b < basis.size(); ++b) {
    const Matrix& E = basis[b];
    PolyMat comm(R, 2);
    for (size_t i = 0; i < 2; ++i)
      for (size_t j = 0; j < 2; ++j) {
        Polynomial c = Polynomial::zero(R);
        for (size_t k = 0; k < 2; ++k) {
          c = c + Polynomial::constant(R, E.at(i, k)) * Sm.at(k, j);
          c = c - Sm.at(i, k) * Polynomial::constant(R, E.at(k, j));
        }
        comm.at(i, j) = c;
      }
    for (size_t col = 0; col < nm; ++col) {
      Polynomial m = Polynomial::term(R, mons[col], Field::one(field));
      Polynomial img = Polynomial::zero(R);
      for (size_t i = 0; i < 2; ++i)
        for (size_t j = 0; j < 2; ++j) img = img + comm.at(i, j) * m.derivative(i * 2 + j);
      img = I.reduce(img);
      for (const auto& t : img.terms()) {
        auto it = index.find(t.m.e);
        if (it == index.end()) throw Error("derivation left the truncated span");
        D.at(b * nm + it->second, col) += t.c;
      }
    }
  }

  H0SatakeReport rep;
  long prev = 0;
  for (size_t d = 0; d <= degree_bound; ++d) {
    std::vector<size_t> cols;
    for (size_t c = 0; c < nm; ++c)
      if (wdeg(mons[c]) <= d) cols.push_back(c);
    Matrix Dd(field, D.rows(), cols.size());
    for (size_t r2 = 0; r2 < D.rows(); ++r2)
      for (size_t c = 0; c < cols.size(); ++c) Dd.at(r2, c) = D.at(r2, cols[c]);
    long fd = (long)cols.size() - (long)Dd.rank();
    rep.invariant_dims.push_back(fd - prev);
    prev = fd;
  }

  for (size_t d = 0; d <= degree_bound; ++d) {
    if (!gl) {
      rep.torus_side_dims.push_back(1);
      continue;
    }
    long cnt = 0;
    for (long bb = -(long)d; bb <= (long)d; ++bb) {
      long rest = (long)d - 2 * std::labs(bb);
      if (rest >= 0) ++cnt;
    }
    rep.torus_side_dims.push_back(cnt);
  }

  rep.match = true;
  for (size_t d = 0; d <= degree_bound; ++d)
    if (rep.invariant_dims[d] != rep.torus_side_dims[d]) {
      rep.match = false;
      rep.first_mismatch = (int)d;
      break;
    }
  return rep;
}

}  // namespace locparam
