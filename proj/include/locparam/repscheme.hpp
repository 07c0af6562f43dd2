#pragma once

#include "algroup.hpp"
#include "groebner.hpp"
#include "grouppres.hpp"

namespace locparam {

enum class Locus { Tame, Unipotent, Unramified, Borel, Generic };

inline std::string locus_name(Locus l) {
  switch (l) {
    case Locus::Tame: return "tame";
    case Locus::Unipotent: return "unipotent";
    case Locus::Unramified: return "unramified";
    case Locus::Borel: return "borel";
    case Locus::Generic: return "generic";
  }
  return "?";
}

// words in abstract generators, exponents may be negative
struct FinitePresentation {
  size_t ngens = 0;
  std::vector<std::vector<std::pair<size_t, long>>> relators;

  static FinitePresentation free_group(size_t k) { return {k, {}}; }
  static FinitePresentation cyclic(long n) {
    FinitePresentation p;
    p.ngens = 1;
    p.relators = {{{0, n}}};
    return p;
  }
  // generator 0 = tau, generator 1 = sigma; relator s t s^-1 t^-q
  static FinitePresentation tame(long q) {
    FinitePresentation p;
    p.ngens = 2;
    p.relators = {{{1, 1}, {0, 1}, {1, -1}, {0, -q}}};
    return p;
  }
};

// variable bookkeeping, -1 entries are structurally zero (Borel chart)
struct SchemeLayout {
  size_t copies = 2;
  std::vector<std::vector<int>> entry;      // copy -> n*n entry vars (torus: diagonal)
  std::vector<int> invdet;                  // copy -> det-inverse var, -1 if none
  std::vector<std::vector<int>> torus_inv;  // copy -> per-coordinate inverse vars
};

struct ParamScheme {
  GroupSpec group;
  TwistKind twist = TwistKind::Plain;
  long q = 2;
  Locus locus = Locus::Tame;
  FinitePresentation pres;
  RingPtr ring;
  SchemeLayout layout;
  std::vector<Polynomial> rel_gens;   // scheme equations, rows of the Jacobian
  std::vector<Polynomial> unit_gens;  // inverse-variable constraints
  std::vector<bool> inverse_var;
  long virtual_dim = 0;

  std::vector<Polynomial> all_gens() const {
    std::vector<Polynomial> g = rel_gens;
    for (const auto& u : unit_gens) g.push_back(u);
    return g;
  }
  Ideal ideal() const { return Ideal(ring, all_gens()); }
  size_t ambient_dim() const {
    size_t n = 0;
    for (bool b : inverse_var)
      if (!b) ++n;
    return n;
  }
};

inline std::vector<std::string> copy_prefixes(size_t copies) {
  if (copies == 2) return {"t", "s"};
  std::vector<std::string> p;
  for (size_t i = 0; i < copies; ++i) p.push_back("x" + std::to_string(i + 1));
  return p;
}

// ambient polynomial ring plus unit constraints for `copies` group elements
inline ParamScheme scheme_shell(const GroupSpec& g, size_t copies, const FieldPtr& field,
                                bool borel = false) {
  ParamScheme S;
  S.group = g;
  std::vector<std::string> names;
  std::vector<bool> inv;
  SchemeLayout lay;
  lay.copies = copies;
  std::vector<std::string> pre = copy_prefixes(copies);
  size_t n = g.matrix_size();
  for (size_t c = 0; c < copies; ++c) {
    if (g.kind == GroupKind::Torus) {
      std::vector<int> ent(n * n, -1), tin(n, -1);
      for (size_t k = 0; k < n; ++k) {
        ent[k * n + k] = (int)names.size();
        names.push_back(pre[c] + std::to_string(k + 1));
        inv.push_back(false);
      }
      for (size_t k = 0; k < n; ++k) {
        tin[k] = (int)names.size();
        names.push_back(pre[c] + "i" + std::to_string(k + 1));
        inv.push_back(true);
      }
      lay.entry.push_back(ent);
      lay.torus_inv.push_back(tin);
      lay.invdet.push_back(-1);
    } else {
      std::vector<int> ent(n * n, -1);
      for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
          if (borel && i > j) continue;
          ent[i * n + j] = (int)names.size();
          names.push_back(pre[c] + std::to_string(i + 1) + std::to_string(j + 1));
          inv.push_back(false);
        }
      lay.entry.push_back(ent);
      lay.torus_inv.push_back({});
      if (g.kind == GroupKind::GL) {
        lay.invdet.push_back((int)names.size());
        names.push_back("d" + pre[c] + "i");
        inv.push_back(true);
      } else {
        lay.invdet.push_back(-1);
      }
    }
  }
  S.ring = make_ring(field, names);
  S.layout = lay;
  S.inverse_var = inv;

  for (size_t c = 0; c < copies; ++c) {
    if (g.kind == GroupKind::Torus) {
      for (size_t k = 0; k < n; ++k) {
        Polynomial u = Polynomial::variable(S.ring, (size_t)lay.entry[c][k * n + k]);
        Polynomial v = Polynomial::variable(S.ring, (size_t)lay.torus_inv[c][k]);
        S.unit_gens.push_back(u * v - Polynomial::constant(S.ring, 1));
      }
    } else {
      PolyMat M(S.ring, n);
      for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
          if (lay.entry[c][i * n + j] >= 0)
            M.at(i, j) = Polynomial::variable(S.ring, (size_t)lay.entry[c][i * n + j]);
      if (g.kind == GroupKind::GL) {
        Polynomial dv = Polynomial::variable(S.ring, (size_t)lay.invdet[c]);
        S.unit_gens.push_back(M.det() * dv - Polynomial::constant(S.ring, 1));
      } else {
        S.rel_gens.push_back(M.det() - Polynomial::constant(S.ring, 1));
      }
    }
  }
  return S;
}

inline PolyMat copy_matrix(const ParamScheme& S, size_t c) {
  size_t n = S.group.matrix_size();
  PolyMat M(S.ring, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      int v = S.layout.entry[c][i * n + j];
      if (v >= 0) M.at(i, j) = Polynomial::variable(S.ring, (size_t)v);
    }
  return M;
}

// symbolic inverse: GL via adjugate * inverse-determinant variable, SL via
// adjugate, torus via the inverse variables
inline PolyMat copy_matrix_inverse(const ParamScheme& S, size_t c) {
  size_t n = S.group.matrix_size();
  if (S.group.kind == GroupKind::Torus) {
    PolyMat M(S.ring, n);
    for (size_t k = 0; k < n; ++k)
      M.at(k, k) = Polynomial::variable(S.ring, (size_t)S.layout.torus_inv[c][k]);
    return M;
  }
  PolyMat adj = copy_matrix(S, c).adjugate();
  if (S.group.kind == GroupKind::SL) return adj;
  Polynomial dv = Polynomial::variable(S.ring, (size_t)S.layout.invdet[c]);
  return adj.scaled(dv);
}

inline Polynomial scalar_poly(const RingPtr& r, const FieldElem& c) {
  return Polynomial::term(r, Monomial::unit(r->nvars()), c);
}

// T with entry (i,j) scaled by q^{i-j}; identity twist for tori
inline PolyMat twisted_tau(const ParamScheme& S, const PolyMat& T) {
  if (S.twist == TwistKind::Plain || S.group.kind == GroupKind::Torus) return T;
  const FieldPtr& f = S.ring->field;
  FieldElem qe = Field::from_long(f, S.q);
  FieldElem qi = qe.inverse();
  size_t n = T.n;
  PolyMat out = T;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      if (out.at(i, j).is_zero() || i == j) continue;
      FieldElem s = Field::one(f);
      if (i > j)
        for (size_t k = 0; k < i - j; ++k) s = s * qe;
      else
        for (size_t k = 0; k < j - i; ++k) s = s * qi;
      out.at(i, j) = out.at(i, j) * s;
    }
  return out;
}

inline void check_tame_pre(const GroupSpec& g, long q, const FieldPtr& field, TwistKind twist) {
  if (q < 2) throw InvalidParameter("tame parameter must be at least 2");
  if (q > 16) throw BudgetExceeded("tame parameter capped at 16");
  if (!field->char_zero() && q % (long)field->p == 0)
    throw BadCharacteristic();
  if (twist == TwistKind::Cyclotomic && g.kind == GroupKind::SL)
    throw WrongKind("cyclotomic twist needs an integral central lift");
}

// relation sigma tau sigma^-1 = tau^q as the cleared system S T_tw - T^q S
inline ParamScheme tame_framed_ideal(const GroupSpec& g, long q, const FieldPtr& field,
                                     TwistKind twist = TwistKind::Plain) {
  check_tame_pre(g, q, field, twist);
  ParamScheme S = scheme_shell(g, 2, field);
  S.twist = twist;
  S.q = q;
  S.locus = Locus::Tame;
  S.pres = FinitePresentation::tame(q);
  S.virtual_dim = (long)g.dim();
  size_t n = g.matrix_size();
  if (g.kind == GroupKind::Torus) {
    // row i of A - qI read as a cleared monomial identity
    for (size_t i = 0; i < n; ++i) {
      std::vector<long> e(n, 0);
      for (size_t j = 0; j < n; ++j) e[j] = (long)mpz_get_si(g.frobenius[i][j].get_mpz_t());
      e[i] -= q;
      Monomial pos = Monomial::unit(S.ring->nvars()), neg = pos;
      for (size_t j = 0; j < n; ++j) {
        size_t var = (size_t)S.layout.entry[0][j * n + j];
        if (e[j] > 0)
          pos = pos * Monomial::var(S.ring->nvars(), var, (uint32_t)e[j]);
        else if (e[j] < 0)
          neg = neg * Monomial::var(S.ring->nvars(), var, (uint32_t)(-e[j]));
      }
      Polynomial gen = Polynomial::term(S.ring, pos, Field::one(field)) -
                       Polynomial::term(S.ring, neg, Field::one(field));
      if (!gen.is_zero()) S.rel_gens.push_back(gen);
    }
    return S;
  }
  PolyMat T = copy_matrix(S, 0), Sm = copy_matrix(S, 1);
  PolyMat lhs = Sm * twisted_tau(S, T) - T.pow((unsigned long)q) * Sm;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (!lhs.at(i, j).is_zero()) S.rel_gens.push_back(lhs.at(i, j));
  return S;
}

inline ParamScheme unipotent_ideal(const ParamScheme& base) {
  if (base.locus != Locus::Tame) throw WrongKind("unipotent locus derives from a tame scheme");
  ParamScheme S = base;
  S.locus = Locus::Unipotent;
  size_t n = S.group.matrix_size();
  if (S.group.kind == GroupKind::Torus) {
    for (size_t k = 0; k < n; ++k) {
      Polynomial u = Polynomial::variable(S.ring, (size_t)S.layout.entry[0][k * n + k]);
      S.rel_gens.push_back(u - Polynomial::constant(S.ring, 1));
    }
    return S;
  }
  PolyMat T = copy_matrix(S, 0);
  std::vector<Polynomial> chi = T.char_invariants();
  for (size_t k = 1; k <= n; ++k) {
    // binomial(n, k) = e_k at the identity
    long bin = 1;
    for (size_t i = 0; i < k; ++i) bin = bin * (long)(n - i) / (long)(i + 1);
    S.rel_gens.push_back(chi[k - 1] - Polynomial::constant(S.ring, bin));
  }
  return S;
}

inline ParamScheme unramified_ideal(const ParamScheme& base) {
  if (base.locus != Locus::Tame) throw WrongKind("unramified locus derives from a tame scheme");
  ParamScheme S = base;
  S.locus = Locus::Unramified;
  size_t n = S.group.matrix_size();
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      int v = S.layout.entry[0][i * n + j];
      if (v < 0) continue;
      Polynomial p = Polynomial::variable(S.ring, (size_t)v);
      if (i == j) p -= Polynomial::constant(S.ring, 1);
      S.rel_gens.push_back(p);
    }
  return S;
}

inline ParamScheme borel_ideal(const GroupSpec& g, long q, const FieldPtr& field,
                               TwistKind twist = TwistKind::Plain) {
  if (g.kind == GroupKind::Torus) {
    ParamScheme S = tame_framed_ideal(g, q, field, twist);
    S.locus = Locus::Borel;
    return S;
  }
  if (g.matrix_size() != 2) throw UnsupportedGroup("Borel chart implemented for rank 1");
  check_tame_pre(g, q, field, twist);
  ParamScheme S = scheme_shell(g, 2, field, true);
  S.twist = twist;
  S.q = q;
  S.locus = Locus::Borel;
  S.pres = FinitePresentation::tame(q);
  size_t n = 2;
  S.virtual_dim = g.kind == GroupKind::GL ? 3 : 2;  // dim B
  PolyMat T = copy_matrix(S, 0), Sm = copy_matrix(S, 1);
  PolyMat lhs = Sm * twisted_tau(S, T) - T.pow((unsigned long)q) * Sm;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (!lhs.at(i, j).is_zero()) S.rel_gens.push_back(lhs.at(i, j));
  return S;
}

inline ParamScheme generic_rep_ideal(const FinitePresentation& pres, const GroupSpec& g,
                                     const FieldPtr& field) {
  ParamScheme S = scheme_shell(g, pres.ngens == 0 ? 1 : pres.ngens, field);
  S.locus = Locus::Generic;
  S.pres = pres;
  S.virtual_dim =
      pres.relators.empty() ? (long)(pres.ngens * g.dim()) : (long)g.dim();
  size_t n = g.matrix_size();
  for (const auto& word : pres.relators) {
    PolyMat acc = PolyMat::identity(S.ring, n);
    for (const auto& [gen, exp] : word) {
      if (gen >= pres.ngens) throw InvalidParameter("relator references a missing generator");
      PolyMat base = exp >= 0 ? copy_matrix(S, gen) : copy_matrix_inverse(S, gen);
      long e = exp >= 0 ? exp : -exp;
      for (long k = 0; k < e; ++k) acc = acc * base;
    }
    PolyMat diff = acc - PolyMat::identity(S.ring, n);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j)
        if (!diff.at(i, j).is_zero()) S.rel_gens.push_back(diff.at(i, j));
  }
  return S;
}

// symbolic relator check: each relator evaluates to the identity modulo the
// ideal; in Cyclotomic mode the sigma slot absorbs rho_ell(q^{-1})
inline bool relators_vanish(const ParamScheme& S) {
  if (S.pres.relators.empty()) return true;
  if (S.pres.ngens > S.layout.copies) return false;
  Ideal I = S.ideal();
  size_t n = S.group.matrix_size();
  std::vector<PolyMat> mats, invs;
  for (size_t g = 0; g < S.pres.ngens; ++g) {
    PolyMat M = copy_matrix(S, g), Minv = copy_matrix_inverse(S, g);
    if (g == 1 && S.locus != Locus::Generic && S.twist == TwistKind::Cyclotomic) {
      const FieldPtr& f = S.ring->field;
      Matrix R = rho_ell(S.group, Field::from_long(f, S.q).inverse());
      Matrix Rb = rho_ell(S.group, Field::from_long(f, S.q));
      PolyMat Rp(S.ring, n), Rbp(S.ring, n);
      for (size_t i = 0; i < n; ++i) {
        Rp.at(i, i) = scalar_poly(S.ring, R.at(i, i));
        Rbp.at(i, i) = scalar_poly(S.ring, Rb.at(i, i));
      }
      M = M * Rp;
      Minv = Rbp * Minv;
    }
    mats.push_back(M);
    invs.push_back(Minv);
  }
  for (const auto& word : S.pres.relators) {
    PolyMat acc = PolyMat::identity(S.ring, n);
    for (const auto& [gen, exp] : word) {
      const PolyMat& base = exp >= 0 ? mats[gen] : invs[gen];
      long e = exp >= 0 ? exp : -exp;
      for (long k = 0; k < e; ++k) acc = acc * base;
    }
    PolyMat diff = acc - PolyMat::identity(S.ring, n);
    for (const auto& p : diff.d)
      if (!I.reduce(p).is_zero()) return false;
  }
  return true;
}

struct RepPoint {
  FieldPtr field;
  std::vector<Matrix> mats;
  long q = 2;
};

// value of every ambient variable at the point, in the point's field
inline std::vector<FieldElem> point_assignment(const ParamScheme& S, const RepPoint& pt) {
  if (pt.mats.size() != S.layout.copies) throw InvalidParameter("copy count mismatch");
  size_t n = S.group.matrix_size();
  std::vector<FieldElem> vals(S.ring->nvars(), Field::zero(pt.field));
  for (size_t c = 0; c < S.layout.copies; ++c) {
    const Matrix& M = pt.mats[c];
    if (M.rows() != n || M.cols() != n) throw InvalidParameter("matrix size mismatch");
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) {
        int v = S.layout.entry[c][i * n + j];
        if (v >= 0)
          vals[(size_t)v] = M.at(i, j);
        else if (!M.at(i, j).is_zero())
          throw PointNotOnScheme("entry outside the chart is nonzero");
      }
    if (S.layout.invdet[c] >= 0) vals[(size_t)S.layout.invdet[c]] = M.det().inverse();
    if (!S.layout.torus_inv.empty() && !S.layout.torus_inv[c].empty())
      for (size_t k = 0; k < n; ++k)
        vals[(size_t)S.layout.torus_inv[c][k]] = M.at(k, k).inverse();
  }
  return vals;
}

inline bool on_scheme(const ParamScheme& S, const RepPoint& pt) {
  std::vector<FieldElem> vals;
  try {
    vals = point_assignment(S, pt);
  } catch (const PointNotOnScheme&) {
    return false;
  } catch (const DivisionByZero&) {
    return false;
  }
  for (const auto& g : S.all_gens())
    if (!g.eval(pt.field, vals).is_zero()) return false;
  return true;
}

struct TangentData {
  size_t ambient_dim = 0;
  size_t jacobian_rank = 0;
  long corank = 0;
};

// corank of the Jacobian of the scheme equations in the unit-free ambient
inline TangentData tangent_data(const ParamScheme& S, const RepPoint& pt) {
  if (!on_scheme(S, pt)) throw PointNotOnScheme();
  std::vector<FieldElem> vals = point_assignment(S, pt);
  std::vector<size_t> cols;
  for (size_t v = 0; v < S.ring->nvars(); ++v)
    if (!S.inverse_var[v]) cols.push_back(v);
  Matrix J(pt.field, S.rel_gens.size(), cols.size());
  for (size_t r = 0; r < S.rel_gens.size(); ++r)
    for (size_t c = 0; c < cols.size(); ++c)
      J.at(r, c) = S.rel_gens[r].derivative(cols[c]).eval(pt.field, vals);
  TangentData out;
  out.ambient_dim = cols.size();
  out.jacobian_rank = J.rank();
  out.corank = (long)out.ambient_dim - (long)out.jacobian_rank;
  return out;
}

// --- deterministic point search ---

// nonzero field elements in a reproducible order
inline std::vector<FieldElem> unit_pool(const FieldPtr& f, size_t want) {
  std::vector<FieldElem> out;
  if (f->char_zero()) {
    for (long k = 1; out.size() < want; ++k) {
      out.push_back(Field::from_long(f, k));
      if (out.size() < want) out.push_back(Field::from_long(f, -k));
      if (out.size() < want && k >= 2)
        out.push_back(Field::from_mpq(f, mpq_class(1, k)));
    }
    if (f->deg > 1 && want > 4) {
      out.push_back(Field::generator(f));
      out.push_back(Field::generator(f) + Field::one(f));
    }
    return out;
  }
  size_t total = 1;
  for (int i = 0; i < f->deg; ++i) total *= (size_t)f->p;
  std::vector<unsigned long> coords(f->deg, 0);
  for (size_t code = 1; code < total && out.size() < want; ++code) {
    size_t c = code;
    for (int i = 0; i < f->deg; ++i) {
      coords[i] = c % f->p;
      c /= f->p;
    }
    out.push_back(Field::from_coords_p(f, coords));
  }
  return out;
}

inline std::vector<unsigned long> divisors_of(unsigned long m) {
  std::vector<unsigned long> d;
  for (unsigned long k = 1; k <= m; ++k)
    if (m % k == 0) d.push_back(k);
  return d;
}

// smallest supported field extending `base` that carries primitive d-th roots
inline FieldPtr field_with_roots(const FieldPtr& base, unsigned long d) {
  if (d <= 2) return base;
  if (base->char_zero()) {
    if (base->deg == 1) return cyclotomic_field(d);
    return base;  // extension fields already chosen per family
  }
  unsigned long dd = d;
  while (dd % base->p == 0) dd /= base->p;
  if (dd <= 1) return base;
  mpz_class sz;
  mpz_class pz(base->p);
  mpz_pow_ui(sz.get_mpz_t(), pz.get_mpz_t(), (unsigned long)base->deg);
  if ((sz - 1) % dd == 0) return base;
  return prime_field_with_root_order(base->p, dd);
}

inline Matrix diag_matrix(const FieldPtr& f, const std::vector<FieldElem>& vals) {
  Matrix m(f, vals.size(), vals.size());
  for (size_t i = 0; i < vals.size(); ++i) m.at(i, i) = vals[i];
  return m;
}

// invertible sigma candidates over f; SL variant filters to det = 1
inline std::vector<Matrix> sigma_pool(const FieldPtr& f, size_t n, bool det_one, size_t want) {
  std::vector<Matrix> out;
  std::vector<FieldElem> u = unit_pool(f, want + 8);
  FieldElem one = Field::one(f);
  if (n == 1) {
    for (const auto& a : u) {
      if (det_one && !(a - one).is_zero()) continue;
      out.push_back(diag_matrix(f, {a}));
      if (out.size() >= want) return out;
    }
    return out;
  }
  auto push = [&](Matrix m) {
    if (out.size() >= want) return;
    if (det_one && !(m.det() - one).is_zero()) return;
    if (m.det().is_zero()) return;
    out.push_back(std::move(m));
  };
  if (n == 2) {
    for (const auto& a : u) {
      if (out.size() >= want) break;
      if (det_one)
        push(diag_matrix(f, {a, a.inverse()}));
      else
        for (const auto& b : u) {
          push(diag_matrix(f, {a, b}));
          if (out.size() >= want) break;
        }
    }
    for (const auto& b : u) {
      Matrix m = Matrix::identity(f, 2);
      m.at(0, 1) = b;
      push(m);
      Matrix l = Matrix::identity(f, 2);
      l.at(1, 0) = b;
      push(l);
      Matrix w(f, 2, 2);
      w.at(0, 1) = b;
      w.at(1, 0) = det_one ? -b.inverse() : b;
      push(w);
      if (out.size() >= want) break;
    }
    Matrix g(f, 2, 2);
    g.at(0, 0) = one;
    g.at(0, 1) = one;
    g.at(1, 0) = one;
    g.at(1, 1) = one + one;
    push(g);
    return out;
  }
  // n = 3: diagonal and permutation-shaped candidates
  for (const auto& a : u) {
    if (out.size() >= want) break;
    for (const auto& b : u) {
      if (out.size() >= want) break;
      FieldElem c = det_one ? (a * b).inverse() : one;
      push(diag_matrix(f, {a, b, c}));
    }
  }
  Matrix cyc(f, 3, 3);
  cyc.at(0, 1) = one;
  cyc.at(1, 2) = one;
  cyc.at(2, 0) = one;
  push(cyc);
  for (const auto& b : u) {
    Matrix m = Matrix::identity(f, 3);
    m.at(0, 1) = b;
    push(m);
    if (out.size() >= want) break;
  }
  return out;
}

namespace detail {

// post-compose sigma with rho_ell(q) so the pair lands on the twisted scheme
inline Matrix twist_sigma(const ParamScheme& S, const FieldPtr& f, const Matrix& sigma) {
  if (S.twist == TwistKind::Plain || S.group.kind == GroupKind::Torus) return sigma;
  return sigma * rho_ell(S.group, Field::from_long(f, S.q));
}

struct PointCollector {
  const ParamScheme& S;
  size_t want;
  size_t family_cap = SIZE_MAX;
  size_t family_count = 0;
  std::vector<RepPoint> pts;

  void begin_family() { family_count = 0; }
  bool globally_full() const { return pts.size() >= want; }
  bool full() const { return globally_full() || family_count >= family_cap; }
  void offer(const FieldPtr& f, Matrix tau, Matrix sigma) {
    if (full()) return;
    RepPoint pt{f, {std::move(tau), twist_sigma(S, f, std::move(sigma))}, S.q};
    if (!on_scheme(S, pt)) return;
    for (const auto& old : pts)
      if (same_field(old.field, pt.field) && old.mats[0] == pt.mats[0] && old.mats[1] == pt.mats[1])
        return;
    pts.push_back(std::move(pt));
    ++family_count;
  }
};

inline void torus_points(const ParamScheme& S, const FieldPtr& base, PointCollector& col) {
  col.begin_family();
  size_t r = S.group.rank;
  long q = S.q;
  // solution characters of coker(M^T), M = A - qI acting on exponents
  ZMat Mt(r, std::vector<mpz_class>(r, 0));
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < r; ++j) Mt[j][i] = S.group.frobenius[i][j] - (i == j ? q : 0);
  SmithForm snf = smith_normal_form(Mt);
  std::vector<unsigned long> ords;
  unsigned long lcm_all = 1;
  for (size_t i = 0; i < r; ++i) {
    mpz_class d = i < snf.divisors.size() ? snf.divisors[i] : 0;
    unsigned long di = d == 0 ? 1 : mpz_get_ui(d.get_mpz_t());
    if (!base->char_zero())
      while (di % base->p == 0) di /= base->p;
    ords.push_back(di);
    lcm_all = std::lcm(lcm_all, di);
  }
  FieldPtr K = field_with_roots(base, lcm_all);
  std::vector<FieldElem> zeta;
  for (size_t i = 0; i < r; ++i)
    zeta.push_back(ords[i] <= 1 ? Field::one(K) : root_of_unity(K, ords[i]));
  // tau solutions t_j = prod_i mu_i^{U_ij}
  std::vector<std::vector<FieldElem>> taus;
  std::vector<size_t> idx(r, 0);
  for (;;) {
    std::vector<FieldElem> mu;
    for (size_t i = 0; i < r; ++i) mu.push_back(zeta[i].pow((long)idx[i]));
    std::vector<FieldElem> t(r, Field::one(K));
    for (size_t j = 0; j < r; ++j)
      for (size_t i = 0; i < r; ++i) {
        long e = (long)mpz_get_si(snf.U[i][j].get_mpz_t());
        if (e > 0)
          t[j] = t[j] * mu[i].pow(e);
        else if (e < 0)
          t[j] = t[j] * mu[i].inverse().pow(-e);
      }
    taus.push_back(t);
    size_t pos = 0;
    while (pos < r) {
      if (++idx[pos] < std::max<unsigned long>(ords[pos], 1)) break;
      idx[pos] = 0;
      ++pos;
    }
    if (pos == r) break;
  }
  size_t per = std::max<size_t>(2, col.want / std::max<size_t>(taus.size(), 1) + 1);
  std::vector<FieldElem> su = unit_pool(K, per * (r == 1 ? 1 : per) + 4);
  for (const auto& t : taus) {
    if (col.full()) return;
    if (r == 1) {
      for (const auto& s : su) {
        col.offer(K, diag_matrix(K, t), diag_matrix(K, {s}));
        if (col.full()) return;
      }
    } else {
      for (const auto& s1 : su) {
        for (const auto& s2 : su) {
          std::vector<FieldElem> s(r, Field::one(K));
          s[0] = s1;
          if (r > 1) s[1] = s2;
          col.offer(K, diag_matrix(K, t), diag_matrix(K, s));
          if (col.full()) return;
        }
        if (col.full()) return;
      }
    }
  }
}

inline void matrix_points(const ParamScheme& S, const FieldPtr& base, PointCollector& col) {
  size_t n = S.group.matrix_size();
  bool sl = S.group.kind == GroupKind::SL;
  long q = S.q;

  // central tau
  col.begin_family();
  for (unsigned long d : divisors_of((unsigned long)(q - 1))) {
    if (col.full()) break;
    if (!base->char_zero() && d % base->p == 0) continue;
    FieldPtr K = field_with_roots(base, d);
    FieldElem lam = d <= 1 ? Field::one(K) : root_of_unity(K, d);
    for (unsigned long k = 0; k < d; ++k) {
      FieldElem v = lam.pow((long)k);
      if (sl) {
        FieldElem det = v.pow((long)n);
        if (!(det - Field::one(K)).is_zero()) continue;
      }
      Matrix tau = diag_matrix(K, std::vector<FieldElem>(n, v));
      for (const auto& sig : sigma_pool(K, n, sl, col.want))
        col.offer(K, tau, sig);
      if (col.full()) break;
    }
  }
  if (n == 1 || col.globally_full()) return;

  if (n == 2) {
    // split diagonal tau with both eigenvalues Frobenius-fixed
    col.begin_family();
    for (unsigned long d : divisors_of((unsigned long)(q - 1))) {
      if (col.full()) break;
      if (!base->char_zero() && d % base->p == 0) continue;
      FieldPtr K = field_with_roots(base, d);
      FieldElem lam = d <= 1 ? Field::one(K) : root_of_unity(K, d);
      std::vector<FieldElem> su = unit_pool(K, col.want + 4);
      for (unsigned long k1 = 0; k1 < d && !col.full(); ++k1)
        for (unsigned long k2 = 0; k2 < d && !col.full(); ++k2) {
          FieldElem a = lam.pow((long)k1), b = lam.pow((long)k2);
          if ((a - b).is_zero()) continue;  // central case covered
          if (sl && !(a * b - Field::one(K)).is_zero()) continue;
          Matrix tau = diag_matrix(K, {a, b});
          for (const auto& x : su) {
            for (const auto& y : su) {
              col.offer(K, tau, diag_matrix(K, {x, y}));
              if (col.full()) break;
            }
            if (col.full()) break;
          }
        }
    }
    // conjugate pair tau = diag(lam, lam^q), antidiagonal sigma
    col.begin_family();
    unsigned long bound = (unsigned long)(q * q - 1);
    for (unsigned long d : divisors_of(bound)) {
      if (col.full()) break;
      if (!base->char_zero() && d % base->p == 0) continue;
      if ((unsigned long)(q - 1) % d == 0) continue;
      if (sl && (unsigned long)(q + 1) % d != 0) continue;
      FieldPtr K = field_with_roots(base, d);
      FieldElem lam = root_of_unity(K, d);
      Matrix tau = diag_matrix(K, {lam, lam.pow(q)});
      if (sl && !(tau.det() - Field::one(K)).is_zero()) continue;
      for (const auto& b : unit_pool(K, col.want + 2)) {
        Matrix sig(K, 2, 2);
        sig.at(0, 1) = b;
        sig.at(1, 0) = sl ? -b.inverse() : b;
        col.offer(K, tau, sig);
        if (col.full()) break;
      }
    }
    // Jordan block tau
    col.begin_family();
    if (!col.full()) {
      FieldPtr K = base;
      FieldElem qK = Field::from_long(K, q);
      std::vector<FieldElem> roots;  // s with q s^2 = 1 when SL
      if (sl) {
        FieldElem target = qK.inverse();
        bool found = false;
        for (const auto& u2 : unit_pool(K, 64)) {
          if ((u2 * u2 - target).is_zero()) {
            roots.push_back(u2);
            found = true;
            break;
          }
        }
        if (!found) {
          if (K->char_zero() && K->deg == 1) {
            std::vector<mpq_class> mod = {mpq_class(-q), 0, 1};  // a^2 = q
            K = Field::rational_ext(mod, "a");
            FieldElem a = Field::generator(K);
            roots.push_back((a * Field::from_long(K, q).inverse()));  // a/q, (a/q)^2 = 1/q
          } else if (!K->char_zero() && K->deg == 1) {
            FieldPtr K2 = prime_field_with_root_order(K->p, (unsigned long)(K->p + 1));
            FieldElem target2 = Field::from_long(K2, q).inverse();
            for (const auto& u2 : unit_pool(K2, (size_t)(K2->p * K2->p))) {
              if ((u2 * u2 - target2).is_zero()) {
                K = K2;
                roots.push_back(u2);
                break;
              }
            }
          }
        }
      }
      Matrix tau(K, 2, 2);
      tau.at(0, 0) = Field::one(K);
      tau.at(0, 1) = Field::one(K);
      tau.at(1, 1) = Field::one(K);
      FieldElem qf = Field::from_long(K, q);
      if (sl) {
        for (const auto& s : roots)
          for (const auto& b : unit_pool(K, col.want)) {
            Matrix sig(K, 2, 2);
            sig.at(0, 0) = qf * s;
            sig.at(0, 1) = b;
            sig.at(1, 1) = s;
            col.offer(K, tau, sig);
            if (col.full()) break;
          }
      } else {
        for (const auto& s : unit_pool(K, col.want))
          for (const auto& b : unit_pool(K, 4)) {
            Matrix sig(K, 2, 2);
            sig.at(0, 0) = qf * s;
            sig.at(0, 1) = b;
            sig.at(1, 1) = s;
            col.offer(K, tau, sig);
            if (col.full()) break;
          }
      }
    }
    return;
  }

  // n = 3: diagonal tau over mu_{q-1} with diagonal sigma
  col.begin_family();
  for (unsigned long d : divisors_of((unsigned long)(q - 1))) {
    if (col.full()) return;
    if (!base->char_zero() && d % base->p == 0) continue;
    FieldPtr K = field_with_roots(base, d);
    FieldElem lam = d <= 1 ? Field::one(K) : root_of_unity(K, d);
    std::vector<FieldElem> su = unit_pool(K, col.want);
    for (unsigned long k1 = 0; k1 < d && !col.full(); ++k1)
      for (unsigned long k2 = 0; k2 < d && !col.full(); ++k2)
        for (unsigned long k3 = 0; k3 < d && !col.full(); ++k3) {
          std::vector<FieldElem> ev = {lam.pow((long)k1), lam.pow((long)k2), lam.pow((long)k3)};
          Matrix tau = diag_matrix(K, ev);
          if (sl && !(tau.det() - Field::one(K)).is_zero()) continue;
          for (const auto& x : su) {
            std::vector<FieldElem> sv = {x, Field::one(K),
                                         sl ? x.inverse() : Field::one(K)};
            col.offer(K, tau, diag_matrix(K, sv));
            if (col.full()) break;
          }
        }
  }
}

}  // namespace detail

// degree-doubling extension for small finite fields
inline FieldPtr doubled_field(const FieldPtr& f) {
  mpz_class sz;
  mpz_class pz(f->p);
  mpz_pow_ui(sz.get_mpz_t(), pz.get_mpz_t(), (unsigned long)(2 * f->deg));
  return prime_field_with_root_order(f->p, mpz_get_ui(mpz_class(sz - 1).get_mpz_t()));
}

inline std::vector<RepPoint> find_points(const ParamScheme& S, const FieldPtr& field, size_t want) {
  if (want == 0) return {};
  detail::PointCollector col{S, want};
  if (S.group.kind == GroupKind::Torus) {
    detail::torus_points(S, field, col);
    if (!col.globally_full() && !field->char_zero())
      detail::torus_points(S, doubled_field(field), col);
  } else {
    // first pass interleaves the search families, then refill
    col.family_cap = std::max<size_t>(2, want / 4);
    detail::matrix_points(S, field, col);
    col.family_cap = SIZE_MAX;
    if (!col.globally_full()) detail::matrix_points(S, field, col);
    if (!col.globally_full() && !field->char_zero())
      detail::matrix_points(S, doubled_field(field), col);
  }
  if (col.pts.empty()) {
    if (S.ideal().is_unit_ideal()) return {};
    throw BudgetExceeded("no point found within the search bound");
  }
  return col.pts;
}

}  // namespace locparam
