#pragma once

// Connected-component invariants: fixed multisets of the q-power map on the
// adjoint quotient, inertial types of sampled points, pseudorepresentation
// coordinates, and the cyclic-group finiteness check.

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "algroup.hpp"
#include "groebner.hpp"
#include "grouppres.hpp"
#include "modgb.hpp"
#include "repscheme.hpp"
#include "zlattice.hpp"

namespace locparam {

// exponent of a root of unity, reduced to num/den with 0 <= num < den
struct Fraction {
  unsigned long num = 0;
  unsigned long den = 1;

  bool operator==(const Fraction& o) const { return num == o.num && den == o.den; }
  bool operator<(const Fraction& o) const {
    return den != o.den ? den < o.den : num < o.num;
  }
};

inline Fraction make_fraction(unsigned long long num, unsigned long den) {
  if (den == 0) throw InvalidParameter("fraction denominator zero");
  num %= den;
  unsigned long g = std::gcd((unsigned long)num, den);
  if (g == 0) g = 1;
  return {(unsigned long)(num / g), den / g};
}

struct InertialDatum {
  std::vector<Fraction> eigen;
  std::vector<Polynomial> minpolys;    // vanishing polynomial per primitive order
  std::vector<size_t> multiplicities;  // eigenvalue count per entry of minpolys

  bool operator==(const InertialDatum& o) const { return eigen == o.eigen; }
};

namespace detail {

// orders of tame eigenvalues: divisors of q^m - 1 for m <= n, prime to char
inline std::vector<unsigned long> tame_orders(size_t n, long q, unsigned long chr) {
  std::set<unsigned long> out;
  unsigned long long pw = 1;
  for (size_t m = 1; m <= n; ++m) {
    pw *= (unsigned long long)q;
    for (unsigned long d : divisors_of((unsigned long)(pw - 1)))
      if (chr == 0 || d % chr != 0) out.insert(d);
  }
  return {out.begin(), out.end()};
}

struct QOrbit {
  unsigned long den = 1;
  std::vector<Fraction> elems;
};

inline std::vector<QOrbit> qpower_orbit_pool(size_t n, long q, unsigned long chr) {
  std::vector<QOrbit> pool;
  for (unsigned long d : tame_orders(n, q, chr)) {
    if (d == 1) {
      pool.push_back({1, {Fraction{0, 1}}});
      continue;
    }
    std::vector<char> seen(d, 0);
    for (unsigned long k = 1; k < d; ++k) {
      if (seen[k] || std::gcd(k, d) != 1) continue;
      std::vector<Fraction> orb;
      unsigned long cur = k;
      do {
        seen[cur] = 1;
        orb.push_back({cur, d});
        cur = (unsigned long)((unsigned long long)cur * (unsigned long)q % d);
      } while (cur != k);
      std::sort(orb.begin(), orb.end());
      if (orb.size() <= n) pool.push_back({d, orb});
    }
  }
  std::sort(pool.begin(), pool.end(), [](const QOrbit& a, const QOrbit& b) {
    if (a.den != b.den) return a.den < b.den;
    return a.elems.front() < b.elems.front();
  });
  return pool;
}

inline void collect_orbit_multisets(const std::vector<QOrbit>& pool, size_t idx, size_t left,
                                    std::vector<size_t>& cur,
                                    std::vector<std::vector<size_t>>& out) {
  if (left == 0) {
    out.push_back(cur);
    return;
  }
  for (size_t i = idx; i < pool.size(); ++i) {
    if (pool[i].elems.size() > left) continue;
    cur.push_back(i);
    collect_orbit_multisets(pool, i, left - pool[i].elems.size(), cur, out);
    cur.pop_back();
  }
}

// cyclotomic vanishing polynomial of the primitive order class, prime field
inline Polynomial order_minpoly(unsigned long d, const FieldPtr& field) {
  FieldPtr K = field->char_zero() ? Field::rationals() : Field::prime(field->p);
  RingPtr R = make_ring(K, {"x"}, MonomialOrder::lex());
  Polynomial p = Polynomial::zero(R);
  std::vector<mpq_class> cs = cyclotomic_coeffs(d);
  for (size_t i = 0; i < cs.size(); ++i) {
    FieldElem c = Field::from_mpq(K, cs[i]);
    if (c.is_zero()) continue;
    p = p + Polynomial::constant(R, c) * Polynomial::variable(R, 0, (uint32_t)i);
  }
  return p;
}

inline InertialDatum make_datum(std::vector<Fraction> eigen, const FieldPtr& field,
                                bool sort_eigen) {
  if (sort_eigen) std::sort(eigen.begin(), eigen.end());
  InertialDatum d;
  d.eigen = std::move(eigen);
  std::map<unsigned long, size_t> counts;
  for (const auto& f : d.eigen) ++counts[f.den];
  for (const auto& [den, c] : counts) {
    d.minpolys.push_back(order_minpoly(den, field));
    d.multiplicities.push_back(c);
  }
  return d;
}

}  // namespace detail

// complete enumeration of q-power-fixed semisimple classes over the closure
inline std::vector<InertialDatum> adjoint_quotient_fixed_points(const GroupSpec& G, long q,
                                                                const FieldPtr& field) {
  if (q < 2 || q > 16) throw InvalidParameter("q out of supported range");
  if (G.kind == GroupKind::SL)
    throw UnsupportedGroup("adjoint-quotient enumeration covers GL(n) and tori");
  unsigned long chr = field->char_zero() ? 0 : field->p;
  std::vector<InertialDatum> out;

  if (G.kind == GroupKind::Torus) {
    size_t r = G.rank;
    ZMat Mt(r, std::vector<mpz_class>(r, 0));
    for (size_t i = 0; i < r; ++i)
      for (size_t j = 0; j < r; ++j) Mt[j][i] = G.frobenius[i][j] - (i == j ? q : 0);
    SmithForm snf = smith_normal_form(Mt);
    std::vector<unsigned long> ords;
    for (size_t i = 0; i < r; ++i) {
      mpz_class d = i < snf.divisors.size() ? snf.divisors[i] : 0;
      unsigned long di = d == 0 ? 1 : mpz_get_ui(d.get_mpz_t());
      if (chr)
        while (di % chr == 0) di /= chr;
      ords.push_back(di);
    }
    std::vector<size_t> idx(r, 0);
    for (;;) {
      std::vector<Fraction> t(r, Fraction{0, 1});
      for (size_t j = 0; j < r; ++j) {
        mpq_class acc(0);
        for (size_t i = 0; i < r; ++i) {
          mpq_class term(mpz_class((unsigned long)idx[i]) * snf.U[i][j], mpz_class(ords[i]));
          term.canonicalize();
          acc += term;
        }
        mpq_class flo = acc - mpq_class(acc.get_num() / acc.get_den());
        if (flo < 0) flo += 1;
        t[j] = make_fraction(mpz_get_ui(flo.get_num().get_mpz_t()),
                             mpz_get_ui(flo.get_den().get_mpz_t()));
      }
      out.push_back(detail::make_datum(std::move(t), field, false));
      size_t pos = 0;
      while (pos < r) {
        if (++idx[pos] < std::max<unsigned long>(ords[pos], 1)) break;
        idx[pos] = 0;
        ++pos;
      }
      if (pos == r) break;
    }
    return out;
  }

  size_t n = G.n;
  std::vector<detail::QOrbit> pool = detail::qpower_orbit_pool(n, q, chr);
  std::vector<std::vector<size_t>> combos;
  std::vector<size_t> cur;
  detail::collect_orbit_multisets(pool, 0, n, cur, combos);
  for (const auto& combo : combos) {
    std::vector<Fraction> eigen;
    for (size_t i : combo)
      for (const auto& f : pool[i].elems) eigen.push_back(f);
    out.push_back(detail::make_datum(std::move(eigen), field, true));
  }
  std::sort(out.begin(), out.end(), [](const InertialDatum& a, const InertialDatum& b) {
    return std::lexicographical_compare(a.eigen.begin(), a.eigen.end(), b.eigen.begin(),
                                        b.eigen.end());
  });
  return out;
}

// characteristic-polynomial coordinates (e_1, ..., e_n) of a datum, computed
// in a field containing the needed roots of unity
inline std::vector<FieldElem> datum_char_coords(const InertialDatum& d, const FieldPtr& base) {
  unsigned long N = 1;
  for (const auto& f : d.eigen) N = std::lcm(N, f.den);
  FieldPtr L;
  if (base->char_zero())
    L = N <= 2 ? Field::rationals() : cyclotomic_field(N);
  else
    L = prime_field_with_root_order(base->p, N);
  FieldElem z = Field::one(L);
  if (N == 2) z = -Field::one(L);
  if (N > 2) z = root_of_unity(L, N);
  UPoly chi = UPoly::constant(L, Field::one(L));
  for (const auto& f : d.eigen) {
    UPoly lin = UPoly::from_coeffs(L, {-z.pow((long)(f.num * (N / f.den))), Field::one(L)});
    chi = chi * lin;
  }
  size_t n = d.eigen.size();
  std::vector<FieldElem> e;
  for (size_t i = 1; i <= n; ++i) {
    FieldElem c = chi.c[n - i];
    if (i % 2 == 1) c = -c;
    e.push_back(c);
  }
  return e;
}

// eigenvalue data of tau at a point of the tame scheme
inline InertialDatum inertial_type(const RepPoint& pt, const GroupSpec& G,
                                   TwistKind twist = TwistKind::Plain) {
  ParamScheme S = tame_framed_ideal(G, pt.q, pt.field, twist);
  if (!on_scheme(S, pt)) throw PointNotOnScheme();
  const FieldPtr& K = pt.field;
  unsigned long chr = K->char_zero() ? 0 : K->p;
  const Matrix& tau = pt.mats[0];
  size_t n = tau.rows();

  if (G.kind == GroupKind::Torus) {
    // label the character tuple through one shared root of unity
    ZMat M(n, std::vector<mpz_class>(n, 0));
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) M[i][j] = G.frobenius[i][j] - (i == j ? pt.q : 0);
    SmithForm snf = smith_normal_form(M);
    mpz_class ann = 1;
    for (const auto& d : snf.divisors) ann = lcm(ann, d == 0 ? mpz_class(1) : d);
    unsigned long av = mpz_get_ui(ann.get_mpz_t());
    if (chr)
      while (av % chr == 0) av /= chr;
    std::vector<unsigned long> divs = divisors_of(av);
    std::vector<unsigned long> ords;
    unsigned long D = 1;
    for (size_t j = 0; j < n; ++j) {
      unsigned long o = 0;
      for (unsigned long d : divs)
        if ((tau.at(j, j).pow((long)d) - Field::one(K)).is_zero()) {
          o = d;
          break;
        }
      if (o == 0) throw InvalidParameter("character value of unexpected order");
      ords.push_back(o);
      D = std::lcm(D, o);
    }
    FieldElem g = Field::one(K);
    if (D == 2) g = -Field::one(K);
    if (D > 2) g = root_of_unity(K, D);
    std::vector<Fraction> eigen;
    for (size_t j = 0; j < n; ++j) {
      FieldElem acc = Field::one(K);
      unsigned long a = 0;
      while (a < D && !(acc - tau.at(j, j)).is_zero()) {
        acc = acc * g;
        ++a;
      }
      if (a == D && !(acc - tau.at(j, j)).is_zero())
        throw InvalidParameter("character value outside the cyclic group");
      eigen.push_back(make_fraction(a, D));
    }
    return detail::make_datum(std::move(eigen), K, false);
  }

  // characteristic polynomial of tau, dense low-first
  std::vector<FieldElem> einv = tau.char_invariants();
  std::vector<FieldElem> cs(n + 1, Field::zero(K));
  cs[n] = Field::one(K);
  for (size_t i = 1; i <= n; ++i) cs[n - i] = i % 2 == 1 ? -einv[i - 1] : einv[i - 1];
  UPoly chi = UPoly::from_coeffs(K, cs);

  // peel cyclotomic classes off chi, with multiplicity
  std::map<unsigned long, size_t> counts;
  for (unsigned long d : detail::tame_orders(n, pt.q, chr)) {
    std::vector<FieldElem> pcs;
    for (const auto& c : cyclotomic_coeffs(d)) pcs.push_back(Field::from_mpq(K, c));
    UPoly phi = UPoly::from_coeffs(K, pcs);
    for (;;) {
      UPoly g = upoly_gcd(chi, phi);
      if (g.degree() <= 0) break;
      counts[d] += (size_t)g.degree();
      chi = chi.divmod(g).first;
    }
    if (chi.degree() == 0) break;
  }
  if (chi.degree() != 0)
    throw InvalidParameter("tau eigenvalues are not roots of unity of tame order");

  // label each order class by the first union of q-power orbits of that size
  std::vector<detail::QOrbit> pool = detail::qpower_orbit_pool(n, pt.q, chr);
  std::vector<Fraction> eigen;
  for (const auto& [d, cnt] : counts) {
    if (d == 1) {
      for (size_t i = 0; i < cnt; ++i) eigen.push_back({0, 1});
      continue;
    }
    std::vector<detail::QOrbit> orbs;
    for (const auto& ob : pool)
      if (ob.den == d) orbs.push_back(ob);
    std::vector<size_t> pack;
    std::vector<size_t> work;
    bool found = false;
    std::function<void(size_t, size_t)> rec = [&](size_t idx, size_t left) {
      if (found) return;
      if (left == 0) {
        pack = work;
        found = true;
        return;
      }
      for (size_t i = idx; i < orbs.size() && !found; ++i) {
        if (orbs[i].elems.size() > left) continue;
        work.push_back(i);
        rec(i, left - orbs[i].elems.size());
        work.pop_back();
      }
    };
    rec(0, cnt);
    if (!found)
      throw InvalidParameter("eigenvalue multiset is not closed under the q-power map");
    for (size_t i : pack)
      for (const auto& f : orbs[i].elems) eigen.push_back(f);
  }
  return detail::make_datum(std::move(eigen), K, true);
}

inline bool datum_in_set(const InertialDatum& d, const std::vector<InertialDatum>& set) {
  for (const auto& s : set)
    if (s == d) return true;
  return false;
}

// characteristic-polynomial coordinates of word values at a point
inline std::vector<std::vector<FieldElem>> pseudorep_coords(const RepPoint& pt,
                                                            const std::vector<GammaWord>& words) {
  std::vector<std::vector<FieldElem>> out;
  for (const auto& w : words) {
    Matrix M = evaluate_word(w, pt.mats[1], pt.mats[0]);
    out.push_back(M.char_invariants());
  }
  return out;
}

struct EqualizerReport {
  Ideal ideal;
  bool zero_dimensional = false;
  long point_count = 0;   // closure points of the ideal, multiplicity-free
  long oracle_count = 0;  // brute-force multiset enumeration
};

namespace detail {

// distinct-factor part of a univariate polynomial, valid in any characteristic
inline UPoly upoly_radical(UPoly f) {
  if (f.degree() <= 0) return f;
  f = f.monic();
  const FieldPtr& K = f.f;
  unsigned long p = K->char_zero() ? 0 : K->p;
  UPoly der = f.derivative();
  if (der.is_zero()) {
    // f = g(x)^p; extract the p-th root coefficientwise
    UPoly g = UPoly::zero(K);
    g.c.resize(f.c.size() / p + 1, Field::zero(K));
    for (size_t i = 0; i < f.c.size(); i += p) {
      FieldElem c = f.c[i];
      if (K->deg > 1) {
        mpz_class e;
        mpz_ui_pow_ui(e.get_mpz_t(), p, (unsigned long)(K->deg - 1));
        c = c.pow(e);
      }
      g.c[i / p] = c;
    }
    g.trim();
    return upoly_radical(g);
  }
  UPoly g = upoly_gcd(f, der).monic();
  UPoly w = f.divmod(g).first;
  if (p == 0 || g.degree() <= 0) return w;
  // strip the separable factors from g, leaving the p-th power part
  UPoly c = g;
  for (;;) {
    UPoly h = upoly_gcd(c, w).monic();
    if (h.degree() <= 0) break;
    c = c.divmod(h).first;
  }
  if (c.degree() <= 0) return w;
  return (w * upoly_radical(c)).monic();
}

// distinct closure points of a zero-dimensional ideal: radicalize every
// coordinate by the squarefree part of its eliminated minimal polynomial
inline long closure_point_count(const Ideal& I) {
  const RingPtr& R = I.ring();
  size_t nv = R->nvars();
  std::vector<Polynomial> gens = I.gens();
  for (size_t v = 0; v < nv; ++v) {
    Ideal el = eliminate(I, {v});
    const std::vector<Polynomial>& eg = el.gens();
    Polynomial uni = Polynomial::zero(el.ring());
    for (const auto& p : eg)
      if (!p.is_zero() && (uni.is_zero() || p.total_degree() < uni.total_degree())) uni = p;
    if (uni.is_zero()) continue;
    UPoly up = UPoly::zero(R->field);
    for (const auto& t : uni.terms()) {
      uint32_t e = t.m.e[0];
      if (up.c.size() <= e) up.c.resize(e + 1, Field::zero(R->field));
      up.c[e] += t.c;
    }
    up.trim();
    if (up.degree() <= 0) continue;
    UPoly sq = upoly_radical(up);
    Polynomial back = Polynomial::zero(R);
    for (size_t i = 0; i < sq.c.size(); ++i)
      if (!sq.c[i].is_zero())
        back = back + Polynomial::constant(R, sq.c[i]) * Polynomial::variable(R, v, (uint32_t)i);
    gens.push_back(back);
  }
  Ideal rad(R, gens);
  ModCtx ctx{R, rad.groebner()};
  FPModule M = FPModule::cyclic(ctx, {});
  auto dim = vector_space_dim(M);
  if (!dim) throw BudgetExceeded("point count on a positive-dimensional ideal");
  return *dim;
}

}  // namespace detail

// equalizer of X -> X^n and X -> I on conjugacy classes of GL_m
inline EqualizerReport cyclic_equalizer_check(long n, long m, const FieldPtr& field) {
  if (n < 1) throw InvalidParameter("power must be positive");
  if (m < 1 || m > 2) throw UnsupportedGroup("equalizer check supports m <= 2");
  unsigned long chr = field->char_zero() ? 0 : field->p;
  unsigned long np = (unsigned long)n;
  if (chr)
    while (np % chr == 0) np /= chr;

  std::vector<Polynomial> gens;
  RingPtr R;
  if (m == 1) {
    R = make_ring(field, {"x", "w"});
    Polynomial x = Polynomial::variable(R, 0);
    Polynomial w = Polynomial::variable(R, 1);
    gens.push_back(Polynomial::variable(R, 0, (uint32_t)n) - Polynomial::constant(R, 1));
    gens.push_back(x * w - Polynomial::constant(R, 1));
  } else {
    R = make_ring(field, {"e1", "e2", "w"});
    Polynomial e1 = Polynomial::variable(R, 0);
    Polynomial e2 = Polynomial::variable(R, 1);
    Polynomial w = Polynomial::variable(R, 2);
    // p_k = tr X^k by the Newton recurrence p_k = e1 p_{k-1} - e2 p_{k-2}
    Polynomial p0 = Polynomial::constant(R, 2);
    Polynomial p1 = e1;
    for (long k = 2; k <= n; ++k) {
      Polynomial p = e1 * p1 - e2 * p0;
      p0 = p1;
      p1 = p;
    }
    gens.push_back(p1 - Polynomial::constant(R, 2));
    gens.push_back(Polynomial::variable(R, 1, (uint32_t)n) - Polynomial::constant(R, 1));
    gens.push_back(e2 * w - Polynomial::constant(R, 1));
  }

  EqualizerReport rep{Ideal(R, gens)};
  rep.zero_dimensional = rep.ideal.dimension() == 0;
  rep.point_count = detail::closure_point_count(rep.ideal);

  // independent oracle: enumerate multisets of n-th roots of unity exactly
  if (m == 1) {
    rep.oracle_count = (long)np;
  } else {
    FieldPtr L;
    if (chr == 0)
      L = np <= 2 ? Field::rationals() : cyclotomic_field(np);
    else
      L = prime_field_with_root_order(chr, np);
    FieldElem z = Field::one(L);
    if (np == 2) z = -Field::one(L);
    if (np > 2) z = root_of_unity(L, np);
    std::set<std::string> seen;
    for (unsigned long a = 0; a < np; ++a)
      for (unsigned long b = a; b < np; ++b) {
        FieldElem s1 = z.pow((long)a) + z.pow((long)b);
        FieldElem s2 = z.pow((long)(a + b));
        seen.insert(s1.str() + "|" + s2.str());
      }
    rep.oracle_count = (long)seen.size();
  }
  return rep;
}

}  // namespace locparam
