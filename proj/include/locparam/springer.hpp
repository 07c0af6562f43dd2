#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "groebner.hpp"
#include "matrix.hpp"
#include "modgb.hpp"
#include "repscheme.hpp"

namespace locparam {

// Springer fibers inside P^1 for rank-one groups: the fiber over a pair
// (tau, sigma) is the locus of Borel subgroups containing both matrices,
// described on the two standard affine charts of the flag line.

struct SpringerFiberReport {
  RepPoint point;
  Ideal chart_z;  // lines spanned by (z : 1)
  Ideal chart_w;  // lines spanned by (1 : w)
  int fiber_dim = 0;
  long fiber_length = 0;  // -1 when the fiber is positive-dimensional
  bool reduced = false;
  bool glue_consistent = false;
};

namespace detail {

// det([M v, v]) for v = (u0, u1); the line span(v) is M-stable iff this is 0.
// Chart z plugs in v = (z, 1), chart w plugs in v = (1, w).
inline UPoly borel_chart_poly(const Matrix& m, bool chart_z) {
  const FieldPtr& f = m.field();
  FieldElem a = Field::zero(f) - m.at(1, 0);
  FieldElem b = m.at(0, 0) - m.at(1, 1);
  FieldElem c = m.at(0, 1);
  if (chart_z) return UPoly::from_coeffs(f, {c, b, a});
  return UPoly::from_coeffs(f, {a, b, c});
}

inline long upoly_low_order(const UPoly& p) {
  for (size_t i = 0; i < p.c.size(); ++i)
    if (!p.c[i].is_zero()) return (long)i;
  return -1;
}

inline UPoly upoly_strip_low(const UPoly& p, long k) {
  if (k <= 0) return p;
  UPoly r = UPoly::zero(p.f);
  if ((size_t)k < p.c.size()) r.c.assign(p.c.begin() + k, p.c.end());
  r.trim();
  return r;
}

inline Polynomial upoly_to_poly(const RingPtr& r, const UPoly& p) {
  Polynomial out = Polynomial::zero(r);
  for (size_t i = 0; i < p.c.size(); ++i)
    if (!p.c[i].is_zero())
      out += Polynomial::term(r, Monomial::var(1, 0, (uint32_t)i), p.c[i]);
  return out;
}

}  // namespace detail

inline SpringerFiberReport springer_fiber(const RepPoint& pt, const GroupSpec& g, Locus locus,
                                          TwistKind twist = TwistKind::Plain) {
  if (g.kind == GroupKind::Torus || g.matrix_size() != 2)
    throw UnsupportedGroup("springer fibers need a rank-one matrix group");
  if (locus != Locus::Tame && locus != Locus::Unipotent)
    throw InvalidParameter("springer fiber locus must be tame or unipotent");
  if (pt.mats.size() != 2) throw InvalidParameter("expected a (tau, sigma) matrix pair");
  ParamScheme tame = tame_framed_ideal(g, pt.q, pt.field, twist);
  ParamScheme sch = locus == Locus::Unipotent ? unipotent_ideal(tame) : tame;
  if (!on_scheme(sch, pt)) throw PointNotOnScheme("sample is not on the requested locus");

  UPoly fz_t = detail::borel_chart_poly(pt.mats[0], true);
  UPoly fz_s = detail::borel_chart_poly(pt.mats[1], true);
  UPoly fw_t = detail::borel_chart_poly(pt.mats[0], false);
  UPoly fw_s = detail::borel_chart_poly(pt.mats[1], false);

  RingPtr rz = make_ring(pt.field, {"z"});
  RingPtr rw = make_ring(pt.field, {"w"});
  SpringerFiberReport rep;
  rep.point = pt;
  rep.chart_z = Ideal(rz, {detail::upoly_to_poly(rz, fz_t), detail::upoly_to_poly(rz, fz_s)});
  rep.chart_w = Ideal(rw, {detail::upoly_to_poly(rw, fw_t), detail::upoly_to_poly(rw, fw_s)});

  UPoly gz = upoly_gcd(fz_t, fz_s);
  UPoly gw = upoly_gcd(fw_t, fw_s);
  if (gz.is_zero()) {
    // both matrices scalar: every line works and the fiber is all of P^1
    rep.fiber_dim = 1;
    rep.fiber_length = -1;
    rep.reduced = true;
    rep.glue_consistent = true;
    return rep;
  }
  long ord_w = detail::upoly_low_order(gw);
  rep.fiber_length = (long)gz.degree() + ord_w;
  rep.fiber_dim = rep.fiber_length == 0 ? -1 : 0;
  rep.reduced = (gz.degree() <= 0 || upoly_squarefree(gz)) && ord_w <= 1;
  UPoly core_z = detail::upoly_strip_low(gz, detail::upoly_low_order(gz));
  UPoly core_w = detail::upoly_strip_low(gw, ord_w);
  rep.glue_consistent = core_z.reversed().monic() == core_w.monic();
  return rep;
}

// Cech cohomology of the structure sheaf of one fiber, computed directly
// from the chart equations: returns (h0, h1).
inline std::pair<long, long> fiber_cech_ranks(const SpringerFiberReport& rep) {
  const FieldPtr& f = rep.point.field;
  FieldElem one = Field::one(f);
  if (rep.fiber_dim == 1) {
    // truncated Laurent model at two levels; both give H^*(P^1, O)
    std::pair<long, long> out{0, 0};
    for (long n = 3; n <= 4; ++n) {
      Matrix m(f, (size_t)(2 * n + 1), (size_t)(2 * n + 2));
      for (long i = 0; i <= n; ++i) m.at((size_t)(n + i), (size_t)i) = one;
      for (long j = 0; j <= n; ++j)
        m.at((size_t)(n - j), (size_t)(n + 1 + j)) = Field::zero(f) - one;
      long rank = (long)m.rank();
      std::pair<long, long> cur{2 * n + 2 - rank, 2 * n + 1 - rank};
      if (n == 3)
        out = cur;
      else if (cur != out)
        throw Error("truncated Laurent model failed to stabilize");
    }
    return out;
  }
  UPoly gz = upoly_gcd(detail::borel_chart_poly(rep.point.mats[0], true),
                       detail::borel_chart_poly(rep.point.mats[1], true));
  UPoly gw = upoly_gcd(detail::borel_chart_poly(rep.point.mats[0], false),
                       detail::borel_chart_poly(rep.point.mats[1], false));
  UPoly core = detail::upoly_strip_low(gz, detail::upoly_low_order(gz));
  size_t dz = (size_t)std::max(gz.degree(), 0);
  size_t dw = (size_t)std::max(gw.degree(), 0);
  size_t m = (size_t)std::max(core.degree(), 0);
  if (m == 0) return {(long)(dz + dw), 0};

  // restriction of each chart to the overlap k[z]/(core), with w acting as 1/z
  FieldElem c0i = core.c[0].inverse();
  UPoly zinv = UPoly::zero(f);
  for (size_t i = 1; i < core.c.size(); ++i)
    zinv.c.push_back(Field::zero(f) - c0i * core.c[i]);
  zinv.trim();
  auto reduce = [&](const UPoly& p) { return p.divmod(core).second; };
  Matrix mat(f, m, dz + dw);
  UPoly pz = UPoly::constant(f, one);
  for (size_t i = 0; i < dz; ++i) {
    UPoly r = reduce(pz);
    for (size_t t = 0; t < r.c.size(); ++t) mat.at(t, i) = r.c[t];
    pz = pz * UPoly::from_coeffs(f, {Field::zero(f), one});
  }
  UPoly pw = UPoly::constant(f, one);
  for (size_t j = 0; j < dw; ++j) {
    UPoly r = reduce(pw);
    for (size_t t = 0; t < r.c.size(); ++t) mat.at(t, dz + j) = Field::zero(f) - r.c[t];
    pw = reduce(pw * zinv);
  }
  long rank = (long)mat.rank();
  return {(long)(dz + dw) - rank, (long)m - rank};
}

// Pushforward of O along the two-chart Cech cover of the Borel total space
// over the chosen base locus.

struct PushforwardReport {
  ParamScheme scheme;  // base presentation: ring, generators, layout
  size_t level = 2;    // section twist n used for the reported answer
  bool stable = false;
  FPModule R0;
  std::vector<ModVec> R0_lifts;  // kernel generators inside N_n (+) N_n
  FPModule R1;
  std::vector<long> hilbert_R0;
  bool decomposition_found = false;
  Ideal ann_unipotent;
  Ideal ann_unramified;
};

namespace detail {

struct CechLevel {
  size_t n = 0;
  FPModule sum;   // N_n (+) N_n
  FPModule top;   // N_{2n}
  std::vector<ModVec> cols;
  KernelData ker;
  FPModule coker;
};

// relations cutting the degree-n slice of base[u0,u1]/(F_T, F_S) on the
// basis e_k = u0^{n-k} u1^k
inline std::vector<ModVec> section_rels(const RingPtr& ring,
                                        const std::vector<std::array<Polynomial, 3>>& quads,
                                        size_t n) {
  std::vector<ModVec> rels;
  for (const auto& qd : quads)
    for (size_t b = 0; b + 2 <= n; ++b) {
      ModVec v = mv_zero(ring, n + 1);
      v.c[b] = qd[0];
      v.c[b + 1] = qd[1];
      v.c[b + 2] = qd[2];
      rels.push_back(std::move(v));
    }
  return rels;
}

// kernel presentation that keeps a distinguished element (known to lie in the
// kernel exactly) as the first generator through pruning
inline KernelData kernel_with_unit(const ModMap& f, const ModVec& unit,
                                   const GBLimits& lim = {}) {
  const ModCtx& ctx = f.src->ctx;
  size_t a = f.src->rank, b = f.dst->rank;
  std::vector<ModVec> list = f.cols;
  for (const auto& r : f.dst->rels) list.push_back(r);
  std::vector<ModVec> syz = mod_syzygies(list, b, ctx, lim);
  std::vector<ModVec> lifts{unit};
  std::vector<ModVec> srcgb = mod_groebner(f.src->rels, ctx);
  for (const auto& s : syz) {
    ModVec v = mv_zero(ctx.ring, a);
    bool nonzero = false;
    for (size_t i = 0; i < a; ++i) {
      v.c[i] = s.c[i];
      if (!v.c[i].is_zero()) nonzero = true;
    }
    if (nonzero && !mod_member(v, srcgb, ctx)) lifts.push_back(std::move(v));
  }
  std::vector<size_t> kept;
  for (size_t i = 0; i < lifts.size(); ++i) kept.push_back(i);
  for (bool changed = true; changed;) {
    changed = false;
    for (size_t pos = kept.size(); pos-- > 1;) {
      size_t j = kept[pos];
      std::vector<ModVec> others = f.src->rels;
      for (size_t k : kept)
        if (k != j) others.push_back(lifts[k]);
      if (mod_member(lifts[j], mod_groebner(others, ctx), ctx)) {
        kept.erase(kept.begin() + (long)pos);
        changed = true;
      }
    }
  }
  KernelData out;
  for (size_t k : kept) out.gens.push_back(lifts[k]);
  std::vector<ModVec> list2 = out.gens;
  for (const auto& r : f.src->rels) list2.push_back(r);
  std::vector<ModVec> syz2 = mod_syzygies(list2, a, ctx, lim);
  std::vector<ModVec> rels;
  for (const auto& s : syz2) {
    ModVec v = mv_zero(ctx.ring, out.gens.size());
    bool nonzero = false;
    for (size_t i = 0; i < out.gens.size(); ++i) {
      v.c[i] = s.c[i];
      if (!v.c[i].is_zero()) nonzero = true;
    }
    if (nonzero) rels.push_back(std::move(v));
  }
  out.mod = FPModule(ctx, out.gens.size(), std::move(rels));
  return out;
}

inline CechLevel build_cech_level(const ModCtx& ctx,
                                  const std::vector<std::array<Polynomial, 3>>& quads,
                                  size_t n) {
  const RingPtr& ring = ctx.ring;
  CechLevel L;
  L.n = n;
  std::vector<ModVec> nrels = section_rels(ring, quads, n);
  std::vector<ModVec> srels;
  for (const auto& r : nrels) {
    ModVec a = mv_zero(ring, 2 * (n + 1));
    ModVec b = mv_zero(ring, 2 * (n + 1));
    for (size_t k = 0; k <= n; ++k) {
      a.c[k] = r.c[k];
      b.c[n + 1 + k] = r.c[k];
    }
    srels.push_back(std::move(a));
    srels.push_back(std::move(b));
  }
  L.sum = FPModule(ctx, 2 * (n + 1), std::move(srels));
  L.top = FPModule(ctx, 2 * n + 1, section_rels(ring, quads, 2 * n));
  // difference of restrictions: x/u1^n on chart z, y/u0^n on chart w,
  // compared inside the degree-2n sections after clearing denominators
  for (size_t k = 0; k <= n; ++k) L.cols.push_back(mv_basis(ring, 2 * n + 1, k));
  for (size_t k = 0; k <= n; ++k) {
    ModVec v = mv_zero(ring, 2 * n + 1);
    v.c[n + k] = Polynomial::constant(ring, -1);
    L.cols.push_back(std::move(v));
  }
  ModMap f{&L.sum, &L.top, L.cols};
  ModVec unit = mv_zero(ring, 2 * (n + 1));
  unit.c[n] = Polynomial::constant(ring, 1);
  unit.c[n + 1] = Polynomial::constant(ring, 1);
  L.ker = kernel_with_unit(f, unit);
  std::vector<ModVec> crels = L.top.rels;
  for (const auto& c : L.cols) crels.push_back(c);
  L.coker = FPModule(ctx, 2 * n + 1, std::move(crels));
  return L;
}

// (x, y) -> (u1 x, u0 y), the comparison map from level n into level n+1
inline ModVec raise_level(const ModVec& v, const RingPtr& ring, size_t n) {
  ModVec out = mv_zero(ring, 2 * (n + 2));
  for (size_t k = 0; k <= n; ++k) {
    out.c[k + 1] = v.c[k];
    out.c[(n + 2) + k] = v.c[n + 1 + k];
  }
  return out;
}

inline std::vector<long> cech_hilbert(const CechLevel& L, uint32_t dmax) {
  std::vector<long> hs = hilbert_counts(L.sum, {}, dmax);
  std::vector<long> ht = hilbert_counts(L.top, {}, dmax);
  std::vector<long> hq = hilbert_counts(L.coker, {}, dmax);
  std::vector<long> out(dmax + 1, 0);
  for (uint32_t d = 0; d <= dmax; ++d) out[d] = hs[d] - ht[d] + hq[d];
  return out;
}

inline bool level_stable(const CechLevel& lo, const CechLevel& hi, const ModCtx& ctx,
                         uint32_t dmax) {
  const RingPtr& ring = ctx.ring;
  std::vector<ModVec> span = hi.sum.rels;
  for (const auto& g : lo.ker.gens) {
    ModVec up = raise_level(g, ring, lo.n);
    // the raised generator must land in the higher kernel
    ModVec img = mv_zero(ring, 2 * hi.n + 1);
    for (size_t j = 0; j < up.c.size(); ++j) {
      if (up.c[j].is_zero()) continue;
      for (size_t i = 0; i < img.c.size(); ++i)
        if (!hi.cols[j].c[i].is_zero()) img.c[i] += up.c[j] * hi.cols[j].c[i];
    }
    if (!mod_member(img, hi.top.rel_groebner(), ctx)) return false;
    span.push_back(std::move(up));
  }
  std::vector<ModVec> gb = mod_groebner(span, ctx);
  for (const auto& g : hi.ker.gens)
    if (!mod_member(g, gb, ctx)) return false;
  return cech_hilbert(lo, dmax) == cech_hilbert(hi, dmax);
}

inline std::vector<Monomial> monomials_up_to(const RingPtr& ring, uint32_t deg) {
  std::vector<Monomial> mons;
  for (uint32_t d = 0; d <= deg; ++d)
    enumerate_monomials(ring->nvars(), std::vector<uint32_t>(ring->nvars(), 1), d,
                        [&](const Monomial& m) { mons.push_back(m); });
  return mons;
}

// value-level workspace for endomorphisms of a presented module: a map is
// stored through its images of the presentation generators
struct EndoAlgebra {
  const FPModule* M;
  std::vector<ModVec> id;

  explicit EndoAlgebra(const FPModule& mod) : M(&mod) {
    for (size_t i = 0; i < mod.rank; ++i)
      id.push_back(
          mod_normal_form(mv_basis(mod.ctx.ring, mod.rank, i), mod.rel_groebner(), mod.ctx));
  }

  ModVec apply(const std::vector<ModVec>& cols, const ModVec& v) const {
    ModVec out = mv_zero(M->ctx.ring, M->rank);
    for (size_t j = 0; j < M->rank; ++j) {
      if (v.c[j].is_zero()) continue;
      for (size_t i = 0; i < M->rank; ++i)
        if (!cols[j].c[i].is_zero()) out.c[i] += v.c[j] * cols[j].c[i];
    }
    return mod_normal_form(std::move(out), M->rel_groebner(), M->ctx);
  }

  std::vector<ModVec> compose(const std::vector<ModVec>& a, const std::vector<ModVec>& b) const {
    std::vector<ModVec> out;
    for (size_t j = 0; j < M->rank; ++j) out.push_back(apply(a, b[j]));
    return out;
  }

  std::vector<ModVec> complement(const std::vector<ModVec>& e) const {
    std::vector<ModVec> out;
    for (size_t j = 0; j < M->rank; ++j) {
      ModVec v = id[j];
      for (size_t i = 0; i < M->rank; ++i) v.c[i] -= e[j].c[i];
      out.push_back(mod_normal_form(std::move(v), M->rel_groebner(), M->ctx));
    }
    return out;
  }

  bool same(const std::vector<ModVec>& a, const std::vector<ModVec>& b) const {
    for (size_t j = 0; j < M->rank; ++j) {
      ModVec d = a[j];
      for (size_t i = 0; i < M->rank; ++i) d.c[i] -= b[j].c[i];
      if (!mod_normal_form(std::move(d), M->rel_groebner(), M->ctx).is_zero()) return false;
    }
    return true;
  }

  bool is_zero(const std::vector<ModVec>& a) const {
    for (const auto& v : a)
      for (const auto& p : v.c)
        if (!p.is_zero()) return false;
    return true;
  }
};

inline bool radical_contains(const Ideal& big, const Ideal& small_gens) {
  for (const auto& g : small_gens.gens()) {
    if (g.is_zero()) continue;
    bool ok = false;
    Polynomial p = g;
    for (int k = 0; k < 6 && !ok; ++k) {
      if (big.contains(p)) ok = true;
      else p = p * g;
    }
    if (!ok) ok = radical_member(big, g);
    if (!ok) return false;
  }
  return true;
}

inline bool radical_equal(const Ideal& a, const Ideal& b) {
  return radical_contains(a, b) && radical_contains(b, a);
}

// k-basis of the degree-bounded iur-torsion subspace {v : iur . v = 0 in M};
// entries are in normal form, supported on standard monomials of the relation
// basis up to the degree bound
inline std::vector<ModVec> torsion_space(const FPModule& M, const Ideal& iur, uint32_t deg) {
  const ModCtx& ctx = M.ctx;
  const RingPtr& ring = ctx.ring;
  const FieldPtr& f = ring->field;
  size_t r = M.rank;
  const std::vector<ModVec>& gb = M.rel_groebner();
  std::vector<Polynomial> fs;
  for (const Polynomial& g : iur.gens()) {
    Polynomial nf = normal_form(g, ctx.base);
    if (!nf.is_zero()) fs.push_back(std::move(nf));
  }
  if (fs.empty()) return {};

  std::vector<std::pair<size_t, Monomial>> unk;
  for (size_t i = 0; i < r; ++i)
    for (Monomial& m : monomials_up_to(ring, deg)) {
      bool standard = true;
      for (const ModVec& g : gb) {
        MLead l = mv_lead(g);
        if (l.comp == i && l.m.divides(m)) {
          standard = false;
          break;
        }
      }
      if (standard) unk.push_back({i, std::move(m)});
    }
  if (unk.empty()) return {};

  std::map<std::tuple<size_t, size_t, std::vector<uint32_t>>, size_t> rows;
  std::vector<std::vector<std::pair<size_t, FieldElem>>> cols(unk.size());
  for (size_t u = 0; u < unk.size(); ++u)
    for (size_t x = 0; x < fs.size(); ++x) {
      ModVec w = mv_zero(ring, r);
      w.c[unk[u].first] = fs[x] * Polynomial::term(ring, unk[u].second, Field::one(f));
      w = mod_normal_form(std::move(w), gb, ctx);
      for (size_t i = 0; i < r; ++i)
        for (const auto& term : w.c[i].terms()) {
          auto key = std::make_tuple(x, i, term.m.e);
          auto it = rows.find(key);
          size_t row = it == rows.end() ? rows.emplace(key, rows.size()).first->second
                                        : it->second;
          cols[u].push_back({row, term.c});
        }
    }

  Matrix sys(f, rows.size(), unk.size());
  for (size_t u = 0; u < unk.size(); ++u)
    for (const auto& entry : cols[u]) sys.at(entry.first, u) += entry.second;
  std::vector<ModVec> basis;
  for (const auto& k : sys.kernel_basis()) {
    ModVec v = mv_zero(ring, r);
    for (size_t u = 0; u < unk.size(); ++u)
      if (!k[u].is_zero())
        v.c[unk[u].first] += Polynomial::term(ring, unk[u].second, k[u]);
    basis.push_back(std::move(v));
  }
  return basis;
}

// k-basis of module endomorphisms whose generator images lie in the span of
// the given torsion vectors: the linear conditions say every relation of M is
// still sent to zero
inline std::vector<std::vector<ModVec>> endo_space(const FPModule& M,
                                                   const std::vector<ModVec>& tb) {
  const ModCtx& ctx = M.ctx;
  const RingPtr& ring = ctx.ring;
  const FieldPtr& f = ring->field;
  size_t r = M.rank, t = tb.size();
  const std::vector<ModVec>& gb = M.rel_groebner();

  std::map<std::tuple<size_t, size_t, std::vector<uint32_t>>, size_t> rows;
  std::vector<std::vector<std::pair<size_t, FieldElem>>> cols(r * t);
  for (size_t rl = 0; rl < M.rels.size(); ++rl)
    for (size_t j = 0; j < r; ++j) {
      const Polynomial& vj = M.rels[rl].c[j];
      if (vj.is_zero()) continue;
      for (size_t b = 0; b < t; ++b) {
        ModVec w = mv_zero(ring, r);
        for (size_t i = 0; i < r; ++i)
          if (!tb[b].c[i].is_zero()) w.c[i] = vj * tb[b].c[i];
        w = mod_normal_form(std::move(w), gb, ctx);
        for (size_t i = 0; i < r; ++i)
          for (const auto& term : w.c[i].terms()) {
            auto key = std::make_tuple(rl, i, term.m.e);
            auto it = rows.find(key);
            size_t row = it == rows.end() ? rows.emplace(key, rows.size()).first->second
                                          : it->second;
            cols[j * t + b].push_back({row, term.c});
          }
      }
    }

  Matrix sys(f, rows.size(), r * t);
  for (size_t c = 0; c < r * t; ++c)
    for (const auto& entry : cols[c]) sys.at(entry.first, c) += entry.second;
  std::vector<std::vector<ModVec>> fam;
  for (const auto& k : sys.kernel_basis()) {
    std::vector<ModVec> e;
    for (size_t j = 0; j < r; ++j) {
      ModVec col = mv_zero(ring, r);
      for (size_t b = 0; b < t; ++b)
        if (!k[j * t + b].is_zero())
          for (size_t i = 0; i < r; ++i)
            if (!tb[b].c[i].is_zero()) col.c[i] += tb[b].c[i] * k[j * t + b];
      e.push_back(std::move(col));
    }
    fam.push_back(std::move(e));
  }
  return fam;
}

// solve e . e = e inside the family span: the coordinates of e^2 - e give a
// quadratic system in the family coefficients, sliced by pinning one
// coefficient to 1 and greedily pinning the rest to 0 while consistent
inline std::vector<std::vector<FieldElem>> idempotent_points(
    const EndoAlgebra& alg, const std::vector<std::vector<ModVec>>& fam, size_t max_slices) {
  size_t K = fam.size();
  if (K == 0) return {};
  const RingPtr& ring = alg.M->ctx.ring;
  const FieldPtr& f = ring->field;
  std::vector<std::string> names;
  for (size_t k = 0; k < K; ++k) names.push_back("l" + std::to_string(k));
  RingPtr lring = make_ring(f, names, MonomialOrder::degrevlex());

  std::map<std::tuple<size_t, size_t, std::vector<uint32_t>>, Polynomial> eq;
  auto acc = [&](size_t j, size_t i, const Polynomial& p, const Monomial& lam, bool neg) {
    for (const auto& term : p.terms()) {
      auto key = std::make_tuple(j, i, term.m.e);
      auto it = eq.find(key);
      if (it == eq.end()) it = eq.emplace(key, Polynomial::zero(lring)).first;
      it->second += Polynomial::term(lring, lam, neg ? -term.c : term.c);
    }
  };
  for (size_t a = 0; a < K; ++a) {
    for (size_t b = 0; b < K; ++b) {
      std::vector<ModVec> comp = alg.compose(fam[a], fam[b]);
      Monomial lam = Monomial::var(K, a) * Monomial::var(K, b);
      for (size_t j = 0; j < alg.M->rank; ++j)
        for (size_t i = 0; i < alg.M->rank; ++i) acc(j, i, comp[j].c[i], lam, false);
    }
    for (size_t j = 0; j < alg.M->rank; ++j)
      for (size_t i = 0; i < alg.M->rank; ++i)
        acc(j, i, fam[a][j].c[i], Monomial::var(K, a), true);
  }
  std::set<std::string> seen;
  std::vector<Polynomial> quads;
  for (auto& [key, p] : eq) {
    if (p.is_zero()) continue;
    Polynomial m = p * p.lc().inverse();
    std::string s;
    for (const auto& term : m.terms()) {
      for (uint32_t x : term.m.e) s += std::to_string(x) + ".";
      s += term.c.str() + ";";
    }
    if (seen.insert(std::move(s)).second) quads.push_back(std::move(m));
  }

  std::vector<std::vector<FieldElem>> pts;
  for (size_t k0 = 0; k0 < K && pts.size() < max_slices; ++k0) {
    std::vector<Polynomial> cur = quads;
    cur.push_back(Polynomial::variable(lring, k0) - Polynomial::constant(lring, 1));
    try {
      if (Ideal(lring, cur).is_unit_ideal()) continue;
    } catch (const Error&) {
      continue;
    }
    for (size_t k = 0; k < K; ++k) {
      if (k == k0) continue;
      std::vector<Polynomial> trial = cur;
      trial.push_back(Polynomial::variable(lring, k));
      try {
        if (!Ideal(lring, trial).is_unit_ideal()) cur = std::move(trial);
      } catch (const Error&) {
      }
    }
    try {
      Ideal fin(lring, cur);
      std::vector<FieldElem> pt;
      bool solved = true;
      for (size_t k = 0; k < K && solved; ++k) {
        Polynomial nf = fin.reduce(Polynomial::variable(lring, k));
        if (nf.is_zero())
          pt.push_back(Field::zero(f));
        else if (nf.nterms() == 1 && nf.lm().is_unit())
          pt.push_back(nf.lc());
        else
          solved = false;
      }
      if (solved) pts.push_back(std::move(pt));
    } catch (const Error&) {
    }
  }
  return pts;
}

struct SplitData {
  bool found = false;
  FPModule aligned;  // presentation on the two summand generators
  std::vector<ModVec> aligned_lifts;
  Ideal ann_un, ann_ur;
};

// split M = R0 into a unit-section summand and an iur-torsion summand: an
// idempotent endomorphism e with image inside the iur-torsion gives the
// aligned generating pair {g_0 - e(g_0), e(g_0)} (g_0 the unit section seeded
// first in the presentation); annihilators are read off the syzygies of the
// pair and compared with the two locus ideals by radical probes
inline SplitData find_splitting(const FPModule& M, const std::vector<ModVec>& lifts,
                                const Ideal& iun, const Ideal& iur) {
  SplitData out;
  if (M.rank == 0) return out;
  const ModCtx& ctx = M.ctx;
  const RingPtr& ring = ctx.ring;
  EndoAlgebra alg(M);
  const std::vector<ModVec>& gb = M.rel_groebner();

  auto vec_zero = [](const ModVec& v) {
    for (const auto& p : v.c)
      if (!p.is_zero()) return false;
    return true;
  };

  for (uint32_t deg = 1; deg <= 3 && !out.found; ++deg) {
    std::vector<ModVec> tb = torsion_space(M, iur, deg);
    if (tb.empty() || tb.size() > 60) continue;
    std::vector<std::vector<ModVec>> fam = endo_space(M, tb);
    if (fam.empty() || fam.size() > 40) continue;
    for (const auto& lambda : idempotent_points(alg, fam, 4)) {
      std::vector<ModVec> e;
      for (size_t j = 0; j < M.rank; ++j) {
        ModVec col = mv_zero(ring, M.rank);
        for (size_t a = 0; a < fam.size(); ++a)
          if (!lambda[a].is_zero())
            for (size_t i = 0; i < M.rank; ++i)
              if (!fam[a][j].c[i].is_zero()) col.c[i] += fam[a][j].c[i] * lambda[a];
        e.push_back(mod_normal_form(std::move(col), gb, ctx));
      }
      if (alg.is_zero(e) || alg.same(e, alg.id)) continue;
      if (!alg.same(alg.compose(e, e), e)) continue;

      ModVec h = e[0];
      if (vec_zero(h)) continue;
      ModVec gun = mv_zero(ring, M.rank);
      gun.c[0] = Polynomial::constant(ring, 1);
      for (size_t i = 0; i < M.rank; ++i) gun.c[i] -= h.c[i];
      gun = mod_normal_form(std::move(gun), gb, ctx);
      if (vec_zero(gun)) continue;

      // the pair must generate all of M
      std::vector<ModVec> span = M.rels;
      span.push_back(gun);
      span.push_back(h);
      std::vector<ModVec> span_gb = mod_groebner(span, ctx);
      bool spans = true;
      for (size_t j = 0; j < M.rank && spans; ++j)
        spans = mod_member(mv_basis(ring, M.rank, j), span_gb, ctx);
      if (!spans) continue;

      std::vector<ModVec> list{gun, h};
      for (const ModVec& rel : M.rels) list.push_back(rel);
      std::vector<ModVec> rels2;
      for (const ModVec& s : mod_syzygies(list, M.rank, ctx)) {
        ModVec v = mv_zero(ring, 2);
        v.c[0] = s.c[0];
        v.c[1] = s.c[1];
        if (!v.c[0].is_zero() || !v.c[1].is_zero()) rels2.push_back(std::move(v));
      }

      // annihilator of each pair member: syzygies supported on one slot only,
      // extracted from a position-over-term basis with the other slot leading
      auto slot_ann = [&](bool swap) {
        std::vector<ModVec> arr;
        for (const ModVec& v : rels2) {
          ModVec w = mv_zero(ring, 2);
          w.c[0] = v.c[swap ? 1 : 0];
          w.c[1] = v.c[swap ? 0 : 1];
          arr.push_back(std::move(w));
        }
        std::vector<Polynomial> gens = iun.gens();
        for (const ModVec& v : mod_groebner(arr, ctx))
          if (v.c[0].is_zero() && !v.c[1].is_zero()) gens.push_back(v.c[1]);
        return Ideal(ring, gens);
      };
      Ideal ann_ur_cand = slot_ann(false);  // kills h
      Ideal ann_un_cand = slot_ann(true);   // kills gun
      if (!radical_equal(ann_ur_cand, iur) || !radical_equal(ann_un_cand, iun)) continue;

      out.aligned = FPModule(ctx, 2, std::move(rels2));
      size_t amb = lifts.empty() ? 0 : lifts[0].c.size();
      ModVec lift_gun = mv_zero(ring, amb);
      ModVec lift_h = mv_zero(ring, amb);
      for (size_t j = 0; j < M.rank && j < lifts.size(); ++j)
        for (size_t i = 0; i < amb; ++i) {
          if (!gun.c[j].is_zero()) lift_gun.c[i] += gun.c[j] * lifts[j].c[i];
          if (!h.c[j].is_zero()) lift_h.c[i] += h.c[j] * lifts[j].c[i];
        }
      out.aligned_lifts = {std::move(lift_gun), std::move(lift_h)};
      out.ann_un = ann_un_cand;
      out.ann_ur = ann_ur_cand;
      out.found = true;
      break;
    }
  }
  return out;
}

}  // namespace detail

inline PushforwardReport cohspr_pushforward(const GroupSpec& g, long q, const FieldPtr& field,
                                            Locus locus = Locus::Unipotent,
                                            bool decompose = true, uint32_t hilbert_degree = 6) {
  if (g.kind == GroupKind::Torus || g.matrix_size() != 2)
    throw UnsupportedGroup("cohspr pushforward needs a rank-one matrix group");
  if (locus != Locus::Unipotent && locus != Locus::Tame)
    throw InvalidParameter("cohspr locus must be unipotent or tame");
  TwistKind twist = g.kind == GroupKind::GL ? TwistKind::Cyclotomic : TwistKind::Plain;
  ParamScheme tame = tame_framed_ideal(g, q, field, twist);
  ParamScheme base = locus == Locus::Unipotent ? unipotent_ideal(tame) : tame;
  Ideal bi = base.ideal();
  ModCtx ctx{base.ring, bi.groebner()};

  PolyMat T = copy_matrix(base, 0);
  PolyMat S = copy_matrix(base, 1);
  auto quad = [&](const PolyMat& M) {
    return std::array<Polynomial, 3>{Polynomial::zero(base.ring) - M.at(1, 0),
                                     M.at(0, 0) - M.at(1, 1), M.at(0, 1)};
  };
  std::vector<std::array<Polynomial, 3>> quads{quad(T), quad(S)};

  detail::CechLevel lo = detail::build_cech_level(ctx, quads, 2);
  detail::CechLevel hi = detail::build_cech_level(ctx, quads, 3);
  PushforwardReport rep;
  rep.scheme = base;
  if (detail::level_stable(lo, hi, ctx, hilbert_degree)) {
    rep.level = 2;
    rep.stable = true;
  } else {
    detail::CechLevel top = detail::build_cech_level(ctx, quads, 4);
    rep.stable = detail::level_stable(hi, top, ctx, hilbert_degree);
    lo = std::move(hi);
    rep.level = 3;
  }
  rep.hilbert_R0 = hilbert_counts(lo.ker.mod, {}, hilbert_degree);
  rep.R0 = lo.ker.mod;
  rep.R0_lifts = lo.ker.gens;
  rep.R1 = lo.coker;

  if (decompose && locus == Locus::Unipotent) {
    Ideal iur = unramified_ideal(tame).ideal();
    detail::SplitData sd = detail::find_splitting(lo.ker.mod, lo.ker.gens, bi, iur);
    if (sd.found) {
      rep.decomposition_found = true;
      rep.ann_unipotent = sd.ann_un;
      rep.ann_unramified = sd.ann_ur;
      rep.R0 = sd.aligned;
      rep.R0_lifts = sd.aligned_lifts;
      rep.hilbert_R0 = hilbert_counts(rep.R0, {}, hilbert_degree);
    }
  }
  return rep;
}

// rank of a presented module after specializing the base coordinates at a point
inline long specialized_rank(const FPModule& M, const ParamScheme& base, const RepPoint& pt) {
  std::vector<FieldElem> vals = point_assignment(base, pt);
  Matrix rel(pt.field, M.rels.size(), M.rank);
  for (size_t t = 0; t < M.rels.size(); ++t)
    for (size_t j = 0; j < M.rank; ++j) rel.at(t, j) = M.rels[t].c[j].eval(pt.field, vals);
  return (long)M.rank - (long)rel.rank();
}

// fiber-rank symmetry at zero-dimensional fibers: the specialized rank of R0
// must equal the Springer fiber length at every sample
inline bool pushforward_self_duality_probe(const PushforwardReport& rep,
                                           const std::vector<RepPoint>& samples) {
  for (const auto& pt : samples) {
    SpringerFiberReport fib =
        springer_fiber(pt, rep.scheme.group, rep.scheme.locus, rep.scheme.twist);
    if (fib.fiber_dim != 0)
      throw InvalidParameter("self-duality probe needs zero-dimensional fibers");
    if (specialized_rank(rep.R0, rep.scheme, pt) != fib.fiber_length) return false;
  }
  return true;
}

}  // namespace locparam
