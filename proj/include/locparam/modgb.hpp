#pragma once

#include <functional>
#include <optional>

#include "groebner.hpp"

namespace locparam {

// Free-module Groebner machinery over a quotient of the ambient ring.
// Vectors live in P^rank; the base ideal acts through virtual generators
// b*e_j, so everything below computes over P/I without enlarging bases.
// Module order: position over term, earlier components dominate.

struct ModCtx {
  RingPtr ring;
  std::vector<Polynomial> base;  // reduced GB of the base ideal, may be empty

  ModCtx() = default;
  ModCtx(RingPtr r, std::vector<Polynomial> b) : ring(std::move(r)), base(std::move(b)) {}
};

struct ModVec {
  std::vector<Polynomial> c;

  bool is_zero() const {
    for (const auto& p : c)
      if (!p.is_zero()) return false;
    return true;
  }
};

inline ModVec mv_zero(const RingPtr& ring, size_t rank) {
  ModVec v;
  v.c.assign(rank, Polynomial::zero(ring));
  return v;
}

inline ModVec mv_basis(const RingPtr& ring, size_t rank, size_t i) {
  ModVec v = mv_zero(ring, rank);
  v.c[i] = Polynomial::constant(ring, 1);
  return v;
}

struct MLead {
  size_t comp;
  Monomial m;
  FieldElem c;
};

inline MLead mv_lead(const ModVec& v) {
  for (size_t i = 0; i < v.c.size(); ++i)
    if (!v.c[i].is_zero()) return {i, v.c[i].lm(), v.c[i].lc()};
  throw DivisionByZero("leading term of the zero vector");
}

// f -= coeff * mono * g
inline void mv_axpy(ModVec& f, const FieldElem& coeff, const Monomial& mono, const ModVec& g) {
  for (size_t i = 0; i < f.c.size(); ++i)
    if (!g.c[i].is_zero()) f.c[i].axpy(coeff, mono, g.c[i]);
}

inline void mv_scale(ModVec& f, const FieldElem& s) {
  for (auto& p : f.c) p = p * s;
}

inline ModVec mv_add(const ModVec& a, const ModVec& b) {
  ModVec r = a;
  for (size_t i = 0; i < r.c.size(); ++i) r.c[i] += b.c[i];
  return r;
}

inline ModVec mv_mul_poly(const ModVec& a, const Polynomial& p) {
  ModVec r = a;
  for (auto& x : r.c) x = x * p;
  return r;
}

inline bool mv_eq(const ModVec& a, const ModVec& b) {
  if (a.c.size() != b.c.size()) return false;
  for (size_t i = 0; i < a.c.size(); ++i)
    if (a.c[i] != b.c[i]) return false;
  return true;
}

// rational-coefficient content scaling across all components
inline void mv_make_primitive(ModVec& v, const RingPtr& ring) {
  if (!ring->field->char_zero() || ring->field->deg != 1) return;
  mpz_class den = 1, num = 0;
  for (const auto& p : v.c)
    for (const auto& t : p.terms()) {
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.c.qc[0].get_den().get_mpz_t());
    }
  for (const auto& p : v.c)
    for (const auto& t : p.terms()) {
      mpz_class n = t.c.qc[0].get_num() * (den / t.c.qc[0].get_den());
      mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), n.get_mpz_t());
    }
  if (num == 0) return;
  mpq_class scale(den, num);
  scale.canonicalize();
  FieldElem s = Field::from_mpq(ring->field, scale);
  mv_scale(v, s);
}

inline ModVec mod_normal_form(ModVec f, const std::vector<ModVec>& basis, const ModCtx& ctx) {
  size_t rank = f.c.size();
  ModVec rem = mv_zero(ctx.ring, rank);
  Polynomial one = Polynomial::constant(ctx.ring, 1);
  while (!f.is_zero()) {
    MLead lead = mv_lead(f);
    bool hit = false;
    for (const auto& g : basis) {
      if (g.is_zero()) continue;
      MLead gl = mv_lead(g);
      if (gl.comp != lead.comp || !gl.m.divides(lead.m)) continue;
      mv_axpy(f, lead.c * gl.c.inverse(), lead.m / gl.m, g);
      hit = true;
      break;
    }
    if (hit) continue;
    for (const auto& b : ctx.base) {
      if (!b.lm().divides(lead.m)) continue;
      f.c[lead.comp].axpy(lead.c * b.lc().inverse(), lead.m / b.lm(), b);
      hit = true;
      break;
    }
    if (hit) continue;
    rem.c[lead.comp] += Polynomial::term(ctx.ring, lead.m, lead.c);
    f.c[lead.comp].axpy(lead.c, lead.m, one);
  }
  return rem;
}

inline std::vector<ModVec> mod_groebner(std::vector<ModVec> gens, const ModCtx& ctx,
                                        const GBLimits& lim = {}) {
  std::vector<ModVec> basis;
  for (auto& g : gens) {
    if (g.is_zero()) continue;
    ModVec h = g;
    mv_make_primitive(h, ctx.ring);
    basis.push_back(std::move(h));
  }

  auto single_comp = [](const ModVec& v, size_t comp) {
    for (size_t i = 0; i < v.c.size(); ++i)
      if (i != comp && !v.c[i].is_zero()) return false;
    return true;
  };

  struct Pair {
    size_t comp;
    Monomial lcm;
    size_t i, j;      // j == SIZE_MAX: base pair against base[bidx]
    size_t bidx;
    uint64_t stamp;
  };
  std::vector<Pair> queue;
  uint64_t stamp = 0;
  auto push_pairs = [&](size_t j) {
    MLead lj = mv_lead(basis[j]);
    for (size_t i = 0; i < j; ++i) {
      MLead li = mv_lead(basis[i]);
      if (li.comp != lj.comp) continue;
      queue.push_back({lj.comp, li.m.lcm(lj.m), i, j, 0, stamp++});
    }
    for (size_t b = 0; b < ctx.base.size(); ++b)
      queue.push_back({lj.comp, lj.m.lcm(ctx.base[b].lm()), j, SIZE_MAX, b, stamp++});
  };
  for (size_t j = 0; j < basis.size(); ++j) push_pairs(j);

  std::set<std::tuple<size_t, size_t, size_t>> done;  // (i, j/SIZE_MAX, bidx)
  size_t processed = 0;
  while (!queue.empty()) {
    if (++processed > lim.max_pairs) throw BudgetExceeded("pair budget in module Buchberger");
    size_t best = 0;
    for (size_t k = 1; k < queue.size(); ++k) {
      const Pair& a = queue[k];
      const Pair& b = queue[best];
      int c;
      if (a.comp != b.comp) c = a.comp > b.comp ? -1 : 1;  // larger comp is smaller in POT
      else c = ctx.ring->ord.cmp(a.lcm, b.lcm);
      if (c < 0 || (c == 0 && a.stamp < b.stamp)) best = k;
    }
    Pair pr = queue[best];
    queue.erase(queue.begin() + (long)best);
    done.insert({pr.i, pr.j, pr.bidx});

    ModVec s;
    if (pr.j == SIZE_MAX) {
      const ModVec& g = basis[pr.i];
      MLead gl = mv_lead(g);
      const Polynomial& b = ctx.base[pr.bidx];
      if (single_comp(g, gl.comp) && gl.m.coprime(b.lm())) continue;
      s = mv_zero(ctx.ring, g.c.size());
      for (size_t t = 0; t < s.c.size(); ++t)
        s.c[t] = g.c[t].mul_term(gl.c.inverse(), pr.lcm / gl.m);
      s.c[gl.comp].axpy(b.lc().inverse(), pr.lcm / b.lm(), b);
    } else {
      const ModVec& fi = basis[pr.i];
      const ModVec& fj = basis[pr.j];
      MLead li = mv_lead(fi), lj = mv_lead(fj);
      if (single_comp(fi, li.comp) && single_comp(fj, lj.comp) && li.m.coprime(lj.m)) continue;
      bool chained = false;
      for (size_t k = 0; k < basis.size() && !chained; ++k) {
        if (k == pr.i || k == pr.j || basis[k].is_zero()) continue;
        MLead lk = mv_lead(basis[k]);
        if (lk.comp != pr.comp || !lk.m.divides(pr.lcm)) continue;
        auto a = std::minmax(pr.i, k), b = std::minmax(pr.j, k);
        if (done.count({a.first, a.second, 0}) && done.count({b.first, b.second, 0})) chained = true;
      }
      if (chained) continue;
      s = mv_zero(ctx.ring, fi.c.size());
      for (size_t t = 0; t < s.c.size(); ++t)
        s.c[t] = fi.c[t].mul_term(li.c.inverse(), pr.lcm / li.m);
      mv_axpy(s, lj.c.inverse(), pr.lcm / lj.m, fj);
    }
    ModVec r = mod_normal_form(std::move(s), basis, ctx);
    if (r.is_zero()) continue;
    mv_make_primitive(r, ctx.ring);
    MLead rl = mv_lead(r);
    mv_scale(r, rl.c.inverse());
    basis.push_back(std::move(r));
    if (basis.size() > lim.max_basis) throw BudgetExceeded("basis budget in module Buchberger");
    push_pairs(basis.size() - 1);
  }

  // interreduce
  for (bool changed = true; changed;) {
    changed = false;
    for (size_t i = 0; i < basis.size(); ++i) {
      if (basis[i].is_zero()) continue;
      std::vector<ModVec> others;
      for (size_t k = 0; k < basis.size(); ++k)
        if (k != i && !basis[k].is_zero()) others.push_back(basis[k]);
      ModVec r = mod_normal_form(basis[i], others, ctx);
      if (!mv_eq(r, basis[i])) changed = true;
      basis[i] = std::move(r);
    }
    basis.erase(std::remove_if(basis.begin(), basis.end(),
                               [](const ModVec& v) { return v.is_zero(); }),
                basis.end());
  }
  for (auto& g : basis) {
    MLead gl = mv_lead(g);
    mv_scale(g, gl.c.inverse());
  }
  std::sort(basis.begin(), basis.end(), [&ctx](const ModVec& a, const ModVec& b) {
    MLead la = mv_lead(a), lb = mv_lead(b);
    if (la.comp != lb.comp) return la.comp > lb.comp;  // POT-ascending
    return ctx.ring->ord.cmp(la.m, lb.m) < 0;
  });
  return basis;
}

inline bool mod_member(const ModVec& v, const std::vector<ModVec>& gb, const ModCtx& ctx) {
  return mod_normal_form(v, gb, ctx).is_zero();
}

// generators of { (a_1..a_s) : sum a_i g_i lies in base * P^rank }
inline std::vector<ModVec> mod_syzygies(const std::vector<ModVec>& gens, size_t rank,
                                        const ModCtx& ctx, const GBLimits& lim = {}) {
  size_t s = gens.size();
  std::vector<ModVec> aug;
  for (size_t i = 0; i < s; ++i) {
    ModVec v = mv_zero(ctx.ring, rank + s);
    for (size_t t = 0; t < rank; ++t) v.c[t] = gens[i].c[t];
    v.c[rank + i] = Polynomial::constant(ctx.ring, 1);
    aug.push_back(std::move(v));
  }
  std::vector<ModVec> gb = mod_groebner(std::move(aug), ctx, lim);
  std::vector<ModVec> out;
  for (const auto& g : gb) {
    bool main_zero = true;
    for (size_t t = 0; t < rank && main_zero; ++t)
      if (!g.c[t].is_zero()) main_zero = false;
    if (!main_zero) continue;
    ModVec syz = mv_zero(ctx.ring, s);
    for (size_t i = 0; i < s; ++i) syz.c[i] = g.c[rank + i];
    out.push_back(std::move(syz));
  }
  return out;
}

// prune entries that lie in the span of the others (plus base multiples)
inline std::vector<size_t> prune_generators(const std::vector<ModVec>& vs, size_t rank,
                                            const ModCtx& ctx,
                                            const std::vector<ModVec>& extra = {}) {
  std::vector<size_t> kept;
  for (size_t i = 0; i < vs.size(); ++i) kept.push_back(i);
  for (bool changed = true; changed;) {
    changed = false;
    for (size_t pos = kept.size(); pos-- > 0;) {
      size_t j = kept[pos];
      std::vector<ModVec> others = extra;
      for (size_t q : kept)
        if (q != j) others.push_back(vs[q]);
      std::vector<ModVec> gb = mod_groebner(others, ctx);
      if (mod_member(vs[j], gb, ctx)) {
        kept.erase(kept.begin() + (long)pos);
        changed = true;
      }
    }
    (void)rank;
  }
  return kept;
}

// finitely presented module over the quotient (ring, base)
struct FPModule {
  ModCtx ctx;
  size_t rank = 0;
  std::vector<ModVec> rels;

  FPModule() = default;
  FPModule(ModCtx c, size_t r, std::vector<ModVec> rel)
      : ctx(std::move(c)), rank(r), rels(std::move(rel)) {}

  static FPModule free_module(const ModCtx& c, size_t r) { return FPModule(c, r, {}); }

  static FPModule cyclic(const ModCtx& c, const std::vector<Polynomial>& numerator) {
    std::vector<ModVec> rels;
    for (const auto& p : numerator) {
      ModVec v = mv_zero(c.ring, 1);
      v.c[0] = p;
      rels.push_back(std::move(v));
    }
    return FPModule(c, 1, std::move(rels));
  }

  const std::vector<ModVec>& rel_groebner() const {
    if (!gb_done_) {
      gb_ = mod_groebner(rels, ctx);
      gb_done_ = true;
    }
    return gb_;
  }

  size_t min_generator_count() const {
    if (rank == 0) return 0;
    std::vector<ModVec> basis_vecs;
    for (size_t i = 0; i < rank; ++i) basis_vecs.push_back(mv_basis(ctx.ring, rank, i));
    std::vector<size_t> kept = prune_generators(basis_vecs, rank, ctx, rels);
    return kept.size();
  }

 private:
  mutable std::vector<ModVec> gb_;
  mutable bool gb_done_ = false;
};

// map between presented modules, columns are images of source basis vectors
struct ModMap {
  const FPModule* src;
  const FPModule* dst;
  std::vector<ModVec> cols;  // src->rank entries, each in dst free module
};

// kernel of a map, presented with explicit generator lifts
struct KernelData {
  std::vector<ModVec> gens;  // lifts in the source free module
  FPModule mod;              // presentation of the kernel
};

inline KernelData mod_kernel(const ModMap& f, const GBLimits& lim = {}) {
  const ModCtx& ctx = f.src->ctx;
  size_t a = f.src->rank, b = f.dst->rank;
  std::vector<ModVec> list = f.cols;
  for (const auto& r : f.dst->rels) list.push_back(r);
  std::vector<ModVec> syz = mod_syzygies(list, b, ctx, lim);
  std::vector<ModVec> lifts;
  for (const auto& s : syz) {
    ModVec v = mv_zero(ctx.ring, a);
    bool nonzero = false;
    for (size_t i = 0; i < a; ++i) {
      v.c[i] = s.c[i];
      if (!v.c[i].is_zero()) nonzero = true;
    }
    if (nonzero) lifts.push_back(std::move(v));
  }
  // drop lifts that already lie in the source relations
  {
    std::vector<ModVec> relgb = mod_groebner(f.src->rels, ctx);
    std::vector<ModVec> cleaned;
    for (auto& v : lifts)
      if (!mod_member(v, relgb, ctx)) cleaned.push_back(std::move(v));
    lifts = std::move(cleaned);
  }
  std::vector<size_t> kept = prune_generators(lifts, a, ctx, f.src->rels);
  std::vector<ModVec> gens;
  for (size_t k : kept) gens.push_back(lifts[k]);
  // relations among the kernel generators inside the source module
  std::vector<ModVec> list2 = gens;
  for (const auto& r : f.src->rels) list2.push_back(r);
  std::vector<ModVec> syz2 = mod_syzygies(list2, a, ctx, lim);
  std::vector<ModVec> rels;
  for (const auto& s : syz2) {
    ModVec v = mv_zero(ctx.ring, gens.size());
    bool nonzero = false;
    for (size_t i = 0; i < gens.size(); ++i) {
      v.c[i] = s.c[i];
      if (!v.c[i].is_zero()) nonzero = true;
    }
    if (nonzero) rels.push_back(std::move(v));
  }
  KernelData out;
  out.gens = std::move(gens);
  out.mod = FPModule(ctx, out.gens.size(), std::move(rels));
  return out;
}

// weighted monomial enumeration
inline void enumerate_monomials(size_t nvars, const std::vector<uint32_t>& weights, uint32_t target,
                                const std::function<void(const Monomial&)>& fn) {
  Monomial m = Monomial::unit(nvars);
  std::function<void(size_t, uint32_t)> rec = [&](size_t var, uint32_t left) {
    if (var == nvars) {
      if (left == 0) {
        Monomial out = m;
        out.deg = 0;
        for (auto e : out.e) out.deg += e;
        fn(out);
      }
      return;
    }
    uint32_t w = weights[var];
    for (uint32_t k = 0;; ++k) {
      uint32_t cost = k * w;
      if (cost > left) break;
      m.e[var] = k;
      rec(var + 1, left - cost);
      if (w == 0 && k > 0) break;  // zero-weight variables would not terminate
    }
    m.e[var] = 0;
  };
  rec(0, target);
}

// dimension of each weighted-degree slice of the module up to max_degree,
// computed from the leading-term data of the relation basis
inline std::vector<long> hilbert_counts(const FPModule& M, const std::vector<uint32_t>& weights,
                                        uint32_t max_degree) {
  const ModCtx& ctx = M.ctx;
  size_t n = ctx.ring->nvars();
  std::vector<uint32_t> w = weights.empty() ? std::vector<uint32_t>(n, 1) : weights;
  if (w.size() != n) throw InvalidParameter("weight vector length mismatch");
  const auto& gb = M.rel_groebner();
  std::vector<std::vector<Monomial>> lt(M.rank);
  for (const auto& g : gb) {
    MLead l = mv_lead(g);
    lt[l.comp].push_back(l.m);
  }
  for (size_t j = 0; j < M.rank; ++j)
    for (const auto& b : ctx.base) lt[j].push_back(b.lm());
  std::vector<long> counts(max_degree + 1, 0);
  for (uint32_t d = 0; d <= max_degree; ++d) {
    long total = 0;
    enumerate_monomials(n, w, d, [&](const Monomial& m) {
      for (size_t j = 0; j < M.rank; ++j) {
        bool standard = true;
        for (const auto& l : lt[j])
          if (l.divides(m)) {
            standard = false;
            break;
          }
        if (standard) ++total;
      }
    });
    counts[d] = total;
  }
  return counts;
}

// total dimension over the coefficient field when finite
inline std::optional<long> vector_space_dim(const FPModule& M) {
  const ModCtx& ctx = M.ctx;
  size_t n = ctx.ring->nvars();
  const auto& gb = M.rel_groebner();
  std::vector<std::vector<Monomial>> lt(M.rank);
  for (const auto& g : gb) {
    MLead l = mv_lead(g);
    lt[l.comp].push_back(l.m);
  }
  for (size_t j = 0; j < M.rank; ++j)
    for (const auto& b : ctx.base) lt[j].push_back(b.lm());
  long total = 0;
  for (size_t j = 0; j < M.rank; ++j) {
    std::vector<uint32_t> bound(n, 0);
    for (size_t v = 0; v < n; ++v) {
      uint32_t best = 0;
      for (const auto& l : lt[j]) {
        if (l.support_mask() == ((uint64_t)1 << v) || (l.deg == 0)) {
          uint32_t k = l.e[v];
          if (l.deg == 0) k = 0;
          if (best == 0 || k < best) best = k;
        }
      }
      if (best == 0) {
        bool unit_ideal = false;
        for (const auto& l : lt[j])
          if (l.deg == 0) unit_ideal = true;
        if (!unit_ideal) return std::nullopt;  // infinite in direction v
        bound[v] = 0;
      } else {
        bound[v] = best;
      }
    }
    // enumerate the finite box and filter
    std::function<void(size_t, Monomial&)> rec = [&](size_t v, Monomial& m) {
      if (v == n) {
        for (const auto& l : lt[j])
          if (l.divides(m)) return;
        ++total;
        return;
      }
      for (uint32_t k = 0; k < std::max<uint32_t>(bound[v], 1); ++k) {
        m.e[v] = k;
        rec(v + 1, m);
      }
      m.e[v] = 0;
    };
    Monomial m = Monomial::unit(n);
    rec(0, m);
  }
  return total;
}

struct Resolution {
  std::vector<size_t> ranks;              // ranks[i] = rank of F_i
  std::vector<std::vector<ModVec>> maps;  // maps[i] = columns of d_{i+1}: F_{i+1} -> F_i
};

// truncated free resolution of M over the quotient ring, pruned stepwise
inline Resolution free_resolution(const FPModule& M, size_t length,
                                  size_t step_cap = 600) {
  Resolution res;
  res.ranks.push_back(M.rank);
  std::vector<ModVec> cur = M.rels;
  size_t cur_rank = M.rank;
  for (size_t step = 0; step < length; ++step) {
    std::vector<size_t> kept = prune_generators(cur, cur_rank, M.ctx);
    std::vector<ModVec> cols;
    for (size_t k : kept) cols.push_back(cur[k]);
    if (cols.size() > step_cap) throw ResolutionTooLong();
    res.maps.push_back(cols);
    res.ranks.push_back(cols.size());
    if (cols.empty()) {
      cur = {};
      cur_rank = 0;
      continue;
    }
    cur = mod_syzygies(cols, cur_rank, M.ctx);
    cur_rank = cols.size();
  }
  return res;
}

struct ExtResult {
  std::vector<long> dims;
  std::vector<bool> finite;  // dim over the field (true) or minimal generator count
};

// Ext^i(M, N) for i = 0..max_degree over the shared quotient ring
inline ExtResult ext_dims(const FPModule& M, const FPModule& N, size_t max_degree,
                          const GBLimits& lim = {}) {
  if (!same_ring(M.ctx.ring, N.ctx.ring)) throw AmbientMismatch("Ext over different rings");
  const ModCtx& ctx = N.ctx;
  Resolution res = free_resolution(M, max_degree + 1);
  size_t nN = N.rank;

  // Hom(F_i, N) = N^{r_i}; flattened index (slot a, N generator b) = a*nN + b
  auto hom_rels = [&](size_t r_i) {
    std::vector<ModVec> rels;
    for (size_t a = 0; a < r_i; ++a)
      for (const auto& rel : N.rels) {
        ModVec v = mv_zero(ctx.ring, r_i * nN);
        for (size_t b = 0; b < nN; ++b) v.c[a * nN + b] = rel.c[b];
        rels.push_back(std::move(v));
      }
    return rels;
  };
  // column images of B_i : N^{r_i} -> N^{r_{i+1}} for basis vector (a, b)
  auto bmap_col = [&](size_t i, size_t a, size_t b) {
    size_t r_next = res.ranks[i + 1];
    ModVec v = mv_zero(ctx.ring, r_next * nN);
    const auto& cols = res.maps[i];  // d_{i+1} columns, each in F_i
    for (size_t c = 0; c < r_next; ++c) v.c[c * nN + b] = cols[c].c[a];
    return v;
  };

  ExtResult out;
  for (size_t i = 0; i <= max_degree; ++i) {
    size_t r_i = res.ranks[i];
    if (r_i == 0) {
      out.dims.push_back(0);
      out.finite.push_back(true);
      continue;
    }
    size_t r_next = res.ranks[i + 1];
    std::vector<ModVec> homN_rels = hom_rels(r_i);
    std::vector<ModVec> kernel_gens;
    if (r_next == 0) {
      for (size_t a = 0; a < r_i; ++a)
        for (size_t b = 0; b < nN; ++b) kernel_gens.push_back(mv_basis(ctx.ring, r_i * nN, a * nN + b));
    } else {
      FPModule src(ctx, r_i * nN, homN_rels);
      FPModule dst(ctx, r_next * nN, hom_rels(r_next));
      ModMap B;
      B.src = &src;
      B.dst = &dst;
      for (size_t a = 0; a < r_i; ++a)
        for (size_t b = 0; b < nN; ++b) B.cols.push_back(bmap_col(i, a, b));
      KernelData K = mod_kernel(B, lim);
      kernel_gens = K.gens;
    }
    // image columns of B_{i-1}
    std::vector<ModVec> image;
    if (i > 0 && res.ranks[i - 1] > 0) {
      for (size_t a = 0; a < res.ranks[i - 1]; ++a)
        for (size_t b = 0; b < nN; ++b) image.push_back(bmap_col(i - 1, a, b));
    }
    // Ext^i: generators = kernel gens, relations = syzygy projections through
    // kernel gens, image and Hom relations
    std::vector<ModVec> list = kernel_gens;
    for (const auto& v : image) list.push_back(v);
    for (const auto& v : homN_rels) list.push_back(v);
    std::vector<ModVec> syz = mod_syzygies(list, r_i * nN, ctx, lim);
    std::vector<ModVec> ext_rels;
    for (const auto& s : syz) {
      ModVec v = mv_zero(ctx.ring, kernel_gens.size());
      bool nonzero = false;
      for (size_t t = 0; t < kernel_gens.size(); ++t) {
        v.c[t] = s.c[t];
        if (!v.c[t].is_zero()) nonzero = true;
      }
      if (nonzero) ext_rels.push_back(std::move(v));
    }
    FPModule ext(ctx, kernel_gens.size(), ext_rels);
    auto vd = vector_space_dim(ext);
    if (vd) {
      out.dims.push_back(*vd);
      out.finite.push_back(true);
    } else {
      out.dims.push_back((long)ext.min_generator_count());
      out.finite.push_back(false);
    }
  }
  return out;
}

}  // namespace locparam
