#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <vector>

#include "poly.hpp"

namespace locparam {

// Buchberger engine with normal pair selection and both standard criteria.
// Bases are fully reduced, monic, sorted by leading monomial: canonical output.

struct GBLimits {
  size_t max_basis = 4000;
  size_t max_pairs = 400000;
};

inline Polynomial normal_form(Polynomial f, const std::vector<Polynomial>& basis) {
  if (basis.empty() || f.is_zero()) return f;
  const RingPtr& ring = f.ring();
  Polynomial one = Polynomial::constant(ring, 1);
  std::vector<Term> rem;
  while (!f.is_zero()) {
    bool hit = false;
    for (const auto& g : basis) {
      if (g.is_zero()) continue;
      if (g.lm().divides(f.lm())) {
        f.axpy(f.lc() * g.lc().inverse(), f.lm() / g.lm(), g);
        hit = true;
        break;
      }
    }
    if (!hit) {
      Term lead{f.lm(), f.lc()};
      rem.push_back(lead);
      f.axpy(lead.c, lead.m, one);
    }
  }
  return Polynomial::from_terms(ring, std::move(rem));
}

inline std::vector<Polynomial> buchberger(const RingPtr& ring, std::vector<Polynomial> gens,
                                          const GBLimits& lim = {}) {
  std::vector<Polynomial> basis;
  for (auto& g : gens) {
    if (g.is_zero()) continue;
    Polynomial h = g;
    h.make_primitive();
    basis.push_back(std::move(h));
  }
  std::sort(basis.begin(), basis.end(),
            [](const Polynomial& a, const Polynomial& b) { return poly_cmp(a, b) < 0; });
  basis.erase(std::unique(basis.begin(), basis.end()), basis.end());

  struct Pair {
    Monomial lcm;
    size_t i, j;
    uint64_t stamp;
  };
  std::vector<Pair> queue;
  std::set<std::pair<size_t, size_t>> seen;
  uint64_t stamp = 0;
  auto push_pairs = [&](size_t j) {
    for (size_t i = 0; i < j; ++i) {
      queue.push_back({basis[i].lm().lcm(basis[j].lm()), i, j, stamp++});
      seen.insert({i, j});
    }
  };
  for (size_t j = 0; j < basis.size(); ++j) push_pairs(j);

  std::set<std::pair<size_t, size_t>> done;
  size_t processed = 0;
  while (!queue.empty()) {
    if (++processed > lim.max_pairs) throw BudgetExceeded("pair budget in Buchberger loop");
    // normal selection: minimal lcm, then first created
    size_t best = 0;
    for (size_t k = 1; k < queue.size(); ++k) {
      int c = ring->ord.cmp(queue[k].lcm, queue[best].lcm);
      if (c < 0 || (c == 0 && queue[k].stamp < queue[best].stamp)) best = k;
    }
    Pair pr = queue[best];
    queue.erase(queue.begin() + (long)best);
    done.insert({pr.i, pr.j});

    const Polynomial& fi = basis[pr.i];
    const Polynomial& fj = basis[pr.j];
    if (fi.lm().coprime(fj.lm())) continue;  // product criterion
    bool chained = false;
    for (size_t k = 0; k < basis.size() && !chained; ++k) {
      if (k == pr.i || k == pr.j) continue;
      if (!basis[k].lm().divides(pr.lcm)) continue;
      auto key1 = std::minmax(pr.i, k);
      auto key2 = std::minmax(pr.j, k);
      if (done.count({key1.first, key1.second}) && done.count({key2.first, key2.second}))
        chained = true;
    }
    if (chained) continue;

    Polynomial s = fi.mul_term(fi.lc().inverse(), pr.lcm / fi.lm());
    s.axpy(fj.lc().inverse(), pr.lcm / fj.lm(), fj);
    Polynomial r = normal_form(std::move(s), basis);
    if (r.is_zero()) continue;
    r.make_primitive();
    r.make_monic();
    basis.push_back(std::move(r));
    if (basis.size() > lim.max_basis) throw BudgetExceeded("basis budget in Buchberger loop");
    push_pairs(basis.size() - 1);
  }

  // interreduction to the unique reduced basis
  for (bool changed = true; changed;) {
    changed = false;
    for (size_t i = 0; i < basis.size(); ++i) {
      Polynomial g = basis[i];
      std::vector<Polynomial> others;
      others.reserve(basis.size() - 1);
      for (size_t k = 0; k < basis.size(); ++k)
        if (k != i && !basis[k].is_zero()) others.push_back(basis[k]);
      Polynomial r = normal_form(g, others);
      if (r != g) changed = true;
      basis[i] = std::move(r);
    }
    basis.erase(std::remove_if(basis.begin(), basis.end(),
                               [](const Polynomial& p) { return p.is_zero(); }),
                basis.end());
  }
  for (auto& g : basis) g.make_monic();
  std::sort(basis.begin(), basis.end(),
            [&ring](const Polynomial& a, const Polynomial& b) {
              return ring->ord.cmp(a.lm(), b.lm()) < 0;
            });
  basis.erase(std::unique(basis.begin(), basis.end()), basis.end());
  return basis;
}

class Ideal {
 public:
  Ideal() = default;
  Ideal(RingPtr ring, std::vector<Polynomial> gens)
      : ring_(std::move(ring)), gens_(std::move(gens)) {
    for (const auto& g : gens_)
      if (!same_ring(g.ring(), ring_)) throw AmbientMismatch("generator outside the ambient ring");
  }

  const RingPtr& ring() const { return ring_; }
  const std::vector<Polynomial>& gens() const { return gens_; }

  const std::vector<Polynomial>& groebner(const GBLimits& lim = {}) const {
    if (!gb_done_) {
      gb_ = buchberger(ring_, gens_, lim);
      gb_done_ = true;
    }
    return gb_;
  }

  Polynomial reduce(const Polynomial& f) const { return normal_form(f, groebner()); }
  bool contains(const Polynomial& f) const { return reduce(f).is_zero(); }
  bool is_unit_ideal() const {
    const auto& gb = groebner();
    return gb.size() == 1 && gb[0].is_constant() && !gb[0].is_zero();
  }

  // Krull dimension of the quotient, -1 for the unit ideal
  int dimension() const {
    const auto& gb = groebner();
    if (is_unit_ideal()) return -1;
    size_t n = ring_->nvars();
    if (n > 24) throw BudgetExceeded("dimension enumeration limited to 24 variables");
    std::vector<uint64_t> masks;
    for (const auto& g : gb) masks.push_back(g.lm().support_mask());
    std::sort(masks.begin(), masks.end());
    masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
    int best = 0;
    uint64_t full = n == 64 ? ~(uint64_t)0 : (((uint64_t)1 << n) - 1);
    for (uint64_t s = 0; s <= full; ++s) {
      int pc = __builtin_popcountll(s);
      if (pc <= best) continue;
      bool independent = true;
      for (uint64_t m : masks)
        if ((m & ~s) == 0) {
          independent = false;
          break;
        }
      if (independent) best = pc;
    }
    return best;
  }

 private:
  RingPtr ring_;
  std::vector<Polynomial> gens_;
  mutable std::vector<Polynomial> gb_;
  mutable bool gb_done_ = false;
};

// I cap k[kept variables], computed with a block elimination order
inline Ideal eliminate(const Ideal& ideal, const std::vector<size_t>& keep) {
  const RingPtr& ring = ideal.ring();
  size_t n = ring->nvars();
  std::vector<bool> kept(n, false);
  for (size_t k : keep) {
    if (k >= n) throw InvalidParameter("eliminate: variable index out of range");
    kept[k] = true;
  }
  std::vector<size_t> elim_order;
  for (size_t i = 0; i < n; ++i)
    if (!kept[i]) elim_order.push_back(i);
  size_t split = elim_order.size();
  std::vector<size_t> perm = elim_order;
  for (size_t k : keep) perm.push_back(k);

  std::vector<std::string> pvars;
  for (size_t i : perm) pvars.push_back(ring->vars[i]);
  RingPtr permuted = make_ring(ring->field, pvars, MonomialOrder::block((int)split));
  std::vector<size_t> where(n);
  for (size_t pos = 0; pos < n; ++pos) where[perm[pos]] = pos;
  std::vector<Polynomial> images;
  for (size_t i = 0; i < n; ++i) images.push_back(Polynomial::variable(permuted, where[i]));

  std::vector<Polynomial> mapped;
  for (const auto& g : ideal.gens()) mapped.push_back(g.map_vars(permuted, images));
  std::vector<Polynomial> gb = buchberger(permuted, mapped);

  RingPtr out;
  {
    std::vector<std::string> names;
    for (size_t k : keep) names.push_back(ring->vars[k]);
    out = make_ring(ring->field, names, MonomialOrder::degrevlex());
  }
  std::vector<Polynomial> out_images(n, Polynomial::zero(out));
  std::vector<Polynomial> keep_map;
  for (size_t pos = 0; pos < n; ++pos) keep_map.push_back(Polynomial::zero(out));
  for (size_t idx = 0; idx < keep.size(); ++idx) keep_map[split + idx] = Polynomial::variable(out, idx);

  uint64_t elim_mask = split >= 64 ? ~(uint64_t)0 : (((uint64_t)1 << split) - 1);
  std::vector<Polynomial> kept_gens;
  for (const auto& g : gb) {
    if ((g.support_mask() & elim_mask) != 0) continue;
    kept_gens.push_back(g.map_vars(out, keep_map));
  }
  return Ideal(out, kept_gens);
}

// Rabinowitsch trick: f lies in the radical iff 1 in (I, 1 - y f)
inline bool radical_member(const Ideal& ideal, const Polynomial& f) {
  if (ideal.contains(f)) return true;
  const RingPtr& ring = ideal.ring();
  std::vector<std::string> vars = ring->vars;
  vars.push_back("_rad");
  RingPtr ext = make_ring(ring->field, vars, MonomialOrder::degrevlex());
  std::vector<Polynomial> images;
  for (size_t i = 0; i < ring->nvars(); ++i) images.push_back(Polynomial::variable(ext, i));
  std::vector<Polynomial> gens;
  for (const auto& g : ideal.gens()) gens.push_back(g.map_vars(ext, images));
  Polynomial y = Polynomial::variable(ext, ring->nvars());
  gens.push_back(Polynomial::constant(ext, 1) - y * f.map_vars(ext, images));
  return Ideal(ext, gens).is_unit_ideal();
}

// ideal intersection via the one-tag construction
inline Ideal intersect(const Ideal& a, const Ideal& b) {
  if (!same_ring(a.ring(), b.ring())) throw AmbientMismatch("intersection over different rings");
  const RingPtr& ring = a.ring();
  size_t n = ring->nvars();
  std::vector<std::string> vars;
  vars.push_back("_tag");
  for (const auto& v : ring->vars) vars.push_back(v);
  RingPtr ext = make_ring(ring->field, vars, MonomialOrder::block(1));
  std::vector<Polynomial> images;
  for (size_t i = 0; i < n; ++i) images.push_back(Polynomial::variable(ext, i + 1));
  Polynomial y = Polynomial::variable(ext, 0);
  Polynomial one = Polynomial::constant(ext, 1);
  std::vector<Polynomial> gens;
  for (const auto& g : a.gens()) gens.push_back(y * g.map_vars(ext, images));
  for (const auto& g : b.gens()) gens.push_back((one - y) * g.map_vars(ext, images));
  std::vector<Polynomial> gb = buchberger(ext, gens);
  std::vector<Polynomial> back(ext->nvars(), Polynomial::zero(ring));
  for (size_t i = 0; i < n; ++i) back[i + 1] = Polynomial::variable(ring, i);
  std::vector<Polynomial> out;
  for (const auto& g : gb)
    if ((g.support_mask() & 1) == 0) out.push_back(g.map_vars(ring, back));
  return Ideal(ring, out);
}

}  // namespace locparam
