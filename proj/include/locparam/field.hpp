#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"

namespace locparam {

// Exact coefficient fields: Q, F_p, F_p[a]/(f), Q[a]/(f).
// Elements are residue coordinate vectors of length deg(f); plain fields use length 1.

enum class FieldKind { Rationals, Prime, PrimeExt, RationalExt };

namespace fpop {

inline unsigned long add(unsigned long a, unsigned long b, unsigned long p) {
  unsigned long s = a + b;
  return s >= p ? s - p : s;
}
inline unsigned long sub(unsigned long a, unsigned long b, unsigned long p) {
  return a >= b ? a - b : a + p - b;
}
inline unsigned long mul(unsigned long a, unsigned long b, unsigned long p) {
  return (unsigned long)((unsigned __int128)a * b % p);
}
inline unsigned long pow(unsigned long a, unsigned long e, unsigned long p) {
  unsigned long r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mul(r, a, p);
    a = mul(a, a, p);
    e >>= 1;
  }
  return r;
}
inline unsigned long inv(unsigned long a, unsigned long p) {
  if (a % p == 0) throw DivisionByZero("inverse of zero in F_p");
  long long t = 0, nt = 1, r = (long long)p, nr = (long long)(a % p);
  while (nr != 0) {
    long long q = r / nr;
    long long tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (t < 0) t += (long long)p;
  return (unsigned long)t;
}

using PVec = std::vector<unsigned long>;

inline void trim(PVec& v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
}

// product of dense F_p polynomials, low-degree-first coefficients
inline PVec pmul(const PVec& a, const PVec& b, unsigned long p) {
  if (a.empty() || b.empty()) return {};
  PVec r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j)
      r[i + j] = add(r[i + j], mul(a[i], b[j], p), p);
  }
  trim(r);
  return r;
}

// remainder mod monic f
inline PVec pmod(PVec a, const PVec& f, unsigned long p) {
  trim(a);
  size_t df = f.size() - 1;
  while (a.size() > df) {
    unsigned long lead = a.back();
    size_t sh = a.size() - 1 - df;
    if (lead != 0)
      for (size_t i = 0; i < f.size(); ++i)
        a[sh + i] = sub(a[sh + i], mul(lead, f[i], p), p);
    a.pop_back();
    trim(a);
    if (a.size() <= df) break;
  }
  return a;
}

inline PVec pgcd(PVec a, PVec b, unsigned long p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    unsigned long li = inv(b.back(), p);
    PVec bm(b.size());
    for (size_t i = 0; i < b.size(); ++i) bm[i] = mul(b[i], li, p);
    PVec r = pmod(a, bm, p);
    a = b;
    b = r;
  }
  return a;
}

inline PVec ppowmod(PVec base, const mpz_class& e, const PVec& f, unsigned long p) {
  PVec r{1 % p};
  trim(r);
  base = pmod(base, f, p);
  mpz_class k = e;
  std::vector<int> bits;
  while (k > 0) {
    bits.push_back(mpz_tstbit(k.get_mpz_t(), 0));
    k >>= 1;
  }
  for (auto it = bits.rbegin(); it != bits.rend(); ++it) {
    r = pmod(pmul(r, r, p), f, p);
    if (*it) r = pmod(pmul(r, base, p), f, p);
  }
  return r;
}

// Rabin irreducibility for monic f over F_p
inline bool irreducible(const PVec& f, unsigned long p) {
  if (f.size() < 2) return false;
  size_t d = f.size() - 1;
  if (d == 1) return true;
  std::vector<size_t> primes;
  size_t m = d;
  for (size_t q = 2; q * q <= m; ++q)
    while (m % q == 0) {
      primes.push_back(q);
      m /= q;
    }
  if (m > 1) primes.push_back(m);
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  PVec x{0, 1};
  for (size_t q : primes) {
    mpz_class e;
    mpz_ui_pow_ui(e.get_mpz_t(), p, (unsigned long)(d / q));
    PVec xp = ppowmod(x, e, f, p);
    // gcd(x^(p^(d/q)) - x, f) must be a unit
    PVec diff = xp;
    diff.resize(std::max(diff.size(), (size_t)2), 0);
    diff[1] = sub(diff[1], 1, p);
    trim(diff);
    PVec g = pgcd(f, diff, p);
    if (g.size() != 1) return false;
  }
  mpz_class e;
  mpz_ui_pow_ui(e.get_mpz_t(), p, (unsigned long)d);
  PVec xp = ppowmod(x, e, f, p);
  PVec diff = xp;
  diff.resize(std::max(diff.size(), (size_t)2), 0);
  diff[1] = sub(diff[1], 1, p);
  trim(diff);
  return diff.empty();
}

}  // namespace fpop

struct FieldData;
using FieldPtr = std::shared_ptr<const FieldData>;

struct FieldData {
  FieldKind kind = FieldKind::Rationals;
  unsigned long p = 0;                    // characteristic, 0 in char zero
  std::vector<unsigned long> pmod;        // monic modulus, low-first, PrimeExt
  std::vector<mpq_class> qmod;            // monic modulus, low-first, RationalExt
  std::string gen = "a";
  int deg = 1;

  bool char_zero() const { return p == 0; }
  std::string describe() const {
    std::ostringstream os;
    switch (kind) {
      case FieldKind::Rationals:
        os << "Q";
        break;
      case FieldKind::Prime:
        os << "F_" << p;
        break;
      case FieldKind::PrimeExt: {
        os << "F_" << p << "[" << gen << "]/(";
        bool first = true;
        for (int i = deg; i >= 0; --i) {
          unsigned long c = pmod[(size_t)i];
          if (c == 0) continue;
          if (!first) os << "+";
          first = false;
          if (i == 0 || c != 1) os << c;
          if (i > 0 && c != 1) os << "*";
          if (i > 1) os << gen << "^" << i;
          else if (i == 1) os << gen;
        }
        os << ")";
        break;
      }
      case FieldKind::RationalExt: {
        os << "Q[" << gen << "]/(";
        bool first = true;
        for (int i = deg; i >= 0; --i) {
          mpq_class c = qmod[(size_t)i];
          if (c == 0) continue;
          if (!first && c > 0) os << "+";
          first = false;
          if (i == 0 || !(c == 1)) {
            if (c == -1 && i > 0) os << "-";
            else os << c.get_str();
          }
          if (i > 0 && !(c == 1) && !(c == -1)) os << "*";
          if (i > 1) os << gen << "^" << i;
          else if (i == 1) os << gen;
        }
        os << ")";
        break;
      }
    }
    return os.str();
  }
};

inline bool same_field(const FieldPtr& a, const FieldPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->p != b->p || a->deg != b->deg) return false;
  return a->pmod == b->pmod && a->qmod == b->qmod;
}

class FieldElem {
 public:
  FieldPtr fld;
  std::vector<mpq_class> qc;        // char zero coordinates
  std::vector<unsigned long> pc;    // char p coordinates

  FieldElem() = default;

  bool is_zero() const {
    if (fld && fld->char_zero()) {
      for (const auto& c : qc)
        if (c != 0) return false;
      return true;
    }
    for (auto c : pc)
      if (c != 0) return false;
    return true;
  }
  bool is_one() const;

  FieldElem operator-() const {
    FieldElem r = *this;
    if (fld->char_zero())
      for (auto& c : r.qc) c = -c;
    else
      for (auto& c : r.pc) c = c == 0 ? 0 : fld->p - c;
    return r;
  }

  FieldElem& operator+=(const FieldElem& o) {
    check(o);
    if (fld->char_zero())
      for (size_t i = 0; i < qc.size(); ++i) qc[i] += o.qc[i];
    else
      for (size_t i = 0; i < pc.size(); ++i) pc[i] = fpop::add(pc[i], o.pc[i], fld->p);
    return *this;
  }
  FieldElem& operator-=(const FieldElem& o) {
    check(o);
    if (fld->char_zero())
      for (size_t i = 0; i < qc.size(); ++i) qc[i] -= o.qc[i];
    else
      for (size_t i = 0; i < pc.size(); ++i) pc[i] = fpop::sub(pc[i], o.pc[i], fld->p);
    return *this;
  }
  FieldElem operator+(const FieldElem& o) const {
    FieldElem r = *this;
    r += o;
    return r;
  }
  FieldElem operator-(const FieldElem& o) const {
    FieldElem r = *this;
    r -= o;
    return r;
  }
  FieldElem operator*(const FieldElem& o) const;
  FieldElem& operator*=(const FieldElem& o) {
    *this = *this * o;
    return *this;
  }
  FieldElem inverse() const;
  FieldElem operator/(const FieldElem& o) const { return *this * o.inverse(); }

  bool operator==(const FieldElem& o) const {
    if (!same_field(fld, o.fld)) return false;
    return fld->char_zero() ? qc == o.qc : pc == o.pc;
  }
  bool operator!=(const FieldElem& o) const { return !(*this == o); }

  FieldElem pow(const mpz_class& e) const;

  std::string str() const;

 private:
  void check(const FieldElem& o) const {
    if (!same_field(fld, o.fld)) throw AmbientMismatch("field elements from different fields");
  }
};

class Field {
 public:
  static FieldPtr rationals() {
    static FieldPtr f = std::make_shared<FieldData>();
    return f;
  }

  static FieldPtr prime(unsigned long p) {
    require_prime(p);
    auto d = std::make_shared<FieldData>();
    d->kind = FieldKind::Prime;
    d->p = p;
    return d;
  }

  // modulus low-first with leading coefficient 1, degree >= 2
  static FieldPtr prime_ext(unsigned long p, std::vector<unsigned long> modulus,
                            const std::string& gen = "a") {
    require_prime(p);
    for (auto& c : modulus) c %= p;
    fpop::trim(modulus);
    if (modulus.size() < 3) throw InvalidParameter("extension modulus must have degree >= 2");
    if (modulus.back() != 1) throw InvalidParameter("extension modulus must be monic");
    if (!fpop::irreducible(modulus, p)) throw InvalidParameter("extension modulus is reducible");
    auto d = std::make_shared<FieldData>();
    d->kind = FieldKind::PrimeExt;
    d->p = p;
    d->pmod = std::move(modulus);
    d->gen = gen;
    d->deg = (int)d->pmod.size() - 1;
    return d;
  }

  // monic irreducible over Q; degree 2 is verified, higher degrees must be
  // certified by the caller (cyclotomic construction below qualifies)
  static FieldPtr rational_ext(std::vector<mpq_class> modulus, const std::string& gen = "a",
                               bool trusted = false) {
    while (!modulus.empty() && modulus.back() == 0) modulus.pop_back();
    if (modulus.size() < 3) throw InvalidParameter("extension modulus must have degree >= 2");
    if (modulus.back() != 1) throw InvalidParameter("extension modulus must be monic");
    if (modulus.size() == 3 && !trusted) {
      // x^2 + bx + c irreducible iff b^2 - 4c is not a rational square
      mpq_class disc = modulus[1] * modulus[1] - 4 * modulus[0];
      if (disc >= 0) {
        mpz_class n = disc.get_num(), dn = disc.get_den(), rn, rd;
        if (mpz_root(rn.get_mpz_t(), n.get_mpz_t(), 2) != 0 &&
            mpz_root(rd.get_mpz_t(), dn.get_mpz_t(), 2) != 0)
          throw InvalidParameter("quadratic modulus splits over Q");
      }
    }
    auto d = std::make_shared<FieldData>();
    d->kind = FieldKind::RationalExt;
    d->qmod = std::move(modulus);
    d->gen = gen;
    d->deg = (int)d->qmod.size() - 1;
    return d;
  }

  static FieldElem zero(const FieldPtr& f) {
    FieldElem e;
    e.fld = f;
    if (f->char_zero()) e.qc.assign((size_t)f->deg, mpq_class(0));
    else e.pc.assign((size_t)f->deg, 0);
    return e;
  }
  static FieldElem one(const FieldPtr& f) { return from_long(f, 1); }
  static FieldElem from_long(const FieldPtr& f, long v) {
    FieldElem e = zero(f);
    if (f->char_zero()) e.qc[0] = v;
    else {
      long m = v % (long)f->p;
      if (m < 0) m += (long)f->p;
      e.pc[0] = (unsigned long)m;
    }
    return e;
  }
  static FieldElem from_mpq(const FieldPtr& f, const mpq_class& v) {
    FieldElem e = zero(f);
    if (f->char_zero()) e.qc[0] = v;
    else {
      mpz_class num = v.get_num() % (long)f->p, den = v.get_den() % (long)f->p;
      if (num < 0) num += (long)f->p;
      unsigned long dn = den.get_ui();
      if (dn == 0) throw DivisionByZero("denominator divisible by the characteristic");
      e.pc[0] = fpop::mul(num.get_ui(), fpop::inv(dn, f->p), f->p);
    }
    return e;
  }
  // residue class of the extension generator
  static FieldElem generator(const FieldPtr& f) {
    if (f->deg < 2) throw WrongKind("base field has no extension generator");
    FieldElem e = zero(f);
    if (f->char_zero()) e.qc[1] = 1;
    else e.pc[1] = 1;
    return e;
  }
  static FieldElem from_coords_q(const FieldPtr& f, std::vector<mpq_class> c) {
    FieldElem e = zero(f);
    c.resize((size_t)f->deg, mpq_class(0));
    e.qc = std::move(c);
    return e;
  }
  static FieldElem from_coords_p(const FieldPtr& f, std::vector<unsigned long> c) {
    FieldElem e = zero(f);
    for (auto& x : c) x %= f->p;
    c.resize((size_t)f->deg, 0);
    e.pc = std::move(c);
    return e;
  }

  // embed an element of the prime/rational base field into an extension of it
  static FieldElem embed(const FieldPtr& target, const FieldElem& v) {
    if (same_field(target, v.fld)) return v;
    if (v.fld->deg != 1) {
      if (same_field(target, v.fld)) return v;
      throw AmbientMismatch("can only embed base field elements");
    }
    if (target->char_zero() != v.fld->char_zero() || target->p != v.fld->p)
      throw AmbientMismatch("incompatible characteristics");
    FieldElem e = zero(target);
    if (target->char_zero()) e.qc[0] = v.qc[0];
    else e.pc[0] = v.pc[0];
    return e;
  }

  static void require_prime(unsigned long p) {
    if (p < 2) throw InvalidParameter("characteristic must be prime");
    for (unsigned long d = 2; d * d <= p; ++d)
      if (p % d == 0) throw InvalidParameter("characteristic must be prime");
  }
};

inline bool FieldElem::is_one() const { return *this == Field::one(fld); }

inline FieldElem FieldElem::operator*(const FieldElem& o) const {
  check(o);
  FieldElem r = Field::zero(fld);
  if (fld->deg == 1) {
    if (fld->char_zero()) r.qc[0] = qc[0] * o.qc[0];
    else r.pc[0] = fpop::mul(pc[0], o.pc[0], fld->p);
    return r;
  }
  if (fld->char_zero()) {
    std::vector<mpq_class> prod((size_t)(2 * fld->deg - 1), mpq_class(0));
    for (int i = 0; i < fld->deg; ++i) {
      if (qc[(size_t)i] == 0) continue;
      for (int j = 0; j < fld->deg; ++j) prod[(size_t)(i + j)] += qc[(size_t)i] * o.qc[(size_t)j];
    }
    for (int k = 2 * fld->deg - 2; k >= fld->deg; --k) {
      if (prod[(size_t)k] == 0) continue;
      mpq_class lead = prod[(size_t)k];
      for (int i = 0; i <= fld->deg; ++i)
        prod[(size_t)(k - fld->deg + i)] -= lead * fld->qmod[(size_t)i];
    }
    for (int i = 0; i < fld->deg; ++i) r.qc[(size_t)i] = prod[(size_t)i];
  } else {
    fpop::PVec a(pc.begin(), pc.end()), b(o.pc.begin(), o.pc.end());
    fpop::trim(a);
    fpop::trim(b);
    fpop::PVec m = fpop::pmod(fpop::pmul(a, b, fld->p), fld->pmod, fld->p);
    for (size_t i = 0; i < m.size(); ++i) r.pc[i] = m[i];
  }
  return r;
}

inline FieldElem FieldElem::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero");
  if (fld->deg == 1) {
    FieldElem r = Field::zero(fld);
    if (fld->char_zero()) r.qc[0] = 1 / qc[0];
    else r.pc[0] = fpop::inv(pc[0], fld->p);
    return r;
  }
  if (!fld->char_zero()) {
    // extended Euclid in F_p[x] against the modulus
    fpop::PVec r0 = fld->pmod, r1(pc.begin(), pc.end());
    fpop::trim(r1);
    fpop::PVec s0{}, s1{1};
    unsigned long p = fld->p;
    while (!r1.empty()) {
      // divide r0 by r1
      fpop::PVec q;
      fpop::PVec rem = r0;
      fpop::trim(rem);
      if (rem.size() >= r1.size()) {
        q.assign(rem.size() - r1.size() + 1, 0);
        unsigned long li = fpop::inv(r1.back(), p);
        while (rem.size() >= r1.size() && !rem.empty()) {
          unsigned long c = fpop::mul(rem.back(), li, p);
          size_t sh = rem.size() - r1.size();
          q[sh] = c;
          for (size_t i = 0; i < r1.size(); ++i)
            rem[sh + i] = fpop::sub(rem[sh + i], fpop::mul(c, r1[i], p), p);
          fpop::trim(rem);
        }
      }
      fpop::PVec s2 = s0;
      fpop::PVec qs = fpop::pmul(q, s1, p);
      s2.resize(std::max(s2.size(), qs.size()), 0);
      for (size_t i = 0; i < qs.size(); ++i) s2[i] = fpop::sub(s2[i], qs[i], p);
      fpop::trim(s2);
      r0 = r1;
      r1 = rem;
      s0 = s1;
      s1 = s2;
    }
    // r0 is a unit constant
    unsigned long ci = fpop::inv(r0.empty() ? 0 : r0[0], p);
    FieldElem out = Field::zero(fld);
    for (size_t i = 0; i < s0.size() && i < out.pc.size(); ++i) out.pc[i] = fpop::mul(s0[i], ci, p);
    return out;
  }
  // char zero extension: extended Euclid over Q
  using QV = std::vector<mpq_class>;
  auto qtrim = [](QV& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
  };
  QV r0 = fld->qmod, r1(qc.begin(), qc.end());
  qtrim(r1);
  QV s0{}, s1{mpq_class(1)};
  while (!r1.empty()) {
    QV rem = r0, q;
    qtrim(rem);
    if (rem.size() >= r1.size()) {
      q.assign(rem.size() - r1.size() + 1, mpq_class(0));
      while (rem.size() >= r1.size() && !rem.empty()) {
        mpq_class c = rem.back() / r1.back();
        size_t sh = rem.size() - r1.size();
        q[sh] = c;
        for (size_t i = 0; i < r1.size(); ++i) rem[sh + i] -= c * r1[i];
        qtrim(rem);
      }
    }
    QV s2 = s0;
    if (!q.empty() && !s1.empty()) {
      QV qs(q.size() + s1.size() - 1, mpq_class(0));
      for (size_t i = 0; i < q.size(); ++i)
        for (size_t j = 0; j < s1.size(); ++j) qs[i + j] += q[i] * s1[j];
      s2.resize(std::max(s2.size(), qs.size()), mpq_class(0));
      for (size_t i = 0; i < qs.size(); ++i) s2[i] -= qs[i];
    }
    qtrim(s2);
    r0 = r1;
    r1 = rem;
    s0 = s1;
    s1 = s2;
  }
  mpq_class ci = 1 / r0[0];
  FieldElem out = Field::zero(fld);
  for (size_t i = 0; i < s0.size() && i < out.qc.size(); ++i) out.qc[i] = s0[i] * ci;
  return out;
}

inline FieldElem FieldElem::pow(const mpz_class& e) const {
  if (e < 0) return inverse().pow(-e);
  FieldElem r = Field::one(fld), b = *this;
  mpz_class k = e;
  while (k > 0) {
    if (mpz_tstbit(k.get_mpz_t(), 0)) r = r * b;
    b = b * b;
    k >>= 1;
  }
  return r;
}

inline std::string FieldElem::str() const {
  std::ostringstream os;
  if (fld->deg == 1) {
    if (fld->char_zero()) os << qc[0].get_str();
    else os << pc[0];
    return os.str();
  }
  bool any = false;
  for (int i = fld->deg - 1; i >= 0; --i) {
    bool zero = fld->char_zero() ? qc[(size_t)i] == 0 : pc[(size_t)i] == 0;
    if (zero) continue;
    if (any) os << "+";
    any = true;
    std::string cs = fld->char_zero() ? qc[(size_t)i].get_str() : std::to_string(pc[(size_t)i]);
    if (i == 0) {
      os << cs;
      continue;
    }
    if (cs == "1") {
    } else if (cs == "-1") {
      os << "-";
    } else {
      os << cs << "*";
    }
    os << fld->gen;
    if (i > 1) os << "^" << i;
  }
  if (!any) os << "0";
  return os.str();
}

// nth cyclotomic polynomial over Q, low-first monic coefficients
inline std::vector<mpq_class> cyclotomic_coeffs(unsigned long n) {
  if (n == 0) throw InvalidParameter("cyclotomic index must be positive");
  using QV = std::vector<mpq_class>;
  auto divexact = [](const QV& num, const QV& den) {
    QV r = num, q;
    q.assign(num.size() - den.size() + 1, mpq_class(0));
    while (r.size() >= den.size()) {
      mpq_class c = r.back() / den.back();
      size_t sh = r.size() - den.size();
      q[sh] = c;
      for (size_t i = 0; i < den.size(); ++i) r[sh + i] -= c * den[i];
      while (!r.empty() && r.back() == 0) r.pop_back();
      if (r.empty()) break;
    }
    return q;
  };
  std::vector<QV> phi(n + 1);
  for (unsigned long d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    QV num(d + 1, mpq_class(0));
    num[0] = -1;
    num[d] = 1;
    QV den{mpq_class(1)};
    for (unsigned long e = 1; e < d; ++e) {
      if (d % e != 0) continue;
      QV prod(den.size() + phi[e].size() - 1, mpq_class(0));
      for (size_t i = 0; i < den.size(); ++i)
        for (size_t j = 0; j < phi[e].size(); ++j) prod[i + j] += den[i] * phi[e][j];
      den = prod;
    }
    phi[d] = divexact(num, den);
  }
  return phi[n];
}

// Q(zeta_n) presented by the nth cyclotomic polynomial (n >= 3); n <= 2 stays Q
inline FieldPtr cyclotomic_field(unsigned long n) {
  if (n <= 2) return Field::rationals();
  return Field::rational_ext(cyclotomic_coeffs(n), "a", true);
}

// smallest k with d | p^k - 1, then the first irreducible monic polynomial of
// degree k in coefficient-lexicographic order; deterministic
inline FieldPtr prime_field_with_root_order(unsigned long p, unsigned long d) {
  if (d % p == 0) throw InvalidParameter("root order divisible by the characteristic");
  unsigned long k = 1;
  mpz_class pk = p;
  while (mpz_class(pk - 1) % d != 0) {
    ++k;
    pk *= p;
    if (k > 24) throw BudgetExceeded("extension degree search");
  }
  if (k == 1) return Field::prime(p);
  std::vector<unsigned long> counter(k, 0);
  for (;;) {
    std::vector<unsigned long> f(counter);
    f.push_back(1);
    if (fpop::irreducible(f, p)) return Field::prime_ext(p, f);
    size_t i = 0;
    while (i < k && ++counter[i] == p) counter[i++] = 0;
    if (i == k) throw BudgetExceeded("irreducible modulus search");
  }
}

inline std::vector<unsigned long> prime_divisors(unsigned long d) {
  std::vector<unsigned long> ps;
  for (unsigned long q = 2; q * q <= d; ++q)
    if (d % q == 0) {
      ps.push_back(q);
      while (d % q == 0) d /= q;
    }
  if (d > 1) ps.push_back(d);
  return ps;
}

// deterministic element of exact multiplicative order d
inline FieldElem root_of_unity(const FieldPtr& f, unsigned long d) {
  if (d == 1) return Field::one(f);
  if (d == 2) return Field::from_long(f, -1);
  auto has_exact_order = [&](const FieldElem& r) {
    if (!r.pow(d).is_one()) return false;
    for (unsigned long q : prime_divisors(d))
      if (r.pow(d / q).is_one()) return false;
    return true;
  };
  if (f->char_zero()) {
    if (f->kind != FieldKind::RationalExt)
      throw InvalidParameter("order > 2 needs a cyclotomic extension");
    // the class of a in Q[a]/(Phi_n) has exact order n
    FieldElem g = Field::generator(f);
    unsigned long ord = 0;
    for (unsigned long n = 1; n <= 4096; ++n)
      if (g.pow(n).is_one()) {
        ord = n;
        break;
      }
    if (ord == 0 || ord % d != 0)
      throw InvalidParameter("field does not contain a root of the requested order");
    FieldElem r = g.pow(ord / d);
    if (!has_exact_order(r)) throw InvalidParameter("generator order not exact");
    return r;
  }
  // finite field: enumerate elements in coefficient-lexicographic order
  mpz_class units;
  mpz_ui_pow_ui(units.get_mpz_t(), f->p, (unsigned long)f->deg);
  units -= 1;
  if (units % d != 0) throw InvalidParameter("field has no root of the requested order");
  mpz_class cof = units / d;
  std::vector<unsigned long> counter((size_t)f->deg, 0);
  for (;;) {
    size_t i = 0;
    while (i < counter.size() && ++counter[i] == f->p) counter[i++] = 0;
    if (i == counter.size()) throw InvalidParameter("no element of the requested order");
    FieldElem e = Field::from_coords_p(f, counter);
    if (e.is_zero()) continue;
    FieldElem r = e.pow(cof);
    if (has_exact_order(r)) return r;
  }
}

}  // namespace locparam
