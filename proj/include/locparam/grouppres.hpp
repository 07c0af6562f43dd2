#pragma once

#include <map>

#include "matrix.hpp"

namespace locparam {

// The tame quotient group on generators s, t with s t s^-1 = t^q.
// Elements carry the normal form s^-m t^c s^n with m, n >= 0 and the
// reduction "m, n > 0 and q | c never holds".

struct GammaWord {
  long m = 0, n = 0;
  mpz_class c = 0;
  long q;

  explicit GammaWord(long q_) : q(q_) {}
  GammaWord(long q_, long m_, mpz_class c_, long n_) : m(m_), n(n_), c(std::move(c_)), q(q_) {
    normalize();
  }

  static GammaWord identity(long q) { return GammaWord(q); }
  static GammaWord sigma(long q) { return GammaWord(q, 0, 0, 1); }
  static GammaWord tau(long q, mpz_class c = 1) { return GammaWord(q, 0, std::move(c), 0); }

  void normalize() {
    while (m > 0 && n > 0 && c % q == 0) {
      --m;
      --n;
      c /= q;
    }
  }

  GammaWord operator*(const GammaWord& o) const {
    if (q != o.q) throw InvalidParameter("mixing distinct tame quotients");
    mpz_class qz(q);
    if (n >= o.m) {
      long k = n - o.m;
      mpz_class shift;
      mpz_pow_ui(shift.get_mpz_t(), qz.get_mpz_t(), (unsigned long)k);
      return GammaWord(q, m, c + o.c * shift, k + o.n);
    }
    long k = o.m - n;
    mpz_class shift;
    mpz_pow_ui(shift.get_mpz_t(), qz.get_mpz_t(), (unsigned long)k);
    return GammaWord(q, m + k, c * shift + o.c, o.n);
  }

  GammaWord inverse() const { return GammaWord(q, n, -c, m); }

  GammaWord pow(long k) const {
    GammaWord base = k >= 0 ? *this : inverse();
    long e = k >= 0 ? k : -k;
    GammaWord acc = identity(q);
    for (long i = 0; i < e; ++i) acc = acc * base;
    return acc;
  }

  bool is_identity() const { return m == 0 && n == 0 && c == 0; }
  bool operator==(const GammaWord& o) const { return m == o.m && n == o.n && c == o.c; }
  bool operator<(const GammaWord& o) const {
    if (m != o.m) return m < o.m;
    if (n != o.n) return n < o.n;
    return c < o.c;
  }

  std::string str() const {
    std::string out;
    if (m) out += "s^-" + std::to_string(m) + " ";
    if (c != 0) out += "t^" + c.get_str() + " ";
    if (n) out += "s^" + std::to_string(n);
    if (out.empty()) return "e";
    while (!out.empty() && out.back() == ' ') out.pop_back();
    return out;
  }
};

// rational group ring of the tame quotient
struct GroupRingElem {
  long q;
  std::map<GammaWord, mpq_class> terms;

  explicit GroupRingElem(long q_) : q(q_) {}

  static GroupRingElem zero(long q) { return GroupRingElem(q); }
  static GroupRingElem of(const GammaWord& w, mpq_class coeff = 1) {
    GroupRingElem e(w.q);
    if (coeff != 0) e.terms.emplace(w, std::move(coeff));
    return e;
  }
  static GroupRingElem one(long q) { return of(GammaWord::identity(q)); }

  bool is_zero() const { return terms.empty(); }

  GroupRingElem& operator+=(const GroupRingElem& o) {
    for (const auto& [w, c] : o.terms) {
      auto it = terms.find(w);
      if (it == terms.end())
        terms.emplace(w, c);
      else {
        it->second += c;
        if (it->second == 0) terms.erase(it);
      }
    }
    return *this;
  }
  GroupRingElem operator+(const GroupRingElem& o) const {
    GroupRingElem r = *this;
    r += o;
    return r;
  }
  GroupRingElem operator-() const {
    GroupRingElem r = *this;
    for (auto& [w, c] : r.terms) c = -c;
    return r;
  }
  GroupRingElem operator-(const GroupRingElem& o) const { return *this + (-o); }
  GroupRingElem operator*(const GroupRingElem& o) const {
    GroupRingElem r(q);
    for (const auto& [w1, c1] : terms)
      for (const auto& [w2, c2] : o.terms) {
        GammaWord w = w1 * w2;
        mpq_class c = c1 * c2;
        auto it = r.terms.find(w);
        if (it == r.terms.end())
          r.terms.emplace(w, c);
        else {
          it->second += c;
          if (it->second == 0) r.terms.erase(it);
        }
      }
    return r;
  }

  // coefficientwise inversion of the group elements
  GroupRingElem antipode() const {
    GroupRingElem r(q);
    for (const auto& [w, c] : terms) r.terms.emplace(w.inverse(), c);
    return r;
  }
};

// norm element (1 + t + ... + t^{q-1}) s
inline GroupRingElem sigma_norm(long q) {
  GroupRingElem e(q);
  for (long j = 0; j < q; ++j)
    e += GroupRingElem::of(GammaWord::tau(q, j) * GammaWord::sigma(q));
  return e;
}

struct GroupPresentation {
  long q;
  // relation: sigma tau sigma^-1 tau^-q = identity
  bool relation_holds() const {
    GammaWord w = GammaWord::sigma(q) * GammaWord::tau(q) * GammaWord::sigma(q).inverse() *
                  GammaWord::tau(q, -q);
    return w.is_identity();
  }
};

inline GroupPresentation make_qtame(long q) {
  if (q < 2) throw InvalidParameter("tame parameter must be at least 2");
  return GroupPresentation{q};
}

// two-step resolution data: F2 -> F1 -> F0 with maps acting by left
// multiplication; d2 = (1 - Ns, t - 1), d1 = column (1 - t, 1 - s)
struct ResolutionData {
  long q;
  GroupRingElem d2_first, d2_second;
  GroupRingElem d1_first, d1_second;

  // d1 after d2 vanishes in the group ring
  bool composes_to_zero() const {
    GroupRingElem z = d1_first * d2_first + d1_second * d2_second;
    return z.is_zero();
  }
};

inline ResolutionData tame_resolution(long q) {
  GroupRingElem one = GroupRingElem::one(q);
  GroupRingElem s = GroupRingElem::of(GammaWord::sigma(q));
  GroupRingElem t = GroupRingElem::of(GammaWord::tau(q));
  ResolutionData r{q,
                   one - sigma_norm(q),
                   t - one,
                   one - t,
                   one - s};
  return r;
}

// matrix of the representation at a normal-form word
inline Matrix evaluate_word(const GammaWord& w, const Matrix& S, const Matrix& T) {
  Matrix r = Matrix::identity(S.field(), S.rows());
  if (w.m) r = r * S.pow(-w.m);
  if (w.c != 0) r = r * T.pow_mpz(w.c);
  if (w.n) r = r * S.pow(w.n);
  return r;
}

// matrix of the right action v.x = sum c_w rho(w)^{-1} v
inline Matrix right_action_matrix(const GroupRingElem& x, const Matrix& S, const Matrix& T) {
  size_t d = S.rows();
  Matrix acc(S.field(), d, d);
  for (const auto& [w, c] : x.terms) {
    Matrix g = evaluate_word(w.inverse(), S, T);
    acc = acc + g.scaled(Field::from_mpq(S.field(), c));
  }
  return acc;
}

}  // namespace locparam
