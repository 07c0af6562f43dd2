#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "field.hpp"

namespace locparam {

// Sparse multivariate polynomials over a FieldElem coefficient field.
// Terms are kept sorted descending under the ring's active monomial order.

struct Monomial {
  std::vector<uint32_t> e;
  uint32_t deg = 0;

  static Monomial unit(size_t n) {
    Monomial m;
    m.e.assign(n, 0);
    return m;
  }
  static Monomial var(size_t n, size_t i, uint32_t k = 1) {
    Monomial m = unit(n);
    m.e[i] = k;
    m.deg = k;
    return m;
  }
  bool is_unit() const { return deg == 0; }
  bool divides(const Monomial& o) const {
    for (size_t i = 0; i < e.size(); ++i)
      if (e[i] > o.e[i]) return false;
    return true;
  }
  Monomial operator*(const Monomial& o) const {
    Monomial r = *this;
    for (size_t i = 0; i < e.size(); ++i) r.e[i] += o.e[i];
    r.deg += o.deg;
    return r;
  }
  // quotient, caller guarantees divisibility
  Monomial operator/(const Monomial& o) const {
    Monomial r = *this;
    for (size_t i = 0; i < e.size(); ++i) r.e[i] -= o.e[i];
    r.deg -= o.deg;
    return r;
  }
  Monomial lcm(const Monomial& o) const {
    Monomial r = *this;
    r.deg = 0;
    for (size_t i = 0; i < e.size(); ++i) {
      r.e[i] = std::max(e[i], o.e[i]);
      r.deg += r.e[i];
    }
    return r;
  }
  bool coprime(const Monomial& o) const {
    for (size_t i = 0; i < e.size(); ++i)
      if (e[i] > 0 && o.e[i] > 0) return false;
    return true;
  }
  uint64_t support_mask() const {
    uint64_t m = 0;
    for (size_t i = 0; i < e.size(); ++i)
      if (e[i] > 0) m |= (uint64_t)1 << i;
    return m;
  }
  bool operator==(const Monomial& o) const { return e == o.e; }
  bool operator!=(const Monomial& o) const { return !(*this == o); }
};

struct MonomialOrder {
  enum class Kind { Lex, DegRevLex, Block };
  Kind kind = Kind::DegRevLex;
  int split = 0;  // Block: variables [0, split) form the eliminated block

  static MonomialOrder lex() { return {Kind::Lex, 0}; }
  static MonomialOrder degrevlex() { return {Kind::DegRevLex, 0}; }
  static MonomialOrder block(int split) { return {Kind::Block, split}; }

  // positive if a > b
  int cmp(const Monomial& a, const Monomial& b) const {
    switch (kind) {
      case Kind::Lex:
        for (size_t i = 0; i < a.e.size(); ++i)
          if (a.e[i] != b.e[i]) return a.e[i] > b.e[i] ? 1 : -1;
        return 0;
      case Kind::DegRevLex:
        return drl(a, b, 0, a.e.size());
      case Kind::Block: {
        int c = drl(a, b, 0, (size_t)split);
        if (c != 0) return c;
        return drl(a, b, (size_t)split, a.e.size());
      }
    }
    return 0;
  }
  bool less(const Monomial& a, const Monomial& b) const { return cmp(a, b) < 0; }
  bool operator==(const MonomialOrder& o) const { return kind == o.kind && split == o.split; }

 private:
  static int drl(const Monomial& a, const Monomial& b, size_t lo, size_t hi) {
    uint32_t da = 0, db = 0;
    for (size_t i = lo; i < hi; ++i) {
      da += a.e[i];
      db += b.e[i];
    }
    if (da != db) return da > db ? 1 : -1;
    for (size_t i = hi; i-- > lo;)
      if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? 1 : -1;
    return 0;
  }
};

inline std::string order_name(const MonomialOrder& o) {
  switch (o.kind) {
    case MonomialOrder::Kind::Lex:
      return "lex";
    case MonomialOrder::Kind::DegRevLex:
      return "degrevlex";
    case MonomialOrder::Kind::Block:
      return "block@" + std::to_string(o.split);
  }
  return "?";
}

struct Ring {
  FieldPtr field;
  std::vector<std::string> vars;
  MonomialOrder ord;

  size_t nvars() const { return vars.size(); }
  int var_index(const std::string& name) const {
    for (size_t i = 0; i < vars.size(); ++i)
      if (vars[i] == name) return (int)i;
    return -1;
  }
};
using RingPtr = std::shared_ptr<const Ring>;

inline RingPtr make_ring(FieldPtr field, std::vector<std::string> vars,
                         MonomialOrder ord = MonomialOrder::degrevlex()) {
  auto r = std::make_shared<Ring>();
  r->field = std::move(field);
  r->vars = std::move(vars);
  r->ord = ord;
  return r;
}

inline bool same_ring(const RingPtr& a, const RingPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return same_field(a->field, b->field) && a->vars == b->vars && a->ord == b->ord;
}

struct Term {
  Monomial m;
  FieldElem c;
};

class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(RingPtr r) : ring_(std::move(r)) {}

  static Polynomial zero(const RingPtr& r) { return Polynomial(r); }
  static Polynomial constant(const RingPtr& r, const FieldElem& c) {
    Polynomial p(r);
    if (!c.is_zero()) p.t_.push_back({Monomial::unit(r->nvars()), c});
    return p;
  }
  static Polynomial constant(const RingPtr& r, long v) {
    return constant(r, Field::from_long(r->field, v));
  }
  static Polynomial variable(const RingPtr& r, size_t i, uint32_t k = 1) {
    Polynomial p(r);
    p.t_.push_back({Monomial::var(r->nvars(), i, k), Field::one(r->field)});
    return p;
  }
  static Polynomial term(const RingPtr& r, const Monomial& m, const FieldElem& c) {
    Polynomial p(r);
    if (!c.is_zero()) p.t_.push_back({m, c});
    return p;
  }

  const RingPtr& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_[0].m.is_unit()); }
  size_t nterms() const { return t_.size(); }

  const Monomial& lm() const {
    if (t_.empty()) throw DivisionByZero("leading monomial of zero");
    return t_[0].m;
  }
  const FieldElem& lc() const {
    if (t_.empty()) throw DivisionByZero("leading coefficient of zero");
    return t_[0].c;
  }
  uint32_t total_degree() const {
    uint32_t d = 0;
    for (const auto& t : t_) d = std::max(d, t.m.deg);
    return d;
  }
  uint64_t support_mask() const {
    uint64_t m = 0;
    for (const auto& t : t_) m |= t.m.support_mask();
    return m;
  }

  Polynomial operator-() const {
    Polynomial r = *this;
    for (auto& t : r.t_) t.c = -t.c;
    return r;
  }

  Polynomial operator+(const Polynomial& o) const {
    check(o);
    Polynomial r(ring_);
    r.t_.reserve(t_.size() + o.t_.size());
    size_t i = 0, j = 0;
    const auto& ord = ring_->ord;
    while (i < t_.size() && j < o.t_.size()) {
      int c = ord.cmp(t_[i].m, o.t_[j].m);
      if (c > 0) r.t_.push_back(t_[i++]);
      else if (c < 0) r.t_.push_back(o.t_[j++]);
      else {
        FieldElem s = t_[i].c + o.t_[j].c;
        if (!s.is_zero()) r.t_.push_back({t_[i].m, s});
        ++i;
        ++j;
      }
    }
    while (i < t_.size()) r.t_.push_back(t_[i++]);
    while (j < o.t_.size()) r.t_.push_back(o.t_[j++]);
    return r;
  }
  Polynomial operator-(const Polynomial& o) const { return *this + (-o); }
  Polynomial& operator+=(const Polynomial& o) {
    *this = *this + o;
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    *this = *this - o;
    return *this;
  }

  // this -= c * m * g; the workhorse of reduction
  void axpy(const FieldElem& c, const Monomial& m, const Polynomial& g) {
    check(g);
    std::vector<Term> merged;
    merged.reserve(t_.size() + g.t_.size());
    const auto& ord = ring_->ord;
    size_t i = 0, j = 0;
    while (i < t_.size() && j < g.t_.size()) {
      Monomial gm = g.t_[j].m * m;
      int cc = ord.cmp(t_[i].m, gm);
      if (cc > 0) merged.push_back(t_[i++]);
      else if (cc < 0) {
        merged.push_back({gm, -(c * g.t_[j].c)});
        ++j;
      } else {
        FieldElem s = t_[i].c - c * g.t_[j].c;
        if (!s.is_zero()) merged.push_back({t_[i].m, s});
        ++i;
        ++j;
      }
    }
    while (i < t_.size()) merged.push_back(t_[i++]);
    while (j < g.t_.size()) {
      merged.push_back({g.t_[j].m * m, -(c * g.t_[j].c)});
      ++j;
    }
    t_ = std::move(merged);
  }

  Polynomial mul_term(const FieldElem& c, const Monomial& m) const {
    Polynomial r(ring_);
    if (c.is_zero()) return r;
    r.t_.reserve(t_.size());
    for (const auto& t : t_) {
      FieldElem cc = t.c * c;
      if (!cc.is_zero()) r.t_.push_back({t.m * m, cc});
    }
    return r;
  }
  Polynomial operator*(const FieldElem& c) const { return mul_term(c, Monomial::unit(ring_->nvars())); }

  Polynomial operator*(const Polynomial& o) const {
    check(o);
    Polynomial r(ring_);
    if (t_.empty() || o.t_.empty()) return r;
    const auto& ord = ring_->ord;
    auto cmp = [&ord](const Monomial& a, const Monomial& b) { return ord.cmp(a, b) > 0; };
    std::map<Monomial, FieldElem, decltype(cmp)> acc(cmp);
    for (const auto& ta : t_)
      for (const auto& tb : o.t_) {
        Monomial m = ta.m * tb.m;
        FieldElem c = ta.c * tb.c;
        auto it = acc.find(m);
        if (it == acc.end()) acc.emplace(m, c);
        else it->second += c;
      }
    for (auto& kv : acc)
      if (!kv.second.is_zero()) r.t_.push_back({kv.first, kv.second});
    return r;
  }

  Polynomial pow(uint32_t k) const {
    Polynomial r = constant(ring_, 1), b = *this;
    while (k) {
      if (k & 1) r = r * b;
      if (k >>= 1) b = b * b;
    }
    return r;
  }

  Polynomial derivative(size_t var) const {
    Polynomial r(ring_);
    for (const auto& t : t_) {
      if (t.m.e[var] == 0) continue;
      Term nt = t;
      nt.c = t.c * Field::from_long(ring_->field, (long)t.m.e[var]);
      nt.m.e[var] -= 1;
      nt.m.deg -= 1;
      if (!nt.c.is_zero()) r.t_.push_back(nt);
    }
    // differentiation preserves the relative order of surviving terms
    std::sort(r.t_.begin(), r.t_.end(),
              [this](const Term& a, const Term& b) { return ring_->ord.cmp(a.m, b.m) > 0; });
    return r;
  }

  // evaluation in a target field extending the coefficient field
  FieldElem eval(const FieldPtr& target, const std::vector<FieldElem>& values) const {
    if (values.size() != ring_->nvars()) throw AmbientMismatch("value count mismatch");
    FieldElem acc = Field::zero(target);
    for (const auto& t : t_) {
      FieldElem v = Field::embed(target, t.c);
      for (size_t i = 0; i < values.size(); ++i)
        if (t.m.e[i] > 0) v = v * values[i].pow(t.m.e[i]);
      acc += v;
    }
    return acc;
  }

  // image under a ring map sending variable i to images[i]
  Polynomial map_vars(const RingPtr& target, const std::vector<Polynomial>& images) const {
    if (images.size() != ring_->nvars()) throw AmbientMismatch("image count mismatch");
    Polynomial acc = Polynomial::zero(target);
    for (const auto& t : t_) {
      Polynomial v = Polynomial::constant(target, Field::embed(target->field, t.c));
      for (size_t i = 0; i < images.size(); ++i)
        if (t.m.e[i] > 0) v = v * images[i].pow(t.m.e[i]);
      acc += v;
    }
    return acc;
  }

  // same variables, new order or compatible field
  Polynomial change_ring(const RingPtr& target) const {
    Polynomial r(target);
    r.t_.reserve(t_.size());
    for (const auto& t : t_) r.t_.push_back({t.m, Field::embed(target->field, t.c)});
    std::sort(r.t_.begin(), r.t_.end(),
              [&target](const Term& a, const Term& b) { return target->ord.cmp(a.m, b.m) > 0; });
    return r;
  }

  void make_monic() {
    if (t_.empty()) return;
    FieldElem li = t_[0].c.inverse();
    for (auto& t : t_) t.c = t.c * li;
  }

  // integer-primitive scaling with positive lead; only for plain rational coefficients
  void make_primitive() {
    if (t_.empty() || !ring_->field->char_zero() || ring_->field->deg != 1) return;
    mpz_class den = 1, num = 0;
    for (const auto& t : t_) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.c.qc[0].get_den().get_mpz_t());
    for (const auto& t : t_) {
      mpz_class n = t.c.qc[0].get_num() * (den / t.c.qc[0].get_den());
      mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), n.get_mpz_t());
    }
    if (num == 0) return;
    mpq_class scale(den, num);
    scale.canonicalize();
    if (t_[0].c.qc[0] * scale < 0) scale = -scale;
    for (auto& t : t_) {
      t.c.qc[0] *= scale;
      t.c.qc[0].canonicalize();
    }
  }

  bool operator==(const Polynomial& o) const {
    if (!same_ring(ring_, o.ring_)) return false;
    if (t_.size() != o.t_.size()) return false;
    for (size_t i = 0; i < t_.size(); ++i)
      if (t_[i].m != o.t_[i].m || t_[i].c != o.t_[i].c) return false;
    return true;
  }
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  std::string sparse() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : t_) {
      if (!first) os << " + ";
      first = false;
      std::string cs = t.c.str();
      bool scalar_plain = ring_->field->deg == 1;
      if (!scalar_plain && !t.m.is_unit() && cs.find('+') != std::string::npos) cs = "(" + cs + ")";
      if (t.m.is_unit()) {
        os << (scalar_plain || cs.find('+') == std::string::npos ? cs : "(" + cs + ")");
        continue;
      }
      os << cs << " *";
      for (size_t i = 0; i < t.m.e.size(); ++i) {
        if (t.m.e[i] == 0) continue;
        os << " " << ring_->vars[i];
        if (t.m.e[i] > 1) os << "^" << t.m.e[i];
      }
    }
    return os.str();
  }

  // internal: push a checked term list directly
  static Polynomial from_terms(const RingPtr& r, std::vector<Term> ts) {
    Polynomial p(r);
    std::sort(ts.begin(), ts.end(),
              [&r](const Term& a, const Term& b) { return r->ord.cmp(a.m, b.m) > 0; });
    for (auto& t : ts) {
      if (t.c.is_zero()) continue;
      if (!p.t_.empty() && p.t_.back().m == t.m) p.t_.back().c += t.c;
      else p.t_.push_back(std::move(t));
    }
    std::vector<Term> clean;
    clean.reserve(p.t_.size());
    for (auto& t : p.t_)
      if (!t.c.is_zero()) clean.push_back(std::move(t));
    p.t_ = std::move(clean);
    return p;
  }

 private:
  RingPtr ring_;
  std::vector<Term> t_;

  void check(const Polynomial& o) const {
    if (!same_ring(ring_, o.ring_)) throw AmbientMismatch("polynomials from different rings");
  }
};

// scalar parser: "3/7", "-4", "(a+1)", "2*a^2+a+1"
inline FieldElem parse_scalar(const FieldPtr& f, std::string s) {
  auto strip = [](std::string& x) {
    while (!x.empty() && (x.front() == ' ')) x.erase(x.begin());
    while (!x.empty() && (x.back() == ' ')) x.pop_back();
  };
  strip(s);
  if (!s.empty() && s.front() == '(' && s.back() == ')') {
    s = s.substr(1, s.size() - 2);
    strip(s);
  }
  if (s.empty()) throw ParseError("empty scalar");
  FieldElem acc = Field::zero(f);
  size_t pos = 0;
  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+') ++pos;
    else if (s[pos] == '-') {
      sign = -1;
      ++pos;
    }
    size_t next = pos;
    while (next < s.size() && s[next] != '+' && s[next] != '-') ++next;
    std::string piece = s.substr(pos, next - pos);
    strip(piece);
    pos = next;
    if (piece.empty()) throw ParseError("malformed scalar: " + s);
    mpq_class coeff = 1;
    uint32_t gpow = 0;
    size_t star = piece.find('*');
    std::string cpart = piece, gpart;
    if (star != std::string::npos) {
      cpart = piece.substr(0, star);
      gpart = piece.substr(star + 1);
    } else if (f->deg > 1 && piece.find(f->gen) != std::string::npos) {
      gpart = piece;
      cpart = "";
    }
    strip(cpart);
    strip(gpart);
    if (!cpart.empty()) coeff = mpq_class(cpart);
    if (!gpart.empty()) {
      if (gpart.rfind(f->gen, 0) != 0) throw ParseError("unknown generator in scalar: " + piece);
      std::string rest = gpart.substr(f->gen.size());
      if (rest.empty()) gpow = 1;
      else if (rest[0] == '^') gpow = (uint32_t)std::stoul(rest.substr(1));
      else throw ParseError("malformed generator power: " + piece);
    }
    if (sign < 0) coeff = -coeff;
    FieldElem term = Field::from_mpq(f, coeff);
    if (gpow > 0) {
      if (f->deg < 2) throw ParseError("generator in a base-field scalar");
      term = term * Field::generator(f).pow(gpow);
    }
    acc += term;
  }
  return acc;
}

// parse the sparse text format: terms joined by " + ",
// each "coeff * v1^e1 v2^e2" or a bare coefficient / bare monomial
inline Polynomial parse_sparse(const RingPtr& r, const std::string& s) {
  Polynomial acc = Polynomial::zero(r);
  size_t pos = 0;
  int depth = 0;
  std::vector<std::string> pieces;
  std::string cur;
  while (pos < s.size()) {
    if (s[pos] == '(') ++depth;
    if (s[pos] == ')') --depth;
    if (depth == 0 && s.compare(pos, 3, " + ") == 0) {
      pieces.push_back(cur);
      cur.clear();
      pos += 3;
      continue;
    }
    cur.push_back(s[pos++]);
  }
  pieces.push_back(cur);
  for (auto& piece : pieces) {
    std::string t = piece;
    while (!t.empty() && t.front() == ' ') t.erase(t.begin());
    while (!t.empty() && t.back() == ' ') t.pop_back();
    if (t.empty() || t == "0") continue;
    // split "coeff * monomial"
    std::string cpart, mpart;
    size_t star = std::string::npos;
    int d = 0;
    for (size_t i = 0; i + 1 < t.size(); ++i) {
      if (t[i] == '(') ++d;
      if (t[i] == ')') --d;
      if (d == 0 && t[i] == '*' && (i == 0 || t[i - 1] == ' ' || t[i + 1] == ' ')) {
        star = i;
        break;
      }
    }
    if (star != std::string::npos) {
      cpart = t.substr(0, star);
      mpart = t.substr(star + 1);
    } else {
      bool isvar = false;
      for (size_t i = 0; i < r->nvars(); ++i)
        if (t.rfind(r->vars[i], 0) == 0) isvar = true;
      if (isvar && !(r->field->deg > 1 && t.rfind(r->field->gen, 0) == 0)) {
        cpart = "1";
        mpart = t;
      } else {
        cpart = t;
      }
    }
    FieldElem c = parse_scalar(r->field, cpart);
    Monomial m = Monomial::unit(r->nvars());
    std::istringstream ms(mpart);
    std::string tok;
    while (ms >> tok) {
      size_t caret = tok.find('^');
      std::string vname = caret == std::string::npos ? tok : tok.substr(0, caret);
      uint32_t k = caret == std::string::npos ? 1 : (uint32_t)std::stoul(tok.substr(caret + 1));
      int vi = r->var_index(vname);
      if (vi < 0) throw ParseError("unknown variable: " + vname);
      m.e[(size_t)vi] += k;
      m.deg += k;
    }
    acc += Polynomial::term(r, m, c);
  }
  return acc;
}

// deterministic polynomial comparison (leading terms first), for sorting bases
inline int poly_cmp(const Polynomial& a, const Polynomial& b) {
  const auto& ord = a.ring()->ord;
  size_t n = std::min(a.nterms(), b.nterms());
  for (size_t i = 0; i < n; ++i) {
    int c = ord.cmp(a.terms()[i].m, b.terms()[i].m);
    if (c != 0) return c;
  }
  if (a.nterms() != b.nterms()) return a.nterms() > b.nterms() ? 1 : -1;
  return 0;
}

}  // namespace locparam
