#pragma once

// JSON serialization for schemes, reports, and points, plus the small parsers
// the command line needs. Output is deterministic: key order is fixed and all
// coefficients are exact strings.

#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "cohomology.hpp"
#include "components.hpp"
#include "satake.hpp"
#include "springer.hpp"

namespace locparam {

using Json = nlohmann::ordered_json;

inline std::string modulus_string(const FieldPtr& f) {
  std::ostringstream os;
  bool first = true;
  for (int i = f->deg; i >= 0; --i) {
    std::string c;
    if (f->char_zero()) {
      mpq_class v = f->qmod[(size_t)i];
      if (v == 0) continue;
      c = v.get_str();
    } else {
      unsigned long v = f->pmod[(size_t)i];
      if (v == 0) continue;
      c = std::to_string(v);
    }
    if (!first) os << "+";
    first = false;
    if (i == 0 || c != "1") os << c;
    if (i > 0 && c != "1") os << "*";
    if (i > 1) os << f->gen << "^" << i;
    else if (i == 1) os << f->gen;
  }
  return os.str();
}

// exact string form, e.g. "3/7" or "a+1 mod a^2+a+1 over F_2"
inline std::string elem_string(const FieldElem& e) {
  if (e.fld->deg == 1) return e.str();
  std::string base = e.fld->char_zero() ? "Q" : "F_" + std::to_string(e.fld->p);
  return e.str() + " mod " + modulus_string(e.fld) + " over " + base;
}

// SPARSE text form: "+"-joined terms, each "coeff * x1^e1 * ... * xk^ek",
// leading term first
inline std::string sparse_string(const Polynomial& p) {
  if (p.is_zero()) return "0";
  const RingPtr& r = p.ring();
  std::ostringstream os;
  bool first = true;
  for (const Term& t : p.terms()) {
    if (!first) os << " + ";
    first = false;
    std::string c = t.c.str();
    if (c.find('+') != std::string::npos || c.find('-') != std::string::npos) c = "(" + c + ")";
    os << c;
    for (size_t i = 0; i < r->nvars(); ++i) {
      if (t.m.e[i] == 0) continue;
      os << " * " << r->vars[i];
      if (t.m.e[i] > 1) os << "^" << t.m.e[i];
    }
  }
  return os.str();
}

inline Json ideal_json(const Ideal& I) {
  Json j;
  j["field"] = I.ring()->field->describe();
  j["vars"] = I.ring()->vars;
  Json gens = Json::array();
  for (const Polynomial& g : I.gens()) gens.push_back(sparse_string(g));
  j["generators"] = std::move(gens);
  j["order"] = order_name(I.ring()->ord);
  return j;
}

inline Json module_json(const FPModule& M) {
  Json j;
  j["field"] = M.ctx.ring->field->describe();
  j["vars"] = M.ctx.ring->vars;
  j["order"] = order_name(M.ctx.ring->ord);
  j["rank"] = M.rank;
  Json rels = Json::array();
  for (const ModVec& r : M.rels) {
    Json row = Json::array();
    for (const Polynomial& p : r.c) row.push_back(sparse_string(p));
    rels.push_back(std::move(row));
  }
  j["relations"] = std::move(rels);
  return j;
}

inline Json group_json(const GroupSpec& g, TwistKind twist, long q) {
  Json j;
  switch (g.kind) {
    case GroupKind::GL: j["kind"] = "gl"; break;
    case GroupKind::SL: j["kind"] = "sl"; break;
    case GroupKind::Torus: j["kind"] = "torus"; break;
  }
  j["n"] = g.kind == GroupKind::Torus ? g.rank : g.n;
  if (g.kind == GroupKind::Torus) {
    Json rows = Json::array();
    for (const auto& fr : g.frobenius) {
      Json row = Json::array();
      for (const mpz_class& v : fr) row.push_back(v.get_str());
      rows.push_back(std::move(row));
    }
    j["frobenius"] = std::move(rows);
  }
  j["twist"] = Json{{"mode", twist_name(twist)}, {"q", q}};
  return j;
}

inline Json scheme_json(const ParamScheme& S) {
  Json j = ideal_json(S.ideal());
  j["group"] = group_json(S.group, S.twist, S.q);
  j["locus"] = locus_name(S.locus);
  j["q"] = S.q;
  j["virtual_dim"] = S.virtual_dim;
  return j;
}

inline Json matrix_json(const Matrix& m) {
  Json row = Json::array();
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t k = 0; k < m.cols(); ++k) row.push_back(elem_string(m.at(i, k)));
  return row;
}

inline Json point_json(const RepPoint& pt) {
  Json j;
  j["field"] = pt.field->describe();
  j["q"] = pt.q;
  Json mats = Json::array();
  for (const Matrix& m : pt.mats) mats.push_back(matrix_json(m));
  j["matrices"] = std::move(mats);
  return j;
}

inline Json cochain_json(const CochainReport& r) {
  Json j;
  j["h0"] = r.h0;
  j["h1"] = r.h1;
  j["h2"] = r.h2;
  j["euler"] = r.euler;
  j["smooth"] = r.smooth_certificate;
  j["tangent_consistent"] = r.tangent_consistency;
  return j;
}

inline Json singular_fiber_json(const SingularFiber& s) {
  Json j;
  j["dim"] = s.dim;
  j["all_nilpotent"] = s.all_nilpotent;
  Json basis = Json::array();
  for (const Matrix& m : s.basis) basis.push_back(matrix_json(m));
  j["basis"] = std::move(basis);
  return j;
}

inline Json inertial_json(const InertialDatum& d) {
  Json j;
  Json mp = Json::array();
  for (const Polynomial& p : d.minpolys) mp.push_back(sparse_string(p));
  j["eigen_minpolys"] = std::move(mp);
  j["multiplicities"] = d.multiplicities;
  Json eig = Json::array();
  for (const Fraction& f : d.eigen)
    eig.push_back(std::to_string(f.num) + "/" + std::to_string(f.den));
  j["eigen_exponents"] = std::move(eig);
  return j;
}

inline Json center_json(const CenterReport& r) {
  Json j;
  j["scheme"] = scheme_json(r.scheme);
  j["group_algebra"] = ideal_json(r.group_algebra.algebra);
  Json tg = Json::array();
  for (const Polynomial& p : r.to_group) tg.push_back(sparse_string(p));
  Json ts = Json::array();
  for (const Polynomial& p : r.to_scheme) ts.push_back(sparse_string(p));
  j["to_group"] = std::move(tg);
  j["to_scheme"] = std::move(ts);
  j["round_trip"] = r.round_trip;
  return j;
}

inline Json satake_json(const SatakeReport& r) {
  Json j;
  j["geometric"] = r.geometric;
  j["group_side"] = r.group_side;
  j["match"] = r.match;
  if (!r.match) j["first_mismatch"] = r.first_mismatch;
  return j;
}

inline Json h0_satake_json(const H0SatakeReport& r) {
  Json j;
  j["invariant_dims"] = r.invariant_dims;
  j["torus_side_dims"] = r.torus_side_dims;
  j["match"] = r.match;
  if (!r.match) j["first_mismatch"] = r.first_mismatch;
  return j;
}

inline Json equalizer_json(const EqualizerReport& r) {
  Json j;
  j["ideal"] = ideal_json(r.ideal);
  j["zero_dimensional"] = r.zero_dimensional;
  j["point_count"] = r.point_count;
  j["oracle_count"] = r.oracle_count;
  return j;
}

inline Json springer_json(const SpringerFiberReport& r) {
  Json j;
  j["point"] = point_json(r.point);
  j["chart_z"] = ideal_json(r.chart_z);
  j["chart_w"] = ideal_json(r.chart_w);
  j["fiber_dim"] = r.fiber_dim;
  j["fiber_length"] = r.fiber_length;
  j["reduced"] = r.reduced;
  j["glue_consistent"] = r.glue_consistent;
  return j;
}

inline Json pushforward_json(const PushforwardReport& r) {
  Json j;
  j["scheme"] = scheme_json(r.scheme);
  j["level"] = r.level;
  j["stable"] = r.stable;
  j["R0"] = module_json(r.R0);
  j["R1"] = module_json(r.R1);
  j["hilbert_R0"] = r.hilbert_R0;
  j["decomposition_found"] = r.decomposition_found;
  if (r.decomposition_found) {
    j["ann_unipotent"] = ideal_json(r.ann_unipotent);
    j["ann_unramified"] = ideal_json(r.ann_unramified);
  }
  return j;
}

// ---- parsing helpers for the command line ----

// accepted: "Q", "F<p>" / "F_<p>" for prime p, "C<n>" for the n-th cyclotomic field
inline FieldPtr parse_field(const std::string& s) {
  if (s == "Q" || s == "q") return Field::rationals();
  if (s.empty()) throw ParseError("empty field name");
  auto tail = [&](size_t k) -> unsigned long {
    std::string digits = s.substr(k);
    if (digits.empty()) throw ParseError("bad field name: " + s);
    for (char c : digits)
      if (!std::isdigit((unsigned char)c)) throw ParseError("bad field name: " + s);
    return std::stoul(digits);
  };
  if (s[0] == 'F' || s[0] == 'f') return Field::prime(tail(s[1] == '_' ? 2 : 1));
  if (s[0] == 'C' || s[0] == 'c') return cyclotomic_field(tail(s[1] == '_' ? 2 : 1));
  throw ParseError("bad field name: " + s);
}

// rational literal "n" or "n/d"; reduced into any field of definition
inline FieldElem parse_elem(const FieldPtr& f, const std::string& s) {
  if (s.empty()) throw ParseError("empty field element");
  for (char c : s)
    if (!std::isdigit((unsigned char)c) && c != '-' && c != '/')
      throw ParseError("bad field element: " + s);
  try {
    mpq_class v(s);
    v.canonicalize();
    return Field::from_mpq(f, v);
  } catch (const std::exception&) {
    throw ParseError("bad field element: " + s);
  }
}

// comma-separated row-major entries for `copies` square matrices of size n
inline RepPoint parse_point(const FieldPtr& f, long q, size_t n, size_t copies,
                            const std::string& csv) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : csv) {
    if (c == ',') {
      parts.push_back(cur);
      cur.clear();
    } else if (!std::isspace((unsigned char)c)) {
      cur += c;
    }
  }
  parts.push_back(cur);
  if (parts.size() != copies * n * n)
    throw ParseError("expected " + std::to_string(copies * n * n) + " entries, got " +
                     std::to_string(parts.size()));
  RepPoint pt;
  pt.field = f;
  pt.q = q;
  size_t k = 0;
  for (size_t c = 0; c < copies; ++c) {
    Matrix m(f, n, n);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) m.at(i, j) = parse_elem(f, parts[k++]);
    pt.mats.push_back(std::move(m));
  }
  return pt;
}

}  // namespace locparam
