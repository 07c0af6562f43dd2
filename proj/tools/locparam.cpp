// Command line front end. Every subcommand prints deterministic JSON (or a
// small table with --format table) and returns 0 on success, 2 when a
// verification verdict fails, 1 on computation errors, 64 on usage errors.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "locparam/jsonio.hpp"
#include "locparam/selftest.hpp"

using namespace locparam;

namespace {

struct CommonOpts {
  std::string group = "gl2";
  long q = 2;
  std::string field = "Q";
  std::string locus = "tame";
  std::string twist = "auto";
  std::string out;
  std::string format = "json";
  long seed = 0;
};

int thread_cap() {
  const char* env = std::getenv("LOCPARAM_THREADS");
  if (!env) return 1;
  long v = std::strtol(env, nullptr, 10);
  return v >= 1 ? (int)v : 1;
}

GroupSpec parse_group(const std::string& s) {
  if (s == "gl1") return GroupSpec::gl(1);
  if (s == "gl2") return GroupSpec::gl(2);
  if (s == "gl3") return GroupSpec::gl(3);
  if (s == "sl2") return GroupSpec::sl(2);
  if (s == "sl3") return GroupSpec::sl(3);
  if (s == "torus1") return GroupSpec::torus(1);
  if (s == "torus2") return GroupSpec::torus(2);
  throw ParseError("unknown group: " + s);
}

Locus parse_locus(const std::string& s) {
  if (s == "tame") return Locus::Tame;
  if (s == "unipotent") return Locus::Unipotent;
  if (s == "unramified") return Locus::Unramified;
  if (s == "borel") return Locus::Borel;
  throw ParseError("unknown locus: " + s);
}

TwistKind parse_twist(const std::string& s, const GroupSpec& g) {
  if (s == "plain") return TwistKind::Plain;
  if (s == "cyclotomic") return TwistKind::Cyclotomic;
  if (s == "auto") return g.kind == GroupKind::GL ? TwistKind::Cyclotomic : TwistKind::Plain;
  throw ParseError("unknown twist: " + s);
}

ParamScheme build_scheme(const CommonOpts& o) {
  GroupSpec g = parse_group(o.group);
  FieldPtr f = parse_field(o.field);
  TwistKind tw = o.twist == "auto" ? TwistKind::Plain : parse_twist(o.twist, g);
  ParamScheme tame = tame_framed_ideal(g, o.q, f, tw);
  switch (parse_locus(o.locus)) {
    case Locus::Tame: return tame;
    case Locus::Unipotent: return unipotent_ideal(tame);
    case Locus::Unramified: return unramified_ideal(tame);
    case Locus::Borel: return borel_ideal(g, o.q, f, tw);
    default: throw ParseError("unsupported locus");
  }
}

void emit(const CommonOpts& o, const Json& j, const std::string& table) {
  std::string body = o.format == "table" ? table : j.dump(2) + "\n";
  if (o.out.empty()) {
    std::cout << body;
  } else {
    std::ofstream f(o.out);
    if (!f) throw Error("cannot write " + o.out);
    f << (o.format == "table" ? table : j.dump(2) + "\n");
  }
}

std::string kv_table(const std::vector<std::pair<std::string, std::string>>& rows) {
  size_t w = 0;
  for (const auto& r : rows) w = std::max(w, r.first.size());
  std::string out;
  for (const auto& r : rows) {
    out += r.first;
    out += std::string(w - r.first.size() + 2, ' ');
    out += r.second;
    out += "\n";
  }
  return out;
}

std::string join_longs(const std::vector<long>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
  return s;
}

void add_common(CLI::App* cmd, CommonOpts& o, bool with_scheme = true) {
  if (with_scheme) {
    cmd->add_option("--group", o.group, "gl1|gl2|gl3|sl2|sl3|torus1|torus2");
    cmd->add_option("--q", o.q, "residue cardinality q");
    cmd->add_option("--field", o.field, "Q, F<p>, or C<n> (cyclotomic)");
    cmd->add_option("--locus", o.locus, "tame|unipotent|unramified|borel");
    cmd->add_option("--twist", o.twist, "plain|cyclotomic|auto");
  }
  cmd->add_option("--out", o.out, "write output to file");
  cmd->add_option("--format", o.format, "json|table")
      ->check(CLI::IsMember({"json", "table"}));
  cmd->add_option("--seed", o.seed, "seed for sampled-point selection");
}

std::vector<RepPoint> sampled_points(const ParamScheme& S, const FieldPtr& f, size_t count,
                                     long seed) {
  std::vector<RepPoint> pts = find_points(S, f, count);
  if (pts.empty() || seed == 0) return pts;
  size_t shift = (size_t)(((seed % (long)pts.size()) + (long)pts.size()) % (long)pts.size());
  std::rotate(pts.begin(), pts.begin() + (long)shift, pts.end());
  return pts;
}

}  // namespace

int main(int argc, char** argv) {
  (void)thread_cap();
  CLI::App app{"moduli of tame local parameters as explicit polynomial ideals"};
  app.require_subcommand(1);

  CommonOpts ideal_o, dim_o, point_o, coh_o, sing_o, comp_o, pseudo_o, satake_o, dsat_o, spr_o,
      cohspr_o, self_o;

  auto* cmd_ideal = app.add_subcommand("ideal", "defining ideal of a parameter scheme");
  add_common(cmd_ideal, ideal_o);

  auto* cmd_dim = app.add_subcommand("dim", "Krull dimension of a parameter scheme");
  add_common(cmd_dim, dim_o);

  auto* cmd_point = app.add_subcommand("point", "deterministic points on a scheme");
  long point_count = 5;
  add_common(cmd_point, point_o);
  cmd_point->add_option("--count", point_count, "how many points");

  auto* cmd_coh = app.add_subcommand("cohomology", "cochain ranks at parameter points");
  std::string coh_tau, coh_sigma;
  long coh_count = 5;
  add_common(cmd_coh, coh_o);
  cmd_coh->add_option("--tau", coh_tau, "row-major entries of tau");
  cmd_coh->add_option("--sigma", coh_sigma, "row-major entries of sigma");
  cmd_coh->add_option("--count", coh_count, "sample size when no point is given");

  auto* cmd_sing = app.add_subcommand("singsupp", "singular support fiber at points");
  std::string sing_tau, sing_sigma;
  long sing_count = 5;
  add_common(cmd_sing, sing_o);
  cmd_sing->add_option("--tau", sing_tau, "row-major entries of tau");
  cmd_sing->add_option("--sigma", sing_sigma, "row-major entries of sigma");
  cmd_sing->add_option("--count", sing_count, "sample size when no point is given");

  auto* cmd_comp = app.add_subcommand("components", "inertial component enumeration");
  long comp_samples = 0;
  add_common(cmd_comp, comp_o);
  cmd_comp->add_option("--samples", comp_samples, "also check sampled inertial types");

  auto* cmd_pseudo = app.add_subcommand("pseudorep", "cyclic equalizer finiteness check");
  long pseudo_n = 4, pseudo_m = 1;
  add_common(cmd_pseudo, pseudo_o, false);
  cmd_pseudo->add_option("--field", pseudo_o.field, "Q, F<p>, or C<n>");
  cmd_pseudo->add_option("--n", pseudo_n, "power of the cyclic equalizer");
  cmd_pseudo->add_option("--m", pseudo_m, "matrix size (1 or 2)");

  auto* cmd_satake = app.add_subcommand("satake", "tame center / H0 Satake comparison");
  std::string satake_mode = "center";
  long satake_rank = 1, satake_deg = 4;
  add_common(cmd_satake, satake_o);
  cmd_satake->add_option("--mode", satake_mode, "center|h0")
      ->check(CLI::IsMember({"center", "h0"}));
  cmd_satake->add_option("--rank", satake_rank, "torus rank (center mode)");
  cmd_satake->add_option("--max-degree", satake_deg, "degree bound (h0 mode)");

  auto* cmd_dsat = app.add_subcommand("derived-satake", "derived Satake Ext comparison for tori");
  long dsat_rank = 1, dsat_ell = 2, dsat_deg = 3;
  add_common(cmd_dsat, dsat_o, false);
  cmd_dsat->add_option("--rank", dsat_rank, "torus rank");
  cmd_dsat->add_option("--q", dsat_o.q, "residue cardinality q");
  cmd_dsat->add_option("--ell", dsat_ell, "coefficient prime");
  cmd_dsat->add_option("--max-degree", dsat_deg, "Ext degree bound");

  auto* cmd_spr = app.add_subcommand("springer", "Springer fiber charts at a parameter point");
  std::string spr_tau = "1,0,0,1", spr_sigma = "1,0,0,1";
  add_common(cmd_spr, spr_o);
  cmd_spr->add_option("--tau", spr_tau, "row-major entries of tau");
  cmd_spr->add_option("--sigma", spr_sigma, "row-major entries of sigma");

  auto* cmd_cohspr = app.add_subcommand("cohspr", "pushforward of the Springer line");
  bool cohspr_nodecomp = false;
  long cohspr_deg = 6;
  add_common(cmd_cohspr, cohspr_o);
  cmd_cohspr->add_flag("--no-decompose", cohspr_nodecomp, "skip the decomposition search");
  cmd_cohspr->add_option("--hilbert-degree", cohspr_deg, "Hilbert comparison degree");

  auto* cmd_self = app.add_subcommand("selftest", "run the acceptance suite");
  add_common(cmd_self, self_o, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n" << app.help() << std::flush;
    return 64;
  }

  try {
    if (cmd_ideal->parsed()) {
      ParamScheme S = build_scheme(ideal_o);
      Json j = scheme_json(S);
      emit(ideal_o, j,
           kv_table({{"group", S.group.name()},
                     {"locus", locus_name(S.locus)},
                     {"q", std::to_string(S.q)},
                     {"field", S.ring->field->describe()},
                     {"vars", std::to_string(S.ring->nvars())},
                     {"generators", std::to_string(S.ideal().gens().size())},
                     {"virtual_dim", std::to_string(S.virtual_dim)}}));
      return 0;
    }

    if (cmd_dim->parsed()) {
      ParamScheme S = build_scheme(dim_o);
      long d = S.ideal().dimension();
      Json j{{"group", S.group.name()}, {"locus", locus_name(S.locus)}, {"q", S.q},
             {"dimension", d}};
      emit(dim_o, j, kv_table({{"dimension", std::to_string(d)}}));
      return 0;
    }

    if (cmd_point->parsed()) {
      ParamScheme S = build_scheme(point_o);
      FieldPtr f = parse_field(point_o.field);
      std::vector<RepPoint> pts = sampled_points(S, f, (size_t)point_count, point_o.seed);
      Json arr = Json::array();
      std::string table;
      for (const RepPoint& pt : pts) {
        arr.push_back(point_json(pt));
        table += point_json(pt).dump() + "\n";
      }
      emit(point_o, Json{{"count", pts.size()}, {"points", arr}}, table);
      return pts.empty() ? 2 : 0;
    }

    if (cmd_coh->parsed()) {
      GroupSpec g = parse_group(coh_o.group);
      FieldPtr f = parse_field(coh_o.field);
      TwistKind tw = parse_twist(coh_o.twist == "auto" ? "plain" : coh_o.twist, g);
      std::vector<RepPoint> pts;
      if (!coh_tau.empty() || !coh_sigma.empty()) {
        pts.push_back(parse_point(f, coh_o.q, g.matrix_size(), 2, coh_tau + "," + coh_sigma));
      } else {
        ParamScheme S = tame_framed_ideal(g, coh_o.q, f, tw);
        pts = sampled_points(S, f, (size_t)coh_count, coh_o.seed);
      }
      Json arr = Json::array();
      std::string table;
      bool all_ok = true;
      for (const RepPoint& pt : pts) {
        CochainReport r = cohomology_report(pt, g, tw);
        all_ok = all_ok && r.euler == 0 && r.tangent_consistency;
        Json j = cochain_json(r);
        j["point"] = point_json(pt);
        arr.push_back(std::move(j));
        table += "h0=" + std::to_string(r.h0) + " h1=" + std::to_string(r.h1) +
                 " h2=" + std::to_string(r.h2) + (r.smooth_certificate ? " smooth" : "") + "\n";
      }
      emit(coh_o, Json{{"reports", arr}, {"all_consistent", all_ok}}, table);
      return all_ok ? 0 : 2;
    }

    if (cmd_sing->parsed()) {
      GroupSpec g = parse_group(sing_o.group);
      FieldPtr f = parse_field(sing_o.field);
      TwistKind tw = parse_twist(sing_o.twist == "auto" ? "plain" : sing_o.twist, g);
      std::vector<RepPoint> pts;
      if (!sing_tau.empty() || !sing_sigma.empty()) {
        pts.push_back(parse_point(f, sing_o.q, g.matrix_size(), 2, sing_tau + "," + sing_sigma));
      } else {
        ParamScheme S = tame_framed_ideal(g, sing_o.q, f, tw);
        pts = sampled_points(S, f, (size_t)sing_count, sing_o.seed);
      }
      Json arr = Json::array();
      std::string table;
      for (const RepPoint& pt : pts) {
        SingularFiber sf = singular_fiber(pt, g, tw);
        Json j = singular_fiber_json(sf);
        j["point"] = point_json(pt);
        arr.push_back(std::move(j));
        table += "dim=" + std::to_string(sf.dim) +
                 (sf.all_nilpotent ? " nilpotent" : " NOT nilpotent") + "\n";
      }
      emit(sing_o, Json{{"fibers", arr}}, table);
      return 0;
    }

    if (cmd_comp->parsed()) {
      GroupSpec g = parse_group(comp_o.group);
      FieldPtr f = parse_field(comp_o.field);
      std::vector<InertialDatum> data = adjoint_quotient_fixed_points(g, comp_o.q, f);
      Json arr = Json::array();
      std::string table;
      for (const InertialDatum& d : data) {
        arr.push_back(inertial_json(d));
        table += inertial_json(d).dump() + "\n";
      }
      Json j{{"components", arr}, {"count", data.size()}};
      bool ok = true;
      if (comp_samples > 0) {
        ParamScheme S = tame_framed_ideal(g, comp_o.q, f, TwistKind::Plain);
        long checked = 0;
        for (const RepPoint& pt : sampled_points(S, f, (size_t)comp_samples, comp_o.seed)) {
          ++checked;
          if (!datum_in_set(inertial_type(pt, g, TwistKind::Plain), data)) ok = false;
        }
        j["sampled"] = checked;
        j["all_contained"] = ok;
        table += "sampled " + std::to_string(checked) + (ok ? " contained" : " OUTSIDE") + "\n";
      }
      emit(comp_o, j, table);
      return ok ? 0 : 2;
    }

    if (cmd_pseudo->parsed()) {
      FieldPtr f = parse_field(pseudo_o.field);
      EqualizerReport r = cyclic_equalizer_check(pseudo_n, pseudo_m, f);
      bool ok = r.zero_dimensional && r.point_count == r.oracle_count;
      Json j = equalizer_json(r);
      j["verified"] = ok;
      emit(pseudo_o, j,
           kv_table({{"zero_dimensional", r.zero_dimensional ? "yes" : "no"},
                     {"point_count", std::to_string(r.point_count)},
                     {"oracle_count", std::to_string(r.oracle_count)}}));
      return ok ? 0 : 2;
    }

    if (cmd_satake->parsed()) {
      FieldPtr f = parse_field(satake_o.field);
      if (satake_mode == "center") {
        CenterReport r = torus_tame_center(GroupSpec::torus((size_t)satake_rank), satake_o.q, f);
        emit(satake_o, center_json(r),
             kv_table({{"round_trip", r.round_trip ? "yes" : "no"}}));
        return r.round_trip ? 0 : 2;
      }
      GroupSpec g = parse_group(satake_o.group);
      H0SatakeReport r = unramified_satake_h0(g, f, (size_t)satake_deg);
      emit(satake_o, h0_satake_json(r),
           kv_table({{"invariant_dims", join_longs(r.invariant_dims)},
                     {"torus_side_dims", join_longs(r.torus_side_dims)},
                     {"match", r.match ? "yes" : "no"}}));
      return r.match ? 0 : 2;
    }

    if (cmd_dsat->parsed()) {
      SatakeReport r = derived_satake_torus(GroupSpec::torus((size_t)dsat_rank), dsat_o.q,
                                            dsat_ell, (size_t)dsat_deg);
      emit(dsat_o, satake_json(r),
           kv_table({{"geometric", join_longs(r.geometric)},
                     {"group_side", join_longs(r.group_side)},
                     {"match", r.match ? "yes" : "no"}}));
      return r.match ? 0 : 2;
    }

    if (cmd_spr->parsed()) {
      GroupSpec g = parse_group(spr_o.group);
      FieldPtr f = parse_field(spr_o.field);
      TwistKind tw = parse_twist(spr_o.twist, g);
      Locus locus = spr_o.locus == "tame" ? Locus::Tame : parse_locus(spr_o.locus);
      RepPoint pt = parse_point(f, spr_o.q, 2, 2, spr_tau + "," + spr_sigma);
      SpringerFiberReport r = springer_fiber(pt, g, locus, tw);
      emit(spr_o, springer_json(r),
           kv_table({{"fiber_dim", std::to_string(r.fiber_dim)},
                     {"fiber_length", std::to_string(r.fiber_length)},
                     {"reduced", r.reduced ? "yes" : "no"},
                     {"glue_consistent", r.glue_consistent ? "yes" : "no"}}));
      return r.glue_consistent ? 0 : 2;
    }

    if (cmd_cohspr->parsed()) {
      GroupSpec g = parse_group(cohspr_o.group);
      FieldPtr f = parse_field(cohspr_o.field);
      Locus locus = cohspr_o.locus == "tame" ? Locus::Tame : parse_locus(cohspr_o.locus);
      if (cohspr_o.locus != "tame" && cohspr_o.locus != "unipotent")
        throw InvalidParameter("cohspr locus must be unipotent or tame");
      if (locus == Locus::Tame && cohspr_o.locus == "tame" && cmd_cohspr->count("--locus") == 0)
        locus = Locus::Unipotent;
      PushforwardReport r = cohspr_pushforward(g, cohspr_o.q, f, locus, !cohspr_nodecomp,
                                               (uint32_t)cohspr_deg);
      emit(cohspr_o, pushforward_json(r),
           kv_table({{"level", std::to_string(r.level)},
                     {"stable", r.stable ? "yes" : "no"},
                     {"R0 rank", std::to_string(r.R0.rank)},
                     {"hilbert_R0", join_longs(r.hilbert_R0)},
                     {"decomposition", r.decomposition_found ? "found" : "not found"}}));
      if (cohspr_nodecomp || locus != Locus::Unipotent) return 0;
      return r.decomposition_found ? 0 : 2;
    }

    if (cmd_self->parsed()) {
      std::vector<CheckResult> rs = run_acceptance(&std::cout);
      bool all = true;
      Json arr = Json::array();
      for (const CheckResult& r : rs) {
        all = all && r.pass;
        arr.push_back(Json{{"id", r.id},
                           {"name", r.name},
                           {"pass", r.pass},
                           {"detail", r.detail},
                           {"ms", r.ms}});
      }
      if (!self_o.out.empty()) {
        std::ofstream f(self_o.out);
        f << Json{{"checks", arr}, {"all_pass", all}}.dump(2) << "\n";
      }
      return all ? 0 : 2;
    }
  } catch (const ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 64;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 64;
}
