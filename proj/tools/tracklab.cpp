// tracklab: command-line front end. Machine output is key=value lines.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "tracklab/cone.hpp"
#include "tracklab/curves.hpp"
#include "tracklab/exceptional.hpp"
#include "tracklab/one_vertex.hpp"
#include "tracklab/procedure.hpp"
#include "tracklab/track_io.hpp"

using namespace tracklab;

namespace {

enum Exit { Ok = 0, Usage = 1, Syntax = 2, Semantic = 3, Validation = 4, CertificateFail = 5, Precondition = 6 };

// Collects key=value pairs; --pretty renders them as an aligned table.
struct Out {
  bool pretty = false;
  std::vector<std::pair<std::string, std::string>> rows;

  void add(const std::string& k, const std::string& v) { rows.emplace_back(k, v); }
  void add(const std::string& k, const Rational& v) { add(k, to_string(v)); }
  void add(const std::string& k, long long v) { add(k, std::to_string(v)); }
  void add(const std::string& k, int v) { add(k, std::to_string(v)); }
  void add(const std::string& k, bool v) { add(k, std::string(v ? "true" : "false")); }
  void add(const std::string& k, const char* v) { add(k, std::string(v)); }

  void flush() {
    std::size_t w = 0;
    for (const auto& r : rows) w = std::max(w, r.first.size());
    for (const auto& [k, v] : rows) {
      if (pretty) std::cout << k << std::string(w - k.size() + 2, ' ') << v << "\n";
      else std::cout << k << "=" << v << "\n";
    }
    rows.clear();
  }
};

Rational rat(const std::string& s) {
  try {
    return parse_rational(s);
  } catch (const std::invalid_argument& e) {
    throw CLI::ValidationError(e.what());
  }
}

std::vector<Rational> rats(const std::string& s) {
  std::vector<Rational> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(rat(item));
  return out;
}

std::string join(const std::vector<std::string>& v, const std::string& sep = ",") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
  return s;
}

std::string edge_names(const TrainTrack& t) {
  std::vector<std::string> n;
  for (const auto& e : t.edges) n.push_back(e.name);
  return join(n);
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream o(path);
  if (!o) throw std::runtime_error(path + ": cannot write");
  o << body;
}

int cmd_validate(Out& out, const std::string& file, bool strict) {
  const auto f = load_track(file);
  const auto rep = validate(f.track, strict);
  out.add("switches", f.track.num_switches());
  out.add("edges", f.track.num_edges());
  if (f.track.surface) out.add("surface", to_string(*f.track.surface));
  out.add("valid", rep.ok);
  for (const auto& i : rep.issues) out.add("issue", i);
  if (strict) {
    out.add("regions", static_cast<int>(rep.regions.size()));
    out.add("reduced_switches", rep.reduced_switches);
    out.add("reduced_edges", rep.reduced_edges);
  }
  if (f.weights) {
    out.add("switch_equations", satisfies_switch_equations(f.track, *f.weights));
    if (f.lambda) {
      const auto l = f.lambda->lengths();
      out.add("lw", l.total);
      out.add("mw", l.minimum);
      out.add("loopy", static_cast<int>(f.lambda->loopy().size()));
    }
  }
  out.flush();
  return rep.ok ? Ok : Validation;
}

int cmd_rays(Out& out, const std::string& file) {
  const auto f = load_track(file);
  const auto rays = cone_rays(f.track);
  out.add("edges", edge_names(f.track));
  out.add("rays", static_cast<int>(rays.size()));
  for (const auto& r : rays) {
    std::vector<std::string> v;
    for (const auto& x : r) v.push_back(to_string(Rational(x)));
    out.add("ray", join(v));
  }
  out.add("recurrent", is_recurrent(f.track));
  out.flush();
  return Ok;
}

int cmd_loops(Out& out, const std::string& file, int max_mult) {
  const auto f = load_track(file);
  const auto loops = enumerate_loops(f.track, max_mult);
  out.add("loops", static_cast<int>(loops.size()));
  for (const auto& l : loops) {
    out.add("loop", format_loop(f.track, l.steps));
    out.add("sidedness", to_string(l.sidedness));
  }
  out.flush();
  return Ok;
}

int cmd_two_sided(Out& out, const std::string& file) {
  const auto f = load_track(file);
  const SwitchboardTrack board(f.track);
  const auto rep = check_conditions(board);
  for (int i = 0; i < 7; ++i) {
    out.add("condition" + std::to_string(i + 1), rep.pass[i]);
    if (!rep.detail[i].empty()) out.add("condition" + std::to_string(i + 1) + ".detail", rep.detail[i]);
  }
  out.add("conditions_pass", rep.all_pass());
  const auto d = decide_two_sided(board);
  out.add("carries_two_sided", d.carries_two_sided());
  if (d.witness) out.add("witness", format_loop(f.track, d.witness->steps));
  out.add("oracle_agrees", rep.all_pass() != d.carries_two_sided());
  out.flush();
  return Ok;
}

int cmd_uniformize(Out& out, const std::string& file, const std::string& C, const std::string& L, bool generic,
                   const std::string& out_path, const std::string& trace_path) {
  const auto f = load_track(file);
  if (!f.lambda) throw TrackError(TrackError::Kind::Precondition, "uniformize needs filling weights");
  if (!f.track.surface) throw TrackError(TrackError::Kind::Precondition, "uniformize needs a surface line");
  const auto in = f.lambda->lengths();
  const Rational c = rat(C);
  const Rational l = L.empty() ? in.total : rat(L);
  UniformResult r = uniformize(*f.lambda, c, l, generic);
  const auto& cert = r.certificate;
  int rounds = 0;
  for (const auto& s : cert.steps) rounds += s.rounds;
  out.add("mw0", in.minimum);
  out.add("mw1", cert.mw);
  out.add("lw0", in.total);
  out.add("lw1", cert.lw);
  out.add("rounds", rounds);
  out.add("procedures", cert.procedures);
  out.add("ratio", cert.ratio());
  out.add("C", generic ? cert.C_generic : cert.C);
  out.add("L", cert.L);
  if (generic) {
    out.add("E", cert.E);
    out.add("generic_steps", cert.generic_steps);
    out.add("valences_ok", cert.valences_ok);
  }
  out.add("switches", r.refinement.current.track().num_switches());
  out.add("edges", r.refinement.current.track().num_edges());
  out.add("certificate", cert.holds());
  out.flush();
  if (!out_path.empty()) write_file(out_path, format_track(r.refinement.current));
  if (!trace_path.empty()) write_file(trace_path, format_trace(r.trace));
  return cert.holds() ? Ok : CertificateFail;
}

int cmd_twist_bounds(Out& out, const std::string& n, const std::string& iag, const std::string& igb,
                     const std::string& iab, long long scale) {
  const auto ns = rats(n), as = rats(iag), bs = rats(igb);
  if (ns.size() != as.size() || ns.size() != bs.size()) {
    throw CLI::ValidationError("--n, --iag and --igb need the same number of entries");
  }
  TwistSpec s;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (ns[i].get_den() != 1 || !ns[i].get_num().fits_slong_p()) throw CLI::ValidationError("exponents must be integers");
    s.components.push_back({"gamma" + std::to_string(i + 1), ns[i].get_num().get_si(), as[i], bs[i]});
  }
  s.i_alpha_beta = rat(iab);
  const auto b = ivanov_bounds(s);
  out.add("lo", b.lo);
  out.add("hi", b.hi);
  out.add("width_bound", ivanov_width_bound(s));
  Rational lim = 0;
  for (const auto& c : s.components) lim += abs(Rational(static_cast<long>(c.exponent))) * c.i_alpha_gamma * c.i_gamma_beta;
  out.add("limit", lim);
  if (scale > 1) {
    const auto sb = ivanov_bounds(s.scaled(scale));
    const Rational k(static_cast<long>(scale));
    out.add("k", scale);
    out.add("scaled_lo", sb.lo / k);
    out.add("scaled_hi", sb.hi / k);
    out.add("limit_contained", Interval{sb.lo / k, sb.hi / k}.contains(lim));
  }
  out.flush();
  return Ok;
}

int cmd_atom_check(Out& out, const std::string& ieta, const std::string& ibnd) {
  const auto bnd = rats(ibnd);
  std::vector<std::string> fam{"eta"};
  std::vector<Rational> vals{rat(ieta)};
  HoledPlane P{{}, "eta", "gamma"};
  for (std::size_t i = 0; i < bnd.size(); ++i) {
    fam.push_back("boundary" + std::to_string(i + 1));
    vals.push_back(bnd[i]);
    P.boundary.push_back(fam.back());
  }
  const auto r = scharlemann_atom(IntersectionVector(fam, vals), P);
  out.add("atom", r.atom);
  if (r.atom) out.add("weight", r.weight);
  out.flush();
  return Ok;
}

int cmd_exceptional(Out& out, const std::string& model, long long orbit, const std::string& iga,
                    const std::string& iab, const std::string& igb) {
  if (model == "n12") {
    const auto r = n12_orbits();
    out.add("pml_size", static_cast<int>(r.pml.size()));
    out.add("pml", join(r.pml));
    out.add("two_sided_curves", r.two_sided_curves);
    out.add("ml_plus_empty", r.ml_plus_empty);
    out.add("iota_gamma_eta", r.iota_gamma_eta);
    out.add("group_order", r.group_order);
    out.add("orbits", r.orbits);
  } else if (model == "n21") {
    const auto r = n21_twist_orbit(orbit, rat(iga), rat(iab), rat(igb));
    out.add("two_sided_curves", r.two_sided_curves);
    out.add("max_components", r.max_components);
    out.add("limit", r.limit);
    for (const auto& s : r.steps) {
      const std::string k = "n" + std::to_string(s.n);
      out.add(k + ".lo", s.bounds.lo);
      out.add(k + ".hi", s.bounds.hi);
      out.add(k + ".normalized_lo", s.normalized.lo);
      out.add(k + ".normalized_hi", s.normalized.hi);
    }
  } else if (model == "n30") {
    const auto r = n30_structure();
    out.add("pml_dimension", r.pml_dimension);
    out.add("pml_plus", r.pml_plus);
    out.add("complement_disks", r.complement_disks);
    out.add("gamma_disjoint_from_two_sided", r.gamma_disjoint_from_two_sided);
    out.add("ml_plus_supported_in_T", r.ml_plus_supported_in_T);
    out.add("mapping_class_group", r.mapping_class_group);
  } else {
    throw CLI::ValidationError("model must be n12, n21 or n30");
  }
  out.flush();
  return Ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"train tracks, lambda-lengths and curve bounds"};
  app.require_subcommand(1);
  app.fallthrough();
  Out out;
  app.add_flag("--pretty", out.pretty, "human-readable output");

  std::string file, C, L, out_path, trace_path, model;
  bool strict = false, generic = false;
  int max_mult = 2;
  std::string n, iag, igb, iab = "0", ieta, ibnd;
  long long scale = 0, orbit = 5;
  std::string n21_iga = "1", n21_iab = "1", n21_igb = "0";

  auto* v = app.add_subcommand("validate", "check a track file");
  v->add_option("file", file)->required();
  v->add_flag("--strict", strict, "also check region shapes and the |V|, |E| bounds");
  auto* r = app.add_subcommand("rays", "extreme rays of the weight cone");
  r->add_option("file", file)->required();
  auto* lo = app.add_subcommand("loops", "carried simple closed curves");
  lo->add_option("file", file)->required();
  lo->add_option("--max-mult", max_mult, "multiplicity bound per edge")->check(CLI::Range(1, 8));
  auto* ts = app.add_subcommand("two-sided", "one-switch two-sided curve test");
  ts->add_option("file", file)->required();
  auto* u = app.add_subcommand("uniformize", "refine to a (C, lambda)-uniform track");
  u->add_option("file", file)->required();
  u->add_option("--C", C)->required();
  u->add_option("--L", L, "lower bound on the final lambda-length (default: input length)");
  u->add_flag("--generic", generic);
  u->add_option("--out", out_path, "write the final track");
  u->add_option("--trace", trace_path, "write the move trace");
  auto* tb = app.add_subcommand("twist-bounds", "bounds on i(T(alpha), beta)");
  tb->add_option("--n", n, "exponents, comma separated")->required();
  tb->add_option("--iag", iag, "i(alpha, gamma_i)")->required();
  tb->add_option("--igb", igb, "i(gamma_i, beta)")->required();
  tb->add_option("--iab", iab, "i(alpha, beta)");
  tb->add_option("--scale", scale, "also evaluate the bounds with exponents times k, divided by k");
  auto* ac = app.add_subcommand("atom-check", "one-sided atom test for a two-holed projective plane");
  ac->add_option("--ieta", ieta, "i(lambda, eta)")->required();
  ac->add_option("--ibnd", ibnd, "i(lambda, boundary), comma separated")->required();
  auto* ex = app.add_subcommand("exceptional", "models of the exceptional non-orientable surfaces");
  ex->add_option("model", model)->required()->check(CLI::IsMember({"n12", "n21", "n30"}));
  ex->add_option("--orbit", orbit, "n_max for n21")->check(CLI::PositiveNumber);
  ex->add_option("--iga", n21_iga, "i(gamma_0, alpha)");
  ex->add_option("--iab", n21_iab, "i(alpha, beta)");
  ex->add_option("--igb", n21_igb, "i(gamma_0, beta)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? Ok : Usage;
  }

  try {
    if (*v) return cmd_validate(out, file, strict);
    if (*r) return cmd_rays(out, file);
    if (*lo) return cmd_loops(out, file, max_mult);
    if (*ts) return cmd_two_sided(out, file);
    if (*u) return cmd_uniformize(out, file, C, L, generic, out_path, trace_path);
    if (*tb) return cmd_twist_bounds(out, n, iag, igb, iab, scale);
    if (*ac) return cmd_atom_check(out, ieta, ibnd);
    if (*ex) return cmd_exceptional(out, model, orbit, n21_iga, n21_iab, n21_igb);
  } catch (const ParseError& e) {
    std::cerr << e.what() << "\n";
    return e.kind() == ParseError::Kind::Syntax ? Syntax : Semantic;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return Usage;
  } catch (const TrackError& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.kind()) {
      case TrackError::Kind::Certificate: return CertificateFail;
      case TrackError::Kind::Malformed:
      case TrackError::Kind::Invalid: return Validation;
      default: return Precondition;
    }
  } catch (const CurveError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return Precondition;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return Syntax;
  }
  return Usage;
}
