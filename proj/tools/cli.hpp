#pragma once

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "efc/automorphism.hpp"
#include "efc/pi1lab.hpp"
#include "efc/schanuel.hpp"
#include "efc/zform.hpp"

namespace efc::cli {

using ojson = nlohmann::ordered_json;

enum class Verdict { Pass, Fail, Value };

struct RunReport {
  std::string command;
  Verdict verdict = Verdict::Value;
  std::vector<std::pair<std::string, ojson>> details;
  std::optional<ojson> witness;

  void add(std::string key, ojson value) { details.emplace_back(std::move(key), std::move(value)); }

  int exit_code() const { return verdict == Verdict::Fail ? 1 : 0; }

  static const char* verdict_name(Verdict v) {
    switch (v) {
      case Verdict::Pass: return "pass";
      case Verdict::Fail: return "fail";
      case Verdict::Value: return "value";
    }
    return "?";
  }

  ojson to_json() const {
    ojson j;
    j["command"] = command;
    j["verdict"] = verdict_name(verdict);
    ojson d = ojson::object();
    for (const auto& [k, v] : details) d[k] = v;
    j["details"] = d;
    j["witness"] = witness ? *witness : ojson(nullptr);
    return j;
  }

  // Strings print bare, string arrays as {a,b}, everything else as compact JSON.
  static std::string render(const ojson& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_array() && !v.empty() && std::all_of(v.begin(), v.end(), [](const ojson& e) { return e.is_string(); })) {
      std::string s = "{";
      for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get<std::string>();
      return s + "}";
    }
    if (v.is_array() && v.empty()) return "{}";
    return v.dump();
  }

  static std::string render_set(const ojson& v) {
    if (!v.is_array()) return render(v);
    std::string s = "{";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + render(v[i]);
    return s + "}";
  }

  std::string to_text() const {
    std::ostringstream out;
    out << "verdict = " << verdict_name(verdict) << "\n";
    if (witness) out << "witness = " << render_set(*witness) << "\n";
    for (const auto& [k, v] : details) out << k << " = " << render(v) << "\n";
    return out.str();
  }
};

namespace detail {

inline std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, sep);) {
    auto b = part.find_first_not_of(' '), e = part.find_last_not_of(' ');
    out.push_back(b == std::string::npos ? "" : part.substr(b, e - b + 1));
  }
  return out;
}

inline nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::MalformedPresentation, "cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::MalformedPresentation, path + ": " + e.what());
  }
}

inline EFieldPresentation read_presentation(const std::string& path, ValidateMode mode = ValidateMode::Close) {
  return presentation_from_json(read_json(path), mode);
}

inline void write_json(const std::string& path, const ojson& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::MalformedPresentation, "cannot write " + path);
  out << j.dump(2) << "\n";
}

inline std::int64_t parse_int(const std::string& s) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorKind::MalformedPresentation, "not an integer: '" + s + "'");
  }
}

// "1,0;0,1" -> rows.
inline std::vector<ZVec> parse_rows(const std::string& text) {
  std::vector<ZVec> rows;
  for (const auto& row : split(text, ';')) {
    ZVec v;
    for (const auto& cell : split(row, ',')) v.push_back(parse_int(cell));
    rows.push_back(std::move(v));
  }
  return rows;
}

inline ojson rows_json(const std::vector<ZVec>& rows) {
  ojson j = ojson::array();
  for (const auto& r : rows) j.push_back(r);
  return j;
}

// "a=b" or "a=2*b + c": each source generator to a linear combination of
// target generators. Unlisted source generators map to the same name.
inline PresentationEmbedding parse_embedding(const EFieldPresentation& src, const EFieldPresentation& tgt,
                                             const std::vector<std::string>& entries) {
  auto e = PresentationEmbedding::identity_on_names(src, tgt);
  VarList names = tgt.generators();
  for (const auto& entry : entries) {
    auto eq = entry.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::MalformedPresentation, "map entry needs '=': " + entry);
    std::string from = split(entry.substr(0, eq), ',').at(0);
    Poly image = parse_poly(entry.substr(eq + 1), names);
    LinearCombination comb;
    for (const auto& [exp, c] : image.terms()) {
      if (total_degree(exp) != 1) throw Error(ErrorKind::MalformedPresentation, "map images must be linear: " + entry);
      for (std::size_t i = 0; i < exp.size(); ++i)
        if (exp[i]) comb[names[i]] = c;
    }
    e.gen_map[from] = comb;
  }
  return e;
}

}  // namespace detail

struct Options {
  bool json = false;
  std::string output;
  unsigned threads = 0;  // 0: environment / default
  int budget = -1;
};

/// Parses argv, runs the command, prints the report. Returns the exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exponential-field workbench", "efc"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_flag("--json", opt.json, "Machine-readable output");
  app.add_option("-o,--output", opt.output, "Write the resulting presentation here");
  app.add_option("--threads", opt.threads, "Worker threads (default EFC_THREADS or 1)");
  app.add_option("--budget", opt.budget, "Largest free-generator count for exhaustive searches");

  std::string file, file2, subset, subset2, steps, fixed, target, base, left, right, order = "degrevlex";
  std::vector<std::string> maps, maps_left, maps_right;
  std::uint64_t seed = 0, bound = 1000000;
  unsigned n = 1, m = 2, g = 1, k = 1, rmax = 2;
  std::int64_t l = 2, level = 12, u = 1, u2 = 1, level2 = 0;
  bool strict = false, trivial = false;
  std::string basis, basis2, partial, rows, cover = "1", winding = "1", start, lift_start, vars, gens, poly, keep;

  auto add_file = [&](CLI::App* s) { s->add_option("-f,--file", file, "Presentation or system file")->required(); };
  auto add_subset = [&](CLI::App* s) { s->add_option("--subset", subset, "Comma-separated generators"); };

  auto* validate_cmd = app.add_subcommand("validate", "Normalize a presentation");
  add_file(validate_cmd);
  validate_cmd->add_flag("--strict", strict, "Reject instead of closing under coherence");
  auto* delta_cmd = app.add_subcommand("delta", "Predimension of a generator subset");
  add_file(delta_cmd);
  add_subset(delta_cmd);
  auto* dmin_cmd = app.add_subcommand("dmin", "Minimum predimension over supersets");
  add_file(dmin_cmd);
  add_subset(dmin_cmd);
  auto* hull_cmd = app.add_subcommand("hull", "Self-sufficient hull of a subset");
  add_file(hull_cmd);
  add_subset(hull_cmd);
  auto* check_cmd = app.add_subcommand("check", "Global checks");
  check_cmd->require_subcommand(1);
  auto* hrushovski_cmd = check_cmd->add_subcommand("hrushovski", "Hrushovski inequality on every subset");
  add_file(hrushovski_cmd);
  auto* strong_cmd = app.add_subcommand("strong", "Strongness of an embedding");
  add_file(strong_cmd);
  strong_cmd->add_option("--target", target, "Target presentation")->required();
  strong_cmd->add_option("--map", maps, "gen=linear combination of target generators");
  auto* amalgam_cmd = app.add_subcommand("amalgamate", "Free amalgam of B and C over A");
  amalgam_cmd->add_option("--base", base, "A")->required();
  amalgam_cmd->add_option("--left", left, "B")->required();
  amalgam_cmd->add_option("--right", right, "C")->required();
  amalgam_cmd->add_option("--map-left", maps_left, "A gen=combination of B generators");
  amalgam_cmd->add_option("--map-right", maps_right, "A gen=combination of C generators");
  auto* forge_cmd = app.add_subcommand("forge", "Chain of strong extensions from the catalog");
  add_file(forge_cmd);
  forge_cmd->add_option("--steps", steps, "Comma-separated steps: free, div:x:2, kdiv:3, exiter:x");
  forge_cmd->add_option("--seed", seed, "Seed for underdetermined targets");
  auto* aut_cmd = app.add_subcommand("autcount", "Automorphisms fixing a subset");
  add_file(aut_cmd);
  aut_cmd->add_option("--fixed", fixed, "Comma-separated fixed generators");
  aut_cmd->add_option("--bound", bound, "Stop counting here");
  auto* kummer_cmd = app.add_subcommand("kummer", "Degree of the Kummer extension");
  add_file(kummer_cmd);
  kummer_cmd->add_option("--n", n, "Number of generators to divide")->required();
  kummer_cmd->add_option("--m", m, "Division order")->required();
  auto* qftp_cmd = app.add_subcommand("qftp", "Equality of quantifier-free types of two tuples");
  add_file(qftp_cmd);
  add_subset(qftp_cmd);
  qftp_cmd->add_option("--file2", file2, "Second presentation (default: the first)");
  qftp_cmd->add_option("--subset2", subset2, "Second tuple")->required();

  auto* sc_cmd = app.add_subcommand("sc", "Schanuel screens");
  sc_cmd->require_subcommand(1);
  auto* sc_screen_cmd = sc_cmd->add_subcommand("screen", "Look for a projection with negative predimension");
  add_file(sc_screen_cmd);
  auto* sc_predim_cmd = sc_cmd->add_subcommand("predim", "Generic predimension of the system");
  add_file(sc_predim_cmd);

  auto* zform_cmd = app.add_subcommand("zform", "Symplectic modules over Z/l^k");
  zform_cmd->require_subcommand(1);
  auto add_lattice = [&](CLI::App* s) {
    s->add_option("--g", g, "Genus")->required();
    s->add_option("--l", l, "Prime")->required();
    s->add_option("--k", k, "Exponent")->required();
  };
  auto* z_check = zform_cmd->add_subcommand("check", "Is the basis general-symplectic");
  add_lattice(z_check);
  z_check->add_option("--basis", basis, "Vectors as rows: 1,0;0,1")->required();
  auto* z_complete = zform_cmd->add_subcommand("complete", "Complete e1,f1,e2,... to a symplectic basis");
  add_lattice(z_complete);
  z_complete->add_option("--partial", partial, "Vectors as rows");
  auto* z_transport = zform_cmd->add_subcommand("transport", "Matrix carrying one basis to another");
  add_lattice(z_transport);
  z_transport->add_option("--from", basis, "First basis")->required();
  z_transport->add_option("--to", basis2, "Second basis")->required();
  auto* z_orbits = zform_cmd->add_subcommand("orbits", "Brute-force orbit count of symplectic bases");
  add_lattice(z_orbits);
  z_orbits->add_flag("--trivial", trivial, "Act by the trivial group");
  auto* z_nondeg = zform_cmd->add_subcommand("nondeg", "Is the Gram determinant a unit");
  add_lattice(z_nondeg);
  z_nondeg->add_option("--rows", rows, "2g vectors")->required();

  auto* pi1_cmd = app.add_subcommand("pi1", "Torus functor models");
  pi1_cmd->require_subcommand(1);
  auto add_model = [&](CLI::App* s) {
    s->add_option("--level", level, "N")->required();
    s->add_option("--u", u, "Unit")->required();
  };
  auto* p_endpoint = pi1_cmd->add_subcommand("endpoint", "End point of a path");
  add_model(p_endpoint);
  p_endpoint->add_option("--start", start, "Comma-separated torsion point");
  p_endpoint->add_option("--winding", winding, "Comma-separated rationals");
  auto* p_lift = pi1_cmd->add_subcommand("lift", "Lift a path through a cover");
  add_model(p_lift);
  p_lift->add_option("--cover", cover, "Exponent n or matrix rows 2,1;0,3");
  p_lift->add_option("--winding", winding, "Comma-separated rationals");
  p_lift->add_option("--start", start, "Path start");
  p_lift->add_option("--lift-start", lift_start, "Lift start");
  auto* p_xi = pi1_cmd->add_subcommand("xi", "Distinguished roots of unity");
  add_model(p_xi);
  auto* p_axioms = pi1_cmd->add_subcommand("axioms", "Check axioms (0)-(3)");
  add_model(p_axioms);
  p_axioms->add_option("--rmax", rmax, "Largest torus rank");
  auto* p_compare = pi1_cmd->add_subcommand("compare", "Unit twist between two models");
  add_model(p_compare);
  p_compare->add_option("--u2", u2, "Unit of the second model")->required();
  p_compare->add_option("--level2", level2, "Level of the second model (default: same)");

  auto* poly_cmd = app.add_subcommand("poly", "Polynomial ideals over Q");
  poly_cmd->require_subcommand(1);
  auto add_ideal = [&](CLI::App* s) {
    s->add_option("--vars", vars, "Comma-separated variables")->required();
    s->add_option("--gens", gens, "Semicolon-separated generators");
    s->add_option("--order", order, "degrevlex or lex");
  };
  auto* poly_gb = poly_cmd->add_subcommand("gb", "Reduced Groebner basis");
  add_ideal(poly_gb);
  auto* poly_dim = poly_cmd->add_subcommand("dim", "Krull dimension");
  add_ideal(poly_dim);
  auto* poly_member = poly_cmd->add_subcommand("member", "Ideal membership");
  add_ideal(poly_member);
  poly_member->add_option("--poly", poly, "Polynomial to test")->required();
  auto* poly_elim = poly_cmd->add_subcommand("eliminate", "Intersection with a subring");
  add_ideal(poly_elim);
  poly_elim->add_option("--keep", keep, "Variables to keep")->required();
  auto* poly_lin = poly_cmd->add_subcommand("linpart", "Homogeneous linear forms in the ideal");
  add_ideal(poly_lin);
  poly_lin->add_option("--among", keep, "Variables")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    const CLI::App* bad = &app;
    for (auto* s : app.get_subcommands())
      for (auto* t = s;; t = t->get_subcommands().front()) {
        bad = t;
        if (t->get_subcommands().empty()) break;
      }
    err << bad->help();
    return 2;
  }

  ExecPolicy policy = ExecPolicy::from_env();
  if (opt.threads) policy.threads = opt.threads;
  if (opt.budget >= 0) policy.max_free_generators = static_cast<unsigned>(opt.budget);

  RunReport rep;
  std::optional<ojson> written;
  auto names = [](const std::string& s) { return detail::split(s, ','); };
  auto lattice = [&] { return SymplecticLattice(g, l, k); };
  auto ideal = [&]() -> std::pair<VarList, std::vector<Poly>> {
    VarList vl = names(vars);
    std::vector<Poly> ps;
    for (const auto& t : detail::split(gens, ';')) ps.push_back(parse_poly(t, vl));
    return {vl, ps};
  };
  auto monomial_order = [&] {
    if (order == "degrevlex") return MonomialOrder::degrevlex();
    if (order == "lex") return MonomialOrder::lex();
    throw Error(ErrorKind::MalformedPresentation, "unknown order " + order);
  };
  auto polys_json = [](const std::vector<Poly>& ps) {
    ojson j = ojson::array();
    for (const auto& p : ps) j.push_back(p.to_string());
    return j;
  };
  auto windings = [&](const std::string& text) {
    std::vector<Rational> w;
    for (const auto& c : names(text)) w.push_back(parse_rational(c));
    return w;
  };
  auto points = [&](const std::string& text, std::size_t r) {
    TorsionPoint p;
    for (const auto& c : names(text)) p.push_back(detail::parse_int(c));
    if (p.empty()) p.assign(r, 0);
    return p;
  };
  auto windings_json = [](const std::vector<Rational>& w) {
    ojson j = ojson::array();
    for (const auto& q : w) j.push_back(to_string(q));
    return j;
  };

  try {
    if (validate_cmd->parsed()) {
      rep.command = "validate";
      auto p = detail::read_presentation(file, strict ? ValidateMode::Strict : ValidateMode::Close);
      rep.add("generators", p.size());
      rep.add("linear_relations", p.linear_relations().size());
      rep.add("ideal_generators", p.ideal().generators.size());
      written = to_json(p);
      if (opt.output.empty()) rep.add("presentation", *written);
    } else if (delta_cmd->parsed()) {
      rep.command = "delta";
      auto p = detail::read_presentation(file);
      GenSet s = p.mask_of(names(subset));
      rep.add("subset", p.names_of(s));
      rep.add("trdeg", transcendence_degree(p, s));
      rep.add("lindim", linear_dimension(p, s));
      rep.add("delta", predimension(p, s));
    } else if (dmin_cmd->parsed()) {
      rep.command = "dmin";
      auto p = detail::read_presentation(file);
      rep.add("subset", p.names_of(p.mask_of(names(subset))));
      rep.add("dmin", d_min(p, names(subset), policy));
    } else if (hull_cmd->parsed()) {
      rep.command = "hull";
      auto p = detail::read_presentation(file);
      auto h = hull(p, names(subset), policy);
      rep.add("hull", h.subset);
      rep.add("value", h.value);
      rep.add("self_sufficient", h.is_self_sufficient);
    } else if (hrushovski_cmd->parsed()) {
      rep.command = "check hrushovski";
      auto p = detail::read_presentation(file);
      auto v = hrushovski_check(p, policy);
      rep.verdict = v.pass ? Verdict::Pass : Verdict::Fail;
      if (!v.pass) {
        rep.witness = *v.witness;
        rep.add("delta", v.value);
      }
      rep.add("subsets", std::uint64_t{1} << p.size());
    } else if (strong_cmd->parsed()) {
      rep.command = "strong";
      auto src = detail::read_presentation(file), tgt = detail::read_presentation(target);
      auto e = detail::parse_embedding(src, tgt, maps);
      verify_embedding(e);
      auto v = is_strong(e, policy);
      rep.verdict = v.pass ? Verdict::Pass : Verdict::Fail;
      if (!v.pass) {
        rep.witness = *v.witness;
        rep.add("dmin_source", d_min(src, *v.witness, policy));
        rep.add("dmin_target", v.value);
      }
    } else if (amalgam_cmd->parsed()) {
      rep.command = "amalgamate";
      auto a = detail::read_presentation(base), b = detail::read_presentation(left),
           c = detail::read_presentation(right);
      auto am = free_amalgam(detail::parse_embedding(a, b, maps_left), detail::parse_embedding(a, c, maps_right), policy);
      const auto& p = am.presentation;
      rep.add("generators", p.generators());
      rep.add("delta", predimension(p, p.full_set()));
      ojson renamed = ojson::object();
      for (const auto& [from, to] : am.right)
        if (from != to) renamed[from] = to;
      rep.add("renamed_right", renamed);
      written = to_json(p);
      if (opt.output.empty()) rep.add("presentation", *written);
    } else if (forge_cmd->parsed()) {
      rep.command = "forge";
      std::vector<ForgeStep> parsed;
      for (const auto& s : names(steps)) parsed.push_back(ForgeStep::parse(s));
      auto trace = forge(detail::read_presentation(file), parsed, seed, policy);
      rep.add("seed", trace.seed);
      for (std::size_t i = 0; i < trace.stages.size(); ++i) {
        const auto& p = trace.stages[i].presentation;
        rep.add("stage " + std::to_string(i), trace.stages[i].step + " " + std::to_string(p.size()) +
                                                  " generators, delta " + std::to_string(predimension(p, p.full_set())));
      }
      const auto& last = trace.stages.back().presentation;
      rep.add("generators", last.generators());
      rep.add("delta", predimension(last, last.full_set()));
      written = to_json(last);
      if (opt.output.empty()) rep.add("presentation", *written);
    } else if (aut_cmd->parsed()) {
      rep.command = "autcount";
      auto c = aut_count(detail::read_presentation(file), names(fixed), bound, policy);
      rep.add("count", c.count);
      rep.add("at_least", c.at_least);
    } else if (kummer_cmd->parsed()) {
      rep.command = "kummer";
      rep.add("degree", kummer_degree(detail::read_presentation(file), n, m, policy));
    } else if (qftp_cmd->parsed()) {
      rep.command = "qftp";
      auto p1 = detail::read_presentation(file);
      auto p2 = file2.empty() ? p1 : detail::read_presentation(file2);
      rep.add("equal", qftp_eq(p1, names(subset), p2, names(subset2), policy));
    } else if (sc_screen_cmd->parsed()) {
      rep.command = "sc screen";
      auto v = sc_screen(ExpSystem::from_json(detail::read_json(file)), policy);
      rep.verdict = v.compatible ? Verdict::Pass : Verdict::Fail;
      rep.add("result", v.compatible ? "Compatible" : "Contradicts");
      if (!v.compatible) {
        rep.witness = v.witness;
        rep.add("predimension", v.value);
      }
    } else if (sc_predim_cmd->parsed()) {
      rep.command = "sc predim";
      rep.add("predimension", generic_predimension(ExpSystem::from_json(detail::read_json(file))));
    } else if (z_check->parsed()) {
      rep.command = "zform check";
      auto lambda = symplectic_multiplier(detail::parse_rows(basis), lattice());
      rep.verdict = lambda ? Verdict::Pass : Verdict::Fail;
      if (lambda) rep.add("lambda", *lambda);
    } else if (z_complete->parsed()) {
      rep.command = "zform complete";
      rep.add("basis", detail::rows_json(complete_symplectic(detail::parse_rows(partial), lattice())));
    } else if (z_transport->parsed()) {
      rep.command = "zform transport";
      auto t = transport(detail::parse_rows(basis), detail::parse_rows(basis2), lattice());
      rep.add("matrix", detail::rows_json(t.matrix));
      rep.add("lambda", t.lambda);
    } else if (z_orbits->parsed()) {
      rep.command = "zform orbits";
      auto c = orbit_count_bruteforce(lattice(), trivial ? OrbitGroup::Trivial : OrbitGroup::Full, policy);
      rep.add("bases", c.bases);
      rep.add("orbits", c.orbits);
    } else if (z_nondeg->parsed()) {
      rep.command = "zform nondeg";
      bool ok = sublattice_nondegenerate(detail::parse_rows(rows), lattice());
      rep.verdict = ok ? Verdict::Pass : Verdict::Fail;
    } else if (p_endpoint->parsed()) {
      rep.command = "pi1 endpoint";
      TorusFunctorModel model(level, u);
      auto w = windings(winding);
      rep.add("endpoint", endpoint(model, {points(start, w.size()), w}));
    } else if (p_lift->parsed()) {
      rep.command = "pi1 lift";
      TorusFunctorModel model(level, u);
      auto w = windings(winding);
      TorusPath path{points(start, w.size()), w};
      CoverMatrix a;
      if (cover.find(';') == std::string::npos && cover.find(',') == std::string::npos)
        a = scalar_cover(detail::parse_int(cover), w.size());
      else
        a = detail::parse_rows(cover);
      auto q = lift_path(model, a, path, points(lift_start, w.size()));
      rep.add("winding", windings_json(q.winding));
      rep.add("start", q.start);
      rep.add("endpoint", endpoint(model, q));
    } else if (p_xi->parsed()) {
      rep.command = "pi1 xi";
      for (auto [d, x] : xi_sequence(TorusFunctorModel(level, u))) rep.add("xi_" + std::to_string(d), x);
    } else if (p_axioms->parsed()) {
      rep.command = "pi1 axioms";
      auto report = check_axioms(TorusFunctorModel(level, u), rmax, policy);
      rep.verdict = report.all_pass() ? Verdict::Pass : Verdict::Fail;
      for (const auto& e : report.entries) {
        std::string key = "axiom " + std::to_string(e.axiom) + " r=" + std::to_string(e.r);
        if (e.axiom == 3) key += " n=" + std::to_string(e.n);
        rep.add(key, (e.pass ? "ok " : "FAIL ") + std::to_string(e.checked) + (e.detail.empty() ? "" : " " + e.detail));
      }
    } else if (p_compare->parsed()) {
      rep.command = "pi1 compare";
      rep.add("twist", compare_functors(TorusFunctorModel(level, u), TorusFunctorModel(level2 ? level2 : level, u2)));
    } else if (poly_gb->parsed()) {
      rep.command = "poly gb";
      auto [vl, ps] = ideal();
      rep.add("basis", polys_json(buchberger(vl, ps, monomial_order()).generators));
    } else if (poly_dim->parsed()) {
      rep.command = "poly dim";
      auto [vl, ps] = ideal();
      rep.add("dimension", ideal_dimension(buchberger(vl, ps, monomial_order())));
    } else if (poly_member->parsed()) {
      rep.command = "poly member";
      auto [vl, ps] = ideal();
      rep.add("member", ideal_member(parse_poly(poly, vl), buchberger(vl, ps, monomial_order())));
    } else if (poly_elim->parsed()) {
      rep.command = "poly eliminate";
      auto [vl, ps] = ideal();
      rep.add("basis", polys_json(eliminate(buchberger(vl, ps, monomial_order()), names(keep)).generators));
    } else if (poly_lin->parsed()) {
      rep.command = "poly linpart";
      auto [vl, ps] = ideal();
      ojson j = ojson::array();
      for (const auto& row : linear_part(buchberger(vl, ps, monomial_order()), names(keep))) {
        ojson r = ojson::array();
        for (const auto& q : row) r.push_back(to_string(q));
        j.push_back(r);
      }
      rep.add("rows", j);
    }
    if (written && !opt.output.empty()) detail::write_json(opt.output, *written);
  } catch (const SyntaxError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  out << (opt.json ? rep.to_json().dump(2) + "\n" : rep.to_text());
  return rep.exit_code();
}

}  // namespace efc::cli
