#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "flexcheck/paper_examples.hpp"
#include "flexcheck/toric.hpp"

#ifndef FLEXCHECK_VERSION
#define FLEXCHECK_VERSION "0.0.0"
#endif

using namespace flexcheck;

namespace {

enum Exit { kYes = 0, kNo = 1, kUnknown = 2, kInputError = 3 };

struct RunConfig {
  std::string format = "json";
  std::uint64_t seed = 1;
  long bound = 8;
  std::size_t nilpotency_cap = kDefaultNilpotencyCap;
  double effort = default_effort_cap();
  std::string command;
  std::string input;
};

class InputError : public Error {
 public:
  using Error::Error;
};

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

// Schema errors from the library are input errors too.
template <class F>
auto as_input(const std::string& what, F f) -> decltype(f()) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw InputError(what + ": " + e.what());
  } catch (const DegenerateMonoid&) {
    throw;
  } catch (const InputError&) {
    throw;
  } catch (const Error& e) {
    throw InputError(what + ": " + e.what());
  }
}

MonoidInput load_monoid(const std::string& input) {
  if (input == "example3") return example3_input();
  auto j = read_json_file(input);
  return as_input(input, [&] { return monoid_input_from_json(j); });
}

Scenario load_scenario(const std::string& input, const RunConfig& cfg) {
  if (is_xm_name(input)) return as_input(input, [&] { return xm_scenario(xm_from_name(input), cfg.seed); });
  auto j = read_json_file(input);
  return as_input(input, [&] { return scenario_from_json(j); });
}

Json envelope(const RunConfig& cfg) {
  return Json{{"tool", "flexcheck"}, {"version", FLEXCHECK_VERSION}, {"command", cfg.command},
              {"input", cfg.input},  {"seed", cfg.seed},             {"bound", cfg.bound}};
}

void emit(const RunConfig& cfg, Json result, const std::string& text) {
  if (cfg.format == "text") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  auto j = envelope(cfg);
  j["result"] = std::move(result);
  std::cout << j.dump(2) << '\n';
}

std::string join_vectors(const std::vector<LatticeVector>& vs, const char* sep = "\n") {
  std::string s;
  for (const auto& v : vs) s += v.to_string() + sep;
  return s;
}

Json vectors_json(const std::vector<LatticeVector>& vs) {
  Json a = Json::array();
  for (const auto& v : vs) a.push_back(vector_to_json(v));
  return a;
}

LatticeVector parse_vector(const std::string& text) {
  std::vector<Integer> xs;
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, ',')) {
    try {
      xs.emplace_back(part);
    } catch (const std::invalid_argument&) {
      throw InputError("bad integer \"" + part + "\" in vector \"" + text + "\"");
    }
  }
  if (xs.empty()) throw InputError("empty vector");
  return LatticeVector(std::move(xs));
}

int exit_for(Answer a) { return a == Answer::Yes ? kYes : a == Answer::No ? kNo : kUnknown; }

// ---------------------------------------------------------------------------
// toric

struct ToricArgs {
  std::string input;
  bool no_certificates = false;
  std::string point;
};

MonoidPresentation presentation(const MonoidInput& in) {
  return as_input("monoid", [&] { return MonoidPresentation::create(in.rank, in.generators); });
}

int toric_analyze(const RunConfig& cfg, const ToricArgs& a) {
  auto in = load_monoid(a.input);
  auto certs = a.no_certificates ? std::vector<HoleFamilyCertificate>{} : in.certificates;
  ToricReport r;
  try {
    r = analyze(in.rank, in.generators, cfg.bound, certs);
  } catch (const DegenerateMonoid&) {
    throw;
  } catch (const Error& e) {
    throw InputError(e.what());
  }
  emit(cfg, report_to_json(r), report_to_text(r));
  if (r.degenerate || !r.combined) return kInputError;
  return exit_for(r.combined->answer);
}

int toric_hilbert(const RunConfig& cfg, const ToricArgs& a) {
  auto p = presentation(load_monoid(a.input));
  auto hb = hilbert_basis(p.cone());
  std::sort(hb.begin(), hb.end());
  emit(cfg, Json{{"hilbert_basis", vectors_json(hb)}}, join_vectors(hb));
  return kYes;
}

int toric_holes(const RunConfig& cfg, const ToricArgs& a) {
  auto p = presentation(load_monoid(a.input));
  auto holes = holes_up_to(p, cfg.bound);
  emit(cfg, Json{{"holes", vectors_json(holes)}, {"complete_up_to", cfg.bound}},
       holes.empty() ? "no holes up to degree " + std::to_string(cfg.bound) : join_vectors(holes));
  return kYes;
}

int toric_saturation_point(const RunConfig& cfg, const ToricArgs& a) {
  auto p = presentation(load_monoid(a.input));
  auto v = parse_vector(a.point);
  if (v.size() != p.rank()) throw InputError("point has the wrong rank");
  if (!p.is_member(v)) throw InputError(v.to_string() + " is not in the monoid");
  auto verdict = is_saturation_point(p, v);
  if (auto* sp = std::get_if<SaturationPoint>(&verdict)) {
    emit(cfg, Json{{"point", vector_to_json(v)}, {"saturation_point", true}, {"checked", vectors_json(sp->checked)}},
         v.to_string() + " is a saturation point (certified over " + std::to_string(sp->checked.size()) +
             " parallelepiped points)");
    return kYes;
  }
  const auto& hole = std::get<NotSaturationPoint>(verdict).hole;
  emit(cfg, Json{{"point", vector_to_json(v)}, {"saturation_point", false}, {"hole", vector_to_json(hole)}},
       v.to_string() + " is not a saturation point; hole " + hole.to_string());
  return kNo;
}

int toric_faces(const RunConfig& cfg, const ToricArgs& a) {
  auto in = load_monoid(a.input);
  auto p = presentation(in);
  auto certs = a.no_certificates ? std::vector<HoleFamilyCertificate>{} : in.certificates;
  auto census = orbit_census(p, cfg.bound, certs);
  std::ostringstream text;
  for (const auto& e : census) {
    text << "face dim " << e.face_dim << "  orbit dim " << e.orbit_dim << "  rays ";
    for (const auto& r : e.face_rays) text << r.to_string() << ' ';
    if (e.face_dim == 1) text << " " << to_string(e.smoothness);
    text << '\n';
  }
  emit(cfg, orbit_census_to_json(census), text.str());
  return kYes;
}

// ---------------------------------------------------------------------------
// derive

struct DeriveArgs {
  std::string input;
  std::string derivation;
  std::string grading;
  std::string s = "1";
  std::string point;
};

int derive_check(const RunConfig& cfg, const DeriveArgs& a) {
  auto sc = load_scenario(a.input, cfg);
  const auto& ring = sc.algebra->ring();
  NamedList<Derivation> targets;
  if (a.derivation.empty()) {
    targets = sc.derivations;
  } else {
    std::stringstream in(a.derivation);
    std::string name;
    while (std::getline(in, name, ','))
      targets.emplace_back(name, as_input("derivation", [&] { return derivation_expression(sc, name); }));
  }
  Json out = Json::array();
  std::ostringstream text;
  bool ok = true;
  for (const auto& [name, d] : targets) {
    auto rel = preserves_relations(d);
    auto nil = is_locally_nilpotent_bounded(d, cfg.nilpotency_cap);
    Json e{{"name", name}, {"preserves_relations", rel.preserved}};
    if (!rel.preserved)
      e["failing"] = ring.format(sc.algebra->relations()[*rel.failing]) + " -> " + ring.format(rel.residue);
    e["nilpotent"] = nil.nilpotent ? Json("yes") : Json("unknown up to " + std::to_string(nil.cap));
    if (nil.nilpotent) {
      Json chain = Json::object();
      for (std::size_t i = 0; i < ring.size(); ++i) chain[ring.name(i)] = nil.chain_lengths[i];
      e["chain_lengths"] = chain;
    }
    text << name << ": relations " << (rel.preserved ? "preserved" : "violated") << ", nilpotent "
         << (nil.nilpotent ? "yes" : "unknown");
    for (const auto& [an, ad] : sc.ambient_derivations) {
      if (an != name) continue;
      auto amb = preserves_relations(ad);
      auto res = restricts_to(ad, d);
      e["ambient_preserves_relations"] = amb.preserved;
      e["restricts"] = res.preserved;
      text << ", ambient " << (amb.preserved && res.preserved ? "consistent" : "inconsistent");
      ok = ok && amb.preserved && res.preserved;
    }
    text << '\n';
    ok = ok && rel.preserved;
    out.push_back(std::move(e));
  }
  emit(cfg, Json{{"derivations", out}, {"valid", ok}}, text.str());
  return ok ? kYes : kNo;
}

int derive_exp(const RunConfig& cfg, const DeriveArgs& a) {
  auto sc = load_scenario(a.input, cfg);
  const auto& ring = sc.algebra->ring();
  auto d = as_input("derivation", [&] { return derivation_expression(sc, a.derivation); });
  auto s = as_input("--s", [&] { return ring.parse_number(a.s); });
  const auto& p = as_input("point", [&] { return find_named(sc.points, a.point, "point"); });
  auto nil = is_locally_nilpotent_bounded(d, cfg.nilpotency_cap);
  if (!nil.nilpotent) {
    emit(cfg, Json{{"nilpotent", false}, {"cap", cfg.nilpotency_cap}},
         "derivation is not nilpotent within " + std::to_string(cfg.nilpotency_cap) + " steps");
    return kUnknown;
  }
  auto phi = exp_derivation(d, s, cfg.nilpotency_cap);
  auto q = phi.apply_to_point(p);
  bool on = true;
  std::string why;
  try {
    check_on_variety(*sc.algebra, q);
  } catch (const Error& e) {
    on = false;
    why = e.what();
  }
  Json images = Json::object();
  for (std::size_t i = 0; i < ring.size(); ++i) images[ring.name(i)] = ring.format(phi.images[i]);
  std::ostringstream text;
  text << "exp(" << s.to_string() << " * (" << a.derivation << "))\n";
  for (std::size_t i = 0; i < ring.size(); ++i) text << "  " << ring.name(i) << " -> " << ring.format(phi.images[i]) << '\n';
  text << "point " << a.point << " moves to (";
  for (std::size_t i = 0; i < q.size(); ++i) text << (i ? ", " : "") << q[i].to_string();
  text << ")\n" << (on ? "on-variety re-check passed" : why) << '\n';
  Json result{{"derivation", a.derivation}, {"s", number_to_json(s)}, {"images", images},
              {"point", point_to_json(p)},  {"moved", point_to_json(q)}, {"on_variety", on}};
  emit(cfg, result, text.str());
  return on ? kYes : kNo;
}

int derive_decompose(const RunConfig& cfg, const DeriveArgs& a) {
  auto sc = load_scenario(a.input, cfg);
  const auto& ring = sc.algebra->ring();
  auto d = as_input("derivation", [&] { return derivation_expression(sc, a.derivation); });
  const auto& g = as_input("grading", [&] { return find_named(sc.gradings, a.grading, "grading"); });
  auto parts = graded_decompose(d, g);
  Json comps = Json::array();
  std::ostringstream text;
  for (const auto& [deg, part] : parts) {
    Json images = Json::object();
    for (std::size_t i = 0; i < ring.size(); ++i)
      if (!part.image(i).is_zero()) images[ring.name(i)] = ring.format(part.image(i));
    comps.push_back(Json{{"degree", vector_to_json(deg)}, {"images", images}});
    text << "degree " << deg.to_string() << ":";
    for (const auto& [v, img] : images.items()) text << ' ' << v << " -> " << img.get<std::string>() << ';';
    text << '\n';
  }
  emit(cfg, Json{{"derivation", a.derivation}, {"grading", a.grading}, {"components", comps}}, text.str());
  return kYes;
}

int derive_rank(const RunConfig& cfg, const DeriveArgs& a) {
  auto sc = load_scenario(a.input, cfg);
  auto list = as_input("derivation", [&] { return derivation_list(sc, a.derivation); });
  const auto& p = as_input("point", [&] { return find_named(sc.points, a.point, "point"); });
  auto rank = tangent_rank(list, p);
  auto jac = jacobian_rank(sc.algebra->relations(), sc.algebra->size(), p);
  emit(cfg,
       Json{{"derivations", a.derivation},
            {"point", a.point},
            {"tangent_rank", rank},
            {"jacobian_rank", jac},
            {"zariski_tangent_dimension", sc.algebra->size() - jac}},
       "rank " + std::to_string(rank) + " at " + a.point + " (Jacobian rank " + std::to_string(jac) + ")");
  return kYes;
}

// ---------------------------------------------------------------------------
// paper

struct PaperArgs {
  std::string input;
  bool skip_elimination = false;
  bool timings = false;
  std::size_t samples = 20;
};

int paper_verify(const RunConfig& cfg, const PaperArgs& a) {
  CensusOptions opt;
  opt.seed = cfg.seed;
  opt.samples = a.samples;
  opt.eliminate = !a.skip_elimination;
  opt.timings = a.timings;
  opt.effort_seconds = cfg.effort;
  opt.nilpotency_cap = cfg.nilpotency_cap;
  CensusReport r;
  if (a.input == "example3") {
    r = verify_example3(cfg.bound, opt);
  } else if (is_xm_name(a.input)) {
    r = verify_xm(as_input(a.input, [&] { return xm_from_name(a.input); }), opt);
  } else {
    throw InputError("unknown suite \"" + a.input + "\" (known: example3, xm:m=K, xm-general:n=N,k=K,m=M)");
  }
  emit(cfg, census_to_json(r), census_to_text(r));
  return r.has_refuted() ? kNo : kYes;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Flexibility checks for affine toric varieties and derivation models"};
  app.set_version_flag("--version", FLEXCHECK_VERSION);
  app.require_subcommand(1);
  RunConfig cfg;
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--seed", cfg.seed, "Random seed");
  app.add_option("--bound,-B", cfg.bound, "Degree bound")->check(CLI::NonNegativeNumber);
  app.add_option("--nilpotency-cap", cfg.nilpotency_cap, "Iterations allowed in nilpotency tests")
      ->check(CLI::PositiveNumber);
  app.add_option("--effort-cap", cfg.effort, "Seconds allowed per Groebner computation")->check(CLI::PositiveNumber);

  int code = kInputError;
  auto guard = [&](std::string command, const std::string& input, auto fn) {
    return [&, command, fn] {
      cfg.command = command;
      cfg.input = input;
      code = fn();
    };
  };

  ToricArgs ta;
  auto* toric = app.add_subcommand("toric", "Affine monoid analyses");
  toric->require_subcommand(1);
  auto toric_cmd = [&](const char* name, const char* help, int (*fn)(const RunConfig&, const ToricArgs&)) {
    auto* c = toric->add_subcommand(name, help);
    c->add_option("input", ta.input, "monoid.json or example3")->required();
    c->add_option("--bound,-B", cfg.bound, "Degree bound")->check(CLI::NonNegativeNumber);
    c->add_flag("--no-certificates", ta.no_certificates, "Ignore hole-family certificates");
    c->callback(guard(std::string("toric ") + name, ta.input, [&, fn] { return fn(cfg, ta); }));
    return c;
  };
  toric_cmd("analyze", "Flexibility and invariant divisor verdicts", toric_analyze);
  toric_cmd("hilbert-basis", "Hilbert basis of the saturation", toric_hilbert);
  toric_cmd("holes", "Holes up to the degree bound", toric_holes);
  toric_cmd("saturation-point", "Exact saturation point test", toric_saturation_point)
      ->add_option("point", ta.point, "Comma-separated coordinates")
      ->required();
  toric_cmd("faces", "Face and orbit census", toric_faces);

  DeriveArgs da;
  auto* derive = app.add_subcommand("derive", "Derivations on presented algebras");
  derive->require_subcommand(1);
  auto derive_cmd = [&](const char* name, const char* help, int (*fn)(const RunConfig&, const DeriveArgs&)) {
    auto* c = derive->add_subcommand(name, help);
    c->add_option("input", da.input, "scenario.json or a built-in name such as xm:m=2")->required();
    c->add_option("--seed", cfg.seed, "Random seed for built-in sample points");
    c->callback(guard(std::string("derive ") + name, da.input, [&, fn] { return fn(cfg, da); }));
    return c;
  };
  derive_cmd("check", "Relation preservation and nilpotency", derive_check)
      ->add_option("--derivation,-d", da.derivation, "Comma-separated derivation expressions");
  auto* exp = derive_cmd("exp", "Apply exp(s * derivation) to a point", derive_exp);
  exp->add_option("--derivation,-d", da.derivation, "Derivation expression")->required();
  exp->add_option("--s", da.s, "Parameter");
  exp->add_option("--point,-p", da.point, "Named point")->required();
  auto* dec = derive_cmd("decompose", "Homogeneous components", derive_decompose);
  dec->add_option("--derivation,-d", da.derivation, "Derivation expression")->required();
  dec->add_option("--grading,-g", da.grading, "Grading name")->required();
  auto* rk = derive_cmd("rank", "Rank of vector fields at a point", derive_rank);
  rk->add_option("--derivation,-d", da.derivation, "Comma-separated derivation expressions")->required();
  rk->add_option("--point,-p", da.point, "Named point")->required();

  PaperArgs pa;
  auto* paper = app.add_subcommand("paper", "Verification suites for the worked examples");
  paper->require_subcommand(1);
  auto* verify = paper->add_subcommand("verify", "Run a suite and report every claim");
  verify->add_option("suite", pa.input, "example3, xm:m=K or xm-general:n=N,k=K,m=M")->required();
  verify->add_option("--bound,-B", cfg.bound, "Degree bound")->check(CLI::NonNegativeNumber);
  verify->add_option("--seed", cfg.seed, "Random seed");
  verify->add_option("--samples", pa.samples, "Generic sample points")->check(CLI::PositiveNumber);
  verify->add_flag("--skip-elimination", pa.skip_elimination, "Skip the ideal completeness check");
  verify->add_flag("--timings", pa.timings, "Record wall time per claim");
  verify->callback(guard("paper verify", pa.input, [&] { return paper_verify(cfg, pa); }));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  } catch (const DegenerateMonoid& e) {
    std::cerr << "degenerate input: " << e.what() << '\n';
    return kInputError;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return code;
}
