#include <algorithm>
#include <chrono>
#include <iomanip>
#include <sstream>

#include "flexcheck/paper_examples.hpp"

namespace flexcheck {

std::string to_string(ClaimStatus s) {
  switch (s) {
    case ClaimStatus::Verified: return "verified";
    case ClaimStatus::Refuted: return "refuted";
    case ClaimStatus::Unknown: return "unknown";
    case ClaimStatus::Unverifiable: return "unverifiable";
  }
  return "unknown";
}

ClaimStatus claim_status_from_string(const std::string& s) {
  for (auto c : {ClaimStatus::Verified, ClaimStatus::Refuted, ClaimStatus::Unknown, ClaimStatus::Unverifiable})
    if (to_string(c) == s) return c;
  throw Error("unknown claim status \"" + s + "\"");
}

std::size_t CensusReport::count(ClaimStatus s) const {
  return static_cast<std::size_t>(
      std::count_if(entries.begin(), entries.end(), [s](const CensusEntry& e) { return e.status == s; }));
}

const CensusEntry* CensusReport::find(const std::string& id) const {
  for (const auto& e : entries)
    if (e.id == id) return &e;
  return nullptr;
}

void CensusReport::append(const CensusReport& other) {
  entries.insert(entries.end(), other.entries.begin(), other.entries.end());
}

Json census_to_json(const CensusReport& r) {
  Json entries = Json::array();
  for (const auto& e : r.entries) {
    Json j{{"id", e.id}, {"claim", e.claim}, {"locus", e.locus}, {"status", to_string(e.status)},
           {"witnesses", e.witnesses}, {"details", e.details}};
    if (e.seconds) j["seconds"] = *e.seconds;
    entries.push_back(std::move(j));
  }
  Json summary = Json::object();
  for (auto c : {ClaimStatus::Verified, ClaimStatus::Refuted, ClaimStatus::Unknown, ClaimStatus::Unverifiable})
    summary[to_string(c)] = r.count(c);
  return Json{{"suite", r.suite}, {"parameters", r.parameters}, {"summary", summary}, {"entries", entries}};
}

CensusReport census_from_json(const Json& j) {
  CensusReport r;
  r.suite = j.at("suite").get<std::string>();
  r.parameters = j.at("parameters");
  for (const auto& e : j.at("entries")) {
    CensusEntry c;
    c.id = e.at("id").get<std::string>();
    c.claim = e.at("claim").get<std::string>();
    c.locus = e.at("locus").get<std::string>();
    c.status = claim_status_from_string(e.at("status").get<std::string>());
    c.witnesses = e.at("witnesses");
    c.details = e.at("details").get<std::string>();
    if (e.contains("seconds")) c.seconds = e.at("seconds").get<double>();
    r.entries.push_back(std::move(c));
  }
  return r;
}

std::string census_to_text(const CensusReport& r) {
  std::ostringstream out;
  out << "suite: " << r.suite << "\n";
  for (const auto& [k, v] : r.parameters.items()) out << "  " << k << " = " << v.dump() << "\n";
  std::size_t width = 0;
  for (const auto& e : r.entries) width = std::max(width, e.id.size());
  for (const auto& e : r.entries) {
    out << std::left << std::setw(13) << to_string(e.status) << std::setw(static_cast<int>(width) + 2) << e.id
        << e.claim << "\n";
    if (!e.details.empty()) out << std::string(15 + width, ' ') << e.details << "\n";
  }
  out << "verified " << r.count(ClaimStatus::Verified) << ", refuted " << r.count(ClaimStatus::Refuted)
      << ", unknown " << r.count(ClaimStatus::Unknown) << ", unverifiable " << r.count(ClaimStatus::Unverifiable)
      << "\n";
  return out.str();
}

namespace {

using Clock = std::chrono::steady_clock;

class Suite {
 public:
  Suite(CensusReport& report, const CensusOptions& opt) : report_(report), opt_(opt) {}

  // Runs `body` to fill one entry; Groebner effort overruns become Unknown.
  template <class F>
  void run(std::string id, std::string claim, std::string locus, F body) {
    CensusEntry e;
    e.id = std::move(id);
    e.claim = std::move(claim);
    e.locus = std::move(locus);
    auto start = Clock::now();
    try {
      body(e);
    } catch (const EffortExceeded& ex) {
      e.status = ClaimStatus::Unknown;
      e.details = std::string("effort cap exceeded: ") + ex.what();
    }
    if (opt_.timings) e.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    report_.entries.push_back(std::move(e));
  }

 private:
  CensusReport& report_;
  const CensusOptions& opt_;
};

ClaimStatus verdict(bool ok) { return ok ? ClaimStatus::Verified : ClaimStatus::Refuted; }

Json images_json(const Derivation& d) {
  Json o = Json::object();
  const auto& ring = d.algebra()->ring();
  for (std::size_t i = 0; i < d.images().size(); ++i)
    if (!d.image(i).is_zero()) o[ring.name(i)] = ring.format(d.image(i));
  return o;
}

Json degrees_json(const std::vector<LatticeVector>& ds) {
  Json a = Json::array();
  for (const auto& d : ds) a.push_back(vector_to_json(d));
  return a;
}

Json parameters(const XmModel& model, const CensusOptions& opt) {
  return Json{{"n", model.n},
              {"k", model.k},
              {"m", model.m},
              {"seed", opt.seed},
              {"samples", opt.samples},
              {"u_samples", opt.u_samples},
              {"l_samples", opt.l_samples},
              {"d_samples", opt.d_samples},
              {"elimination", opt.eliminate},
              {"nilpotency_cap", opt.nilpotency_cap}};
}

bool is_delta(const CatalogDerivation& c) { return c.name.rfind("rho", 0) != 0; }

// Expected invariant images for x y^4 = z^4 + w^4, written from the stated formulas.
std::map<std::string, std::string> stated_formula(const XmModel& model, const CatalogDerivation& c) {
  std::map<std::string, std::string> out;
  if (c.name == "dz" || c.name == "dw") {
    const std::string v = c.name == "dz" ? "z" : "w";
    out["x"] = "4*" + v + "1^3";
    out[v + "1"] = "y1^4";
    for (int i = 2; i <= model.m; ++i) out[v + std::to_string(i)] = "y1^3*y" + std::to_string(i);
    return out;
  }
  auto digits = c.name.substr(3);
  std::string i, j;
  if (auto us = digits.find('_'); us != std::string::npos) {
    i = digits.substr(0, us);
    j = digits.substr(us + 1);
  } else {
    i = digits.substr(0, 1);
    j = digits.substr(1);
  }
  for (const char* v : {"y", "z", "w"}) out[std::string(v) + i] = std::string(v) + j;
  return out;
}

// Relations used for tangent-space checks and whether they are known complete.
struct IdealChoice {
  std::vector<Polynomial> relations;
  bool complete = false;
  std::string note;
};

IdealChoice ideal_for_jacobian(const XmModel& model, const CensusOptions& opt) {
  IdealChoice c;
  c.relations = model.invariant->relations();
  if (!opt.eliminate) {
    c.note = "conjectured generators: membership verified, completeness assumed (elimination skipped)";
    return c;
  }
  try {
    auto kernel = eliminated_relations(model, opt.effort_seconds);
    c.relations = kernel;
    c.complete = true;
    c.note = "ideal computed by elimination";
  } catch (const EffortExceeded&) {
    c.note = "conjectured generators: elimination exceeded the effort cap, completeness assumed";
  }
  return c;
}

}  // namespace

CensusReport verify_construction(const XmModel& model, const CensusOptions& opt) {
  CensusReport report;
  report.suite = "construction";
  report.parameters = parameters(model, opt);
  Suite suite(report, opt);
  const auto& aring = model.ambient->ring();
  const auto& iring = model.invariant->ring();

  suite.run("sign.convention",
            "the ambient derivations preserve x*y^n - sum z_j^n and not x*y^n + sum z_j^n",
            "trinomial hypersurface Y and the ambient form of delta_z", [&](CensusEntry& e) {
              const auto& xi = model.catalog.front().ambient;
              auto good = preserves_relations(xi);
              const auto& t = model.ambient->relations().front();
              auto lead = Polynomial::variable(0) * Polynomial::variable(1).pow(static_cast<unsigned>(model.n));
              auto flipped = lead.scaled(Number(2)) - t;
              auto bad_alg = PresentedAlgebra::create(aring, {flipped});
              auto bad = preserves_relations(Derivation(bad_alg, xi.images()));
              e.status = verdict(good.preserved && !bad.preserved);
              e.witnesses.push_back(Json{{"relation", aring.format(model.ambient->relations().front())},
                                         {"preserved", good.preserved}});
              e.witnesses.push_back(Json{{"relation", aring.format(flipped)},
                                         {"preserved", bad.preserved},
                                         {"residue", aring.format(bad.residue)}});
              e.details = "the equation with plus signs is not preserved; the minus convention is used throughout";
            });

  for (const auto& c : model.catalog) {
    const std::string p = "derivation." + c.name;
    suite.run(p + ".relations", c.name + " preserves the relations in ambient and invariant form and restricts correctly",
              "construction of the catalog derivations", [&](CensusEntry& e) {
                auto inv = preserves_relations(c.invariant);
                auto amb = preserves_relations(c.ambient);
                auto res = restricts_to(c.ambient, c.invariant);
                e.status = verdict(inv.preserved && amb.preserved && res.preserved);
                e.witnesses.push_back(Json{{"ambient", images_json(c.ambient)}, {"invariant", images_json(c.invariant)}});
                if (!inv.preserved) e.details = "invariant residue " + iring.format(inv.residue);
                else if (!amb.preserved) e.details = "ambient residue " + aring.format(amb.residue);
                else if (!res.preserved) e.details = "restriction differs on " + iring.name(*res.failing);
              });

    if (model.has_quartic_roots())
      suite.run(p + ".formula", c.name + " has the stated images on the invariant generators",
                "formulas for delta_z, delta_w and rho_ij", [&](CensusEntry& e) {
                  auto expected = stated_formula(model, c);
                  bool ok = true;
                  for (std::size_t i = 0; i < iring.size(); ++i) {
                    auto it = expected.find(iring.name(i));
                    std::string want = it == expected.end() ? "0" : it->second;
                    std::string got = iring.format(c.invariant.image(i));
                    if (want != got) {
                      ok = false;
                      e.details = iring.name(i) + ": expected " + want + ", got " + got;
                    }
                  }
                  e.status = verdict(ok);
                  e.witnesses.push_back(images_json(c.invariant));
                });

    suite.run(p + ".torus_degree", c.name + " is homogeneous of degree 0 for the torus grading",
              "homogeneity of the catalog for the grading G", [&](CensusEntry& e) {
                auto d = derivation_degree(c.ambient, model.g_ambient);
                e.status = verdict(d && d->is_zero());
                e.witnesses.push_back(d ? vector_to_json(*d) : Json(nullptr));
              });

    suite.run(p + ".nilpotent", c.name + " is locally nilpotent", "catalog derivations are LNDs", [&](CensusEntry& e) {
      auto r = is_locally_nilpotent_bounded(c.invariant, opt.nilpotency_cap);
      auto ra = is_locally_nilpotent_bounded(c.ambient, opt.nilpotency_cap);
      if (r.nilpotent && ra.nilpotent) e.status = ClaimStatus::Verified;
      else e.status = ClaimStatus::Unknown;
      Json lengths = Json::object();
      for (std::size_t i = 0; i < iring.size(); ++i) lengths[iring.name(i)] = r.chain_lengths[i];
      e.witnesses.push_back(lengths);
      e.details = r.nilpotent ? "chain lengths on the invariant generators"
                              : "chain on " + iring.name(*r.stuck) + " did not end within " + std::to_string(opt.nilpotency_cap) + " steps";
    });

    suite.run(p + ".graded", c.name + ": homogeneous components sum back and vertex components are locally nilpotent",
              "graded components at hull vertices are LNDs", [&](CensusEntry& e) {
                bool ok = true;
                bool unknown = false;
                auto check = [&](const std::string& gname, const Derivation& d, const GradingSpec& g) {
                  auto comps = graded_decompose(d, g);
                  Derivation sum = Derivation::zero(d.algebra());
                  for (const auto& [gamma, part] : comps) {
                    sum = sum + part;
                    if (derivation_degree(part, g) != std::optional<LatticeVector>(gamma)) ok = false;
                  }
                  if (sum.images() != d.images()) ok = false;
                  auto vertices = support_vertices(comps);
                  for (const auto& v : vertices)
                    if (!is_locally_nilpotent_bounded(comps.at(v), opt.nilpotency_cap).nilpotent) unknown = true;
                  std::vector<LatticeVector> keys;
                  for (const auto& [gamma, _] : comps) keys.push_back(gamma);
                  e.witnesses.push_back(
                      Json{{"grading", gname}, {"degrees", degrees_json(keys)}, {"vertices", degrees_json(vertices)}});
                };
                check("F", c.invariant, model.f);
                check("G", c.invariant, model.g_invariant);
                check("Z2", c.invariant, model.z2);
                check("G-ambient", c.ambient, model.g_ambient);
                e.status = !ok ? ClaimStatus::Refuted : unknown ? ClaimStatus::Unknown : ClaimStatus::Verified;
              });

    suite.run(p + ".f_nonnegative", c.name + " has no component of negative F-degree",
              "no LND of negative F-degree", [&](CensusEntry& e) {
                auto comps = graded_decompose(c.invariant, model.f);
                bool ok = true;
                std::vector<LatticeVector> keys;
                for (const auto& [gamma, _] : comps) {
                  keys.push_back(gamma);
                  if (sgn(gamma[0]) < 0) ok = false;
                }
                e.status = verdict(ok);
                e.witnesses.push_back(degrees_json(keys));
              });

    if (is_delta(c))
      suite.run(p + ".z2_degree", c.name + " has Z^2-degree (n-1, n), first coordinate at least 3",
                "Z^2-degree of delta_z and delta_w", [&](CensusEntry& e) {
                  auto d = derivation_degree(c.invariant, model.z2);
                  LatticeVector want{model.n - 1, model.n};
                  e.status = verdict(d && *d == want && (*d)[0] >= 3);
                  e.witnesses.push_back(d ? vector_to_json(*d) : Json(nullptr));
                });

    suite.run(p + ".invariant_divisors", c.name + " maps the ideals of D and of each D_j into themselves",
              "invariance of D and D_j", [&](CensusEntry& e) {
                auto d = preserves_ideal(c.invariant, model.d_ideal());
                bool ok = d.preserved;
                e.witnesses.push_back(Json{{"ideal", "D"}, {"preserved", d.preserved}});
                if (model.has_quartic_roots()) {
                  for (int j = 1; j <= 4; ++j) {
                    auto dj = preserves_ideal(c.invariant, model.dj_ideal(j));
                    ok = ok && dj.preserved;
                    e.witnesses.push_back(Json{{"ideal", "D" + std::to_string(j)}, {"preserved", dj.preserved}});
                  }
                } else {
                  e.details = "the components D_j are only modelled for exponent 4 with two z variables";
                }
                e.status = verdict(ok);
              });
  }

  suite.run("decomposition.dz+rho12", "delta_z + rho_12 splits under F into degrees 0 and n",
            "graded decomposition example", [&](CensusEntry& e) {
              auto d = model.catalog.front().invariant + model.find(model.rho_name(1, 2)).invariant;
              auto comps = graded_decompose(d, model.f);
              std::vector<LatticeVector> keys;
              for (const auto& [gamma, _] : comps) keys.push_back(gamma);
              e.status = verdict(keys == std::vector<LatticeVector>{LatticeVector{0}, LatticeVector{model.n}});
              e.witnesses.push_back(degrees_json(keys));
            });

  suite.run("ideal.contained", "the quadratic minors and the degree-n trinomials vanish on X_m",
            "presentation of the invariant algebra", [&](CensusEntry& e) {
              // Checked when the model was built; repeated here for the record.
              const auto& amb = *model.ambient;
              const auto& gens = model.invariant->ambient()->generators;
              bool ok = true;
              for (const auto& r : model.invariant->relations()) ok = ok && amb.in_ideal(r.substitute(gens));
              e.status = verdict(ok);
              e.witnesses.push_back(model.invariant->relations().size());
            });

  suite.run("ideal.complete", "the quadratic minors and the degree-n trinomials generate the whole ideal",
            "presentation of the invariant algebra", [&](CensusEntry& e) {
              if (!opt.eliminate) {
                e.status = ClaimStatus::Unknown;
                e.details = "elimination skipped: membership verified, completeness assumed";
                return;
              }
              auto kernel = groebner_basis(eliminated_relations(model, opt.effort_seconds));
              e.status = verdict(kernel == model.invariant->basis());
              e.witnesses.push_back(Json{{"eliminated_basis_size", kernel.size()},
                                         {"conjectured_generators", model.invariant->relations().size()}});
              e.details = "reduced Groebner bases compared";
            });
  return report;
}

CensusReport verify_census(const XmModel& model, const CensusOptions& opt) {
  CensusReport report;
  report.suite = "census";
  report.parameters = parameters(model, opt);
  Suite suite(report, opt);
  Sampler sampler(opt.seed);
  const auto dim = static_cast<std::size_t>(model.dimension());
  const auto gens = model.generator_count();
  const std::size_t codim = gens - dim;

  std::vector<std::vector<Number>> generic;
  for (std::size_t t = 0; t < opt.samples; ++t) generic.push_back(generic_sample(model, sampler));
  std::vector<std::vector<Number>> l_points;
  for (std::size_t t = 0; t < opt.l_samples; ++t) l_points.push_back(l_sample(model, sampler));
  l_points.push_back(std::vector<Number>(gens));

  suite.run("rank.generic", "the catalog fields span a space of dimension dim X_m at generic points",
            "points with all y_i nonzero are flexible", [&](CensusEntry& e) {
              auto fields = model.fields(model.generic_field_names());
              bool ok = true;
              for (std::size_t t = 0; t < generic.size(); ++t) {
                auto r = tangent_rank(fields, generic[t]);
                ok = ok && r == dim;
                if (t < 3) e.witnesses.push_back(Json{{"point", point_to_json(generic[t])}, {"rank", r}});
              }
              e.status = verdict(ok);
              std::string names;
              for (const auto& n : model.generic_field_names()) names += (names.empty() ? "" : ",") + n;
              e.details = "fields " + names + ", expected rank " + std::to_string(dim) + " at " +
                          std::to_string(generic.size()) + " points";
            });

  suite.run("rank.u1", "the catalog fields span a space of dimension m+1 on U_1", "U_j = D_j minus L is one orbit",
            [&](CensusEntry& e) {
              if (!model.has_quartic_roots()) {
                e.status = ClaimStatus::Unverifiable;
                e.details = "the components D_j are only modelled for exponent 4 with two z variables";
                return;
              }
              auto fields = model.fields(model.u1_field_names());
              bool ok = true;
              for (std::size_t t = 0; t < opt.u_samples; ++t) {
                auto p = u1_sample(model, sampler);
                auto r = tangent_rank(fields, p);
                ok = ok && r == static_cast<std::size_t>(model.m + 1) && d_component(model, p) == 1;
                if (t < 3) e.witnesses.push_back(Json{{"point", point_to_json(p)}, {"rank", r}});
              }
              e.status = verdict(ok);
              e.details = "expected rank " + std::to_string(model.m + 1) + " at " + std::to_string(opt.u_samples) +
                          " points over Q(e)";
            });

  suite.run("fields.vanish_on_L", "every catalog field vanishes on L", "L consists of fixed points",
            [&](CensusEntry& e) {
              bool ok = true;
              for (const auto& p : l_points)
                for (const auto& c : model.catalog)
                  for (const auto& v : vector_field_at(c.invariant, p)) ok = ok && v.is_zero();
              e.status = verdict(ok);
              e.witnesses.push_back(point_to_json(l_points.front()));
              e.details = std::to_string(l_points.size()) + " points including the origin";
            });

  auto ideal = ideal_for_jacobian(model, opt);
  auto caveat = [&](CensusEntry& e, bool ok) {
    e.status = !ok ? ClaimStatus::Refuted : ideal.complete ? ClaimStatus::Verified : ClaimStatus::Unknown;
    e.details = ideal.note + (e.details.empty() ? "" : "; " + e.details);
  };

  suite.run("jacobian.L", "the tangent space at points of L has dimension 3m+1", "tangent dimension on L",
            [&](CensusEntry& e) {
              bool ok = true;
              for (std::size_t t = 0; t < l_points.size(); ++t) {
                auto r = jacobian_rank(ideal.relations, gens, l_points[t]);
                ok = ok && r == 0;
                if (t < 2 || t + 1 == l_points.size())
                  e.witnesses.push_back(
                      Json{{"point", point_to_json(l_points[t])}, {"jacobian_rank", r}, {"tangent_dim", gens - r}});
              }
              e.details = "tangent dimension " + std::to_string(gens);
              caveat(e, ok);
            });

  suite.run("singular.L", "points of L are singular", "singular points form the line L", [&](CensusEntry& e) {
    bool ok = true;
    for (const auto& p : l_points) ok = ok && jacobian_rank(ideal.relations, gens, p) < codim;
    e.witnesses.push_back(Json{{"codimension", codim}});
    caveat(e, ok);
  });

  suite.run("jacobian.generic", "generic points are smooth and dim X_m = m+2", "dimension of X_m", [&](CensusEntry& e) {
    bool ok = true;
    for (const auto& p : generic) ok = ok && jacobian_rank(ideal.relations, gens, p) == codim;
    e.witnesses.push_back(Json{{"dimension", dim}, {"codimension", codim}});
    caveat(e, ok);
  });

  suite.run("dcover.factorization", "z^4 + w^4 is the product of z + e_j w over the four roots of -1",
            "D is the union of the four divisors D_j", [&](CensusEntry& e) {
              if (!model.has_quartic_roots()) {
                e.status = ClaimStatus::Unverifiable;
                e.details = "needs the n-th roots of -1 in the coefficient field";
                return;
              }
              Ring r({"z", "w"});
              Polynomial prod(1);
              for (int j = 1; j <= 4; ++j) prod *= r.var("z") + r.var("w").scaled(Number::epsilon_power(2 * j - 1));
              e.status = verdict(prod == r.parse("z^4 + w^4"));
              e.witnesses.push_back(r.format(prod));
            });

  suite.run("dcover.samples", "every point with all y_i = 0 satisfies z_i + e_j w_i = 0 for one common j",
            "D is the union of the four divisors D_j", [&](CensusEntry& e) {
              if (!model.has_quartic_roots()) {
                e.status = ClaimStatus::Unverifiable;
                e.details = "the components D_j are only modelled for exponent 4 with two z variables";
                return;
              }
              std::map<int, std::size_t> hist;
              std::size_t failures = 0;
              for (std::size_t t = 0; t < opt.d_samples; ++t) {
                auto p = d_sample(model, sampler);
                auto j = d_component(model, p);
                if (j) ++hist[*j];
                else ++failures;
              }
              e.status = verdict(failures == 0);
              Json h = Json::object();
              for (const auto& [j, c] : hist) h["D" + std::to_string(j)] = c;
              e.witnesses.push_back(h);
              e.details = std::to_string(opt.d_samples) + " samples, " + std::to_string(failures) + " failures";
            });

  suite.run("exp.moving", "exp(s rho_ij) moves a point with y_i = 0, y_j != 0 off y_i = 0 and keeps the other y_l",
            "the complement of D is one orbit", [&](CensusEntry& e) {
              bool ok = true;
              for (int i = 1; i <= model.m; ++i)
                for (int j = 1; j <= model.m; ++j) {
                  if (i == j) continue;
                  auto name = model.rho_name(i, j);
                  // Ambient point with u_i = 0.
                  std::vector<Number> amb(model.ambient->size());
                  amb[1] = sampler.rational(true);
                  Number sum;
                  for (int r = 1; r <= model.k; ++r) {
                    amb[static_cast<std::size_t>(1 + r)] = sampler.rational(true);
                    sum += amb[static_cast<std::size_t>(1 + r)].pow(static_cast<unsigned long>(model.n));
                  }
                  amb[0] = sum / amb[1].pow(static_cast<unsigned long>(model.n));
                  for (int l = 1; l <= model.m; ++l)
                    amb[static_cast<std::size_t>(1 + model.k + l)] = l == i ? Number(0) : Number(sampler.rational(true));
                  auto p = invariant_point(model, amb);
                  Number s = sampler.rational(true);
                  auto q = exp_derivation(model.find(name).invariant, s).apply_to_point(p);
                  check_on_variety(*model.invariant, q);
                  bool moved = !q[model.invariant_index(0, i)].is_zero();
                  for (int l = 1; l <= model.m; ++l)
                    if (l != i) moved = moved && q[model.invariant_index(0, l)] == p[model.invariant_index(0, l)];
                  ok = ok && moved;
                  if (e.witnesses.size() < 2)
                    e.witnesses.push_back(Json{{"derivation", name},
                                               {"s", number_to_json(s)},
                                               {"from", point_to_json(p)},
                                               {"to", point_to_json(q)}});
                }
              e.status = verdict(ok);
            });

  suite.run("exp.group_law", "exp(s d) exp(t d) = exp((s+t) d), exp(s d) exp(-s d) = id, relations preserved",
            "exponentials of LNDs are automorphisms", [&](CensusEntry& e) {
              bool ok = true;
              for (const auto& c : model.catalog) {
                for (int t = 0; t < 5; ++t) {
                  Number s = sampler.rational(false), u = sampler.rational(false);
                  auto es = exp_derivation(c.invariant, s, opt.nilpotency_cap);
                  auto eu = exp_derivation(c.invariant, u, opt.nilpotency_cap);
                  ok = ok && compose(es, eu).equivalent(exp_derivation(c.invariant, s + u, opt.nilpotency_cap));
                  ok = ok && compose(es, exp_derivation(c.invariant, -s, opt.nilpotency_cap))
                                 .equivalent(identity_automorphism(model.invariant));
                  ok = ok && es.preserves_relations();
                }
              }
              e.status = verdict(ok);
              e.details = "5 parameter pairs per catalog derivation";
            });

  suite.run("exp.rank_invariance", "the rank of all catalog fields is constant along exp orbits",
            "automorphisms preserve the orbit stratification", [&](CensusEntry& e) {
              std::vector<Derivation> all;
              for (const auto& c : model.catalog) all.push_back(c.invariant);
              std::vector<std::vector<Number>> starts(generic.begin(), generic.begin() + std::min<std::ptrdiff_t>(3, static_cast<std::ptrdiff_t>(generic.size())));
              if (model.has_quartic_roots()) starts.push_back(u1_sample(model, sampler));
              starts.push_back(l_points.front());
              auto pattern = [](const std::vector<Number>& v) {
                std::vector<bool> z;
                for (std::size_t i = 1; i < v.size(); ++i) z.push_back(v[i].is_zero());
                return z;
              };
              bool ok = true;
              std::size_t resampled = 0, skipped = 0;
              for (const auto& p : starts) {
                auto base = tangent_rank(all, p);
                for (const auto& c : model.catalog) {
                  // The catalog is not closed under conjugation, so only parameters that keep
                  // the zero pattern of the coordinates are comparable.
                  std::vector<Number> q;
                  for (int attempt = 0; attempt < 32; ++attempt) {
                    Number s = sampler.rational(true);
                    q = exp_derivation(c.invariant, s, opt.nilpotency_cap).apply_to_point(p);
                    if (pattern(q) == pattern(p)) break;
                    ++resampled;
                  }
                  if (pattern(q) != pattern(p)) {
                    ++skipped;
                    continue;
                  }
                  auto r = tangent_rank(all, q);
                  if (r != base) {
                    ok = false;
                    e.details = c.name + " changes the rank from " + std::to_string(base) + " to " + std::to_string(r);
                  }
                }
                e.witnesses.push_back(Json{{"point", point_to_json(p)}, {"rank", base}});
              }
              e.status = verdict(ok);
              if (ok)
                e.details = std::to_string(resampled) + " parameters redrawn and " + std::to_string(skipped) +
                            " pairs skipped because the zero pattern changed";
            });

  const std::string evidence = "point-level evidence: rank.generic, rank.u1, dcover.samples, exp.moving";
  suite.run("theorem.regular_orbits", "the regular locus has five SAut-orbits: the complement of D and U_1..U_4",
            "orbit decomposition of the regular locus", [&](CensusEntry& e) {
              e.status = ClaimStatus::Unverifiable;
              e.details = "a statement about all LNDs; " + evidence;
            });
  suite.run("theorem.singular_line", "the singular locus is the line L of SAut-fixed points", "singular locus",
            [&](CensusEntry& e) {
              e.status = ClaimStatus::Unverifiable;
              e.details = "fixedness under every LND is not finitely checkable; evidence: fields.vanish_on_L, singular.L";
            });
  suite.run("theorem.aut_orbits", "multiplying w_i by fourth roots of unity fuses U_1..U_4 into one Aut-orbit",
            "orbits of the full automorphism group", [&](CensusEntry& e) {
              e.status = ClaimStatus::Unverifiable;
              e.details = "group-theoretic statement outside finite computation";
            });
  return report;
}

CensusReport verify_xm(const XmModel& model, const CensusOptions& opt) {
  auto r = verify_construction(model, opt);
  r.suite = "xm";
  r.append(verify_census(model, opt));
  return r;
}

}  // namespace flexcheck
