#include "flexcheck/scenario.hpp"

#include <sstream>

namespace flexcheck {

namespace {

const Json& required(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(std::string("scenario is missing \"") + key + "\"");
  return j.at(key);
}

std::vector<std::string> string_list(const Json& j, const char* what) {
  if (!j.is_array()) throw Error(std::string(what) + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& x : j) {
    if (!x.is_string()) throw Error(std::string(what) + " must be an array of strings");
    out.push_back(x.get<std::string>());
  }
  return out;
}

std::vector<Polynomial> parse_all(const Ring& ring, const std::vector<std::string>& texts) {
  std::vector<Polynomial> out;
  for (const auto& t : texts) out.push_back(ring.parse(t));
  return out;
}

Json polys_to_json(const Ring& ring, const std::vector<Polynomial>& ps) {
  Json a = Json::array();
  for (const auto& p : ps) a.push_back(ring.format(p));
  return a;
}

Json images_to_json(const Derivation& d) {
  Json o = Json::object();
  const auto& ring = d.algebra()->ring();
  for (std::size_t i = 0; i < d.images().size(); ++i)
    if (!d.image(i).is_zero()) o[ring.name(i)] = ring.format(d.image(i));
  return o;
}

Derivation images_from_json(const AlgebraPtr& alg, const Json& j) {
  if (!j.is_object()) throw Error("derivation images must be an object {variable: polynomial}");
  std::map<std::string, std::string> m;
  for (const auto& [k, v] : j.items()) {
    if (!v.is_string() && !v.is_number_integer()) throw Error("image of " + k + " must be a polynomial string");
    m[k] = v.is_string() ? v.get<std::string>() : std::to_string(v.get<long>());
  }
  return Derivation::from_strings(alg, m);
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

}  // namespace

Json number_to_json(const Number& x) {
  if (x.is_rational() && x.rational_part().get_den() == 1 && x.rational_part().get_num().fits_slong_p())
    return Json(x.rational_part().get_num().get_si());
  return Json(x.to_string());
}

Number number_from_json(const Json& j, const Ring& ring) {
  if (j.is_number_integer()) return Number(j.get<long>());
  if (j.is_string()) return ring.parse_number(j.get<std::string>());
  throw Error("expected a number, got " + j.dump());
}

Json point_to_json(const std::vector<Number>& p) {
  Json a = Json::array();
  for (const auto& x : p) a.push_back(number_to_json(x));
  return a;
}

Scenario scenario_from_json(const Json& j) {
  Scenario s;
  if (j.contains("name")) s.name = j.at("name").get<std::string>();
  bool allow_e = true;
  if (j.contains("field")) {
    auto f = j.at("field").get<std::string>();
    if (f == "Q") allow_e = false;
    else if (f != "Q(e,e^4=-1)") throw Error("unknown field \"" + f + "\" (expected \"Q\" or \"Q(e,e^4=-1)\")");
  }
  Ring ring(string_list(required(j, "variables"), "variables"), allow_e);
  auto relations = j.contains("relations") ? parse_all(ring, string_list(j.at("relations"), "relations"))
                                           : std::vector<Polynomial>{};
  std::optional<AmbientModel> model;
  if (j.contains("ambient")) {
    const auto& a = j.at("ambient");
    Ring aring(string_list(required(a, "variables"), "ambient variables"), allow_e);
    auto arels = a.contains("relations") ? parse_all(aring, string_list(a.at("relations"), "ambient relations"))
                                         : std::vector<Polynomial>{};
    AmbientModel m;
    m.algebra = PresentedAlgebra::create(aring, std::move(arels));
    const auto& gens = required(a, "generators");
    for (const auto& name : ring.names()) {
      if (!gens.contains(name)) throw Error("ambient model gives no expression for " + name);
      m.generators.push_back(aring.parse(gens.at(name).get<std::string>()));
    }
    m.torus_weights = required(a, "weights").get<std::vector<long>>();
    model = std::move(m);
  }
  s.algebra = PresentedAlgebra::create(ring, std::move(relations), std::move(model));

  if (j.contains("derivations"))
    for (const auto& [name, images] : j.at("derivations").items())
      s.derivations.emplace_back(name, images_from_json(s.algebra, images));
  if (j.contains("ambient_derivations")) {
    if (!s.algebra->ambient()) throw Error("ambient_derivations given without an ambient model");
    for (const auto& [name, images] : j.at("ambient_derivations").items())
      s.ambient_derivations.emplace_back(name, images_from_json(s.algebra->ambient()->algebra, images));
  }
  if (j.contains("gradings"))
    for (const auto& [name, g] : j.at("gradings").items()) {
      GradingSpec spec;
      spec.rank = g.contains("rank") ? g.at("rank").get<std::size_t>() : 1;
      const auto& degs = required(g, "degrees");
      for (const auto& var : ring.names()) {
        if (!degs.contains(var)) throw Error("grading " + name + " gives no degree for " + var);
        const auto& d = degs.at(var);
        spec.degrees.push_back(d.is_array() ? vector_from_json(d) : LatticeVector{d.get<long>()});
      }
      spec.validate(*s.algebra);
      s.gradings.emplace_back(name, std::move(spec));
    }
  if (j.contains("points"))
    for (const auto& [name, coords] : j.at("points").items()) {
      std::vector<Number> p;
      for (const auto& c : coords) p.push_back(number_from_json(c, ring));
      check_on_variety(*s.algebra, p);
      s.points.emplace_back(name, std::move(p));
    }
  if (j.contains("checks")) s.checks = string_list(j.at("checks"), "checks");
  return s;
}

Json scenario_to_json(const Scenario& s) {
  const auto& ring = s.algebra->ring();
  Json j = Json::object();
  if (!s.name.empty()) j["name"] = s.name;
  j["field"] = ring.allows_epsilon() ? "Q(e,e^4=-1)" : "Q";
  j["variables"] = ring.names();
  j["relations"] = polys_to_json(ring, s.algebra->relations());
  if (const auto& m = s.algebra->ambient()) {
    const auto& aring = m->algebra->ring();
    Json gens = Json::object();
    for (std::size_t i = 0; i < m->generators.size(); ++i) gens[ring.name(i)] = aring.format(m->generators[i]);
    j["ambient"] = Json{{"variables", aring.names()},
                        {"relations", polys_to_json(aring, m->algebra->relations())},
                        {"generators", gens},
                        {"weights", m->torus_weights}};
  }
  Json ds = Json::object();
  for (const auto& [n, d] : s.derivations) ds[n] = images_to_json(d);
  j["derivations"] = ds;
  if (!s.ambient_derivations.empty()) {
    Json as = Json::object();
    for (const auto& [n, d] : s.ambient_derivations) as[n] = images_to_json(d);
    j["ambient_derivations"] = as;
  }
  Json gs = Json::object();
  for (const auto& [n, g] : s.gradings) {
    Json degs = Json::object();
    for (std::size_t i = 0; i < g.degrees.size(); ++i)
      degs[ring.name(i)] = g.rank == 1 ? integer_to_json(g.degrees[i][0]) : vector_to_json(g.degrees[i]);
    gs[n] = Json{{"rank", g.rank}, {"degrees", degs}};
  }
  j["gradings"] = gs;
  Json ps = Json::object();
  for (const auto& [n, p] : s.points) ps[n] = point_to_json(p);
  j["points"] = ps;
  if (!s.checks.empty()) j["checks"] = s.checks;
  return j;
}

namespace {

std::vector<std::string> split_terms(const std::string& text, char sep, const std::string& what) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto pos = text.find(sep, start);
    auto part = trim(text.substr(start, pos == std::string::npos ? std::string::npos : pos - start));
    if (part.empty()) throw Error("empty term in " + what + " \"" + text + "\"");
    out.push_back(part);
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

Derivation derivation_expression(const Scenario& s, const std::string& expr) {
  Derivation sum = Derivation::zero(s.algebra);
  for (const auto& part : split_terms(expr, '+', "derivation expression"))
    sum = sum + find_named(s.derivations, part, "derivation");
  return sum;
}

std::vector<Derivation> derivation_list(const Scenario& s, const std::string& list) {
  std::vector<Derivation> out;
  for (const auto& part : split_terms(list, ',', "derivation list")) out.push_back(derivation_expression(s, part));
  return out;
}

}  // namespace flexcheck
