#include "flexcheck/report_io.hpp"

#include <algorithm>
#include <climits>
#include <sstream>

namespace flexcheck {

Json integer_to_json(const Integer& x) {
  if (x.fits_slong_p()) return Json(x.get_si());
  return Json(x.get_str());
}

Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) return Integer(j.get<long>());
  if (j.is_string()) {
    Integer x;
    if (x.set_str(j.get<std::string>(), 10) != 0) throw Error("malformed integer \"" + j.get<std::string>() + "\"");
    return x;
  }
  throw Error("expected an integer, got " + j.dump());
}

Json vector_to_json(const LatticeVector& v) {
  Json a = Json::array();
  for (std::size_t i = 0; i < v.size(); ++i) a.push_back(integer_to_json(v[i]));
  return a;
}

LatticeVector vector_from_json(const Json& j) {
  if (!j.is_array()) throw Error("expected an integer vector, got " + j.dump());
  std::vector<Integer> c;
  for (const auto& x : j) c.push_back(integer_from_json(x));
  return LatticeVector(std::move(c));
}

namespace {

Json vectors_to_json(const std::vector<LatticeVector>& vs) {
  Json a = Json::array();
  for (const auto& v : vs) a.push_back(vector_to_json(v));
  return a;
}

std::vector<LatticeVector> vectors_from_json(const Json& j) {
  if (!j.is_array()) throw Error("expected a list of vectors, got " + j.dump());
  std::vector<LatticeVector> out;
  for (const auto& x : j) out.push_back(vector_from_json(x));
  return out;
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

Answer answer_from(const std::string& s) {
  if (s == "yes") return Answer::Yes;
  if (s == "no") return Answer::No;
  if (s == "unknown") return Answer::Unknown;
  throw Error("unknown verdict \"" + s + "\"");
}

Smoothness smoothness_from(const std::string& s) {
  for (auto v : {Smoothness::Smooth, Smoothness::Singular, Smoothness::Unknown, Smoothness::Undetermined})
    if (to_string(v) == s) return v;
  throw Error("unknown smoothness \"" + s + "\"");
}

std::string join(const std::vector<LatticeVector>& vs, const std::string& sep = " ") {
  std::string out;
  for (std::size_t i = 0; i < vs.size(); ++i) out += (i ? sep : "") + vs[i].to_string();
  return out;
}

std::string status_name(const FaceSaturationVerdict& v) {
  if (std::holds_alternative<AlmostSaturated>(v)) return "almost saturated";
  if (std::holds_alternative<NowhereSaturatedCertified>(v)) return "nowhere saturated (certified)";
  return "no saturation point found";
}

std::string status_detail(const FaceSaturationVerdict& v) {
  if (auto* a = std::get_if<AlmostSaturated>(&v)) return "witness " + a->witness.to_string();
  if (auto* c = std::get_if<NowhereSaturatedCertified>(&v))
    return "checked to degree " + std::to_string(c->checked_up_to);
  return "searched to degree " + std::to_string(std::get<NowhereSaturatedUpTo>(v).bound);
}

std::string verdict_line(const Verdict& v) {
  std::string s = to_string(v.answer);
  if (v.answer == Answer::Unknown) s += " (up to degree " + std::to_string(v.bound) + ")";
  if (!v.witnesses.empty()) s += "  " + join(v.witnesses);
  return s;
}

std::string table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& r : rows)
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (width.size() <= i) width.push_back(0);
      width[i] = std::max(width[i], r[i].size());
    }
  std::ostringstream out;
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t i = 0; i < r.size(); ++i) {
      line += r[i];
      if (i + 1 < r.size()) line += std::string(width[i] - r[i].size() + 2, ' ');
    }
    out << line << '\n';
  }
  return out.str();
}

}  // namespace

Json certificate_to_json(const HoleFamilyCertificate& c) {
  Json entries = Json::array();
  for (const auto& e : c.entries)
    entries.push_back(Json{{"functional", vector_to_json(e.functional)},
                           {"modulus", integer_to_json(e.modulus)},
                           {"residue", integer_to_json(e.residue)},
                           {"offset", vector_to_json(e.offset)}});
  return Json{{"face_normal", vector_to_json(c.face_normal)}, {"entries", entries}, {"check_bound", c.check_bound}};
}

HoleFamilyCertificate certificate_from_json(const Json& j) {
  HoleFamilyCertificate c;
  c.face_normal = vector_from_json(field(j, "face_normal"));
  for (const auto& e : field(j, "entries")) {
    HoleFamilyCertificate::Entry entry;
    entry.functional = vector_from_json(field(e, "functional"));
    entry.modulus = integer_from_json(field(e, "modulus"));
    entry.residue = e.contains("residue") ? integer_from_json(e.at("residue")) : Integer(0);
    entry.offset = vector_from_json(field(e, "offset"));
    if (sgn(entry.modulus) <= 0) throw Error("certificate modulus must be positive");
    c.entries.push_back(std::move(entry));
  }
  if (j.contains("check_bound")) c.check_bound = j.at("check_bound").get<long>();
  return c;
}

Json face_verdict_to_json(const FaceSaturationVerdict& v) {
  if (auto* a = std::get_if<AlmostSaturated>(&v))
    return Json{{"status", "almost_saturated"}, {"witness", vector_to_json(a->witness)}};
  if (auto* c = std::get_if<NowhereSaturatedCertified>(&v))
    return Json{{"status", "nowhere_saturated_certified"},
                {"checked_up_to", c->checked_up_to},
                {"certificate", certificate_to_json(c->certificate)}};
  return Json{{"status", "nowhere_saturated_up_to"}, {"bound", std::get<NowhereSaturatedUpTo>(v).bound}};
}

FaceSaturationVerdict face_verdict_from_json(const Json& j) {
  const auto status = field(j, "status").get<std::string>();
  if (status == "almost_saturated") return AlmostSaturated{vector_from_json(field(j, "witness"))};
  if (status == "nowhere_saturated_certified")
    return NowhereSaturatedCertified{certificate_from_json(field(j, "certificate")),
                                     field(j, "checked_up_to").get<long>()};
  if (status == "nowhere_saturated_up_to") return NowhereSaturatedUpTo{field(j, "bound").get<long>()};
  throw Error("unknown face status \"" + status + "\"");
}

Json verdict_to_json(const Verdict& v) {
  return Json{{"answer", to_string(v.answer)}, {"bound", v.bound}, {"witnesses", vectors_to_json(v.witnesses)}};
}

Verdict verdict_from_json(const Json& j) {
  return Verdict{answer_from(field(j, "answer").get<std::string>()), field(j, "bound").get<long>(),
                 vectors_from_json(field(j, "witnesses"))};
}

Json orbit_census_to_json(const std::vector<OrbitEntry>& census) {
  Json a = Json::array();
  for (const auto& e : census)
    a.push_back(Json{{"face_rays", vectors_to_json(e.face_rays)},
                     {"face_dim", e.face_dim},
                     {"orbit_dim", e.orbit_dim},
                     {"dual_face_rays", vectors_to_json(e.dual_face_rays)},
                     {"weight_complement", vectors_to_json(e.weight_complement)},
                     {"smoothness", to_string(e.smoothness)}});
  return a;
}

Json report_to_json(const ToricReport& r) {
  Json j;
  j["rank"] = r.rank;
  j["generators"] = vectors_to_json(r.generators);
  j["degenerate"] = r.degenerate;
  j["grading"] = vector_to_json(r.grading);
  j["bound"] = r.bound;
  Json rays = Json::array();
  for (const auto& s : r.rays)
    rays.push_back(Json{{"ray", vector_to_json(s.ray)},
                        {"dual_face_rays", vectors_to_json(s.dual_face_rays)},
                        {"face_status", face_verdict_to_json(s.status)},
                        {"smoothness", to_string(s.smoothness)}});
  j["rays"] = rays;
  auto opt = [](const std::optional<Verdict>& v) { return v ? verdict_to_json(*v) : Json(nullptr); };
  j["flexible"] = opt(r.flexible);
  j["invariant_divisor"] = opt(r.invariant_divisor);
  j["combined"] = opt(r.combined);
  return j;
}

ToricReport report_from_json(const Json& j) {
  ToricReport r;
  r.rank = field(j, "rank").get<std::size_t>();
  r.generators = vectors_from_json(field(j, "generators"));
  r.degenerate = field(j, "degenerate").get<bool>();
  r.grading = vector_from_json(field(j, "grading"));
  r.bound = field(j, "bound").get<long>();
  for (const auto& s : field(j, "rays"))
    r.rays.push_back(RayStatus{vector_from_json(field(s, "ray")), vectors_from_json(field(s, "dual_face_rays")),
                               face_verdict_from_json(field(s, "face_status")),
                               smoothness_from(field(s, "smoothness").get<std::string>())});
  auto opt = [&](const char* key) -> std::optional<Verdict> {
    const Json& v = field(j, key);
    if (v.is_null()) return std::nullopt;
    return verdict_from_json(v);
  };
  r.flexible = opt("flexible");
  r.invariant_divisor = opt("invariant_divisor");
  r.combined = opt("combined");
  return r;
}

std::string report_to_text(const ToricReport& r) {
  std::ostringstream out;
  out << table({{"rank", std::to_string(r.rank)},
                {"generators", join(r.generators)},
                {"grading", r.grading.to_string()},
                {"bound", std::to_string(r.bound)},
                {"degenerate", r.degenerate ? "yes" : "no"}});
  if (r.degenerate) {
    out << "\nverdicts refused: the cone of the monoid contains a line\n";
    return out.str();
  }
  std::vector<std::vector<std::string>> rows{{"ray", "dual face", "status", "detail", "orbit"}};
  for (const auto& s : r.rays)
    rows.push_back({s.ray.to_string(), join(s.dual_face_rays, ","), status_name(s.status), status_detail(s.status),
                    to_string(s.smoothness)});
  out << '\n' << table(rows) << '\n';
  out << table({{"flexible", r.flexible ? verdict_line(*r.flexible) : "-"},
                {"invariant divisor", r.invariant_divisor ? verdict_line(*r.invariant_divisor) : "-"},
                {"combined", r.combined ? verdict_line(*r.combined) : "-"}});
  return out.str();
}

MonoidInput monoid_input_from_json(const Json& j) {
  MonoidInput m;
  m.rank = field(j, "rank").get<std::size_t>();
  m.generators = vectors_from_json(field(j, "generators"));
  for (const auto& g : m.generators)
    if (g.size() != m.rank) throw Error("generator " + g.to_string() + " does not have rank " + std::to_string(m.rank));
  if (j.contains("predicate") && !j.at("predicate").is_null())
    m.predicate = field(j.at("predicate"), "type").get<std::string>();
  if (j.contains("certificates"))
    for (const auto& c : j.at("certificates")) m.certificates.push_back(certificate_from_json(c));
  return m;
}

Json monoid_input_to_json(const MonoidInput& m) {
  Json j;
  j["rank"] = m.rank;
  j["generators"] = vectors_to_json(m.generators);
  if (m.predicate) j["predicate"] = Json{{"type", *m.predicate}};
  if (!m.certificates.empty()) {
    Json cs = Json::array();
    for (const auto& c : m.certificates) cs.push_back(certificate_to_json(c));
    j["certificates"] = cs;
  }
  return j;
}

}  // namespace flexcheck
