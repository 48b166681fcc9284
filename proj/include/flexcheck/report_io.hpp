#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "flexcheck/toric.hpp"

namespace flexcheck {

using Json = nlohmann::ordered_json;

Json integer_to_json(const Integer& x);
Integer integer_from_json(const Json& j);

Json vector_to_json(const LatticeVector& v);
LatticeVector vector_from_json(const Json& j);

Json certificate_to_json(const HoleFamilyCertificate& c);
HoleFamilyCertificate certificate_from_json(const Json& j);

Json face_verdict_to_json(const FaceSaturationVerdict& v);
FaceSaturationVerdict face_verdict_from_json(const Json& j);

Json verdict_to_json(const Verdict& v);
Verdict verdict_from_json(const Json& j);

Json orbit_census_to_json(const std::vector<OrbitEntry>& census);

Json report_to_json(const ToricReport& r);
ToricReport report_from_json(const Json& j);

/// Aligned-column plain text rendering.
std::string report_to_text(const ToricReport& r);

/// Parsed monoid.json input.
struct MonoidInput {
  std::size_t rank = 0;
  std::vector<LatticeVector> generators;
  std::optional<std::string> predicate;  // built-in predicate name
  std::vector<HoleFamilyCertificate> certificates;
};

MonoidInput monoid_input_from_json(const Json& j);
Json monoid_input_to_json(const MonoidInput& m);

}  // namespace flexcheck
