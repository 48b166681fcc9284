#pragma once

#include <string>
#include <utility>
#include <vector>

#include "flexcheck/derivation.hpp"
#include "flexcheck/report_io.hpp"

namespace flexcheck {

template <class T>
using NamedList = std::vector<std::pair<std::string, T>>;

/// Looks up `name`; throws listing the available names.
template <class T>
const T& find_named(const NamedList<T>& list, const std::string& name, const char* what) {
  for (const auto& [n, v] : list)
    if (n == name) return v;
  std::string known;
  for (const auto& [n, _] : list) known += (known.empty() ? "" : ", ") + n;
  throw Error(std::string("unknown ") + what + " \"" + name + "\" (known: " + known + ")");
}

/// An algebra with named derivations, gradings and points, as read from
/// scenario.json.
struct Scenario {
  std::string name;
  AlgebraPtr algebra;
  NamedList<Derivation> derivations;
  /// Ambient forms, keyed like `derivations`, when the algebra has an ambient model.
  NamedList<Derivation> ambient_derivations;
  NamedList<GradingSpec> gradings;
  NamedList<std::vector<Number>> points;
  std::vector<std::string> checks;
};

/// Schema:
///   { "field": "Q" | "Q(e,e^4=-1)", "variables": [..], "relations": [..],
///     "ambient": { "variables", "relations", "generators": {var: poly}, "weights": [..] },
///     "derivations": {name: {var: poly}}, "ambient_derivations": {name: {var: poly}},
///     "gradings": {name: {"rank": k, "degrees": {var: int | [ints]}}},
///     "points": {name: [number strings]}, "checks": [..] }
Scenario scenario_from_json(const Json& j);
Json scenario_to_json(const Scenario& s);

/// "dz+rho12": sum of named derivations.
Derivation derivation_expression(const Scenario& s, const std::string& expr);
/// "dz,dw,rho12": list of derivation expressions.
std::vector<Derivation> derivation_list(const Scenario& s, const std::string& list);

Json number_to_json(const Number& x);
Number number_from_json(const Json& j, const Ring& ring);
Json point_to_json(const std::vector<Number>& p);

}  // namespace flexcheck
