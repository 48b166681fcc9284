#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "flexcheck/derivation.hpp"
#include "flexcheck/monoid.hpp"
#include "flexcheck/report_io.hpp"
#include "flexcheck/scenario.hpp"

namespace flexcheck {

// ---------------------------------------------------------------------------
// The non-normal toric example: P = {a,b,c >= 0, a+b > c} u {(a,b,a+b), a even}.

MembershipPredicate example3_predicate();
std::vector<LatticeVector> example3_generators();
/// Certificate that the face orthogonal to (1,1,-1) is nowhere saturated.
HoleFamilyCertificate example3_certificate();
/// monoid.json content of the built-in "example3" scenario.
MonoidInput example3_input();

// ---------------------------------------------------------------------------
// X_m: invariants of K^x acting on {x y^n = z_1^n + ... + z_k^n} x A^m.

struct CatalogDerivation {
  std::string name;
  Derivation ambient;
  Derivation invariant;
  /// Unipotent catalog member (all of them here); kept for reports.
  bool lnd = true;
};

struct XmModel {
  int n = 4, k = 2, m = 2;
  AlgebraPtr ambient;
  AlgebraPtr invariant;
  /// Torus grading on the ambient variables.
  GradingSpec g_ambient;
  /// Torus grading pulled back to the invariant generators (all zero).
  GradingSpec g_invariant;
  GradingSpec f;
  GradingSpec z2;
  std::vector<CatalogDerivation> catalog;

  int dimension() const { return k + m; }
  std::size_t generator_count() const { return invariant->size(); }
  const CatalogDerivation& find(const std::string& name) const;
  /// Name of the invariant generator for variable `row` (0 = y, j = z_j) and column i (1-based).
  std::string invariant_name(int row, int column) const;
  std::size_t invariant_index(int row, int column) const;
  /// Ideal (y_1, ..., y_m) of D.
  std::vector<Polynomial> d_ideal() const;
  /// Ideal of D_j = {y_i = z_i + e_j w_i = 0}, e_j = e^(2j-1); only for n = 4, k = 2.
  std::vector<Polynomial> dj_ideal(int j) const;
  std::string rho_name(int i, int j) const;
  bool has_quartic_roots() const { return n == 4 && k == 2; }
  /// Fields used for the generic rank: delta_{z_j} then rho_12, rho_21, rho_31, ..., rho_m1.
  std::vector<std::string> generic_field_names() const;
  /// Fields used on U_1: delta_z then the rho's.
  std::vector<std::string> u1_field_names() const;
  std::vector<Derivation> fields(const std::vector<std::string>& names) const;
};

XmModel build_xm(int m);
XmModel build_xm_general(int n, int k, int m);

/// Kernel of the invariant presentation computed by elimination.
std::vector<Polynomial> eliminated_relations(const XmModel& model, double effort_seconds = default_effort_cap());

/// Deterministic small-height samples; independent of the standard
/// distributions so that every platform draws the same values.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}
  std::uint64_t next(std::uint64_t bound) { return rng_() % bound; }
  Rational rational(bool nonzero);
  /// Element of Q(e) with small coefficients.
  Number number(bool nonzero);

 private:
  std::mt19937_64 rng_;
};

/// Invariant coordinates of an ambient point (x, y, z_1..z_k, u_1..u_m).
std::vector<Number> invariant_point(const XmModel& model, const std::vector<Number>& ambient_point);
/// Generic point: every ambient coordinate nonzero, x solved from the relation.
std::vector<Number> generic_sample(const XmModel& model, Sampler& s);
/// Point of U_1 = D_1 \ L: y = 0, w = e^3 z.
std::vector<Number> u1_sample(const XmModel& model, Sampler& s);
/// Point (x, 0, ..., 0) of L.
std::vector<Number> l_sample(const XmModel& model, Sampler& s);
/// Point with y = 0 over Q(e): z random, w = e^k z for a random odd k.
std::vector<Number> d_sample(const XmModel& model, Sampler& s);
/// j with z_i + e_j w_i = 0 for all i, if any.
std::optional<int> d_component(const XmModel& model, const std::vector<Number>& p);

/// Built-in scenario for the derive commands.
Scenario xm_scenario(const XmModel& model, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Claim reports.

enum class ClaimStatus { Verified, Refuted, Unknown, Unverifiable };
std::string to_string(ClaimStatus s);
ClaimStatus claim_status_from_string(const std::string& s);

struct CensusEntry {
  std::string id;
  std::string claim;
  /// Where the claim comes from, in words.
  std::string locus;
  ClaimStatus status = ClaimStatus::Unknown;
  Json witnesses = Json::array();
  std::string details;
  std::optional<double> seconds;

  friend bool operator==(const CensusEntry&, const CensusEntry&) = default;
};

struct CensusReport {
  std::string suite;
  Json parameters = Json::object();
  std::vector<CensusEntry> entries;

  std::size_t count(ClaimStatus s) const;
  bool has_refuted() const { return count(ClaimStatus::Refuted) > 0; }
  const CensusEntry* find(const std::string& id) const;
  void append(const CensusReport& other);

  friend bool operator==(const CensusReport&, const CensusReport&) = default;
};

Json census_to_json(const CensusReport& r);
CensusReport census_from_json(const Json& j);
std::string census_to_text(const CensusReport& r);

struct CensusOptions {
  std::uint64_t seed = 1;
  std::size_t samples = 20;
  std::size_t u_samples = 10;
  std::size_t l_samples = 10;
  std::size_t d_samples = 100;
  bool eliminate = true;
  bool timings = false;
  double effort_seconds = default_effort_cap();
  std::size_t nilpotency_cap = kDefaultNilpotencyCap;
};

CensusReport verify_construction(const XmModel& model, const CensusOptions& opt = {});
CensusReport verify_census(const XmModel& model, const CensusOptions& opt = {});
/// Construction and census suites in one report.
CensusReport verify_xm(const XmModel& model, const CensusOptions& opt = {});
CensusReport verify_example3(long bound, const CensusOptions& opt = {});

/// Parses "xm:m=3" or "xm-general:n=5,k=3,m=2".
XmModel xm_from_name(const std::string& name);
bool is_xm_name(const std::string& name);

}  // namespace flexcheck
