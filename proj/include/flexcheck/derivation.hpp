#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "flexcheck/groebner.hpp"
#include "flexcheck/lattice.hpp"
#include "flexcheck/polynomial.hpp"

namespace flexcheck {

class PresentedAlgebra;
using AlgebraPtr = std::shared_ptr<const PresentedAlgebra>;

/// Realization of an algebra as invariants of a rank-one torus acting on a
/// larger presented algebra.
struct AmbientModel {
  AlgebraPtr algebra;
  /// Expression of each generator of the presented algebra in ambient variables.
  std::vector<Polynomial> generators;
  /// Torus weight of each ambient variable.
  std::vector<long> torus_weights;
};

/// K[x_1..x_r]/I for I generated by `relations`.
class PresentedAlgebra {
 public:
  /// Validates the ambient model: torus weight 0 for every generator
  /// expression and every relation vanishing modulo the ambient relations.
  static AlgebraPtr create(Ring ring, std::vector<Polynomial> relations, std::optional<AmbientModel> ambient = {});

  const Ring& ring() const { return ring_; }
  std::size_t size() const { return ring_.size(); }
  const std::vector<Polynomial>& relations() const { return relations_; }
  const std::optional<AmbientModel>& ambient() const { return ambient_; }

  /// Reduced Groebner basis of the relation ideal, computed once.
  const std::vector<Polynomial>& basis() const;
  /// Canonical representative modulo the relations.
  Polynomial reduce(const Polynomial& f) const;
  bool in_ideal(const Polynomial& f) const { return reduce(f).is_zero(); }

 private:
  PresentedAlgebra() = default;

  Ring ring_;
  std::vector<Polynomial> relations_;
  std::optional<AmbientModel> ambient_;
  mutable std::once_flag basis_once_;
  mutable std::vector<Polynomial> basis_;
};

/// Degree of every generator in Z^rank.
struct GradingSpec {
  std::size_t rank = 1;
  std::vector<LatticeVector> degrees;

  static GradingSpec from_longs(const std::vector<long>& degrees);
  LatticeVector degree(const Monomial& m) const;
  /// Degree if f is nonzero and homogeneous.
  std::optional<LatticeVector> homogeneous_degree(const Polynomial& f) const;
  /// Throws unless the grading has one degree per generator and every
  /// relation is homogeneous.
  void validate(const PresentedAlgebra& algebra) const;
};

class Derivation {
 public:
  Derivation(AlgebraPtr algebra, std::vector<Polynomial> images);
  static Derivation zero(AlgebraPtr algebra);
  /// Images given as strings keyed by variable name; unnamed variables map to 0.
  static Derivation from_strings(AlgebraPtr algebra, const std::map<std::string, std::string>& images);

  const AlgebraPtr& algebra() const { return algebra_; }
  const std::vector<Polynomial>& images() const { return images_; }
  const Polynomial& image(std::size_t i) const { return images_.at(i); }
  bool is_zero() const;

  /// Leibniz extension: sum of df/dx_i * delta(x_i), not reduced.
  Polynomial operator()(const Polynomial& f) const;

  Derivation operator+(const Derivation& o) const;
  Derivation operator-(const Derivation& o) const;
  Derivation scaled(const Number& c) const;
  /// Same images as elements of the algebra.
  bool equivalent(const Derivation& o) const;

 private:
  AlgebraPtr algebra_;
  std::vector<Polynomial> images_;
};

Polynomial derive(const Derivation& d, const Polynomial& f);

struct RelationCheck {
  bool preserved = true;
  std::optional<std::size_t> failing;
  Polynomial residue;
};

/// delta(r) lies in the ideal for every relation r.
RelationCheck preserves_relations(const Derivation& d);

/// Ambient derivation `ambient` restricts to `d` on the generator
/// expressions of d's algebra; `failing` names a generator index.
RelationCheck restricts_to(const Derivation& ambient, const Derivation& d);

/// delta maps the ideal (algebra relations + `ideal`) into itself.
RelationCheck preserves_ideal(const Derivation& d, const std::vector<Polynomial>& ideal);

struct NilpotencyResult {
  bool nilpotent = false;
  std::size_t cap = 0;
  /// Smallest n with delta^n(x_i) = 0, per generator; 0 where not reached.
  std::vector<std::size_t> chain_lengths;
  /// First generator whose chain did not terminate.
  std::optional<std::size_t> stuck;
};

constexpr std::size_t kDefaultNilpotencyCap = 64;

NilpotencyResult is_locally_nilpotent_bounded(const Derivation& d, std::size_t cap = kDefaultNilpotencyCap);

/// Homogeneous components keyed by degree; the zero derivation has none.
std::map<LatticeVector, Derivation> graded_decompose(const Derivation& d, const GradingSpec& g);

/// Degree of d if it is nonzero and homogeneous.
std::optional<LatticeVector> derivation_degree(const Derivation& d, const GradingSpec& g);

/// Vertices of the convex hull of the degrees, lexicographically sorted.
std::vector<LatticeVector> support_vertices(const std::map<LatticeVector, Derivation>& decomposition);
std::vector<LatticeVector> support_vertices(const std::vector<LatticeVector>& points);

/// delta(x_i) = deg(x_i) * x_i for a Z-grading.
Derivation semisimple_from_grading(AlgebraPtr algebra, const GradingSpec& g);

/// Algebra endomorphism x_i -> images[i].
struct Automorphism {
  AlgebraPtr algebra;
  std::vector<Polynomial> images;
  std::optional<std::vector<Polynomial>> inverse;

  Polynomial apply(const Polynomial& f) const;
  /// Point map induced on the variety: coordinates images[i](p).
  std::vector<Number> apply_to_point(const std::vector<Number>& p) const;
  bool preserves_relations() const;
  /// Same images modulo the relations.
  bool equivalent(const Automorphism& o) const;
};

Automorphism identity_automorphism(AlgebraPtr algebra);
/// (a o b)(x) = a(b(x)).
Automorphism compose(const Automorphism& a, const Automorphism& b);

/// exp(s delta); throws unless delta is shown nilpotent within `cap` steps.
Automorphism exp_derivation(const Derivation& d, const Number& s, std::size_t cap = kDefaultNilpotencyCap);

/// Throws naming the first relation that does not vanish at p.
void check_on_variety(const PresentedAlgebra& algebra, const std::vector<Number>& p);
std::vector<Number> vector_field_at(const Derivation& d, const std::vector<Number>& p);
std::size_t tangent_rank(const std::vector<Derivation>& ds, const std::vector<Number>& p);
/// Rank of (d r_i / d x_j)(p); throws if some relation does not vanish at p.
std::size_t jacobian_rank(const std::vector<Polynomial>& relations, std::size_t variable_count,
                          const std::vector<Number>& p);

}  // namespace flexcheck
