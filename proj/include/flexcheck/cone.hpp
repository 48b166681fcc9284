#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "flexcheck/lattice.hpp"

namespace flexcheck {

/// Generator form of {x : <a_i, x> >= 0 for all i}: extreme rays of the
/// pointed part (projected onto the orthogonal complement of the lineality
/// space) plus a canonical basis of the lineality space.
struct GeneratorForm {
  std::vector<LatticeVector> rays;
  std::vector<LatticeVector> lineality;
};

/// Double description by incremental insertion of inequalities.
GeneratorForm double_description(std::size_t n, std::span<const LatticeVector> normals);

/// A finitely generated rational polyhedral cone in Q^n, kept with both a
/// generator and an inequality description. Both lists are sorted
/// lexicographically and consist of primitive vectors.
///
/// Lineality is encoded by +/- pairs: a lineality direction l appears as
/// both l and -l among the generators, and an implicit equality <a, x> = 0
/// appears as both a and -a among the inequality normals.
class RationalCone {
 public:
  static RationalCone from_generators(std::size_t n, std::span<const LatticeVector> generators);
  static RationalCone from_inequalities(std::size_t n, std::span<const LatticeVector> normals);

  std::size_t ambient_rank() const { return n_; }
  /// Dimension of the linear span.
  std::size_t dim() const { return dim_; }

  /// Extreme rays of the pointed part (modulo lineality).
  const std::vector<LatticeVector>& rays() const { return rays_; }
  const std::vector<LatticeVector>& lineality() const { return lineality_; }
  /// Facet normals (irredundant, excluding implicit equalities).
  const std::vector<LatticeVector>& facets() const { return facets_; }
  /// Basis of the implicit equalities (orthogonal complement of the span).
  const std::vector<LatticeVector>& equalities() const { return equalities_; }

  /// rays + (+/- lineality), lexicographically sorted.
  std::vector<LatticeVector> v_rep() const;
  /// facets + (+/- equalities), lexicographically sorted.
  std::vector<LatticeVector> h_rep() const;

  bool contains(const LatticeVector& v) const;
  /// True iff v lies in the relative interior.
  bool contains_in_relative_interior(const LatticeVector& v) const;
  bool is_pointed() const { return lineality_.empty(); }
  bool is_full_dimensional() const { return dim_ == n_; }

  friend bool operator==(const RationalCone& a, const RationalCone& b) {
    return a.n_ == b.n_ && a.rays_ == b.rays_ && a.lineality_ == b.lineality_ && a.facets_ == b.facets_ &&
           a.equalities_ == b.equalities_;
  }

 private:
  RationalCone(std::size_t n, GeneratorForm gens, GeneratorForm dual);

  std::size_t n_ = 0;
  std::size_t dim_ = 0;
  std::vector<LatticeVector> rays_;
  std::vector<LatticeVector> lineality_;
  std::vector<LatticeVector> facets_;
  std::vector<LatticeVector> equalities_;
};

/// The cone of all v with <w, v> >= 0 for every w in the input cone.
RationalCone dual_cone(const RationalCone& cone);

inline bool is_pointed(const RationalCone& cone) { return cone.is_pointed(); }

/// A face of a cone, identified by the facet normals that vanish on it.
/// Indices refer to the parent cone's rays() and facets().
struct Face {
  std::vector<std::size_t> tight_facets;
  std::vector<std::size_t> rays;
  std::vector<LatticeVector> span_basis;  // Z-basis of span(face) cap Z^n
  std::size_t dim = 0;

  friend bool operator==(const Face& a, const Face& b) = default;
};

/// The face of `cone` generated by the given subset of its rays (smallest
/// face containing them).
Face face_from_rays(const RationalCone& cone, std::span<const std::size_t> ray_indices);

/// All faces, sorted by dimension and then by tight set. The minimal face
/// (origin or lineality space) and the whole cone are included.
std::vector<Face> face_lattice(const RationalCone& cone);

/// Generators of a face: its rays plus the lineality basis.
std::vector<LatticeVector> face_generators(const RationalCone& cone, const Face& face);

/// Face of `cone` orthogonal to a face `tau` of dual_cone(cone).
/// Throws if `tau` is not a face of the dual.
Face dual_face(const RationalCone& cone, const Face& tau);

/// The face of `cone` cut out by a single supporting normal (for instance a
/// ray of the dual cone).
Face face_orthogonal_to(const RationalCone& cone, const LatticeVector& normal);

struct SimplicialPiece {
  std::vector<LatticeVector> generators;
  std::vector<LatticeVector> parallelepiped_points;
};

/// Placing triangulation of `cone` with generators drawn from `vectors`.
/// Throws if the vectors do not generate the cone, naming a witness.
std::vector<SimplicialPiece> triangulate(const RationalCone& cone, std::span<const LatticeVector> vectors);

/// Lattice points of { sum t_i g_i : 0 <= t_i < 1 }, enumerated in the
/// lattice of the span of the generators. Sorted lexicographically.
std::vector<LatticeVector> parallelepiped_points(std::span<const LatticeVector> generators);

/// |det| of the generators expressed in a basis of their span lattice.
Integer lattice_volume(std::span<const LatticeVector> generators);

/// Minimal generating set of cone cap Z^n. Requires a pointed cone.
std::vector<LatticeVector> hilbert_basis(const RationalCone& cone);

}  // namespace flexcheck
