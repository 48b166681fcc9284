#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "flexcheck/cone.hpp"
#include "flexcheck/lattice.hpp"

namespace flexcheck {

/// Raised when a monoid's cone contains a line.
class DegenerateMonoid : public Error {
 public:
  using Error::Error;
};

/// A finitely generated submonoid P of Z^n with a pointed cone.
///
/// Degrees are measured by a grading functional that is strictly positive
/// on the cone minus the origin; by default the primitive vector along the
/// sum of the facet normals. All searches run in (degree, lexicographic)
/// order, so witnesses are canonical.
///
/// Copies share one membership cache; the object is safe for concurrent use.
class MonoidPresentation {
 public:
  static MonoidPresentation create(std::size_t rank, std::vector<LatticeVector> generators,
                                   std::optional<LatticeVector> grading = std::nullopt);

  std::size_t rank() const { return rank_; }
  const std::vector<LatticeVector>& generators() const { return generators_; }
  const RationalCone& cone() const { return cone_; }
  const LatticeVector& grading() const { return grading_; }
  Integer degree(const LatticeVector& v) const { return dot(grading_, v); }

  /// Coefficients a_i >= 0 with sum a_i g_i = v, or nullopt if v is not in P.
  std::optional<std::vector<Integer>> contains(const LatticeVector& v) const;
  bool is_member(const LatticeVector& v) const { return contains(v).has_value(); }

  /// Lattice points of the fundamental parallelepipeds of a triangulation of
  /// the cone by the generators of P, in (degree, lex) order.
  const std::vector<LatticeVector>& parallelepiped_set() const;

 private:
  struct Cache;

  std::size_t rank_ = 0;
  std::vector<LatticeVector> generators_;
  RationalCone cone_;
  LatticeVector grading_;
  std::shared_ptr<Cache> cache_;

  MonoidPresentation(std::size_t rank, std::vector<LatticeVector> generators, RationalCone cone,
                     LatticeVector grading);
};

/// Presentation of the saturation by the Hilbert basis of the cone.
MonoidPresentation saturation(const MonoidPresentation& p);

/// Lattice points of the cone (optionally restricted to a face) with degree
/// at most `bound`, in (degree, lex) order.
std::vector<LatticeVector> saturated_points_up_to(const MonoidPresentation& p, long bound,
                                                  const Face* face = nullptr);

/// Holes (points of the saturation outside P) with degree at most `bound`,
/// sorted lexicographically.
std::vector<LatticeVector> holes_up_to(const MonoidPresentation& p, long bound);

struct SaturationPoint {
  std::vector<LatticeVector> checked;  // the parallelepiped set p + pi was tested against
  friend bool operator==(const SaturationPoint&, const SaturationPoint&) = default;
};
struct NotSaturationPoint {
  LatticeVector hole;
  friend bool operator==(const NotSaturationPoint&, const NotSaturationPoint&) = default;
};
using SaturationVerdict = std::variant<SaturationPoint, NotSaturationPoint>;

/// Exact test: p is a saturation point iff p + pi lies in P for every pi of
/// the parallelepiped set. Throws if p is not in P.
SaturationVerdict is_saturation_point(const MonoidPresentation& p, const LatticeVector& point);

/// A finite description of a hole family on a face: face points matching an
/// entry's residue condition <functional, x> = residue (mod modulus) are
/// sent by the entry's offset onto a hole. The face is the face of the
/// monoid cone orthogonal to `face_normal`.
struct HoleFamilyCertificate {
  struct Entry {
    LatticeVector functional;
    Integer modulus = 1;
    Integer residue = 0;
    LatticeVector offset;
    bool matches(const LatticeVector& x) const;
    friend bool operator==(const Entry&, const Entry&) = default;
  };
  LatticeVector face_normal;
  std::vector<Entry> entries;
  long check_bound = 0;  // 0: use the bound of the query
  friend bool operator==(const HoleFamilyCertificate&, const HoleFamilyCertificate&) = default;
};

struct AlmostSaturated {
  LatticeVector witness;
  friend bool operator==(const AlmostSaturated&, const AlmostSaturated&) = default;
};
struct NowhereSaturatedUpTo {
  long bound = 0;
  friend bool operator==(const NowhereSaturatedUpTo&, const NowhereSaturatedUpTo&) = default;
};
struct NowhereSaturatedCertified {
  HoleFamilyCertificate certificate;
  long checked_up_to = 0;
  friend bool operator==(const NowhereSaturatedCertified&, const NowhereSaturatedCertified&) = default;
};
using FaceSaturationVerdict = std::variant<AlmostSaturated, NowhereSaturatedUpTo, NowhereSaturatedCertified>;

/// Searches the face for a saturation point of degree at most `bound`. When
/// none exists and a certificate is supplied, the certificate is validated
/// and the verdict upgraded; an invalid certificate throws.
FaceSaturationVerdict face_saturation_status(const MonoidPresentation& p, const Face& face, long bound,
                                             const HoleFamilyCertificate* certificate = nullptr);

/// A pointwise membership test together with generators of a cone that
/// contains every point it accepts. An empty support means "inside the cone
/// of the monoid it is compared with".
struct MembershipPredicate {
  std::function<bool(const LatticeVector&)> test;
  std::vector<LatticeVector> support;
};

struct PredicateComparison {
  bool equal = true;
  std::optional<LatticeVector> first_discrepancy;
  std::size_t points_checked = 0;
};

/// Compares membership in P with the predicate on every lattice point of
/// degree at most `bound` in the cone spanned by P and the predicate support.
PredicateComparison equals_predicate_up_to(const MonoidPresentation& p, const MembershipPredicate& predicate,
                                           long bound);

}  // namespace flexcheck
