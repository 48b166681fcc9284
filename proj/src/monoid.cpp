#include "flexcheck/monoid.hpp"

#include <algorithm>
#include <mutex>
#include <set>
#include <shared_mutex>
#include <unordered_map>

namespace flexcheck {

struct MonoidPresentation::Cache {
  // Membership table: -1 means "not in P", -2 means "zero", otherwise the
  // index of a generator g with v - g in P.
  std::shared_mutex mutex;
  std::unordered_map<LatticeVector, int, LatticeVectorHash> choice;
  std::once_flag pi_once;
  std::vector<LatticeVector> pi;
};

MonoidPresentation::MonoidPresentation(std::size_t rank, std::vector<LatticeVector> generators,
                                       RationalCone cone, LatticeVector grading)
    : rank_(rank),
      generators_(std::move(generators)),
      cone_(std::move(cone)),
      grading_(std::move(grading)),
      cache_(std::make_shared<Cache>()) {}

MonoidPresentation MonoidPresentation::create(std::size_t rank, std::vector<LatticeVector> generators,
                                              std::optional<LatticeVector> grading) {
  std::vector<LatticeVector> gens;
  for (auto& g : generators) {
    if (g.size() != rank) throw Error("generator " + g.to_string() + " has wrong rank");
    if (g.is_zero()) continue;
    if (std::find(gens.begin(), gens.end(), g) == gens.end()) gens.push_back(std::move(g));
  }
  RationalCone cone = RationalCone::from_generators(rank, gens);
  if (!cone.is_pointed())
    throw DegenerateMonoid("criterion stated for non-degenerate toric varieties: the cone of the monoid contains a line");
  LatticeVector phi(rank);
  if (grading) {
    phi = *grading;
    if (phi.size() != rank) throw Error("grading functional has wrong rank");
  } else if (!cone.facets().empty()) {
    for (const auto& f : cone.h_rep()) phi += f;
    if (!phi.is_zero()) phi = primitive(phi);
  }
  for (const auto& g : gens)
    if (sgn(dot(phi, g)) <= 0)
      throw Error("grading functional is not positive on generator " + g.to_string());
  return MonoidPresentation(rank, std::move(gens), std::move(cone), std::move(phi));
}

std::optional<std::vector<Integer>> MonoidPresentation::contains(const LatticeVector& v) const {
  if (v.size() != rank_) throw Error("point has wrong rank");
  if (!cone_.contains(v)) return std::nullopt;

  // Generators tried by decreasing degree, ties by input order.
  std::vector<std::size_t> order(generators_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return degree(generators_[a]) > degree(generators_[b]); });

  std::unordered_map<LatticeVector, int, LatticeVectorHash> local;
  auto lookup = [&](const LatticeVector& r) -> std::optional<int> {
    if (auto it = local.find(r); it != local.end()) return it->second;
    std::shared_lock lock(cache_->mutex);
    if (auto it = cache_->choice.find(r); it != cache_->choice.end()) return it->second;
    return std::nullopt;
  };

  // Depth-first search on the remainder; each remainder stays in the cone.
  std::function<int(const LatticeVector&)> solve = [&](const LatticeVector& r) -> int {
    if (auto known = lookup(r)) return *known;
    int result = -1;
    if (r.is_zero()) {
      result = -2;
    } else {
      for (std::size_t i : order) {
        LatticeVector rest = r - generators_[i];
        if (!cone_.contains(rest)) continue;
        if (solve(rest) != -1) {
          result = static_cast<int>(i);
          break;
        }
      }
    }
    local.emplace(r, result);
    return result;
  };

  const bool member = solve(v) != -1;
  {
    std::unique_lock lock(cache_->mutex);
    for (auto& [key, value] : local) cache_->choice.emplace(key, value);
  }
  if (!member) return std::nullopt;

  std::vector<Integer> coeffs(generators_.size());
  LatticeVector r = v;
  while (true) {
    int c = *lookup(r);
    if (c == -2) break;
    coeffs[static_cast<std::size_t>(c)] += 1;
    r -= generators_[static_cast<std::size_t>(c)];
  }
  return coeffs;
}

namespace {

void sort_by_degree(std::vector<LatticeVector>& pts, const LatticeVector& phi) {
  std::sort(pts.begin(), pts.end(), [&](const LatticeVector& a, const LatticeVector& b) {
    int c = cmp(dot(phi, a), dot(phi, b));
    if (c != 0) return c < 0;
    return a < b;
  });
}

}  // namespace

const std::vector<LatticeVector>& MonoidPresentation::parallelepiped_set() const {
  std::call_once(cache_->pi_once, [&] {
    std::set<LatticeVector> pts;
    for (const auto& piece : triangulate(cone_, generators_))
      pts.insert(piece.parallelepiped_points.begin(), piece.parallelepiped_points.end());
    cache_->pi.assign(pts.begin(), pts.end());
    sort_by_degree(cache_->pi, grading_);
  });
  return cache_->pi;
}

MonoidPresentation saturation(const MonoidPresentation& p) {
  return MonoidPresentation::create(p.rank(), hilbert_basis(p.cone()), p.grading());
}

namespace {

std::vector<LatticeVector> cone_points_up_to(const RationalCone& cone, const LatticeVector& phi, long bound,
                                             const Face* face) {
  std::vector<LatticeVector> basis;
  for (const auto& h : hilbert_basis(cone)) {
    if (face) {
      bool inside = std::all_of(face->tight_facets.begin(), face->tight_facets.end(),
                                [&](std::size_t j) { return sgn(dot(cone.facets()[j], h)) == 0; });
      if (!inside) continue;
    }
    basis.push_back(h);
  }
  std::set<LatticeVector> seen;
  std::vector<LatticeVector> frontier;
  if (bound >= 0) {
    seen.insert(LatticeVector(cone.ambient_rank()));
    frontier.push_back(LatticeVector(cone.ambient_rank()));
  }
  const Integer limit = bound;
  while (!frontier.empty()) {
    std::vector<LatticeVector> next;
    for (const auto& x : frontier)
      for (const auto& h : basis) {
        LatticeVector y = x + h;
        if (dot(phi, y) > limit) continue;
        if (seen.insert(y).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  std::vector<LatticeVector> out(seen.begin(), seen.end());
  sort_by_degree(out, phi);
  return out;
}

}  // namespace

std::vector<LatticeVector> saturated_points_up_to(const MonoidPresentation& p, long bound, const Face* face) {
  return cone_points_up_to(p.cone(), p.grading(), bound, face);
}

std::vector<LatticeVector> holes_up_to(const MonoidPresentation& p, long bound) {
  if (bound < 0) throw Error("degree bound must be nonnegative");
  std::vector<LatticeVector> out;
  for (const auto& x : saturated_points_up_to(p, bound))
    if (!p.is_member(x)) out.push_back(x);
  std::sort(out.begin(), out.end());
  return out;
}

SaturationVerdict is_saturation_point(const MonoidPresentation& p, const LatticeVector& point) {
  if (!p.is_member(point))
    throw Error("saturation points are sought inside P; " + point.to_string() + " is not in P");
  for (const auto& pi : p.parallelepiped_set()) {
    LatticeVector q = point + pi;
    if (!p.is_member(q)) return NotSaturationPoint{q};
  }
  return SaturationPoint{p.parallelepiped_set()};
}

bool HoleFamilyCertificate::Entry::matches(const LatticeVector& x) const {
  Integer value = dot(functional, x) - residue;
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), value.get_mpz_t(), modulus.get_mpz_t());
  return sgn(r) == 0;
}

FaceSaturationVerdict face_saturation_status(const MonoidPresentation& p, const Face& face, long bound,
                                             const HoleFamilyCertificate* certificate) {
  if (face_from_rays(p.cone(), face.rays) != face) throw Error("not a face of the monoid cone");
  if (certificate && face_orthogonal_to(p.cone(), certificate->face_normal) != face)
    throw Error("certificate is attached to a different face");

  for (const auto& x : saturated_points_up_to(p, bound, &face)) {
    if (!p.is_member(x)) continue;
    if (std::holds_alternative<SaturationPoint>(is_saturation_point(p, x))) return AlmostSaturated{x};
  }
  if (!certificate) return NowhereSaturatedUpTo{bound};

  const long check = certificate->check_bound > 0 ? certificate->check_bound : bound;
  for (const auto& x : saturated_points_up_to(p, check, &face)) {
    if (!p.is_member(x)) continue;
    auto entry = std::find_if(certificate->entries.begin(), certificate->entries.end(),
                              [&](const HoleFamilyCertificate::Entry& e) { return e.matches(x); });
    if (entry == certificate->entries.end())
      throw Error("invalid certificate: face point " + x.to_string() + " is not covered");
    if (entry->offset.size() != p.rank() || !p.cone().contains(entry->offset))
      throw Error("invalid certificate: offset " + entry->offset.to_string() + " is outside the cone");
    LatticeVector target = x + entry->offset;
    if (p.is_member(target))
      throw Error("invalid certificate: face point " + x.to_string() + " maps to " + target.to_string() +
                  ", which is not a hole");
  }
  return NowhereSaturatedCertified{*certificate, check};
}

PredicateComparison equals_predicate_up_to(const MonoidPresentation& p, const MembershipPredicate& predicate,
                                           long bound) {
  std::vector<LatticeVector> gens = p.generators();
  for (const auto& s : predicate.support) {
    if (s.size() != p.rank()) throw Error("predicate support has wrong rank");
    gens.push_back(s);
  }
  RationalCone hull = RationalCone::from_generators(p.rank(), gens);
  if (!hull.is_pointed()) throw Error("predicate support and monoid span a cone containing a line");
  for (const auto& r : hull.rays())
    if (sgn(dot(p.grading(), r)) <= 0)
      throw Error("grading functional is not positive on the predicate support");

  PredicateComparison out;
  for (const auto& x : cone_points_up_to(hull, p.grading(), bound, nullptr)) {
    ++out.points_checked;
    if (p.is_member(x) != predicate.test(x)) {
      out.equal = false;
      out.first_discrepancy = x;
      return out;
    }
  }
  return out;
}

}  // namespace flexcheck
