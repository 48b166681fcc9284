#include "flexcheck/toric.hpp"

#include <algorithm>

namespace flexcheck {

std::string to_string(Answer a) {
  switch (a) {
    case Answer::Yes: return "yes";
    case Answer::No: return "no";
    case Answer::Unknown: return "unknown";
  }
  return "unknown";
}

std::string to_string(Smoothness s) {
  switch (s) {
    case Smoothness::Smooth: return "smooth";
    case Smoothness::Singular: return "singular";
    case Smoothness::Unknown: return "unknown";
    case Smoothness::Undetermined: return "undetermined";
  }
  return "undetermined";
}

RationalCone sigma_cone(const MonoidPresentation& p) { return dual_cone(p.cone()); }

namespace {

void require_full_rank(const MonoidPresentation& p) {
  if (!p.cone().is_full_dimensional())
    throw Error("the monoid must have full rank " + std::to_string(p.rank()));
}

std::vector<LatticeVector> pick(const std::vector<LatticeVector>& all, const std::vector<std::size_t>& idx) {
  std::vector<LatticeVector> out;
  for (std::size_t i : idx) out.push_back(all[i]);
  return out;
}

const HoleFamilyCertificate* certificate_for(const LatticeVector& ray,
                                             const std::vector<HoleFamilyCertificate>& certificates) {
  for (const auto& c : certificates)
    if (!c.face_normal.is_zero() && primitive(c.face_normal) == ray) return &c;
  return nullptr;
}

void check_certificates(const RationalCone& sigma, const std::vector<HoleFamilyCertificate>& certificates) {
  for (const auto& c : certificates) {
    const auto& rays = sigma.rays();
    if (c.face_normal.is_zero() ||
        std::find(rays.begin(), rays.end(), primitive(c.face_normal)) == rays.end())
      throw Error("certificate face normal " + c.face_normal.to_string() + " is not an extremal ray of sigma");
  }
}

Smoothness smoothness_of(const FaceSaturationVerdict& v) {
  if (std::holds_alternative<AlmostSaturated>(v)) return Smoothness::Smooth;
  if (std::holds_alternative<NowhereSaturatedCertified>(v)) return Smoothness::Singular;
  return Smoothness::Unknown;
}

RayStatus status_of(const MonoidPresentation& p, const LatticeVector& ray, long bound,
                    const std::vector<HoleFamilyCertificate>& certificates) {
  Face face = face_orthogonal_to(p.cone(), ray);
  auto status = face_saturation_status(p, face, bound, certificate_for(ray, certificates));
  Smoothness s = smoothness_of(status);
  return RayStatus{ray, pick(p.cone().rays(), face.rays), std::move(status), s};
}

}  // namespace

std::vector<RayStatus> ray_statuses(const MonoidPresentation& p, long bound,
                                    const std::vector<HoleFamilyCertificate>& certificates) {
  require_full_rank(p);
  RationalCone sigma = sigma_cone(p);
  check_certificates(sigma, certificates);
  std::vector<RayStatus> out;
  for (const auto& ray : sigma.rays()) out.push_back(status_of(p, ray, bound, certificates));
  return out;
}

std::vector<OrbitEntry> orbit_census(const MonoidPresentation& p, std::optional<long> bound,
                                     const std::vector<HoleFamilyCertificate>& certificates) {
  require_full_rank(p);
  RationalCone sigma = sigma_cone(p);
  std::vector<OrbitEntry> out;
  for (const auto& face : face_lattice(sigma)) {
    OrbitEntry e;
    e.face_rays = pick(sigma.rays(), face.rays);
    e.face_dim = face.dim;
    Face tau = dual_face(p.cone(), face);
    e.orbit_dim = tau.dim;
    e.dual_face_rays = pick(p.cone().rays(), tau.rays);
    for (const auto& g : p.generators()) {
      bool inside = std::all_of(e.face_rays.begin(), e.face_rays.end(),
                                [&](const LatticeVector& r) { return sgn(dot(r, g)) == 0; });
      if (!inside) e.weight_complement.push_back(g);
    }
    if (face.dim == 1 && bound) e.smoothness = divisorial_smoothness(p, e.face_rays.front(), *bound, certificates);
    out.push_back(std::move(e));
  }
  return out;
}

Smoothness divisorial_smoothness(const MonoidPresentation& p, const LatticeVector& ray, long bound,
                                 const std::vector<HoleFamilyCertificate>& certificates) {
  require_full_rank(p);
  RationalCone sigma = sigma_cone(p);
  const auto& rays = sigma.rays();
  if (ray.is_zero() || std::find(rays.begin(), rays.end(), primitive(ray)) == rays.end())
    throw Error("ray " + ray.to_string() + " is not an extremal ray of sigma");
  return status_of(p, primitive(ray), bound, certificates).smoothness;
}

Verdict flexibility_from(const std::vector<RayStatus>& rays, std::size_t rank, long bound) {
  Verdict v;
  v.bound = bound;
  bool all_resolved = true;
  for (const auto& r : rays) {
    if (r.smoothness == Smoothness::Smooth) v.witnesses.push_back(r.ray);
    if (r.smoothness == Smoothness::Unknown) all_resolved = false;
  }
  if (flexcheck::rank(v.witnesses, rank) == rank)
    v.answer = Answer::Yes;
  else
    v.answer = all_resolved ? Answer::No : Answer::Unknown;
  return v;
}

Verdict invariant_divisor_from(const std::vector<RayStatus>& rays, long bound) {
  Verdict v;
  v.bound = bound;
  for (const auto& r : rays)
    if (r.smoothness == Smoothness::Singular) {
      v.answer = Answer::Yes;
      v.witnesses = {r.ray};
      return v;
    }
  bool all_smooth = std::all_of(rays.begin(), rays.end(),
                                [](const RayStatus& r) { return r.smoothness == Smoothness::Smooth; });
  v.answer = all_smooth ? Answer::No : Answer::Unknown;
  if (all_smooth)
    for (const auto& r : rays) v.witnesses.push_back(r.ray);
  return v;
}

Verdict flexibility_verdict(const MonoidPresentation& p, long bound,
                            const std::vector<HoleFamilyCertificate>& certificates) {
  return flexibility_from(ray_statuses(p, bound, certificates), p.rank(), bound);
}

Verdict invariant_divisor_verdict(const MonoidPresentation& p, long bound,
                                  const std::vector<HoleFamilyCertificate>& certificates) {
  return invariant_divisor_from(ray_statuses(p, bound, certificates), bound);
}

ToricReport analyze(const MonoidPresentation& p, long bound, const std::vector<HoleFamilyCertificate>& certificates) {
  ToricReport r;
  r.rank = p.rank();
  r.generators = p.generators();
  r.grading = p.grading();
  r.bound = bound;
  r.rays = ray_statuses(p, bound, certificates);
  r.flexible = flexibility_from(r.rays, p.rank(), bound);
  r.invariant_divisor = invariant_divisor_from(r.rays, bound);

  Verdict c;
  c.bound = bound;
  const Answer f = r.flexible->answer, d = r.invariant_divisor->answer;
  if (f == Answer::Yes && d == Answer::Yes) {
    c.answer = Answer::Yes;
    c.witnesses = r.invariant_divisor->witnesses;
  } else if (f == Answer::No || d == Answer::No) {
    c.answer = Answer::No;
  } else {
    c.answer = Answer::Unknown;
  }
  r.combined = c;
  return r;
}

ToricReport analyze(std::size_t rank, const std::vector<LatticeVector>& generators, long bound,
                    const std::vector<HoleFamilyCertificate>& certificates) {
  if (bound < 0) throw Error("degree bound must be nonnegative");
  try {
    return analyze(MonoidPresentation::create(rank, generators), bound, certificates);
  } catch (const DegenerateMonoid&) {
    ToricReport r;
    r.rank = rank;
    r.generators = generators;
    r.degenerate = true;
    r.grading = LatticeVector(rank);
    r.bound = bound;
    return r;
  }
}

}  // namespace flexcheck
