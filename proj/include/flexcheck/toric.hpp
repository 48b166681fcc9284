#pragma once

#include <optional>
#include <string>
#include <vector>

#include "flexcheck/monoid.hpp"

namespace flexcheck {

enum class Answer { Yes, No, Unknown };

/// Three-valued verdict. `bound` is the degree bound the search used; it is
/// what an Unknown answer is qualified by. `witnesses` are rays of sigma
/// backing the answer.
struct Verdict {
  Answer answer = Answer::Unknown;
  long bound = 0;
  std::vector<LatticeVector> witnesses;
  friend bool operator==(const Verdict&, const Verdict&) = default;
};

enum class Smoothness { Smooth, Singular, Unknown, Undetermined };

std::string to_string(Answer a);
std::string to_string(Smoothness s);

/// sigma is the dual of the monoid cone; its rays are the normals of the
/// facets of that cone.
RationalCone sigma_cone(const MonoidPresentation& p);

struct OrbitEntry {
  std::vector<LatticeVector> face_rays;  // rays of the face of sigma
  std::size_t face_dim = 0;
  std::size_t orbit_dim = 0;
  std::vector<LatticeVector> dual_face_rays;     // rays of the orthogonal face of the monoid cone
  std::vector<LatticeVector> weight_complement;  // generators of P outside the dual face
  Smoothness smoothness = Smoothness::Undetermined;
  friend bool operator==(const OrbitEntry&, const OrbitEntry&) = default;
};

/// One entry per face of sigma, by dimension. Ray entries get a smoothness
/// value when a bound is given.
std::vector<OrbitEntry> orbit_census(const MonoidPresentation& p, std::optional<long> bound = std::nullopt,
                                     const std::vector<HoleFamilyCertificate>& certificates = {});

/// Smoothness of the divisorial orbit of a ray of sigma.
Smoothness divisorial_smoothness(const MonoidPresentation& p, const LatticeVector& ray, long bound,
                                 const std::vector<HoleFamilyCertificate>& certificates = {});

struct RayStatus {
  LatticeVector ray;
  std::vector<LatticeVector> dual_face_rays;
  FaceSaturationVerdict status;
  Smoothness smoothness = Smoothness::Unknown;
  friend bool operator==(const RayStatus&, const RayStatus&) = default;
};

/// Saturation status of the dual face of every ray of sigma, rays in lex order.
std::vector<RayStatus> ray_statuses(const MonoidPresentation& p, long bound,
                                    const std::vector<HoleFamilyCertificate>& certificates = {});

Verdict flexibility_verdict(const MonoidPresentation& p, long bound,
                            const std::vector<HoleFamilyCertificate>& certificates = {});
Verdict invariant_divisor_verdict(const MonoidPresentation& p, long bound,
                                  const std::vector<HoleFamilyCertificate>& certificates = {});

Verdict flexibility_from(const std::vector<RayStatus>& rays, std::size_t rank, long bound);
Verdict invariant_divisor_from(const std::vector<RayStatus>& rays, long bound);

struct ToricReport {
  std::size_t rank = 0;
  std::vector<LatticeVector> generators;
  bool degenerate = false;
  LatticeVector grading;
  long bound = 0;
  std::vector<RayStatus> rays;
  std::optional<Verdict> flexible;
  std::optional<Verdict> invariant_divisor;
  std::optional<Verdict> combined;
  friend bool operator==(const ToricReport&, const ToricReport&) = default;
};

/// Full analysis. Degenerate input (cone with a line) yields a report with
/// `degenerate` set and no verdicts. Monoids of lower rank are rejected.
ToricReport analyze(std::size_t rank, const std::vector<LatticeVector>& generators, long bound,
                    const std::vector<HoleFamilyCertificate>& certificates = {});
ToricReport analyze(const MonoidPresentation& p, long bound,
                    const std::vector<HoleFamilyCertificate>& certificates = {});

}  // namespace flexcheck
