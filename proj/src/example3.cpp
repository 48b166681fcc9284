#include <chrono>
#include <algorithm>

#include "flexcheck/paper_examples.hpp"
#include "flexcheck/toric.hpp"

namespace flexcheck {

MembershipPredicate example3_predicate() {
  MembershipPredicate p;
  p.test = [](const LatticeVector& v) {
    if (v.size() != 3) return false;
    if (sgn(v[0]) < 0 || sgn(v[1]) < 0 || sgn(v[2]) < 0) return false;
    Integer s = v[0] + v[1];
    if (s > v[2]) return true;
    return s == v[2] && mpz_even_p(v[0].get_mpz_t()) != 0;
  };
  p.support = example3_generators();
  return p;
}

std::vector<LatticeVector> example3_generators() {
  return {LatticeVector{1, 0, 0}, LatticeVector{0, 1, 0}, LatticeVector{2, 0, 1}, LatticeVector{2, 0, 2},
          LatticeVector{0, 1, 1}};
}

HoleFamilyCertificate example3_certificate() {
  // On the face a+b = c, points with a odd are holes; each is hit by the
  // offset (1,0,1) from an even-a face point.
  HoleFamilyCertificate c;
  c.face_normal = LatticeVector{1, 1, -1};
  c.entries.push_back({LatticeVector{1, 0, 0}, Integer(2), Integer(0), LatticeVector{1, 0, 1}});
  return c;
}

MonoidInput example3_input() {
  MonoidInput in;
  in.rank = 3;
  in.generators = example3_generators();
  in.predicate = "example3";
  in.certificates = {example3_certificate()};
  return in;
}

namespace {

Json vectors(const std::vector<LatticeVector>& vs) {
  Json a = Json::array();
  for (const auto& v : vs) a.push_back(vector_to_json(v));
  return a;
}

ClaimStatus verdict(bool ok) { return ok ? ClaimStatus::Verified : ClaimStatus::Refuted; }

template <class F>
void add(CensusReport& r, const CensusOptions& opt, std::string id, std::string claim, std::string locus, F body) {
  CensusEntry e;
  e.id = std::move(id);
  e.claim = std::move(claim);
  e.locus = std::move(locus);
  auto start = std::chrono::steady_clock::now();
  try {
    body(e);
  } catch (const EffortExceeded& ex) {
    e.status = ClaimStatus::Unknown;
    e.details = std::string("effort cap exceeded: ") + ex.what();
  }
  if (opt.timings) e.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.entries.push_back(std::move(e));
}

}  // namespace

CensusReport verify_example3(long bound, const CensusOptions& opt) {
  if (bound < 0) throw Error("bound must be nonnegative");
  CensusReport report;
  report.suite = "example3";
  report.parameters = Json{{"bound", bound}, {"seed", opt.seed}, {"samples", opt.samples}};
  auto p = MonoidPresentation::create(3, example3_generators());
  auto cert = example3_certificate();
  const std::string locus = "non-normal toric example";

  add(report, opt, "monoid.predicate_equality", "the five generators produce exactly the set P", locus,
      [&](CensusEntry& e) {
        auto cmp = equals_predicate_up_to(p, example3_predicate(), bound);
        e.status = verdict(cmp.equal);
        e.witnesses.push_back(Json{{"points_checked", cmp.points_checked}});
        if (cmp.first_discrepancy) e.details = "first discrepancy " + cmp.first_discrepancy->to_string();
        else e.details = "all lattice points of degree <= " + std::to_string(bound);
      });

  add(report, opt, "generators.in_predicate", "the listed generators belong to P", locus, [&](CensusEntry& e) {
    auto pred = example3_predicate();
    bool ok = true;
    for (const auto& g : example3_generators()) ok = ok && pred.test(g);
    e.status = verdict(ok);
    e.witnesses.push_back(vectors(example3_generators()));
  });

  auto sigma = sigma_cone(p);
  add(report, opt, "sigma.rays", "sigma has the extremal rays (1,0,0), (0,1,0), (0,0,1), (1,1,-1)", locus,
      [&](CensusEntry& e) {
        auto rays = sigma.rays();
        std::sort(rays.begin(), rays.end());
        std::vector<LatticeVector> want{{0, 0, 1}, {0, 1, 0}, {1, 0, 0}, {1, 1, -1}};
        std::sort(want.begin(), want.end());
        e.status = verdict(rays == want);
        e.witnesses.push_back(vectors(rays));
      });

  add(report, opt, "saturation.hilbert_basis", "the saturation is generated by (1,0,0), (0,1,0), (1,0,1), (0,1,1)",
      locus, [&](CensusEntry& e) {
        auto hb = hilbert_basis(p.cone());
        std::sort(hb.begin(), hb.end());
        std::vector<LatticeVector> want{{0, 1, 0}, {0, 1, 1}, {1, 0, 0}, {1, 0, 1}};
        e.status = verdict(hb == want);
        e.witnesses.push_back(vectors(hb));
      });

  add(report, opt, "hole.101", "(1,0,1) is a hole of P", locus, [&](CensusEntry& e) {
    auto holes = holes_up_to(p, std::max(bound, 1L));
    LatticeVector h{1, 0, 1};
    e.status = verdict(std::find(holes.begin(), holes.end(), h) != holes.end());
    std::vector<LatticeVector> first(holes.begin(), holes.begin() + std::min<std::ptrdiff_t>(5, static_cast<std::ptrdiff_t>(holes.size())));
    e.witnesses.push_back(vectors(first));
  });

  add(report, opt, "saturation_point.110", "(1,1,0) is a saturation point of P", locus, [&](CensusEntry& e) {
    auto v = is_saturation_point(p, LatticeVector{1, 1, 0});
    e.status = verdict(std::holds_alternative<SaturationPoint>(v));
    if (auto* sp = std::get_if<SaturationPoint>(&v)) e.witnesses.push_back(vectors(sp->checked));
  });

  auto rays = ray_statuses(p, bound, {cert});
  const std::vector<std::pair<std::string, LatticeVector>> named{
      {"rho1", {1, 0, 0}}, {"rho2", {0, 1, 0}}, {"rho3", {0, 0, 1}}, {"rho4", {1, 1, -1}}};
  for (const auto& [name, ray] : named) {
    bool almost = name != "rho4";
    add(report, opt, "face." + name,
        "the face of sigma-dual orthogonal to " + ray.to_string() + (almost ? " is almost saturated" : " is nowhere saturated"),
        locus, [&](CensusEntry& e) {
          auto it = std::find_if(rays.begin(), rays.end(), [&](const RayStatus& r) { return r.ray == ray; });
          if (it == rays.end()) {
            e.status = ClaimStatus::Refuted;
            e.details = "not an extremal ray of sigma";
            return;
          }
          e.witnesses.push_back(face_verdict_to_json(it->status));
          if (almost) {
            e.status = std::holds_alternative<AlmostSaturated>(it->status) ? ClaimStatus::Verified : ClaimStatus::Unknown;
          } else if (std::holds_alternative<NowhereSaturatedCertified>(it->status)) {
            e.status = ClaimStatus::Verified;
          } else if (std::holds_alternative<AlmostSaturated>(it->status)) {
            e.status = ClaimStatus::Refuted;
          } else {
            e.status = ClaimStatus::Unknown;
            e.details = "no saturation point up to the bound, certificate not applied";
          }
        });
  }

  add(report, opt, "verdict.combined", "X is flexible and has an SAut-invariant prime divisor", locus,
      [&](CensusEntry& e) {
        auto rep = analyze(p, bound, {cert});
        e.witnesses.push_back(report_to_json(rep).at("combined"));
        auto a = rep.combined ? rep.combined->answer : Answer::Unknown;
        e.status = a == Answer::Yes ? ClaimStatus::Verified : a == Answer::No ? ClaimStatus::Refuted : ClaimStatus::Unknown;
      });

  Ring r({"x", "y", "u", "v", "w"});
  const std::vector<Polynomial> rels{r.parse("x^2*v - u^2"), r.parse("x^2*w - y*u"), r.parse("u*w - y*v")};
  add(report, opt, "relations.vanish", "x^2v-u^2, x^2w-yu, uw-yv vanish under u=x^2z, v=x^2z^2, w=yz", locus,
      [&](CensusEntry& e) {
        Ring t({"x", "y", "z"});
        std::vector<Polynomial> sub{t.var("x"), t.var("y"), t.parse("x^2*z"), t.parse("x^2*z^2"), t.parse("y*z")};
        bool ok = true;
        for (const auto& rel : rels) {
          auto image = rel.substitute(sub);
          ok = ok && image.is_zero();
          e.witnesses.push_back(Json{{"relation", r.format(rel)}, {"image", t.format(image)}});
        }
        e.status = verdict(ok);
      });

  add(report, opt, "relations.generate", "the three relations generate the whole kernel", locus, [&](CensusEntry& e) {
    Ring big({"x", "y", "u", "v", "w", "z"});
    auto kernel = eliminate({big.parse("u - x^2*z"), big.parse("v - x^2*z^2"), big.parse("w - y*z")}, {5}, 6,
                            opt.effort_seconds);
    e.status = verdict(groebner_basis(kernel) == groebner_basis(rels));
    e.witnesses.push_back(Json{{"kernel_basis_size", kernel.size()}});
    e.details = "reduced Groebner bases compared";
  });

  Sampler s(opt.seed);
  add(report, opt, "singular_divisor.rank_drop", "the Jacobian drops rank on {x = y = u = 0}", locus,
      [&](CensusEntry& e) {
        bool ok = true;
        std::map<std::size_t, std::size_t> ranks;
        for (std::size_t t = 0; t < opt.samples; ++t) {
          std::vector<Number> pt{0, 0, 0, s.rational(false), s.rational(false)};
          auto rk = jacobian_rank(rels, 5, pt);
          ++ranks[rk];
          ok = ok && rk < 2;
        }
        e.status = verdict(ok);
        Json h = Json::object();
        for (const auto& [rk, c] : ranks) h["rank " + std::to_string(rk)] = c;
        e.witnesses.push_back(h);
        e.details = "codimension 2; rank below 2 means singular";
      });

  add(report, opt, "smooth_off_divisor", "torus points have full Jacobian rank", locus, [&](CensusEntry& e) {
    bool ok = true;
    for (std::size_t t = 0; t < opt.samples; ++t) {
      Number a = s.rational(true), b = s.rational(true), c = s.rational(true);
      std::vector<Number> pt{a, b, a * a * c, a * a * c * c, b * c};
      ok = ok && jacobian_rank(rels, 5, pt) == 2;
    }
    e.status = verdict(ok);
  });
  return report;
}

}  // namespace flexcheck
