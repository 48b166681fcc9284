#include <algorithm>
#include <random>
#include <thread>

#include "doctest.h"
#include "flexcheck/monoid.hpp"

using namespace flexcheck;

namespace {

using Vecs = std::vector<LatticeVector>;

const Vecs kExampleGens{{1, 0, 0}, {0, 1, 0}, {2, 0, 1}, {2, 0, 2}, {0, 1, 1}};

MonoidPresentation example() { return MonoidPresentation::create(3, kExampleGens); }

// Set definition: a,b,c >= 0 and a+b > c, or (a,b,a+b) with a even.
bool example_predicate(const LatticeVector& v) {
  long a = v[0].get_si(), b = v[1].get_si(), c = v[2].get_si();
  if (a < 0 || b < 0 || c < 0) return false;
  if (a + b > c) return true;
  return a + b == c && a % 2 == 0;
}

// Exhaustive coefficient enumeration, independent of the library search.
bool oracle_member(const Vecs& gens, const LatticeVector& v, std::size_t i = 0) {
  if (v.is_zero()) return true;
  if (i == gens.size()) return false;
  LatticeVector rest = v;
  // Generators here are nonnegative, so a negative coordinate ends the branch.
  for (int k = 0; k <= 40; ++k) {
    bool negative = false;
    for (std::size_t j = 0; j < rest.size(); ++j) negative = negative || sgn(rest[j]) < 0;
    if (negative) break;
    if (oracle_member(gens, rest, i + 1)) return true;
    rest -= gens[i];
  }
  return false;
}

// All lattice points of the box [-r, r]^n that lie in the cone with degree <= bound.
Vecs box_points(const MonoidPresentation& p, long r, long bound) {
  Vecs out;
  const std::size_t n = p.rank();
  std::vector<long> c(n, -r);
  while (true) {
    LatticeVector v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = c[i];
    if (p.cone().contains(v) && p.degree(v) <= bound) out.push_back(v);
    std::size_t i = 0;
    while (i < n && c[i] == r) c[i++] = -r;
    if (i == n) break;
    ++c[i];
  }
  return out;
}

// Brute-force saturation point test: scan (point + cone) up to a degree.
bool oracle_saturation_point(const MonoidPresentation& p, const LatticeVector& point, const Vecs& cone_points) {
  return std::all_of(cone_points.begin(), cone_points.end(),
                     [&](const LatticeVector& x) { return p.is_member(point + x); });
}

Face face_of(const MonoidPresentation& p, const LatticeVector& normal) {
  return face_orthogonal_to(p.cone(), normal);
}

Face whole(const MonoidPresentation& p) { return face_lattice(p.cone()).back(); }

}  // namespace

TEST_CASE("grading functional of the example") {
  auto p = example();
  CHECK(p.grading() == LatticeVector{1, 1, 0});
  for (const auto& g : p.generators()) CHECK(sgn(p.degree(g)) > 0);
}

TEST_CASE("non-pointed monoids are rejected") {
  Vecs gens{{1, 0}, {-1, 0}, {0, 1}};
  CHECK_THROWS_AS(MonoidPresentation::create(2, gens), DegenerateMonoid);
}

TEST_CASE("membership examples") {
  auto p = example();
  auto w = p.contains(LatticeVector{2, 1, 3});
  REQUIRE(w);
  CHECK(*w == std::vector<Integer>{0, 0, 0, 1, 1});
  CHECK_FALSE(p.contains(LatticeVector{1, 0, 1}));
  auto zero = p.contains(LatticeVector{0, 0, 0});
  REQUIRE(zero);
  CHECK(std::all_of(zero->begin(), zero->end(), [](const Integer& a) { return sgn(a) == 0; }));
  CHECK_FALSE(p.contains(LatticeVector{-1, 0, 0}));
}

TEST_CASE("membership witnesses reconstruct the point") {
  auto p = example();
  for (const auto& v : box_points(p, 5, 8)) {
    auto w = p.contains(v);
    CHECK(w.has_value() == oracle_member(kExampleGens, v));
    if (!w) continue;
    LatticeVector sum(3);
    for (std::size_t i = 0; i < w->size(); ++i) {
      CHECK(sgn((*w)[i]) >= 0);
      sum += (*w)[i] * p.generators()[i];
    }
    CHECK(sum == v);
  }
}

TEST_CASE("membership is monotone") {
  auto p = example();
  std::mt19937_64 rng(5);
  auto pts = box_points(p, 4, 6);
  Vecs members;
  for (const auto& v : pts)
    if (p.is_member(v)) members.push_back(v);
  for (int t = 0; t < 200; ++t) {
    const auto& u = members[rng() % members.size()];
    const auto& v = members[rng() % members.size()];
    CHECK(p.is_member(u + v));
  }
}

TEST_CASE("saturation") {
  Vecs units{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  auto oct = MonoidPresentation::create(3, units);
  auto oct_sat = saturation(oct).generators();
  std::sort(oct_sat.begin(), oct_sat.end());
  CHECK(oct_sat == Vecs{{0, 0, 1}, {0, 1, 0}, {1, 0, 0}});

  Vecs expected{{0, 1, 0}, {0, 1, 1}, {1, 0, 0}, {1, 0, 1}};
  auto sat = saturation(example()).generators();
  std::sort(sat.begin(), sat.end());
  CHECK(sat == expected);

  auto numerical = MonoidPresentation::create(1, Vecs{{2}, {3}});
  CHECK(saturation(numerical).generators() == Vecs{{1}});
}

TEST_CASE("holes") {
  auto numerical = MonoidPresentation::create(1, Vecs{{2}, {3}});
  CHECK(holes_up_to(numerical, 5) == Vecs{{1}});

  auto p = example();
  CHECK(holes_up_to(p, 2) == Vecs{{1, 0, 1}, {1, 1, 2}});

  Vecs units{{1, 0}, {0, 1}};
  CHECK(holes_up_to(MonoidPresentation::create(2, units), 10).empty());
  CHECK_THROWS_AS(holes_up_to(p, -1), Error);
}

TEST_CASE("holes agree with the set definition") {
  auto p = example();
  auto holes = holes_up_to(p, 8);
  Vecs expected;
  for (const auto& v : box_points(p, 9, 8))
    if (!example_predicate(v)) expected.push_back(v);
  std::sort(expected.begin(), expected.end());
  CHECK(holes == expected);
  for (const auto& h : holes) {
    CHECK(p.cone().contains(h));
    CHECK_FALSE(p.is_member(h));
    // Odd a on the face a + b = c.
    CHECK(h[0] + h[1] == h[2]);
    CHECK(h[0].get_si() % 2 == 1);
  }
}

TEST_CASE("saturated points enumeration matches the box") {
  auto p = example();
  auto pts = saturated_points_up_to(p, 6);
  auto box = box_points(p, 7, 6);
  std::sort(pts.begin(), pts.end());
  std::sort(box.begin(), box.end());
  CHECK(pts == box);
}

TEST_CASE("saturation points") {
  auto p = example();
  auto v = is_saturation_point(p, LatticeVector{1, 1, 0});
  CHECK(std::holds_alternative<SaturationPoint>(v));

  auto z = is_saturation_point(p, LatticeVector{0, 0, 0});
  REQUIRE(std::holds_alternative<NotSaturationPoint>(z));
  CHECK(std::get<NotSaturationPoint>(z).hole == LatticeVector{1, 0, 1});

  CHECK(p.parallelepiped_set() == Vecs{{0, 0, 0}, {1, 0, 1}});

  CHECK_THROWS_WITH_AS(is_saturation_point(p, LatticeVector{1, 0, 1}),
                       doctest::Contains("saturation points are sought inside P"), Error);

  Vecs units{{1, 0}, {0, 1}};
  auto sat = MonoidPresentation::create(2, units);
  CHECK(std::holds_alternative<SaturationPoint>(is_saturation_point(sat, LatticeVector{3, 1})));
}

TEST_CASE("saturation point criterion agrees with brute force") {
  std::vector<std::pair<std::size_t, Vecs>> cases{
      {3, kExampleGens},
      {2, Vecs{{2, 0}, {1, 1}, {0, 2}, {3, 1}}},
      {2, Vecs{{1, 0}, {1, 2}, {2, 1}}},
      {2, Vecs{{3, 0}, {2, 1}, {0, 1}}},
  };
  std::mt19937_64 rng(99);
  for (const auto& [n, gens] : cases) {
    auto p = MonoidPresentation::create(n, gens);
    Vecs members;
    for (const auto& v : box_points(p, 8, 8))
      if (p.is_member(v)) members.push_back(v);
    REQUIRE(!members.empty());
    auto scan = box_points(p, n == 3 ? 12 : 24, 12);
    for (int t = 0; t < 50; ++t) {
      const auto& pt = members[rng() % members.size()];
      auto verdict = is_saturation_point(p, pt);
      CHECK(std::holds_alternative<SaturationPoint>(verdict) == oracle_saturation_point(p, pt, scan));
      if (auto* bad = std::get_if<NotSaturationPoint>(&verdict)) {
        CHECK_FALSE(p.is_member(bad->hole));
        CHECK(p.cone().contains(bad->hole - pt));
      }
    }
  }
}

TEST_CASE("saturation points are closed upward") {
  auto p = example();
  auto basis = hilbert_basis(p.cone());
  for (const auto& pt : saturated_points_up_to(p, 4)) {
    if (!p.is_member(pt)) continue;
    if (!std::holds_alternative<SaturationPoint>(is_saturation_point(p, pt))) continue;
    for (const auto& h : basis) CHECK(std::holds_alternative<SaturationPoint>(is_saturation_point(p, pt + h)));
  }
}

TEST_CASE("face saturation status on the example") {
  auto p = example();
  auto r1 = face_saturation_status(p, face_of(p, LatticeVector{1, 0, 0}), 8);
  auto r2 = face_saturation_status(p, face_of(p, LatticeVector{0, 1, 0}), 8);
  auto r3 = face_saturation_status(p, face_of(p, LatticeVector{0, 0, 1}), 8);
  REQUIRE(std::holds_alternative<AlmostSaturated>(r1));
  REQUIRE(std::holds_alternative<AlmostSaturated>(r2));
  REQUIRE(std::holds_alternative<AlmostSaturated>(r3));
  CHECK(std::get<AlmostSaturated>(r1).witness == LatticeVector{0, 1, 0});
  CHECK(std::get<AlmostSaturated>(r2).witness == LatticeVector{1, 0, 0});
  CHECK(std::get<AlmostSaturated>(r3).witness == LatticeVector{0, 1, 0});
  for (const auto* r : {&r1, &r2, &r3}) {
    CHECK(std::holds_alternative<SaturationPoint>(is_saturation_point(p, std::get<AlmostSaturated>(*r).witness)));
  }

  Face rho4 = face_of(p, LatticeVector{1, 1, -1});
  CHECK(face_saturation_status(p, rho4, 8) == FaceSaturationVerdict{NowhereSaturatedUpTo{8}});

  HoleFamilyCertificate cert{LatticeVector{1, 1, -1}, {{LatticeVector{1, 0, 0}, 2, 0, LatticeVector{1, 0, 1}}}, 0};
  auto certified = face_saturation_status(p, rho4, 8, &cert);
  REQUIRE(std::holds_alternative<NowhereSaturatedCertified>(certified));
  CHECK(std::get<NowhereSaturatedCertified>(certified).checked_up_to == 8);

  auto all = face_saturation_status(p, whole(p), 8);
  REQUIRE(std::holds_alternative<AlmostSaturated>(all));
  CHECK(std::holds_alternative<SaturationPoint>(is_saturation_point(p, std::get<AlmostSaturated>(all).witness)));
}

TEST_CASE("invalid certificates are rejected") {
  auto p = example();
  Face rho4 = face_of(p, LatticeVector{1, 1, -1});
  // Odd offset sends even-a points to even-a points, which lie in P.
  HoleFamilyCertificate wrong{LatticeVector{1, 1, -1}, {{LatticeVector{1, 0, 0}, 2, 0, LatticeVector{2, 0, 2}}}, 0};
  CHECK_THROWS_WITH_AS(face_saturation_status(p, rho4, 6, &wrong), doctest::Contains("not a hole"), Error);
  // Entry only matching a = 1 (mod 2) leaves the origin uncovered.
  HoleFamilyCertificate gap{LatticeVector{1, 1, -1}, {{LatticeVector{1, 0, 0}, 2, 1, LatticeVector{1, 0, 1}}}, 0};
  CHECK_THROWS_WITH_AS(face_saturation_status(p, rho4, 6, &gap), doctest::Contains("not covered"), Error);
  HoleFamilyCertificate elsewhere{LatticeVector{1, 0, 0}, {}, 0};
  CHECK_THROWS_AS(face_saturation_status(p, rho4, 6, &elsewhere), Error);
}

TEST_CASE("certificate check bound overrides the query bound") {
  auto p = example();
  Face rho4 = face_of(p, LatticeVector{1, 1, -1});
  HoleFamilyCertificate cert{LatticeVector{1, 1, -1}, {{LatticeVector{1, 0, 0}, 2, 0, LatticeVector{1, 0, 1}}}, 14};
  auto v = face_saturation_status(p, rho4, 4, &cert);
  REQUIRE(std::holds_alternative<NowhereSaturatedCertified>(v));
  CHECK(std::get<NowhereSaturatedCertified>(v).checked_up_to == 14);
}

TEST_CASE("comparison with a membership predicate") {
  auto p = example();
  MembershipPredicate pred{example_predicate, kExampleGens};
  auto same = equals_predicate_up_to(p, pred, 10);
  CHECK(same.equal);
  CHECK(same.points_checked == 506);

  Vecs four{{1, 0, 0}, {0, 1, 0}, {2, 0, 1}, {0, 1, 1}};
  auto q = MonoidPresentation::create(3, four, p.grading());
  auto diff = equals_predicate_up_to(q, pred, 10);
  CHECK_FALSE(diff.equal);
  REQUIRE(diff.first_discrepancy);
  CHECK(*diff.first_discrepancy == LatticeVector{2, 0, 2});

  auto self = equals_predicate_up_to(p, {[&](const LatticeVector& v) { return p.is_member(v); }, {}}, 6);
  CHECK(self.equal);
}

TEST_CASE("concurrent membership queries agree") {
  auto p = example();
  auto pts = box_points(p, 6, 10);
  std::vector<char> expected;
  for (const auto& v : pts) expected.push_back(example_predicate(v));
  std::vector<std::thread> threads;
  std::vector<int> mismatches(4, 0);
  for (int t = 0; t < 4; ++t)
    threads.emplace_back([&, t] {
      auto copy = p;
      for (std::size_t i = static_cast<std::size_t>(t); i < pts.size(); i += 1)
        if (copy.is_member(pts[i]) != static_cast<bool>(expected[i])) ++mismatches[static_cast<std::size_t>(t)];
    });
  for (auto& th : threads) th.join();
  CHECK(std::all_of(mismatches.begin(), mismatches.end(), [](int m) { return m == 0; }));
}
