#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "flexcheck/cone.hpp"

using namespace flexcheck;

namespace {

using Vecs = std::vector<LatticeVector>;

Vecs sorted(Vecs v) {
  std::sort(v.begin(), v.end());
  return v;
}

// Brute-force facet normals of a full-dimensional cone: every (n-1)-subset of
// generators with rank n-1 spans a candidate hyperplane; keep the ones with
// all generators on one side.
Vecs oracle_facets(const Vecs& gens, std::size_t n) {
  std::set<LatticeVector> out;
  const std::size_t k = gens.size();
  std::vector<int> pick(k, 0);
  std::fill(pick.begin(), pick.begin() + static_cast<long>(std::min(k, n - 1)), 1);
  std::sort(pick.begin(), pick.end(), std::greater<>());
  do {
    Vecs sub;
    for (std::size_t i = 0; i < k; ++i)
      if (pick[i]) sub.push_back(gens[i]);
    if (rank(sub, n) != n - 1) continue;
    auto ker = kernel_lattice(sub, n);
    LatticeVector h = ker.at(0);
    bool nonneg = true, nonpos = true;
    for (const auto& g : gens) {
      int s = sgn(dot(h, g));
      if (s < 0) nonneg = false;
      if (s > 0) nonpos = false;
    }
    if (nonneg) out.insert(primitive(h));
    if (nonpos) out.insert(primitive(-h));
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return Vecs(out.begin(), out.end());
}

// Brute-force extreme rays of a pointed full-dimensional cone given by
// inequalities (same subset enumeration on the normals).
Vecs oracle_rays(const Vecs& normals, std::size_t n) { return oracle_facets(normals, n); }

bool oracle_contains(const Vecs& facets, const LatticeVector& v) {
  return std::all_of(facets.begin(), facets.end(), [&](const LatticeVector& f) { return sgn(dot(f, v)) >= 0; });
}

const Vecs kExampleGens{{1, 0, 0}, {0, 1, 0}, {2, 0, 1}, {2, 0, 2}, {0, 1, 1}};

RationalCone example_dual_cone() { return RationalCone::from_generators(3, kExampleGens); }

}  // namespace

TEST_CASE("dual of the first octant is itself") {
  Vecs units{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  auto oct = RationalCone::from_generators(3, units);
  auto d = dual_cone(oct);
  CHECK(d.rays() == sorted(units));
  CHECK(d.facets() == sorted(units));
  CHECK(d == oct);
}

TEST_CASE("dual cone of the example cone sigma") {
  Vecs sigma_rays{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, -1}};
  auto sigma = RationalCone::from_generators(3, sigma_rays);
  auto dual = dual_cone(sigma);
  CHECK(dual.facets() == sorted(sigma_rays));
  Vecs expected{{1, 0, 0}, {0, 1, 0}, {1, 0, 1}, {0, 1, 1}};
  CHECK(dual.rays() == sorted(expected));
  // Independent check against brute-force enumeration.
  CHECK(dual.rays() == oracle_rays(sigma_rays, 3));
}

TEST_CASE("dual of a half-plane is a ray") {
  Vecs normals{{1, 0}};
  auto half = RationalCone::from_inequalities(2, normals);
  CHECK_FALSE(half.is_pointed());
  auto d = dual_cone(half);
  CHECK(d.rays() == Vecs{{1, 0}});
  CHECK(d.lineality().empty());
  CHECK(d.equalities() == Vecs{{0, 1}});
}

TEST_CASE("double description removes non-extremal generators") {
  Vecs g2{{1, 0}, {1, 1}, {1, 2}};
  CHECK(RationalCone::from_generators(2, g2).rays() == Vecs{{1, 0}, {1, 2}});

  auto c = example_dual_cone();
  Vecs expected{{1, 0, 0}, {0, 1, 0}, {1, 0, 1}, {0, 1, 1}};
  CHECK(c.rays() == sorted(expected));
  // Extremality oracle: a generator is extremal iff it is outside the cone of the others.
  for (const auto& g : kExampleGens) {
    Vecs others;
    for (const auto& h : kExampleGens)
      if (h != g) others.push_back(h);
    bool extremal = !RationalCone::from_generators(3, others).contains(g);
    bool reported = std::find(c.rays().begin(), c.rays().end(), primitive(g)) != c.rays().end();
    CHECK(extremal == reported);
  }
}

TEST_CASE("single ray in the plane") {
  Vecs g{{1, 1}};
  auto c = RationalCone::from_generators(2, g);
  CHECK(c.rays() == Vecs{{1, 1}});
  CHECK(c.h_rep() == sorted(Vecs{{1, 1}, {1, -1}, {-1, 1}}));
  CHECK(c.dim() == 1);
}

TEST_CASE("pointedness") {
  Vecs units{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  CHECK(is_pointed(RationalCone::from_generators(3, units)));
  Vecs normals{{1, 0}};
  CHECK_FALSE(is_pointed(RationalCone::from_inequalities(2, normals)));
  auto c = example_dual_cone();
  CHECK(is_pointed(c));
  CHECK(rank(c.facets(), 3) == 3);
}

TEST_CASE("double description agrees with brute force on random cones") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + rng() % 3;
    Vecs gens;
    std::size_t count = n + rng() % 4;
    for (std::size_t i = 0; i < count; ++i) {
      LatticeVector v(n);
      for (std::size_t j = 0; j < n; ++j) v[j] = static_cast<long>(rng() % 7) - 2;
      if (!v.is_zero()) gens.push_back(v);
    }
    if (rank(gens, n) < n) continue;
    auto c = RationalCone::from_generators(n, gens);
    if (!c.is_pointed()) {
      // Non-pointed: every generator still satisfies every inequality.
      for (const auto& g : gens) CHECK(c.contains(g));
      continue;
    }
    CHECK(c.facets() == oracle_facets(gens, n));
    CHECK(c.rays() == oracle_rays(c.facets(), n));
    CHECK(dual_cone(dual_cone(c)) == c);
    CHECK(RationalCone::from_inequalities(n, c.facets()) == c);
  }
}

TEST_CASE("biduality with lineality") {
  Vecs gens{{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, 1, 1}};
  auto c = RationalCone::from_generators(3, gens);
  CHECK(c.lineality() == Vecs{{1, 0, 0}});
  CHECK(dual_cone(dual_cone(c)) == c);
  CHECK(RationalCone::from_generators(3, c.v_rep()) == c);
  CHECK(RationalCone::from_inequalities(3, c.h_rep()) == c);
}

TEST_CASE("face lattice sizes") {
  Vecs units{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  auto faces = face_lattice(RationalCone::from_generators(3, units));
  CHECK(faces.size() == 8);
  std::vector<std::size_t> dims;
  for (const auto& f : faces) dims.push_back(f.dim);
  CHECK(dims == std::vector<std::size_t>{0, 1, 1, 1, 2, 2, 2, 3});

  auto ex = face_lattice(example_dual_cone());
  CHECK(ex.size() == 10);
  CHECK(std::count_if(ex.begin(), ex.end(), [](const Face& f) { return f.dim == 1; }) == 4);
  CHECK(std::count_if(ex.begin(), ex.end(), [](const Face& f) { return f.dim == 2; }) == 4);

  Vecs ray{{2, 3}};
  CHECK(face_lattice(RationalCone::from_generators(2, ray)).size() == 2);
}

TEST_CASE("faces: dimension matches span basis and tight sets") {
  auto c = example_dual_cone();
  for (const auto& f : face_lattice(c)) {
    CHECK(f.dim == f.span_basis.size());
    for (std::size_t i : f.rays)
      for (std::size_t j : f.tight_facets) CHECK(sgn(dot(c.facets()[j], c.rays()[i])) == 0);
    if (!f.rays.empty()) CHECK(rank(face_generators(c, f), 3) == f.dim);
  }
}

TEST_CASE("dual faces") {
  auto dual = example_dual_cone();   // sigma-dual
  auto sigma = dual_cone(dual);
  // The face of sigma generated by the ray (1,1,-1).
  auto it = std::find(sigma.rays().begin(), sigma.rays().end(), LatticeVector{1, 1, -1});
  REQUIRE(it != sigma.rays().end());
  std::vector<std::size_t> idx{static_cast<std::size_t>(it - sigma.rays().begin())};
  Face rho4 = face_from_rays(sigma, idx);
  Face hat = dual_face(dual, rho4);
  CHECK(hat.dim == 2);
  CHECK(sorted(face_generators(dual, hat)) == sorted(Vecs{{1, 0, 1}, {0, 1, 1}}));

  // Dimensions add up to the rank for every face.
  for (const auto& tau : face_lattice(sigma)) CHECK(tau.dim + dual_face(dual, tau).dim == 3);

  Face zero = face_from_rays(sigma, std::vector<std::size_t>{});
  CHECK(dual_face(dual, zero).dim == 3);
  std::vector<std::size_t> all{0, 1, 2, 3};
  CHECK(dual_face(dual, face_from_rays(sigma, all)).dim == 0);

  Face bogus = rho4;
  bogus.tight_facets.clear();
  CHECK_THROWS_AS(dual_face(dual, bogus), Error);
}

TEST_CASE("parallelepiped points") {
  Vecs units{{1, 0}, {0, 1}};
  CHECK(parallelepiped_points(units) == Vecs{{0, 0}});
  Vecs g{{1, 0}, {1, 2}};
  CHECK(parallelepiped_points(g) == Vecs{{0, 0}, {1, 1}});
  Vecs g3{{2, 0, 1}, {0, 1, 1}, {1, 0, 0}};
  CHECK(abs(determinant(IntegerMatrix::from_rows(g3, 3))) == 1);
  CHECK(parallelepiped_points(g3) == Vecs{{0, 0, 0}});
  // Lower-dimensional piece: counted in its span lattice.
  Vecs flat{{1, 0, 1}, {1, 2, 1}};
  CHECK(parallelepiped_points(flat).size() == 2);
}

TEST_CASE("parallelepiped point count equals the lattice volume") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 40; ++trial) {
    Vecs g;
    for (int i = 0; i < 3; ++i)
      g.push_back(LatticeVector{static_cast<long>(rng() % 7) - 3, static_cast<long>(rng() % 7) - 3,
                                static_cast<long>(rng() % 7) - 3});
    if (rank(g, 3) < 3) continue;
    auto pts = parallelepiped_points(g);
    CHECK(Integer(static_cast<long>(pts.size())) == abs(determinant(IntegerMatrix::from_rows(g, 3))));
    for (const auto& p : pts) {
      auto t = solve_rational(g, p);
      REQUIRE(t);
      for (const auto& x : *t) CHECK((sgn(x) >= 0 && x < 1));
    }
  }
}

namespace {

// Sum over pieces of |det| / prod <phi, g>, which is the normalized volume
// of the truncation {x in cone : <phi, x> <= 1} up to a constant factor.
Rational truncated_volume(const std::vector<SimplicialPiece>& pieces, const LatticeVector& phi) {
  Rational total = 0;
  for (const auto& p : pieces) {
    Rational v = Rational(lattice_volume(p.generators));
    for (const auto& g : p.generators) v /= Rational(dot(phi, g));
    total += v;
  }
  return total;
}

}  // namespace

TEST_CASE("triangulations") {
  Vecs units{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  auto oct = RationalCone::from_generators(3, units);
  CHECK(triangulate(oct, units).size() == 1);

  auto c = example_dual_cone();
  auto pieces = triangulate(c, kExampleGens);
  CHECK(pieces.size() >= 2);
  LatticeVector phi{1, 1, 0};
  Vecs reversed(kExampleGens.rbegin(), kExampleGens.rend());
  Vecs rays_only = c.rays();
  CHECK(truncated_volume(pieces, phi) == truncated_volume(triangulate(c, reversed), phi));
  CHECK(truncated_volume(pieces, phi) == truncated_volume(triangulate(c, rays_only), phi));
  for (const auto& p : pieces) {
    CHECK(p.generators.size() == 3);
    for (const auto& g : p.generators)
      CHECK(std::find(kExampleGens.begin(), kExampleGens.end(), g) != kExampleGens.end());
  }
  // Every generator lies in some piece.
  for (const auto& g : kExampleGens) {
    bool found = false;
    for (const auto& p : pieces) {
      auto t = solve_rational(p.generators, g);
      if (t && std::all_of(t->begin(), t->end(), [](const Rational& x) { return sgn(x) >= 0; })) found = true;
    }
    CHECK(found);
  }

  Vecs plane{{1, 0}, {1, 1}, {1, 2}};
  CHECK(triangulate(RationalCone::from_generators(2, plane), plane).size() == 2);
}

TEST_CASE("triangulation pieces have disjoint interiors") {
  auto c = example_dual_cone();
  auto pieces = triangulate(c, kExampleGens);
  // Sample interior points of each piece; none may be interior to another.
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    LatticeVector center(3);
    for (const auto& g : pieces[i].generators) center += g;
    for (std::size_t j = 0; j < pieces.size(); ++j) {
      if (i == j) continue;
      auto t = solve_rational(pieces[j].generators, center);
      REQUIRE(t);
      bool interior = std::all_of(t->begin(), t->end(), [](const Rational& x) { return sgn(x) > 0; });
      CHECK_FALSE(interior);
    }
  }
}

TEST_CASE("triangulation rejects vectors that miss a ray") {
  auto c = example_dual_cone();
  Vecs partial{{1, 0, 0}, {0, 1, 0}, {1, 0, 1}};
  CHECK_THROWS_WITH_AS(triangulate(c, partial), doctest::Contains("(0,1,1)"), Error);
  Vecs outside{{1, 0, 0}, {0, 0, 1}};
  CHECK_THROWS_AS(triangulate(c, outside), Error);
}

namespace {

// Brute-force Hilbert basis in the plane: irreducible lattice points of the
// cone within a box large enough to contain every irreducible element.
Vecs oracle_hilbert_basis_2d(const Vecs& gens) {
  Vecs facets = oracle_facets(gens, 2);
  long box = 0;
  for (const auto& g : gens) box += std::abs(g[0].get_si()) + std::abs(g[1].get_si());
  Vecs pts;
  for (long a = -box; a <= box; ++a)
    for (long b = -box; b <= box; ++b) {
      LatticeVector v{a, b};
      if (!v.is_zero() && oracle_contains(facets, v)) pts.push_back(v);
    }
  Vecs out;
  for (const auto& c : pts) {
    bool reducible = std::any_of(pts.begin(), pts.end(), [&](const LatticeVector& y) {
      LatticeVector z = c - y;
      return !z.is_zero() && oracle_contains(facets, z);
    });
    if (!reducible) out.push_back(c);
  }
  return sorted(out);
}

}  // namespace

TEST_CASE("Hilbert bases") {
  Vecs units{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  CHECK(hilbert_basis(RationalCone::from_generators(3, units)) == sorted(units));

  Vecs expected{{1, 0, 0}, {0, 1, 0}, {1, 0, 1}, {0, 1, 1}};
  CHECK(hilbert_basis(example_dual_cone()) == sorted(expected));

  Vecs g{{1, 0}, {1, 2}};
  CHECK(hilbert_basis(RationalCone::from_generators(2, g)) == Vecs{{1, 0}, {1, 1}, {1, 2}});

  Vecs normals{{1, 0}};
  CHECK_THROWS_WITH_AS(hilbert_basis(RationalCone::from_inequalities(2, normals)),
                       doctest::Contains("Hilbert basis requires pointed cone"), Error);
}

TEST_CASE("Hilbert bases agree with brute force in the plane") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    Vecs gens{{static_cast<long>(1 + rng() % 5), static_cast<long>(rng() % 5) - 2},
              {static_cast<long>(rng() % 5) - 2, static_cast<long>(1 + rng() % 5)}};
    if (rank(gens, 2) < 2) continue;
    auto c = RationalCone::from_generators(2, gens);
    if (!c.is_pointed()) continue;
    auto hb = hilbert_basis(c);
    CHECK(hb == oracle_hilbert_basis_2d(gens));
    // Minimality: no element is a sum of the others' cone points.
    for (const auto& h : hb) {
      for (const auto& k : hb)
        if (k != h) CHECK_FALSE((c.contains(h - k) && !(h - k).is_zero() && c.contains(k)));
    }
  }
}
