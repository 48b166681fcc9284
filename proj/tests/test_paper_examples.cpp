#include "doctest.h"
#include "flexcheck/paper_examples.hpp"

using namespace flexcheck;

namespace {

std::vector<Polynomial> hand_written_x2(const Ring& r) {
  std::vector<Polynomial> out;
  for (const char* s :
       {"y1*z2 - y2*z1", "y1*w2 - y2*w1", "z1*w2 - z2*w1", "x*y1^4 - z1^4 - w1^4", "x*y1^3*y2 - z1^3*z2 - w1^3*w2",
        "x*y1^2*y2^2 - z1^2*z2^2 - w1^2*w2^2", "x*y1*y2^3 - z1*z2^3 - w1*w2^3", "x*y2^4 - z2^4 - w2^4"})
    out.push_back(r.parse(s));
  return out;
}

std::string image(const XmModel& m, const std::string& d, const std::string& var) {
  const auto& r = m.invariant->ring();
  return r.format(m.find(d).invariant.image(r.index_of(var)));
}

}  // namespace

TEST_CASE("X_2 model") {
  auto m = build_xm(2);
  CHECK(m.generator_count() == 7);
  CHECK(m.invariant->ring().names() == std::vector<std::string>{"x", "y1", "y2", "z1", "z2", "w1", "w2"});
  CHECK(m.ambient->ring().names() == std::vector<std::string>{"x", "y", "z", "w", "u1", "u2"});
  CHECK(m.ambient->ring().format(m.ambient->relations().front()) == "x*y^4 - z^4 - w^4");
  CHECK(m.dimension() == 4);
  std::vector<std::string> names;
  for (const auto& c : m.catalog) names.push_back(c.name);
  CHECK(names == std::vector<std::string>{"dz", "dw", "rho12", "rho21"});
  CHECK(image(m, "dz", "x") == "4*z1^3");
  CHECK(image(m, "dz", "z1") == "y1^4");
  CHECK(image(m, "dz", "z2") == "y1^3*y2");
  CHECK(image(m, "dz", "w1") == "0");
  CHECK(image(m, "dw", "w2") == "y1^3*y2");
  CHECK(image(m, "rho12", "y1") == "y2");
  CHECK(image(m, "rho12", "w1") == "w2");
  CHECK(image(m, "rho12", "y2") == "0");
  CHECK(m.ambient->ring().format(m.find("dz").ambient.image(0)) == "4*z^3*u1^3");
  CHECK(m.generic_field_names() == std::vector<std::string>{"dz", "dw", "rho12", "rho21"});
  CHECK(m.u1_field_names() == std::vector<std::string>{"dz", "rho12", "rho21"});

  // Conjectured presentation agrees with the hand-written one and with elimination.
  const auto& r = m.invariant->ring();
  CHECK(groebner_basis(m.invariant->relations()) == groebner_basis(hand_written_x2(r)));
  CHECK(groebner_basis(eliminated_relations(m)) == m.invariant->basis());
}

TEST_CASE("X_m sizes and parameters") {
  auto m4 = build_xm(4);
  CHECK(m4.dimension() == 6);
  CHECK(m4.generator_count() == 13);
  CHECK(m4.catalog.size() == 2 + 12);
  auto m3 = build_xm(3);
  // 3 * C(3,2) minors and C(6,4) quartics.
  CHECK(m3.invariant->relations().size() == 9 + 15);
  CHECK(m3.generic_field_names() == std::vector<std::string>{"dz", "dw", "rho12", "rho21", "rho31"});
  CHECK_THROWS_WITH_AS(build_xm(1), doctest::Contains("m >= 2"), Error);
  CHECK_THROWS_WITH_AS(build_xm_general(3, 2, 2), doctest::Contains("k+1 < n"), Error);
  CHECK_THROWS_AS(build_xm_general(4, 0, 2), Error);
  CHECK_THROWS_AS(build_xm(11), Error);
}

TEST_CASE("general family") {
  auto a = build_xm_general(4, 2, 2);
  auto b = build_xm(2);
  CHECK(a.invariant->relations() == b.invariant->relations());
  CHECK(a.invariant->ring() == b.invariant->ring());
  REQUIRE(a.catalog.size() == b.catalog.size());
  for (std::size_t i = 0; i < a.catalog.size(); ++i) {
    CHECK(a.catalog[i].name == b.catalog[i].name);
    CHECK(a.catalog[i].invariant.images() == b.catalog[i].invariant.images());
  }

  auto g = build_xm_general(5, 3, 2);
  CHECK(g.invariant->ring().name(3) == "z1_1");
  CHECK(g.dimension() == 5);
  for (const auto& c : g.catalog) {
    CHECK(preserves_relations(c.invariant).preserved);
    CHECK(preserves_relations(c.ambient).preserved);
    CHECK(restricts_to(c.ambient, c.invariant).preserved);
  }
  auto chain = is_locally_nilpotent_bounded(g.find("dz1").invariant);
  REQUIRE(chain.nilpotent);
  CHECK(chain.chain_lengths[0] == 6);
  CHECK(derivation_degree(g.find("dz2").invariant, g.z2) == std::optional<LatticeVector>(LatticeVector{4, 5}));
  CHECK(groebner_basis(eliminated_relations(g)) == g.invariant->basis());
}

TEST_CASE("samples") {
  auto m = build_xm(2);
  Sampler s(4);
  for (int t = 0; t < 20; ++t) {
    auto g = generic_sample(m, s);
    check_on_variety(*m.invariant, g);
    for (int i = 1; i <= 2; ++i) CHECK_FALSE(g[m.invariant_index(0, i)].is_zero());
    auto u = u1_sample(m, s);
    check_on_variety(*m.invariant, u);
    CHECK(d_component(m, u) == std::optional<int>(1));
    auto d = d_sample(m, s);
    check_on_variety(*m.invariant, d);
    CHECK(d_component(m, d).has_value());
    auto l = l_sample(m, s);
    check_on_variety(*m.invariant, l);
  }
  // A point off D has no component.
  CHECK_FALSE(d_component(m, generic_sample(m, s)));
  // z + e^3 w = 0 picks j = 2.
  Number e = Number::epsilon();
  std::vector<Number> p{3, 0, 0, 1, 2, e, e * Number(2)};
  check_on_variety(*m.invariant, p);
  CHECK(d_component(m, p) == std::optional<int>(2));
  auto g = build_xm_general(5, 3, 2);
  CHECK_THROWS_AS(u1_sample(g, s), Error);
  check_on_variety(*g.invariant, generic_sample(g, s));
}

TEST_CASE("sampler is deterministic") {
  Sampler a(11), b(11), c(12);
  std::vector<Rational> va, vb, vc;
  for (int i = 0; i < 30; ++i) {
    va.push_back(a.rational(false));
    vb.push_back(b.rational(false));
    vc.push_back(c.rational(false));
  }
  CHECK(va == vb);
  CHECK(va != vc);
}

TEST_CASE("construction and census suites") {
  auto m = build_xm(2);
  auto r = verify_xm(m);
  CHECK_FALSE(r.has_refuted());
  CHECK(r.count(ClaimStatus::Unknown) == 0);
  CHECK(r.count(ClaimStatus::Unverifiable) == 3);
  const auto* nil = r.find("derivation.dz.nilpotent");
  REQUIRE(nil);
  CHECK(nil->witnesses[0]["x"] == 5);
  CHECK(nil->witnesses[0]["z1"] == 2);
  CHECK(r.find("derivation.rho12.nilpotent")->witnesses[0]["y1"] == 2);
  CHECK(r.find("decomposition.dz+rho12")->witnesses[0] == Json::parse("[[0],[4]]"));
  CHECK(r.find("derivation.dz.z2_degree")->witnesses[0] == Json::parse("[3,4]"));
  CHECK(r.find("sign.convention")->witnesses[1]["residue"] == "8*y^4*z^3*u1^3");
  CHECK(r.find("jacobian.L")->status == ClaimStatus::Verified);

  CensusOptions skip;
  skip.eliminate = false;
  auto r3 = verify_xm(build_xm(3), skip);
  CHECK_FALSE(r3.has_refuted());
  CHECK(r3.find("ideal.complete")->status == ClaimStatus::Unknown);
  CHECK(r3.find("jacobian.L")->status == ClaimStatus::Unknown);
  CHECK(r3.find("jacobian.L")->details.find("completeness assumed") != std::string::npos);
  CHECK(r3.find("rank.generic")->status == ClaimStatus::Verified);

  auto g = verify_xm(build_xm_general(5, 3, 2));
  CHECK_FALSE(g.has_refuted());
  CHECK(g.find("rank.u1")->status == ClaimStatus::Unverifiable);
}

TEST_CASE("effort cap turns into unknown") {
  CensusOptions tiny;
  tiny.effort_seconds = 1e-9;
  auto r = verify_construction(build_xm(2), tiny);
  CHECK(r.find("ideal.complete")->status == ClaimStatus::Unknown);
  CHECK(r.find("ideal.complete")->details.find("effort cap") != std::string::npos);
}

TEST_CASE("example3 suite") {
  auto r = verify_example3(8);
  CHECK(r.count(ClaimStatus::Verified) == r.entries.size());
  CHECK(r.find("face.rho4")->witnesses[0]["status"] == "nowhere_saturated_certified");
  CHECK(r.find("face.rho1")->witnesses[0]["status"] == "almost_saturated");
  // Too small a bound leaves the verdict open but refutes nothing.
  auto small = verify_example3(0);
  CHECK_FALSE(small.has_refuted());
  CHECK_THROWS_AS(verify_example3(-1), Error);

  auto pred = example3_predicate();
  CHECK(pred.test(LatticeVector{2, 0, 2}));
  CHECK_FALSE(pred.test(LatticeVector{1, 0, 1}));
  CHECK(pred.test(LatticeVector{1, 1, 1}));
  CHECK_FALSE(pred.test(LatticeVector{0, 0, 1}));
}

TEST_CASE("census reports round trip and are deterministic") {
  auto m = build_xm(2);
  CensusOptions opt;
  opt.seed = 99;
  auto a = verify_xm(m, opt);
  auto b = verify_xm(m, opt);
  CHECK(census_to_json(a).dump() == census_to_json(b).dump());
  CHECK(census_from_json(census_to_json(a)) == a);
  opt.timings = true;
  auto t = verify_example3(6, opt);
  CHECK(t.entries.front().seconds.has_value());
  CHECK(census_from_json(census_to_json(t)) == t);
  auto text = census_to_text(a);
  CHECK(text.find("verified     sign.convention") != std::string::npos);
  CHECK_THROWS_AS(claim_status_from_string("maybe"), Error);
}

TEST_CASE("built-in names") {
  CHECK(xm_from_name("xm:m=3").m == 3);
  auto g = xm_from_name("xm-general:n=5,k=3,m=2");
  CHECK(g.n == 5);
  CHECK(g.k == 3);
  CHECK(is_xm_name("xm:m=2"));
  CHECK_FALSE(is_xm_name("example3"));
  CHECK_THROWS_AS(xm_from_name("xm:m=two"), Error);
  CHECK_THROWS_AS(xm_from_name("xm:n=2"), Error);
  CHECK_THROWS_AS(xm_from_name("xm-general:n=5,k=3"), Error);
  CHECK_THROWS_WITH_AS(xm_from_name("xm-general:n=3,k=2,m=2"), doctest::Contains("k+1 < n"), Error);
}

TEST_CASE("scenarios") {
  auto m = build_xm(2);
  auto s = xm_scenario(m, 1);
  CHECK(s.name == "xm:m=2");
  auto j = scenario_to_json(s);
  auto back = scenario_from_json(j);
  CHECK(scenario_to_json(back).dump() == j.dump());
  CHECK(j["derivations"]["dz"]["x"] == "4*z1^3");
  CHECK(j["points"]["unit"] == Json::parse("[2,1,1,1,1,1,1]"));

  auto sum = derivation_expression(s, "dz + rho12");
  auto parts = graded_decompose(sum, find_named(s.gradings, "F", "grading"));
  CHECK(parts.size() == 2);
  auto list = derivation_list(s, "dz,dw,rho12,rho21");
  CHECK(tangent_rank(list, find_named(s.points, "unit", "point")) == 4);
  CHECK(tangent_rank(list, find_named(s.points, "L", "point")) == 0);
  CHECK_THROWS_WITH_AS(derivation_expression(s, "dz+nope"), doctest::Contains("known: dz, dw, rho12, rho21"), Error);
  CHECK_THROWS_AS(derivation_expression(s, "dz+"), Error);

  // Hand-written scenario over Q.
  auto small = scenario_from_json(Json::parse(R"({
    "field": "Q",
    "variables": ["a", "b"],
    "relations": [],
    "derivations": {"d": {"a": "b"}},
    "gradings": {"deg": {"rank": 1, "degrees": {"a": 1, "b": 0}}},
    "points": {"p": [1, "1/2"]},
    "checks": ["relations"]
  })"));
  CHECK(small.checks == std::vector<std::string>{"relations"});
  CHECK(is_locally_nilpotent_bounded(find_named(small.derivations, "d", "derivation")).chain_lengths ==
        std::vector<std::size_t>{2, 1});
  CHECK(find_named(small.points, "p", "point")[1] == Number(Rational(1, 2)));

  CHECK_THROWS_WITH_AS(scenario_from_json(Json::parse(R"({"variables": ["a"], "relations": ["a"], "points": {"p": [1]}})")),
                       doctest::Contains("not on the variety"), Error);
  CHECK_THROWS_AS(scenario_from_json(Json::parse(R"({"field": "R", "variables": ["a"]})")), Error);
  CHECK_THROWS_AS(scenario_from_json(Json::parse(R"({"field": "Q", "variables": ["a"], "relations": ["e*a"]})")), Error);
  CHECK_THROWS_WITH_AS(
      scenario_from_json(Json::parse(
          R"({"variables": ["a","b"], "relations": ["a^2 - b"], "gradings": {"g": {"degrees": {"a": 1, "b": 1}}}})")),
      doctest::Contains("not homogeneous"), Error);
  CHECK_THROWS_WITH_AS(scenario_from_json(Json::parse(R"({"relations": []})")), doctest::Contains("variables"), Error);
}
