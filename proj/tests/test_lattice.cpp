#include <random>

#include "doctest.h"
#include "flexcheck/lattice.hpp"

using namespace flexcheck;

namespace {

IntegerMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, long span) {
  IntegerMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      m(r, c) = static_cast<long>(rng() % static_cast<unsigned long>(2 * span + 1)) - span;
  return m;
}

bool is_row_hermite(const IntegerMatrix& h) {
  long last_pivot = -1;
  bool seen_zero_row = false;
  for (std::size_t r = 0; r < h.rows(); ++r) {
    std::size_t c = 0;
    while (c < h.cols() && sgn(h(r, c)) == 0) ++c;
    if (c == h.cols()) {
      seen_zero_row = true;
      continue;
    }
    if (seen_zero_row) return false;
    if (static_cast<long>(c) <= last_pivot) return false;
    if (sgn(h(r, c)) <= 0) return false;
    for (std::size_t above = 0; above < r; ++above)
      if (sgn(h(above, c)) < 0 || h(above, c) >= h(r, c)) return false;
    last_pivot = static_cast<long>(c);
  }
  return true;
}

}  // namespace

TEST_CASE("hermite normal form of a 2x2 example") {
  auto res = hermite_normal_form(IntegerMatrix{{2, 4}, {1, 3}});
  CHECK(res.hermite == IntegerMatrix{{1, 1}, {0, 2}});
  CHECK(res.transform * IntegerMatrix{{2, 4}, {1, 3}} == res.hermite);
}

TEST_CASE("hermite normal form of identity and zero") {
  auto id = IntegerMatrix::identity(3);
  auto res = hermite_normal_form(id);
  CHECK(res.hermite == id);
  CHECK(res.transform == id);

  IntegerMatrix zero(2, 2);
  CHECK(hermite_normal_form(zero).hermite == zero);
}

TEST_CASE("hermite normal form properties on random matrices") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t rows = 1 + rng() % 5, cols = 1 + rng() % 5;
    auto a = random_matrix(rng, rows, cols, 6);
    auto res = hermite_normal_form(a);
    CHECK(res.transform * a == res.hermite);
    CHECK(abs(determinant(res.transform)) == 1);
    CHECK(is_row_hermite(res.hermite));
    std::size_t nonzero = 0;
    for (std::size_t r = 0; r < rows; ++r) nonzero += res.hermite.row(r).is_zero() ? 0 : 1;
    CHECK(rank(a) == nonzero);
    CHECK(rank(a) == rank(a.transpose()));
    // Uniqueness: a unimodular change of rows leaves H unchanged.
    IntegerMatrix shuffled = a;
    if (rows > 1) {
      for (std::size_t c = 0; c < cols; ++c) shuffled(0, c) += 3 * a(1, c);
    }
    CHECK(hermite_normal_form(shuffled).hermite == res.hermite);
  }
}

TEST_CASE("rank examples") {
  CHECK(rank(IntegerMatrix::identity(4)) == 4);
  CHECK(rank(IntegerMatrix{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, -1}}) == 3);
  CHECK(rank(IntegerMatrix(3, 2)) == 0);
}

TEST_CASE("primitive direction") {
  CHECK(primitive(LatticeVector{2, 4, -6}) == LatticeVector{1, 2, -3});
  CHECK(primitive(LatticeVector{1, 1, -1}) == LatticeVector{1, 1, -1});
  CHECK(primitive(LatticeVector{0, 0, 5}) == LatticeVector{0, 0, 1});
  CHECK_THROWS_WITH_AS(primitive(LatticeVector{0, 0}), doctest::Contains("no primitive direction"), Error);

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    LatticeVector v{static_cast<long>(rng() % 21) - 10, static_cast<long>(rng() % 21) - 10,
                    static_cast<long>(rng() % 21) - 10};
    if (v.is_zero()) continue;
    Integer k = 1 + static_cast<long>(rng() % 9);
    CHECK(primitive(k * v) == primitive(v));
  }
}

TEST_CASE("kernel lattice examples") {
  auto basis = kernel_lattice(IntegerMatrix{{1, 1, -1}});
  REQUIRE(basis.size() == 2);
  for (const auto& b : basis) CHECK(dot(b, LatticeVector{1, 1, -1}) == 0);
  // Same lattice as {(1,0,1),(0,1,1)}: equal Hermite forms.
  std::vector<LatticeVector> expected{{1, 0, 1}, {0, 1, 1}};
  CHECK(hermite_normal_form(IntegerMatrix::from_rows(basis, 3)).hermite ==
        hermite_normal_form(IntegerMatrix::from_rows(expected, 3)).hermite);

  CHECK(kernel_lattice(IntegerMatrix::identity(3)).empty());
  CHECK(kernel_lattice(IntegerMatrix(1, 3)).size() == 3);
}

TEST_CASE("kernel lattice properties") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t rows = 1 + rng() % 4, cols = 1 + rng() % 5;
    auto a = random_matrix(rng, rows, cols, 4);
    auto basis = kernel_lattice(a);
    CHECK(basis.size() == cols - rank(a));
    for (const auto& b : basis) {
      for (std::size_t r = 0; r < rows; ++r) CHECK(dot(a.row(r), b) == 0);
    }
    if (!basis.empty()) CHECK(rank(basis, cols) == basis.size());
  }
}

TEST_CASE("kernel lattice is saturated") {
  // 2x - 4y = 0 has kernel generated by (2,1), not by (4,2).
  auto basis = kernel_lattice(IntegerMatrix{{2, -4}});
  REQUIRE(basis.size() == 1);
  CHECK(primitive(basis[0]) == basis[0]);
  CHECK((basis[0] == LatticeVector{2, 1} || basis[0] == LatticeVector{-2, -1}));
}

TEST_CASE("rational solve") {
  std::vector<LatticeVector> cols{{1, 0}, {1, 2}};
  auto t = solve_rational(cols, LatticeVector{1, 1});
  REQUIRE(t);
  CHECK((*t)[0] == Rational(1, 2));
  CHECK((*t)[1] == Rational(1, 2));
  std::vector<LatticeVector> one{{1, 1}};
  CHECK_FALSE(solve_rational(one, LatticeVector{1, 0}));
}

TEST_CASE("determinant") {
  CHECK(determinant(IntegerMatrix{{2, 4}, {1, 3}}) == 2);
  CHECK(determinant(IntegerMatrix{{0, 1, 0}, {2, 0, 2}, {0, 1, 1}}) == -2);
  CHECK(determinant(IntegerMatrix{{1, 2}, {2, 4}}) == 0);
}
