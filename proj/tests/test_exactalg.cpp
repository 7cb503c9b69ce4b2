#include <random>

#include "doctest.h"
#include "hle/exactalg.hpp"

using namespace hle;

namespace {

RationalMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c) {
  std::uniform_int_distribution<int> entry(-3, 3);
  std::uniform_int_distribution<int> sparsity(0, 2);
  RationalMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (sparsity(rng) != 0) m(i, j) = entry(rng);
  return m;
}

}  // namespace

TEST_CASE("parse_rational reduces") {
  CHECK(parse_rational("4/6") == Rational(2, 3));
  CHECK(parse_rational("-2") == Rational(-2));
  CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
}

TEST_CASE("rank_kernel examples") {
  auto id = rank_kernel(RationalMatrix::identity(3));
  CHECK(id.rank == 3);
  CHECK(id.kernel_basis.empty());

  auto row = rank_kernel(RationalMatrix::from_ints({{1, 1}}));
  CHECK(row.rank == 1);
  REQUIRE(row.kernel_basis.size() == 1);
  CHECK(row.kernel_basis[0] == RationalVector{-1, 1});

  auto dep = rank_kernel(RationalMatrix::from_ints({{1, 2}, {2, 4}}));
  CHECK(dep.rank == 1);
  REQUIRE(dep.kernel_basis.size() == 1);
  CHECK(dep.kernel_basis[0] == RationalVector{-2, 1});
}

TEST_CASE("solve examples") {
  auto x = solve(RationalMatrix::identity(2), {3, Rational(1, 2)});
  REQUIRE(x);
  CHECK(*x == RationalVector{3, Rational(1, 2)});

  auto y = solve(RationalMatrix::from_ints({{1, 1}}), {2});
  REQUIRE(y);
  CHECK(*y == RationalVector{2, 0});

  CHECK_FALSE(solve(RationalMatrix(2, 2), {1, 0}));
}

TEST_CASE("quotient_basis examples") {
  auto q0 = quotient_basis(2, {});
  CHECK(q0.projection == RationalMatrix::identity(2));
  CHECK(q0.representatives.size() == 2);

  std::vector<RationalVector> g1{{1, 0}};
  auto q1 = quotient_basis(2, g1);
  CHECK(q1.representatives.size() == 1);
  CHECK(q1.projection.apply(g1[0]) == RationalVector{0});

  std::vector<RationalVector> g2{{1, 1, 0}, {0, 1, 1}};
  auto q2 = quotient_basis(3, g2);
  REQUIRE(q2.representatives.size() == 1);
  for (const auto& g : g2) CHECK(q2.projection.apply(g) == RationalVector{0});
  CHECK(q2.projection.apply(q2.representatives[0]) == RationalVector{1});
}

TEST_CASE("random rank-nullity and transpose rank") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t) {
    const std::size_t r = rng() % 6 + 1;
    const std::size_t c = rng() % 6 + 1;
    RationalMatrix a = random_matrix(rng, r, c);
    auto rk = rank_kernel(a);
    CHECK(rk.rank + rk.kernel_basis.size() == c);
    CHECK(rank(a.transpose()) == rk.rank);
    for (const auto& v : rk.kernel_basis) CHECK(RationalMatrix(a).apply(v) == RationalVector(r));
    CHECK(rank(kernel_matrix(rk, c)) == rk.kernel_basis.size());
  }
}

TEST_CASE("solve recovers image vectors") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    const std::size_t r = rng() % 5 + 1;
    const std::size_t c = rng() % 5 + 1;
    RationalMatrix a = random_matrix(rng, r, c);
    RationalVector x(c);
    for (auto& e : x) e = static_cast<long>(rng() % 7) - 3;
    RationalVector b = a.apply(x);
    auto y = solve(a, b);
    REQUIRE(y);
    CHECK(a.apply(*y) == b);
  }
}

TEST_CASE("column_space_basis is canonical") {
  auto a = RationalMatrix::from_ints({{1, 2}, {1, 2}, {0, 0}});
  auto b = RationalMatrix::from_ints({{3, 0}, {3, 0}, {0, 0}});
  CHECK(column_space_basis(a) == column_space_basis(b));
  CHECK(column_space_basis(a).cols() == 1);
}
