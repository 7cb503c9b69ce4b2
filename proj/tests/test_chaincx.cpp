#include <random>

#include "doctest.h"
#include "hle/chaincx.hpp"
#include "hle/errors.hpp"

using namespace hle;

namespace {

ChainComplex cone() { return ChainComplex(0, {1, 1}, {RationalMatrix::from_ints({{1}})}); }

std::map<int, std::size_t> B(std::initializer_list<std::pair<const int, std::size_t>> v) { return v; }

}  // namespace

TEST_CASE("validation") {
  CHECK(ChainComplex().is_zero());
  CHECK(ChainComplex::concentrated(0).dim(0) == 1);
  CHECK_THROWS_AS(ChainComplex(0, {1, 1, 1}, {RationalMatrix::from_ints({{1}}), RationalMatrix::from_ints({{1}})}),
                  DSquareNonzero);
  CHECK_THROWS_AS(ChainComplex(0, {1, 2}, {RationalMatrix::from_ints({{1}})}), ShapeMismatch);
  auto q = ChainComplex::concentrated(0);
  CHECK_THROWS_AS(ChainMap(cone(), cone(), {{1, RationalMatrix::from_ints({{1}})}}), ChainRuleViolation);
  (void)q;
}

TEST_CASE("homology examples") {
  CHECK(nonzero_betti(ChainComplex::concentrated(0)) == B({{0, 1}}));
  CHECK(nonzero_betti(cone()).empty());
  ChainComplex two(0, {1, 1}, {RationalMatrix(1, 1)});
  CHECK(nonzero_betti(two) == B({{0, 1}, {1, 1}}));
  auto h = homology(two, 1);
  REQUIRE(h.representatives.size() == 1);
  CHECK(h.representatives[0] == RationalVector{1});
}

TEST_CASE("quasi-isomorphism examples") {
  auto q = ChainComplex::concentrated(0);
  CHECK(is_quasi_iso(ChainMap::identity(q)).quasi_iso);
  CHECK(is_quasi_iso(ChainMap::zero(cone(), ChainComplex())).quasi_iso);
  CHECK_FALSE(is_quasi_iso(ChainMap::zero(q, q)).quasi_iso);
}

TEST_CASE("hom complex examples") {
  ChainComplex b(-1, {1, 2, 1}, {RationalMatrix::from_ints({{1, 0}}), RationalMatrix::from_ints({{0}, {1}})});
  CHECK(hom_complex(ChainComplex::concentrated(0), b) == b);

  ChainComplex a(0, {1, 1}, {RationalMatrix(1, 1)});
  auto h = hom_complex(a, ChainComplex::concentrated(0));
  CHECK(h.dim(0) == 1);
  CHECK(h.dim(-1) == 1);
  CHECK(h.total_dim() == 2);

  auto q = ChainComplex::concentrated(0);
  CHECK(hom_complex(q, q) == q);
}

TEST_CASE("hom complex degree-zero cycles are chain maps") {
  std::mt19937_64 rng(3);
  ChainComplex a = cone();
  ChainComplex b(0, {2, 1}, {RationalMatrix::from_ints({{1}, {-1}})});
  auto h = hom_complex(a, b);
  auto z = rank_kernel(h.d(0));
  for (const auto& v : z.kernel_basis) {
    CHECK_NOTHROW(ChainMap(a, b, unpack_degree_zero(a, b, v)));
  }
  // dim Z_0 Hom(Q[0], B) = dim ker d_0(B) = dim B_0
  auto hb = hom_complex(ChainComplex::concentrated(0), b);
  CHECK(rank_kernel(hb.d(0)).kernel_basis.size() == rank_kernel(b.d(0)).kernel_basis.size());
  (void)rng;
}

TEST_CASE("hom_map functoriality on identities") {
  ChainComplex b(0, {2, 1}, {RationalMatrix::from_ints({{1}, {-1}})});
  auto a = cone();
  auto id = hom_map(ChainMap::identity(a), ChainMap::identity(b));
  CHECK(id == ChainMap::identity(hom_complex(a, b)));
}

TEST_CASE("product_total examples") {
  auto q = ChainComplex::concentrated(0);
  std::vector<ChainComplex> one{q};
  CHECK(product_total(one, {}) == q);

  std::vector<ChainComplex> two{q, q};
  std::vector<GradedMap> idh{GradedMap{{{0, RationalMatrix::identity(1)}}}};
  CHECK(nonzero_betti(product_total(two, idh)).empty());

  std::vector<GradedMap> zeroh{GradedMap{}};
  auto t = product_total(two, zeroh);
  CHECK(t.dim(0) == 1);
  CHECK(t.dim(-1) == 1);
  CHECK(nonzero_betti(t) == B({{-1, 1}, {0, 1}}));
}

TEST_CASE("equalizer examples") {
  auto q = ChainComplex::concentrated(0);
  auto id = ChainMap::identity(q);
  CHECK(equalizer_kernel(id, id).complex == q);
  CHECK(equalizer_kernel(id, ChainMap::zero(q, q)).complex.is_zero());

  auto q2 = ChainComplex::concentrated(0, 2);
  ChainMap f(q2, q, {{0, RationalMatrix::from_ints({{1, 0}})}});
  ChainMap g(q2, q, {{0, RationalMatrix::from_ints({{0, 1}})}});
  auto eq = equalizer_kernel(f, g);
  CHECK(eq.complex.dim(0) == 1);
  auto diag = RationalMatrix::from_ints({{2}, {2}});
  CHECK(equalizer_coordinates(eq, 0, diag) == RationalMatrix::from_ints({{2}}));
  CHECK_THROWS_AS(equalizer_coordinates(eq, 0, RationalMatrix::from_ints({{1}, {0}})), NotNatural);
}

TEST_CASE("direct sums") {
  std::vector<ChainComplex> s{cone(), ChainComplex::concentrated(1)};
  auto ds = direct_sum(s);
  CHECK(ds.complex.dim(0) == 1);
  CHECK(ds.complex.dim(1) == 2);
  CHECK(nonzero_betti(ds.complex) == B({{1, 1}}));
  CHECK(describe_dims(ds.complex) == "{0:1, 1:2}");
}
