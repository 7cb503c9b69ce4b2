#include "doctest.h"
#include "hle/errors.hpp"
#include "hle/power.hpp"
#include "hle/ssets.hpp"

using namespace hle;

namespace {

std::map<int, std::size_t> B(std::initializer_list<std::pair<const int, std::size_t>> v) { return v; }

}  // namespace

TEST_CASE("standard simplices and boundaries") {
  auto d0 = standard_simplex(0);
  CHECK(d0.count(0) == 1);
  CHECK(d0.dimension() == 0);
  auto d2 = standard_simplex(2);
  CHECK(d2.count(0) == 3);
  CHECK(d2.count(1) == 3);
  CHECK(d2.count(2) == 1);
  auto d4 = standard_simplex(4);
  CHECK(d4.count(2) == 10);
  auto b2 = boundary(2);
  CHECK(b2.sset.dimension() == 1);
  CHECK(nonzero_betti(normalized_chains(b2.sset)) == B({{0, 1}, {1, 1}}));
  CHECK_NOTHROW(validate_sset_map(b2.inclusion, b2.sset, d2));
  CHECK(boundary(0).sset.empty());
}

TEST_CASE("simplicial identities are enforced") {
  // Two vertices, one edge with both faces 0, one triangle with inconsistent faces.
  CHECK_THROWS_AS(SemiSimplicialSet({2, 2, 1}, {{}, {0, 1, 1, 0}, {0, 0, 1}}), SimplicialIdentityViolation);
  CHECK_THROWS_AS(SemiSimplicialSet({1, 1}, {{}, {0, 3}}), ShapeMismatch);
}

TEST_CASE("nerves") {
  auto pt = nerve(*terminal_category());
  CHECK(pt.sset == standard_simplex(0));
  CHECK(nerve(*arrow_category()).sset == standard_simplex(1));
  auto n2 = nerve(*chain_poset(2));
  CHECK(n2.sset.count(0) == 3);
  CHECK(n2.sset.count(1) == 3);
  CHECK(n2.sset.count(2) == 1);
  CHECK(n2.sset.dimension() == 2);
  CHECK(nonzero_betti(normalized_chains(n2.sset)) == B({{0, 1}}));
}

TEST_CASE("normalized chains") {
  CHECK(normalized_chains(standard_simplex(0)) == ChainComplex::concentrated(0));
  auto c = normalized_chains(standard_simplex(1));
  CHECK(c.dim(0) == 2);
  CHECK(c.dim(1) == 1);
  // d(edge) = vertex 1 - vertex 0.
  CHECK(c.d(1) == RationalMatrix::from_ints({{-1}, {1}}));
  auto b = normalized_chains(boundary(2).sset);
  CHECK(b.dim(0) == 3);
  CHECK(b.dim(1) == 3);
  CHECK(homology(b, 1).betti == 1);
}

TEST_CASE("contractibility") {
  CHECK(homology_contractible(standard_simplex(0)));
  for (int n = 1; n <= 4; ++n) CHECK(homology_contractible(standard_simplex(n)));
  CHECK_FALSE(homology_contractible(boundary(2).sset));
  CHECK_THROWS_AS(homology_contractible(SemiSimplicialSet()), EmptyComplex);
}

TEST_CASE("nerve weight over [1]") {
  auto a = arrow_category();
  auto w = nerve_weight(a);
  CHECK(w.values[0] == standard_simplex(0));
  CHECK(w.values[1] == standard_simplex(1));
  const auto& act = w.actions[2];
  REQUIRE(act.cells.size() == 1);
  // The vertex of N(Γ↓a) goes to the vertex of N(Γ↓b) augmented by f.
  const std::size_t v = act.cells[0][0];
  CHECK(a->morphism_label(w.cells[1][0][v].augmentation) == "f");
  CHECK(check_point_resolution(w).pass);
  auto t = nerve_weight(terminal_category());
  CHECK(t.values[0] == standard_simplex(0));
}

TEST_CASE("nerve of comma under") {
  auto a = arrow_category();
  auto id = nerve_of_comma_under(identity_functor(a));
  auto nw = nerve_weight(a);
  CHECK(id.values == nw.values);
  auto at_a = nerve_of_comma_under(object_inclusion(a, 0));
  CHECK(at_a.values[0] == standard_simplex(0));
  CHECK(at_a.values[1] == standard_simplex(0));
  auto at_b = nerve_of_comma_under(object_inclusion(a, 1));
  CHECK(at_b.values[0].empty());
  CHECK(at_b.values[1] == standard_simplex(0));
  CHECK_FALSE(check_point_resolution(at_b).pass);
}

TEST_CASE("point resolutions") {
  auto a = arrow_category();
  CHECK(check_point_resolution(constant_point(a)).pass);
  CHECK_FALSE(check_point_resolution(constant_point(cospan_category())).pass);
  Weight w;
  w.base = terminal_category();
  w.values = {boundary(2).sset};
  w.actions = {identity_sset_map(w.values[0])};
  w.kind = WeightKind::kNerve;
  auto r = check_point_resolution(validate_weight(w));
  CHECK_FALSE(r.pass);
  CHECK_FALSE(r.contractible[0]);
}

TEST_CASE("comma nerves are contractible") {
  for (auto c : {arrow_category(), chain_poset(3), cospan_category(), product(arrow_category(), cospan_category())}) {
    auto w = nerve_weight(c);
    for (const auto& v : w.values) {
      CHECK(homology_contractible(v));
      CHECK(v.euler_characteristic() == 1);
    }
  }
}

TEST_CASE("powering") {
  auto q = ChainComplex::concentrated(0);
  auto ob = ChainComplex(0, {1, 1}, {RationalMatrix::from_ints({{1}})});
  CHECK(power(standard_simplex(0), ob) == ob);
  auto p1 = power(standard_simplex(1), q);
  CHECK(p1.dim(0) == 2);
  CHECK(p1.dim(-1) == 1);
  CHECK(p1.d(0) == RationalMatrix::from_ints({{1, -1}}));
  CHECK(nonzero_betti(p1) == B({{0, 1}}));
  auto pb = power(boundary(1).sset, q);
  CHECK(pb == ChainComplex::concentrated(0, 2));
  for (int n = 0; n <= 3; ++n) CHECK(is_quasi_iso(power_unit(standard_simplex(n), ob)).quasi_iso);
  CHECK(is_quasi_iso(power_unit(standard_simplex(2), q)).quasi_iso);
  CHECK_FALSE(is_quasi_iso(power_unit(boundary(2).sset, q)).quasi_iso);
}
