#include "doctest.h"
#include "hle/errors.hpp"
#include "hle/holim.hpp"
#include "hle/power.hpp"

using namespace hle;

namespace {

ChainComplex q0() { return ChainComplex::concentrated(0); }

ChainMap scalar(const ChainComplex& c, long s) {
  std::map<int, RationalMatrix> comps;
  comps[0] = RationalMatrix::from_ints({{s}});
  return ChainMap(c, c, comps);
}

ChainDiagram arrow_diagram(const ChainComplex& a, const ChainComplex& b, const ChainMap& f) {
  auto c = arrow_category();
  ChainDiagram d;
  d.base = c;
  d.values = {a, b};
  for (Mor m = 0; m < c->morphism_count(); ++m) {
    d.actions.push_back(c->is_identity(m) ? ChainMap::identity(d.values[c->src(m)]) : f);
  }
  return validate_diagram(d);
}

FunctorData inclusion_of(const CategoryPtr& c, Obj x) { return object_inclusion(c, x); }

std::map<int, std::size_t> betti_of(const ChainComplex& c) { return nonzero_betti(c); }

}  // namespace

TEST_CASE("simplicial frames") {
  auto fr = fibrant_frame(q0(), 4);
  CHECK(fr.depth() == 4);
  CHECK(betti_of(fr.levels[1]) == std::map<int, std::size_t>{{0, 1}});
  auto m1 = matching_object(fr, 1);
  CHECK(m1.complex == ChainComplex::concentrated(0, 2));
  CHECK(check_reedy_fibrant(fr, 4).pass);
  CHECK_THROWS_AS(matching_object(fr, 5), DepthExceeded);
  auto d0 = fr.coface(1, 0);
  CHECK(d0.source() == fr.levels[1]);
  CHECK(d0.target() == fr.levels[0]);
}

TEST_CASE("Bousfield-Kan ends") {
  auto id_arrow = arrow_diagram(q0(), q0(), ChainMap::identity(q0()));
  CHECK(bk_holim(id_arrow).betti == std::map<int, std::size_t>{{0, 1}});

  auto idc = ChainMap::identity(q0());
  auto pb = homotopy_pullback(idc, idc);
  CHECK(pb.holim.betti == std::map<int, std::size_t>{{0, 1}});
  CHECK(pb.consistent);

  auto zero = ChainComplex();
  auto loop = homotopy_pullback(ChainMap::zero(zero, q0()), ChainMap::zero(zero, q0()));
  CHECK(loop.holim.betti == std::map<int, std::size_t>{{-1, 1}});
  CHECK(loop.oracle_betti == loop.holim.betti);

  auto two = ChainComplex::concentrated(0, 2);
  std::map<int, RationalMatrix> proj;
  proj[0] = RationalMatrix::from_ints({{1, 0}});
  auto p = ChainMap(two, q0(), proj);
  auto mixed = homotopy_pullback(p, ChainMap::zero(zero, q0()));
  CHECK(mixed.consistent);
  CHECK(mixed.holim.betti == std::map<int, std::size_t>{{0, 1}});

  CHECK_THROWS_AS(homotopy_pullback(idc, ChainMap::identity(two)), ShapeMismatch);
}

TEST_CASE("weights") {
  auto d = arrow_diagram(q0(), q0(), scalar(q0(), 0));
  auto nerve_result = bk_holim(d);
  auto point_result = bk_holim(d, constant_point(d.base));
  CHECK(nerve_result.betti == point_result.betti);
  CHECK(nerve_result.betti == std::map<int, std::size_t>{{0, 1}});

  auto c = cospan_category();
  ChainDiagram e = constant_diagram(c, q0());
  CHECK_THROWS_AS(bk_holim(e, constant_point(c)), WeightRejected);
}

TEST_CASE("dimension bound of the end") {
  auto d = arrow_diagram(ChainComplex::concentrated(0, 2), q0(), ChainMap::zero(ChainComplex::concentrated(0, 2), q0()));
  Weight w = nerve_weight(d.base);
  auto e = weighted_end(d, w);
  for (int k = e.complex.lo(); k <= e.complex.hi(); ++k) {
    std::size_t bound = 0;
    for (Obj x = 0; x < d.base->object_count(); ++x) {
      const auto& k_set = w.values[x];
      for (int n = 0; n <= k_set.dimension(); ++n) bound += k_set.count(n) * d.values[x].dim(n + k);
    }
    CHECK(e.complex.dim(k) <= bound);
  }
}

TEST_CASE("semi-simplex category") {
  auto delta = semi_simplex_category(3);
  CHECK(delta->object_count() == 4);
  // Σ_{m<=n} C(n+1, m+1) = 1 + 3 + 7 + 15.
  CHECK(delta->morphism_count() == 26);
  CHECK(is_loop_free(*delta));
  Mor m = delta->hom(1, 3)[0];
  CHECK(injection_vertices(*delta, m) == std::vector<int>{0, 1});
}

TEST_CASE("fat totalization") {
  auto x = constant_cosimplicial(q0(), 3);
  auto r = fat_tot(x);
  CHECK(r.stable_from == -2);
  CHECK(r.result.betti.at(0) == 1);
  CHECK(r.result.betti.count(-3) == 1);
  CHECK(r.cross_check);
  CHECK(fat_tot(x, -2).result.betti.at(0) == 1);
  CHECK_THROWS_AS(fat_tot(x, -3), TruncationTooShallow);

  auto d = arrow_diagram(q0(), q0(), scalar(q0(), 3));
  auto rep = cosimplicial_replacement(d, 3);
  auto t = fat_tot(rep);
  CHECK(t.cross_check);
  auto bk = bk_holim(d);
  for (auto [k, b] : bk.betti) {
    if (k >= t.stable_from) CHECK(t.result.betti[k] == b);
  }
  for (auto [k, b] : t.result.betti) {
    if (k >= t.stable_from) CHECK(bk.betti[k] == b);
  }

  CosimplicialObject bad = constant_cosimplicial(q0(), 2);
  bad.cofaces[2][0] = scalar(q0(), 2);
  CHECK_THROWS_AS(validate_cosimplicial(bad), FunctorialityViolation);
}

TEST_CASE("homotopy initial functors") {
  auto a = arrow_category();
  auto at_b = inclusion_of(a, 1);
  auto r = check_homotopy_initial(at_b);
  CHECK_FALSE(r.pass);
  CHECK_FALSE(r.contractible[0]);
  CHECK(r.contractible[1]);
  CHECK(check_homotopy_initial(inclusion_of(a, 0)).pass);
  CHECK(check_homotopy_initial(identity_functor(cospan_category())).pass);
}

TEST_CASE("change of diagrams and the comparison map") {
  auto a = arrow_category();
  auto d = arrow_diagram(q0(), q0(), scalar(q0(), 0));
  auto at_b = inclusion_of(a, 1);
  auto change = change_of_diagrams_iso(at_b, d);
  CHECK(change.pass);
  auto cmp = comparison_map(at_b, d);
  CHECK_FALSE(cmp.quasi_iso);
  CHECK(cmp.target_holim.betti == cmp.source_holim.betti);

  auto at_a = inclusion_of(a, 0);
  CHECK(change_of_diagrams_iso(at_a, d).pass);
  CHECK(comparison_map(at_a, d).quasi_iso);

  auto c = cospan_category();
  auto id = identity_functor(c);
  auto e = constant_diagram(c, q0());
  CHECK(change_of_diagrams_iso(id, e).pass);
  CHECK(comparison_map(id, e).quasi_iso);

  auto to_point = functor_to_terminal(a);
  auto pt = constant_diagram(terminal_category(), ChainComplex::concentrated(1, 2));
  CHECK(change_of_diagrams_iso(to_point, pt).pass);
  CHECK(comparison_map(to_point, pt).quasi_iso);
}

TEST_CASE("invariance under weak equivalences") {
  auto d = arrow_diagram(q0(), q0(), scalar(q0(), 1));
  auto g = arrow_diagram(q0(), q0(), scalar(q0(), 1));
  ChainNatTrans alpha{d, g, {scalar(q0(), 2), scalar(q0(), 2)}};
  auto r = holim_we_invariance(validate_nat_trans(alpha));
  CHECK(r.quasi_iso);
  CHECK(r.source.betti == r.target.betti);

  ChainNatTrans bad{d, g, {scalar(q0(), 0), scalar(q0(), 0)}};
  CHECK_THROWS_AS(holim_we_invariance(validate_nat_trans(bad)), NotComponentwiseWE);
}

TEST_CASE("nerves of under-commas as Kan extensions") {
  auto a = arrow_category();
  for (int n = 0; n <= 3; ++n) {
    CHECK(nerve_kan_bijection(inclusion_of(a, 1), n).pass);
    CHECK(nerve_kan_bijection(functor_to_terminal(a), n).pass);
    CHECK(nerve_kan_bijection(identity_functor(cospan_category()), n).pass);
  }
  auto r = nerve_kan_bijection(functor_to_terminal(a), 1);
  CHECK(r.lan_sizes == std::vector<std::size_t>{1});
}
