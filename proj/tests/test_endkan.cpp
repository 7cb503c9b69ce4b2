#include "doctest.h"
#include "hle/endkan.hpp"
#include "hle/errors.hpp"

using namespace hle;

namespace {

FinSetDiagram diagram(const CategoryPtr& c, std::vector<std::size_t> sizes,
                      std::vector<std::vector<std::size_t>> non_identity_actions) {
  FinSetDiagram d;
  d.base = c;
  d.sizes = sizes;
  std::size_t next = 0;
  for (Mor f = 0; f < c->morphism_count(); ++f) {
    if (c->is_identity(f)) {
      std::vector<std::size_t> id(sizes[c->src(f)]);
      for (std::size_t i = 0; i < id.size(); ++i) id[i] = i;
      d.action.push_back(id);
    } else {
      d.action.push_back(non_identity_actions.at(next++));
    }
  }
  return validate_diagram(d);
}

ChainBifunctor constant_bifunctor(const CategoryPtr& c, const ChainComplex& v) {
  ChainBifunctor h;
  h.base = c;
  h.value = [v](Obj, Obj) { return v; };
  h.contra = [v](Mor, Obj) { return ChainMap::identity(v); };
  h.co = [v](Obj, Mor) { return ChainMap::identity(v); };
  return h;
}

}  // namespace

TEST_CASE("limits and colimits") {
  auto a = arrow_category();
  CHECK(finset_limit(constant_diagram(a, 3)).size() == 3);
  auto two = discrete_category(2);
  CHECK(finset_limit(diagram(two, {2, 3}, {})).size() == 6);
  // The span a <- c -> b is the opposite of the cospan.
  auto span = opposite(cospan_category());
  auto d = diagram(span, {2, 3, 1}, {{0}, {0}});
  CHECK(finset_colimit(d).size == 4);
  CHECK(finset_limit(d).size() == 1);
}

TEST_CASE("ends of finite-set bifunctors") {
  auto a = arrow_category();
  auto f = diagram(a, {1, 1}, {{0}});
  auto g = diagram(a, {2, 2}, {{0, 1}});
  CHECK(end_finset(hom_bifunctor(f, g)).size() == 2);
  CHECK(nat_trans_bruteforce(f, g).size() == 2);
  auto one = constant_diagram(a, 1);
  CHECK(nat_trans_bruteforce(one, one).size() == 1);
  auto g0 = diagram(a, {0, 0}, {{}});
  CHECK(nat_trans_bruteforce(one, g0).empty());
  CHECK(end_finset(hom_bifunctor(one, g0)).size() == 0);

  auto h = diagram(a, {2, 3}, {{0, 2}});
  auto lim = finset_limit(h);
  auto e = end_finset(constant_first(h));
  CHECK(e.elements == lim.elements);
}

TEST_CASE("coends") {
  auto a = arrow_category();
  // One class per endomorphism trace of [1]; the colimit over the whole
  // product category instead has one class per component.
  auto hom = category_hom(a);
  CHECK(coend_finset(hom).size == 2);
  CHECK(finset_colimit(hom).size == 1);
  auto h = diagram(opposite(a), {1, 2}, {{0, 0}});
  auto c = coend_finset(constant_second(h, a));
  CHECK(c.size == finset_colimit(h).size);
  CHECK(c.size == 1);
  auto empty = discrete_category(0);
  CHECK(coend_finset(constant_first(constant_diagram(empty, 1))).size == 0);
}

TEST_CASE("Kan extensions") {
  auto a = arrow_category();
  auto at_a = object_inclusion(a, 0);
  auto three = constant_diagram(terminal_category(), 3);
  auto l = lan(at_a, three);
  CHECK(l.diagram.sizes == std::vector<std::size_t>{3, 3});
  CHECK(l.diagram.action[2] == std::vector<std::size_t>{0, 1, 2});
  auto r = ran(at_a, three);
  CHECK(r.diagram.sizes == std::vector<std::size_t>{3, 1});
  CHECK(lan_via_coend(at_a, three).agree);
  CHECK(ran_via_end(at_a, three).agree);

  auto h = diagram(a, {2, 3}, {{0, 2}});
  auto id = identity_functor(a);
  CHECK(lan(id, h).diagram.sizes == h.sizes);
  CHECK(ran(id, h).diagram.sizes == h.sizes);
  CHECK(lan_via_coend(id, h).agree);
  CHECK(ran_via_end(id, h).agree);

  auto to_pt = functor_to_terminal(a);
  CHECK(lan(to_pt, h).diagram.sizes[0] == finset_colimit(h).size);
  CHECK(ran(to_pt, h).diagram.sizes[0] == finset_limit(h).size());
  CHECK(lan_via_coend(to_pt, h).agree);
  CHECK(ran_via_end(to_pt, h).agree);

  auto none = diagram(a, {0, 0}, {{}});
  CHECK(lan(id, none).diagram.sizes == std::vector<std::size_t>{0, 0});
  CHECK(lan_via_coend(to_pt, none).via_formula.sizes[0] == 0);
}

TEST_CASE("co-Yoneda") {
  auto a = arrow_category();
  auto g = diagram(a, {2, 3}, {{1, 1}});
  auto r = co_yoneda_check(g, identity_functor(a), 0);
  CHECK(r.pass);
  CHECK(r.end_size == 2);
  CHECK(co_yoneda_check(constant_diagram(a, 1), identity_functor(a), 1).end_size == 1);
  auto e = diagram(a, {0, 2}, {{}});
  auto re = co_yoneda_check(e, identity_functor(a), 0);
  CHECK(re.pass);
  CHECK(re.end_size == 0);
}

TEST_CASE("chain ends") {
  auto q = ChainComplex::concentrated(0);
  auto a = arrow_category();
  auto e = end_chain(constant_bifunctor(a, q));
  CHECK(e.complex == q);
  auto d = end_chain(constant_bifunctor(discrete_category(3), q));
  CHECK(d.complex.dim(0) == 3);
  auto z = end_chain(constant_bifunctor(a, ChainComplex()));
  CHECK(z.complex.is_zero());
  CHECK(e.projection(0) == ChainMap::identity(q));
}

TEST_CASE("chain ends of Hom are chain-level natural transformations") {
  auto a = arrow_category();
  auto q = ChainComplex::concentrated(0);
  ChainDiagram f = validate_diagram(ChainDiagram{a, {q, q}, {ChainMap::identity(q), ChainMap::identity(q),
                                                              ChainMap::identity(q)}});
  auto e = end_chain(hom_bifunctor(f, f));
  CHECK(e.complex == q);
}

TEST_CASE("Fubini") {
  auto q = ChainComplex::concentrated(0);
  auto t = terminal_category();
  CHECK(fubini_check(constant_bifunctor(product(t, t), q)).pass);
  auto a = arrow_category();
  auto r = fubini_check(constant_bifunctor(product(a, a), q));
  CHECK(r.pass);
  CHECK(r.joint_dims == "{0:1}");
  auto z = fubini_check(constant_bifunctor(product(a, a), ChainComplex()));
  CHECK(z.pass);
  CHECK(z.joint_dims == "{}");
}
