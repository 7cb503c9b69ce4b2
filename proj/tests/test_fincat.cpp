#include "doctest.h"
#include "hle/errors.hpp"
#include "hle/fincat.hpp"

using namespace hle;

namespace {

std::size_t non_identity_count(const FinCategory& c) {
  std::size_t n = 0;
  for (Mor f = 0; f < c.morphism_count(); ++f) n += c.is_identity(f) ? 0 : 1;
  return n;
}

}  // namespace

TEST_CASE("validation") {
  CHECK(terminal_category()->morphism_count() == 1);
  auto a = arrow_category();
  CHECK(a->object_count() == 2);
  CHECK(a->morphism_count() == 3);

  CategoryData bad = a->data();
  const std::size_t m = bad.morphisms.size();
  // f: a -> b composed with id_b claims a wrong result.
  bad.composition[1 * m + 2] = 1;
  CHECK_THROWS_AS(FinCategory::validate(bad), Error);

  CategoryData wrong_domain = a->data();
  // id_a ∘ f is not composable but the table defines it.
  wrong_domain.composition[0 * m + 2] = 2;
  CHECK_THROWS_AS(FinCategory::validate(wrong_domain), CompositionDomainError);
}

TEST_CASE("opposite") {
  auto t = terminal_category();
  CHECK(opposite(t)->same_tables(*t));
  auto op = opposite(arrow_category());
  auto f = op->find_morphism("f");
  REQUIRE(f);
  CHECK(op->object_label(op->src(*f)) == "b");
  CHECK(op->object_label(op->tgt(*f)) == "a");
  auto p = chain_poset(2);
  CHECK(opposite(opposite(p))->same_tables(*p));
}

TEST_CASE("products") {
  auto a = arrow_category();
  auto sq = product(a, a);
  CHECK(sq->object_count() == 4);
  CHECK(sq->morphism_count() == 9);
  CHECK(non_identity_count(*sq) == 5);
  auto mixed = product(opposite(a), a);
  CHECK(mixed->object_count() == 4);
  CHECK(mixed->morphism_count() == 9);
  auto unit = product(terminal_category(), chain_poset(2));
  CHECK(unit->morphism_count() == chain_poset(2)->morphism_count());
  for (auto c : {a, chain_poset(2), cospan_category()}) {
    for (auto d : {a, cospan_category()}) {
      CHECK(opposite(product(c, d))->same_tables(*product(opposite(c), opposite(d))));
    }
  }
}

TEST_CASE("comma over") {
  auto a = arrow_category();
  auto cb = comma_over(a, 1);
  CHECK(cb.category->object_count() == 2);
  CHECK(cb.category->morphism_count() == 3);
  CHECK(is_direct(*cb.category));
  auto d = comma_over(discrete_category(2), 0);
  CHECK(d.category->object_count() == 1);
  CHECK_THROWS_AS(comma_over(a, 5), UnknownObject);

  for (auto c : {a, chain_poset(3), cospan_category(), product(a, a)}) {
    for (Obj g = 0; g < c->object_count(); ++g) {
      auto cm = comma_over(c, g);
      const FinCategory& k = *cm.category;
      std::size_t terminals = 0;
      for (Obj t = 0; t < k.object_count(); ++t) {
        bool ok = true;
        for (Obj x = 0; x < k.object_count(); ++x) ok = ok && k.hom(x, t).size() == 1;
        terminals += ok ? 1 : 0;
      }
      CHECK(terminals == 1);
      CHECK(k.find_object(c->morphism_label(c->identity(g))));
    }
  }
}

TEST_CASE("comma under functor") {
  auto a = arrow_category();
  auto id = identity_functor(a);
  for (Obj g = 0; g < 2; ++g) {
    CHECK(comma_under_functor(id, g).category->morphism_count() == comma_over(a, g).category->morphism_count());
  }
  auto at_a = object_inclusion(a, 0);
  auto cb = comma_under_functor(at_a, 1);
  CHECK(cb.category->object_count() == 1);
  CHECK(a->morphism_label(cb.arrow[0]) == "f");
  auto ca = comma_under_functor(at_a, 0);
  CHECK(ca.category->object_count() == 1);
  CHECK(a->is_identity(ca.arrow[0]));
}

TEST_CASE("is_direct") {
  auto deg = is_direct(*chain_poset(2));
  REQUIRE(deg);
  CHECK(deg->degree == std::vector<int>{0, 1, 2});
  auto disc = is_direct(*discrete_category(3));
  REQUIRE(disc);
  CHECK(disc->degree == std::vector<int>{0, 0, 0});

  // Z/2 as a one-object category.
  CategoryData z2;
  z2.objects = {"*"};
  z2.morphisms = {{0, 0, "e"}, {0, 0, "s"}};
  z2.identities = {0};
  z2.composition = {0, 1, 1, 0};
  auto c = FinCategory::validate(z2);
  CHECK_FALSE(is_direct(*c));
  CHECK_THROWS_AS(degree_order(*c), NotLoopFree);
}

TEST_CASE("functor validation") {
  auto a = arrow_category();
  FunctorData bad{a, a, {0, 0}, {0, 0, 1}};
  CHECK_THROWS_AS(validate_functor(bad), FunctorialityViolation);
  CHECK_NOTHROW(validate_functor(functor_to_terminal(a)));
  auto sub = full_subcategory(chain_poset(2), {0, 2});
  CHECK(sub.source->morphism_count() == 3);
}
