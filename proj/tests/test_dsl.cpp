#include <string>

#include "doctest.h"
#include "hle/dsl.hpp"
#include "hle/endkan.hpp"
#include "hle/errors.hpp"

using namespace hle;

namespace {

const char* kSample = R"(
# The walking arrow and a commutative square.
category A { objects: a, b; arrows: f: a -> b }
category Sq {
  objects: w, x, y, z
  arrows: f: w -> x, g: x -> z, h: w -> y, k: y -> z
  relations: g.f = k.h
}
complex C1 { degrees: 0..1; dim 0: 2; dim 1: 1; d 1: [[1], [−1]] }
diagram D over A into Ch { at a: C1; at b: Q[0]; on f: 0: [[1, 1]] }
diagram S over A into FinSet { at a: {x, y}; at b: {u}; on f: x -> u, y -> u }
diagram T over A into FinSet { at a: {p}; at b: {u, v}; on f: p -> v }
functor i : A -> Sq { a => w; b => z; f => g.f }
weight W = nerve(Sq)
let H = hom(S, T)
let Aop = op(A)
)";

template <class E>
std::string error_of(const std::string& text) {
  try {
    parse_workspace(text);
  } catch (const E& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("the walking arrow") {
  auto ws = parse_workspace("category A { objects: a, b; arrows: f: a -> b }");
  const auto& c = ws.get<CategoryPtr>("A");
  CHECK(c->morphism_count() == 3);
  CHECK(c->same_tables(*arrow_category()));
}

TEST_CASE("path-congruence completion") {
  auto ws = parse_workspace(kSample);
  const auto& sq = ws.get<CategoryPtr>("Sq");
  // Four identities, four generators, one diagonal.
  CHECK(sq->morphism_count() == 9);
  CHECK(sq->find_morphism("g.f").has_value());
  CHECK_FALSE(sq->find_morphism("k.h").has_value());
  CHECK(resolve_path(*sq, {"k", "h"}) == resolve_path(*sq, {"g", "f"}));

  auto free_sq = parse_workspace("category F { objects: w, x, y, z; arrows: f: w -> x, g: x -> z, h: w -> y, k: y -> z }");
  CHECK(free_sq.get<CategoryPtr>("F")->morphism_count() == 10);

  const auto& i = ws.get<FunctorData>("i");
  CHECK(i.morphism_map[2] == *sq->find_morphism("g.f"));
}

TEST_CASE("cyclic generators need a table") {
  CHECK_THROWS_AS(parse_workspace("category L { objects: a; arrows: t: a -> a }"), NotLoopFree);
  CHECK_THROWS_AS(parse_workspace("category L { objects: a, b; arrows: f: a -> b, g: b -> a }"), NotLoopFree);
  auto ws = parse_workspace("category Z2 { objects: a; arrows: t: a -> a; table: t.t = id_a }");
  CHECK(ws.get<CategoryPtr>("Z2")->morphism_count() == 2);
  CHECK_THROWS_AS(parse_workspace("category Z2 { objects: a; arrows: t: a -> a; table: t.t = t, t.t = id_a }"),
                  PresentationError);
  CHECK_THROWS_AS(parse_workspace("category Z2 { objects: a; arrows: t: a -> a; table: }"), SyntaxError);
}

TEST_CASE("complexes") {
  auto ws = parse_workspace(kSample);
  const auto& c = ws.get<ChainComplex>("C1");
  CHECK(c.dim(0) == 2);
  CHECK(c.d(1)(1, 0) == -1);
  std::string bad = "complex X {\n  degrees: 0..2\n  dim 0: 1; dim 1: 1; dim 2: 1\n  d 1: [[1]]\n  d 2: [[1]]\n}";
  auto msg = error_of<DSquareNonzero>(bad);
  CHECK(msg.find("line 5, column 3") != std::string::npos);
  CHECK(error_of<ShapeMismatch>("complex X { degrees: 0..1; dim 0: 1; dim 1: 1; d 1: [[1, 2]] }").find("1x1") !=
        std::string::npos);
  auto q = parse_workspace("complex X { degrees: -1..0; dim -1: 1; dim 0: 1; d 0: [[3/6]] }");
  CHECK(q.get<ChainComplex>("X").d(0)(0, 0) == Rational(1, 2));
}

TEST_CASE("diagrams, functors, weights and derived bindings") {
  auto ws = parse_workspace(kSample);
  const auto& d = ws.get<ChainDiagram>("D");
  CHECK(d.actions[2].component(0) == RationalMatrix::from_ints({{1, 1}}));
  const auto& s = ws.get<FinSetDiagram>("S");
  CHECK(s.action[2] == std::vector<std::size_t>{0, 0});
  CHECK(ws.get<Weight>("W").kind == WeightKind::kNerve);
  CHECK(end_finset(ws.get<FinSetDiagram>("H")).size() == nat_trans_bruteforce(s, ws.get<FinSetDiagram>("T")).size());
  CHECK(value_kind(ws.at("Aop").value) == "category");
  CHECK_THROWS_AS(ws.get<ChainComplex>("D"), TypeMismatch);
  CHECK_THROWS_AS(ws.at("nothing"), UnknownBinding);
}

TEST_CASE("diagnostics") {
  auto msg = error_of<SyntaxError>("category A {\n  objects: a, b\n  arrows: f a -> b\n}");
  CHECK(msg.find("line 3, column 13") != std::string::npos);
  CHECK_FALSE(error_of<SyntaxError>("complex X { degrees: 0..0; dim 0: 1 }\ncomplex X { degrees: 0..0 }").empty());
  auto sem = error_of<FunctorialityViolation>(
      "category A { objects: a, b; arrows: f: a -> b }\n"
      "diagram S over A into FinSet { at a: {x}; at b: {u}; on f: x -> u }\n"
      "category B { objects: a, b; arrows: f: a -> b, g: a -> b }\n"
      "functor F : B -> A { a => a; b => a; f => f; g => f }\n");
  CHECK(sem.find("in F") != std::string::npos);
  CHECK_FALSE(error_of<UnknownBinding>("diagram S over Nope into FinSet { }").empty());
}

TEST_CASE("round trip") {
  Module m = parse_module(kSample);
  std::string printed = print_module(m);
  CHECK(printed.find("\xE2\x88\x92") == std::string::npos);
  Module again = parse_module(printed);
  CHECK(print_module(again) == printed);
  Workspace a = elaborate(m);
  Workspace b = elaborate(again);
  REQUIRE(a.names() == b.names());
  for (const auto& n : a.names()) CHECK_MESSAGE(same_value(a.at(n).value, b.at(n).value), n);
}
