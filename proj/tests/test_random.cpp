#include <set>

#include "doctest.h"
#include "hle/endkan.hpp"
#include "hle/holim.hpp"
#include "hle/random.hpp"
#include "hle/ssets.hpp"

using namespace hle;

namespace {

constexpr int kCases = 40;

Rng case_rng(const char* name, int i) { return Rng::derive(7, name, static_cast<std::uint64_t>(i)); }

}  // namespace

TEST_CASE("rng streams are reproducible and distinct") {
  Rng a = Rng::derive(1, "x", 0), b = Rng::derive(1, "x", 0), c = Rng::derive(1, "x", 1), d = Rng::derive(1, "y", 0);
  const auto va = a.bits();
  CHECK(va == b.bits());
  CHECK(va != c.bits());
  CHECK(va != d.bits());
  Rng r(3);
  for (int i = 0; i < 200; ++i) {
    const int v = r.range(-2, 2);
    CHECK((v >= -2 && v <= 2));
  }
}

TEST_CASE("random categories respect their bounds") {
  std::set<std::size_t> seen;
  bool looped = false;
  for (int i = 0; i < kCases; ++i) {
    Rng rng = case_rng("cat", i);
    CategoryPtr c = random_loop_free_category(rng);
    CHECK(is_loop_free(*c));
    CHECK(c->object_count() <= 4);
    CHECK(c->morphism_count() <= 12);
    seen.insert(c->morphism_count());
    CategoryPtr g = random_category(rng);
    CHECK(g->morphism_count() <= 12);
    looped = looped || !is_loop_free(*g);
  }
  CHECK(seen.size() > 3);
  CHECK(looped);
}

TEST_CASE("random finset diagrams and functors validate") {
  for (int i = 0; i < kCases; ++i) {
    Rng rng = case_rng("fs", i);
    CategoryPtr c = random_category(rng);
    FinSetDiagram d = random_finset_diagram(rng, c);
    for (std::size_t s : d.sizes) CHECK(s <= 3);
    CategoryPtr t = random_loop_free_category(rng);
    FunctorData f = random_functor(rng, t);
    CHECK(f.target == t);
    CHECK(is_loop_free(*f.source));
  }
}

TEST_CASE("random chain maps satisfy the chain rule") {
  for (int i = 0; i < kCases; ++i) {
    Rng rng = case_rng("cm", i);
    ChainComplex a = random_complex(rng), b = random_complex(rng);
    ChainMap f = random_chain_map(rng, a, b);
    for (int k = std::min(a.lo(), b.lo()); k <= std::max(a.hi(), b.hi()) + 1; ++k) {
      CHECK(b.d(k) * f.component(k) == f.component(k - 1) * a.d(k));
    }
  }
}

TEST_CASE("rank-nullity on random complexes") {
  for (int i = 0; i < kCases; ++i) {
    Rng rng = case_rng("rn", i);
    ChainComplex c = random_complex(rng, {-1, 1, 3, 3});
    // Euler characteristic of the chains equals that of homology.
    long chi_chains = 0, chi_homology = 0;
    for (int k = c.lo(); k <= c.hi(); ++k) chi_chains += ((k % 2) ? -1 : 1) * static_cast<long>(c.dim(k));
    for (const auto& [k, b] : betti_numbers(c)) chi_homology += ((k % 2) ? -1 : 1) * static_cast<long>(b);
    CHECK(chi_chains == chi_homology);
  }
}

TEST_CASE("random chain diagrams and cone fattenings") {
  for (int i = 0; i < kCases; ++i) {
    Rng rng = case_rng("cd", i);
    CategoryPtr c = random_loop_free_category(rng, {3, 8});
    ChainDiagram d = random_chain_diagram(rng, c);
    for (const auto& v : d.values)
      for (int k = v.lo(); k <= v.hi(); ++k) CHECK(v.dim(k) <= 2);
    ChainNatTrans t = cone_fattening(rng, d);
    for (const auto& comp : t.components) CHECK(is_quasi_iso(comp).quasi_iso);
  }
}

TEST_CASE("cones of identities are acyclic") {
  for (int i = 0; i < kCases; ++i) {
    Rng rng = case_rng("cone", i);
    ChainComplex x = random_complex(rng);
    for (const auto& [k, b] : betti_numbers(cone_of_identity(x))) CHECK(b == 0);
  }
}

TEST_CASE("adjoining an initial object") {
  for (int i = 0; i < 10; ++i) {
    Rng rng = case_rng("init", i);
    CategoryPtr c = random_loop_free_category(rng);
    CategoryPtr b = adjoin_initial(c);
    CHECK(b->object_count() == c->object_count() + 1);
    for (Obj x = 0; x < b->object_count(); ++x) CHECK(b->hom(0, x).size() == 1);
    CHECK(homology_contractible(nerve(*b).sset));
  }
}

TEST_CASE("property: nerves of categories with an initial object are contractible") {
  for (int i = 0; i < kCases; ++i) {
    Rng rng = case_rng("nerve", i);
    CategoryPtr c = random_loop_free_category(rng);
    Weight w = nerve_weight(c);
    for (const auto& v : w.values) CHECK(homology_contractible(v));
  }
}

TEST_CASE("property: ends of hom bifunctors count natural transformations") {
  for (int i = 0; i < kCases; ++i) {
    Rng rng = case_rng("end", i);
    CategoryPtr c = random_category(rng, {3, 8});
    FinSetDiagram f = random_finset_diagram(rng, c, 2), g = random_finset_diagram(rng, c, 2);
    CHECK(end_finset(hom_bifunctor(f, g)).size() == nat_trans_bruteforce(f, g).size());
  }
}

TEST_CASE("property: Kan extensions agree with their (co)end formulas") {
  for (int i = 0; i < kCases; ++i) {
    Rng rng = case_rng("kan", i);
    CategoryPtr t = random_loop_free_category(rng, {3, 8});
    FunctorData f = random_functor(rng, t, {3, 6});
    FinSetDiagram d = random_finset_diagram(rng, f.source, 2);
    CHECK_MESSAGE(lan_via_coend(f, d).agree, lan_via_coend(f, d).reason);
    CHECK_MESSAGE(ran_via_end(f, d).agree, ran_via_end(f, d).reason);
  }
}
