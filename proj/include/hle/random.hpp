#pragma once

// Seeded generators of random instances for property tests and the verify
// suites. Every generator draws only from the Rng it is given, so a
// (seed, stream, index) triple always reproduces the same instance.

#include <cstdint>
#include <random>
#include <string_view>

#include "hle/chaincx.hpp"
#include "hle/diagram.hpp"
#include "hle/fincat.hpp"

namespace hle {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  /// Independent stream for item `index` of the named suite.
  static Rng derive(std::uint64_t seed, std::string_view stream, std::uint64_t index);

  std::uint64_t bits() { return engine_(); }
  /// Uniform in [0, n); n > 0.
  std::size_t below(std::size_t n);
  /// Uniform in [lo, hi].
  int range(int lo, int hi);
  /// True with probability num/den.
  bool chance(std::size_t num, std::size_t den) { return below(den) < num; }

 private:
  std::mt19937_64 engine_;
};

struct CategoryBounds {
  std::size_t max_objects = 4;
  std::size_t max_morphisms = 12;
};

/// A loop-free category from a random generator DAG with random relations
/// between parallel paths.
CategoryPtr random_loop_free_category(Rng& rng, const CategoryBounds& b = {});

/// Loop-free most of the time; otherwise a product with a two-element monoid
/// (a group of order two or an idempotent), which has non-identity loops.
CategoryPtr random_category(Rng& rng, const CategoryBounds& b = {});

/// Random functions on generating morphisms extended by composition, or a
/// quotient of a sum of representables (and possibly the point). At most
/// `max_size` elements per object. Works over any category.
FinSetDiagram random_finset_diagram(Rng& rng, const CategoryPtr& c, std::size_t max_size = 3);

struct ComplexBounds {
  int min_lo = -1;
  int max_lo = 1;
  int max_width = 2;
  std::size_t max_dim = 2;
};

ChainComplex random_complex(Rng& rng, const ComplexBounds& b = {});
/// Complex with degrees in [lo, lo + width - 1].
ChainComplex random_complex_in(Rng& rng, int lo, int width, std::size_t max_dim);

/// A random element of the space of chain maps a -> b (possibly zero).
ChainMap random_chain_map(Rng& rng, const ChainComplex& a, const ChainComplex& b);

/// Built object by object in degree order: each value is a quotient of its
/// latching object plus a fresh random summand. `c` must be loop-free.
ChainDiagram random_chain_diagram(Rng& rng, const CategoryPtr& c, const ComplexBounds& b = {});

/// A functor from a random free category on a DAG into `target` (loop-free).
FunctorData random_functor(Rng& rng, const CategoryPtr& target, const CategoryBounds& b = {});

/// c with a new initial object `bot` and arrows `u_x: bot -> x`.
CategoryPtr adjoin_initial(const CategoryPtr& c);

/// Cone(id_X): degree k is X_{k-1} ⊕ X_k with d(a, b) = (-da, a + db).
ChainComplex cone_of_identity(const ChainComplex& x);
/// Cone(id) applied to f: X -> Y.
ChainMap cone_of_identity_map(const ChainMap& f);

/// F ⇒ F ⊕ Cone(id_F) or its projection back, with random nonzero scalars:
/// a componentwise quasi-isomorphism between genuinely different diagrams.
ChainNatTrans cone_fattening(Rng& rng, const ChainDiagram& f);

}  // namespace hle
