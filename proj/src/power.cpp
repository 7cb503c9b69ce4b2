#include "hle/power.hpp"

namespace hle {

ChainComplex power(const SemiSimplicialSet& k, const ChainComplex& c) { return hom_complex(normalized_chains(k), c); }

ChainMap power_contravariant(const SSetMap& f, const SemiSimplicialSet& k, const SemiSimplicialSet& l,
                             const ChainComplex& c) {
  return hom_map(normalized_chain_map(f, k, l), ChainMap::identity(c));
}

ChainMap power_covariant(const SemiSimplicialSet& k, const ChainMap& g) {
  return hom_map(ChainMap::identity(normalized_chains(k)), g);
}

ChainMap power_unit(const SemiSimplicialSet& k, const ChainComplex& c) {
  SemiSimplicialSet pt({1}, {{}});
  SSetMap collapse;
  collapse.cells.push_back(std::vector<std::size_t>(k.count(0), 0));
  for (int n = 1; n <= k.dimension(); ++n) collapse.cells.emplace_back(k.count(n), kDegenerate);
  ChainMap to_point = normalized_chain_map(collapse, k, pt);
  // Hom(N(pt), c) is c itself.
  ChainMap m = hom_map(to_point, ChainMap::identity(c));
  std::map<int, RationalMatrix> comps;
  for (int d = c.lo(); d <= c.hi(); ++d)
    if (c.dim(d) != 0 && m.target().dim(d) != 0) comps[d] = m.component(d);
  return ChainMap(c, m.target(), std::move(comps));
}

}  // namespace hle
