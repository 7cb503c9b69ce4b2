#pragma once

// Powering of chain complexes by finite semisimplicial sets:
// c^K = Hom(N(K), c), contravariant in K and covariant in c.

#include "hle/chaincx.hpp"
#include "hle/ssets.hpp"

namespace hle {

ChainComplex power(const SemiSimplicialSet& k, const ChainComplex& c);

/// c^L -> c^K for f: K -> L.
ChainMap power_contravariant(const SSetMap& f, const SemiSimplicialSet& k, const SemiSimplicialSet& l,
                             const ChainComplex& c);

/// c^K -> d^K for g: c -> d.
ChainMap power_covariant(const SemiSimplicialSet& k, const ChainMap& g);

/// c -> c^K induced by K -> point.
ChainMap power_unit(const SemiSimplicialSet& k, const ChainComplex& c);

}  // namespace hle
