#pragma once

// Limits, colimits, ends, coends and Kan extensions of finite-set diagrams,
// and ends of chain-complex bifunctors.

#include <functional>
#include <string>
#include <vector>

#include "hle/chaincx.hpp"
#include "hle/diagram.hpp"
#include "hle/fincat.hpp"

namespace hle {

/// Compatible families, one element per object, in lexicographic order.
struct FinSetLimit {
  std::vector<std::vector<std::size_t>> elements;
  std::size_t size() const { return elements.size(); }
};

/// Classes numbered by first appearance in (object, element) order.
struct FinSetColimit {
  std::size_t size = 0;
  std::vector<std::vector<std::size_t>> injection;          // per object: element -> class
  std::vector<std::pair<Obj, std::size_t>> representative;  // per class
};

FinSetLimit finset_limit(const FinSetDiagram& d);
FinSetColimit finset_colimit(const FinSetDiagram& d);

/// The two variables of a bifunctor over product(opposite(Γ), Γ): returns Γ
/// (the right factor). Throws ShapeMismatch when the base is not of that form.
CategoryPtr bifunctor_base(const FinSetDiagram& h);

/// Equalizer of Π_γ H(γ,γ) ⇉ Π_{f: γ→γ′} H(γ,γ′); tuples indexed by objects of Γ.
FinSetLimit end_finset(const FinSetDiagram& h);

/// Coequalizer of ⊔_{f: γ→γ′} H(γ′,γ) ⇉ ⊔_γ H(γ,γ). `injection` and
/// `representative` refer to Γ's objects (the diagonal).
FinSetColimit coend_finset(const FinSetDiagram& h);

/// Hom(F−, G−) over product(opposite(Γ), Γ). A function φ: F(a) -> G(b) is
/// coded as Σ φ(i) |G(b)|^i.
FinSetDiagram hom_bifunctor(const FinSetDiagram& f, const FinSetDiagram& g);
std::vector<std::size_t> decode_function(std::size_t code, std::size_t domain, std::size_t codomain);
std::size_t encode_function(const std::vector<std::size_t>& values, std::size_t codomain);

/// Hom_Γ(−, −) over product(opposite(Γ), Γ); element i of Hom(a, b) is the
/// i-th entry of Γ.hom(a, b).
FinSetDiagram category_hom(const CategoryPtr& gamma);

/// (γ⁻, γ⁺) ↦ F(γ⁺) over product(opposite(Γ), Γ).
FinSetDiagram constant_first(const FinSetDiagram& f);
/// (γ⁻, γ⁺) ↦ F(γ⁻) for a diagram F over opposite(Γ), giving a bifunctor over
/// product(opposite(Γ), Γ).
FinSetDiagram constant_second(const FinSetDiagram& f_on_opposite, const CategoryPtr& gamma);

/// All natural transformations F ⇒ G by exhaustive enumeration; each is the
/// list of component codes (see hom_bifunctor).
std::vector<std::vector<std::size_t>> nat_trans_bruteforce(const FinSetDiagram& f, const FinSetDiagram& g);

/// A pointwise Kan extension with a description of every element.
struct KanExtension {
  FinSetDiagram diagram;
  /// lan: class representative (γ, α: fγ -> γ′, x ∈ F(γ)) per element.
  /// ran: the compatible family, indexed by objects of the comma γ′↓f.
  std::vector<std::vector<std::vector<std::size_t>>> description;
};

KanExtension lan(const FunctorData& f, const FinSetDiagram& d);
KanExtension ran(const FunctorData& f, const FinSetDiagram& d);

struct KanComparison {
  bool agree = false;
  std::string reason;
  FinSetDiagram via_formula;
};

/// ∫^γ Hom(fγ, γ′) × F(γ), compared with lan by the canonical bijection.
KanComparison lan_via_coend(const FunctorData& f, const FinSetDiagram& d);
/// ∫_γ F(γ)^{Hom(γ′, fγ)}, compared with ran by the canonical bijection.
KanComparison ran_via_end(const FunctorData& f, const FinSetDiagram& d);

struct CoYonedaReport {
  bool pass = false;
  std::size_t end_size = 0;
  std::size_t value_size = 0;
};

/// ∫_{γ′} G(γ′)^{Hom(fγ, γ′)} against G(fγ), via evaluation at the identity.
CoYonedaReport co_yoneda_check(const FinSetDiagram& g, const FunctorData& f, Obj gamma);

/// A bifunctor Γop × Γ -> Ch given lazily.
struct ChainBifunctor {
  CategoryPtr base;  // Γ
  std::function<ChainComplex(Obj, Obj)> value;
  /// H(f, b): H(tgt f, b) -> H(src f, b).
  std::function<ChainMap(Mor, Obj)> contra;
  /// H(a, g): H(a, src g) -> H(a, tgt g).
  std::function<ChainMap(Obj, Mor)> co;
};

/// Reads a Ch diagram over product(opposite(Γ), Γ) as a bifunctor on Γ.
ChainBifunctor bifunctor_from_diagram(const ChainDiagram& h);

/// (a, b) ↦ hom_complex(A(a), B(b)).
ChainBifunctor hom_bifunctor(const ChainDiagram& a, const ChainDiagram& b);

struct ChainEnd {
  ChainComplex complex;
  DirectSum ambient;                  // ⊕_γ H(γ,γ)
  std::vector<ChainComplex> diagonal;  // H(γ,γ)
  ChainMap inclusion;                 // complex -> ambient
  Equalizer equalizer;
  /// The projection of the end onto H(γ,γ).
  ChainMap projection(Obj gamma) const;
};

/// Wedge conditions are imposed on every non-identity arrow, or only on the
/// indecomposable ones when Γ is loop-free (the two give the same subspace).
ChainEnd end_chain(const ChainBifunctor& h);

/// The map of ends induced by diagonal components β_γ: H(γ,γ) -> H′(γ,γ) of
/// a natural family. Throws NotNatural if the image leaves the target end.
ChainMap induced_end_map(const ChainEnd& source, const ChainEnd& target, const std::vector<ChainMap>& components);

struct FubiniReport {
  bool pass = false;
  std::string joint_dims;
  std::string first_then_second_dims;
  std::string second_then_first_dims;
};

/// H is a bifunctor on product(Γ, Γ′) (which must record its factors).
FubiniReport fubini_check(const ChainBifunctor& h);

/// The subcomplex spanned by the columns of `inclusion` (one matrix per
/// degree) in the canonical basis of its subspace. Equal subspaces give equal
/// complexes.
ChainComplex canonical_subcomplex(const ChainComplex& ambient, const std::map<int, RationalMatrix>& inclusion);

}  // namespace hle
