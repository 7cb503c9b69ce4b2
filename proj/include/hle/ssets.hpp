#pragma once

// Finite semisimplicial sets (nondegenerate cells and face maps only),
// nerves of loop-free categories, and simplicial-set-valued weights.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "hle/chaincx.hpp"
#include "hle/fincat.hpp"

namespace hle {

class SemiSimplicialSet {
 public:
  SemiSimplicialSet() = default;
  /// counts[n] cells in dimension n; faces[n][cell * (n + 1) + i] is d_i of
  /// the cell (faces[0] is ignored and may be empty). Throws ShapeMismatch or
  /// SimplicialIdentityViolation.
  SemiSimplicialSet(std::vector<std::size_t> counts, std::vector<std::vector<std::size_t>> faces);

  /// Highest dimension with a cell, or -1 when empty.
  int dimension() const noexcept { return static_cast<int>(counts_.size()) - 1; }
  std::size_t count(int n) const {
    return n < 0 || n > dimension() ? 0 : counts_[static_cast<std::size_t>(n)];
  }
  std::size_t face(int n, std::size_t cell, std::size_t i) const {
    return faces_[static_cast<std::size_t>(n)][cell * static_cast<std::size_t>(n + 1) + i];
  }
  bool empty() const noexcept { return counts_.empty(); }
  std::size_t total_cells() const;
  long euler_characteristic() const;

  friend bool operator==(const SemiSimplicialSet&, const SemiSimplicialSet&) = default;

 private:
  std::vector<std::size_t> counts_;
  std::vector<std::vector<std::size_t>> faces_;
};

/// Image cell marking a degenerate simplex (zero in normalized chains).
inline constexpr std::size_t kDegenerate = static_cast<std::size_t>(-1);

struct SSetMap {
  /// cells[n][c] is the image of cell c of dimension n, or kDegenerate.
  std::vector<std::vector<std::size_t>> cells;
};

/// Checks that nondegenerate images commute with faces. Throws
/// ShapeMismatch or FunctorialityViolation.
void validate_sset_map(const SSetMap& f, const SemiSimplicialSet& source, const SemiSimplicialSet& target);
SSetMap identity_sset_map(const SemiSimplicialSet& k);
/// g∘f.
SSetMap compose_sset_maps(const SSetMap& g, const SSetMap& f);

/// Δⁿ: k-cells are the (k+1)-subsets of {0..n} in lexicographic order.
SemiSimplicialSet standard_simplex(int n);
/// Vertex lists of the cells of Δⁿ in dimension k, in cell order.
std::vector<std::vector<int>> simplex_cells(int n, int k);

struct Boundary {
  SemiSimplicialSet sset;
  SSetMap inclusion;  // into standard_simplex(n)
};
Boundary boundary(int n);

/// The face map Δ^m -> Δ^n induced by an increasing vertex injection.
SSetMap simplex_map(int m, int n, const std::vector<int>& vertices);

struct NerveCell {
  std::vector<Obj> objects;  // x_0, ..., x_k
  std::vector<Mor> arrows;   // m_1: x_0 -> x_1, ..., m_k
};

struct Nerve {
  SemiSimplicialSet sset;
  std::vector<std::vector<NerveCell>> cells;
  /// Cell index of a chain of arrows (dimension = length); vertices are
  /// looked up by object index.
  std::size_t find(const std::vector<Mor>& arrows) const;
  std::vector<std::map<std::vector<Mor>, std::size_t>> index;
};

/// Chains of composable non-identity arrows, lexicographic in the arrow ids.
/// d_0 drops the first arrow, d_k the last, inner faces compose.
/// Throws NotLoopFree.
Nerve nerve(const FinCategory& c);

ChainComplex normalized_chains(const SemiSimplicialSet& k);
ChainMap normalized_chain_map(const SSetMap& f, const SemiSimplicialSet& source, const SemiSimplicialSet& target);

/// H_0 = Q and H_k = 0 for k > 0. Throws EmptyComplex for the empty set.
bool homology_contractible(const SemiSimplicialSet& k);

enum class WeightKind { kNerve, kCommaUnder, kConstantPoint, kCustom };
std::string weight_kind_name(WeightKind k);

/// A cell of a nerve-type weight value: a chain in the indexing category and
/// the augmentation of its last vertex.
struct WeightCell {
  std::vector<Obj> objects;
  std::vector<Mor> arrows;
  Mor augmentation = npos;
};

/// Identifies a cell within one weight value: first object, arrows, augmentation.
using WeightCellKey = std::tuple<Obj, std::vector<Mor>, Mor>;
inline WeightCellKey cell_key(const WeightCell& c) { return {c.objects.front(), c.arrows, c.augmentation}; }

struct Weight {
  CategoryPtr base;
  std::vector<SemiSimplicialSet> values;
  std::vector<SSetMap> actions;  // per morphism of base
  WeightKind kind = WeightKind::kCustom;
  /// kCommaUnder only: the functor f whose under-commas form the weight.
  std::optional<FunctorData> functor;
  /// Nerve-type weights only: cells[object][dimension][cell].
  std::vector<std::vector<std::vector<WeightCell>>> cells;
};

/// Validates every action and functoriality. Throws FunctorialityViolation.
Weight validate_weight(Weight w);

/// γ ↦ N(Γ↓γ), acting by postcomposition on augmentations. Throws NotLoopFree.
Weight nerve_weight(const CategoryPtr& c);
/// γ′ ↦ N(f↓γ′) over the target of f. Throws NotLoopFree.
Weight nerve_of_comma_under(const FunctorData& f);
Weight constant_point(const CategoryPtr& c);

struct ResolutionReport {
  bool pass = false;
  bool whitelisted = false;
  std::vector<bool> contractible;  // per object
  std::string reason;
};

ResolutionReport check_point_resolution(const Weight& w);

/// Every connected component of c has an initial object.
bool components_have_initial_objects(const FinCategory& c);

}  // namespace hle
