#pragma once

// Homotopy limits of chain-complex diagrams over loop-free categories:
// simplicial frames, Bousfield–Kan ends, fat totalization, and the
// comparison maps along homotopy-initial functors.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hle/chaincx.hpp"
#include "hle/diagram.hpp"
#include "hle/endkan.hpp"
#include "hle/ssets.hpp"

namespace hle {

struct SimplicialFrame {
  ChainComplex underlying;
  std::vector<ChainComplex> levels;  // power(Δⁿ, c)
  std::vector<ChainMap> units;       // c -> levels[n]
  int depth() const { return static_cast<int>(levels.size()) - 1; }
  /// Restriction along the coface d^i: [n-1] -> [n], levels[n] -> levels[n-1].
  ChainMap coface(int n, int i) const;
};

/// Levels 0..n_max. Throws std::logic_error if a unit fails to be a quasi-isomorphism.
SimplicialFrame fibrant_frame(const ChainComplex& c, int n_max);

struct MatchingObject {
  ChainComplex complex;  // power(∂Δⁿ, c)
  ChainMap map;          // levels[n] -> complex
};

/// Throws DepthExceeded when n is beyond the materialized depth.
MatchingObject matching_object(const SimplicialFrame& frame, int n);

struct ReedyReport {
  bool pass = false;
  std::vector<bool> surjective;  // per level
};

/// Matching maps must be degreewise surjective at every level n <= n_max.
ReedyReport check_reedy_fibrant(const SimplicialFrame& frame, int n_max);

struct HolimResult {
  ChainComplex complex;
  std::map<int, std::size_t> betti;  // nonzero entries only
  std::string provenance;
};

HolimResult make_result(ChainComplex c, std::string provenance);

/// ∫_γ F(γ)^{W(γ)} for any weight on F's base, without cofibrancy checks.
ChainEnd weighted_end(const ChainDiagram& f, const Weight& w);

/// The Bousfield–Kan end with weight W (default: nerve_weight). Throws
/// NotLoopFree or WeightRejected.
HolimResult bk_holim(const ChainDiagram& f, const std::optional<Weight>& w = std::nullopt);

/// Degree k: A_k ⊕ B_k ⊕ C_{k+1}; D(a, b, c) = (da, db, pa - qb - dc).
ChainComplex mapping_path_oracle(const ChainMap& p, const ChainMap& q);

struct PullbackResult {
  HolimResult holim;
  ChainComplex oracle;
  std::map<int, std::size_t> oracle_betti;
  bool consistent = false;
};

/// A ->p C <-q B over the cospan category. Throws ShapeMismatch.
PullbackResult homotopy_pullback(const ChainMap& p, const ChainMap& q);
ChainDiagram cospan_diagram(const ChainMap& p, const ChainMap& q);

/// Δ⁺ truncated at n_max: objects [0..n_max], morphisms the increasing
/// injections, labelled by their vertex lists.
CategoryPtr semi_simplex_category(int n_max);
/// Vertex list of a morphism of semi_simplex_category.
std::vector<int> injection_vertices(const FinCategory& delta, Mor m);

/// A semi-cosimplicial complex truncated at its depth: cofaces[n][i] is
/// d^i: X^{n-1} -> X^n for 1 <= n <= depth.
struct CosimplicialObject {
  std::vector<ChainComplex> levels;
  std::vector<std::vector<ChainMap>> cofaces;
  int depth() const { return static_cast<int>(levels.size()) - 1; }
};

/// Checks shapes and d^j d^i = d^i d^{j-1} for i < j. Throws ShapeMismatch
/// or FunctorialityViolation.
CosimplicialObject validate_cosimplicial(CosimplicialObject x);
CosimplicialObject constant_cosimplicial(const ChainComplex& c, int depth);

/// X^n = ⊕ over nondegenerate n-chains σ of F(last object of σ). Throws NotLoopFree.
CosimplicialObject cosimplicial_replacement(const ChainDiagram& f, int depth);

/// X as a diagram over semi_simplex_category(depth).
ChainDiagram as_diagram(const CosimplicialObject& x);

struct FatTotResult {
  HolimResult result;
  /// Degrees k >= stable_from are unaffected by the truncation.
  int stable_from = 0;
  /// The double-complex formula (product totalization of the columns).
  std::map<int, std::size_t> direct_betti;
  bool cross_check = false;
};

/// ∫_{[n] ∈ Δ⁺≤N} (Xⁿ)^{Δⁿ}. When `min_degree` is given and lies below the
/// stable range, throws TruncationTooShallow.
FatTotResult fat_tot(const CosimplicialObject& x, std::optional<int> min_degree = std::nullopt);

/// max over nonzero levels of hi(Xⁿ) - depth + 1.
int fat_tot_stable_bound(const CosimplicialObject& x);

struct HomotopyInitialReport {
  bool pass = false;
  std::vector<bool> contractible;  // per target object
  std::string reason;
};

/// Homology-level check that every N(f↓γ′) is contractible. Throws NotLoopFree.
HomotopyInitialReport check_homotopy_initial(const FunctorData& f);

struct NerveKanReport {
  bool pass = false;
  std::string reason;
  std::vector<std::size_t> lan_sizes;    // per target object
  std::vector<std::size_t> comma_sizes;  // n-cells of N(f↓γ′)
};

/// The n-cells of N(f↓−) as the left Kan extension along f of the n-cells of
/// N(Γ↓−): (γ, α, (σ, β)) ↦ (σ, α∘f(β)) must be a natural bijection.
NerveKanReport nerve_kan_bijection(const FunctorData& f, int n);

struct ChangeOfDiagramsReport {
  bool pass = false;
  std::string reason;
  std::string lhs_dims;  // ∫_γ F(fγ)^{N(Γ↓γ)}
  std::string rhs_dims;  // ∫_{γ′} F(γ′)^{N(f↓γ′)}
  ChainMap forward;      // lhs -> rhs
  ChainMap backward;     // rhs -> lhs
};

ChangeOfDiagramsReport change_of_diagrams_iso(const FunctorData& f, const ChainDiagram& d);

struct ComparisonReport {
  ChainMap map;  // holim over the target -> holim over the source of f*F
  bool quasi_iso = false;
  HolimResult target_holim;
  HolimResult source_holim;
  ChangeOfDiagramsReport change;
};

/// Throws NotLoopFree.
ComparisonReport comparison_map(const FunctorData& f, const ChainDiagram& d);

struct InvarianceReport {
  bool quasi_iso = false;
  HolimResult source;
  HolimResult target;
  ChainMap map;
};

/// Throws NotComponentwiseWE when some component is not a quasi-isomorphism.
InvarianceReport holim_we_invariance(const ChainNatTrans& alpha);

}  // namespace hle
