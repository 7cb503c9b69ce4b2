#pragma once

// Bounded chain complexes of finite-dimensional Q-vector spaces, homological
// grading (d lowers degree by one).

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hle/exactalg.hpp"

namespace hle {

class ChainComplex {
 public:
  /// The zero complex.
  ChainComplex();
  /// dims[i] is the dimension in degree lo + i; diffs[i] is d_{lo+i+1}, a
  /// dims[i] x dims[i+1] matrix. Throws ShapeMismatch or DSquareNonzero(degree).
  ChainComplex(int lo, std::vector<std::size_t> dims, std::vector<RationalMatrix> diffs);

  /// Q^n concentrated in degree k.
  static ChainComplex concentrated(int k, std::size_t n = 1);

  /// Lowest and highest declared degree; hi() < lo() for the zero complex.
  int lo() const noexcept { return lo_; }
  int hi() const noexcept { return lo_ + static_cast<int>(dims_.size()) - 1; }
  std::size_t dim(int k) const;
  std::size_t total_dim() const;
  bool is_zero() const { return total_dim() == 0; }

  /// d_k: C_k -> C_{k-1}; a correctly shaped (possibly empty) matrix for every k.
  const RationalMatrix& d(int k) const;

  /// Drops zero-dimensional degrees at both ends.
  ChainComplex trimmed() const;
  /// Degrees [lo, hi] with nonzero dimension; nullopt for the zero complex.
  std::optional<std::pair<int, int>> support() const;

  friend bool operator==(const ChainComplex& a, const ChainComplex& b);

 private:
  int lo_ = 0;
  std::vector<std::size_t> dims_;
  std::vector<RationalMatrix> d_;  // d_[k - lo_] for k in [lo_, hi_+1]
};

/// Degree-preserving linear map with no compatibility requirement; used for
/// horizontal differentials of double complexes. Missing degrees are zero.
struct GradedMap {
  std::map<int, RationalMatrix> components;
};

/// A chain map. Components are stored for every degree where source or
/// target is nonzero.
class ChainMap {
 public:
  ChainMap() = default;
  /// components(k) for k in [min lo, max hi] over both complexes, or the map
  /// builder form below. Throws ShapeMismatch or ChainRuleViolation(degree).
  ChainMap(ChainComplex source, ChainComplex target, std::map<int, RationalMatrix> components);

  static ChainMap identity(const ChainComplex& c);
  static ChainMap zero(const ChainComplex& source, const ChainComplex& target);

  const ChainComplex& source() const noexcept { return source_; }
  const ChainComplex& target() const noexcept { return target_; }
  /// target.dim(k) x source.dim(k).
  const RationalMatrix& component(int k) const;

  friend bool operator==(const ChainMap& a, const ChainMap& b);

 private:
  ChainComplex source_;
  ChainComplex target_;
  int lo_ = 0;
  std::vector<RationalMatrix> comps_;
};

/// g∘f. Throws ShapeMismatch if the middle complexes differ.
ChainMap compose(const ChainMap& g, const ChainMap& f);
ChainMap operator-(const ChainMap& f, const ChainMap& g);

struct Homology {
  std::size_t betti = 0;
  /// Cycles of C_k whose classes form a basis of H_k.
  std::vector<RationalVector> representatives;
};

Homology homology(const ChainComplex& c, int k);
/// Betti numbers over [lo, hi] (zeros included).
std::map<int, std::size_t> betti_numbers(const ChainComplex& c);
/// Betti numbers with zero entries removed.
std::map<int, std::size_t> nonzero_betti(const ChainComplex& c);

struct QuasiIsoReport {
  bool quasi_iso = false;
  /// Matrix of H_k(f) in the representative bases of source and target.
  std::map<int, RationalMatrix> induced;
};

QuasiIsoReport is_quasi_iso(const ChainMap& f);

/// Finite direct sum; `offsets[k][i]` is where summand i starts in degree k.
struct DirectSum {
  ChainComplex complex;
  std::map<int, std::vector<std::size_t>> offsets;
};

DirectSum direct_sum(std::span<const ChainComplex> summands);

/// Block-diagonal map between two direct sums with the given components.
ChainMap direct_sum_map(const DirectSum& source, const DirectSum& target, std::span<const ChainMap> components);

/// Where Hom(A_n, B_{n+k}) sits inside degree k of hom_complex(A, B). Entry
/// (r, s) of the block is at offset + r * cols + s.
struct HomBlock {
  int n = 0;
  std::size_t offset = 0;
  std::size_t rows = 0;  // dim B_{n+k}
  std::size_t cols = 0;  // dim A_n
};

std::vector<HomBlock> hom_layout(const ChainComplex& a, const ChainComplex& b, int k);

/// Degree k is the product over n of Hom(A_n, B_{n+k}); the differential is
/// δφ = d_B∘φ - (-1)^k φ∘d_A, so degree-0 cycles are exactly the chain maps.
ChainComplex hom_complex(const ChainComplex& a, const ChainComplex& b);

/// Hom(pre, post): φ ↦ post∘φ∘pre, from Hom(A, B) to Hom(A', B') where
/// pre: A' -> A and post: B -> B'.
ChainMap hom_map(const ChainMap& pre, const ChainMap& post);

/// Unpacks a degree-0 element of hom_complex(a, b) into per-degree matrices.
std::map<int, RationalMatrix> unpack_degree_zero(const ChainComplex& a, const ChainComplex& b,
                                                 const RationalVector& element);

/// Totalization with product-type columns: total degree k of the result is
/// ⊕_n columns[n]_{k+n}, the differential is d_vertical + horizontal, where
/// horizontal[n]: columns[n] -> columns[n+1] preserves internal degree and
/// must anticommute with the vertical differentials. Throws TotalDSquareNonzero.
ChainComplex product_total(std::span<const ChainComplex> columns, std::span<const GradedMap> horizontal);

struct Equalizer {
  ChainComplex complex;
  ChainMap inclusion;
  /// Coordinates of a vector of the kernel in degree k sit at these source
  /// indices (the kernel basis is the identity there).
  std::map<int, std::vector<std::size_t>> free_coordinates;
};

/// Degreewise kernel of f - g with the restricted differential.
Equalizer equalizer_kernel(const ChainMap& f, const ChainMap& g);

/// Solves inclusion · x = v for a vector v of the ambient degree-k space known
/// to lie in the equalizer; throws NotNatural if it does not.
RationalMatrix equalizer_coordinates(const Equalizer& eq, int k, const RationalMatrix& vectors);

/// "{0:2, 1:1}" style summary of the nonzero dimensions.
std::string describe_dims(const ChainComplex& c);

}  // namespace hle
