#pragma once

// Exact linear algebra over Q. Everything homological in the engine bottoms
// out here: ranks, kernels, particular solutions and quotient bases.

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hle {

using Rational = mpq_class;
using RationalVector = std::vector<Rational>;

/// Parses "3", "-2", "4/6" (reduced on read). Throws std::invalid_argument.
Rational parse_rational(const std::string& text);

/// Dense row-major matrix of rationals. Entries are always canonical (GMP
/// keeps mpq values reduced after every arithmetic operation).
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols);
  RationalMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries);

  static RationalMatrix identity(std::size_t n);
  static RationalMatrix from_ints(const std::vector<std::vector<long>>& rows);
  /// Builds a matrix whose columns are the given vectors (all of length `rows`).
  static RationalMatrix from_columns(std::size_t rows, std::span<const RationalVector> columns);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  bool is_zero() const;
  RationalMatrix transpose() const;
  RationalVector column(std::size_t c) const;
  RationalVector apply(const RationalVector& v) const;

  RationalMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const RationalMatrix& m);
  /// Keeps the listed rows, in the listed order.
  RationalMatrix select_rows(std::span<const std::size_t> rows) const;

  std::string to_string() const;

  friend bool operator==(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalMatrix operator-(const RationalMatrix& a);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Reduced row echelon form. `pivots[i]` is the pivot column of row i of
/// `reduced`; `reduced` has exactly rank(A) rows.
struct RowEchelon {
  RationalMatrix reduced;
  std::vector<std::size_t> pivots;
};

RowEchelon rref(const RationalMatrix& a);
std::size_t rank(const RationalMatrix& a);

struct RankKernel {
  std::size_t rank = 0;
  /// One vector per free column, in increasing column order: the free variable
  /// is 1, the other free variables are 0.
  std::vector<RationalVector> kernel_basis;
  std::vector<std::size_t> free_columns;
};

RankKernel rank_kernel(const RationalMatrix& a);

/// Kernel basis packed as the columns of a cols(A) x dim ker matrix.
RationalMatrix kernel_matrix(const RankKernel& rk, std::size_t ambient);

/// Some x with A x = b, free variables set to zero; nullopt if b is not in
/// the image of A.
std::optional<RationalVector> solve(const RationalMatrix& a, const RationalVector& b);

/// Solves A X = B column by column under the same rule.
std::optional<RationalMatrix> solve_matrix(const RationalMatrix& a, const RationalMatrix& b);

struct QuotientBasis {
  /// (ambient - rank) x ambient; kills every generator.
  RationalMatrix projection;
  /// Vectors of the ambient space mapping to the standard basis of the quotient.
  std::vector<RationalVector> representatives;
};

QuotientBasis quotient_basis(std::size_t ambient_dim, std::span<const RationalVector> generators);

/// Canonical basis (rows of the RREF) of the column space of `a`, returned as
/// columns. Equal subspaces give identical matrices.
RationalMatrix column_space_basis(const RationalMatrix& a);

}  // namespace hle
