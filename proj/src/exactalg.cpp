#include "hle/exactalg.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <stdexcept>

namespace hle {

Rational parse_rational(const std::string& text) {
  std::string s = text;
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  if (s[0] == '+') s.erase(0, 1);
  auto slash = s.find('/');
  Rational out;
  if (out.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal '" + text + "'");
  if (slash != std::string::npos && out.get_den() == 0) {
    throw std::invalid_argument("zero denominator in '" + text + "'");
  }
  out.canonicalize();
  return out;
}

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) {
    throw std::invalid_argument("matrix entry count does not match its shape");
  }
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::from_ints(const std::vector<std::vector<long>>& rows) {
  std::size_t nr = rows.size();
  std::size_t nc = nr == 0 ? 0 : rows.front().size();
  RationalMatrix m(nr, nc);
  for (std::size_t r = 0; r < nr; ++r) {
    if (rows[r].size() != nc) throw std::invalid_argument("ragged matrix literal");
    for (std::size_t c = 0; c < nc; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

RationalMatrix RationalMatrix::from_columns(std::size_t rows, std::span<const RationalVector> columns) {
  RationalMatrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) throw std::invalid_argument("column length mismatch");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
  }
  return m;
}

bool RationalMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Rational& x) { return sgn(x) == 0; });
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

RationalVector RationalMatrix::column(std::size_t c) const {
  RationalVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

RationalVector RationalMatrix::apply(const RationalVector& v) const {
  if (v.size() != cols_) throw std::invalid_argument("vector length does not match matrix");
  RationalVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      const Rational& a = (*this)(r, c);
      if (sgn(a) == 0 || sgn(v[c]) == 0) continue;
      out[r] += a * v[c];
    }
  }
  return out;
}

RationalMatrix RationalMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  RationalMatrix b(nr, nc);
  for (std::size_t r = 0; r < nr; ++r)
    for (std::size_t c = 0; c < nc; ++c) b(r, c) = (*this)(r0 + r, c0 + c);
  return b;
}

void RationalMatrix::set_block(std::size_t r0, std::size_t c0, const RationalMatrix& m) {
  if (r0 + m.rows() > rows_ || c0 + m.cols() > cols_) throw std::out_of_range("block outside matrix");
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) (*this)(r0 + r, c0 + c) = m(r, c);
}

RationalMatrix RationalMatrix::select_rows(std::span<const std::size_t> rows) const {
  RationalMatrix out(rows.size(), cols_);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t c = 0; c < cols_; ++c) out(i, c) = (*this)(rows[i], c);
  return out;
}

std::string RationalMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < rows_; ++r) {
    if (r) os << ',';
    os << '[';
    for (std::size_t c = 0; c < cols_; ++c) {
      if (c) os << ',';
      os << (*this)(r, c).get_str();
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

bool operator==(const RationalMatrix& a, const RationalMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
  RationalMatrix out(a.rows_, b.cols_);
  Rational tmp;
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Rational& aik = a(i, k);
      if (sgn(aik) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const Rational& bkj = b(k, j);
        if (sgn(bkj) == 0) continue;
        mpq_mul(tmp.get_mpq_t(), aik.get_mpq_t(), bkj.get_mpq_t());
        mpq_add(out(i, j).get_mpq_t(), out(i, j).get_mpq_t(), tmp.get_mpq_t());
      }
    }
  }
  return out;
}

RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix sum shape mismatch");
  RationalMatrix out = a;
  for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] += b.data_[i];
  return out;
}

RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix difference shape mismatch");
  RationalMatrix out = a;
  for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] -= b.data_[i];
  return out;
}

RationalMatrix operator-(const RationalMatrix& a) {
  RationalMatrix out = a;
  for (auto& x : out.data_) x = -x;
  return out;
}

namespace {

struct SparseRow {
  std::vector<std::uint32_t> idx;
  std::vector<Rational> val;

  const Rational* find(std::uint32_t col) const {
    auto it = std::lower_bound(idx.begin(), idx.end(), col);
    if (it == idx.end() || *it != col) return nullptr;
    return &val[static_cast<std::size_t>(it - idx.begin())];
  }
};

// row <- row - coef * other
void subtract_scaled(SparseRow& row, const Rational& coef, const SparseRow& other) {
  SparseRow out;
  out.idx.reserve(row.idx.size() + other.idx.size());
  out.val.reserve(row.idx.size() + other.idx.size());
  std::size_t i = 0, j = 0;
  Rational tmp;
  while (i < row.idx.size() || j < other.idx.size()) {
    if (j == other.idx.size() || (i < row.idx.size() && row.idx[i] < other.idx[j])) {
      out.idx.push_back(row.idx[i]);
      out.val.push_back(std::move(row.val[i]));
      ++i;
    } else if (i == row.idx.size() || other.idx[j] < row.idx[i]) {
      out.idx.push_back(other.idx[j]);
      out.val.push_back(-(coef * other.val[j]));
      ++j;
    } else {
      tmp = coef * other.val[j];
      Rational v = row.val[i] - tmp;
      if (sgn(v) != 0) {
        out.idx.push_back(row.idx[i]);
        out.val.push_back(std::move(v));
      }
      ++i;
      ++j;
    }
  }
  row = std::move(out);
}

// Row-sequential Gauss-Jordan: input rows are consumed in their original
// order and each surviving row opens a new pivot. The result is the unique
// RREF, so the pivot order only affects the intermediate work.
struct SparseEchelon {
  std::vector<SparseRow> rows;           // indexed by insertion
  std::vector<std::size_t> pivot_col;    // per row
};

SparseEchelon sparse_rref(const RationalMatrix& a) {
  const std::size_t cols = a.cols();
  SparseEchelon ech;
  std::vector<long> pivot_of_col(cols, -1);
  std::vector<Rational> scratch(cols);
  Rational factor, tmp;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    if (ech.rows.size() == cols) break;
    bool any = false;
    for (std::size_t c = 0; c < cols; ++c) {
      scratch[c] = a(r, c);
      if (sgn(scratch[c]) != 0) any = true;
    }
    if (!any) continue;
    for (std::size_t c = 0; c < cols; ++c) {
      if (sgn(scratch[c]) == 0 || pivot_of_col[c] < 0) continue;
      factor = scratch[c];
      const SparseRow& p = ech.rows[static_cast<std::size_t>(pivot_of_col[c])];
      for (std::size_t t = 0; t < p.idx.size(); ++t) {
        mpq_mul(tmp.get_mpq_t(), factor.get_mpq_t(), p.val[t].get_mpq_t());
        mpq_sub(scratch[p.idx[t]].get_mpq_t(), scratch[p.idx[t]].get_mpq_t(), tmp.get_mpq_t());
      }
    }
    SparseRow fresh;
    for (std::size_t c = 0; c < cols; ++c) {
      if (sgn(scratch[c]) != 0) {
        fresh.idx.push_back(static_cast<std::uint32_t>(c));
        fresh.val.push_back(scratch[c]);
      }
    }
    if (fresh.idx.empty()) continue;
    const std::uint32_t p = fresh.idx.front();
    if (fresh.val.front() != 1) {
      Rational inv = 1 / fresh.val.front();
      for (auto& v : fresh.val) v *= inv;
    }
    for (auto& existing : ech.rows) {
      if (const Rational* at = existing.find(p)) {
        Rational coef = *at;
        subtract_scaled(existing, coef, fresh);
      }
    }
    pivot_of_col[p] = static_cast<long>(ech.rows.size());
    ech.rows.push_back(std::move(fresh));
    ech.pivot_col.push_back(p);
  }
  return ech;
}

}  // namespace

RowEchelon rref(const RationalMatrix& a) {
  SparseEchelon ech = sparse_rref(a);
  std::vector<std::size_t> order(ech.rows.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return ech.pivot_col[x] < ech.pivot_col[y]; });
  RowEchelon out;
  out.reduced = RationalMatrix(order.size(), a.cols());
  for (std::size_t i = 0; i < order.size(); ++i) {
    const SparseRow& row = ech.rows[order[i]];
    for (std::size_t t = 0; t < row.idx.size(); ++t) out.reduced(i, row.idx[t]) = row.val[t];
    out.pivots.push_back(ech.pivot_col[order[i]]);
  }
  return out;
}

std::size_t rank(const RationalMatrix& a) { return sparse_rref(a).rows.size(); }

RankKernel rank_kernel(const RationalMatrix& a) {
  RowEchelon e = rref(a);
  RankKernel out;
  out.rank = e.pivots.size();
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    if (is_pivot[j]) continue;
    RationalVector v(a.cols());
    v[j] = 1;
    for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.reduced(i, j);
    out.kernel_basis.push_back(std::move(v));
    out.free_columns.push_back(j);
  }
  return out;
}

RationalMatrix kernel_matrix(const RankKernel& rk, std::size_t ambient) {
  return RationalMatrix::from_columns(ambient, rk.kernel_basis);
}

std::optional<RationalMatrix> solve_matrix(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("solve: right-hand side has wrong length");
  RationalMatrix aug(a.rows(), a.cols() + b.cols());
  aug.set_block(0, 0, a);
  aug.set_block(0, a.cols(), b);
  RowEchelon e = rref(aug);
  RationalMatrix x(a.cols(), b.cols());
  for (std::size_t i = 0; i < e.pivots.size(); ++i) {
    if (e.pivots[i] >= a.cols()) return std::nullopt;
    for (std::size_t j = 0; j < b.cols(); ++j) x(e.pivots[i], j) = e.reduced(i, a.cols() + j);
  }
  return x;
}

std::optional<RationalVector> solve(const RationalMatrix& a, const RationalVector& b) {
  RationalMatrix rhs(b.size(), 1);
  for (std::size_t i = 0; i < b.size(); ++i) rhs(i, 0) = b[i];
  auto x = solve_matrix(a, rhs);
  if (!x) return std::nullopt;
  return x->column(0);
}

QuotientBasis quotient_basis(std::size_t ambient_dim, std::span<const RationalVector> generators) {
  RationalMatrix g(generators.size(), ambient_dim);
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (generators[i].size() != ambient_dim) throw std::invalid_argument("generator has wrong length");
    for (std::size_t c = 0; c < ambient_dim; ++c) g(i, c) = generators[i][c];
  }
  RowEchelon e = rref(g);
  std::vector<bool> is_pivot(ambient_dim, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<std::size_t> free;
  for (std::size_t j = 0; j < ambient_dim; ++j)
    if (!is_pivot[j]) free.push_back(j);
  QuotientBasis out;
  out.projection = RationalMatrix(free.size(), ambient_dim);
  for (std::size_t q = 0; q < free.size(); ++q) {
    const std::size_t j = free[q];
    out.projection(q, j) = 1;
    for (std::size_t i = 0; i < e.pivots.size(); ++i) out.projection(q, e.pivots[i]) = -e.reduced(i, j);
    RationalVector rep(ambient_dim);
    rep[j] = 1;
    out.representatives.push_back(std::move(rep));
  }
  return out;
}

RationalMatrix column_space_basis(const RationalMatrix& a) { return rref(a.transpose()).reduced.transpose(); }

}  // namespace hle
