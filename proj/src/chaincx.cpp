#include "hle/chaincx.hpp"

#include <algorithm>
#include <sstream>

#include "hle/errors.hpp"

namespace hle {

namespace {

const RationalMatrix& empty_matrix() {
  static const RationalMatrix m;
  return m;
}

}  // namespace

ChainComplex::ChainComplex() : lo_(0), d_(1) {}

ChainComplex::ChainComplex(int lo, std::vector<std::size_t> dims, std::vector<RationalMatrix> diffs)
    : lo_(lo), dims_(std::move(dims)) {
  const std::size_t len = dims_.size();
  const std::size_t expected = len == 0 ? 0 : len - 1;
  if (diffs.size() != expected) {
    throw ShapeMismatch("complex with " + std::to_string(len) + " degrees needs " + std::to_string(expected) +
                        " differentials, got " + std::to_string(diffs.size()));
  }
  d_.reserve(len + 1);
  d_.emplace_back(0, len == 0 ? 0 : dims_[0]);
  for (std::size_t i = 0; i < diffs.size(); ++i) {
    if (diffs[i].rows() != dims_[i] || diffs[i].cols() != dims_[i + 1]) {
      throw ShapeMismatch("d_" + std::to_string(lo_ + static_cast<int>(i) + 1) + " has shape " +
                          std::to_string(diffs[i].rows()) + "x" + std::to_string(diffs[i].cols()) + ", expected " +
                          std::to_string(dims_[i]) + "x" + std::to_string(dims_[i + 1]));
    }
    d_.push_back(std::move(diffs[i]));
  }
  d_.emplace_back(len == 0 ? 0 : dims_[len - 1], 0);
  for (std::size_t i = 1; i + 1 < len; ++i) {
    if (!(d_[i] * d_[i + 1]).is_zero()) {
      throw DSquareNonzero("d_" + std::to_string(lo_ + static_cast<int>(i)) + " o d_" +
                           std::to_string(lo_ + static_cast<int>(i) + 1) + " is nonzero");
    }
  }
}

ChainComplex ChainComplex::concentrated(int k, std::size_t n) { return ChainComplex(k, {n}, {}); }

std::size_t ChainComplex::dim(int k) const {
  if (k < lo_ || k > hi()) return 0;
  return dims_[static_cast<std::size_t>(k - lo_)];
}

std::size_t ChainComplex::total_dim() const {
  std::size_t t = 0;
  for (auto x : dims_) t += x;
  return t;
}

const RationalMatrix& ChainComplex::d(int k) const {
  if (k < lo_ || k > hi() + 1) return empty_matrix();
  return d_[static_cast<std::size_t>(k - lo_)];
}

std::optional<std::pair<int, int>> ChainComplex::support() const {
  std::optional<int> first, last;
  for (int k = lo_; k <= hi(); ++k) {
    if (dim(k) == 0) continue;
    if (!first) first = k;
    last = k;
  }
  if (!first) return std::nullopt;
  return std::make_pair(*first, *last);
}

ChainComplex ChainComplex::trimmed() const {
  auto s = support();
  if (!s) return ChainComplex();
  if (s->first == lo_ && s->second == hi()) return *this;
  std::vector<std::size_t> dims;
  std::vector<RationalMatrix> diffs;
  for (int k = s->first; k <= s->second; ++k) {
    dims.push_back(dim(k));
    if (k > s->first) diffs.push_back(d(k));
  }
  return ChainComplex(s->first, std::move(dims), std::move(diffs));
}

bool operator==(const ChainComplex& a, const ChainComplex& b) {
  const int lo = std::min(a.lo(), b.lo());
  const int hi = std::max(a.hi(), b.hi());
  for (int k = lo; k <= hi; ++k) {
    if (a.dim(k) != b.dim(k)) return false;
  }
  for (int k = lo; k <= hi + 1; ++k) {
    const auto& x = a.d(k);
    const auto& y = b.d(k);
    if (x.empty() && y.empty()) continue;
    if (!(x == y)) return false;
  }
  return true;
}

std::string describe_dims(const ChainComplex& c) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (int k = c.lo(); k <= c.hi(); ++k) {
    if (c.dim(k) == 0) continue;
    if (!first) os << ", ";
    first = false;
    os << k << ':' << c.dim(k);
  }
  os << '}';
  return os.str();
}

namespace {

bool same_dims(const ChainComplex& a, const ChainComplex& b) {
  const int lo = std::min(a.lo(), b.lo());
  const int hi = std::max(a.hi(), b.hi());
  for (int k = lo; k <= hi; ++k)
    if (a.dim(k) != b.dim(k)) return false;
  return true;
}

}  // namespace

ChainMap::ChainMap(ChainComplex source, ChainComplex target, std::map<int, RationalMatrix> components)
    : source_(std::move(source)), target_(std::move(target)) {
  const int lo = std::min(source_.lo(), target_.lo());
  const int hi = std::max(source_.hi(), target_.hi());
  lo_ = lo;
  for (auto& [k, m] : components) {
    if (m.rows() != target_.dim(k) || m.cols() != source_.dim(k)) {
      throw ShapeMismatch("chain map component in degree " + std::to_string(k) + " has the wrong shape");
    }
  }
  for (int k = lo; k <= hi; ++k) {
    auto it = components.find(k);
    if (it != components.end()) {
      comps_.push_back(std::move(it->second));
    } else {
      comps_.emplace_back(target_.dim(k), source_.dim(k));
    }
  }
  for (int k = lo; k <= hi + 1; ++k) {
    const auto& t = target_.d(k);
    const auto& s = source_.d(k);
    if (source_.dim(k) == 0 || target_.dim(k - 1) == 0) continue;
    if (!(t * component(k) == component(k - 1) * s)) {
      throw ChainRuleViolation("chain map fails d o f = f o d in degree " + std::to_string(k));
    }
  }
}

ChainMap ChainMap::identity(const ChainComplex& c) {
  std::map<int, RationalMatrix> comps;
  for (int k = c.lo(); k <= c.hi(); ++k) comps[k] = RationalMatrix::identity(c.dim(k));
  return ChainMap(c, c, std::move(comps));
}

ChainMap ChainMap::zero(const ChainComplex& source, const ChainComplex& target) {
  return ChainMap(source, target, {});
}

const RationalMatrix& ChainMap::component(int k) const {
  if (comps_.empty() || k < lo_ || k >= lo_ + static_cast<int>(comps_.size())) return empty_matrix();
  return comps_[static_cast<std::size_t>(k - lo_)];
}

bool operator==(const ChainMap& a, const ChainMap& b) {
  if (!(a.source_ == b.source_) || !(a.target_ == b.target_)) return false;
  const int lo = std::min(a.source_.lo(), a.target_.lo());
  const int hi = std::max(a.source_.hi(), a.target_.hi());
  for (int k = lo; k <= hi; ++k) {
    const auto& x = a.component(k);
    const auto& y = b.component(k);
    if (x.empty() && y.empty()) continue;
    if (!(x == y)) return false;
  }
  return true;
}

ChainMap compose(const ChainMap& g, const ChainMap& f) {
  if (!same_dims(f.target(), g.source())) throw ShapeMismatch("chain maps are not composable");
  std::map<int, RationalMatrix> comps;
  for (int k = f.source().lo(); k <= f.source().hi(); ++k) {
    if (f.source().dim(k) == 0 || g.target().dim(k) == 0) continue;
    comps[k] = g.component(k) * f.component(k);
  }
  return ChainMap(f.source(), g.target(), std::move(comps));
}

ChainMap operator-(const ChainMap& f, const ChainMap& g) {
  if (!same_dims(f.source(), g.source()) || !same_dims(f.target(), g.target())) {
    throw ShapeMismatch("chain maps are not parallel");
  }
  std::map<int, RationalMatrix> comps;
  for (int k = f.source().lo(); k <= f.source().hi(); ++k) {
    if (f.source().dim(k) == 0 || f.target().dim(k) == 0) continue;
    comps[k] = f.component(k) - g.component(k);
  }
  return ChainMap(f.source(), f.target(), std::move(comps));
}

namespace {

// Cycles, boundaries and the quotient H_k = Z_k / B_k in Z-coordinates.
struct HomologyData {
  RankKernel cycles;
  QuotientBasis quotient;
  std::size_t dim = 0;

  RationalVector class_of(const RationalVector& cycle) const {
    RationalVector coords(cycles.free_columns.size());
    for (std::size_t i = 0; i < coords.size(); ++i) coords[i] = cycle[cycles.free_columns[i]];
    return quotient.projection.apply(coords);
  }
};

HomologyData homology_data(const ChainComplex& c, int k) {
  HomologyData h;
  h.dim = c.dim(k);
  h.cycles = rank_kernel(c.d(k));
  if (h.dim == 0) {
    h.cycles = RankKernel{};
    h.quotient = quotient_basis(0, {});
    return h;
  }
  std::vector<RationalVector> boundaries;
  const RationalMatrix& next = c.d(k + 1);
  for (std::size_t j = 0; j < next.cols(); ++j) {
    RationalVector coords(h.cycles.free_columns.size());
    bool nonzero = false;
    for (std::size_t i = 0; i < coords.size(); ++i) {
      coords[i] = next(h.cycles.free_columns[i], j);
      if (sgn(coords[i]) != 0) nonzero = true;
    }
    if (nonzero) boundaries.push_back(std::move(coords));
  }
  h.quotient = quotient_basis(h.cycles.free_columns.size(), boundaries);
  return h;
}

RationalVector cycle_from_coords(const HomologyData& h, const RationalVector& z_coords) {
  RationalVector v(h.dim);
  for (std::size_t b = 0; b < z_coords.size(); ++b) {
    if (sgn(z_coords[b]) == 0) continue;
    const auto& basis = h.cycles.kernel_basis[b];
    for (std::size_t i = 0; i < h.dim; ++i) v[i] += z_coords[b] * basis[i];
  }
  return v;
}

}  // namespace

Homology homology(const ChainComplex& c, int k) {
  Homology out;
  if (c.dim(k) == 0) return out;
  HomologyData h = homology_data(c, k);
  out.betti = h.quotient.representatives.size();
  for (const auto& rep : h.quotient.representatives) out.representatives.push_back(cycle_from_coords(h, rep));
  return out;
}

std::map<int, std::size_t> betti_numbers(const ChainComplex& c) {
  std::map<int, std::size_t> out;
  for (int k = c.lo(); k <= c.hi(); ++k) out[k] = homology(c, k).betti;
  return out;
}

std::map<int, std::size_t> nonzero_betti(const ChainComplex& c) {
  std::map<int, std::size_t> out;
  for (auto [k, b] : betti_numbers(c))
    if (b != 0) out[k] = b;
  return out;
}

QuasiIsoReport is_quasi_iso(const ChainMap& f) {
  QuasiIsoReport out;
  out.quasi_iso = true;
  const int lo = std::min(f.source().lo(), f.target().lo());
  const int hi = std::max(f.source().hi(), f.target().hi());
  for (int k = lo; k <= hi; ++k) {
    HomologyData hs = homology_data(f.source(), k);
    HomologyData ht = homology_data(f.target(), k);
    const std::size_t bs = hs.quotient.representatives.size();
    const std::size_t bt = ht.quotient.representatives.size();
    RationalMatrix induced(bt, bs);
    for (std::size_t j = 0; j < bs; ++j) {
      RationalVector z = cycle_from_coords(hs, hs.quotient.representatives[j]);
      RationalVector image = f.component(k).empty() ? RationalVector(f.target().dim(k)) : f.component(k).apply(z);
      if (bt == 0) continue;
      RationalVector cls = ht.class_of(image);
      for (std::size_t i = 0; i < bt; ++i) induced(i, j) = cls[i];
    }
    if (bs != bt || rank(induced) != bs) out.quasi_iso = false;
    if (bs != 0 || bt != 0) out.induced[k] = std::move(induced);
  }
  return out;
}

DirectSum direct_sum(std::span<const ChainComplex> summands) {
  DirectSum out;
  if (summands.empty()) return out;
  std::optional<int> lo, hi;
  for (const auto& s : summands) {
    if (s.hi() < s.lo()) continue;
    lo = lo ? std::min(*lo, s.lo()) : s.lo();
    hi = hi ? std::max(*hi, s.hi()) : s.hi();
  }
  if (!lo) {
    for (const auto& s : summands) (void)s;
    out.offsets[0] = std::vector<std::size_t>(summands.size(), 0);
    return out;
  }
  std::vector<std::size_t> dims;
  for (int k = *lo; k <= *hi; ++k) {
    std::vector<std::size_t> off;
    std::size_t total = 0;
    for (const auto& s : summands) {
      off.push_back(total);
      total += s.dim(k);
    }
    out.offsets[k] = std::move(off);
    dims.push_back(total);
  }
  std::vector<RationalMatrix> diffs;
  for (int k = *lo + 1; k <= *hi; ++k) {
    RationalMatrix m(dims[static_cast<std::size_t>(k - 1 - *lo)], dims[static_cast<std::size_t>(k - *lo)]);
    for (std::size_t i = 0; i < summands.size(); ++i) {
      const auto& di = summands[i].d(k);
      if (di.empty()) continue;
      m.set_block(out.offsets[k - 1][i], out.offsets[k][i], di);
    }
    diffs.push_back(std::move(m));
  }
  out.complex = ChainComplex(*lo, std::move(dims), std::move(diffs));
  return out;
}

ChainMap direct_sum_map(const DirectSum& source, const DirectSum& target, std::span<const ChainMap> components) {
  std::map<int, RationalMatrix> comps;
  const ChainComplex& s = source.complex;
  const ChainComplex& t = target.complex;
  for (int k = s.lo(); k <= s.hi(); ++k) {
    if (s.dim(k) == 0 || t.dim(k) == 0) continue;
    RationalMatrix m(t.dim(k), s.dim(k));
    const auto& so = source.offsets.at(k);
    const auto& to = target.offsets.at(k);
    for (std::size_t i = 0; i < components.size(); ++i) {
      const auto& c = components[i].component(k);
      if (c.empty()) continue;
      m.set_block(to[i], so[i], c);
    }
    comps[k] = std::move(m);
  }
  return ChainMap(s, t, std::move(comps));
}

std::vector<HomBlock> hom_layout(const ChainComplex& a, const ChainComplex& b, int k) {
  std::vector<HomBlock> blocks;
  std::size_t offset = 0;
  for (int n = a.lo(); n <= a.hi(); ++n) {
    const std::size_t cols = a.dim(n);
    const std::size_t rows = b.dim(n + k);
    if (cols == 0 || rows == 0) continue;
    blocks.push_back({n, offset, rows, cols});
    offset += rows * cols;
  }
  return blocks;
}

namespace {

std::optional<std::pair<int, int>> hom_degree_range(const ChainComplex& a, const ChainComplex& b) {
  auto sa = a.support();
  auto sb = b.support();
  if (!sa || !sb) return std::nullopt;
  return std::make_pair(sb->first - sa->second, sb->second - sa->first);
}

std::size_t layout_size(const std::vector<HomBlock>& blocks) {
  return blocks.empty() ? 0 : blocks.back().offset + blocks.back().rows * blocks.back().cols;
}

const HomBlock* find_block(const std::vector<HomBlock>& blocks, int n) {
  for (const auto& b : blocks)
    if (b.n == n) return &b;
  return nullptr;
}

}  // namespace

ChainComplex hom_complex(const ChainComplex& a, const ChainComplex& b) {
  auto range = hom_degree_range(a, b);
  if (!range) return ChainComplex();
  const auto [lo, hi] = *range;
  std::vector<std::vector<HomBlock>> layouts;
  std::vector<std::size_t> dims;
  for (int k = lo; k <= hi; ++k) {
    layouts.push_back(hom_layout(a, b, k));
    dims.push_back(layout_size(layouts.back()));
  }
  std::vector<RationalMatrix> diffs;
  for (int k = lo + 1; k <= hi; ++k) {
    const auto& src = layouts[static_cast<std::size_t>(k - lo)];
    const auto& dst = layouts[static_cast<std::size_t>(k - 1 - lo)];
    RationalMatrix m(layout_size(dst), layout_size(src));
    const bool odd = (k % 2) != 0;
    for (const HomBlock& blk : src) {
      const int n = blk.n;
      // d_B ∘ φ lands in block (n, k-1).
      if (const HomBlock* t = find_block(dst, n)) {
        const RationalMatrix& db = b.d(n + k);
        for (std::size_t r = 0; r < blk.rows; ++r)
          for (std::size_t s = 0; s < blk.cols; ++s)
            for (std::size_t r2 = 0; r2 < t->rows; ++r2) {
              const Rational& coef = db(r2, r);
              if (sgn(coef) == 0) continue;
              m(t->offset + r2 * t->cols + s, blk.offset + r * blk.cols + s) += coef;
            }
      }
      // -(-1)^k φ ∘ d_A lands in block (n+1, k-1).
      if (const HomBlock* t = find_block(dst, n + 1)) {
        const RationalMatrix& da = a.d(n + 1);
        for (std::size_t r = 0; r < blk.rows; ++r)
          for (std::size_t s = 0; s < blk.cols; ++s)
            for (std::size_t s2 = 0; s2 < t->cols; ++s2) {
              const Rational& coef = da(s, s2);
              if (sgn(coef) == 0) continue;
              Rational& cell = m(t->offset + r * t->cols + s2, blk.offset + r * blk.cols + s);
              if (odd) {
                cell += coef;
              } else {
                cell -= coef;
              }
            }
      }
    }
    diffs.push_back(std::move(m));
  }
  return ChainComplex(lo, std::move(dims), std::move(diffs));
}

ChainMap hom_map(const ChainMap& pre, const ChainMap& post) {
  const ChainComplex& a = pre.target();
  const ChainComplex& a2 = pre.source();
  const ChainComplex& b = post.source();
  const ChainComplex& b2 = post.target();
  ChainComplex source = hom_complex(a, b);
  ChainComplex target = hom_complex(a2, b2);
  std::map<int, RationalMatrix> comps;
  for (int k = source.lo(); k <= source.hi(); ++k) {
    if (source.dim(k) == 0 || target.dim(k) == 0) continue;
    auto src = hom_layout(a, b, k);
    auto dst = hom_layout(a2, b2, k);
    RationalMatrix m(target.dim(k), source.dim(k));
    for (const HomBlock& sb : src) {
      const HomBlock* tb = find_block(dst, sb.n);
      if (!tb) continue;
      const RationalMatrix& p = post.component(sb.n + k);  // B'_{n+k} x B_{n+k}
      const RationalMatrix& q = pre.component(sb.n);       // A_n x A'_n
      for (std::size_t r = 0; r < tb->rows; ++r)
        for (std::size_t r1 = 0; r1 < sb.rows; ++r1) {
          const Rational& prr = p(r, r1);
          if (sgn(prr) == 0) continue;
          for (std::size_t s1 = 0; s1 < sb.cols; ++s1)
            for (std::size_t s = 0; s < tb->cols; ++s) {
              const Rational& qss = q(s1, s);
              if (sgn(qss) == 0) continue;
              m(tb->offset + r * tb->cols + s, sb.offset + r1 * sb.cols + s1) += prr * qss;
            }
        }
    }
    comps[k] = std::move(m);
  }
  return ChainMap(std::move(source), std::move(target), std::move(comps));
}

std::map<int, RationalMatrix> unpack_degree_zero(const ChainComplex& a, const ChainComplex& b,
                                                 const RationalVector& element) {
  std::map<int, RationalMatrix> comps;
  for (const HomBlock& blk : hom_layout(a, b, 0)) {
    RationalMatrix m(blk.rows, blk.cols);
    for (std::size_t r = 0; r < blk.rows; ++r)
      for (std::size_t s = 0; s < blk.cols; ++s) m(r, s) = element[blk.offset + r * blk.cols + s];
    comps[blk.n] = std::move(m);
  }
  return comps;
}

ChainComplex product_total(std::span<const ChainComplex> columns, std::span<const GradedMap> horizontal) {
  if (columns.empty()) return ChainComplex();
  if (horizontal.size() + 1 != columns.size()) {
    throw ShapeMismatch("product_total needs one horizontal map between consecutive columns");
  }
  std::optional<int> lo, hi;
  for (std::size_t n = 0; n < columns.size(); ++n) {
    auto s = columns[n].support();
    if (!s) continue;
    const int shift = static_cast<int>(n);
    lo = lo ? std::min(*lo, s->first - shift) : s->first - shift;
    hi = hi ? std::max(*hi, s->second - shift) : s->second - shift;
  }
  if (!lo) return ChainComplex();
  for (std::size_t n = 0; n + 1 < columns.size(); ++n) {
    for (const auto& [t, m] : horizontal[n].components) {
      if (m.rows() != columns[n + 1].dim(t) || m.cols() != columns[n].dim(t)) {
        throw ShapeMismatch("horizontal map " + std::to_string(n) + " has the wrong shape in degree " +
                            std::to_string(t));
      }
    }
  }
  auto offsets = [&](int k) {
    std::vector<std::size_t> off;
    std::size_t total = 0;
    for (std::size_t n = 0; n < columns.size(); ++n) {
      off.push_back(total);
      total += columns[n].dim(k + static_cast<int>(n));
    }
    off.push_back(total);
    return off;
  };
  std::vector<std::size_t> dims;
  for (int k = *lo; k <= *hi; ++k) dims.push_back(offsets(k).back());
  std::vector<RationalMatrix> diffs;
  for (int k = *lo + 1; k <= *hi; ++k) {
    auto src = offsets(k);
    auto dst = offsets(k - 1);
    RationalMatrix m(dst.back(), src.back());
    for (std::size_t n = 0; n < columns.size(); ++n) {
      const int t = k + static_cast<int>(n);
      if (columns[n].dim(t) == 0) continue;
      const auto& dv = columns[n].d(t);
      if (!dv.empty()) m.set_block(dst[n], src[n], dv);
      if (n + 1 < columns.size()) {
        auto it = horizontal[n].components.find(t);
        if (it != horizontal[n].components.end() && !it->second.empty()) m.set_block(dst[n + 1], src[n], it->second);
      }
    }
    diffs.push_back(std::move(m));
  }
  for (std::size_t i = 0; i + 1 < diffs.size(); ++i) {
    if (!(diffs[i] * diffs[i + 1]).is_zero()) {
      throw TotalDSquareNonzero("total differential squares to a nonzero map in degree " +
                                std::to_string(*lo + static_cast<int>(i) + 2));
    }
  }
  return ChainComplex(*lo, std::move(dims), std::move(diffs));
}

Equalizer equalizer_kernel(const ChainMap& f, const ChainMap& g) {
  ChainMap diff = f - g;
  const ChainComplex& s = f.source();
  Equalizer out;
  if (s.hi() < s.lo()) {
    out.inclusion = ChainMap::zero(ChainComplex(), s);
    return out;
  }
  std::vector<std::size_t> dims;
  std::map<int, RationalMatrix> basis;
  for (int k = s.lo(); k <= s.hi(); ++k) {
    RankKernel rk;
    if (s.dim(k) == 0) {
      // nothing
    } else if (diff.component(k).empty()) {
      for (std::size_t j = 0; j < s.dim(k); ++j) {
        RationalVector v(s.dim(k));
        v[j] = 1;
        rk.kernel_basis.push_back(std::move(v));
        rk.free_columns.push_back(j);
      }
    } else {
      rk = rank_kernel(diff.component(k));
    }
    dims.push_back(rk.kernel_basis.size());
    basis[k] = kernel_matrix(rk, s.dim(k));
    out.free_coordinates[k] = rk.free_columns;
  }
  std::vector<RationalMatrix> diffs;
  for (int k = s.lo() + 1; k <= s.hi(); ++k) {
    const auto& fk = out.free_coordinates[k - 1];
    RationalMatrix image = s.d(k) * basis[k];
    diffs.push_back(image.select_rows(fk));
  }
  out.complex = ChainComplex(s.lo(), std::move(dims), std::move(diffs));
  out.inclusion = ChainMap(out.complex, s, std::move(basis));
  return out;
}

RationalMatrix equalizer_coordinates(const Equalizer& eq, int k, const RationalMatrix& vectors) {
  auto it = eq.free_coordinates.find(k);
  if (it == eq.free_coordinates.end()) return RationalMatrix(0, vectors.cols());
  RationalMatrix coords = vectors.select_rows(it->second);
  const auto& inc = eq.inclusion.component(k);
  if (!inc.empty() && !(inc * coords == vectors)) {
    throw NotNatural("vectors do not lie in the equalizer in degree " + std::to_string(k));
  }
  if (inc.empty() && !vectors.is_zero()) {
    throw NotNatural("vectors do not lie in the (zero) equalizer in degree " + std::to_string(k));
  }
  return coords;
}

}  // namespace hle
