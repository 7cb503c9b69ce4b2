#include "hle/holim.hpp"

#include <algorithm>
#include <limits>
#include <memory>
#include <stdexcept>

#include "hle/errors.hpp"
#include "hle/power.hpp"

namespace hle {

ChainMap SimplicialFrame::coface(int n, int i) const {
  if (n < 1 || n > depth() || i < 0 || i > n) throw DepthExceeded("coface outside the materialized frame");
  std::vector<int> vertices;
  for (int v = 0; v <= n; ++v)
    if (v != i) vertices.push_back(v);
  return power_contravariant(simplex_map(n - 1, n, vertices), standard_simplex(n - 1), standard_simplex(n), underlying);
}

SimplicialFrame fibrant_frame(const ChainComplex& c, int n_max) {
  SimplicialFrame fr;
  fr.underlying = c;
  for (int n = 0; n <= n_max; ++n) {
    auto simplex = standard_simplex(n);
    fr.levels.push_back(power(simplex, c));
    fr.units.push_back(power_unit(simplex, c));
    if (!is_quasi_iso(fr.units.back()).quasi_iso) {
      throw std::logic_error("frame unit at level " + std::to_string(n) + " is not a quasi-isomorphism");
    }
  }
  return fr;
}

MatchingObject matching_object(const SimplicialFrame& frame, int n) {
  if (n < 0 || n > frame.depth()) {
    throw DepthExceeded("matching object at level " + std::to_string(n) + " beyond depth " +
                        std::to_string(frame.depth()));
  }
  Boundary b = boundary(n);
  MatchingObject m;
  m.complex = power(b.sset, frame.underlying);
  m.map = power_contravariant(b.inclusion, b.sset, standard_simplex(n), frame.underlying);
  return m;
}

ReedyReport check_reedy_fibrant(const SimplicialFrame& frame, int n_max) {
  ReedyReport r;
  r.pass = true;
  for (int n = 0; n <= n_max; ++n) {
    MatchingObject m = matching_object(frame, n);
    bool surj = true;
    for (int k = m.complex.lo(); k <= m.complex.hi(); ++k) {
      if (m.complex.dim(k) == 0) continue;
      if (rank(m.map.component(k)) != m.complex.dim(k)) surj = false;
    }
    r.surjective.push_back(surj);
    r.pass = r.pass && surj;
  }
  return r;
}

HolimResult make_result(ChainComplex c, std::string provenance) {
  HolimResult r;
  r.betti = nonzero_betti(c);
  r.complex = std::move(c);
  r.provenance = std::move(provenance);
  return r;
}

ChainEnd weighted_end(const ChainDiagram& f, const Weight& w) {
  if (!same_category(f.base, w.base)) throw ShapeMismatch("weight and diagram live on different categories");
  auto pf = std::make_shared<ChainDiagram>(f);
  auto pw = std::make_shared<Weight>(w);
  ChainBifunctor h;
  h.base = f.base;
  h.value = [pf, pw](Obj a, Obj b) { return power(pw->values[a], pf->values[b]); };
  h.contra = [pf, pw](Mor m, Obj b) {
    const FinCategory& c = *pw->base;
    return power_contravariant(pw->actions[m], pw->values[c.src(m)], pw->values[c.tgt(m)], pf->values[b]);
  };
  h.co = [pf, pw](Obj a, Mor m) { return power_covariant(pw->values[a], pf->actions[m]); };
  return end_chain(h);
}

HolimResult bk_holim(const ChainDiagram& f, const std::optional<Weight>& w) {
  if (!is_loop_free(*f.base)) throw NotLoopFree("bk_holim: the indexing category has a non-identity loop");
  Weight weight = w ? *w : nerve_weight(f.base);
  auto report = check_point_resolution(weight);
  if (!report.pass) throw WeightRejected("weight is not a certified cofibrant resolution of the point: " + report.reason);
  return make_result(weighted_end(f, weight).complex, "bousfield-kan end, weight " + weight_kind_name(weight.kind));
}

ChainComplex mapping_path_oracle(const ChainMap& p, const ChainMap& q) {
  const ChainComplex& a = p.source();
  const ChainComplex& b = q.source();
  const ChainComplex& c = p.target();
  const int lo = std::min({a.lo(), b.lo(), c.lo() - 1});
  const int hi = std::max({a.hi(), b.hi(), c.hi() - 1});
  auto dims_at = [&](int k) { return std::array<std::size_t, 3>{a.dim(k), b.dim(k), c.dim(k + 1)}; };
  std::vector<std::size_t> dims;
  for (int k = lo; k <= hi; ++k) {
    auto d = dims_at(k);
    dims.push_back(d[0] + d[1] + d[2]);
  }
  std::vector<RationalMatrix> diffs;
  for (int k = lo + 1; k <= hi; ++k) {
    auto s = dims_at(k);
    auto t = dims_at(k - 1);
    RationalMatrix m(t[0] + t[1] + t[2], s[0] + s[1] + s[2]);
    const std::size_t ta = 0, tb = t[0], tc = t[0] + t[1];
    const std::size_t sa = 0, sb = s[0], sc = s[0] + s[1];
    if (!a.d(k).empty()) m.set_block(ta, sa, a.d(k));
    if (!b.d(k).empty()) m.set_block(tb, sb, b.d(k));
    if (!p.component(k).empty()) m.set_block(tc, sa, p.component(k));
    if (!q.component(k).empty()) m.set_block(tc, sb, -q.component(k));
    if (!c.d(k + 1).empty()) m.set_block(tc, sc, -c.d(k + 1));
    diffs.push_back(std::move(m));
  }
  if (dims.empty()) return ChainComplex();
  return ChainComplex(lo, std::move(dims), std::move(diffs)).trimmed();
}

ChainDiagram cospan_diagram(const ChainMap& p, const ChainMap& q) {
  if (!(p.target() == q.target())) throw ShapeMismatch("homotopy pullback legs must share their target");
  auto c = cospan_category();
  ChainDiagram d;
  d.base = c;
  d.values = {p.source(), q.source(), p.target()};
  for (Mor m = 0; m < c->morphism_count(); ++m) {
    if (c->is_identity(m)) {
      d.actions.push_back(ChainMap::identity(d.values[c->src(m)]));
    } else {
      d.actions.push_back(c->morphism_label(m) == "p" ? p : q);
    }
  }
  return validate_diagram(std::move(d));
}

PullbackResult homotopy_pullback(const ChainMap& p, const ChainMap& q) {
  PullbackResult r;
  ChainDiagram d = cospan_diagram(p, q);
  r.holim = bk_holim(d);
  r.holim.provenance = "homotopy pullback: " + r.holim.provenance;
  r.oracle = mapping_path_oracle(p, q);
  r.oracle_betti = nonzero_betti(r.oracle);
  r.consistent = r.oracle_betti == r.holim.betti;
  return r;
}

CategoryPtr semi_simplex_category(int n_max) {
  CategoryData d;
  std::vector<std::vector<int>> verts;
  std::map<std::pair<int, std::vector<int>>, Mor> index;  // (target, vertices)
  for (int n = 0; n <= n_max; ++n) d.objects.push_back("[" + std::to_string(n) + "]");
  for (int m = 0; m <= n_max; ++m)
    for (int n = m; n <= n_max; ++n)
      for (const auto& s : simplex_cells(n, m)) {
        std::string label = "{";
        for (std::size_t i = 0; i < s.size(); ++i) label += (i ? "," : "") + std::to_string(s[i]);
        label += "}->[" + std::to_string(n) + "]";
        index[{n, s}] = d.morphisms.size();
        d.morphisms.push_back({static_cast<Obj>(m), static_cast<Obj>(n), label});
        verts.push_back(s);
      }
  for (int n = 0; n <= n_max; ++n) {
    std::vector<int> all(static_cast<std::size_t>(n + 1));
    for (int i = 0; i <= n; ++i) all[static_cast<std::size_t>(i)] = i;
    d.identities.push_back(index.at({n, all}));
  }
  const std::size_t mc = d.morphisms.size();
  d.composition.assign(mc * mc, npos);
  for (Mor g = 0; g < mc; ++g)
    for (Mor f = 0; f < mc; ++f) {
      if (d.morphisms[f].tgt != d.morphisms[g].src) continue;
      std::vector<int> v;
      for (int x : verts[f]) v.push_back(verts[g][static_cast<std::size_t>(x)]);
      d.composition[g * mc + f] = index.at({static_cast<int>(d.morphisms[g].tgt), v});
    }
  return FinCategory::validate(std::move(d));
}

std::vector<int> injection_vertices(const FinCategory& delta, Mor m) {
  const Obj s = delta.src(m), t = delta.tgt(m);
  const auto& h = delta.hom(s, t);
  const auto pos = static_cast<std::size_t>(std::find(h.begin(), h.end(), m) - h.begin());
  return simplex_cells(static_cast<int>(t), static_cast<int>(s))[pos];
}

CosimplicialObject validate_cosimplicial(CosimplicialObject x) {
  const int depth = x.depth();
  if (depth < 0) throw ShapeMismatch("cosimplicial object needs at least level 0");
  x.cofaces.resize(static_cast<std::size_t>(depth + 1));
  for (int n = 1; n <= depth; ++n) {
    const auto& row = x.cofaces[static_cast<std::size_t>(n)];
    if (row.size() != static_cast<std::size_t>(n + 1)) {
      throw ShapeMismatch("level " + std::to_string(n) + " needs " + std::to_string(n + 1) + " cofaces");
    }
    for (const auto& m : row) {
      if (!(m.source() == x.levels[static_cast<std::size_t>(n - 1)]) || !(m.target() == x.levels[static_cast<std::size_t>(n)])) {
        throw ShapeMismatch("coface into level " + std::to_string(n) + " has the wrong endpoints");
      }
    }
  }
  for (int n = 2; n <= depth; ++n)
    for (int j = 1; j <= n; ++j)
      for (int i = 0; i < j; ++i) {
        const auto& lo = x.cofaces[static_cast<std::size_t>(n - 1)];
        const auto& hi = x.cofaces[static_cast<std::size_t>(n)];
        if (!(compose(hi[static_cast<std::size_t>(j)], lo[static_cast<std::size_t>(i)]) ==
              compose(hi[static_cast<std::size_t>(i)], lo[static_cast<std::size_t>(j - 1)]))) {
          throw FunctorialityViolation("cosimplicial identity d^" + std::to_string(j) + " d^" + std::to_string(i) +
                                       " fails into level " + std::to_string(n));
        }
      }
  return x;
}

CosimplicialObject constant_cosimplicial(const ChainComplex& c, int depth) {
  CosimplicialObject x;
  x.levels.assign(static_cast<std::size_t>(depth + 1), c);
  x.cofaces.resize(static_cast<std::size_t>(depth + 1));
  for (int n = 1; n <= depth; ++n) x.cofaces[static_cast<std::size_t>(n)].assign(static_cast<std::size_t>(n + 1), ChainMap::identity(c));
  return x;
}

CosimplicialObject cosimplicial_replacement(const ChainDiagram& f, int depth) {
  Nerve nv = nerve(*f.base);
  const SemiSimplicialSet& k = nv.sset;
  CosimplicialObject x;
  std::vector<DirectSum> sums;
  for (int n = 0; n <= depth; ++n) {
    std::vector<ChainComplex> parts;
    for (std::size_t s = 0; s < k.count(n); ++s) parts.push_back(f.values[nv.cells[static_cast<std::size_t>(n)][s].objects.back()]);
    sums.push_back(direct_sum(parts));
    x.levels.push_back(sums.back().complex);
  }
  x.cofaces.resize(static_cast<std::size_t>(depth + 1));
  for (int n = 1; n <= depth; ++n) {
    const DirectSum& src = sums[static_cast<std::size_t>(n - 1)];
    const DirectSum& dst = sums[static_cast<std::size_t>(n)];
    for (int i = 0; i <= n; ++i) {
      std::map<int, RationalMatrix> comps;
      for (int deg = dst.complex.lo(); deg <= dst.complex.hi(); ++deg) {
        if (dst.complex.dim(deg) == 0 || src.complex.dim(deg) == 0) continue;
        RationalMatrix m(dst.complex.dim(deg), src.complex.dim(deg));
        for (std::size_t s = 0; s < k.count(n); ++s) {
          const auto& cell = nv.cells[static_cast<std::size_t>(n)][s];
          const std::size_t face = k.face(n, s, static_cast<std::size_t>(i));
          const ChainComplex& v = f.values[cell.objects.back()];
          if (v.dim(deg) == 0) continue;
          const Obj face_last = nv.cells[static_cast<std::size_t>(n - 1)][face].objects.back();
          RationalMatrix block = i < n ? RationalMatrix::identity(v.dim(deg))
                                       : f.actions[cell.arrows.back()].component(deg);
          if (f.values[face_last].dim(deg) == 0) continue;
          m.set_block(dst.offsets.at(deg)[s], src.offsets.at(deg)[face], block);
        }
        comps[deg] = std::move(m);
      }
      x.cofaces[static_cast<std::size_t>(n)].push_back(ChainMap(src.complex, dst.complex, std::move(comps)));
    }
  }
  return validate_cosimplicial(std::move(x));
}

ChainDiagram as_diagram(const CosimplicialObject& x) {
  auto delta = semi_simplex_category(x.depth());
  ChainDiagram d;
  d.base = delta;
  d.values = x.levels;
  for (Mor m = 0; m < delta->morphism_count(); ++m) {
    const int s = static_cast<int>(delta->src(m));
    const int t = static_cast<int>(delta->tgt(m));
    auto v = injection_vertices(*delta, m);
    std::vector<int> missing;
    for (int j = 0, p = 0; j <= t; ++j) {
      if (p < static_cast<int>(v.size()) && v[static_cast<std::size_t>(p)] == j) {
        ++p;
      } else {
        missing.push_back(j);
      }
    }
    ChainMap acc = ChainMap::identity(x.levels[static_cast<std::size_t>(s)]);
    for (std::size_t step = 0; step < missing.size(); ++step) {
      const int level = s + static_cast<int>(step) + 1;
      acc = compose(x.cofaces[static_cast<std::size_t>(level)][static_cast<std::size_t>(missing[step])], acc);
    }
    d.actions.push_back(std::move(acc));
  }
  return validate_diagram(std::move(d));
}

namespace {

Weight simplex_weight(const CategoryPtr& delta) {
  Weight w;
  w.base = delta;
  w.kind = WeightKind::kCustom;
  for (Obj n = 0; n < delta->object_count(); ++n) w.values.push_back(standard_simplex(static_cast<int>(n)));
  for (Mor m = 0; m < delta->morphism_count(); ++m) {
    w.actions.push_back(simplex_map(static_cast<int>(delta->src(m)), static_cast<int>(delta->tgt(m)),
                                    injection_vertices(*delta, m)));
  }
  return validate_weight(std::move(w));
}

ChainComplex direct_totalization(const CosimplicialObject& x) {
  std::vector<GradedMap> horizontal;
  for (int n = 0; n < x.depth(); ++n) {
    const ChainComplex& src = x.levels[static_cast<std::size_t>(n)];
    GradedMap h;
    for (int t = src.lo(); t <= src.hi(); ++t) {
      const std::size_t rows = x.levels[static_cast<std::size_t>(n + 1)].dim(t);
      if (src.dim(t) == 0 || rows == 0) continue;
      RationalMatrix sum(rows, src.dim(t));
      for (int i = 0; i <= n + 1; ++i) {
        const auto& c = x.cofaces[static_cast<std::size_t>(n + 1)][static_cast<std::size_t>(i)].component(t);
        sum = (i % 2 == 0) ? sum + c : sum - c;
      }
      // -(-1)^{t-n} makes the horizontal map anticommute with d.
      const bool negate = ((t - n) % 2 + 2) % 2 == 0;
      h.components[t] = negate ? -sum : sum;
    }
    horizontal.push_back(std::move(h));
  }
  return product_total(x.levels, horizontal);
}

}  // namespace

int fat_tot_stable_bound(const CosimplicialObject& x) {
  std::optional<int> hi;
  for (const auto& level : x.levels) {
    auto s = level.support();
    if (s) hi = hi ? std::max(*hi, s->second) : s->second;
  }
  if (!hi) return std::numeric_limits<int>::min();
  return *hi - x.depth() + 1;
}

FatTotResult fat_tot(const CosimplicialObject& x, std::optional<int> min_degree) {
  FatTotResult r;
  r.stable_from = fat_tot_stable_bound(x);
  if (min_degree && *min_degree < r.stable_from) {
    throw TruncationTooShallow("degree " + std::to_string(*min_degree) + " needs more depth; stable from " +
                               std::to_string(r.stable_from) + " at depth " + std::to_string(x.depth()));
  }
  ChainDiagram d = as_diagram(x);
  ChainEnd e = weighted_end(d, simplex_weight(d.base));
  r.result = make_result(e.complex, "fat totalization, depth " + std::to_string(x.depth()));
  r.direct_betti = nonzero_betti(direct_totalization(x));
  r.cross_check = r.direct_betti == r.result.betti;
  return r;
}

HomotopyInitialReport check_homotopy_initial(const FunctorData& f) {
  if (!is_loop_free(*f.source) || !is_loop_free(*f.target)) {
    throw NotLoopFree("check_homotopy_initial: source and target must be loop-free");
  }
  HomotopyInitialReport r;
  r.pass = true;
  for (Obj y = 0; y < f.target->object_count(); ++y) {
    auto k = nerve(*comma_under_functor(f, y).category).sset;
    const bool ok = !k.empty() && homology_contractible(k);
    r.contractible.push_back(ok);
    if (!ok && r.pass) {
      r.reason = k.empty() ? "comma at " + f.target->object_label(y) + " is empty"
                           : "nerve of the comma at " + f.target->object_label(y) + " is not contractible";
    }
    r.pass = r.pass && ok;
  }
  return r;
}

namespace {

using CellKeys = std::vector<std::map<WeightCellKey, std::size_t>>;

CellKeys cell_keys(const Weight& w, Obj x) {
  CellKeys keys;
  for (const auto& row : w.cells[x]) {
    std::map<WeightCellKey, std::size_t> m;
    for (std::size_t i = 0; i < row.size(); ++i) m[cell_key(row[i])] = i;
    keys.push_back(std::move(m));
  }
  return keys;
}

const HomBlock* block_for(const std::vector<HomBlock>& blocks, int n) {
  for (const auto& b : blocks)
    if (b.n == n) return &b;
  return nullptr;
}

// One weight-cell-wise linear map between the ambient spaces of two weighted
// ends: a list of (target object, target cell, source object, source cell,
// dimension, map of values).
struct CellTerm {
  Obj target_obj;
  std::size_t target_cell;
  Obj source_obj;
  std::size_t source_cell;
  int dim;
  const ChainMap* value_map;  // nullptr means identity
};

ChainMap restrict_cellwise(const ChainEnd& src, const Weight& ws, const ChainDiagram& fs, const ChainEnd& dst,
                           const Weight& wt, const ChainDiagram& ft, const std::vector<CellTerm>& terms) {
  std::vector<ChainComplex> ns, nt;
  for (const auto& v : ws.values) ns.push_back(normalized_chains(v));
  for (const auto& v : wt.values) nt.push_back(normalized_chains(v));
  std::map<int, RationalMatrix> comps;
  const ChainComplex& sa = src.ambient.complex;
  const ChainComplex& ta = dst.ambient.complex;
  for (int k = src.complex.lo(); k <= src.complex.hi(); ++k) {
    if (src.complex.dim(k) == 0) continue;
    RationalMatrix a(ta.dim(k), sa.dim(k));
    for (const auto& t : terms) {
      const int vd = t.dim + k;
      const std::size_t rows_t = ft.values[t.target_obj].dim(vd);
      const std::size_t rows_s = fs.values[t.source_obj].dim(vd);
      if (rows_t == 0 || rows_s == 0) continue;
      auto lt = hom_layout(nt[t.target_obj], ft.values[t.target_obj], k);
      auto ls = hom_layout(ns[t.source_obj], fs.values[t.source_obj], k);
      const HomBlock* bt = block_for(lt, t.dim);
      const HomBlock* bs = block_for(ls, t.dim);
      if (!bt || !bs) continue;
      const std::size_t ot = dst.ambient.offsets.at(k)[t.target_obj] + bt->offset;
      const std::size_t os = src.ambient.offsets.at(k)[t.source_obj] + bs->offset;
      for (std::size_t r2 = 0; r2 < rows_t; ++r2)
        for (std::size_t r = 0; r < rows_s; ++r) {
          Rational v = t.value_map ? t.value_map->component(vd)(r2, r) : Rational(r2 == r ? 1 : 0);
          if (sgn(v) == 0) continue;
          a(ot + r2 * bt->cols + t.target_cell, os + r * bs->cols + t.source_cell) += v;
        }
    }
    RationalMatrix image = a * src.inclusion.component(k);
    if (dst.complex.dim(k) == 0) {
      if (!image.is_zero()) throw NotNatural("cellwise map leaves the target end in degree " + std::to_string(k));
      continue;
    }
    comps[k] = equalizer_coordinates(dst.equalizer, k, image);
  }
  return ChainMap(src.complex, dst.complex, std::move(comps));
}

struct ChangeData {
  ChainDiagram pulled;  // f*F over Γ
  Weight left_weight;   // N(Γ↓−)
  Weight right_weight;  // N(f↓−)
  ChainEnd lhs;
  ChainEnd rhs;
};

ChangeData change_data(const FunctorData& f, const ChainDiagram& d) {
  if (!is_loop_free(*f.source) || !is_loop_free(*f.target)) {
    throw NotLoopFree("change of diagrams needs loop-free source and target");
  }
  ChangeData c;
  c.pulled = restrict(f, d);
  c.left_weight = nerve_weight(f.source);
  c.right_weight = nerve_of_comma_under(f);
  c.lhs = weighted_end(c.pulled, c.left_weight);
  c.rhs = weighted_end(d, c.right_weight);
  return c;
}

}  // namespace

NerveKanReport nerve_kan_bijection(const FunctorData& f, int n) {
  const FinCategory& src = *f.source;
  const FinCategory& tgt = *f.target;
  Weight left = nerve_weight(f.source);
  Weight right = nerve_of_comma_under(f);
  auto cells_at = [n](const Weight& w, Obj x) -> const std::vector<WeightCell>& {
    static const std::vector<WeightCell> none;
    const auto& rows = w.cells[x];
    return static_cast<std::size_t>(n) < rows.size() ? rows[static_cast<std::size_t>(n)] : none;
  };
  FinSetDiagram d;
  d.base = f.source;
  for (Obj x = 0; x < src.object_count(); ++x) d.sizes.push_back(cells_at(left, x).size());
  for (Mor m = 0; m < src.morphism_count(); ++m) {
    const auto& act = left.actions[m].cells;
    d.action.push_back(static_cast<std::size_t>(n) < act.size() ? act[static_cast<std::size_t>(n)]
                                                                 : std::vector<std::size_t>{});
  }
  d = validate_diagram(std::move(d));
  KanExtension l = lan(f, d);

  NerveKanReport r;
  r.pass = true;
  std::vector<std::vector<std::size_t>> bij;
  for (Obj y = 0; y < tgt.object_count(); ++y) {
    const auto& target_cells = cells_at(right, y);
    std::map<WeightCellKey, std::size_t> keys;
    for (std::size_t i = 0; i < target_cells.size(); ++i) keys[cell_key(target_cells[i])] = i;
    r.lan_sizes.push_back(l.diagram.sizes[y]);
    r.comma_sizes.push_back(target_cells.size());
    std::vector<std::size_t> map;
    std::vector<bool> hit(target_cells.size(), false);
    for (const auto& desc : l.description[y]) {
      const WeightCell& cell = cells_at(left, desc[0])[desc[2]];
      const Mor aug = tgt.compose(desc[1], f.morphism_map[cell.augmentation]);
      auto it = keys.find({cell.objects.front(), cell.arrows, aug});
      if (it == keys.end() || hit[it->second]) {
        r.pass = false;
        if (r.reason.empty()) r.reason = "cells at " + tgt.object_label(y) + " do not correspond";
        map.push_back(npos);
        continue;
      }
      hit[it->second] = true;
      map.push_back(it->second);
    }
    if (map.size() != target_cells.size()) {
      r.pass = false;
      if (r.reason.empty()) r.reason = "cell counts differ at " + tgt.object_label(y);
    }
    bij.push_back(std::move(map));
  }
  if (!r.pass) return r;
  for (Mor g = 0; g < tgt.morphism_count(); ++g) {
    const Obj y = tgt.src(g), y2 = tgt.tgt(g);
    for (std::size_t e = 0; e < bij[y].size(); ++e) {
      const std::size_t via_lan = bij[y2][l.diagram.action[g][e]];
      const std::size_t via_comma = right.actions[g].cells[static_cast<std::size_t>(n)][bij[y][e]];
      if (via_lan != via_comma) {
        r.pass = false;
        r.reason = "bijection is not natural along " + tgt.morphism_label(g);
        return r;
      }
    }
  }
  return r;
}

ChangeOfDiagramsReport change_of_diagrams_iso(const FunctorData& f, const ChainDiagram& d) {
  ChangeData c = change_data(f, d);
  ChangeOfDiagramsReport r;
  r.lhs_dims = describe_dims(c.lhs.complex);
  r.rhs_dims = describe_dims(c.rhs.complex);
  const FinCategory& src = *f.source;
  const FinCategory& tgt = *f.target;

  // Forward: ψ_{γ′}(σ, α) = F(α)·φ_{x}(σ, id_x), x the last object of σ.
  std::vector<CellTerm> forward;
  std::vector<CellKeys> left_keys, right_keys;
  for (Obj x = 0; x < src.object_count(); ++x) left_keys.push_back(cell_keys(c.left_weight, x));
  for (Obj y = 0; y < tgt.object_count(); ++y) right_keys.push_back(cell_keys(c.right_weight, y));
  for (Obj y = 0; y < tgt.object_count(); ++y) {
    const auto& cells = c.right_weight.cells[y];
    for (std::size_t n = 0; n < cells.size(); ++n)
      for (std::size_t s = 0; s < cells[n].size(); ++s) {
        const auto& cell = cells[n][s];
        const Obj x = cell.objects.back();
        const std::size_t s0 = left_keys[x][n].at({cell.objects.front(), cell.arrows, src.identity(x)});
        forward.push_back({y, s, x, s0, static_cast<int>(n), &d.actions[cell.augmentation]});
      }
  }
  // Backward: φ_γ(σ, β) = ψ_{fγ}(σ, f(β)).
  std::vector<CellTerm> backward;
  for (Obj x = 0; x < src.object_count(); ++x) {
    const auto& cells = c.left_weight.cells[x];
    for (std::size_t n = 0; n < cells.size(); ++n)
      for (std::size_t s = 0; s < cells[n].size(); ++s) {
        const auto& cell = cells[n][s];
        const Obj y = f.object_map[x];
        const Obj y0 = cell.objects.front();
        const std::size_t s1 = right_keys[y][n].at({y0, cell.arrows, f.morphism_map[cell.augmentation]});
        backward.push_back({x, s, y, s1, static_cast<int>(n), nullptr});
      }
  }
  try {
    r.forward = restrict_cellwise(c.lhs, c.left_weight, c.pulled, c.rhs, c.right_weight, d, forward);
    r.backward = restrict_cellwise(c.rhs, c.right_weight, d, c.lhs, c.left_weight, c.pulled, backward);
  } catch (const Error& e) {
    r.reason = e.what();
    return r;
  }
  const bool same_dims = r.lhs_dims == r.rhs_dims;
  const bool inverse = compose(r.backward, r.forward) == ChainMap::identity(c.lhs.complex) &&
                       compose(r.forward, r.backward) == ChainMap::identity(c.rhs.complex);
  r.pass = same_dims && inverse;
  if (!same_dims) r.reason = "dimensions differ";
  else if (!inverse) r.reason = "the explicit maps are not mutually inverse";
  return r;
}

ComparisonReport comparison_map(const FunctorData& f, const ChainDiagram& d) {
  if (!is_loop_free(*f.source) || !is_loop_free(*f.target)) throw NotLoopFree("comparison_map needs loop-free categories");
  const FinCategory& tgt = *f.target;
  ComparisonReport r;
  Weight full = nerve_weight(f.target);
  ChainEnd whole = weighted_end(d, full);
  r.target_holim = make_result(whole.complex, "bousfield-kan end, weight nerve");
  r.change = change_of_diagrams_iso(f, d);
  ChangeData c = change_data(f, d);
  r.source_holim = make_result(c.lhs.complex, "bousfield-kan end of the restriction, weight nerve");

  // N(f↓γ′) -> N(Γ′↓γ′): apply f to the chain, keep the augmentation.
  std::vector<ChainMap> comps;
  for (Obj y = 0; y < tgt.object_count(); ++y) {
    CellKeys keys = cell_keys(full, y);
    SSetMap w;
    for (const auto& row : c.right_weight.cells[y]) {
      std::vector<std::size_t> img;
      for (const auto& cell : row) {
        std::vector<Mor> arrows;
        bool degenerate = false;
        for (Mor m : cell.arrows) {
          const Mor fm = f.morphism_map[m];
          if (tgt.is_identity(fm)) degenerate = true;
          arrows.push_back(fm);
        }
        img.push_back(degenerate ? kDegenerate : keys[arrows.size()].at({f.object_map[cell.objects.front()], arrows, cell.augmentation}));
      }
      w.cells.push_back(std::move(img));
    }
    validate_sset_map(w, c.right_weight.values[y], full.values[y]);
    comps.push_back(power_contravariant(w, c.right_weight.values[y], full.values[y], d.values[y]));
  }
  ChainMap to_rhs = induced_end_map(whole, c.rhs, comps);
  if (r.change.pass) {
    r.map = compose(r.change.backward, to_rhs);
    r.quasi_iso = is_quasi_iso(r.map).quasi_iso;
  }
  return r;
}

InvarianceReport holim_we_invariance(const ChainNatTrans& alpha) {
  const FinCategory& c = *alpha.source.base;
  for (Obj x = 0; x < c.object_count(); ++x) {
    if (!is_quasi_iso(alpha.components[x]).quasi_iso) {
      throw NotComponentwiseWE("component at " + c.object_label(x) + " is not a quasi-isomorphism");
    }
  }
  if (!is_loop_free(c)) throw NotLoopFree("holim_we_invariance: the indexing category has a non-identity loop");
  Weight w = nerve_weight(alpha.source.base);
  ChainEnd es = weighted_end(alpha.source, w);
  ChainEnd et = weighted_end(alpha.target, w);
  std::vector<ChainMap> comps;
  for (Obj x = 0; x < c.object_count(); ++x) comps.push_back(power_covariant(w.values[x], alpha.components[x]));
  InvarianceReport r;
  r.map = induced_end_map(es, et, comps);
  r.quasi_iso = is_quasi_iso(r.map).quasi_iso;
  r.source = make_result(es.complex, "bousfield-kan end, weight nerve");
  r.target = make_result(et.complex, "bousfield-kan end, weight nerve");
  return r;
}

}  // namespace hle
