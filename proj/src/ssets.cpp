#include "hle/ssets.hpp"

#include <numeric>

#include "hle/errors.hpp"

namespace hle {

SemiSimplicialSet::SemiSimplicialSet(std::vector<std::size_t> counts, std::vector<std::vector<std::size_t>> faces)
    : counts_(std::move(counts)), faces_(std::move(faces)) {
  while (!counts_.empty() && counts_.back() == 0) counts_.pop_back();
  faces_.resize(counts_.size());
  for (std::size_t n = 1; n < counts_.size(); ++n) {
    if (faces_[n].size() != counts_[n] * (n + 1)) {
      throw ShapeMismatch("face table in dimension " + std::to_string(n) + " has " +
                          std::to_string(faces_[n].size()) + " entries, expected " +
                          std::to_string(counts_[n] * (n + 1)));
    }
    for (auto x : faces_[n]) {
      if (x >= counts_[n - 1]) throw ShapeMismatch("face index out of range in dimension " + std::to_string(n));
    }
  }
  if (!counts_.empty()) faces_[0].clear();
  for (int n = 2; n <= dimension(); ++n) {
    for (std::size_t c = 0; c < count(n); ++c) {
      for (int j = 1; j <= n; ++j) {
        for (int i = 0; i < j; ++i) {
          const auto lhs = face(n - 1, face(n, c, static_cast<std::size_t>(j)), static_cast<std::size_t>(i));
          const auto rhs = face(n - 1, face(n, c, static_cast<std::size_t>(i)), static_cast<std::size_t>(j - 1));
          if (lhs != rhs) {
            throw SimplicialIdentityViolation("d_" + std::to_string(i) + " d_" + std::to_string(j) + " != d_" +
                                              std::to_string(j - 1) + " d_" + std::to_string(i) + " on cell " +
                                              std::to_string(c) + " of dimension " + std::to_string(n));
          }
        }
      }
    }
  }
}

std::size_t SemiSimplicialSet::total_cells() const { return std::accumulate(counts_.begin(), counts_.end(), std::size_t{0}); }

long SemiSimplicialSet::euler_characteristic() const {
  long chi = 0;
  for (std::size_t n = 0; n < counts_.size(); ++n) chi += (n % 2 == 0 ? 1 : -1) * static_cast<long>(counts_[n]);
  return chi;
}

void validate_sset_map(const SSetMap& f, const SemiSimplicialSet& source, const SemiSimplicialSet& target) {
  if (f.cells.size() < static_cast<std::size_t>(source.dimension() + 1)) {
    throw ShapeMismatch("simplicial map is missing dimensions");
  }
  for (int n = 0; n <= source.dimension(); ++n) {
    const auto& row = f.cells[static_cast<std::size_t>(n)];
    if (row.size() != source.count(n)) throw ShapeMismatch("simplicial map has the wrong number of cells");
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (row[c] == kDegenerate) {
        if (n == 0) throw FunctorialityViolation("a vertex cannot map to a degenerate cell");
        continue;
      }
      if (row[c] >= target.count(n)) throw ShapeMismatch("simplicial map image out of range");
      for (int i = 0; n > 0 && i <= n; ++i) {
        const auto fi = f.cells[static_cast<std::size_t>(n - 1)][source.face(n, c, static_cast<std::size_t>(i))];
        if (fi != target.face(n, row[c], static_cast<std::size_t>(i))) {
          throw FunctorialityViolation("simplicial map does not commute with d_" + std::to_string(i) +
                                       " on cell " + std::to_string(c) + " of dimension " + std::to_string(n));
        }
      }
    }
  }
}

SSetMap identity_sset_map(const SemiSimplicialSet& k) {
  SSetMap f;
  for (int n = 0; n <= k.dimension(); ++n) {
    std::vector<std::size_t> row(k.count(n));
    std::iota(row.begin(), row.end(), std::size_t{0});
    f.cells.push_back(std::move(row));
  }
  return f;
}

SSetMap compose_sset_maps(const SSetMap& g, const SSetMap& f) {
  SSetMap h;
  for (std::size_t n = 0; n < f.cells.size(); ++n) {
    std::vector<std::size_t> row;
    for (auto c : f.cells[n]) row.push_back(c == kDegenerate ? kDegenerate : g.cells[n][c]);
    h.cells.push_back(std::move(row));
  }
  return h;
}

std::vector<std::vector<int>> simplex_cells(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > n) return out;
  std::vector<int> cur(static_cast<std::size_t>(k + 1));
  std::iota(cur.begin(), cur.end(), 0);
  while (true) {
    out.push_back(cur);
    int i = k;
    while (i >= 0 && cur[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++cur[static_cast<std::size_t>(i)];
    for (int j = i + 1; j <= k; ++j) cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

namespace {

std::map<std::vector<int>, std::size_t> subset_index(int n, int k) {
  std::map<std::vector<int>, std::size_t> idx;
  auto cells = simplex_cells(n, k);
  for (std::size_t i = 0; i < cells.size(); ++i) idx[cells[i]] = i;
  return idx;
}

SemiSimplicialSet simplex_upto(int n, int top) {
  std::vector<std::size_t> counts;
  std::vector<std::vector<std::size_t>> faces;
  for (int k = 0; k <= top; ++k) {
    auto cells = simplex_cells(n, k);
    counts.push_back(cells.size());
    std::vector<std::size_t> f;
    if (k > 0) {
      auto lower = subset_index(n, k - 1);
      for (const auto& s : cells)
        for (int i = 0; i <= k; ++i) {
          auto t = s;
          t.erase(t.begin() + i);
          f.push_back(lower.at(t));
        }
    }
    faces.push_back(std::move(f));
  }
  return SemiSimplicialSet(std::move(counts), std::move(faces));
}

}  // namespace

SemiSimplicialSet standard_simplex(int n) { return simplex_upto(n, n); }

Boundary boundary(int n) {
  Boundary b;
  b.sset = simplex_upto(n, n - 1);
  b.inclusion = identity_sset_map(b.sset);
  return b;
}

SSetMap simplex_map(int m, int n, const std::vector<int>& vertices) {
  if (vertices.size() != static_cast<std::size_t>(m + 1)) throw ShapeMismatch("simplex_map needs m+1 vertices");
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (vertices[i] < 0 || vertices[i] > n || (i > 0 && vertices[i] <= vertices[i - 1])) {
      throw ShapeMismatch("simplex_map vertices must be strictly increasing in [0, n]");
    }
  }
  SSetMap f;
  for (int k = 0; k <= m; ++k) {
    auto idx = subset_index(n, k);
    std::vector<std::size_t> row;
    for (const auto& s : simplex_cells(m, k)) {
      std::vector<int> t;
      for (int v : s) t.push_back(vertices[static_cast<std::size_t>(v)]);
      row.push_back(idx.at(t));
    }
    f.cells.push_back(std::move(row));
  }
  return f;
}

std::size_t Nerve::find(const std::vector<Mor>& arrows) const {
  const std::size_t k = arrows.size();
  if (k == 0 || k >= index.size()) return npos;
  auto it = index[k].find(arrows);
  return it == index[k].end() ? npos : it->second;
}

Nerve nerve(const FinCategory& c) {
  if (!is_loop_free(c)) throw NotLoopFree("nerve: category has a non-identity loop");
  Nerve nv;
  std::vector<std::size_t> counts;
  std::vector<std::vector<std::size_t>> faces;
  nv.cells.emplace_back();
  nv.index.emplace_back();
  for (Obj x = 0; x < c.object_count(); ++x) nv.cells[0].push_back({{x}, {}});
  counts.push_back(c.object_count());
  faces.emplace_back();
  if (c.object_count() == 0) {
    nv.sset = SemiSimplicialSet({}, {});
    return nv;
  }
  for (std::size_t k = 1;; ++k) {
    std::vector<NerveCell> next;
    const auto& prev = nv.cells[k - 1];
    for (const auto& cell : prev) {
      const Obj last = cell.objects.back();
      for (Mor m : c.out_of(last)) {
        if (c.is_identity(m)) continue;
        NerveCell n = cell;
        n.objects.push_back(c.tgt(m));
        n.arrows.push_back(m);
        next.push_back(std::move(n));
      }
    }
    if (next.empty()) break;
    std::map<std::vector<Mor>, std::size_t> idx;
    for (std::size_t i = 0; i < next.size(); ++i) idx[next[i].arrows] = i;
    std::vector<std::size_t> f;
    for (const auto& cell : next) {
      for (std::size_t i = 0; i <= k; ++i) {
        if (k == 1) {
          f.push_back(i == 0 ? cell.objects[1] : cell.objects[0]);
          continue;
        }
        std::vector<Mor> a;
        if (i == 0) {
          a.assign(cell.arrows.begin() + 1, cell.arrows.end());
        } else if (i == k) {
          a.assign(cell.arrows.begin(), cell.arrows.end() - 1);
        } else {
          a = cell.arrows;
          a[i - 1] = c.compose(cell.arrows[i], cell.arrows[i - 1]);
          a.erase(a.begin() + static_cast<long>(i));
        }
        f.push_back(nv.index[k - 1].at(a));
      }
    }
    counts.push_back(next.size());
    faces.push_back(std::move(f));
    nv.cells.push_back(std::move(next));
    nv.index.push_back(std::move(idx));
  }
  nv.sset = SemiSimplicialSet(std::move(counts), std::move(faces));
  return nv;
}

ChainComplex normalized_chains(const SemiSimplicialSet& k) {
  if (k.empty()) return ChainComplex();
  std::vector<std::size_t> dims;
  std::vector<RationalMatrix> diffs;
  for (int n = 0; n <= k.dimension(); ++n) dims.push_back(k.count(n));
  for (int n = 1; n <= k.dimension(); ++n) {
    RationalMatrix d(k.count(n - 1), k.count(n));
    for (std::size_t c = 0; c < k.count(n); ++c)
      for (int i = 0; i <= n; ++i) d(k.face(n, c, static_cast<std::size_t>(i)), c) += (i % 2 == 0 ? 1 : -1);
    diffs.push_back(std::move(d));
  }
  return ChainComplex(0, std::move(dims), std::move(diffs));
}

ChainMap normalized_chain_map(const SSetMap& f, const SemiSimplicialSet& source, const SemiSimplicialSet& target) {
  std::map<int, RationalMatrix> comps;
  for (int n = 0; n <= source.dimension(); ++n) {
    if (target.count(n) == 0) continue;
    RationalMatrix m(target.count(n), source.count(n));
    for (std::size_t c = 0; c < source.count(n); ++c) {
      const auto img = f.cells[static_cast<std::size_t>(n)][c];
      if (img != kDegenerate) m(img, c) = 1;
    }
    comps[n] = std::move(m);
  }
  return ChainMap(normalized_chains(source), normalized_chains(target), std::move(comps));
}

bool homology_contractible(const SemiSimplicialSet& k) {
  if (k.empty()) throw EmptyComplex("the empty simplicial set is not contractible");
  auto betti = nonzero_betti(normalized_chains(k));
  return betti.size() == 1 && betti.begin()->first == 0 && betti.begin()->second == 1;
}

std::string weight_kind_name(WeightKind k) {
  switch (k) {
    case WeightKind::kNerve: return "nerve";
    case WeightKind::kCommaUnder: return "comma";
    case WeightKind::kConstantPoint: return "point";
    case WeightKind::kCustom: return "custom";
  }
  return "custom";
}

Weight validate_weight(Weight w) {
  const FinCategory& c = *w.base;
  if (w.values.size() != c.object_count() || w.actions.size() != c.morphism_count()) {
    throw ShapeMismatch("weight needs one value per object and one action per morphism");
  }
  for (Mor f = 0; f < c.morphism_count(); ++f) {
    validate_sset_map(w.actions[f], w.values[c.src(f)], w.values[c.tgt(f)]);
    for (const auto& row : w.actions[f].cells)
      for (auto x : row)
        if (x == kDegenerate) throw FunctorialityViolation("weight actions must preserve nondegeneracy");
  }
  for (Obj x = 0; x < c.object_count(); ++x) {
    if (!(w.actions[c.identity(x)].cells == identity_sset_map(w.values[x]).cells)) {
      throw FunctorialityViolation("weight does not send id_" + c.object_label(x) + " to the identity");
    }
  }
  for (Mor g = 0; g < c.morphism_count(); ++g)
    for (Mor f : c.into(c.src(g))) {
      const Mor h = c.compose(g, f);
      if (!(compose_sset_maps(w.actions[g], w.actions[f]).cells == w.actions[h].cells)) {
        throw FunctorialityViolation("weight does not preserve the composite " + c.morphism_label(g) + "." +
                                     c.morphism_label(f));
      }
    }
  return w;
}

namespace {


// Value and cell list of a nerve-type weight at one object, from a comma.
struct CommaValue {
  SemiSimplicialSet sset;
  std::vector<std::vector<WeightCell>> cells;
  std::vector<std::map<WeightCellKey, std::size_t>> keys;
};

CommaValue comma_value(const CommaCategory& cm) {
  CommaValue v;
  Nerve nv = nerve(*cm.category);
  v.sset = nv.sset;
  for (std::size_t k = 0; k < nv.cells.size(); ++k) {
    std::vector<WeightCell> row;
    std::map<WeightCellKey, std::size_t> keys;
    for (const auto& cell : nv.cells[k]) {
      WeightCell wc;
      for (Obj o : cell.objects) wc.objects.push_back(cm.base_object[o]);
      for (Mor m : cell.arrows) wc.arrows.push_back(cm.projection.morphism_map[m]);
      wc.augmentation = cm.arrow[cell.objects.back()];
      keys[cell_key(wc)] = row.size();
      row.push_back(std::move(wc));
    }
    v.cells.push_back(std::move(row));
    v.keys.push_back(std::move(keys));
  }
  if (cm.category->object_count() == 0) {
    v.cells.clear();
    v.keys.clear();
  }
  return v;
}

// Postcomposition action on augmentations, in the category `t` where they live.
Weight assemble(const CategoryPtr& base, const std::vector<CommaValue>& values, const FinCategory& t, WeightKind kind) {
  Weight w;
  w.base = base;
  w.kind = kind;
  for (const auto& v : values) {
    w.values.push_back(v.sset);
    w.cells.push_back(v.cells);
  }
  for (Mor f = 0; f < base->morphism_count(); ++f) {
    const auto& src = values[base->src(f)];
    const auto& dst = values[base->tgt(f)];
    SSetMap act;
    for (std::size_t k = 0; k < src.cells.size(); ++k) {
      std::vector<std::size_t> row;
      for (const auto& cell : src.cells[k]) {
        const Mor aug = t.compose(f, cell.augmentation);
        row.push_back(dst.keys[k].at({cell.objects.front(), cell.arrows, aug}));
      }
      act.cells.push_back(std::move(row));
    }
    w.actions.push_back(std::move(act));
  }
  return validate_weight(std::move(w));
}

}  // namespace

Weight nerve_weight(const CategoryPtr& c) {
  if (!is_loop_free(*c)) throw NotLoopFree("nerve_weight: category has a non-identity loop");
  std::vector<CommaValue> values;
  for (Obj g = 0; g < c->object_count(); ++g) values.push_back(comma_value(comma_over(c, g)));
  return assemble(c, values, *c, WeightKind::kNerve);
}

Weight nerve_of_comma_under(const FunctorData& f) {
  if (!is_loop_free(*f.source) || !is_loop_free(*f.target)) {
    throw NotLoopFree("nerve_of_comma_under: source and target must be loop-free");
  }
  std::vector<CommaValue> values;
  for (Obj g = 0; g < f.target->object_count(); ++g) values.push_back(comma_value(comma_under_functor(f, g)));
  Weight w = assemble(f.target, values, *f.target, WeightKind::kCommaUnder);
  w.functor = f;
  return w;
}

Weight constant_point(const CategoryPtr& c) {
  Weight w;
  w.base = c;
  w.kind = WeightKind::kConstantPoint;
  SemiSimplicialSet pt({1}, {{}});
  w.values.assign(c->object_count(), pt);
  w.actions.assign(c->morphism_count(), identity_sset_map(pt));
  return validate_weight(std::move(w));
}

bool components_have_initial_objects(const FinCategory& c) {
  const std::size_t n = c.object_count();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto root = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (Mor f = 0; f < c.morphism_count(); ++f) parent[root(c.src(f))] = root(c.tgt(f));
  std::vector<bool> has_initial(n, false);
  for (Obj i = 0; i < n; ++i) {
    bool initial = true;
    for (Obj y = 0; y < n && initial; ++y)
      if (root(y) == root(i) && c.hom(i, y).size() != 1) initial = false;
    if (initial) has_initial[root(i)] = true;
  }
  for (Obj x = 0; x < n; ++x)
    if (!has_initial[root(x)]) return false;
  return true;
}

ResolutionReport check_point_resolution(const Weight& w) {
  ResolutionReport r;
  bool all = true;
  for (std::size_t x = 0; x < w.values.size(); ++x) {
    const bool ok = !w.values[x].empty() && homology_contractible(w.values[x]);
    r.contractible.push_back(ok);
    if (!ok) {
      all = false;
      if (r.reason.empty()) r.reason = "value at " + w.base->object_label(x) + " is not homology-contractible";
    }
  }
  switch (w.kind) {
    case WeightKind::kNerve:
    case WeightKind::kCommaUnder:
      r.whitelisted = true;
      break;
    case WeightKind::kConstantPoint:
      r.whitelisted = components_have_initial_objects(*w.base);
      if (!r.whitelisted && r.reason.empty()) r.reason = "constant point is cofibrant only with initial objects";
      break;
    case WeightKind::kCustom:
      r.whitelisted = false;
      if (r.reason.empty()) r.reason = "custom weights are not certified cofibrant";
      break;
  }
  r.pass = all && r.whitelisted;
  return r;
}

}  // namespace hle
