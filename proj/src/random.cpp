#include "hle/random.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>

#include "hle/errors.hpp"
#include "hle/exactalg.hpp"
#include "hle/presentation.hpp"

namespace hle {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

PathNames split_label(const std::string& label) {
  PathNames out;
  std::size_t start = 0;
  for (;;) {
    const auto dot = label.find('.', start);
    out.push_back(label.substr(start, dot - start));
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  return out;
}

Rational small_entry(Rng& rng) {
  static const int kValues[] = {0, 0, 1, -1, 2, 1};
  return kValues[rng.below(6)];
}

}  // namespace

Rng Rng::derive(std::uint64_t seed, std::string_view stream, std::uint64_t index) {
  return Rng(splitmix(splitmix(seed) ^ fnv1a(stream)) ^ splitmix(index + 1));
}

std::size_t Rng::below(std::size_t n) {
  // Rejection sampling keeps the draw independent of the standard library's
  // distribution implementations.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  for (;;) {
    const std::uint64_t v = engine_();
    if (v < limit) return static_cast<std::size_t>(v % n);
  }
}

int Rng::range(int lo, int hi) { return lo + static_cast<int>(below(static_cast<std::size_t>(hi - lo + 1))); }

CategoryPtr random_loop_free_category(Rng& rng, const CategoryBounds& b) {
  for (int attempt = 0;; ++attempt) {
    const std::size_t n = static_cast<std::size_t>(rng.range(1, static_cast<int>(b.max_objects)));
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
    Presentation p;
    for (std::size_t i = 0; i < n; ++i) p.objects.push_back("o" + std::to_string(i));
    // Sparser graphs after repeated overflow.
    const std::size_t density = attempt < 8 ? 5 : 2;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        std::size_t copies = 0;
        if (rng.chance(density, 10)) copies = rng.chance(1, 6) ? 2 : 1;
        for (std::size_t k = 0; k < copies; ++k) {
          p.arrows.push_back({"e" + std::to_string(p.arrows.size()), p.objects[perm[i]], p.objects[perm[j]]});
        }
      }
    CategoryPtr free = compile_presentation(p);
    if (free->morphism_count() > 3 * b.max_morphisms) continue;
    for (Obj x = 0; x < n; ++x)
      for (Obj y = 0; y < n; ++y) {
        const auto& h = free->hom(x, y);
        if (x == y || h.size() < 2 || !rng.chance(1, 2)) continue;
        const Mor m1 = h[rng.below(h.size())];
        const Mor m2 = h[rng.below(h.size())];
        if (m1 != m2) p.relations.emplace_back(split_label(free->morphism_label(m1)), split_label(free->morphism_label(m2)));
      }
    CategoryPtr c = compile_presentation(p);
    if (c->morphism_count() <= b.max_morphisms) return c;
  }
}

CategoryPtr random_category(Rng& rng, const CategoryBounds& b) {
  if (!rng.chance(1, 4) || b.max_morphisms < 4) return random_loop_free_category(rng, b);
  Presentation m;
  m.objects = {"*"};
  m.arrows = {{"t", "*", "*"}};
  const bool group = rng.chance(1, 2);
  m.table = std::vector<TableEntry>{{"t", "t", group ? "id_*" : "t"}};
  CategoryPtr monoid = compile_presentation(m);
  CategoryBounds half{std::max<std::size_t>(1, b.max_objects), std::max<std::size_t>(1, b.max_morphisms / 2)};
  return product(random_loop_free_category(rng, half), monoid);
}

namespace {

// Random functions on a greedy generating set, extended by composition.
// Returns nullopt when two composites disagree.
std::optional<FinSetDiagram> free_assignment(Rng& rng, const CategoryPtr& cp, std::size_t max_size) {
  const FinCategory& c = *cp;
  FinSetDiagram d;
  d.base = cp;
  for (Obj x = 0; x < c.object_count(); ++x) d.sizes.push_back(static_cast<std::size_t>(rng.range(1, static_cast<int>(max_size))));
  std::vector<std::optional<std::vector<std::size_t>>> act(c.morphism_count());
  for (Obj x = 0; x < c.object_count(); ++x) {
    std::vector<std::size_t> id(d.sizes[x]);
    std::iota(id.begin(), id.end(), std::size_t{0});
    act[c.identity(x)] = std::move(id);
  }
  for (Mor m = 0; m < c.morphism_count(); ++m) {
    if (act[m]) continue;
    std::vector<std::size_t> table(d.sizes[c.src(m)]);
    for (auto& v : table) v = rng.below(d.sizes[c.tgt(m)]);
    act[m] = std::move(table);
    for (bool changed = true; changed;) {
      changed = false;
      for (Mor g = 0; g < c.morphism_count(); ++g)
        for (Mor f = 0; f < c.morphism_count(); ++f) {
          if (!act[g] || !act[f] || !c.composable(g, f)) continue;
          std::vector<std::size_t> comp;
          for (std::size_t v : *act[f]) comp.push_back((*act[g])[v]);
          auto& slot = act[c.compose(g, f)];
          if (!slot) {
            slot = std::move(comp);
            changed = true;
          } else if (*slot != comp) {
            return std::nullopt;
          }
        }
    }
  }
  for (auto& a : act) d.action.push_back(std::move(*a));
  return validate_diagram(std::move(d));
}

}  // namespace

FinSetDiagram random_finset_diagram(Rng& rng, const CategoryPtr& cp, std::size_t max_size) {
  if (rng.chance(2, 3)) {
    for (int attempt = 0; attempt < 20; ++attempt)
      if (auto d = free_assignment(rng, cp, max_size)) return *std::move(d);
  }
  const FinCategory& c = *cp;
  const std::size_t n = c.object_count();
  // Element = (summand, morphism from the summand's object); the point
  // summand uses npos as its morphism.
  std::vector<Obj> summands;
  const std::size_t reps = rng.below(3);
  for (std::size_t i = 0; i < reps; ++i) summands.push_back(rng.below(n));
  const bool point = reps == 0 || rng.chance(1, 3);
  std::vector<std::vector<std::pair<std::size_t, Mor>>> elems(n);
  for (Obj y = 0; y < n; ++y) {
    for (std::size_t s = 0; s < summands.size(); ++s)
      for (Mor m : c.hom(summands[s], y)) elems[y].push_back({s, m});
    if (point) elems[y].push_back({summands.size(), npos});
  }
  std::vector<std::size_t> offset(n + 1, 0);
  for (Obj y = 0; y < n; ++y) offset[y + 1] = offset[y] + elems[y].size();
  std::vector<std::vector<std::size_t>> raw(c.morphism_count());
  for (Mor g = 0; g < c.morphism_count(); ++g) {
    const Obj x = c.src(g), y = c.tgt(g);
    for (const auto& [s, m] : elems[x]) {
      const std::pair<std::size_t, Mor> img{s, m == npos ? npos : c.compose(g, m)};
      raw[g].push_back(static_cast<std::size_t>(std::find(elems[y].begin(), elems[y].end(), img) - elems[y].begin()));
    }
  }
  std::vector<std::size_t> parent(offset[n]);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  auto close = [&] {
    bool changed = true;
    while (changed) {
      changed = false;
      for (Mor g = 0; g < c.morphism_count(); ++g) {
        const Obj x = c.src(g), y = c.tgt(g);
        for (std::size_t i = 0; i < elems[x].size(); ++i)
          for (std::size_t j = i + 1; j < elems[x].size(); ++j) {
            if (find(offset[x] + i) != find(offset[x] + j)) continue;
            const std::size_t a = find(offset[y] + raw[g][i]), b = find(offset[y] + raw[g][j]);
            if (a != b) {
              parent[std::max(a, b)] = std::min(a, b);
              changed = true;
            }
          }
      }
    }
  };
  auto classes_at = [&](Obj y) {
    std::vector<std::size_t> roots;
    for (std::size_t i = 0; i < elems[y].size(); ++i) {
      const std::size_t r = find(offset[y] + i);
      if (std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
    }
    return roots;
  };
  auto merge_at = [&](Obj y) {
    auto roots = classes_at(y);
    if (roots.size() < 2) return;
    const std::size_t i = rng.below(roots.size());
    std::size_t j = rng.below(roots.size() - 1);
    if (j >= i) ++j;
    parent[std::max(roots[i], roots[j])] = std::min(roots[i], roots[j]);
    close();
  };
  const std::size_t extra = rng.below(3);
  for (std::size_t k = 0; k < extra; ++k) merge_at(rng.below(n));
  for (Obj y = 0; y < n; ++y)
    while (classes_at(y).size() > max_size) merge_at(y);

  FinSetDiagram d;
  d.base = cp;
  std::vector<std::map<std::size_t, std::size_t>> number(n);
  for (Obj y = 0; y < n; ++y) {
    for (std::size_t r : classes_at(y)) number[y].emplace(r, number[y].size());
    d.sizes.push_back(number[y].size());
  }
  for (Mor g = 0; g < c.morphism_count(); ++g) {
    const Obj x = c.src(g), y = c.tgt(g);
    std::vector<std::size_t> table(d.sizes[x]);
    for (std::size_t i = 0; i < elems[x].size(); ++i) {
      table[number[x].at(find(offset[x] + i))] = number[y].at(find(offset[y] + raw[g][i]));
    }
    d.action.push_back(std::move(table));
  }
  return validate_diagram(std::move(d));
}

ChainComplex random_complex_in(Rng& rng, int lo, int width, std::size_t max_dim) {
  std::vector<std::size_t> dims;
  for (int i = 0; i < width; ++i) dims.push_back(rng.below(max_dim + 1));
  std::vector<RationalMatrix> diffs;
  RationalMatrix below;  // d_{k-1}, cols = dims[k-1]
  for (int i = 1; i < width; ++i) {
    const std::size_t rows = dims[static_cast<std::size_t>(i - 1)], cols = dims[static_cast<std::size_t>(i)];
    // Columns of d_k must lie in ker d_{k-1}.
    RationalMatrix basis = i == 1 ? RationalMatrix::identity(rows) : kernel_matrix(rank_kernel(below), rows);
    RationalMatrix coeffs(basis.cols(), cols);
    for (std::size_t r = 0; r < coeffs.rows(); ++r)
      for (std::size_t c = 0; c < cols; ++c) coeffs(r, c) = small_entry(rng);
    RationalMatrix d = basis.cols() ? basis * coeffs : RationalMatrix(rows, cols);
    diffs.push_back(d);
    below = d;
  }
  return ChainComplex(lo, std::move(dims), std::move(diffs));
}

ChainComplex random_complex(Rng& rng, const ComplexBounds& b) {
  return random_complex_in(rng, rng.range(b.min_lo, b.max_lo), rng.range(1, b.max_width), b.max_dim);
}

ChainMap random_chain_map(Rng& rng, const ChainComplex& a, const ChainComplex& b) {
  if (a.is_zero() || b.is_zero()) return ChainMap::zero(a, b);
  const int lo = std::min(a.lo(), b.lo()), hi = std::max(a.hi(), b.hi());
  std::map<int, std::size_t> offset;
  std::size_t vars = 0;
  for (int k = lo; k <= hi; ++k) {
    offset[k] = vars;
    vars += a.dim(k) * b.dim(k);
  }
  // d_B f_k - f_{k-1} d_A = 0 entrywise, for maps A_k -> B_{k-1}.
  std::vector<std::vector<std::pair<std::size_t, Rational>>> rows;
  for (int k = lo; k <= hi + 1; ++k) {
    const std::size_t ak = a.dim(k), bk1 = b.dim(k - 1);
    if (!ak || !bk1) continue;
    for (std::size_t i = 0; i < bk1; ++i)
      for (std::size_t j = 0; j < ak; ++j) {
        std::vector<std::pair<std::size_t, Rational>> row;
        for (std::size_t l = 0; l < b.dim(k); ++l) {
          const Rational& coef = b.d(k)(i, l);
          if (sgn(coef)) row.push_back({offset[k] + l * ak + j, coef});
        }
        for (std::size_t l = 0; l < a.dim(k - 1); ++l) {
          const Rational& coef = a.d(k)(l, j);
          if (sgn(coef)) row.push_back({offset[k - 1] + i * a.dim(k - 1) + l, -coef});
        }
        if (!row.empty()) rows.push_back(std::move(row));
      }
  }
  RationalMatrix sys(rows.size(), vars);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (const auto& [c, v] : rows[r]) sys(r, c) += v;
  RankKernel rk = rank_kernel(sys);
  RationalVector x(vars);
  for (const auto& basis : rk.kernel_basis) {
    const Rational coef = small_entry(rng);
    if (!sgn(coef)) continue;
    for (std::size_t i = 0; i < vars; ++i) x[i] += coef * basis[i];
  }
  std::map<int, RationalMatrix> comps;
  for (int k = lo; k <= hi; ++k) {
    RationalMatrix m(b.dim(k), a.dim(k));
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = x[offset[k] + r * a.dim(k) + c];
    comps[k] = std::move(m);
  }
  return ChainMap(a, b, std::move(comps));
}

ChainDiagram random_chain_diagram(Rng& rng, const CategoryPtr& cp, const ComplexBounds& b) {
  const FinCategory& c = *cp;
  const int lo = rng.range(b.min_lo, b.max_lo);
  const int width = rng.range(1, b.max_width);
  const int hi = lo + width - 1;
  std::vector<ChainComplex> values(c.object_count());
  std::vector<ChainMap> actions(c.morphism_count());
  std::vector<bool> done(c.object_count(), false);
  for (Obj y : degree_order(c)) {
    std::vector<Mor> in;
    for (Mor m : c.into(y))
      if (!c.is_identity(m)) in.push_back(m);
    std::vector<ChainComplex> parts;
    for (Mor m : in) parts.push_back(values[c.src(m)]);
    DirectSum latch = direct_sum(parts);
    std::map<Mor, std::size_t> slot;
    for (std::size_t i = 0; i < in.size(); ++i) slot[in[i]] = i;
    const ChainComplex& l = latch.complex;
    ChainComplex v = random_complex_in(rng, lo, width, b.max_dim);

    // Relations ι_{m∘g}(e) = ι_m(F(g) e), plus random extra generators.
    std::map<int, std::vector<RationalVector>> gens;
    for (Mor m : in)
      for (Mor g : c.into(c.src(m))) {
        if (c.is_identity(g)) continue;
        const Mor mg = c.compose(m, g);
        const ChainComplex& src = values[c.src(g)];
        for (int k = lo; k <= hi; ++k) {
          if (!l.dim(k)) continue;
          const RationalMatrix& fg = actions[g].component(k);
          for (std::size_t e = 0; e < src.dim(k); ++e) {
            RationalVector vec(l.dim(k));
            vec[latch.offsets.at(k)[slot.at(mg)] + e] += 1;
            for (std::size_t r = 0; r < fg.rows(); ++r) vec[latch.offsets.at(k)[slot.at(m)] + r] -= fg(r, e);
            gens[k].push_back(std::move(vec));
          }
        }
      }
    auto add_random = [&](int k) {
      RationalVector vec(l.dim(k));
      for (auto& x : vec) x = small_entry(rng);
      if (l.dim(k - 1) && !l.d(k).empty()) gens[k - 1].push_back(l.d(k).apply(vec));
      gens[k].push_back(std::move(vec));
    };
    for (int k = lo; k <= hi; ++k)
      if (l.dim(k) && rng.chance(1, 3)) add_random(k);
    std::map<int, QuotientBasis> quo;
    for (;;) {
      bool fits = true;
      for (int k = lo; k <= hi; ++k) {
        quo[k] = quotient_basis(l.dim(k), gens[k]);
        if (quo[k].representatives.size() + v.dim(k) > b.max_dim) {
          fits = false;
          add_random(k);
          break;
        }
      }
      if (fits) break;
    }
    // The quotient complex and the value Q ⊕ V.
    std::vector<std::size_t> dims;
    std::vector<RationalMatrix> diffs;
    for (int k = lo; k <= hi; ++k) dims.push_back(quo[k].representatives.size() + v.dim(k));
    for (int k = lo + 1; k <= hi; ++k) {
      const std::size_t qk = quo[k].representatives.size(), qk1 = quo[k - 1].representatives.size();
      RationalMatrix dq(qk1, qk);
      if (qk && qk1) {
        RationalMatrix reps = RationalMatrix::from_columns(l.dim(k), quo[k].representatives);
        dq = quo[k - 1].projection * l.d(k) * reps;
      }
      RationalMatrix full(dims[static_cast<std::size_t>(k - lo - 1)], dims[static_cast<std::size_t>(k - lo)]);
      if (qk && qk1) full.set_block(0, 0, dq);
      if (v.dim(k) && v.dim(k - 1)) full.set_block(qk1, qk, v.d(k));
      diffs.push_back(std::move(full));
    }
    values[y] = ChainComplex(lo, std::move(dims), std::move(diffs));
    done[y] = true;
    actions[c.identity(y)] = ChainMap::identity(values[y]);
    for (Mor m : in) {
      const ChainComplex& src = values[c.src(m)];
      std::map<int, RationalMatrix> comps;
      for (int k = lo; k <= hi; ++k) {
        RationalMatrix mk(values[y].dim(k), src.dim(k));
        const std::size_t qk = quo[k].representatives.size();
        if (qk && src.dim(k)) {
          mk.set_block(0, 0, quo[k].projection.block(0, latch.offsets.at(k)[slot.at(m)], qk, src.dim(k)));
        }
        comps[k] = std::move(mk);
      }
      actions[m] = ChainMap(src, values[y], std::move(comps));
    }
  }
  ChainDiagram d{cp, std::move(values), std::move(actions)};
  return validate_diagram(std::move(d));
}

FunctorData random_functor(Rng& rng, const CategoryPtr& target, const CategoryBounds& b) {
  const FinCategory& t = *target;
  for (int attempt = 0;; ++attempt) {
    const std::size_t n = static_cast<std::size_t>(rng.range(1, static_cast<int>(b.max_objects)));
    std::vector<Obj> omap;
    for (std::size_t i = 0; i < n; ++i) omap.push_back(rng.below(t.object_count()));
    Presentation p;
    std::vector<Mor> images;
    for (std::size_t i = 0; i < n; ++i) p.objects.push_back("s" + std::to_string(i));
    const std::size_t density = attempt < 8 ? 5 : 2;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const auto& h = t.hom(omap[i], omap[j]);
        if (h.empty() || !rng.chance(density, 10)) continue;
        p.arrows.push_back({"a" + std::to_string(p.arrows.size()), p.objects[i], p.objects[j]});
        images.push_back(h[rng.below(h.size())]);
      }
    CategoryPtr s = compile_presentation(p);
    if (s->morphism_count() > b.max_morphisms) continue;
    FunctorData f;
    f.source = s;
    f.target = target;
    f.object_map = omap;
    for (Mor m = 0; m < s->morphism_count(); ++m) {
      if (s->is_identity(m)) {
        f.morphism_map.push_back(t.identity(omap[s->src(m)]));
        continue;
      }
      std::optional<Mor> acc;
      PathNames names = split_label(s->morphism_label(m));
      for (auto it = names.rbegin(); it != names.rend(); ++it) {
        const Mor g = images[static_cast<std::size_t>(std::stoul(it->substr(1)))];
        acc = acc ? t.compose(g, *acc) : g;
      }
      f.morphism_map.push_back(*acc);
    }
    return validate_functor(std::move(f));
  }
}

CategoryPtr adjoin_initial(const CategoryPtr& cp) {
  const FinCategory& c = *cp;
  const std::size_t n = c.object_count(), m = c.morphism_count();
  CategoryData d;
  d.objects.push_back("bot");
  for (Obj x = 0; x < n; ++x) d.objects.push_back(c.object_label(x));
  // 0: id_bot; 1..m: c's morphisms shifted; m+1..m+n: u_x.
  d.morphisms.push_back({0, 0, "id_bot"});
  for (Mor f = 0; f < m; ++f) d.morphisms.push_back({c.src(f) + 1, c.tgt(f) + 1, c.morphism_label(f)});
  for (Obj x = 0; x < n; ++x) d.morphisms.push_back({0, x + 1, "u_" + c.object_label(x)});
  d.identities.push_back(0);
  for (Obj x = 0; x < n; ++x) d.identities.push_back(c.identity(x) + 1);
  const std::size_t total = d.morphisms.size();
  d.composition.assign(total * total, npos);
  auto set = [&](Mor g, Mor f, Mor r) { d.composition[g * total + f] = r; };
  set(0, 0, 0);
  for (Obj x = 0; x < n; ++x) set(m + 1 + x, 0, m + 1 + x);
  for (Mor g = 0; g < m; ++g) {
    for (Mor f = 0; f < m; ++f)
      if (c.composable(g, f)) set(g + 1, f + 1, c.compose(g, f) + 1);
    set(g + 1, m + 1 + c.src(g), m + 1 + c.tgt(g));
  }
  return FinCategory::validate(std::move(d));
}

ChainComplex cone_of_identity(const ChainComplex& x) {
  if (x.is_zero()) return ChainComplex();
  const int lo = x.lo(), hi = x.hi() + 1;
  std::vector<std::size_t> dims;
  for (int k = lo; k <= hi; ++k) dims.push_back(x.dim(k - 1) + x.dim(k));
  std::vector<RationalMatrix> diffs;
  for (int k = lo + 1; k <= hi; ++k) {
    // (a, b) ∈ X_{k-1} ⊕ X_k  ->  (-da, a + db) ∈ X_{k-2} ⊕ X_{k-1}
    const std::size_t a = x.dim(k - 1), bk = x.dim(k), a2 = x.dim(k - 2);
    RationalMatrix m(a2 + a, a + bk);
    if (a2 && a) m.set_block(0, 0, -x.d(k - 1));
    if (a) m.set_block(a2, 0, RationalMatrix::identity(a));
    if (a && bk) m.set_block(a2, a, x.d(k));
    diffs.push_back(std::move(m));
  }
  return ChainComplex(lo, std::move(dims), std::move(diffs));
}

ChainMap cone_of_identity_map(const ChainMap& f) {
  const ChainComplex s = cone_of_identity(f.source()), t = cone_of_identity(f.target());
  std::map<int, RationalMatrix> comps;
  const int lo = std::min(s.lo(), t.lo()), hi = std::max(s.hi(), t.hi());
  for (int k = lo; k <= hi; ++k) {
    RationalMatrix m(t.dim(k), s.dim(k));
    const std::size_t sa = f.source().dim(k - 1), ta = f.target().dim(k - 1);
    if (sa && ta) m.set_block(0, 0, f.component(k - 1));
    if (f.source().dim(k) && f.target().dim(k)) m.set_block(ta, sa, f.component(k));
    comps[k] = std::move(m);
  }
  return ChainMap(s, t, std::move(comps));
}

ChainNatTrans cone_fattening(Rng& rng, const ChainDiagram& f) {
  const FinCategory& c = *f.base;
  static const int kScalars[] = {1, -1, 2, 3};
  const Rational s = kScalars[rng.below(4)];
  const Rational t = small_entry(rng);
  const bool forward = rng.chance(1, 2);
  ChainDiagram g;
  g.base = f.base;
  std::vector<DirectSum> sums;
  for (Obj x = 0; x < c.object_count(); ++x) {
    std::vector<ChainComplex> parts{f.values[x], cone_of_identity(f.values[x])};
    sums.push_back(direct_sum(parts));
    g.values.push_back(sums.back().complex);
  }
  for (Mor m = 0; m < c.morphism_count(); ++m) {
    std::vector<ChainMap> parts{f.actions[m], cone_of_identity_map(f.actions[m])};
    g.actions.push_back(direct_sum_map(sums[c.src(m)], sums[c.tgt(m)], parts));
  }
  g = validate_diagram(std::move(g));
  ChainNatTrans alpha;
  alpha.source = forward ? f : g;
  alpha.target = forward ? g : f;
  for (Obj x = 0; x < c.object_count(); ++x) {
    const ChainComplex& v = f.values[x];
    const DirectSum& sum = sums[x];
    std::map<int, RationalMatrix> comps;
    const int lo = sum.complex.lo(), hi = sum.complex.hi();
    for (int k = lo; k <= hi; ++k) {
      const std::size_t n = v.dim(k), big = sum.complex.dim(k);
      RationalMatrix inc(big, n);
      if (n) {
        const std::size_t cone_off = sum.offsets.at(k)[1] + v.dim(k - 1);
        for (std::size_t i = 0; i < n; ++i) {
          inc(sum.offsets.at(k)[0] + i, i) = s;
          inc(cone_off + i, i) = t;
        }
      }
      if (forward) {
        comps[k] = std::move(inc);
      } else {
        RationalMatrix proj(n, big);
        for (std::size_t i = 0; i < n; ++i) proj(i, sum.offsets.at(k)[0] + i) = s;
        comps[k] = std::move(proj);
      }
    }
    alpha.components.push_back(forward ? ChainMap(v, sum.complex, std::move(comps))
                                       : ChainMap(sum.complex, v, std::move(comps)));
  }
  return validate_nat_trans(std::move(alpha));
}

}  // namespace hle
