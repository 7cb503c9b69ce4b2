#include "hle/endkan.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "hle/errors.hpp"

namespace hle {

namespace {

struct Constraint {
  std::size_t a = 0;
  std::size_t b = 0;
  std::function<bool(std::size_t, std::size_t)> ok;
};

// Tuples t with t[i] < sizes[i] satisfying every constraint, in lexicographic
// order; a constraint is checked as soon as both of its slots are filled.
std::vector<std::vector<std::size_t>> constrained_tuples(const std::vector<std::size_t>& sizes,
                                                         const std::vector<Constraint>& constraints) {
  const std::size_t n = sizes.size();
  std::vector<std::vector<const Constraint*>> by_slot(n);
  for (const auto& c : constraints) by_slot[std::max(c.a, c.b)].push_back(&c);
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> t(n, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == n) {
      out.push_back(t);
      return;
    }
    for (std::size_t v = 0; v < sizes[i]; ++v) {
      t[i] = v;
      bool good = true;
      for (const Constraint* c : by_slot[i]) {
        if (!c->ok(t[c->a], t[c->b])) {
          good = false;
          break;
        }
      }
      if (good) rec(i + 1);
    }
  };
  rec(0);
  return out;
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

// Numbers union-find classes by first appearance over the blocks in order.
FinSetColimit number_classes(UnionFind& uf, const std::vector<std::size_t>& sizes) {
  FinSetColimit out;
  std::map<std::size_t, std::size_t> class_of_root;
  std::size_t offset = 0;
  for (Obj x = 0; x < sizes.size(); ++x) {
    std::vector<std::size_t> inj;
    for (std::size_t e = 0; e < sizes[x]; ++e) {
      const std::size_t r = uf.find(offset + e);
      auto [it, fresh] = class_of_root.try_emplace(r, out.size);
      if (fresh) {
        out.representative.emplace_back(x, e);
        ++out.size;
      }
      inj.push_back(it->second);
    }
    out.injection.push_back(std::move(inj));
    offset += sizes[x];
  }
  return out;
}

std::size_t checked_power(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && r > (std::size_t{1} << 24) / base) throw ShapeMismatch("function set too large to enumerate");
    r *= base;
  }
  return r;
}

}  // namespace

std::vector<std::size_t> decode_function(std::size_t code, std::size_t domain, std::size_t codomain) {
  std::vector<std::size_t> v(domain);
  for (std::size_t i = 0; i < domain; ++i) {
    v[i] = code % codomain;
    code /= codomain;
  }
  return v;
}

std::size_t encode_function(const std::vector<std::size_t>& values, std::size_t codomain) {
  std::size_t code = 0;
  for (std::size_t i = values.size(); i-- > 0;) code = code * codomain + values[i];
  return code;
}

FinSetLimit finset_limit(const FinSetDiagram& d) {
  const FinCategory& c = *d.base;
  std::vector<Constraint> cons;
  for (Mor f = 0; f < c.morphism_count(); ++f) {
    if (c.is_identity(f)) continue;
    const auto* table = &d.action[f];
    cons.push_back({c.src(f), c.tgt(f), [table](std::size_t x, std::size_t y) { return (*table)[x] == y; }});
  }
  return {constrained_tuples(d.sizes, cons)};
}

FinSetColimit finset_colimit(const FinSetDiagram& d) {
  const FinCategory& c = *d.base;
  std::vector<std::size_t> offset(c.object_count() + 1, 0);
  for (Obj x = 0; x < c.object_count(); ++x) offset[x + 1] = offset[x] + d.sizes[x];
  UnionFind uf(offset.back());
  for (Mor f = 0; f < c.morphism_count(); ++f)
    for (std::size_t e = 0; e < d.sizes[c.src(f)]; ++e) uf.unite(offset[c.src(f)] + e, offset[c.tgt(f)] + d.action[f][e]);
  return number_classes(uf, d.sizes);
}

CategoryPtr bifunctor_base(const FinSetDiagram& h) {
  const auto& fac = h.base->factors();
  if (!fac) throw ShapeMismatch("bifunctor must live on a product category");
  if (!same_category(opposite(fac->right), fac->left)) {
    throw ShapeMismatch("bifunctor base must be product(opposite(C), C)");
  }
  return fac->right;
}

namespace {

struct BifunctorIndex {
  CategoryPtr gamma;
  CategoryPtr left;
  const FinCategory* p = nullptr;
  Obj obj(Obj a, Obj b) const { return product_object(*gamma, a, b); }
  Mor mor(Mor u, Mor v) const { return product_morphism(*gamma, u, v); }
};

BifunctorIndex index_of(const FinSetDiagram& h) {
  BifunctorIndex ix;
  ix.gamma = bifunctor_base(h);
  ix.left = h.base->factors()->left;
  ix.p = h.base.get();
  return ix;
}

}  // namespace

FinSetLimit end_finset(const FinSetDiagram& h) {
  BifunctorIndex ix = index_of(h);
  const FinCategory& g = *ix.gamma;
  std::vector<std::size_t> sizes;
  for (Obj x = 0; x < g.object_count(); ++x) sizes.push_back(h.sizes[ix.obj(x, x)]);
  std::vector<Constraint> cons;
  for (Mor f = 0; f < g.morphism_count(); ++f) {
    if (g.is_identity(f)) continue;
    const Obj s = g.src(f), t = g.tgt(f);
    const auto* push = &h.action[ix.mor(ix.left->identity(s), f)];  // H(s,s) -> H(s,t)
    const auto* pull = &h.action[ix.mor(f, g.identity(t))];        // H(t,t) -> H(s,t)
    if (s == t) {
      cons.push_back({s, s, [push, pull](std::size_t x, std::size_t) { return (*push)[x] == (*pull)[x]; }});
    } else {
      cons.push_back({s, t, [push, pull](std::size_t x, std::size_t y) { return (*push)[x] == (*pull)[y]; }});
    }
  }
  return {constrained_tuples(sizes, cons)};
}

FinSetColimit coend_finset(const FinSetDiagram& h) {
  BifunctorIndex ix = index_of(h);
  const FinCategory& g = *ix.gamma;
  std::vector<std::size_t> sizes, offset{0};
  for (Obj x = 0; x < g.object_count(); ++x) {
    sizes.push_back(h.sizes[ix.obj(x, x)]);
    offset.push_back(offset.back() + sizes.back());
  }
  UnionFind uf(offset.back());
  for (Mor f = 0; f < g.morphism_count(); ++f) {
    if (g.is_identity(f)) continue;
    const Obj s = g.src(f), t = g.tgt(f);
    const auto& to_ss = h.action[ix.mor(f, g.identity(s))];             // H(t,s) -> H(s,s)
    const auto& to_tt = h.action[ix.mor(ix.left->identity(t), f)];      // H(t,s) -> H(t,t)
    for (std::size_t y = 0; y < h.sizes[ix.obj(t, s)]; ++y) uf.unite(offset[s] + to_ss[y], offset[t] + to_tt[y]);
  }
  return number_classes(uf, sizes);
}

namespace {

// Assembles a bifunctor over product(opposite(Γ), Γ) from object sizes and a
// rule giving the function table of each product morphism.
template <class Size, class Act>
FinSetDiagram build_bifunctor(const CategoryPtr& gamma, Size size, Act act) {
  auto op = opposite(gamma);
  auto p = product(op, gamma);
  FinSetDiagram h;
  h.base = p;
  for (Obj a = 0; a < gamma->object_count(); ++a)
    for (Obj b = 0; b < gamma->object_count(); ++b) h.sizes.push_back(size(a, b));
  for (Mor u = 0; u < op->morphism_count(); ++u)
    for (Mor v = 0; v < gamma->morphism_count(); ++v) h.action.push_back(act(u, v));
  return validate_diagram(std::move(h));
}

}  // namespace

FinSetDiagram hom_bifunctor(const FinSetDiagram& f, const FinSetDiagram& g) {
  if (!same_category(f.base, g.base)) throw ShapeMismatch("hom_bifunctor needs diagrams on one base");
  const CategoryPtr& c = f.base;
  auto size = [&](Obj a, Obj b) { return checked_power(g.sizes[b], f.sizes[a]); };
  auto act = [&](Mor u, Mor v) {
    // u: a' -> a in Γ (a -> a' in Γop), v: b -> b'.
    const Obj a = c->tgt(u), a2 = c->src(u), b = c->src(v), b2 = c->tgt(v);
    std::vector<std::size_t> table;
    const std::size_t n = size(a, b);
    for (std::size_t code = 0; code < n; ++code) {
      auto phi = decode_function(code, f.sizes[a], g.sizes[b]);
      std::vector<std::size_t> out(f.sizes[a2]);
      for (std::size_t i = 0; i < out.size(); ++i) out[i] = g.action[v][phi[f.action[u][i]]];
      table.push_back(encode_function(out, g.sizes[b2]));
    }
    return table;
  };
  return build_bifunctor(c, size, act);
}

FinSetDiagram category_hom(const CategoryPtr& gamma) {
  const FinCategory& c = *gamma;
  auto pos = [&](Obj a, Obj b, Mor m) {
    const auto& h = c.hom(a, b);
    return static_cast<std::size_t>(std::find(h.begin(), h.end(), m) - h.begin());
  };
  auto size = [&](Obj a, Obj b) { return c.hom(a, b).size(); };
  auto act = [&](Mor u, Mor v) {
    const Obj a = c.tgt(u), b = c.src(v);
    std::vector<std::size_t> table;
    for (Mor m : c.hom(a, b)) table.push_back(pos(c.src(u), c.tgt(v), c.compose(v, c.compose(m, u))));
    return table;
  };
  return build_bifunctor(gamma, size, act);
}

FinSetDiagram constant_first(const FinSetDiagram& f) {
  const CategoryPtr& c = f.base;
  return build_bifunctor(
      c, [&](Obj, Obj b) { return f.sizes[b]; }, [&](Mor, Mor v) { return f.action[v]; });
}

FinSetDiagram constant_second(const FinSetDiagram& f_on_opposite, const CategoryPtr& gamma) {
  return build_bifunctor(
      gamma, [&](Obj a, Obj) { return f_on_opposite.sizes[a]; }, [&](Mor u, Mor) { return f_on_opposite.action[u]; });
}

std::vector<std::vector<std::size_t>> nat_trans_bruteforce(const FinSetDiagram& f, const FinSetDiagram& g) {
  if (!same_category(f.base, g.base)) throw ShapeMismatch("nat_trans_bruteforce needs diagrams on one base");
  const FinCategory& c = *f.base;
  const std::size_t n = c.object_count();
  std::vector<std::vector<std::vector<std::size_t>>> candidates(n);
  for (Obj x = 0; x < n; ++x) {
    const std::size_t count = checked_power(g.sizes[x], f.sizes[x]);
    for (std::size_t code = 0; code < count; ++code)
      candidates[x].push_back(decode_function(code, f.sizes[x], g.sizes[x]));
  }
  std::vector<std::vector<std::size_t>> out;
  for (Obj x = 0; x < n; ++x)
    if (candidates[x].empty()) return out;
  std::vector<std::size_t> pick(n, 0);
  while (true) {
    bool natural = true;
    for (Mor m = 0; m < c.morphism_count() && natural; ++m) {
      const Obj a = c.src(m), b = c.tgt(m);
      const auto& pa = candidates[a][pick[a]];
      const auto& pb = candidates[b][pick[b]];
      for (std::size_t e = 0; e < f.sizes[a]; ++e) {
        if (g.action[m][pa[e]] != pb[f.action[m][e]]) {
          natural = false;
          break;
        }
      }
    }
    if (natural) out.push_back(pick);
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (++pick[i] < candidates[i].size()) break;
      pick[i] = 0;
      if (i == 0) return out;
    }
    if (n == 0) return out;
  }
}

namespace {

std::string arrow_text(const FinCategory& c, Mor m) { return c.morphism_label(m); }

}  // namespace

KanExtension lan(const FunctorData& f, const FinSetDiagram& d) {
  if (!same_category(f.source, d.base)) throw ShapeMismatch("lan: diagram must live on the functor's source");
  const FinCategory& t = *f.target;
  std::vector<CommaCategory> commas;
  std::vector<FinSetColimit> colims;
  for (Obj y = 0; y < t.object_count(); ++y) {
    commas.push_back(comma_under_functor(f, y));
    colims.push_back(finset_colimit(restrict(commas.back().projection, d)));
  }
  KanExtension out;
  FinSetDiagram& r = out.diagram;
  r.base = f.target;
  for (Obj y = 0; y < t.object_count(); ++y) {
    r.sizes.push_back(colims[y].size);
    std::vector<std::string> labels;
    std::vector<std::vector<std::size_t>> desc;
    for (const auto& [o, x] : colims[y].representative) {
      const Obj gamma = commas[y].base_object[o];
      const Mor alpha = commas[y].arrow[o];
      desc.push_back({gamma, alpha, x});
      labels.push_back("(" + arrow_text(t, alpha) + "," + element_label(d, gamma, x) + ")");
    }
    r.labels.push_back(std::move(labels));
    out.description.push_back(std::move(desc));
  }
  for (Mor g = 0; g < t.morphism_count(); ++g) {
    const Obj y = t.src(g), y2 = t.tgt(g);
    std::vector<std::size_t> table;
    for (const auto& dsc : out.description[y]) {
      const Obj o2 = commas[y2].find(dsc[0], t.compose(g, dsc[1]));
      table.push_back(colims[y2].injection[o2][dsc[2]]);
    }
    r.action.push_back(std::move(table));
  }
  out.diagram = validate_diagram(std::move(r));
  return out;
}

KanExtension ran(const FunctorData& f, const FinSetDiagram& d) {
  if (!same_category(f.source, d.base)) throw ShapeMismatch("ran: diagram must live on the functor's source");
  const FinCategory& t = *f.target;
  std::vector<CommaCategory> commas;
  std::vector<FinSetLimit> lims;
  std::vector<std::map<std::vector<std::size_t>, std::size_t>> index;
  for (Obj y = 0; y < t.object_count(); ++y) {
    commas.push_back(comma_from_object(f, y));
    lims.push_back(finset_limit(restrict(commas.back().projection, d)));
    std::map<std::vector<std::size_t>, std::size_t> idx;
    for (std::size_t i = 0; i < lims.back().elements.size(); ++i) idx[lims.back().elements[i]] = i;
    index.push_back(std::move(idx));
  }
  KanExtension out;
  FinSetDiagram& r = out.diagram;
  r.base = f.target;
  for (Obj y = 0; y < t.object_count(); ++y) {
    r.sizes.push_back(lims[y].size());
    std::vector<std::string> labels;
    for (const auto& e : lims[y].elements) {
      std::string s = "<";
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (i) s += ",";
        s += element_label(d, commas[y].base_object[i], e[i]);
      }
      labels.push_back(s + ">");
    }
    r.labels.push_back(std::move(labels));
    out.description.push_back(lims[y].elements);
  }
  for (Mor g = 0; g < t.morphism_count(); ++g) {
    const Obj y = t.src(g), y2 = t.tgt(g);
    std::vector<std::size_t> table;
    for (const auto& e : lims[y].elements) {
      std::vector<std::size_t> img;
      for (Obj o2 = 0; o2 < commas[y2].base_object.size(); ++o2) {
        const Obj o = commas[y].find(commas[y2].base_object[o2], t.compose(commas[y2].arrow[o2], g));
        img.push_back(e[o]);
      }
      table.push_back(index[y2].at(img));
    }
    r.action.push_back(std::move(table));
  }
  out.diagram = validate_diagram(std::move(r));
  return out;
}

namespace {

// Checks that per-object maps `bij` from `a` to `b` are bijections commuting
// with the actions.
bool natural_bijection(const FinSetDiagram& a, const FinSetDiagram& b, const std::vector<std::vector<std::size_t>>& bij,
                       std::string& reason) {
  const FinCategory& c = *a.base;
  for (Obj x = 0; x < c.object_count(); ++x) {
    if (a.sizes[x] != b.sizes[x]) {
      reason = "sizes differ at " + c.object_label(x);
      return false;
    }
    std::vector<bool> hit(b.sizes[x], false);
    for (auto y : bij[x]) {
      if (y >= b.sizes[x] || hit[y]) {
        reason = "canonical map is not bijective at " + c.object_label(x);
        return false;
      }
      hit[y] = true;
    }
  }
  for (Mor m = 0; m < c.morphism_count(); ++m)
    for (std::size_t e = 0; e < a.sizes[c.src(m)]; ++e)
      if (bij[c.tgt(m)][a.action[m][e]] != b.action[m][bij[c.src(m)][e]]) {
        reason = "canonical bijection is not natural along " + c.morphism_label(m);
        return false;
      }
  return true;
}

}  // namespace

KanComparison lan_via_coend(const FunctorData& f, const FinSetDiagram& d) {
  const FinCategory& s = *f.source;
  const FinCategory& t = *f.target;
  KanExtension direct = lan(f, d);
  KanComparison out;
  FinSetDiagram& r = out.via_formula;
  r.base = f.target;
  std::vector<FinSetColimit> coends;
  for (Obj y = 0; y < t.object_count(); ++y) {
    // K(a, b) = Hom(fa, y) × F(b), coded as position(α) * |F b| + x.
    auto size = [&](Obj a, Obj b) { return t.hom(f.object_map[a], y).size() * d.sizes[b]; };
    auto act = [&](Mor u, Mor v) {
      const Obj a = s.tgt(u), a2 = s.src(u), b = s.src(v), b2 = s.tgt(v);
      const auto& homs = t.hom(f.object_map[a], y);
      const auto& homs2 = t.hom(f.object_map[a2], y);
      std::vector<std::size_t> table;
      for (std::size_t p = 0; p < homs.size(); ++p) {
        const Mor alpha2 = t.compose(homs[p], f.morphism_map[u]);
        const auto p2 = static_cast<std::size_t>(std::find(homs2.begin(), homs2.end(), alpha2) - homs2.begin());
        for (std::size_t x = 0; x < d.sizes[b]; ++x) table.push_back(p2 * d.sizes[b2] + d.action[v][x]);
      }
      return table;
    };
    coends.push_back(coend_finset(build_bifunctor(f.source, size, act)));
    r.sizes.push_back(coends.back().size);
  }
  auto class_of = [&](Obj y, Obj gamma, Mor alpha, std::size_t x) {
    const auto& homs = t.hom(f.object_map[gamma], y);
    const auto p = static_cast<std::size_t>(std::find(homs.begin(), homs.end(), alpha) - homs.begin());
    return coends[y].injection[gamma][p * d.sizes[gamma] + x];
  };
  for (Mor g = 0; g < t.morphism_count(); ++g) {
    const Obj y = t.src(g), y2 = t.tgt(g);
    std::vector<std::size_t> table;
    for (const auto& [gamma, code] : coends[y].representative) {
      const auto& homs = t.hom(f.object_map[gamma], y);
      const std::size_t p = code / d.sizes[gamma], x = code % d.sizes[gamma];
      table.push_back(class_of(y2, gamma, t.compose(g, homs[p]), x));
    }
    r.action.push_back(std::move(table));
  }
  r = validate_diagram(std::move(r));
  std::vector<std::vector<std::size_t>> bij(t.object_count());
  for (Obj y = 0; y < t.object_count(); ++y)
    for (const auto& dsc : direct.description[y]) bij[y].push_back(class_of(y, dsc[0], dsc[1], dsc[2]));
  out.agree = natural_bijection(direct.diagram, r, bij, out.reason);
  return out;
}

namespace {

// K(a, b) = G(b)^{S(a)} over product(opposite(Γ), Γ) where S(a) is a list of
// morphisms of some category and `transport(u, β)` carries β ∈ S(a′) to S(a)
// along u: a′ -> a.
template <class Transport>
FinSetDiagram exponential_bifunctor(const CategoryPtr& gamma, const std::vector<std::vector<Mor>>& s,
                                    const FinSetDiagram& g, Transport transport) {
  const FinCategory& c = *gamma;
  auto size = [&](Obj a, Obj b) { return checked_power(g.sizes[b], s[a].size()); };
  auto act = [&](Mor u, Mor v) {
    const Obj a = c.tgt(u), a2 = c.src(u), b = c.src(v), b2 = c.tgt(v);
    std::vector<std::size_t> moved;
    for (Mor beta : s[a2]) {
      const Mor m = transport(u, beta);
      moved.push_back(static_cast<std::size_t>(std::find(s[a].begin(), s[a].end(), m) - s[a].begin()));
    }
    std::vector<std::size_t> table;
    const std::size_t n = size(a, b);
    for (std::size_t code = 0; code < n; ++code) {
      auto phi = decode_function(code, s[a].size(), g.sizes[b]);
      std::vector<std::size_t> out(s[a2].size());
      for (std::size_t i = 0; i < out.size(); ++i) out[i] = g.action[v][phi[moved[i]]];
      table.push_back(encode_function(out, g.sizes[b2]));
    }
    return table;
  };
  return build_bifunctor(gamma, size, act);
}

}  // namespace

KanComparison ran_via_end(const FunctorData& f, const FinSetDiagram& d) {
  const FinCategory& src = *f.source;
  const FinCategory& t = *f.target;
  KanExtension direct = ran(f, d);
  KanComparison out;
  FinSetDiagram& r = out.via_formula;
  r.base = f.target;
  std::vector<std::vector<std::vector<Mor>>> exps(t.object_count());
  std::vector<FinSetLimit> ends;
  std::vector<std::map<std::vector<std::size_t>, std::size_t>> index(t.object_count());
  for (Obj y = 0; y < t.object_count(); ++y) {
    for (Obj a = 0; a < src.object_count(); ++a) exps[y].push_back(t.hom(y, f.object_map[a]));
    auto k = exponential_bifunctor(f.source, exps[y], d,
                                   [&](Mor u, Mor beta) { return t.compose(f.morphism_map[u], beta); });
    ends.push_back(end_finset(k));
    for (std::size_t i = 0; i < ends.back().elements.size(); ++i) index[y][ends.back().elements[i]] = i;
    r.sizes.push_back(ends.back().size());
  }
  for (Mor g = 0; g < t.morphism_count(); ++g) {
    const Obj y = t.src(g), y2 = t.tgt(g);
    std::vector<std::size_t> table;
    for (const auto& e : ends[y].elements) {
      std::vector<std::size_t> img;
      for (Obj a = 0; a < src.object_count(); ++a) {
        auto phi = decode_function(e[a], exps[y][a].size(), d.sizes[a]);
        std::vector<std::size_t> moved;
        for (Mor beta2 : exps[y2][a]) {
          const Mor beta = t.compose(beta2, g);
          const auto p = static_cast<std::size_t>(std::find(exps[y][a].begin(), exps[y][a].end(), beta) -
                                                  exps[y][a].begin());
          moved.push_back(phi[p]);
        }
        img.push_back(encode_function(moved, d.sizes[a]));
      }
      table.push_back(index[y2].at(img));
    }
    r.action.push_back(std::move(table));
  }
  r = validate_diagram(std::move(r));
  std::vector<std::vector<std::size_t>> bij(t.object_count());
  CommaCategory comma;
  for (Obj y = 0; y < t.object_count(); ++y) {
    comma = comma_from_object(f, y);
    for (const auto& e : direct.description[y]) {
      std::vector<std::size_t> codes;
      for (Obj a = 0; a < src.object_count(); ++a) {
        std::vector<std::size_t> phi;
        for (Mor beta : exps[y][a]) phi.push_back(e[comma.find(a, beta)]);
        codes.push_back(encode_function(phi, d.sizes[a]));
      }
      auto it = index[y].find(codes);
      bij[y].push_back(it == index[y].end() ? npos : it->second);
    }
  }
  out.agree = natural_bijection(direct.diagram, r, bij, out.reason);
  return out;
}

CoYonedaReport co_yoneda_check(const FinSetDiagram& g, const FunctorData& f, Obj gamma) {
  if (!same_category(f.target, g.base)) throw ShapeMismatch("co_yoneda_check: diagram must live on the functor's target");
  const FinCategory& t = *f.target;
  const Obj fg = f.object_map.at(gamma);
  std::vector<std::vector<Mor>> s;
  for (Obj a = 0; a < t.object_count(); ++a) s.push_back(t.hom(fg, a));
  auto k = exponential_bifunctor(g.base, s, g, [&](Mor u, Mor beta) { return t.compose(u, beta); });
  FinSetLimit e = end_finset(k);
  CoYonedaReport r;
  r.end_size = e.size();
  r.value_size = g.sizes[fg];
  const auto& homs = s[fg];
  const auto id_pos =
      static_cast<std::size_t>(std::find(homs.begin(), homs.end(), t.identity(fg)) - homs.begin());
  std::vector<bool> hit(r.value_size, false);
  bool injective = true;
  for (const auto& el : e.elements) {
    const auto v = decode_function(el[fg], homs.size(), g.sizes[fg])[id_pos];
    if (hit[v]) injective = false;
    hit[v] = true;
  }
  r.pass = injective && r.end_size == r.value_size;
  return r;
}

ChainBifunctor bifunctor_from_diagram(const ChainDiagram& h) {
  const auto& fac = h.base->factors();
  if (!fac || !same_category(opposite(fac->right), fac->left)) {
    throw ShapeMismatch("bifunctor must live on product(opposite(C), C)");
  }
  ChainBifunctor b;
  b.base = fac->right;
  const CategoryPtr gamma = fac->right;
  const CategoryPtr left = fac->left;
  auto diag = std::make_shared<ChainDiagram>(h);
  b.value = [diag, gamma](Obj a, Obj c) { return diag->values[product_object(*gamma, a, c)]; };
  b.contra = [diag, gamma](Mor f, Obj c) {
    return diag->actions[product_morphism(*gamma, f, gamma->identity(c))];
  };
  b.co = [diag, gamma, left](Obj a, Mor g) { return diag->actions[product_morphism(*gamma, left->identity(a), g)]; };
  return b;
}

ChainBifunctor hom_bifunctor(const ChainDiagram& a, const ChainDiagram& b) {
  if (!same_category(a.base, b.base)) throw ShapeMismatch("hom_bifunctor needs diagrams on one base");
  auto pa = std::make_shared<ChainDiagram>(a);
  auto pb = std::make_shared<ChainDiagram>(b);
  ChainBifunctor h;
  h.base = a.base;
  h.value = [pa, pb](Obj x, Obj y) { return hom_complex(pa->values[x], pb->values[y]); };
  h.contra = [pa, pb](Mor f, Obj y) { return hom_map(pa->actions[f], ChainMap::identity(pb->values[y])); };
  h.co = [pa, pb](Obj x, Mor g) { return hom_map(ChainMap::identity(pa->values[x]), pb->actions[g]); };
  return h;
}

ChainMap ChainEnd::projection(Obj gamma) const {
  std::map<int, RationalMatrix> comps;
  const ChainComplex& target = diagonal[gamma];
  for (int k = complex.lo(); k <= complex.hi(); ++k) {
    if (complex.dim(k) == 0 || target.dim(k) == 0) continue;
    comps[k] = inclusion.component(k).block(ambient.offsets.at(k)[gamma], 0, target.dim(k), complex.dim(k));
  }
  return ChainMap(complex, target, std::move(comps));
}

namespace {

std::vector<Mor> wedge_arrows(const FinCategory& g) {
  std::vector<Mor> arrows;
  const bool loop_free = is_loop_free(g);
  std::vector<bool> decomposable(g.morphism_count(), false);
  if (loop_free) {
    for (Mor a = 0; a < g.morphism_count(); ++a) {
      if (g.is_identity(a)) continue;
      for (Mor b : g.out_of(g.tgt(a)))
        if (!g.is_identity(b)) decomposable[g.compose(b, a)] = true;
    }
  }
  for (Mor f = 0; f < g.morphism_count(); ++f)
    if (!g.is_identity(f) && !decomposable[f]) arrows.push_back(f);
  return arrows;
}

// Block matrix of a map D -> E from a list of (row summand, column summand, map).
struct BlockEntry {
  std::size_t row;
  std::size_t col;
  ChainMap map;
};

ChainMap assemble_blocks(const DirectSum& d, const DirectSum& e, const std::vector<BlockEntry>& blocks) {
  std::map<int, RationalMatrix> comps;
  const ChainComplex& s = d.complex;
  const ChainComplex& t = e.complex;
  for (int k = s.lo(); k <= s.hi(); ++k) {
    if (s.dim(k) == 0 || t.dim(k) == 0) continue;
    RationalMatrix m(t.dim(k), s.dim(k));
    for (const auto& b : blocks) {
      const auto& c = b.map.component(k);
      if (c.empty()) continue;
      const RationalMatrix cur = m.block(e.offsets.at(k)[b.row], d.offsets.at(k)[b.col], c.rows(), c.cols());
      m.set_block(e.offsets.at(k)[b.row], d.offsets.at(k)[b.col], cur + c);
    }
    comps[k] = std::move(m);
  }
  return ChainMap(s, t, std::move(comps));
}

}  // namespace

ChainEnd end_chain(const ChainBifunctor& h) {
  const FinCategory& g = *h.base;
  ChainEnd out;
  for (Obj x = 0; x < g.object_count(); ++x) out.diagonal.push_back(h.value(x, x));
  out.ambient = direct_sum(out.diagonal);
  auto arrows = wedge_arrows(g);
  std::vector<ChainComplex> off;
  std::vector<BlockEntry> push, pull;
  for (std::size_t i = 0; i < arrows.size(); ++i) {
    const Mor f = arrows[i];
    const Obj s = g.src(f), t = g.tgt(f);
    off.push_back(h.value(s, t));
    push.push_back({i, s, h.co(s, f)});
    pull.push_back({i, t, h.contra(f, t)});
  }
  DirectSum e = direct_sum(off);
  ChainMap leg1 = assemble_blocks(out.ambient, e, push);
  ChainMap leg2 = assemble_blocks(out.ambient, e, pull);
  out.equalizer = equalizer_kernel(leg1, leg2);
  out.complex = out.equalizer.complex;
  out.inclusion = out.equalizer.inclusion;
  return out;
}

ChainMap induced_end_map(const ChainEnd& source, const ChainEnd& target, const std::vector<ChainMap>& components) {
  ChainMap beta = direct_sum_map(source.ambient, target.ambient, components);
  ChainMap image = compose(beta, source.inclusion);
  std::map<int, RationalMatrix> comps;
  for (int k = source.complex.lo(); k <= source.complex.hi(); ++k) {
    if (source.complex.dim(k) == 0) continue;
    if (target.complex.dim(k) == 0) {
      if (!image.component(k).is_zero()) throw NotNatural("induced map leaves the target end");
      continue;
    }
    comps[k] = equalizer_coordinates(target.equalizer, k, image.component(k));
  }
  return ChainMap(source.complex, target.complex, std::move(comps));
}

ChainComplex canonical_subcomplex(const ChainComplex& ambient, const std::map<int, RationalMatrix>& inclusion) {
  std::map<int, RationalMatrix> basis;
  std::optional<int> lo, hi;
  for (const auto& [k, m] : inclusion) {
    RationalMatrix b = m.empty() ? RationalMatrix(ambient.dim(k), 0) : column_space_basis(m);
    if (b.cols() == 0) continue;
    lo = lo ? std::min(*lo, k) : k;
    hi = hi ? std::max(*hi, k) : k;
    basis[k] = std::move(b);
  }
  if (!lo) return ChainComplex();
  std::vector<std::size_t> dims;
  std::vector<RationalMatrix> diffs;
  auto dim_of = [&](int k) { return basis.count(k) ? basis.at(k).cols() : std::size_t{0}; };
  for (int k = *lo; k <= *hi; ++k) dims.push_back(dim_of(k));
  for (int k = *lo + 1; k <= *hi; ++k) {
    if (dim_of(k) == 0 || dim_of(k - 1) == 0) {
      diffs.emplace_back(dim_of(k - 1), dim_of(k));
      continue;
    }
    auto x = solve_matrix(basis.at(k - 1), ambient.d(k) * basis.at(k));
    if (!x) throw ShapeMismatch("subspace is not closed under the differential");
    diffs.push_back(std::move(*x));
  }
  return ChainComplex(*lo, std::move(dims), std::move(diffs));
}

namespace {

// Iterated end of a bifunctor on L × R, inner over `inner`, embedded into the
// joint ambient ⊕_{(l, r)} H((l,r),(l,r)).
std::map<int, RationalMatrix> iterated_embedding(const ChainBifunctor& h, bool inner_is_right, const ChainEnd& joint) {
  const CategoryPtr l = h.base->factors()->left;
  const CategoryPtr r = h.base->factors()->right;
  const CategoryPtr outer_cat = inner_is_right ? l : r;
  const CategoryPtr inner_cat = inner_is_right ? r : l;
  const FinCategory& rr = *r;
  auto pobj = [&](Obj o, Obj i) { return inner_is_right ? product_object(rr, o, i) : product_object(rr, i, o); };
  auto pmor = [&](Mor o, Mor i) { return inner_is_right ? product_morphism(rr, o, i) : product_morphism(rr, i, o); };

  std::map<std::pair<Obj, Obj>, std::shared_ptr<ChainEnd>> cache;
  auto inner_end = [&](Obj a, Obj b) -> const ChainEnd& {
    auto& slot = cache[{a, b}];
    if (!slot) {
      ChainBifunctor in;
      in.base = inner_cat;
      in.value = [&, a, b](Obj d1, Obj d2) { return h.value(pobj(a, d1), pobj(b, d2)); };
      in.contra = [&, a, b](Mor e, Obj d2) { return h.contra(pmor(outer_cat->identity(a), e), pobj(b, d2)); };
      in.co = [&, a, b](Obj d1, Mor e) { return h.co(pobj(a, d1), pmor(outer_cat->identity(b), e)); };
      slot = std::make_shared<ChainEnd>(end_chain(in));
    }
    return *slot;
  };
  ChainBifunctor outer;
  outer.base = outer_cat;
  outer.value = [&](Obj a, Obj b) { return inner_end(a, b).complex; };
  outer.contra = [&](Mor u, Obj b) {
    std::vector<ChainMap> comps;
    for (Obj d = 0; d < inner_cat->object_count(); ++d)
      comps.push_back(h.contra(pmor(u, inner_cat->identity(d)), pobj(b, d)));
    return induced_end_map(inner_end(outer_cat->tgt(u), b), inner_end(outer_cat->src(u), b), comps);
  };
  outer.co = [&](Obj a, Mor v) {
    std::vector<ChainMap> comps;
    for (Obj d = 0; d < inner_cat->object_count(); ++d) comps.push_back(h.co(pobj(a, d), pmor(v, inner_cat->identity(d))));
    return induced_end_map(inner_end(a, outer_cat->src(v)), inner_end(a, outer_cat->tgt(v)), comps);
  };
  ChainEnd e = end_chain(outer);
  std::map<int, RationalMatrix> emb;
  const ChainComplex& amb = joint.ambient.complex;
  for (int k = e.complex.lo(); k <= e.complex.hi(); ++k) {
    const std::size_t n = e.complex.dim(k);
    if (n == 0) continue;
    RationalMatrix m(amb.dim(k), n);
    for (Obj a = 0; a < outer_cat->object_count(); ++a) {
      const ChainEnd& in = inner_end(a, a);
      if (in.complex.dim(k) == 0) continue;
      // Coordinates of the outer end inside K(a, a), then K(a, a) inside ⊕_d H.
      RationalMatrix outer_block = e.inclusion.component(k).block(e.ambient.offsets.at(k)[a], 0, in.complex.dim(k), n);
      RationalMatrix in_amb = in.inclusion.component(k) * outer_block;
      for (Obj d = 0; d < inner_cat->object_count(); ++d) {
        const std::size_t rows = in.diagonal[d].dim(k);
        if (rows == 0) continue;
        RationalMatrix piece = in_amb.block(in.ambient.offsets.at(k)[d], 0, rows, n);
        m.set_block(joint.ambient.offsets.at(k)[pobj(a, d)], 0, piece);
      }
    }
    emb[k] = std::move(m);
  }
  return emb;
}

std::map<int, RationalMatrix> inclusion_components(const ChainEnd& e) {
  std::map<int, RationalMatrix> out;
  for (int k = e.complex.lo(); k <= e.complex.hi(); ++k)
    if (e.complex.dim(k) != 0) out[k] = e.inclusion.component(k);
  return out;
}

}  // namespace

FubiniReport fubini_check(const ChainBifunctor& h) {
  if (!h.base->factors()) throw ShapeMismatch("fubini_check needs a bifunctor on a product category");
  ChainEnd joint = end_chain(h);
  const ChainComplex& amb = joint.ambient.complex;
  ChainComplex a = canonical_subcomplex(amb, inclusion_components(joint));
  ChainComplex b = canonical_subcomplex(amb, iterated_embedding(h, true, joint));
  ChainComplex c = canonical_subcomplex(amb, iterated_embedding(h, false, joint));
  FubiniReport r;
  r.joint_dims = describe_dims(a);
  r.first_then_second_dims = describe_dims(b);
  r.second_then_first_dims = describe_dims(c);
  r.pass = a == b && b == c;
  return r;
}

}  // namespace hle
