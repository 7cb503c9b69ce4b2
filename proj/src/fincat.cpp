#include "hle/fincat.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <sstream>
#include <tuple>

#include "hle/errors.hpp"

namespace hle {

namespace {

std::string mor_name(const CategoryData& d, Mor f) {
  if (f >= d.morphisms.size()) return "#" + std::to_string(f);
  const Arrow& a = d.morphisms[f];
  return a.label + ": " + d.objects[a.src] + " -> " + d.objects[a.tgt];
}

void check_tables(const CategoryData& d) {
  const std::size_t n = d.objects.size();
  const std::size_t m = d.morphisms.size();
  if (d.identities.size() != n) throw ShapeMismatch("identity table must list one morphism per object");
  if (d.composition.size() != m * m) throw ShapeMismatch("composition table must be |Mor| x |Mor|");
  for (Mor f = 0; f < m; ++f) {
    if (d.morphisms[f].src >= n || d.morphisms[f].tgt >= n) {
      throw ShapeMismatch("morphism " + d.morphisms[f].label + " has an unknown endpoint");
    }
  }
  for (Obj x = 0; x < n; ++x) {
    Mor i = d.identities[x];
    if (i >= m || d.morphisms[i].src != x || d.morphisms[i].tgt != x) {
      throw IdentityViolation("identity of object " + d.objects[x] + " is not an endomorphism of it");
    }
  }
  for (Mor g = 0; g < m; ++g) {
    for (Mor f = 0; f < m; ++f) {
      const Mor h = d.composition[g * m + f];
      const bool composable = d.morphisms[f].tgt == d.morphisms[g].src;
      if (!composable) {
        if (h != npos) {
          throw CompositionDomainError("composite " + mor_name(d, g) + " o " + mor_name(d, f) +
                                       " is defined although the pair is not composable");
        }
        continue;
      }
      if (h == npos || h >= m) {
        throw CompositionDomainError("composite " + mor_name(d, g) + " o " + mor_name(d, f) + " is missing");
      }
      if (d.morphisms[h].src != d.morphisms[f].src || d.morphisms[h].tgt != d.morphisms[g].tgt) {
        throw CompositionDomainError("composite " + mor_name(d, g) + " o " + mor_name(d, f) + " = " +
                                     mor_name(d, h) + " has the wrong source or target");
      }
    }
  }
  for (Mor f = 0; f < m; ++f) {
    const Arrow& a = d.morphisms[f];
    if (d.composition[d.identities[a.tgt] * m + f] != f || d.composition[f * m + d.identities[a.src]] != f) {
      throw IdentityViolation("identity law fails for " + mor_name(d, f));
    }
  }
  for (Mor f = 0; f < m; ++f) {
    for (Mor g = 0; g < m; ++g) {
      const Mor gf = d.composition[g * m + f];
      if (gf == npos) continue;
      for (Mor h = 0; h < m; ++h) {
        const Mor hg = d.composition[h * m + g];
        if (hg == npos) continue;
        if (d.composition[h * m + gf] != d.composition[hg * m + f]) {
          throw AssociativityViolation("associativity fails for h = " + mor_name(d, h) + ", g = " +
                                       mor_name(d, g) + ", f = " + mor_name(d, f));
        }
      }
    }
  }
}

}  // namespace

FinCategory::FinCategory(CategoryData data) : data_(std::move(data)) {
  const std::size_t n = data_.objects.size();
  const std::size_t m = data_.morphisms.size();
  identity_flag_.assign(m, false);
  for (Mor i : data_.identities) identity_flag_[i] = true;
  hom_.assign(n * n, {});
  into_.assign(n, {});
  out_of_.assign(n, {});
  for (Mor f = 0; f < m; ++f) {
    const Arrow& a = data_.morphisms[f];
    hom_[a.src * n + a.tgt].push_back(f);
    into_[a.tgt].push_back(f);
    out_of_[a.src].push_back(f);
  }
}

CategoryPtr FinCategory::validate(CategoryData raw) {
  check_tables(raw);
  return CategoryPtr(new FinCategory(std::move(raw)));
}

std::optional<Obj> FinCategory::find_object(std::string_view label) const {
  for (Obj x = 0; x < object_count(); ++x)
    if (data_.objects[x] == label) return x;
  return std::nullopt;
}

std::optional<Mor> FinCategory::find_morphism(std::string_view label) const {
  for (Mor f = 0; f < morphism_count(); ++f)
    if (data_.morphisms[f].label == label) return f;
  return std::nullopt;
}

bool FinCategory::same_tables(const FinCategory& other) const {
  return data_.objects == other.data_.objects && data_.morphisms == other.data_.morphisms &&
         data_.identities == other.data_.identities && data_.composition == other.data_.composition;
}

bool same_category(const CategoryPtr& a, const CategoryPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->same_tables(*b);
}

CategoryPtr opposite(const CategoryPtr& c) {
  CategoryData d;
  d.objects = c->data().objects;
  d.identities = c->data().identities;
  const std::size_t m = c->morphism_count();
  d.morphisms.reserve(m);
  for (Mor f = 0; f < m; ++f) d.morphisms.push_back({c->tgt(f), c->src(f), c->morphism_label(f)});
  d.composition.assign(m * m, npos);
  for (Mor g = 0; g < m; ++g)
    for (Mor f = 0; f < m; ++f) d.composition[g * m + f] = c->compose(f, g);
  return FinCategory::validate(std::move(d));
}

CategoryPtr product(const CategoryPtr& c, const CategoryPtr& e) {
  CategoryData d;
  const std::size_t n2 = e->object_count();
  const std::size_t m1 = c->morphism_count();
  const std::size_t m2 = e->morphism_count();
  for (Obj x = 0; x < c->object_count(); ++x)
    for (Obj y = 0; y < n2; ++y) d.objects.push_back("(" + c->object_label(x) + "," + e->object_label(y) + ")");
  for (Mor f = 0; f < m1; ++f)
    for (Mor g = 0; g < m2; ++g)
      d.morphisms.push_back({c->src(f) * n2 + e->src(g), c->tgt(f) * n2 + e->tgt(g),
                             "(" + c->morphism_label(f) + "," + e->morphism_label(g) + ")"});
  for (Obj x = 0; x < c->object_count(); ++x)
    for (Obj y = 0; y < n2; ++y) d.identities.push_back(c->identity(x) * m2 + e->identity(y));
  const std::size_t m = m1 * m2;
  d.composition.assign(m * m, npos);
  for (Mor g1 = 0; g1 < m1; ++g1)
    for (Mor f1 = 0; f1 < m1; ++f1) {
      const Mor h1 = c->compose(g1, f1);
      if (h1 == npos) continue;
      for (Mor g2 = 0; g2 < m2; ++g2)
        for (Mor f2 = 0; f2 < m2; ++f2) {
          const Mor h2 = e->compose(g2, f2);
          if (h2 == npos) continue;
          d.composition[(g1 * m2 + g2) * m + (f1 * m2 + f2)] = h1 * m2 + h2;
        }
    }
  check_tables(d);
  auto* cat = new FinCategory(std::move(d));
  cat->factors_ = ProductFactors{c, e};
  return CategoryPtr(cat);
}

CategoryPtr discrete_category(std::size_t n) {
  CategoryData d;
  for (std::size_t i = 0; i < n; ++i) {
    d.objects.push_back(n == 1 ? "*" : std::string(1, static_cast<char>('a' + i % 26)) +
                                           (i >= 26 ? std::to_string(i / 26) : ""));
  }
  for (std::size_t i = 0; i < n; ++i) {
    d.morphisms.push_back({i, i, "id_" + d.objects[i]});
    d.identities.push_back(i);
  }
  d.composition.assign(n * n, npos);
  for (std::size_t i = 0; i < n; ++i) d.composition[i * n + i] = i;
  return FinCategory::validate(std::move(d));
}

CategoryPtr terminal_category() { return discrete_category(1); }

CategoryPtr chain_poset(std::size_t n) {
  CategoryData d;
  for (std::size_t i = 0; i <= n; ++i) d.objects.push_back(std::to_string(i));
  std::map<std::pair<std::size_t, std::size_t>, Mor> id_of;
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = i; j <= n; ++j) {
      id_of[{i, j}] = d.morphisms.size();
      d.morphisms.push_back({i, j, i == j ? "id_" + d.objects[i] : d.objects[i] + "<" + d.objects[j]});
    }
  for (std::size_t i = 0; i <= n; ++i) d.identities.push_back(id_of[{i, i}]);
  const std::size_t m = d.morphisms.size();
  d.composition.assign(m * m, npos);
  for (Mor f = 0; f < m; ++f)
    for (Mor g = 0; g < m; ++g)
      if (d.morphisms[f].tgt == d.morphisms[g].src)
        d.composition[g * m + f] = id_of[{d.morphisms[f].src, d.morphisms[g].tgt}];
  return FinCategory::validate(std::move(d));
}

CategoryPtr arrow_category() {
  CategoryData d;
  d.objects = {"a", "b"};
  d.morphisms = {{0, 0, "id_a"}, {1, 1, "id_b"}, {0, 1, "f"}};
  d.identities = {0, 1};
  d.composition.assign(9, npos);
  auto set = [&](Mor g, Mor f, Mor h) { d.composition[g * 3 + f] = h; };
  set(0, 0, 0);
  set(1, 1, 1);
  set(2, 0, 2);
  set(1, 2, 2);
  return FinCategory::validate(std::move(d));
}

CategoryPtr cospan_category() {
  CategoryData d;
  d.objects = {"a", "b", "c"};
  d.morphisms = {{0, 0, "id_a"}, {1, 1, "id_b"}, {2, 2, "id_c"}, {0, 2, "p"}, {1, 2, "q"}};
  d.identities = {0, 1, 2};
  d.composition.assign(25, npos);
  auto set = [&](Mor g, Mor f, Mor h) { d.composition[g * 5 + f] = h; };
  for (Mor i = 0; i < 3; ++i) set(i, i, i);
  set(3, 0, 3);
  set(2, 3, 3);
  set(4, 1, 4);
  set(2, 4, 4);
  return FinCategory::validate(std::move(d));
}

FunctorData validate_functor(FunctorData f) {
  const FinCategory& s = *f.source;
  const FinCategory& t = *f.target;
  if (f.object_map.size() != s.object_count() || f.morphism_map.size() != s.morphism_count()) {
    throw ShapeMismatch("functor tables do not match the size of its source category");
  }
  for (Obj x : f.object_map)
    if (x >= t.object_count()) throw ShapeMismatch("functor sends an object outside its target");
  for (Mor m : f.morphism_map)
    if (m >= t.morphism_count()) throw ShapeMismatch("functor sends a morphism outside its target");
  for (Obj x = 0; x < s.object_count(); ++x) {
    if (f.morphism_map[s.identity(x)] != t.identity(f.object_map[x])) {
      throw FunctorialityViolation("functor does not preserve the identity of " + s.object_label(x));
    }
  }
  for (Mor m = 0; m < s.morphism_count(); ++m) {
    const Mor fm = f.morphism_map[m];
    if (t.src(fm) != f.object_map[s.src(m)] || t.tgt(fm) != f.object_map[s.tgt(m)]) {
      throw FunctorialityViolation("functor does not preserve the endpoints of " + s.morphism_label(m));
    }
  }
  for (Mor g = 0; g < s.morphism_count(); ++g)
    for (Mor h = 0; h < s.morphism_count(); ++h) {
      const Mor gh = s.compose(g, h);
      if (gh == npos) continue;
      if (f.morphism_map[gh] != t.compose(f.morphism_map[g], f.morphism_map[h])) {
        throw FunctorialityViolation("functor does not preserve the composite " + s.morphism_label(g) + " o " +
                                     s.morphism_label(h));
      }
    }
  return f;
}

FunctorData identity_functor(const CategoryPtr& c) {
  FunctorData f{c, c, {}, {}};
  for (Obj x = 0; x < c->object_count(); ++x) f.object_map.push_back(x);
  for (Mor m = 0; m < c->morphism_count(); ++m) f.morphism_map.push_back(m);
  return f;
}

FunctorData object_inclusion(const CategoryPtr& c, Obj x) {
  if (x >= c->object_count()) throw UnknownObject("object index " + std::to_string(x) + " out of range");
  return FunctorData{terminal_category(), c, {x}, {c->identity(x)}};
}

FunctorData functor_to_terminal(const CategoryPtr& c) {
  FunctorData f{c, terminal_category(), std::vector<Obj>(c->object_count(), 0),
                std::vector<Mor>(c->morphism_count(), 0)};
  return f;
}

FunctorData compose_functors(const FunctorData& g, const FunctorData& f) {
  if (!same_category(f.target, g.source)) throw ShapeMismatch("functors are not composable");
  FunctorData h{f.source, g.target, {}, {}};
  for (Obj x : f.object_map) h.object_map.push_back(g.object_map[x]);
  for (Mor m : f.morphism_map) h.morphism_map.push_back(g.morphism_map[m]);
  return h;
}

Obj CommaCategory::find(Obj base, Mor arrow_id) const {
  for (Obj i = 0; i < base_object.size(); ++i)
    if (base_object[i] == base && arrow[i] == arrow_id) return i;
  return npos;
}

namespace {

// Shared builder: `objects` are (base object, arrow) pairs; `connects(i, j, m)`
// decides whether the base morphism m is a comma morphism from i to j.
template <class Connects, class Label>
CommaCategory build_comma(const CategoryPtr& base, std::vector<std::pair<Obj, Mor>> objects, Connects connects,
                          Label object_label) {
  CommaCategory out;
  CategoryData d;
  for (auto& [x, a] : objects) {
    out.base_object.push_back(x);
    out.arrow.push_back(a);
    d.objects.push_back(object_label(x, a));
  }
  const std::size_t n = objects.size();
  std::map<std::tuple<Obj, Obj, Mor>, Mor> index;
  std::vector<Mor> base_morphism;
  for (Obj i = 0; i < n; ++i)
    for (Obj j = 0; j < n; ++j)
      for (Mor m : base->hom(objects[i].first, objects[j].first)) {
        if (!connects(i, j, m)) continue;
        index[{i, j, m}] = d.morphisms.size();
        d.morphisms.push_back({i, j, base->morphism_label(m)});
        base_morphism.push_back(m);
      }
  for (Obj i = 0; i < n; ++i) d.identities.push_back(index.at({i, i, base->identity(objects[i].first)}));
  const std::size_t m = d.morphisms.size();
  d.composition.assign(m * m, npos);
  for (Mor g = 0; g < m; ++g)
    for (Mor f = 0; f < m; ++f) {
      if (d.morphisms[f].tgt != d.morphisms[g].src) continue;
      const Mor h = base->compose(base_morphism[g], base_morphism[f]);
      d.composition[g * m + f] = index.at({d.morphisms[f].src, d.morphisms[g].tgt, h});
    }
  out.category = FinCategory::validate(std::move(d));
  out.projection = FunctorData{out.category, base, out.base_object, base_morphism};
  return out;
}

}  // namespace

CommaCategory comma_over(const CategoryPtr& c, Obj g) {
  if (g >= c->object_count()) throw UnknownObject("comma_over: unknown object index " + std::to_string(g));
  std::vector<std::pair<Obj, Mor>> objects;
  for (Obj x = 0; x < c->object_count(); ++x)
    for (Mor a : c->hom(x, g)) objects.emplace_back(x, a);
  auto connects = [&](Obj i, Obj j, Mor m) {
    return c->compose(objects[j].second, m) == objects[i].second;
  };
  auto label = [&](Obj, Mor a) { return c->morphism_label(a); };
  return build_comma(c, objects, connects, label);
}

CommaCategory comma_under_functor(const FunctorData& f, Obj target_object) {
  const FinCategory& t = *f.target;
  if (target_object >= t.object_count()) {
    throw UnknownObject("comma_under_functor: unknown object index " + std::to_string(target_object));
  }
  std::vector<std::pair<Obj, Mor>> objects;
  for (Obj x = 0; x < f.source->object_count(); ++x)
    for (Mor a : t.hom(f.object_map[x], target_object)) objects.emplace_back(x, a);
  auto connects = [&](Obj i, Obj j, Mor m) {
    return t.compose(objects[j].second, f.morphism_map[m]) == objects[i].second;
  };
  auto label = [&](Obj x, Mor a) {
    return "(" + f.source->object_label(x) + "," + t.morphism_label(a) + ")";
  };
  return build_comma(f.source, objects, connects, label);
}

CommaCategory comma_from_object(const FunctorData& f, Obj target_object) {
  const FinCategory& t = *f.target;
  if (target_object >= t.object_count()) {
    throw UnknownObject("comma_from_object: unknown object index " + std::to_string(target_object));
  }
  std::vector<std::pair<Obj, Mor>> objects;
  for (Obj x = 0; x < f.source->object_count(); ++x)
    for (Mor b : t.hom(target_object, f.object_map[x])) objects.emplace_back(x, b);
  auto connects = [&](Obj i, Obj j, Mor m) {
    return t.compose(f.morphism_map[m], objects[i].second) == objects[j].second;
  };
  auto label = [&](Obj x, Mor b) {
    return "(" + f.source->object_label(x) + "," + t.morphism_label(b) + ")";
  };
  return build_comma(f.source, objects, connects, label);
}

std::optional<DegreeFunction> is_direct(const FinCategory& c) {
  const std::size_t n = c.object_count();
  std::vector<std::vector<Obj>> succ(n);
  std::vector<std::size_t> indeg(n, 0);
  for (Mor f = 0; f < c.morphism_count(); ++f) {
    if (c.is_identity(f)) continue;
    if (c.src(f) == c.tgt(f)) return std::nullopt;
    succ[c.src(f)].push_back(c.tgt(f));
    ++indeg[c.tgt(f)];
  }
  DegreeFunction deg;
  deg.degree.assign(n, 0);
  std::queue<Obj> ready;
  for (Obj x = 0; x < n; ++x)
    if (indeg[x] == 0) ready.push(x);
  std::size_t seen = 0;
  while (!ready.empty()) {
    Obj x = ready.front();
    ready.pop();
    ++seen;
    for (Obj y : succ[x]) {
      deg.degree[y] = std::max(deg.degree[y], deg.degree[x] + 1);
      if (--indeg[y] == 0) ready.push(y);
    }
  }
  if (seen != n) return std::nullopt;
  return deg;
}

std::vector<Obj> degree_order(const FinCategory& c) {
  auto deg = is_direct(c);
  if (!deg) throw NotLoopFree("category has a non-identity endomorphism or a cycle of non-identities");
  std::vector<Obj> order(c.object_count());
  for (Obj x = 0; x < order.size(); ++x) order[x] = x;
  std::stable_sort(order.begin(), order.end(),
                   [&](Obj a, Obj b) { return deg->degree[a] < deg->degree[b]; });
  return order;
}

FunctorData full_subcategory(const CategoryPtr& c, const std::vector<Obj>& objects) {
  std::vector<Obj> local(c->object_count(), npos);
  CategoryData d;
  for (Obj i = 0; i < objects.size(); ++i) {
    if (objects[i] >= c->object_count()) throw UnknownObject("full_subcategory: unknown object");
    local[objects[i]] = i;
    d.objects.push_back(c->object_label(objects[i]));
  }
  std::vector<Mor> local_mor(c->morphism_count(), npos);
  std::vector<Mor> base;
  for (Mor f = 0; f < c->morphism_count(); ++f) {
    if (local[c->src(f)] == npos || local[c->tgt(f)] == npos) continue;
    local_mor[f] = base.size();
    base.push_back(f);
    d.morphisms.push_back({local[c->src(f)], local[c->tgt(f)], c->morphism_label(f)});
  }
  for (Obj x : objects) d.identities.push_back(local_mor[c->identity(x)]);
  const std::size_t m = base.size();
  d.composition.assign(m * m, npos);
  for (Mor g = 0; g < m; ++g)
    for (Mor f = 0; f < m; ++f) {
      const Mor h = c->compose(base[g], base[f]);
      if (h != npos) d.composition[g * m + f] = local_mor[h];
    }
  auto sub = FinCategory::validate(std::move(d));
  return FunctorData{sub, c, objects, base};
}

}  // namespace hle
