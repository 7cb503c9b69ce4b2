#include "hle/presentation.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "hle/errors.hpp"

namespace hle {

namespace {

constexpr std::size_t kPathLimit = 200000;

std::string dotted(const PathNames& names) {
  std::string s;
  for (std::size_t i = 0; i < names.size(); ++i) s += (i ? "." : "") + names[i];
  return s;
}

struct Graph {
  std::map<std::string, Obj> object_index;
  std::map<std::string, std::size_t> generator_index;
  std::vector<Obj> src, tgt;
};

Graph build_graph(const Presentation& p) {
  Graph g;
  for (Obj i = 0; i < p.objects.size(); ++i) {
    if (!g.object_index.emplace(p.objects[i], i).second) throw PresentationError("object " + p.objects[i] + " declared twice");
  }
  for (std::size_t i = 0; i < p.arrows.size(); ++i) {
    const auto& a = p.arrows[i];
    if (a.name.rfind("id_", 0) == 0) throw PresentationError("arrow names starting with id_ are reserved: " + a.name);
    auto s = g.object_index.find(a.src);
    auto t = g.object_index.find(a.tgt);
    if (s == g.object_index.end()) throw UnknownObject("arrow " + a.name + " starts at unknown object " + a.src);
    if (t == g.object_index.end()) throw UnknownObject("arrow " + a.name + " ends at unknown object " + a.tgt);
    if (!g.generator_index.emplace(a.name, i).second) throw PresentationError("arrow " + a.name + " declared twice");
    g.src.push_back(s->second);
    g.tgt.push_back(t->second);
  }
  return g;
}

std::optional<std::string> find_cycle(const Graph& g, std::size_t objects, const Presentation& p) {
  std::vector<int> state(objects, 0);
  std::optional<std::string> found;
  std::function<void(Obj)> visit = [&](Obj x) {
    state[x] = 1;
    for (std::size_t e = 0; e < g.src.size() && !found; ++e) {
      if (g.src[e] != x) continue;
      if (state[g.tgt[e]] == 1) {
        found = p.arrows[e].name;
      } else if (state[g.tgt[e]] == 0) {
        visit(g.tgt[e]);
      }
    }
    state[x] = 2;
  };
  for (Obj x = 0; x < objects && !found; ++x)
    if (state[x] == 0) visit(x);
  return found;
}

// A written path as generator indices in application order, with endpoints.
struct Resolved {
  std::vector<std::size_t> gens;
  Obj src;
  Obj tgt;
};

Resolved resolve_written(const Graph& g, const PathNames& names) {
  std::vector<std::size_t> gens;
  std::optional<Obj> src, tgt;
  for (auto it = names.rbegin(); it != names.rend(); ++it) {
    Obj s, t;
    if (it->rfind("id_", 0) == 0) {
      auto o = g.object_index.find(it->substr(3));
      if (o == g.object_index.end()) throw PresentationError("unknown identity " + *it);
      s = t = o->second;
    } else {
      auto e = g.generator_index.find(*it);
      if (e == g.generator_index.end()) throw PresentationError("unknown arrow " + *it + " in " + dotted(names));
      gens.push_back(e->second);
      s = g.src[e->second];
      t = g.tgt[e->second];
    }
    if (tgt && *tgt != s) throw PresentationError("path " + dotted(names) + " is not composable");
    if (!src) src = s;
    tgt = t;
  }
  if (!src) throw PresentationError("empty path");
  return {gens, *src, *tgt};
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), std::size_t{0}); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

CategoryPtr compile_table(const Presentation& p, const Graph& g) {
  CategoryData d;
  d.objects = p.objects;
  const std::size_t n = p.objects.size();
  for (Obj x = 0; x < n; ++x) {
    d.identities.push_back(d.morphisms.size());
    d.morphisms.push_back({x, x, "id_" + p.objects[x]});
  }
  for (std::size_t e = 0; e < p.arrows.size(); ++e) d.morphisms.push_back({g.src[e], g.tgt[e], p.arrows[e].name});
  auto lookup = [&](const std::string& name) -> Mor {
    if (name.rfind("id_", 0) == 0) {
      auto o = g.object_index.find(name.substr(3));
      if (o == g.object_index.end()) throw PresentationError("unknown identity " + name);
      return d.identities[o->second];
    }
    auto e = g.generator_index.find(name);
    if (e == g.generator_index.end()) throw PresentationError("unknown arrow " + name + " in table");
    return n + e->second;
  };
  const std::size_t m = d.morphisms.size();
  d.composition.assign(m * m, npos);
  for (Mor f = 0; f < m; ++f)
    for (Mor h = 0; h < m; ++h) {
      if (d.morphisms[f].tgt != d.morphisms[h].src) continue;
      if (f < n) d.composition[h * m + f] = h;
      if (h < n) d.composition[h * m + f] = f;
    }
  for (const auto& entry : *p.table) {
    const Mor l = lookup(entry.left), r = lookup(entry.right), res = lookup(entry.result);
    if (d.morphisms[r].tgt != d.morphisms[l].src) {
      throw PresentationError("table entry " + entry.left + "." + entry.right + " is not composable");
    }
    Mor& slot = d.composition[l * m + r];
    if (slot != npos && slot != res) {
      throw PresentationError("table entry " + entry.left + "." + entry.right + " conflicts with an earlier value");
    }
    slot = res;
  }
  for (Mor f = 0; f < m; ++f)
    for (Mor h = 0; h < m; ++h)
      if (d.morphisms[f].tgt == d.morphisms[h].src && d.composition[h * m + f] == npos) {
        throw PresentationError("table has no entry for " + d.morphisms[h].label + "." + d.morphisms[f].label);
      }
  return FinCategory::validate(std::move(d));
}

}  // namespace

CategoryPtr compile_presentation(const Presentation& p) {
  Graph g = build_graph(p);
  if (p.table) {
    if (!p.relations.empty()) throw PresentationError("relations cannot be combined with a table");
    return compile_table(p, g);
  }
  const std::size_t n = p.objects.size();
  if (auto cyc = find_cycle(g, n, p)) {
    throw NotLoopFree("generator " + *cyc + " closes a directed cycle; give a composition table instead");
  }

  // Every path, as generator indices in application order.
  std::vector<std::vector<std::size_t>> paths;
  std::vector<Obj> path_src, path_tgt;
  std::map<std::vector<std::size_t>, std::size_t> index;
  for (Obj x = 0; x < n; ++x) {
    std::vector<std::size_t> cur;
    std::function<void(Obj)> extend = [&](Obj at) {
      for (std::size_t e = 0; e < g.src.size(); ++e) {
        if (g.src[e] != at) continue;
        cur.push_back(e);
        if (paths.size() >= kPathLimit) throw PresentationError("presentation has too many paths");
        index[cur] = paths.size();
        paths.push_back(cur);
        path_src.push_back(x);
        path_tgt.push_back(g.tgt[e]);
        extend(g.tgt[e]);
        cur.pop_back();
      }
    };
    extend(x);
  }

  std::vector<std::pair<Resolved, Resolved>> rels;
  for (const auto& [l, r] : p.relations) {
    Resolved a = resolve_written(g, l), b = resolve_written(g, r);
    if (a.src != b.src || a.tgt != b.tgt) {
      throw PresentationError("relation " + dotted(l) + " = " + dotted(r) + " relates paths with different endpoints");
    }
    if (a.gens.empty() != b.gens.empty()) {
      throw PresentationError("relation " + dotted(l) + " = " + dotted(r) + " identifies a path with an identity");
    }
    rels.emplace_back(std::move(a), std::move(b));
  }

  UnionFind uf(paths.size());
  for (std::size_t w = 0; w < paths.size(); ++w) {
    const auto& path = paths[w];
    for (const auto& [a, b] : rels) {
      for (int dir = 0; dir < 2; ++dir) {
        const auto& from = dir == 0 ? a.gens : b.gens;
        const auto& to = dir == 0 ? b.gens : a.gens;
        if (from.empty() || from.size() > path.size()) continue;
        for (std::size_t i = 0; i + from.size() <= path.size(); ++i) {
          if (!std::equal(from.begin(), from.end(), path.begin() + static_cast<std::ptrdiff_t>(i))) continue;
          std::vector<std::size_t> other(path.begin(), path.begin() + static_cast<std::ptrdiff_t>(i));
          other.insert(other.end(), to.begin(), to.end());
          other.insert(other.end(), path.begin() + static_cast<std::ptrdiff_t>(i + from.size()), path.end());
          uf.unite(w, index.at(other));
        }
      }
    }
  }

  // Representative of a class: shortest, then lexicographically least by
  // generator index (written order reversed, i.e. application order).
  auto better = [&](std::size_t a, std::size_t b) {
    if (paths[a].size() != paths[b].size()) return paths[a].size() < paths[b].size();
    return paths[a] < paths[b];
  };
  std::map<std::size_t, std::size_t> rep;  // root -> best path
  for (std::size_t w = 0; w < paths.size(); ++w) {
    auto [it, fresh] = rep.emplace(uf.find(w), w);
    if (!fresh && better(w, it->second)) it->second = w;
  }
  std::vector<std::size_t> classes;
  for (const auto& [root, best] : rep) classes.push_back(root);
  std::sort(classes.begin(), classes.end(), [&](std::size_t a, std::size_t b) { return better(rep[a], rep[b]); });

  CategoryData d;
  d.objects = p.objects;
  for (Obj x = 0; x < n; ++x) {
    d.identities.push_back(d.morphisms.size());
    d.morphisms.push_back({x, x, "id_" + p.objects[x]});
  }
  std::map<std::size_t, Mor> class_mor;
  for (std::size_t root : classes) {
    const auto& path = paths[rep[root]];
    PathNames written;
    for (auto it = path.rbegin(); it != path.rend(); ++it) written.push_back(p.arrows[*it].name);
    class_mor[root] = d.morphisms.size();
    d.morphisms.push_back({path_src[rep[root]], path_tgt[rep[root]], dotted(written)});
  }
  const std::size_t m = d.morphisms.size();
  d.composition.assign(m * m, npos);
  std::vector<std::size_t> mor_path(m, npos);
  for (const auto& [root, mor] : class_mor) mor_path[mor] = rep[root];
  for (Mor f = 0; f < m; ++f)
    for (Mor h = 0; h < m; ++h) {
      if (d.morphisms[f].tgt != d.morphisms[h].src) continue;
      if (f < n) {
        d.composition[h * m + f] = h;
      } else if (h < n) {
        d.composition[h * m + f] = f;
      } else {
        auto joined = paths[mor_path[f]];
        const auto& second = paths[mor_path[h]];
        joined.insert(joined.end(), second.begin(), second.end());
        d.composition[h * m + f] = class_mor.at(uf.find(index.at(joined)));
      }
    }
  return FinCategory::validate(std::move(d));
}

Mor resolve_path(const FinCategory& c, const PathNames& names) {
  if (names.empty()) throw PresentationError("empty path");
  std::optional<Mor> acc;
  for (auto it = names.rbegin(); it != names.rend(); ++it) {
    auto m = c.find_morphism(*it);
    if (!m) throw PresentationError("unknown arrow " + *it);
    if (!acc) {
      acc = *m;
      continue;
    }
    if (!c.composable(*m, *acc)) throw PresentationError("path " + dotted(names) + " is not composable");
    acc = c.compose(*m, *acc);
  }
  return *acc;
}

}  // namespace hle
