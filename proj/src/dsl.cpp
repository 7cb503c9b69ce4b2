#include <functional>
#include <set>

#include "hle/dsl.hpp"
#include "hle/endkan.hpp"
#include "hle/errors.hpp"

namespace hle {

std::string type_name_of(const CategoryPtr*) { return "category"; }
std::string type_name_of(const FunctorData*) { return "functor"; }
std::string type_name_of(const FinSetDiagram*) { return "finset-diagram"; }
std::string type_name_of(const ChainDiagram*) { return "chain-diagram"; }
std::string type_name_of(const ChainComplex*) { return "complex"; }
std::string type_name_of(const Weight*) { return "weight"; }

std::string value_kind(const Value& v) {
  return std::visit([](const auto& x) { return type_name_of(&x); }, v);
}

void throw_type_mismatch(const std::string& name, const std::string& expected, const std::string& actual) {
  throw TypeMismatch(name + " is a " + actual + ", expected a " + expected);
}

const Binding& Workspace::at(const std::string& name) const {
  auto it = bindings_.find(name);
  if (it == bindings_.end()) throw UnknownBinding("no binding named " + name);
  return it->second;
}

void Workspace::add(const std::string& name, Binding b) {
  if (bindings_.count(name)) throw SyntaxError(describe(b.loc) + ": " + name + " is already bound");
  order_.push_back(name);
  bindings_.emplace(name, std::move(b));
}

namespace {

bool same_functor(const FunctorData& a, const FunctorData& b) {
  return same_category(a.source, b.source) && same_category(a.target, b.target) && a.object_map == b.object_map &&
         a.morphism_map == b.morphism_map;
}

struct SameVisitor {
  const Value& other;
  bool operator()(const CategoryPtr& a) const { return same_category(a, std::get<CategoryPtr>(other)); }
  bool operator()(const FunctorData& a) const { return same_functor(a, std::get<FunctorData>(other)); }
  bool operator()(const FinSetDiagram& a) const {
    const auto& b = std::get<FinSetDiagram>(other);
    return same_category(a.base, b.base) && a.sizes == b.sizes && a.action == b.action && a.labels == b.labels;
  }
  bool operator()(const ChainDiagram& a) const {
    const auto& b = std::get<ChainDiagram>(other);
    return same_category(a.base, b.base) && a.values == b.values && a.actions == b.actions;
  }
  bool operator()(const ChainComplex& a) const { return a == std::get<ChainComplex>(other); }
  bool operator()(const Weight& a) const {
    const auto& b = std::get<Weight>(other);
    if (!same_category(a.base, b.base) || a.kind != b.kind || !(a.values == b.values)) return false;
    if (a.actions.size() != b.actions.size()) return false;
    for (std::size_t i = 0; i < a.actions.size(); ++i)
      if (a.actions[i].cells != b.actions[i].cells) return false;
    if (a.functor.has_value() != b.functor.has_value()) return false;
    return !a.functor || same_functor(*a.functor, *b.functor);
  }
};

// Fills unknown entries of a per-morphism table by composing known ones
// until nothing changes.
template <class T, class Compose>
void close_under_composition(const FinCategory& c, std::vector<std::optional<T>>& table, Compose compose) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (Mor f = 0; f < c.morphism_count(); ++f) {
      if (!table[f]) continue;
      for (Mor g = 0; g < c.morphism_count(); ++g) {
        if (!table[g] || !c.composable(g, f)) continue;
        const Mor gf = c.compose(g, f);
        if (table[gf]) continue;
        table[gf] = compose(*table[g], *table[f]);
        changed = true;
      }
    }
  }
}

class Elaborator {
 public:
  Workspace ws;

  void operator()(const CategoryDecl& d) {
    Presentation p;
    p.objects = d.objects;
    p.arrows = d.arrows;
    p.relations = d.relations;
    p.table = d.table;
    bind(d.name, d.loc, [&] { return Value(compile_presentation(p)); });
  }

  void operator()(const ComplexDecl& d) {
    bind(d.name, d.loc, [&] { return Value(build_complex(d)); });
  }

  void operator()(const DiagramDecl& d) {
    bind(d.name, d.loc, [&] {
      const CategoryPtr& c = ws.get<CategoryPtr>(d.category);
      return d.chain ? Value(chain_diagram(d, c)) : Value(set_diagram(d, c));
    });
  }

  void operator()(const FunctorDecl& d) {
    bind(d.name, d.loc, [&] { return Value(functor(d)); });
  }

  void operator()(const WeightDecl& d) {
    bind(d.name, d.loc, [&] {
      if (d.kind == "nerve") return Value(nerve_weight(ws.get<CategoryPtr>(d.argument)));
      if (d.kind == "point") return Value(constant_point(ws.get<CategoryPtr>(d.argument)));
      return Value(nerve_of_comma_under(ws.get<FunctorData>(d.argument)));
    });
  }

  void operator()(const LetDecl& d) {
    bind(d.name, d.loc, [&] { return let(d); });
  }

 private:
  template <class F>
  void bind(const std::string& name, const SourceLoc& loc, F build) {
    if (ws.contains(name)) throw SyntaxError(describe(loc) + ": " + name + " is already bound");
    try {
      ws.add(name, Binding{build(), loc});
    } catch (const SyntaxError&) {
      throw;
    } catch (const Error& e) {
      rethrow_with_prefix(e, "in " + name + " (" + describe(loc) + "): ");
    }
  }

  static RationalMatrix to_matrix(const MatrixLit& m, std::size_t rows, std::size_t cols, const std::string& what) {
    const std::size_t r = m.rows.size();
    const std::size_t c = r ? m.rows.front().size() : 0;
    const bool empty_ok = (rows == 0 || cols == 0) && (r == 0 || c == 0);
    if (!empty_ok && (r != rows || c != cols)) {
      throw ShapeMismatch(describe(m.loc) + ": " + what + " must be " + std::to_string(rows) + "x" +
                          std::to_string(cols) + ", got " + std::to_string(r) + "x" + std::to_string(c));
    }
    RationalMatrix out(rows, cols);
    for (std::size_t i = 0; i < r && rows; ++i)
      for (std::size_t j = 0; j < c && cols; ++j) out(i, j) = m.rows[i][j];
    return out;
  }

  static ChainComplex build_complex(const ComplexDecl& d) {
    auto dim = [&](int k) -> std::size_t {
      auto it = d.dims.find(k);
      return it == d.dims.end() ? 0 : it->second;
    };
    for (const auto& [k, n] : d.dims) {
      if (k < d.lo || k > d.hi) throw ShapeMismatch("dim " + std::to_string(k) + " lies outside the declared degrees");
    }
    std::map<int, RationalMatrix> diffs;
    for (const auto& [k, m] : d.diffs) {
      if (k <= d.lo || k > d.hi) {
        throw ShapeMismatch(describe(m.loc) + ": d " + std::to_string(k) + " lies outside the declared degrees");
      }
      diffs[k] = to_matrix(m, dim(k - 1), dim(k), "d " + std::to_string(k));
    }
    for (const auto& [k, m] : diffs) {
      auto below = diffs.find(k - 1);
      if (below == diffs.end() || below->second.empty() || m.empty()) continue;
      if (!(below->second * m).is_zero()) {
        throw DSquareNonzero(describe(d.diffs.at(k).loc) + ": d " + std::to_string(k - 1) + " d " + std::to_string(k) +
                             " is nonzero");
      }
    }
    std::vector<std::size_t> dims;
    std::vector<RationalMatrix> ds;
    for (int k = d.lo; k <= d.hi; ++k) dims.push_back(dim(k));
    for (int k = d.lo + 1; k <= d.hi; ++k) {
      auto it = diffs.find(k);
      ds.push_back(it == diffs.end() ? RationalMatrix(dim(k - 1), dim(k)) : it->second);
    }
    return ChainComplex(d.lo, std::move(dims), std::move(ds));
  }

  ChainComplex resolve(const ComplexRef& r) const {
    switch (r.kind) {
      case ComplexRef::Kind::kZero:
        return ChainComplex();
      case ComplexRef::Kind::kFree:
        return ChainComplex::concentrated(r.degree, r.rank);
      case ComplexRef::Kind::kNamed:
        break;
    }
    return ws.get<ChainComplex>(r.name);
  }

  static Obj object_of(const FinCategory& c, const std::string& name) {
    auto o = c.find_object(name);
    if (!o) throw UnknownObject("no object " + name);
    return *o;
  }

  ChainDiagram chain_diagram(const DiagramDecl& d, const CategoryPtr& c) const {
    ChainDiagram out;
    out.base = c;
    std::vector<std::optional<ChainComplex>> values(c->object_count());
    for (const auto& a : d.chain_at) {
      const Obj x = object_of(*c, a.object);
      if (values[x]) throw ShapeMismatch("object " + a.object + " is given twice");
      values[x] = resolve(a.value);
    }
    for (Obj x = 0; x < c->object_count(); ++x) {
      if (!values[x]) throw ShapeMismatch("no value at object " + c->object_label(x));
      out.values.push_back(*values[x]);
    }
    std::vector<std::optional<ChainMap>> actions(c->morphism_count());
    for (Obj x = 0; x < c->object_count(); ++x) actions[c->identity(x)] = ChainMap::identity(out.values[x]);
    for (const auto& on : d.chain_on) {
      const Mor m = resolve_path(*c, on.arrow);
      if (c->is_identity(m)) throw ShapeMismatch(describe(on.loc) + ": identities act trivially");
      const ChainComplex& s = out.values[c->src(m)];
      const ChainComplex& t = out.values[c->tgt(m)];
      std::map<int, RationalMatrix> comps;
      const int lo = std::min(s.lo(), t.lo()), hi = std::max(s.hi(), t.hi());
      for (int k = lo; k <= hi; ++k) comps[k] = RationalMatrix(t.dim(k), s.dim(k));
      if (on.single) {
        std::vector<int> shared;
        for (int k = lo; k <= hi; ++k)
          if (s.dim(k) && t.dim(k)) shared.push_back(k);
        if (shared.size() > 1) {
          throw ShapeMismatch(describe(on.loc) + ": source and target share several degrees; give one matrix per degree");
        }
        if (!shared.empty()) {
          comps[shared[0]] = to_matrix(*on.single, t.dim(shared[0]), s.dim(shared[0]), "the matrix");
        } else if (!on.single->rows.empty() && !on.single->rows.front().empty()) {
          throw ShapeMismatch(describe(on.loc) + ": source and target share no degree");
        }
      } else {
        for (const auto& [k, mat] : on.per_degree) {
          comps[k] = to_matrix(mat, t.dim(k), s.dim(k), "degree " + std::to_string(k));
        }
      }
      actions[m] = ChainMap(s, t, std::move(comps));
    }
    // Maps with no room for a choice are zero.
    for (Mor m = 0; m < c->morphism_count(); ++m) {
      const ChainComplex& s = out.values[c->src(m)];
      const ChainComplex& t = out.values[c->tgt(m)];
      bool forced = true;
      for (int k = s.lo(); k <= s.hi(); ++k) forced = forced && (!s.dim(k) || !t.dim(k));
      if (!actions[m] && forced) actions[m] = ChainMap::zero(s, t);
    }
    close_under_composition(*c, actions, [](const ChainMap& g, const ChainMap& f) { return compose(g, f); });
    for (Mor m = 0; m < c->morphism_count(); ++m) {
      if (!actions[m]) throw ShapeMismatch("no action determined for " + c->morphism_label(m));
      out.actions.push_back(*actions[m]);
    }
    return validate_diagram(std::move(out));
  }

  FinSetDiagram set_diagram(const DiagramDecl& d, const CategoryPtr& c) const {
    FinSetDiagram out;
    out.base = c;
    std::vector<std::optional<std::vector<std::string>>> elems(c->object_count());
    for (const auto& a : d.set_at) {
      const Obj x = object_of(*c, a.object);
      if (elems[x]) throw ShapeMismatch("object " + a.object + " is given twice");
      std::set<std::string> seen(a.elements.begin(), a.elements.end());
      if (seen.size() != a.elements.size()) throw ShapeMismatch("repeated element at " + a.object);
      elems[x] = a.elements;
    }
    for (Obj x = 0; x < c->object_count(); ++x) {
      if (!elems[x]) throw ShapeMismatch("no value at object " + c->object_label(x));
      out.sizes.push_back(elems[x]->size());
      out.labels.push_back(*elems[x]);
    }
    auto index_of = [&](Obj x, const std::string& e, const SourceLoc& loc) {
      const auto& v = *elems[x];
      auto it = std::find(v.begin(), v.end(), e);
      if (it == v.end()) throw ShapeMismatch(describe(loc) + ": " + e + " is not an element at " + c->object_label(x));
      return static_cast<std::size_t>(it - v.begin());
    };
    using Table = std::vector<std::size_t>;
    std::vector<std::optional<Table>> actions(c->morphism_count());
    for (Obj x = 0; x < c->object_count(); ++x) {
      Table id(out.sizes[x]);
      for (std::size_t i = 0; i < id.size(); ++i) id[i] = i;
      actions[c->identity(x)] = id;
    }
    for (const auto& on : d.set_on) {
      const Mor m = resolve_path(*c, on.arrow);
      if (c->is_identity(m)) throw ShapeMismatch(describe(on.loc) + ": identities act trivially");
      const Obj s = c->src(m), t = c->tgt(m);
      Table table(out.sizes[s], npos);
      for (const auto& [x, y] : on.map) {
        const std::size_t i = index_of(s, x, on.loc);
        if (table[i] != npos) throw ShapeMismatch(describe(on.loc) + ": " + x + " is mapped twice");
        table[i] = index_of(t, y, on.loc);
      }
      for (std::size_t i = 0; i < table.size(); ++i)
        if (table[i] == npos) throw ShapeMismatch(describe(on.loc) + ": " + (*elems[s])[i] + " is not mapped");
      actions[m] = std::move(table);
    }
    // Functions with no room for a choice: from the empty set or to a point.
    for (Mor m = 0; m < c->morphism_count(); ++m) {
      const std::size_t from = out.sizes[c->src(m)], to = out.sizes[c->tgt(m)];
      if (!actions[m] && (from == 0 || to == 1)) actions[m] = Table(from, 0);
    }
    close_under_composition(*c, actions, [](const Table& g, const Table& f) {
      Table r(f.size());
      for (std::size_t i = 0; i < f.size(); ++i) r[i] = g[f[i]];
      return r;
    });
    for (Mor m = 0; m < c->morphism_count(); ++m) {
      if (!actions[m]) throw ShapeMismatch("no action determined for " + c->morphism_label(m));
      out.action.push_back(*actions[m]);
    }
    return validate_diagram(std::move(out));
  }

  FunctorData functor(const FunctorDecl& d) const {
    FunctorData f;
    f.source = ws.get<CategoryPtr>(d.source);
    f.target = ws.get<CategoryPtr>(d.target);
    const FinCategory& s = *f.source;
    const FinCategory& t = *f.target;
    std::vector<std::optional<Obj>> objects(s.object_count());
    std::vector<std::optional<Mor>> arrows(s.morphism_count());
    for (const auto& [lhs, rhs] : d.maps) {
      if (auto x = s.find_object(lhs)) {
        if (rhs.size() != 1) throw ShapeMismatch("object " + lhs + " must map to an object");
        objects[*x] = object_of(t, rhs[0]);
      } else if (auto m = s.find_morphism(lhs)) {
        arrows[*m] = resolve_path(t, rhs);
      } else {
        throw UnknownObject(lhs + " is neither an object nor an arrow of " + d.source);
      }
    }
    for (Obj x = 0; x < s.object_count(); ++x) {
      if (!objects[x]) throw ShapeMismatch("object " + s.object_label(x) + " is not mapped");
      f.object_map.push_back(*objects[x]);
      arrows[s.identity(x)] = t.identity(*objects[x]);
    }
    close_under_composition(s, arrows, [&](Mor g, Mor h) {
      if (!t.composable(g, h)) {
        throw FunctorialityViolation("images of composable arrows do not compose: " + t.morphism_label(g) + " after " +
                                     t.morphism_label(h));
      }
      return t.compose(g, h);
    });
    for (Mor m = 0; m < s.morphism_count(); ++m) {
      if (!arrows[m]) throw ShapeMismatch("arrow " + s.morphism_label(m) + " is not mapped");
      f.morphism_map.push_back(*arrows[m]);
    }
    return validate_functor(std::move(f));
  }

  Value let(const LetDecl& d) const {
    const auto& a = d.arguments;
    auto arity = [&](std::size_t n) {
      if (a.size() != n) {
        throw TypeMismatch(d.op + " takes " + std::to_string(n) + " argument" + (n == 1 ? "" : "s"));
      }
    };
    if (d.op == "op") {
      arity(1);
      return opposite(ws.get<CategoryPtr>(a[0]));
    }
    if (d.op == "product") {
      arity(2);
      return product(ws.get<CategoryPtr>(a[0]), ws.get<CategoryPtr>(a[1]));
    }
    if (d.op == "hom") {
      if (a.size() == 1) return category_hom(ws.get<CategoryPtr>(a[0]));
      arity(2);
      return hom_bifunctor(ws.get<FinSetDiagram>(a[0]), ws.get<FinSetDiagram>(a[1]));
    }
    arity(2);
    const FunctorData& f = ws.get<FunctorData>(a[0]);
    const Value& v = ws.at(a[1]).value;
    if (const auto* fd = std::get_if<FinSetDiagram>(&v)) return restrict(f, *fd);
    if (const auto* cd = std::get_if<ChainDiagram>(&v)) return restrict(f, *cd);
    throw_type_mismatch(a[1], "diagram", value_kind(v));
  }
};

}  // namespace

bool same_value(const Value& a, const Value& b) {
  if (a.index() != b.index()) return false;
  return std::visit(SameVisitor{b}, a);
}

Workspace elaborate(const Module& m) {
  Elaborator e;
  for (const auto& d : m.decls) std::visit(e, d);
  return std::move(e.ws);
}

Workspace parse_workspace(std::string_view text) { return elaborate(parse_module(text)); }

}  // namespace hle
