#include "hle/diagram.hpp"

#include "hle/errors.hpp"

namespace hle {

FinSetDiagram validate_diagram(FinSetDiagram d) {
  const FinCategory& c = *d.base;
  if (d.sizes.size() != c.object_count() || d.action.size() != c.morphism_count()) {
    throw ShapeMismatch("diagram needs one set per object and one function per morphism");
  }
  if (!d.labels.empty() && d.labels.size() != c.object_count()) throw ShapeMismatch("diagram labels per object");
  for (Obj x = 0; x < d.labels.size(); ++x) {
    if (d.labels[x].size() != d.sizes[x]) throw ShapeMismatch("labels at " + c.object_label(x) + " do not match size");
  }
  for (Mor f = 0; f < c.morphism_count(); ++f) {
    const auto& t = d.action[f];
    if (t.size() != d.sizes[c.src(f)]) {
      throw ShapeMismatch("function for " + c.morphism_label(f) + " has the wrong domain size");
    }
    for (auto y : t)
      if (y >= d.sizes[c.tgt(f)]) throw ShapeMismatch("function for " + c.morphism_label(f) + " leaves its codomain");
  }
  for (Obj x = 0; x < c.object_count(); ++x) {
    const auto& t = d.action[c.identity(x)];
    for (std::size_t e = 0; e < t.size(); ++e)
      if (t[e] != e) throw FunctorialityViolation("id_" + c.object_label(x) + " does not act as the identity");
  }
  for (Mor g = 0; g < c.morphism_count(); ++g)
    for (Mor f : c.into(c.src(g))) {
      const auto& h = d.action[c.compose(g, f)];
      for (std::size_t e = 0; e < d.action[f].size(); ++e) {
        if (d.action[g][d.action[f][e]] != h[e]) {
          throw FunctorialityViolation("action does not preserve " + c.morphism_label(g) + "." + c.morphism_label(f));
        }
      }
    }
  return d;
}

std::string element_label(const FinSetDiagram& d, Obj x, std::size_t e) {
  if (!d.labels.empty()) return d.labels[x][e];
  return std::to_string(e);
}

FinSetDiagram constant_diagram(const CategoryPtr& c, std::size_t size) {
  FinSetDiagram d;
  d.base = c;
  d.sizes.assign(c->object_count(), size);
  std::vector<std::size_t> id(size);
  for (std::size_t i = 0; i < size; ++i) id[i] = i;
  d.action.assign(c->morphism_count(), id);
  return validate_diagram(std::move(d));
}

ChainDiagram validate_diagram(ChainDiagram d) {
  const FinCategory& c = *d.base;
  if (d.values.size() != c.object_count() || d.actions.size() != c.morphism_count()) {
    throw ShapeMismatch("diagram needs one complex per object and one chain map per morphism");
  }
  for (Mor f = 0; f < c.morphism_count(); ++f) {
    if (!(d.actions[f].source() == d.values[c.src(f)]) || !(d.actions[f].target() == d.values[c.tgt(f)])) {
      throw ShapeMismatch("chain map for " + c.morphism_label(f) + " has the wrong endpoints");
    }
  }
  for (Obj x = 0; x < c.object_count(); ++x) {
    if (!(d.actions[c.identity(x)] == ChainMap::identity(d.values[x]))) {
      throw FunctorialityViolation("id_" + c.object_label(x) + " does not act as the identity");
    }
  }
  for (Mor g = 0; g < c.morphism_count(); ++g)
    for (Mor f : c.into(c.src(g))) {
      if (c.is_identity(f) || c.is_identity(g)) continue;
      if (!(compose(d.actions[g], d.actions[f]) == d.actions[c.compose(g, f)])) {
        throw FunctorialityViolation("action does not preserve " + c.morphism_label(g) + "." + c.morphism_label(f));
      }
    }
  return d;
}

ChainDiagram constant_diagram(const CategoryPtr& c, const ChainComplex& value) {
  ChainDiagram d;
  d.base = c;
  d.values.assign(c->object_count(), value);
  d.actions.assign(c->morphism_count(), ChainMap::identity(value));
  return d;
}

namespace {

void check_restrictable(const FunctorData& f, const CategoryPtr& base) {
  if (!same_category(f.target, base)) throw ShapeMismatch("restrict: diagram does not live on the functor's target");
}

}  // namespace

FinSetDiagram restrict(const FunctorData& f, const FinSetDiagram& d) {
  check_restrictable(f, d.base);
  FinSetDiagram r;
  r.base = f.source;
  for (Obj x = 0; x < f.source->object_count(); ++x) {
    r.sizes.push_back(d.sizes[f.object_map[x]]);
    if (!d.labels.empty()) r.labels.push_back(d.labels[f.object_map[x]]);
  }
  for (Mor m = 0; m < f.source->morphism_count(); ++m) r.action.push_back(d.action[f.morphism_map[m]]);
  return r;
}

ChainDiagram restrict(const FunctorData& f, const ChainDiagram& d) {
  check_restrictable(f, d.base);
  ChainDiagram r;
  r.base = f.source;
  for (Obj x = 0; x < f.source->object_count(); ++x) r.values.push_back(d.values[f.object_map[x]]);
  for (Mor m = 0; m < f.source->morphism_count(); ++m) r.actions.push_back(d.actions[f.morphism_map[m]]);
  return r;
}

ChainNatTrans validate_nat_trans(ChainNatTrans t) {
  const FinCategory& c = *t.source.base;
  if (!same_category(t.source.base, t.target.base) || t.components.size() != c.object_count()) {
    throw ShapeMismatch("natural transformation needs one component per object of a shared base");
  }
  for (Obj x = 0; x < c.object_count(); ++x) {
    if (!(t.components[x].source() == t.source.values[x]) || !(t.components[x].target() == t.target.values[x])) {
      throw ShapeMismatch("component at " + c.object_label(x) + " has the wrong endpoints");
    }
  }
  for (Mor f = 0; f < c.morphism_count(); ++f) {
    if (c.is_identity(f)) continue;
    if (!(compose(t.components[c.tgt(f)], t.source.actions[f]) == compose(t.target.actions[f], t.components[c.src(f)]))) {
      throw NotNatural("naturality square for " + c.morphism_label(f) + " does not commute");
    }
  }
  return t;
}

}  // namespace hle
