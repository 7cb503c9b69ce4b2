#pragma once

// Diagrams of finite sets and of chain complexes over a finite category.

#include <string>
#include <vector>

#include "hle/chaincx.hpp"
#include "hle/fincat.hpp"

namespace hle {

struct FinSetDiagram {
  CategoryPtr base;
  std::vector<std::size_t> sizes;               // per object
  std::vector<std::vector<std::size_t>> action;  // per morphism, a function table
  std::vector<std::vector<std::string>> labels;  // per object, optional
};

/// Throws ShapeMismatch or FunctorialityViolation.
FinSetDiagram validate_diagram(FinSetDiagram d);
std::string element_label(const FinSetDiagram& d, Obj x, std::size_t e);
FinSetDiagram constant_diagram(const CategoryPtr& c, std::size_t size);

struct ChainDiagram {
  CategoryPtr base;
  std::vector<ChainComplex> values;
  std::vector<ChainMap> actions;
};

ChainDiagram validate_diagram(ChainDiagram d);
ChainDiagram constant_diagram(const CategoryPtr& c, const ChainComplex& value);

/// (f*F)(γ) = F(fγ). Throws ShapeMismatch if F does not live on the target of f.
FinSetDiagram restrict(const FunctorData& f, const FinSetDiagram& d);
ChainDiagram restrict(const FunctorData& f, const ChainDiagram& d);

struct ChainNatTrans {
  ChainDiagram source;
  ChainDiagram target;
  std::vector<ChainMap> components;
};

/// Throws ShapeMismatch or NotNatural.
ChainNatTrans validate_nat_trans(ChainNatTrans t);

}  // namespace hle
