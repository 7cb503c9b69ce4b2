#pragma once

// The .hle text format: a syntax tree, a parser with line/column
// diagnostics, a canonical printer, and the validated workspace.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hle/chaincx.hpp"
#include "hle/diagram.hpp"
#include "hle/presentation.hpp"
#include "hle/ssets.hpp"

namespace hle {

struct SourceLoc {
  int line = 1;
  int column = 1;
};

std::string describe(const SourceLoc& loc);

struct MatrixLit {
  std::vector<std::vector<Rational>> rows;
  SourceLoc loc;
};

struct CategoryDecl {
  std::string name;
  SourceLoc loc;
  std::vector<std::string> objects;
  std::vector<Generator> arrows;
  std::vector<std::pair<PathNames, PathNames>> relations;
  std::optional<std::vector<TableEntry>> table;
};

struct ComplexDecl {
  std::string name;
  SourceLoc loc;
  int lo = 0;
  int hi = -1;
  std::map<int, std::size_t> dims;
  std::map<int, MatrixLit> diffs;
};

/// A complex named in a diagram: a binding, `0`, or `Q^n[k]`.
struct ComplexRef {
  enum class Kind { kNamed, kZero, kFree } kind = Kind::kZero;
  std::string name;
  std::size_t rank = 1;
  int degree = 0;
};

struct ChainAt {
  std::string object;
  ComplexRef value;
};

struct ChainOn {
  PathNames arrow;
  std::optional<MatrixLit> single;  // `on f: [[..]]` for a single shared degree
  std::map<int, MatrixLit> per_degree;
  SourceLoc loc;
};

struct SetAt {
  std::string object;
  std::vector<std::string> elements;
};

struct SetOn {
  PathNames arrow;
  std::vector<std::pair<std::string, std::string>> map;
  SourceLoc loc;
};

struct DiagramDecl {
  std::string name;
  SourceLoc loc;
  std::string category;
  bool chain = true;
  std::vector<ChainAt> chain_at;
  std::vector<ChainOn> chain_on;
  std::vector<SetAt> set_at;
  std::vector<SetOn> set_on;
};

struct FunctorDecl {
  std::string name;
  SourceLoc loc;
  std::string source;
  std::string target;
  /// `x => y` for objects and `f => g.h` for arrows, in written order.
  std::vector<std::pair<std::string, PathNames>> maps;
};

/// `weight W = nerve(C)`, `point(C)` or `comma(f)`.
struct WeightDecl {
  std::string name;
  SourceLoc loc;
  std::string kind;
  std::string argument;
};

/// `let X = op(C)`, `product(C, D)`, `hom(F, G)`, `hom(C)`, `restrict(f, D)`.
struct LetDecl {
  std::string name;
  SourceLoc loc;
  std::string op;
  std::vector<std::string> arguments;
};

using Decl = std::variant<CategoryDecl, ComplexDecl, DiagramDecl, FunctorDecl, WeightDecl, LetDecl>;

struct Module {
  std::vector<Decl> decls;
};

/// Throws SyntaxError with "line L, column C: ..." messages. Accepts ASCII
/// '-' and U+2212 as minus.
Module parse_module(std::string_view text);
/// Canonical text: one clause per line, ASCII only.
std::string print_module(const Module& m);

using Value = std::variant<CategoryPtr, FunctorData, FinSetDiagram, ChainDiagram, ChainComplex, Weight>;

/// "category", "functor", "finset-diagram", "chain-diagram", "complex", "weight".
std::string value_kind(const Value& v);
bool same_value(const Value& a, const Value& b);

struct Binding {
  Value value;
  SourceLoc loc;
};

class Workspace {
 public:
  /// Throws UnknownBinding.
  const Binding& at(const std::string& name) const;
  /// Throws UnknownBinding or TypeMismatch.
  template <class T>
  const T& get(const std::string& name) const;
  bool contains(const std::string& name) const { return bindings_.count(name) > 0; }
  const std::vector<std::string>& names() const noexcept { return order_; }
  /// Throws SyntaxError on a duplicate name.
  void add(const std::string& name, Binding b);

 private:
  std::map<std::string, Binding> bindings_;
  std::vector<std::string> order_;
};

std::string type_name_of(const CategoryPtr*);
std::string type_name_of(const FunctorData*);
std::string type_name_of(const FinSetDiagram*);
std::string type_name_of(const ChainDiagram*);
std::string type_name_of(const ChainComplex*);
std::string type_name_of(const Weight*);

[[noreturn]] void throw_type_mismatch(const std::string& name, const std::string& expected, const std::string& actual);

template <class T>
const T& Workspace::get(const std::string& name) const {
  const Binding& b = at(name);
  if (const T* v = std::get_if<T>(&b.value)) return *v;
  throw_type_mismatch(name, type_name_of(static_cast<const T*>(nullptr)), value_kind(b.value));
}

/// Validates every declaration in order. Module errors are rethrown with
/// their kind preserved and the binding name and location prepended.
Workspace elaborate(const Module& m);
Workspace parse_workspace(std::string_view text);

}  // namespace hle
