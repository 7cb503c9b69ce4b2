#pragma once

// Finitely presented categories: generators and relations compiled to a full
// composition table by path enumeration and congruence closure.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hle/fincat.hpp"

namespace hle {

struct Generator {
  std::string name;
  std::string src;
  std::string tgt;
};

/// Names in written order: {"g", "f"} is g∘f. `id_x` names an identity.
using PathNames = std::vector<std::string>;

struct TableEntry {
  std::string left;   // g in g.f
  std::string right;  // f in g.f
  std::string result;
};

struct Presentation {
  std::vector<std::string> objects;
  std::vector<Generator> arrows;
  std::vector<std::pair<PathNames, PathNames>> relations;
  /// When present, `arrows` lists every non-identity morphism and the entries
  /// give every composite of two of them.
  std::optional<std::vector<TableEntry>> table;
};

/// Identities come first (object order), then one morphism per congruence
/// class ordered by shortest representative. A class containing a generator
/// takes the generator's name; other composites are named `h.g.f`.
/// Throws NotLoopFree (cyclic generators without a table), UnknownObject,
/// PresentationError, or the category validator's errors.
CategoryPtr compile_presentation(const Presentation& p);

/// Mor for a written path in a compiled category; each name is a morphism
/// label (including composite labels and identities). Throws PresentationError.
Mor resolve_path(const FinCategory& c, const PathNames& names);

}  // namespace hle
