#pragma once

// Finite categories given by total composition tables, functors between
// them, and the derived constructions (opposites, products, commas).

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hle {

using Obj = std::size_t;
using Mor = std::size_t;
inline constexpr std::size_t npos = static_cast<std::size_t>(-1);

struct Arrow {
  Obj src = 0;
  Obj tgt = 0;
  std::string label;
  friend bool operator==(const Arrow&, const Arrow&) = default;
};

/// Unvalidated category tables. `composition[g * M + f]` holds g∘f, or npos
/// when tgt(f) != src(g).
struct CategoryData {
  std::vector<std::string> objects;
  std::vector<Arrow> morphisms;
  std::vector<Mor> identities;
  std::vector<Mor> composition;
};

class FinCategory;
using CategoryPtr = std::shared_ptr<const FinCategory>;

struct ProductFactors {
  CategoryPtr left;
  CategoryPtr right;
};

/// A validated finite category. Immutable; shared by pointer between the
/// diagrams, functors and commas built over it.
class FinCategory {
 public:
  /// Checks identity, domain and associativity laws on the full table.
  /// Throws IdentityViolation, CompositionDomainError or AssociativityViolation.
  static CategoryPtr validate(CategoryData raw);

  std::size_t object_count() const noexcept { return data_.objects.size(); }
  std::size_t morphism_count() const noexcept { return data_.morphisms.size(); }

  Obj src(Mor f) const { return data_.morphisms[f].src; }
  Obj tgt(Mor f) const { return data_.morphisms[f].tgt; }
  Mor identity(Obj x) const { return data_.identities[x]; }
  bool is_identity(Mor f) const { return identity_flag_[f]; }
  bool composable(Mor g, Mor f) const { return tgt(f) == src(g); }
  /// g∘f; npos if not composable.
  Mor compose(Mor g, Mor f) const { return data_.composition[g * morphism_count() + f]; }

  const std::string& object_label(Obj x) const { return data_.objects[x]; }
  const std::string& morphism_label(Mor f) const { return data_.morphisms[f].label; }
  std::optional<Obj> find_object(std::string_view label) const;
  std::optional<Mor> find_morphism(std::string_view label) const;

  /// Morphisms x -> y in increasing id order.
  const std::vector<Mor>& hom(Obj x, Obj y) const { return hom_[x * object_count() + y]; }
  const std::vector<Mor>& into(Obj y) const { return into_[y]; }
  const std::vector<Mor>& out_of(Obj x) const { return out_of_[x]; }

  const CategoryData& data() const noexcept { return data_; }
  const std::optional<ProductFactors>& factors() const noexcept { return factors_; }

  /// Same objects, morphisms, identities and composition (labels included).
  bool same_tables(const FinCategory& other) const;

 private:
  explicit FinCategory(CategoryData data);
  friend CategoryPtr product(const CategoryPtr& c, const CategoryPtr& d);

  CategoryData data_;
  std::vector<bool> identity_flag_;
  std::vector<std::vector<Mor>> hom_;
  std::vector<std::vector<Mor>> into_;
  std::vector<std::vector<Mor>> out_of_;
  std::optional<ProductFactors> factors_;
};

bool same_category(const CategoryPtr& a, const CategoryPtr& b);

CategoryPtr opposite(const CategoryPtr& c);

/// Objects (x, y) have index x * |D| + y; morphisms (f, g) have index
/// f * |Mor D| + g. The result records its factors.
CategoryPtr product(const CategoryPtr& c, const CategoryPtr& d);
inline Obj product_object(const FinCategory& d, Obj x, Obj y) { return x * d.object_count() + y; }
inline Mor product_morphism(const FinCategory& d, Mor f, Mor g) { return f * d.morphism_count() + g; }

// Small named categories used throughout the tests and the DSL.
CategoryPtr terminal_category();
CategoryPtr discrete_category(std::size_t n);
/// [1]: objects a, b and a single non-identity f: a -> b.
CategoryPtr arrow_category();
/// The poset 0 < 1 < ... < n with all composites.
CategoryPtr chain_poset(std::size_t n);
/// a -> c <- b with arrows p: a -> c and q: b -> c.
CategoryPtr cospan_category();

struct FunctorData {
  CategoryPtr source;
  CategoryPtr target;
  std::vector<Obj> object_map;
  std::vector<Mor> morphism_map;
};

/// Throws ShapeMismatch for wrong table sizes and FunctorialityViolation when
/// identities, endpoints or composites are not preserved.
FunctorData validate_functor(FunctorData f);
FunctorData identity_functor(const CategoryPtr& c);
/// The functor from the terminal category picking out `x`.
FunctorData object_inclusion(const CategoryPtr& c, Obj x);
FunctorData functor_to_terminal(const CategoryPtr& c);
/// g∘f.
FunctorData compose_functors(const FunctorData& g, const FunctorData& f);

/// A comma category together with the data describing its objects.
struct CommaCategory {
  CategoryPtr category;
  FunctorData projection;
  std::vector<Obj> base_object;   // per comma object
  std::vector<Mor> arrow;         // per comma object: the structure arrow
  /// Comma object with the given (base object, arrow), or npos.
  Obj find(Obj base, Mor arrow_id) const;
};

/// Γ↓g: objects α: x -> g, morphisms m: x -> x' with α'∘m = α. Objects are
/// ordered by (x, α). Throws UnknownObject.
CommaCategory comma_over(const CategoryPtr& c, Obj g);

/// f↓g': objects (γ, α: fγ -> g'), morphisms m: γ1 -> γ2 with α2∘f(m) = α1.
CommaCategory comma_under_functor(const FunctorData& f, Obj target_object);

/// g'↓f: objects (γ, β: g' -> fγ), morphisms m: γ1 -> γ2 with f(m)∘β1 = β2.
CommaCategory comma_from_object(const FunctorData& f, Obj target_object);

struct DegreeFunction {
  std::vector<int> degree;
};

/// A degree function strictly raised by every non-identity morphism (longest
/// path layering), or nullopt when the category has a non-identity loop.
std::optional<DegreeFunction> is_direct(const FinCategory& c);
inline bool is_loop_free(const FinCategory& c) { return is_direct(c).has_value(); }

/// Objects in ascending degree (ties by index). Throws NotLoopFree.
std::vector<Obj> degree_order(const FinCategory& c);

/// The full subcategory on `objects`, with its inclusion functor.
FunctorData full_subcategory(const CategoryPtr& c, const std::vector<Obj>& objects);

}  // namespace hle
