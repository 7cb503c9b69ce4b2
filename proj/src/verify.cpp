#include "hle/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "hle/endkan.hpp"
#include "hle/errors.hpp"
#include "hle/holim.hpp"
#include "hle/random.hpp"
#include "hle/ssets.hpp"

namespace hle {

bool SuiteResult::pass() const {
  return std::all_of(cases.begin(), cases.end(), [](const CaseResult& c) { return c.pass; });
}

std::size_t SuiteResult::passed() const {
  return static_cast<std::size_t>(std::count_if(cases.begin(), cases.end(), [](const CaseResult& c) { return c.pass; }));
}

unsigned default_thread_count() {
  if (const char* env = std::getenv("HOLIM_ENGINE_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(std::min<long>(v, 256));
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

using CaseFn = std::function<CaseResult(std::size_t, Rng&)>;

struct SuiteSpec {
  std::string name;
  std::string description;
  std::size_t count;
  CaseFn run;
};

std::string betti_text(const std::map<int, std::size_t>& b) {
  std::ostringstream out;
  out << '{';
  bool first = true;
  for (const auto& [k, v] : b) {
    if (!v) continue;
    out << (first ? "" : ",") << k << ':' << v;
    first = false;
  }
  out << '}';
  return out.str();
}

std::map<int, std::size_t> stable_part(const std::map<int, std::size_t>& b, int from) {
  std::map<int, std::size_t> out;
  for (const auto& [k, v] : b)
    if (k >= from && v) out[k] = v;
  return out;
}

CaseResult verdict(std::string label, bool pass, std::string detail = {}) {
  return {std::move(label), pass, std::move(detail)};
}

// Function-set sizes of a hom-set enumeration between f and g, saturating.
double enumeration_cost(const FinSetDiagram& f, const FinSetDiagram& g) {
  double total = 0;
  for (Obj x = 0; x < f.sizes.size(); ++x)
    for (Obj y = 0; y < f.sizes.size(); ++y) total += std::pow(static_cast<double>(g.sizes[y]), f.sizes[x]);
  return total;
}

std::size_t hom_count(const FinSetDiagram& f, const FinSetDiagram& g) { return end_finset(hom_bifunctor(f, g)).size(); }

struct Cospan {
  ChainMap p, q;
};

Cospan random_cospan(Rng& rng, int max_width, std::size_t max_dim) {
  auto make = [&] { return random_complex_in(rng, rng.range(-1, 1), rng.range(1, max_width), max_dim); };
  ChainComplex a = make(), b = make(), c = make();
  return {random_chain_map(rng, a, c), random_chain_map(rng, b, c)};
}

ChainDiagram arrow_zero_diagram() {
  const auto q = ChainComplex::concentrated(0);
  return validate_diagram(
      ChainDiagram{arrow_category(), {q, q}, {ChainMap::identity(q), ChainMap::identity(q), ChainMap::zero(q, q)}});
}

// Suites mixing curated and random cases pick the kind by index.
CaseResult homotopy_initial_case(std::size_t index, Rng& rng) {
  if (index == 0) {
    CategoryPtr a = arrow_category();
    const auto r = comparison_map(object_inclusion(a, 1), arrow_zero_diagram());
    return verdict("{b} -> [1], zero map", !r.quasi_iso,
                   r.quasi_iso ? "comparison map is a quasi-isomorphism" : "comparison map is not a quasi-isomorphism");
  }
  CategoryPtr shape = random_loop_free_category(rng, {3, 8});
  CategoryPtr c = adjoin_initial(shape);
  ChainDiagram d = random_chain_diagram(rng, c);
  const bool identity = index % 2 == 1;
  const FunctorData f = identity ? identity_functor(c) : object_inclusion(c, 0);
  const auto r = comparison_map(f, d);
  return verdict(std::string(identity ? "identity" : "initial object") + ", |C|=" + std::to_string(c->morphism_count()),
                 r.quasi_iso, betti_text(r.target_holim.betti) + " vs " + betti_text(r.source_holim.betti));
}

CaseResult pullback_case(std::size_t index, Rng& rng) {
  const auto q = ChainComplex::concentrated(0);
  if (index == 0) {
    const auto r = homotopy_pullback(ChainMap::identity(q), ChainMap::identity(q));
    const std::map<int, std::size_t> want{{0, 1}};
    return verdict("identity legs", r.consistent && r.holim.betti == want, betti_text(r.holim.betti));
  }
  if (index == 1) {
    const ChainComplex z;
    const auto r = homotopy_pullback(ChainMap::zero(z, q), ChainMap::zero(z, q));
    const std::map<int, std::size_t> want{{-1, 1}};
    return verdict("0 -> Q[0] <- 0", r.consistent && r.holim.betti == want, betti_text(r.holim.betti));
  }
  Cospan c = random_cospan(rng, 3, 3);
  const auto r = homotopy_pullback(c.p, c.q);
  return verdict("random cospan", r.consistent,
                 "holim " + betti_text(r.holim.betti) + ", oracle " + betti_text(r.oracle_betti));
}

CaseResult fat_tot_case(std::size_t index, Rng& rng, int depth) {
  if (index < 10) {
    ChainComplex c = random_complex(rng);
    const auto r = fat_tot(constant_cosimplicial(c, depth));
    const auto got = stable_part(r.result.betti, r.stable_from);
    const auto want = stable_part(betti_numbers(c), r.stable_from);
    const bool bound = r.stable_from == fat_tot_stable_bound(constant_cosimplicial(c, depth));
    return verdict("constant " + describe_dims(c), got == want && bound && r.cross_check,
                   "stable from " + std::to_string(r.stable_from) + ": " + betti_text(got) + " vs " + betti_text(want));
  }
  Cospan c = random_cospan(rng, 2, 2);
  const ChainDiagram d = cospan_diagram(c.p, c.q);
  const auto x = cosimplicial_replacement(d, depth);
  const auto r = fat_tot(x);
  const auto bk = bk_holim(d);
  const auto got = stable_part(r.result.betti, r.stable_from);
  const auto want = stable_part(bk.betti, r.stable_from);
  const bool bound = r.stable_from == fat_tot_stable_bound(x);
  return verdict("cospan replacement", got == want && bound && r.cross_check,
                 "stable from " + std::to_string(r.stable_from) + ": " + betti_text(got) + " vs " + betti_text(want));
}

CaseResult fubini_coyoneda_case(std::size_t index, Rng& rng) {
  if (index % 2 == 0) {
    CategoryPtr a = random_loop_free_category(rng, {2, 3});
    CategoryPtr b = random_loop_free_category(rng, {2, 3});
    CategoryPtr p = product(a, b);
    const ComplexBounds cb{0, 0, 2, 1};
    ChainDiagram x = random_chain_diagram(rng, p, cb), y = random_chain_diagram(rng, p, cb);
    const auto r = fubini_check(hom_bifunctor(x, y));
    return verdict("Fubini " + std::to_string(a->morphism_count()) + "x" + std::to_string(b->morphism_count()), r.pass,
                   r.joint_dims + " / " + r.first_then_second_dims + " / " + r.second_then_first_dims);
  }
  CategoryPtr t = random_loop_free_category(rng);
  FunctorData f = random_functor(rng, t);
  FinSetDiagram g = random_finset_diagram(rng, t);
  const Obj gamma = rng.below(f.source->object_count());
  const auto r = co_yoneda_check(g, f, gamma);
  return verdict("co-Yoneda", r.pass, std::to_string(r.end_size) + " vs " + std::to_string(r.value_size));
}

std::vector<SuiteSpec> make_suites(int depth) {
  std::vector<SuiteSpec> s;
  s.push_back({"end-enumeration", "end of Hom(F-,G-) counts natural transformations", 100, [](std::size_t, Rng& rng) {
                 CategoryPtr c = random_category(rng);
                 FinSetDiagram f = random_finset_diagram(rng, c), g = random_finset_diagram(rng, c);
                 const std::size_t e = end_finset(hom_bifunctor(f, g)).size();
                 const std::size_t b = nat_trans_bruteforce(f, g).size();
                 return verdict("|C|=" + std::to_string(c->morphism_count()), e == b,
                                "end " + std::to_string(e) + ", enumeration " + std::to_string(b));
               }});
  s.push_back({"limit-recovery", "end of the first-variable-constant bifunctor is the limit", 50, [](std::size_t, Rng& rng) {
                 CategoryPtr c = random_category(rng);
                 FinSetDiagram f = random_finset_diagram(rng, c);
                 const auto e = end_finset(constant_first(f));
                 const auto l = finset_limit(f);
                 return verdict("|C|=" + std::to_string(c->morphism_count()), e.elements == l.elements,
                                std::to_string(e.size()) + " vs " + std::to_string(l.size()) + " elements");
               }});
  s.push_back({"kan-formulas", "Kan extensions agree with their (co)end formulas and adjunctions", 50, [](std::size_t, Rng& rng) {
                 for (;;) {
                   CategoryPtr t = random_loop_free_category(rng, {3, 8});
                   FunctorData f = random_functor(rng, t, {3, 6});
                   FinSetDiagram d = random_finset_diagram(rng, f.source, 2);
                   FinSetDiagram g = random_finset_diagram(rng, t, 2);
                   const FinSetDiagram l = lan(f, d).diagram, r = ran(f, d).diagram, fg = restrict(f, g);
                   if (enumeration_cost(l, g) > 2e5 || enumeration_cost(g, r) > 2e5) continue;
                   const auto lc = lan_via_coend(f, d), rc = ran_via_end(f, d);
                   const std::size_t a1 = hom_count(l, g), a2 = hom_count(d, fg);
                   const std::size_t b1 = hom_count(fg, d), b2 = hom_count(g, r);
                   std::string detail = "Hom(lan F,G)=" + std::to_string(a1) + " Hom(F,f*G)=" + std::to_string(a2) +
                                        " Hom(f*G,F)=" + std::to_string(b1) + " Hom(G,ran F)=" + std::to_string(b2);
                   if (!lc.agree) detail += "; lan: " + lc.reason;
                   if (!rc.agree) detail += "; ran: " + rc.reason;
                   return verdict("|f|=" + std::to_string(f.source->morphism_count()) + "->" +
                                      std::to_string(t->morphism_count()),
                                  lc.agree && rc.agree && a1 == a2 && b1 == b2, detail);
                 }
               }});
  s.push_back({"nerve-contractibility", "every N(G/g) is homology-contractible", 50, [](std::size_t, Rng& rng) {
                 CategoryPtr c = random_loop_free_category(rng);
                 std::string bad;
                 for (Obj g = 0; g < c->object_count(); ++g) {
                   if (!homology_contractible(nerve(*comma_over(c, g).category).sset)) bad += " " + c->object_label(g);
                 }
                 return verdict("|C|=" + std::to_string(c->morphism_count()), bad.empty(),
                                bad.empty() ? "" : "not contractible at" + bad);
               }});
  s.push_back({"kan-nerves", "cells of N(f/-) are the left Kan extension of cells of N(G/-)", 25, [](std::size_t, Rng& rng) {
                 CategoryPtr t = random_loop_free_category(rng);
                 FunctorData f = random_functor(rng, t);
                 std::string detail;
                 bool pass = true;
                 for (int n = 0; n <= 3; ++n) {
                   const auto r = nerve_kan_bijection(f, n);
                   pass = pass && r.pass;
                   std::size_t cells = 0;
                   for (std::size_t v : r.comma_sizes) cells += v;
                   detail += "n=" + std::to_string(n) + ": " + std::to_string(cells) + " cells" +
                             (r.pass ? "" : " (" + r.reason + ")") + "; ";
                 }
                 return verdict("|f|=" + std::to_string(f.source->morphism_count()), pass, detail);
               }});
  s.push_back({"change-of-diagrams", "restriction along f as an end weighted by N(f/-)", 25, [](std::size_t, Rng& rng) {
                 CategoryPtr t = random_loop_free_category(rng, {3, 8});
                 FunctorData f = random_functor(rng, t, {3, 6});
                 ChainDiagram d = random_chain_diagram(rng, t, {-1, 1, 2, 2});
                 const auto r = change_of_diagrams_iso(f, d);
                 return verdict("|f|=" + std::to_string(f.source->morphism_count()), r.pass,
                                r.lhs_dims + " vs " + r.rhs_dims + (r.reason.empty() ? "" : "; " + r.reason));
               }});
  s.push_back({"homotopy-initial", "homotopy-initial functors preserve holim; a non-initial one does not", 21,
               homotopy_initial_case});
  s.push_back({"pullback-oracle", "Bousfield-Kan holim of a cospan matches the mapping path", 102, pullback_case});
  s.push_back({"fat-tot", "fat totalization agrees with the input or with bk_holim on stable degrees", 20,
               [depth](std::size_t i, Rng& rng) { return fat_tot_case(i, rng, depth); }});
  s.push_back({"reedy-frames", "simplicial frames are Reedy-fibrant", 20, [](std::size_t, Rng& rng) {
                 ChainComplex c = random_complex(rng, {-1, 1, 3, 2});
                 const auto r = check_reedy_fibrant(fibrant_frame(c, 4), 4);
                 return verdict(describe_dims(c), r.pass);
               }});
  s.push_back({"invariance", "holim sends componentwise quasi-isomorphisms to quasi-isomorphisms", 25, [](std::size_t, Rng& rng) {
                 CategoryPtr c = random_loop_free_category(rng, {3, 6});
                 ChainDiagram d = random_chain_diagram(rng, c);
                 ChainNatTrans alpha = cone_fattening(rng, d);
                 const auto r = holim_we_invariance(alpha);
                 return verdict("|C|=" + std::to_string(c->morphism_count()), r.quasi_iso,
                                betti_text(r.source.betti) + " vs " + betti_text(r.target.betti));
               }});
  s.push_back({"fubini-coyoneda", "Fubini for ends and the co-Yoneda lemma", 50, fubini_coyoneda_case});
  return s;
}

SuiteResult run_one(std::size_t which, const VerifyOptions& opt) {
  const auto suites = make_suites(opt.depth);
  const SuiteSpec& spec = suites[which];
  SuiteResult out;
  out.name = spec.name;
  out.criterion = static_cast<int>(which) + 1;
  out.description = spec.description;
  out.cases.resize(spec.count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < spec.count;) {
      Rng rng = Rng::derive(opt.seed, spec.name, i);
      try {
        out.cases[i] = spec.run(i, rng);
      } catch (const Error& e) {
        out.cases[i] = verdict("case " + std::to_string(i), false, e.kind() + ": " + e.what());
      } catch (const std::exception& e) {
        out.cases[i] = verdict("case " + std::to_string(i), false, e.what());
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(opt.threads, static_cast<unsigned>(spec.count)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return out;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& s : make_suites(0)) out.push_back(s.name);
    return out;
  }();
  return names;
}

std::vector<SuiteResult> run_verify(const std::string& suite, const VerifyOptions& opt) {
  std::vector<SuiteResult> out;
  const auto& names = suite_names();
  if (suite == "all") {
    for (std::size_t i = 0; i < names.size(); ++i) out.push_back(run_one(i, opt));
    return out;
  }
  const auto it = std::find(names.begin(), names.end(), suite);
  if (it == names.end()) throw UnknownBinding("unknown verification suite '" + suite + "'");
  out.push_back(run_one(static_cast<std::size_t>(it - names.begin()), opt));
  return out;
}

}  // namespace hle
