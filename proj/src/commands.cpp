#include "hle/commands.hpp"

#include <sstream>

#include "hle/endkan.hpp"
#include "hle/errors.hpp"
#include "hle/holim.hpp"
#include "hle/verify.hpp"

namespace hle {

namespace {

using Json = nlohmann::ordered_json;

Json degree_map(const std::map<int, std::size_t>& m) {
  Json j = Json::object();
  for (const auto& [k, v] : m)
    if (v) j[std::to_string(k)] = v;
  return j;
}

std::map<int, std::size_t> dims_of(const ChainComplex& c) {
  std::map<int, std::size_t> out;
  for (int k = c.lo(); k <= c.hi(); ++k) out[k] = c.dim(k);
  return out;
}

std::string degree_text(const std::map<int, std::size_t>& m) {
  std::ostringstream out;
  bool first = true;
  for (const auto& [k, v] : m) {
    if (!v) continue;
    out << (first ? "" : ", ") << "H_" << k << " = " << v;
    first = false;
  }
  return first ? "all homology vanishes" : out.str();
}

std::string dims_text(const std::map<int, std::size_t>& m) {
  std::ostringstream out;
  out << '{';
  bool first = true;
  for (const auto& [k, v] : m) {
    if (!v) continue;
    out << (first ? "" : ", ") << k << ": " << v;
    first = false;
  }
  out << '}';
  return out.str();
}

std::string plural(std::size_t n, const std::string& word) {
  return std::to_string(n) + " " + word + (n == 1 ? "" : "s");
}

struct Builder {
  Report r;
  void line(const std::string& s) { r.text += s + "\n"; }
  void verdict(bool pass) {
    r.json["verdict"] = pass ? "pass" : "fail";
    if (!pass) r.exit_code = 2;
  }
  void complex(const ChainComplex& c, const std::map<int, std::size_t>& betti) {
    r.json["dims"] = degree_map(dims_of(c));
    r.json["betti"] = degree_map(betti);
    line("dims " + dims_text(dims_of(c)));
    line(degree_text(betti));
  }
  void provenance(const std::string& p) {
    r.json["provenance"] = p;
    line("via " + p);
  }
};

std::vector<std::string> tokenize(const std::string& command) {
  std::istringstream in(command);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

void expect_args(const std::vector<std::string>& t, std::size_t lo, std::size_t hi, const std::string& usage) {
  if (t.size() - 1 < lo || t.size() - 1 > hi) throw SyntaxError("usage: " + usage);
}

Json finset_values(const FinSetDiagram& d) {
  Json j = Json::object();
  const FinCategory& c = *d.base;
  for (Obj x = 0; x < c.object_count(); ++x) {
    Json elems = Json::array();
    for (std::size_t e = 0; e < d.sizes[x]; ++e) elems.push_back(element_label(d, x, e));
    j[c.object_label(x)] = std::move(elems);
  }
  return j;
}

std::string finset_text(const FinSetDiagram& d) {
  std::string out;
  const FinCategory& c = *d.base;
  for (Obj x = 0; x < c.object_count(); ++x) {
    out += (x ? ", " : "") + c.object_label(x) + ": {";
    for (std::size_t e = 0; e < d.sizes[x]; ++e) out += (e ? ", " : "") + element_label(d, x, e);
    out += "}";
  }
  return out;
}

Json family_json(const FinSetDiagram& d, const std::vector<std::size_t>& family) {
  Json j = Json::object();
  for (Obj x = 0; x < family.size(); ++x) j[d.base->object_label(x)] = element_label(d, x, family[x]);
  return j;
}

// (a, b) ↦ H(a, b) rendered at the diagonal a = b of a bifunctor.
Json diagonal_family_json(const FinSetDiagram& h, const std::vector<std::size_t>& family) {
  const CategoryPtr gamma = bifunctor_base(h);
  Json j = Json::object();
  for (Obj x = 0; x < family.size(); ++x) {
    j[gamma->object_label(x)] = element_label(h, product_object(*gamma, x, x), family[x]);
  }
  return j;
}

Report cmd_end(const Workspace& ws, const std::vector<std::string>& t) {
  expect_args(t, 1, 1, "end H");
  Builder b;
  const Value& v = ws.at(t[1]).value;
  if (const auto* h = std::get_if<FinSetDiagram>(&v)) {
    const auto e = end_finset(*h);
    b.r.json["size"] = e.size();
    Json elems = Json::array();
    for (const auto& f : e.elements) elems.push_back(diagonal_family_json(*h, f));
    b.r.json["elements"] = std::move(elems);
    b.line(plural(e.size(), "element"));
    b.provenance("equalizer of the product over the diagonal and the product over arrows");
    return b.r;
  }
  if (const auto* h = std::get_if<ChainDiagram>(&v)) {
    const auto e = end_chain(bifunctor_from_diagram(*h));
    b.complex(e.complex, nonzero_betti(e.complex));
    b.provenance("equalizer inside the sum of diagonal values, one wedge condition per generating arrow");
    return b.r;
  }
  throw_type_mismatch(t[1], "finset-diagram or chain-diagram", value_kind(v));
}

Report cmd_coend(const Workspace& ws, const std::vector<std::string>& t) {
  expect_args(t, 1, 1, "coend H");
  Builder b;
  const auto& h = ws.get<FinSetDiagram>(t[1]);
  const auto c = coend_finset(h);
  const CategoryPtr gamma = bifunctor_base(h);
  b.r.json["size"] = c.size;
  Json reps = Json::array();
  for (const auto& [x, e] : c.representative) {
    reps.push_back({{"object", gamma->object_label(x)}, {"element", element_label(h, product_object(*gamma, x, x), e)}});
  }
  b.r.json["representatives"] = std::move(reps);
  b.line(plural(c.size, "element"));
  b.provenance("coequalizer of the coproduct over arrows and the coproduct over the diagonal");
  return b.r;
}

Report cmd_lim(const Workspace& ws, const std::vector<std::string>& t) {
  expect_args(t, 1, 1, "lim D");
  Builder b;
  const Value& v = ws.at(t[1]).value;
  if (const auto* d = std::get_if<FinSetDiagram>(&v)) {
    const auto l = finset_limit(*d);
    b.r.json["size"] = l.size();
    Json elems = Json::array();
    for (const auto& f : l.elements) elems.push_back(family_json(*d, f));
    b.r.json["elements"] = std::move(elems);
    b.line(plural(l.size(), "element"));
    b.provenance("compatible families");
    return b.r;
  }
  if (const auto* d = std::get_if<ChainDiagram>(&v)) {
    const auto e = weighted_end(*d, constant_point(d->base));
    b.complex(e.complex, nonzero_betti(e.complex));
    b.provenance("end weighted by the point");
    return b.r;
  }
  throw_type_mismatch(t[1], "finset-diagram or chain-diagram", value_kind(v));
}

Report cmd_colim(const Workspace& ws, const std::vector<std::string>& t) {
  expect_args(t, 1, 1, "colim D");
  Builder b;
  const auto& d = ws.get<FinSetDiagram>(t[1]);
  const auto c = finset_colimit(d);
  b.r.json["size"] = c.size;
  Json reps = Json::array();
  for (const auto& [x, e] : c.representative) {
    reps.push_back({{"object", d.base->object_label(x)}, {"element", element_label(d, x, e)}});
  }
  b.r.json["representatives"] = std::move(reps);
  b.line(plural(c.size, "element"));
  b.provenance("quotient of the disjoint union by the diagram action");
  return b.r;
}

Report cmd_kan(const Workspace& ws, const std::vector<std::string>& t, bool left) {
  expect_args(t, 2, 2, left ? "lan f D" : "ran f D");
  Builder b;
  const auto& f = ws.get<FunctorData>(t[1]);
  const auto& d = ws.get<FinSetDiagram>(t[2]);
  const KanExtension k = left ? lan(f, d) : ran(f, d);
  Json sizes = Json::object();
  for (Obj x = 0; x < f.target->object_count(); ++x) sizes[f.target->object_label(x)] = k.diagram.sizes[x];
  b.r.json["sizes"] = std::move(sizes);
  b.r.json["values"] = finset_values(k.diagram);
  b.line(finset_text(k.diagram));
  b.provenance(left ? "pointwise colimit over the comma f/g'" : "pointwise limit over the comma g'/f");
  return b.r;
}

Report cmd_nerve(const Workspace& ws, const std::vector<std::string>& t) {
  expect_args(t, 1, 1, "nerve C");
  Builder b;
  const auto& c = ws.get<CategoryPtr>(t[1]);
  const Nerve n = nerve(*c);
  std::map<int, std::size_t> cells;
  for (int k = 0; k <= n.sset.dimension(); ++k) cells[k] = n.sset.count(k);
  const ChainComplex chains = normalized_chains(n.sset);
  const auto betti = nonzero_betti(chains);
  b.r.json["cells"] = degree_map(cells);
  b.r.json["betti"] = degree_map(betti);
  b.r.json["euler_characteristic"] = n.sset.euler_characteristic();
  b.line("cells " + dims_text(cells));
  b.line(degree_text(betti));
  b.provenance("chains of composable non-identity arrows");
  return b.r;
}

Report cmd_homology(const Workspace& ws, const std::vector<std::string>& t) {
  expect_args(t, 1, 1, "homology X");
  Builder b;
  const Value& v = ws.at(t[1]).value;
  if (const auto* c = std::get_if<ChainComplex>(&v)) {
    b.complex(*c, nonzero_betti(*c));
    b.provenance("rank and kernel of the differentials");
    return b.r;
  }
  if (const auto* d = std::get_if<ChainDiagram>(&v)) {
    Json objs = Json::object();
    for (Obj x = 0; x < d->base->object_count(); ++x) {
      const auto betti = nonzero_betti(d->values[x]);
      objs[d->base->object_label(x)] = degree_map(betti);
      b.line(d->base->object_label(x) + ": " + degree_text(betti));
    }
    b.r.json["objects"] = std::move(objs);
    b.provenance("rank and kernel of the differentials");
    return b.r;
  }
  throw_type_mismatch(t[1], "complex or chain-diagram", value_kind(v));
}

Report cmd_holim(const Workspace& ws, const std::vector<std::string>& t) {
  expect_args(t, 1, 2, "holim D [W]");
  Builder b;
  const auto& d = ws.get<ChainDiagram>(t[1]);
  std::optional<Weight> w;
  if (t.size() == 3) w = ws.get<Weight>(t[2]);
  const auto r = bk_holim(d, w);
  b.complex(r.complex, r.betti);
  b.provenance(r.provenance);
  return b.r;
}

Report cmd_hopullback(const Workspace& ws, const std::vector<std::string>& t) {
  expect_args(t, 1, 1, "hopullback D");
  Builder b;
  const auto& d = ws.get<ChainDiagram>(t[1]);
  const FinCategory& c = *d.base;
  std::vector<Mor> legs;
  for (Mor m = 0; m < c.morphism_count(); ++m)
    if (!c.is_identity(m)) legs.push_back(m);
  if (c.object_count() != 3 || legs.size() != 2 || c.tgt(legs[0]) != c.tgt(legs[1]) || c.src(legs[0]) == c.src(legs[1])) {
    throw ShapeMismatch("hopullback needs a diagram over a cospan a -> c <- b");
  }
  const auto r = homotopy_pullback(d.actions[legs[0]], d.actions[legs[1]]);
  b.complex(r.holim.complex, r.holim.betti);
  b.r.json["oracle_betti"] = degree_map(r.oracle_betti);
  b.line("mapping path: " + degree_text(r.oracle_betti));
  b.verdict(r.consistent);
  b.provenance(r.holim.provenance + "; oracle: mapping path A + B + C[1]");
  return b.r;
}

Report cmd_fattot(const Workspace& ws, const std::vector<std::string>& t, int depth) {
  expect_args(t, 1, 1, "fattot X");
  Builder b;
  const Value& v = ws.at(t[1]).value;
  CosimplicialObject x;
  std::map<int, std::size_t> expected;
  std::string compared;
  if (const auto* c = std::get_if<ChainComplex>(&v)) {
    x = constant_cosimplicial(*c, depth);
    expected = nonzero_betti(*c);
    compared = "input";
  } else if (const auto* d = std::get_if<ChainDiagram>(&v)) {
    x = cosimplicial_replacement(*d, depth);
    expected = bk_holim(*d).betti;
    compared = "bk_holim";
  } else {
    throw_type_mismatch(t[1], "complex or chain-diagram", value_kind(v));
  }
  const auto r = fat_tot(x);
  auto stable = [&](const std::map<int, std::size_t>& m) {
    std::map<int, std::size_t> out;
    for (const auto& [k, n] : m)
      if (k >= r.stable_from && n) out[k] = n;
    return out;
  };
  const auto got = stable(r.result.betti), want = stable(expected);
  b.r.json["depth"] = depth;
  b.r.json["stable_from"] = r.stable_from;
  b.r.json["betti"] = degree_map(got);
  b.r.json["truncated_betti"] = degree_map(r.result.betti);
  b.r.json["direct_betti"] = degree_map(r.direct_betti);
  b.r.json["compared_with"] = compared;
  b.line("depth " + std::to_string(depth) + ", stable from degree " + std::to_string(r.stable_from));
  b.line("stable: " + degree_text(got));
  b.verdict(got == want && r.cross_check);
  b.provenance(r.result.provenance + "; cross-checked against the product totalization");
  return b.r;
}

Report cmd_hoinitial(const Workspace& ws, const std::vector<std::string>& t) {
  expect_args(t, 1, 1, "hoinitial f");
  Builder b;
  const auto& f = ws.get<FunctorData>(t[1]);
  const auto r = check_homotopy_initial(f);
  Json per = Json::object();
  for (Obj x = 0; x < f.target->object_count(); ++x) {
    per[f.target->object_label(x)] = static_cast<bool>(r.contractible[x]);
    b.line("N(" + t[1] + "/" + f.target->object_label(x) + ") " + (r.contractible[x] ? "contractible" : "not contractible"));
  }
  b.r.json["contractible"] = std::move(per);
  if (!r.reason.empty()) b.r.json["reason"] = r.reason;
  b.verdict(r.pass);
  b.line(r.pass ? "pass" : "fail");
  b.provenance("homology of the nerves of the under-commas f/g'");
  return b.r;
}

Report cmd_compare(const Workspace& ws, const std::vector<std::string>& t) {
  expect_args(t, 2, 2, "compare-holim f D");
  Builder b;
  const auto& f = ws.get<FunctorData>(t[1]);
  const auto& d = ws.get<ChainDiagram>(t[2]);
  const auto r = comparison_map(f, d);
  b.r.json["target_betti"] = degree_map(r.target_holim.betti);
  b.r.json["source_betti"] = degree_map(r.source_holim.betti);
  b.r.json["quasi_iso"] = r.quasi_iso;
  b.line("holim F: " + degree_text(r.target_holim.betti));
  b.line("holim f*F: " + degree_text(r.source_holim.betti));
  b.line(r.quasi_iso ? "comparison map is a quasi-isomorphism" : "comparison map is not a quasi-isomorphism");
  b.verdict(r.quasi_iso);
  b.provenance("restriction to the end weighted by N(f/-), then change of diagrams");
  return b.r;
}

Report cmd_verify(const std::vector<std::string>& t, const CommandOptions& opt) {
  expect_args(t, 1, 1, "verify SUITE");
  Builder b;
  VerifyOptions vo;
  vo.seed = opt.seed;
  vo.depth = opt.depth.value_or(3);
  vo.threads = opt.threads;
  const auto results = run_verify(t[1], vo);
  b.r.json["suite"] = t[1];
  b.r.json["seed"] = opt.seed;
  b.r.json["depth"] = vo.depth;
  Json suites = Json::array();
  bool all = true;
  for (const auto& s : results) {
    Json js;
    js["name"] = s.name;
    js["criterion"] = s.criterion;
    js["description"] = s.description;
    js["cases"] = s.cases.size();
    js["passed"] = s.passed();
    js["verdict"] = s.pass() ? "pass" : "fail";
    Json failures = Json::array();
    for (std::size_t i = 0; i < s.cases.size(); ++i) {
      const auto& c = s.cases[i];
      if (!c.pass) failures.push_back({{"index", i}, {"label", c.label}, {"detail", c.detail}});
    }
    js["failures"] = std::move(failures);
    suites.push_back(std::move(js));
    b.line(std::string(s.pass() ? "pass" : "FAIL") + "  " + std::to_string(s.criterion) + ". " + s.name + " (" +
           std::to_string(s.passed()) + "/" + std::to_string(s.cases.size()) + ")");
    for (const auto& c : s.cases)
      if (!c.pass) b.line("      " + c.label + ": " + c.detail);
    all = all && s.pass();
  }
  b.r.json["suites"] = std::move(suites);
  b.verdict(all);
  return b.r;
}

}  // namespace

Report run_command(const Workspace& ws, const std::string& command, const CommandOptions& opt) {
  const auto t = tokenize(command);
  if (t.empty()) throw SyntaxError("empty command");
  const int depth = opt.depth.value_or(3);
  if (depth < 0) throw ShapeMismatch("depth must be non-negative");
  const std::string& c = t[0];
  Report r;
  if (c == "end") r = cmd_end(ws, t);
  else if (c == "coend") r = cmd_coend(ws, t);
  else if (c == "lim") r = cmd_lim(ws, t);
  else if (c == "colim") r = cmd_colim(ws, t);
  else if (c == "lan") r = cmd_kan(ws, t, true);
  else if (c == "ran") r = cmd_kan(ws, t, false);
  else if (c == "nerve") r = cmd_nerve(ws, t);
  else if (c == "homology") r = cmd_homology(ws, t);
  else if (c == "holim") r = cmd_holim(ws, t);
  else if (c == "hopullback") r = cmd_hopullback(ws, t);
  else if (c == "fattot") r = cmd_fattot(ws, t, depth);
  else if (c == "hoinitial") r = cmd_hoinitial(ws, t);
  else if (c == "compare-holim") r = cmd_compare(ws, t);
  else if (c == "verify") r = cmd_verify(t, opt);
  else throw SyntaxError("unknown command '" + c + "'");
  // Command and arguments lead every JSON report.
  Json head;
  head["command"] = c;
  head["args"] = std::vector<std::string>(t.begin() + 1, t.end());
  for (auto& [k, v] : r.json.items()) head[k] = v;
  r.json = std::move(head);
  return r;
}

Report error_report(const std::string& kind, const std::string& message) {
  Report r;
  r.json["error"] = {{"kind", kind}, {"message", message}};
  r.text = "error: " + kind + ": " + message + "\n";
  r.exit_code = 1;
  return r;
}

std::string render_json(const Report& r) { return r.json.dump(2) + "\n"; }

}  // namespace hle
