#include <algorithm>
#include <cctype>
#include <sstream>

#include "hle/dsl.hpp"
#include "hle/errors.hpp"

namespace hle {

std::string describe(const SourceLoc& loc) {
  return "line " + std::to_string(loc.line) + ", column " + std::to_string(loc.column);
}

namespace {

enum class Tok { kIdent, kInt, kSym, kNewline, kEnd };

struct Token {
  Tok kind;
  std::string text;
  SourceLoc loc;
};

[[noreturn]] void fail(const SourceLoc& loc, const std::string& msg) { throw SyntaxError(describe(loc) + ": " + msg); }

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    i += n;
    col += static_cast<int>(n);
  };
  while (i < s.size()) {
    const char c = s[i];
    const SourceLoc here{line, col};
    if (c == '\n') {
      out.push_back({Tok::kNewline, "\n", here});
      ++i;
      ++line;
      col = 1;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < s.size() && s[i] != '\n') ++i;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_' || s[j] == '\'')) ++j;
      out.push_back({Tok::kIdent, std::string(s.substr(i, j - i)), here});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Tok::kInt, std::string(s.substr(i, j - i)), here});
      advance(j - i);
      continue;
    }
    // U+2212 MINUS SIGN is E2 88 92 in UTF-8; it counts as one column.
    if (s.substr(i, 3) == "\xE2\x88\x92") {
      i += 3;
      ++col;
      if (i < s.size() && s[i] == '>') {
        advance(1);
        out.push_back({Tok::kSym, "->", here});
      } else {
        out.push_back({Tok::kSym, "-", here});
      }
      continue;
    }
    const std::string_view two = s.substr(i, 2);
    if (two == "->" || two == "=>" || two == "..") {
      out.push_back({Tok::kSym, std::string(two), here});
      advance(2);
      continue;
    }
    if (std::string_view("{}[]():;,.=/^-").find(c) != std::string_view::npos) {
      out.push_back({Tok::kSym, std::string(1, c), here});
      advance(1);
      continue;
    }
    if (static_cast<unsigned char>(c) >= 0x80) fail(here, "unexpected non-ASCII character");
    fail(here, std::string("unexpected character '") + c + "'");
  }
  out.push_back({Tok::kEnd, "", {line, col}});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Module module() {
    Module m;
    for (;;) {
      skip_separators();
      if (peek().kind == Tok::kEnd) break;
      const Token& kw = peek();
      if (kw.kind != Tok::kIdent) fail(kw.loc, "expected a declaration");
      if (kw.text == "category") m.decls.push_back(category());
      else if (kw.text == "complex") m.decls.push_back(complex());
      else if (kw.text == "diagram") m.decls.push_back(diagram());
      else if (kw.text == "functor") m.decls.push_back(functor());
      else if (kw.text == "weight") m.decls.push_back(weight());
      else if (kw.text == "let") m.decls.push_back(let());
      else fail(kw.loc, "unknown declaration '" + kw.text + "'");
      const Token& after = peek();
      if (after.kind != Tok::kNewline && after.kind != Tok::kEnd && !is_sym(";")) {
        fail(after.loc, "expected end of line after declaration");
      }
    }
    return m;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;

  const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
  Token next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool is_sym(const char* s, std::size_t ahead = 0) const {
    return peek(ahead).kind == Tok::kSym && peek(ahead).text == s;
  }
  bool is_word(const char* s) const { return peek().kind == Tok::kIdent && peek().text == s; }
  void skip_newlines() {
    while (peek().kind == Tok::kNewline) ++pos_;
  }
  void skip_separators() {
    while (peek().kind == Tok::kNewline || is_sym(";")) ++pos_;
  }
  Token expect_sym(const char* s) {
    if (!is_sym(s)) fail(peek().loc, std::string("expected '") + s + "'" + found());
    return next();
  }
  std::string found() const {
    const Token& t = peek();
    if (t.kind == Tok::kEnd) return " but reached the end of input";
    if (t.kind == Tok::kNewline) return " but the line ended";
    return " but found '" + t.text + "'";
  }
  std::string ident(const char* what = "a name") {
    if (peek().kind != Tok::kIdent) fail(peek().loc, std::string("expected ") + what + found());
    return next().text;
  }
  void expect_word(const char* w) {
    if (!is_word(w)) fail(peek().loc, std::string("expected '") + w + "'" + found());
    ++pos_;
  }
  long long signed_int() {
    bool neg = false;
    if (is_sym("-")) {
      ++pos_;
      neg = true;
    }
    if (peek().kind != Tok::kInt) fail(peek().loc, "expected an integer" + found());
    const Token t = next();
    long long v = 0;
    try {
      v = std::stoll(t.text);
    } catch (const std::exception&) {
      fail(t.loc, "integer out of range");
    }
    return neg ? -v : v;
  }
  int degree() {
    const SourceLoc loc = peek().loc;
    long long v = signed_int();
    if (v < -100000 || v > 100000) fail(loc, "degree out of range");
    return static_cast<int>(v);
  }
  std::size_t count() {
    const SourceLoc loc = peek().loc;
    long long v = signed_int();
    if (v < 0 || v > 100000) fail(loc, "expected a nonnegative count");
    return static_cast<std::size_t>(v);
  }
  Rational rational() {
    bool neg = false;
    if (is_sym("-")) {
      ++pos_;
      neg = true;
    }
    if (peek().kind != Tok::kInt) fail(peek().loc, "expected a matrix entry" + found());
    std::string text = next().text;
    if (is_sym("/")) {
      ++pos_;
      if (peek().kind != Tok::kInt) fail(peek().loc, "expected a denominator" + found());
      const Token den = next();
      if (std::all_of(den.text.begin(), den.text.end(), [](char ch) { return ch == '0'; })) fail(den.loc, "zero denominator");
      text += "/" + den.text;
    }
    Rational r(text);
    r.canonicalize();
    return neg ? Rational(-r) : r;
  }
  MatrixLit matrix() {
    MatrixLit m;
    m.loc = peek().loc;
    expect_sym("[");
    skip_newlines();
    if (is_sym("]")) {
      ++pos_;
      return m;
    }
    for (;;) {
      skip_newlines();
      expect_sym("[");
      std::vector<Rational> row;
      skip_newlines();
      if (!is_sym("]")) {
        for (;;) {
          skip_newlines();
          row.push_back(rational());
          skip_newlines();
          if (!is_sym(",")) break;
          ++pos_;
        }
      }
      expect_sym("]");
      if (!m.rows.empty() && row.size() != m.rows.front().size()) fail(m.loc, "matrix rows have different lengths");
      m.rows.push_back(std::move(row));
      skip_newlines();
      if (!is_sym(",")) break;
      ++pos_;
    }
    skip_newlines();
    expect_sym("]");
    return m;
  }
  PathNames path() {
    PathNames p{ident("an arrow")};
    while (is_sym(".")) {
      ++pos_;
      p.push_back(ident("an arrow"));
    }
    return p;
  }
  std::string element() {
    if (peek().kind == Tok::kIdent || peek().kind == Tok::kInt) return next().text;
    fail(peek().loc, "expected an element name" + found());
  }
  // Comma-separated list; newlines are allowed after commas.
  template <class F>
  void list(F item) {
    for (;;) {
      item();
      if (!is_sym(",")) break;
      ++pos_;
      skip_newlines();
    }
  }
  // `{ clause (; | newline) clause ... }`
  template <class F>
  void body(F clause) {
    expect_sym("{");
    for (;;) {
      skip_separators();
      if (is_sym("}")) break;
      if (peek().kind == Tok::kEnd) fail(peek().loc, "unterminated block");
      clause();
      if (!is_sym("}") && !is_sym(";") && peek().kind != Tok::kNewline) {
        fail(peek().loc, "expected ';' or a new line between clauses" + found());
      }
    }
    expect_sym("}");
  }

  CategoryDecl category() {
    CategoryDecl d;
    d.loc = next().loc;
    d.name = ident();
    body([&] {
      const Token key = peek();
      const std::string k = ident("a clause keyword");
      expect_sym(":");
      skip_newlines();
      if (k == "objects") {
        list([&] { d.objects.push_back(ident("an object")); });
      } else if (k == "arrows") {
        list([&] {
          Generator g;
          g.name = ident("an arrow name");
          expect_sym(":");
          g.src = ident("an object");
          expect_sym("->");
          g.tgt = ident("an object");
          d.arrows.push_back(std::move(g));
        });
      } else if (k == "relations") {
        list([&] {
          PathNames l = path();
          expect_sym("=");
          PathNames r = path();
          d.relations.emplace_back(std::move(l), std::move(r));
        });
      } else if (k == "table") {
        if (!d.table) d.table.emplace();
        list([&] {
          const SourceLoc at = peek().loc;
          PathNames l = path();
          if (l.size() != 2) fail(at, "table entries have the form g.f = h");
          expect_sym("=");
          d.table->push_back({l[0], l[1], ident("an arrow")});
        });
      } else {
        fail(key.loc, "unknown category clause '" + k + "'");
      }
    });
    return d;
  }

  ComplexDecl complex() {
    ComplexDecl d;
    d.loc = next().loc;
    d.name = ident();
    bool have_degrees = false;
    body([&] {
      const Token key = peek();
      const std::string k = ident("a clause keyword");
      if (k == "degrees") {
        expect_sym(":");
        d.lo = degree();
        expect_sym("..");
        d.hi = degree();
        if (d.hi < d.lo) fail(key.loc, "empty degree range");
        have_degrees = true;
      } else if (k == "dim") {
        const int deg = degree();
        expect_sym(":");
        d.dims[deg] = count();
      } else if (k == "d") {
        const int deg = degree();
        expect_sym(":");
        skip_newlines();
        d.diffs[deg] = matrix();
        d.diffs[deg].loc = key.loc;
      } else {
        fail(key.loc, "unknown complex clause '" + k + "'");
      }
    });
    if (!have_degrees) {
      if (d.dims.empty()) fail(d.loc, "complex " + d.name + " needs a degrees clause");
      d.lo = d.dims.begin()->first;
      d.hi = d.dims.rbegin()->first;
    }
    return d;
  }

  ComplexRef complex_ref() {
    ComplexRef r;
    if (peek().kind == Tok::kInt && peek().text == "0") {
      ++pos_;
      r.kind = ComplexRef::Kind::kZero;
      return r;
    }
    if (is_word("Q") && (is_sym("[", 1) || is_sym("^", 1))) {
      ++pos_;
      r.kind = ComplexRef::Kind::kFree;
      if (is_sym("^")) {
        ++pos_;
        r.rank = count();
      }
      expect_sym("[");
      r.degree = degree();
      expect_sym("]");
      return r;
    }
    r.kind = ComplexRef::Kind::kNamed;
    r.name = ident("a complex");
    return r;
  }

  DiagramDecl diagram() {
    DiagramDecl d;
    d.loc = next().loc;
    d.name = ident();
    expect_word("over");
    d.category = ident("a category");
    expect_word("into");
    const Token t = peek();
    const std::string target = ident("Ch or FinSet");
    if (target == "Ch") d.chain = true;
    else if (target == "FinSet") d.chain = false;
    else fail(t.loc, "diagrams go into Ch or FinSet");
    body([&] {
      const Token key = peek();
      const std::string k = ident("at or on");
      if (k == "at") {
        const std::string obj = ident("an object");
        expect_sym(":");
        if (d.chain) {
          d.chain_at.push_back({obj, complex_ref()});
        } else {
          SetAt s{obj, {}};
          expect_sym("{");
          skip_newlines();
          if (!is_sym("}")) list([&] { s.elements.push_back(element()); });
          skip_newlines();
          expect_sym("}");
          d.set_at.push_back(std::move(s));
        }
      } else if (k == "on") {
        PathNames arrow = path();
        expect_sym(":");
        skip_newlines();
        if (d.chain) {
          ChainOn on{arrow, std::nullopt, {}, key.loc};
          if (is_sym("[")) {
            on.single = matrix();
          } else {
            list([&] {
              const int deg = degree();
              expect_sym(":");
              on.per_degree[deg] = matrix();
            });
          }
          d.chain_on.push_back(std::move(on));
        } else {
          SetOn on{arrow, {}, key.loc};
          list([&] {
            std::string x = element();
            expect_sym("->");
            on.map.emplace_back(std::move(x), element());
          });
          d.set_on.push_back(std::move(on));
        }
      } else {
        fail(key.loc, "unknown diagram clause '" + k + "'");
      }
    });
    return d;
  }

  FunctorDecl functor() {
    FunctorDecl d;
    d.loc = next().loc;
    d.name = ident();
    expect_sym(":");
    d.source = ident("a category");
    expect_sym("->");
    d.target = ident("a category");
    body([&] {
      std::string lhs = ident("an object or arrow");
      expect_sym("=>");
      d.maps.emplace_back(std::move(lhs), path());
    });
    return d;
  }

  WeightDecl weight() {
    WeightDecl d;
    d.loc = next().loc;
    d.name = ident();
    expect_sym("=");
    const Token k = peek();
    d.kind = ident("nerve, point or comma");
    if (d.kind != "nerve" && d.kind != "point" && d.kind != "comma") fail(k.loc, "unknown weight '" + d.kind + "'");
    expect_sym("(");
    d.argument = ident();
    expect_sym(")");
    return d;
  }

  LetDecl let() {
    LetDecl d;
    d.loc = next().loc;
    d.name = ident();
    expect_sym("=");
    const Token k = peek();
    d.op = ident("an operation");
    if (d.op != "op" && d.op != "product" && d.op != "hom" && d.op != "restrict") {
      fail(k.loc, "unknown operation '" + d.op + "'");
    }
    expect_sym("(");
    list([&] { d.arguments.push_back(ident()); });
    expect_sym(")");
    return d;
  }
};

std::string join(const std::vector<std::string>& v, const char* sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
  return s;
}

std::string dotted(const PathNames& p) { return join(p, "."); }

std::string print_matrix(const MatrixLit& m) {
  std::string s = "[";
  for (std::size_t r = 0; r < m.rows.size(); ++r) {
    s += r ? ", [" : "[";
    for (std::size_t c = 0; c < m.rows[r].size(); ++c) s += (c ? ", " : "") + m.rows[r][c].get_str();
    s += "]";
  }
  return s + "]";
}

std::string print_ref(const ComplexRef& r) {
  switch (r.kind) {
    case ComplexRef::Kind::kZero:
      return "0";
    case ComplexRef::Kind::kFree:
      return "Q" + (r.rank == 1 ? std::string() : "^" + std::to_string(r.rank)) + "[" + std::to_string(r.degree) + "]";
    case ComplexRef::Kind::kNamed:
      break;
  }
  return r.name;
}

struct Printer {
  std::ostringstream out;

  void operator()(const CategoryDecl& d) {
    out << "category " << d.name << " {\n";
    out << "  objects: " << join(d.objects, ", ") << "\n";
    if (!d.arrows.empty()) {
      std::vector<std::string> a;
      for (const auto& g : d.arrows) a.push_back(g.name + ": " + g.src + " -> " + g.tgt);
      out << "  arrows: " << join(a, ", ") << "\n";
    }
    if (!d.relations.empty()) {
      std::vector<std::string> r;
      for (const auto& [l, rr] : d.relations) r.push_back(dotted(l) + " = " + dotted(rr));
      out << "  relations: " << join(r, ", ") << "\n";
    }
    if (d.table) {
      std::vector<std::string> t;
      for (const auto& e : *d.table) t.push_back(e.left + "." + e.right + " = " + e.result);
      out << "  table: " << join(t, ", ") << "\n";
    }
    out << "}\n";
  }
  void operator()(const ComplexDecl& d) {
    out << "complex " << d.name << " {\n";
    out << "  degrees: " << d.lo << ".." << d.hi << "\n";
    for (const auto& [k, n] : d.dims) out << "  dim " << k << ": " << n << "\n";
    for (const auto& [k, m] : d.diffs) out << "  d " << k << ": " << print_matrix(m) << "\n";
    out << "}\n";
  }
  void operator()(const DiagramDecl& d) {
    out << "diagram " << d.name << " over " << d.category << " into " << (d.chain ? "Ch" : "FinSet") << " {\n";
    for (const auto& a : d.chain_at) out << "  at " << a.object << ": " << print_ref(a.value) << "\n";
    for (const auto& a : d.set_at) out << "  at " << a.object << ": {" << join(a.elements, ", ") << "}\n";
    for (const auto& o : d.chain_on) {
      out << "  on " << dotted(o.arrow) << ": ";
      if (o.single) {
        out << print_matrix(*o.single);
      } else {
        std::vector<std::string> parts;
        for (const auto& [k, m] : o.per_degree) parts.push_back(std::to_string(k) + ": " + print_matrix(m));
        out << join(parts, ", ");
      }
      out << "\n";
    }
    for (const auto& o : d.set_on) {
      std::vector<std::string> parts;
      for (const auto& [x, y] : o.map) parts.push_back(x + " -> " + y);
      out << "  on " << dotted(o.arrow) << ": " << join(parts, ", ") << "\n";
    }
    out << "}\n";
  }
  void operator()(const FunctorDecl& d) {
    out << "functor " << d.name << " : " << d.source << " -> " << d.target << " {\n";
    for (const auto& [l, r] : d.maps) out << "  " << l << " => " << dotted(r) << "\n";
    out << "}\n";
  }
  void operator()(const WeightDecl& d) { out << "weight " << d.name << " = " << d.kind << "(" << d.argument << ")\n"; }
  void operator()(const LetDecl& d) { out << "let " << d.name << " = " << d.op << "(" << join(d.arguments, ", ") << ")\n"; }
};

}  // namespace

Module parse_module(std::string_view text) { return Parser(lex(text)).module(); }

std::string print_module(const Module& m) {
  Printer p;
  for (std::size_t i = 0; i < m.decls.size(); ++i) {
    if (i) p.out << "\n";
    std::visit(p, m.decls[i]);
  }
  return p.out.str();
}

}  // namespace hle
