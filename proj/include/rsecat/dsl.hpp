#pragma once
// The line-oriented .cdga model language:
//
//   algebra <name> [truncated <N>]
//   generator <name> degree <k>
//   relation <monomial> = 0
//   d <gen> = <polynomial>
//   morphism <name> : <A> -> <B>
//   <gen> |-> <polynomial>
//   window <lo> <hi>
//   depth <d>
//
// `#` starts a comment. Generators before any `algebra` line belong to an algebra
// named A. The target name Q denotes the ground field unless declared.

#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rsecat/morphism.hpp"

namespace rsecat {

struct Position {
  int line = 0;
  int column = 0;
};

class ParseError : public Error {
 public:
  ParseError(Position p, const std::string& msg)
      : Error(std::to_string(p.line) + ":" + std::to_string(p.column) + ": " + msg), pos_(p) {}
  int line() const noexcept { return pos_.line; }
  int column() const noexcept { return pos_.column; }

 private:
  Position pos_;
};

struct AlgebraDecl {
  std::string name;
  std::optional<int> truncated;
  std::vector<Generator> generators;  // declaration order
  std::vector<std::vector<std::pair<std::string, int>>> relations;
  std::vector<std::pair<std::string, NamedPolynomial>> differential;
  Position pos;

  const Generator* find(const std::string& g) const {
    for (const auto& x : generators)
      if (x.name == g) return &x;
    return nullptr;
  }
};

struct MorphismDecl {
  std::string name, source, target;
  std::vector<std::pair<std::string, NamedPolynomial>> images;
  Position pos;
};

struct ModelDocument {
  std::vector<AlgebraDecl> algebras;
  std::vector<MorphismDecl> morphisms;
  std::optional<std::pair<int, int>> window;
  std::optional<int> depth;

  // Validated objects, filled by build_document.
  std::map<std::string, CdgaPtr> built_algebras;
  std::map<std::string, std::shared_ptr<const CdgaMorphism>> built_morphisms;

  CdgaPtr algebra(const std::string& name) const {
    auto it = built_algebras.find(name);
    if (it == built_algebras.end()) throw InvalidArgument("no algebra named " + name);
    return it->second;
  }
  CdgaPtr first_algebra() const {
    if (algebras.empty()) throw InvalidArgument("model declares no algebra");
    return algebra(algebras.front().name);
  }
  const CdgaMorphism& morphism(const std::string& name) const {
    auto it = built_morphisms.find(name);
    if (it == built_morphisms.end()) throw InvalidArgument("no morphism named " + name);
    return *it->second;
  }
};

namespace detail {

inline bool same_poly(const NamedPolynomial& a, const NamedPolynomial& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].coeff != b[i].coeff || a[i].factors != b[i].factors) return false;
  return true;
}

template <class T>
bool same_assignments(const std::vector<std::pair<std::string, T>>& a, const std::vector<std::pair<std::string, T>>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].first != b[i].first || !same_poly(a[i].second, b[i].second)) return false;
  return true;
}

}  // namespace detail

/// Structural equality of declarations (positions and built objects ignored).
inline bool operator==(const ModelDocument& a, const ModelDocument& b) {
  if (a.window != b.window || a.depth != b.depth) return false;
  if (a.algebras.size() != b.algebras.size() || a.morphisms.size() != b.morphisms.size()) return false;
  for (std::size_t i = 0; i < a.algebras.size(); ++i) {
    const auto &x = a.algebras[i], &y = b.algebras[i];
    if (x.name != y.name || x.truncated != y.truncated || x.relations != y.relations) return false;
    if (x.generators.size() != y.generators.size()) return false;
    for (std::size_t j = 0; j < x.generators.size(); ++j)
      if (x.generators[j].name != y.generators[j].name || x.generators[j].degree != y.generators[j].degree)
        return false;
    if (!detail::same_assignments(x.differential, y.differential)) return false;
  }
  for (std::size_t i = 0; i < a.morphisms.size(); ++i) {
    const auto &x = a.morphisms[i], &y = b.morphisms[i];
    if (x.name != y.name || x.source != y.source || x.target != y.target) return false;
    if (!detail::same_assignments(x.images, y.images)) return false;
  }
  return true;
}

namespace detail {

struct Token {
  enum Kind { ident, number, symbol, end } kind = end;
  std::string text;
  int column = 0;
};

class LineLexer {
 public:
  LineLexer(const std::string& line, int line_no) : line_no_(line_no) {
    std::size_t i = 0;
    while (i < line.size()) {
      unsigned char c = static_cast<unsigned char>(line[i]);
      if (std::isspace(c)) {
        ++i;
        continue;
      }
      Token t;
      t.column = static_cast<int>(i) + 1;
      if (std::isalpha(c) || c == '_') {
        std::size_t j = i;
        while (j < line.size() && (std::isalnum(static_cast<unsigned char>(line[j])) || line[j] == '_')) ++j;
        t.kind = Token::ident;
        t.text = line.substr(i, j - i);
        i = j;
      } else if (std::isdigit(c)) {
        std::size_t j = i;
        while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j]))) ++j;
        t.kind = Token::number;
        t.text = line.substr(i, j - i);
        i = j;
      } else if (line.compare(i, 3, "|->") == 0) {
        t.kind = Token::symbol, t.text = "|->", i += 3;
      } else if (line.compare(i, 2, "->") == 0) {
        t.kind = Token::symbol, t.text = "->", i += 2;
      } else if (std::string("=:*^+-/").find(static_cast<char>(c)) != std::string::npos) {
        t.kind = Token::symbol, t.text = std::string(1, static_cast<char>(c)), ++i;
      } else {
        throw ParseError({line_no, t.column}, std::string("unexpected character '") + static_cast<char>(c) + "'");
      }
      toks_.push_back(std::move(t));
    }
    end_col_ = static_cast<int>(line.size()) + 1;
  }

  const Token& peek(std::size_t ahead = 0) const {
    static const Token eol{Token::end, "", 0};
    return pos_ + ahead < toks_.size() ? toks_[pos_ + ahead] : eol;
  }
  bool at_end() const { return pos_ >= toks_.size(); }
  bool has_symbol(const std::string& s) const {
    for (const auto& t : toks_)
      if (t.kind == Token::symbol && t.text == s) return true;
    return false;
  }
  Position here() const { return {line_no_, at_end() ? end_col_ : toks_[pos_].column}; }

  Token next() {
    if (at_end()) throw ParseError(here(), "unexpected end of line");
    return toks_[pos_++];
  }
  std::string ident(const std::string& what) {
    if (peek().kind != Token::ident) throw ParseError(here(), "expected " + what);
    return next().text;
  }
  int integer(const std::string& what) {
    bool neg = false;
    Position p = here();
    if (peek().kind == Token::symbol && peek().text == "-") next(), neg = true;
    if (peek().kind != Token::number) throw ParseError(p, "expected " + what);
    std::string s = next().text;
    if (s.size() > 6) throw ParseError(p, what + " out of range");
    int v = std::stoi(s);
    return neg ? -v : v;
  }
  void expect(const std::string& sym) {
    if (peek().kind != Token::symbol || peek().text != sym) throw ParseError(here(), "expected '" + sym + "'");
    next();
  }
  void keyword(const std::string& kw) {
    if (peek().kind != Token::ident || peek().text != kw) throw ParseError(here(), "expected '" + kw + "'");
    next();
  }
  void finish() {
    if (!at_end()) throw ParseError(here(), "unexpected '" + peek().text + "'");
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  int line_no_;
  int end_col_ = 1;
};

struct RawFactor {
  std::string name;
  int exp = 1;
  Position pos;
};
struct RawTerm {
  Rational coeff = 1;
  std::vector<RawFactor> factors;
};

inline Rational parse_coefficient(LineLexer& lx) {
  Position p = lx.here();
  Rational c(lx.next().text);
  if (lx.peek().kind == Token::symbol && lx.peek().text == "/") {
    lx.next();
    if (lx.peek().kind != Token::number) throw ParseError(lx.here(), "expected denominator");
    Rational den(lx.next().text);
    if (den == 0) throw ParseError(p, "zero denominator");
    c /= den;
  }
  return c;
}

inline RawFactor parse_factor(LineLexer& lx) {
  RawFactor f;
  f.pos = lx.here();
  f.name = lx.ident("generator name");
  if (lx.peek().kind == Token::symbol && lx.peek().text == "^") {
    lx.next();
    Position p = lx.here();
    f.exp = lx.integer("exponent");
    if (f.exp < 1) throw ParseError(p, "exponent must be positive");
  }
  return f;
}

/// Terms of a polynomial up to the end of the line.
inline std::vector<RawTerm> parse_polynomial(LineLexer& lx) {
  std::vector<RawTerm> out;
  bool first = true;
  while (true) {
    Rational sign = 1;
    if (lx.peek().kind == Token::symbol && (lx.peek().text == "+" || lx.peek().text == "-")) {
      sign = lx.next().text == "-" ? -1 : 1;
    } else if (!first) {
      break;
    }
    RawTerm t;
    if (lx.peek().kind == Token::number) {
      t.coeff = parse_coefficient(lx);
      if (lx.peek().kind == Token::symbol && lx.peek().text == "*") {
        lx.next();
        t.factors.push_back(parse_factor(lx));
      }
    } else {
      t.factors.push_back(parse_factor(lx));
    }
    while (lx.peek().kind == Token::symbol && lx.peek().text == "*") {
      lx.next();
      t.factors.push_back(parse_factor(lx));
    }
    t.coeff *= sign;
    out.push_back(std::move(t));
    first = false;
    if (lx.at_end()) break;
  }
  return out;
}

/// Resolves factors against an algebra declaration: merges repeated generators,
/// orders factors by (degree, name), combines like terms and drops zeros.
/// Returns the normalized polynomial and the common degree (or nullopt if empty).
inline std::pair<NamedPolynomial, std::optional<int>> normalize(const std::vector<RawTerm>& raw, const AlgebraDecl* alg,
                                                                int line) {
  NamedPolynomial out;
  std::optional<int> degree;
  for (const auto& t : raw) {
    std::map<std::pair<int, std::string>, int> exps;
    int deg = 0;
    for (const auto& f : t.factors) {
      const Generator* g = alg ? alg->find(f.name) : nullptr;
      if (!g) throw ParseError(f.pos, "unknown generator '" + f.name + "'");
      int& e = exps[{g->degree, g->name}];
      e += f.exp;
      if (g->degree % 2 != 0 && e > 1)
        throw ParseError(f.pos, "odd-degree generator '" + f.name + "' with exponent > 1");
      deg += g->degree * f.exp;
    }
    if (t.coeff == 0) continue;
    Position p = t.factors.empty() ? Position{line, 1} : t.factors.front().pos;
    if (degree && *degree != deg) throw ParseError(p, "polynomial is not homogeneous");
    degree = deg;
    NamedTerm nt;
    nt.coeff = t.coeff;
    for (const auto& [k, e] : exps) nt.factors.emplace_back(k.second, e);
    bool merged = false;
    for (auto& o : out)
      if (o.factors == nt.factors) {
        o.coeff += nt.coeff;
        merged = true;
        break;
      }
    if (!merged) out.push_back(std::move(nt));
  }
  NamedPolynomial kept;
  for (auto& t : out)
    if (t.coeff != 0) kept.push_back(std::move(t));
  return {std::move(kept), degree};
}

}  // namespace detail

inline ModelDocument& build_document(ModelDocument& doc);

/// Parses and validates a model; all failures are ParseErrors with a position.
inline ModelDocument parse_model(const std::string& text) {
  using detail::LineLexer;
  ModelDocument doc;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  // Indices, since the declaration vectors grow while parsing.
  std::optional<std::size_t> alg_index, mor_index;
  auto cur_alg_ptr = [&]() -> AlgebraDecl* { return alg_index ? &doc.algebras[*alg_index] : nullptr; };
  auto cur_mor_ptr = [&]() -> MorphismDecl* { return mor_index ? &doc.morphisms[*mor_index] : nullptr; };
  auto algebra_named = [&](const std::string& n) -> AlgebraDecl* {
    for (auto& a : doc.algebras)
      if (a.name == n) return &a;
    return nullptr;
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    LineLexer lx(line, line_no);
    if (lx.at_end()) continue;
    Position start = lx.here();
    AlgebraDecl* cur_alg = cur_alg_ptr();
    MorphismDecl* cur_mor = cur_mor_ptr();

    if (lx.has_symbol("|->")) {
      if (!cur_mor) throw ParseError(start, "mapping outside a morphism");
      const AlgebraDecl* src = algebra_named(cur_mor->source);
      Position gp = lx.here();
      std::string g = lx.ident("generator name");
      if (!src->find(g)) throw ParseError(gp, "unknown generator '" + g + "' of " + src->name);
      for (const auto& [n, p] : cur_mor->images)
        if (n == g) throw ParseError(gp, "generator '" + g + "' mapped twice");
      lx.expect("|->");
      const AlgebraDecl* tgt = algebra_named(cur_mor->target);
      static const AlgebraDecl ground{"Q", {}, {}, {}, {}, {}};
      auto [poly, deg] = detail::normalize(detail::parse_polynomial(lx), tgt ? tgt : &ground, line_no);
      lx.finish();
      if (deg && *deg != src->find(g)->degree)
        throw ParseError(gp, "image of '" + g + "' must have degree " + std::to_string(src->find(g)->degree));
      cur_mor->images.emplace_back(g, std::move(poly));
      continue;
    }

    std::string kw = lx.ident("a keyword");
    if (kw == "algebra") {
      Position np = lx.here();
      std::string name = lx.ident("algebra name");
      if (algebra_named(name)) throw ParseError(np, "algebra '" + name + "' declared twice");
      AlgebraDecl a;
      a.name = name;
      a.pos = start;
      if (!lx.at_end()) {
        lx.keyword("truncated");
        Position tp = lx.here();
        a.truncated = lx.integer("truncation degree");
        if (*a.truncated < 0) throw ParseError(tp, "truncation degree must be >= 0");
      }
      lx.finish();
      doc.algebras.push_back(std::move(a));
      alg_index = doc.algebras.size() - 1;
      mor_index.reset();
    } else if (kw == "generator") {
      if (!cur_mor && !cur_alg) {
        doc.algebras.push_back(AlgebraDecl{"A", {}, {}, {}, {}, start});
        alg_index = 0;
        cur_alg = &doc.algebras.back();
      }
      if (cur_mor) throw ParseError(start, "generator inside a morphism block");
      Position np = lx.here();
      std::string name = lx.ident("generator name");
      lx.keyword("degree");
      Position dp = lx.here();
      int deg = lx.integer("degree");
      lx.finish();
      if (cur_alg->find(name)) throw ParseError(np, "generator '" + name + "' declared twice");
      if (deg < 2) throw ParseError(dp, "generator '" + name + "' has degree " + std::to_string(deg) +
                                            ": simple connectivity requires degree >= 2");
      cur_alg->generators.push_back({name, deg});
    } else if (kw == "relation") {
      if (!cur_alg || cur_mor) throw ParseError(start, "relation outside an algebra");
      Position mp = lx.here();
      auto raw = detail::parse_polynomial(lx);
      lx.expect("=");
      Position zp = lx.here();
      if (lx.peek().kind != detail::Token::number || lx.peek().text != "0") throw ParseError(zp, "expected '0'");
      lx.next();
      lx.finish();
      if (raw.size() != 1 || raw[0].coeff != 1 || raw[0].factors.empty())
        throw ParseError(mp, "relation must be a single monomial");
      // odd squares vanish already; reject them like any odd exponent > 1
      auto [poly, deg] = detail::normalize(raw, cur_alg, line_no);
      cur_alg->relations.push_back(poly.front().factors);
    } else if (kw == "d") {
      if (!cur_alg || cur_mor) throw ParseError(start, "differential outside an algebra");
      Position gp = lx.here();
      std::string g = lx.ident("generator name");
      const Generator* gen = cur_alg->find(g);
      if (!gen) throw ParseError(gp, "unknown generator '" + g + "'");
      for (const auto& [n, p] : cur_alg->differential)
        if (n == g) throw ParseError(gp, "differential of '" + g + "' given twice");
      lx.expect("=");
      auto [poly, deg] = detail::normalize(detail::parse_polynomial(lx), cur_alg, line_no);
      lx.finish();
      if (deg && *deg != gen->degree + 1)
        throw ParseError(gp, "d " + g + " must have degree " + std::to_string(gen->degree + 1));
      cur_alg->differential.emplace_back(g, std::move(poly));
    } else if (kw == "morphism") {
      MorphismDecl m;
      m.pos = start;
      Position np = lx.here();
      m.name = lx.ident("morphism name");
      for (const auto& o : doc.morphisms)
        if (o.name == m.name) throw ParseError(np, "morphism '" + m.name + "' declared twice");
      lx.expect(":");
      Position sp = lx.here();
      m.source = lx.ident("source algebra");
      lx.expect("->");
      Position tp = lx.here();
      m.target = lx.ident("target algebra");
      lx.finish();
      if (!algebra_named(m.source)) throw ParseError(sp, "unknown algebra '" + m.source + "'");
      if (!algebra_named(m.target) && m.target != "Q") throw ParseError(tp, "unknown algebra '" + m.target + "'");
      doc.morphisms.push_back(std::move(m));
      mor_index = doc.morphisms.size() - 1;
    } else if (kw == "window") {
      Position p = lx.here();
      int lo = lx.integer("window low degree");
      int hi = lx.integer("window high degree");
      lx.finish();
      if (lo > 0 || hi < 2) throw ParseError(p, "window must satisfy lo <= 0 and hi >= 2");
      doc.window = std::make_pair(lo, hi);
    } else if (kw == "depth") {
      Position p = lx.here();
      int d = lx.integer("depth");
      lx.finish();
      if (d < 1) throw ParseError(p, "depth must be >= 1");
      doc.depth = d;
    } else {
      throw ParseError(start, "unknown keyword '" + kw + "'");
    }
  }
  return build_document(doc);
}

/// Builds and validates every algebra and morphism (d² = 0, ideal preserved,
/// morphism compatibility). Errors are reported at the declaration.
inline ModelDocument& build_document(ModelDocument& doc) {
  doc.built_algebras.clear();
  doc.built_morphisms.clear();
  int window_hi = doc.window ? doc.window->second : 24;
  for (const auto& a : doc.algebras) {
    try {
      std::map<std::string, NamedPolynomial> d;
      for (const auto& [g, p] : a.differential) d[g] = p;
      std::vector<std::pair<std::vector<std::string>, int>> trunc;
      if (a.truncated) {
        std::vector<std::string> all;
        for (const auto& g : a.generators) all.push_back(g.name);
        trunc.emplace_back(all, *a.truncated);
      }
      doc.built_algebras[a.name] = make_cdga(a.name, a.generators, d, a.relations, trunc, window_hi);
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(a.pos, "algebra " + a.name + ": " + e.what());
    }
  }
  for (const auto& m : doc.morphisms) {
    try {
      CdgaPtr src = doc.algebra(m.source);
      CdgaPtr tgt = m.target == "Q" && !doc.built_algebras.count("Q") ? ground_field() : doc.algebra(m.target);
      std::map<std::string, NamedPolynomial> images;
      for (const auto& [g, p] : m.images) images[g] = p;
      doc.built_morphisms[m.name] =
          std::make_shared<const CdgaMorphism>(CdgaMorphism::from_named(m.name, src, tgt, images));
    } catch (const Error& e) {
      throw ParseError(m.pos, "morphism " + m.name + ": " + e.what());
    }
  }
  return doc;
}

namespace detail {

inline std::string format_poly(const NamedPolynomial& p) {
  if (p.empty()) return "0";
  std::string s;
  for (const auto& t : p) {
    std::string mono;
    for (const auto& [n, e] : t.factors) {
      if (!mono.empty()) mono += "*";
      mono += e == 1 ? n : n + "^" + std::to_string(e);
    }
    Rational c = t.coeff;
    bool neg = c < 0;
    if (neg) c = -c;
    std::string term;
    if (mono.empty()) term = c.get_str();
    else if (c == 1) term = mono;
    else term = c.get_str() + "*" + mono;
    if (s.empty()) s = neg ? "-" + term : term;
    else s += neg ? " - " + term : " + " + term;
  }
  return s;
}

}  // namespace detail

/// Canonical text of a document; parse_model(print_model(d)) == d.
inline std::string print_model(const ModelDocument& doc) {
  std::ostringstream out;
  if (doc.window) out << "window " << doc.window->first << " " << doc.window->second << "\n";
  if (doc.depth) out << "depth " << *doc.depth << "\n";
  for (const auto& a : doc.algebras) {
    out << "algebra " << a.name;
    if (a.truncated) out << " truncated " << *a.truncated;
    out << "\n";
    for (const auto& g : a.generators) out << "generator " << g.name << " degree " << g.degree << "\n";
    for (const auto& r : a.relations) out << "relation " << detail::format_poly({NamedTerm{1, r}}) << " = 0\n";
    for (const auto& [g, p] : a.differential) out << "d " << g << " = " << detail::format_poly(p) << "\n";
  }
  for (const auto& m : doc.morphisms) {
    out << "morphism " << m.name << " : " << m.source << " -> " << m.target << "\n";
    for (const auto& [g, p] : m.images) out << g << " |-> " << detail::format_poly(p) << "\n";
  }
  return out.str();
}

}  // namespace rsecat
