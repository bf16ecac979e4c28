#pragma once

// Recursive-descent parser for values, echelon types, formulas and
// declaration files.
//
//   file      := { 'type' NAME '=' type ';' | species | property }
//   species   := 'species' NAME '{' 'mains' INT ';' { 'aux' NAME '=' value ';' }
//                'typing' NAME 'in' type ';' 'axiom' formula ';'
//                [ 'certificate' INT [ 'refuted' ] ';' ] '}'
//   property  := 'property' NAME '{' ... 'formula' formula ';' '}'
//   type      := tprod [ '@' INT ]
//   tprod     := tatom { '*' tatom }                    left-assoc
//   tatom     := 'pr'INT | 'P' '(' tprod ')' | '(' tprod ')' | alias
//   formula   := imp { '<->' imp }                      left-assoc
//   imp       := or [ '->' imp ]                        right-assoc
//   or        := and { '|' and }
//   and       := unary { '&' unary }
//   unary     := '!' unary | quant | 'true' | 'false' | '(' formula ')' | atom
//   quant     := ('forall' | 'exists') NAME { ',' NAME } 'in' term '.' formula
//   atom      := term ( '=' | '!=' | 'in' ) term
//   term      := postfix { '*' postfix }                left-assoc
//   postfix   := primary { '(' term [ ',' term ] ')' }  f(a, b) applies f to (a, b)
//   primary   := NAME | INT | '{' values '}' | '[' value ']' | '(' term [ ',' term ] ')'
//              | 'P' '(' term ')' | 'fst' '(' term ')' | 'snd' '(' term ')'
//   value     := INT | NAME | '(' value ',' value ')' | '{' [ item { ',' item } ] '}'
//   item      := value | INT '..' INT

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "structura/dsl/lexer.hpp"
#include "structura/echelon.hpp"
#include "structura/error.hpp"
#include "structura/formula.hpp"
#include "structura/properties.hpp"
#include "structura/species.hpp"
#include "structura/transport.hpp"
#include "structura/value.hpp"

namespace structura::dsl {

struct TypeAlias {
  std::string name;
  EchelonType type;

  friend bool operator==(const TypeAlias&, const TypeAlias&) = default;
};

/// Contents of one source file, in declaration order per kind.
struct Declarations {
  std::vector<TypeAlias> types;
  std::vector<Species> species;
  std::vector<PropertySpec> properties;

  friend bool operator==(const Declarations&, const Declarations&) = default;
};

/// Words that cannot name a bound variable, base set or structure.
inline bool is_reserved(std::string_view word) {
  static const std::set<std::string_view> words = {"forall", "exists", "in", "true", "false", "P", "fst", "snd"};
  return words.contains(word);
}

/// `pr` followed by a positive decimal index.
inline std::optional<std::size_t> projection_index(std::string_view word) {
  if (word.size() < 3 || word.substr(0, 2) != "pr" || word[2] == '0') return std::nullopt;
  std::size_t index = 0;
  for (char c : word.substr(2)) {
    if (c < '0' || c > '9') return std::nullopt;
    index = index * 10 + static_cast<std::size_t>(c - '0');
    if (index > 1'000'000) return std::nullopt;
  }
  return index;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(tokenize(text)) {}

  bool at_end() const { return peek().kind == Tok::End; }
  void expect_end() {
    if (!at_end()) fail("unexpected " + show(peek()), {describe(Tok::End)});
  }

  // ---- values

  Value value() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Int: return Value::integer(next().number);
      case Tok::Ident: return Value::atom(next().text);
      case Tok::LParen: {
        next();
        Value a = value();
        expect(Tok::Comma);
        Value b = value();
        expect(Tok::RParen);
        return Value::pair(std::move(a), std::move(b));
      }
      case Tok::LBrace: return set_literal();
      default: fail("expected a value, found " + show(t), {"integer", "identifier", "'('", "'{'"});
    }
  }

  // ---- types

  /// `required` fixes the arity (a species' mains plus aux); otherwise the
  /// declared `@n` wins and the largest projection index is the fallback.
  EchelonType type(const std::map<std::string, EchelonType>& aliases = {},
                   std::optional<std::size_t> required = std::nullopt) {
    const SourcePosition start = peek().pos;
    TNode root = tprod(aliases);
    std::optional<std::size_t> declared;
    SourcePosition at_pos = start;
    if (peek().kind == Tok::At) {
      at_pos = next().pos;
      const Token& n = expect(Tok::Int);
      if (n.number < 1) throw ParseError(ErrorCode::ArityError, n.pos, "arity must be positive");
      declared = static_cast<std::size_t>(n.number);
    }
    if (required && declared && *declared != *required) {
      throw ParseError(ErrorCode::ArityError, at_pos,
                       "declared arity " + std::to_string(*declared) + " but the typing houses " +
                           std::to_string(*required) + " base sets");
    }
    const std::size_t arity = declared ? *declared : required ? *required : std::max<std::size_t>(max_index(root), 1);
    check_indices(root, arity);
    return build(root, arity);
  }

  // ---- formulas

  void bind_symbols(std::vector<std::string> set_names, std::string symbol) {
    set_names_ = std::move(set_names);
    symbol_ = std::move(symbol);
    scope_.clear();
  }

  Formula formula() {
    Formula f = implication();
    while (peek().kind == Tok::DoubleArrow) {
      next();
      f = Formula::iff(std::move(f), implication());
    }
    return f;
  }

  Term term() {
    Term t = postfix();
    while (peek().kind == Tok::Star) {
      next();
      t = Term::prodset(std::move(t), postfix());
    }
    return t;
  }

  // ---- declarations

  Declarations file() {
    Declarations out;
    std::map<std::string, EchelonType> aliases;
    std::set<std::string> names;
    while (!at_end()) {
      const Token& kw = peek();
      if (kw.kind != Tok::Ident) fail("expected a declaration, found " + show(kw), {"'type'", "'species'", "'property'"});
      if (kw.text == "type") {
        next();
        const Token& name = identifier("type name");
        if (aliases.contains(name.text) || projection_index(name.text) || name.text == "P") {
          throw ParseError(ErrorCode::SyntaxError, name.pos, "type name " + name.text + " is already taken",
                           {"new type name"});
        }
        expect(Tok::Eq);
        EchelonType t = type(aliases);
        expect(Tok::Semi);
        aliases.emplace(name.text, t);
        out.types.push_back(TypeAlias{name.text, std::move(t)});
      } else if (kw.text == "species" || kw.text == "property") {
        const bool is_species = kw.text == "species";
        next();
        const Token& name = identifier(is_species ? "species name" : "property name");
        if (!names.insert(name.text).second) {
          throw ParseError(ErrorCode::SyntaxError, name.pos, "duplicate declaration " + name.text, {"new name"});
        }
        Block b = block(aliases, is_species);
        if (is_species) {
          out.species.push_back(
              Species{name.text, std::move(b.typing), std::move(b.formula), std::move(b.symbol), b.certificate});
        } else {
          out.properties.push_back(PropertySpec{name.text, std::move(b.typing), std::move(b.formula), std::move(b.symbol)});
        }
      } else {
        fail("expected a declaration, found " + show(kw), {"'type'", "'species'", "'property'"});
      }
    }
    return out;
  }

 private:
  // Type syntax tree, built before the arity is known.
  struct TNode {
    enum class Kind { Proj, Pow, Prod, Alias } kind = Kind::Proj;
    std::size_t index = 0;
    SourcePosition pos;
    std::vector<TNode> kids;
    std::optional<EchelonType> alias;
  };

  struct Block {
    Typification typing;
    Formula formula;
    std::string symbol;
    std::optional<Certificate> certificate;
  };

  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }

  static std::string show(const Token& t) {
    if (t.kind == Tok::End) return describe(Tok::End);
    return "'" + t.text + "'";
  }

  [[noreturn]] void fail(const std::string& detail, std::vector<std::string> expected) const {
    throw ParseError(ErrorCode::SyntaxError, peek().pos, detail, std::move(expected));
  }

  const Token& expect(Tok kind) {
    if (peek().kind != kind) fail("expected " + describe(kind) + ", found " + show(peek()), {describe(kind)});
    return next();
  }

  void keyword(std::string_view word) {
    if (peek().kind != Tok::Ident || peek().text != word) {
      fail("expected '" + std::string(word) + "', found " + show(peek()), {"'" + std::string(word) + "'"});
    }
    next();
  }

  const Token& identifier(const std::string& role) {
    if (peek().kind != Tok::Ident) fail("expected " + role + ", found " + show(peek()), {role});
    return next();
  }

  Value set_literal() {
    expect(Tok::LBrace);
    std::vector<Value> elems;
    if (peek().kind != Tok::RBrace) {
      while (true) {
        if (peek().kind == Tok::Int && peek(1).kind == Tok::DotDot) {
          const std::int64_t lo = next().number;
          next();
          const Token& hi = expect(Tok::Int);
          if (hi.number - lo > 1'000'000) throw ParseError(ErrorCode::SizeExceeded, hi.pos, "range too long");
          for (std::int64_t k = lo; k <= hi.number; ++k) elems.push_back(Value::integer(k));
        } else {
          elems.push_back(value());
        }
        if (peek().kind != Tok::Comma) break;
        next();
      }
    }
    if (peek().kind != Tok::RBrace) fail("expected ',' or '}', found " + show(peek()), {"','", "'}'"});
    next();
    return Value::set(std::move(elems));
  }

  TNode tprod(const std::map<std::string, EchelonType>& aliases) {
    TNode t = tatom(aliases);
    while (peek().kind == Tok::Star) {
      next();
      TNode r = tatom(aliases);
      TNode p;
      p.kind = TNode::Kind::Prod;
      p.pos = t.pos;
      p.kids.push_back(std::move(t));
      p.kids.push_back(std::move(r));
      t = std::move(p);
    }
    return t;
  }

  TNode tatom(const std::map<std::string, EchelonType>& aliases) {
    const Token& t = peek();
    TNode out;
    out.pos = t.pos;
    if (t.kind == Tok::LParen) {
      next();
      TNode inner = tprod(aliases);
      expect(Tok::RParen);
      return inner;
    }
    if (t.kind == Tok::Ident) {
      if (t.text == "P" && peek(1).kind == Tok::LParen) {
        next();
        next();
        out.kind = TNode::Kind::Pow;
        out.kids.push_back(tprod(aliases));
        expect(Tok::RParen);
        return out;
      }
      if (auto index = projection_index(t.text)) {
        next();
        out.kind = TNode::Kind::Proj;
        out.index = *index;
        return out;
      }
      if (auto it = aliases.find(t.text); it != aliases.end()) {
        next();
        out.kind = TNode::Kind::Alias;
        out.alias = it->second;
        return out;
      }
      throw ParseError(ErrorCode::UnboundSymbol, t.pos, "unknown type name " + t.text);
    }
    fail("expected a type, found " + show(t), {"'pr<i>'", "'P'", "'('", "type name"});
  }

  static std::size_t max_index(const TNode& t) {
    switch (t.kind) {
      case TNode::Kind::Proj: return t.index;
      case TNode::Kind::Alias: return t.alias->max_index();
      default: {
        std::size_t m = 0;
        for (const auto& k : t.kids) m = std::max(m, max_index(k));
        return m;
      }
    }
  }

  static void check_indices(const TNode& t, std::size_t arity) {
    if (max_index(t) <= arity) return;
    if (t.kind == TNode::Kind::Proj || t.kind == TNode::Kind::Alias) {
      throw ParseError(ErrorCode::ArityError, t.pos,
                       "projection index " + std::to_string(max_index(t)) + " exceeds arity " + std::to_string(arity));
    }
    for (const auto& k : t.kids) check_indices(k, arity);
  }

  static EchelonType build(const TNode& t, std::size_t arity) {
    switch (t.kind) {
      case TNode::Kind::Proj: return EchelonType::proj(t.index, arity);
      case TNode::Kind::Alias: return t.alias->with_arity(arity);
      case TNode::Kind::Pow: return EchelonType::pow(build(t.kids[0], arity));
      case TNode::Kind::Prod: return EchelonType::prod(build(t.kids[0], arity), build(t.kids[1], arity));
    }
    return EchelonType::proj(1, arity);
  }

  Block block(const std::map<std::string, EchelonType>& aliases, bool is_species) {
    expect(Tok::LBrace);
    keyword("mains");
    const Token& n = expect(Tok::Int);
    if (n.number < 1 || n.number > 64) {
      throw ParseError(ErrorCode::SyntaxError, n.pos, "mains must be between 1 and 64", {"positive integer"});
    }
    const auto n_main = static_cast<std::size_t>(n.number);
    expect(Tok::Semi);

    std::vector<std::string> names;
    for (std::size_t i = 0; i < n_main; ++i) names.push_back(main_set_name(i));
    std::vector<AuxSet> aux;
    while (peek().kind == Tok::Ident && peek().text == "aux") {
      next();
      const Token& name = identifier("auxiliary set name");
      if (is_reserved(name.text) || std::find(names.begin(), names.end(), name.text) != names.end()) {
        throw ParseError(ErrorCode::SyntaxError, name.pos, "auxiliary set name " + name.text + " is already taken",
                         {"new set name"});
      }
      expect(Tok::Eq);
      const Token& at_value = peek();
      Value carrier = value();
      if (!carrier.is_set()) {
        throw ParseError(ErrorCode::SyntaxError, at_value.pos, "auxiliary carrier must be a set", {"'{'"});
      }
      expect(Tok::Semi);
      names.push_back(name.text);
      aux.push_back(AuxSet{name.text, std::move(carrier)});
    }

    keyword("typing");
    const Token& sym = identifier("structure symbol");
    if (is_reserved(sym.text) || std::find(names.begin(), names.end(), sym.text) != names.end()) {
      throw ParseError(ErrorCode::SyntaxError, sym.pos, "structure symbol " + sym.text + " is already taken",
                       {"new symbol name"});
    }
    keyword("in");
    EchelonType t = type(aliases, n_main + aux.size());
    expect(Tok::Semi);
    Typification typing(std::move(t), n_main, std::move(aux));

    keyword(is_species ? "axiom" : "formula");
    bind_symbols(names, sym.text);
    Formula f = formula();
    expect(Tok::Semi);

    std::optional<Certificate> certificate;
    if (is_species && peek().kind == Tok::Ident && peek().text == "certificate") {
      next();
      const Token& k = expect(Tok::Int);
      if (k.number < 0) throw ParseError(ErrorCode::SyntaxError, k.pos, "bound must be non-negative", {"integer"});
      bool verified = true;
      if (peek().kind == Tok::Ident && peek().text == "refuted") {
        next();
        verified = false;
      }
      expect(Tok::Semi);
      certificate = Certificate{static_cast<std::size_t>(k.number), verified};
    }
    if (peek().kind != Tok::RBrace) {
      std::vector<std::string> expected = {"'}'"};
      if (is_species && !certificate) expected.insert(expected.begin(), "'certificate'");
      fail("expected '}', found " + show(peek()), std::move(expected));
    }
    next();
    return Block{std::move(typing), std::move(f), sym.text, certificate};
  }

  // ---- formulas

  Formula implication() {
    Formula f = disjunction();
    if (peek().kind == Tok::Arrow) {
      next();
      return Formula::implies(std::move(f), implication());
    }
    return f;
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (peek().kind == Tok::Bar) {
      next();
      f = Formula::disj(std::move(f), conjunction());
    }
    return f;
  }

  Formula conjunction() {
    Formula f = unary();
    while (peek().kind == Tok::Amp) {
      next();
      f = Formula::conj(std::move(f), unary());
    }
    return f;
  }

  Formula unary() {
    const Token& t = peek();
    if (t.kind == Tok::Bang) {
      next();
      return Formula::negation(unary());
    }
    if (t.kind == Tok::Ident) {
      if (t.text == "forall" || t.text == "exists") return quantifier();
      if (t.text == "true") {
        next();
        return Formula::truth();
      }
      if (t.text == "false") {
        next();
        return Formula::falsity();
      }
    }
    if (t.kind == Tok::LParen) {
      // Either a parenthesized formula or an atom whose left term starts
      // with '('; keep whichever reading got further.
      const std::size_t save = pos_;
      const std::size_t depth = scope_.size();
      std::optional<ParseError> as_atom;
      try {
        return atom();
      } catch (const ParseError& e) {
        as_atom = e;
      }
      pos_ = save;
      scope_.resize(depth);
      try {
        next();
        Formula f = formula();
        expect(Tok::RParen);
        return f;
      } catch (const ParseError& e) {
        if (further(*as_atom, e)) throw *as_atom;
        throw;
      }
    }
    return atom();
  }

  static bool further(const ParseError& a, const ParseError& b) {
    const auto& p = a.position();
    const auto& q = b.position();
    return p.line > q.line || (p.line == q.line && p.column > q.column);
  }

  Formula quantifier() {
    const bool universal = next().text == "forall";
    std::vector<std::string> vars;
    while (true) {
      const Token& v = identifier("variable name");
      if (is_reserved(v.text)) {
        throw ParseError(ErrorCode::SyntaxError, v.pos, v.text + " is reserved", {"variable name"});
      }
      vars.push_back(v.text);
      if (peek().kind != Tok::Comma) break;
      next();
    }
    keyword("in");
    Term domain = term();
    expect(Tok::Dot);
    for (const auto& v : vars) scope_.push_back(v);
    Formula body = formula();
    scope_.resize(scope_.size() - vars.size());
    for (auto it = vars.rbegin(); it != vars.rend(); ++it) {
      body = universal ? Formula::forall(*it, domain, std::move(body)) : Formula::exists(*it, domain, std::move(body));
    }
    return body;
  }

  Formula atom() {
    Term a = term();
    const Token& op = peek();
    if (op.kind == Tok::Eq) {
      next();
      return Formula::eq(std::move(a), term());
    }
    if (op.kind == Tok::NotEq) {
      next();
      return Formula::negation(Formula::eq(std::move(a), term()));
    }
    if (op.kind == Tok::Ident && op.text == "in") {
      next();
      return Formula::member(std::move(a), term());
    }
    fail("expected '=', '!=' or 'in', found " + show(op), {"'='", "'!='", "'in'", "'*'", "'('"});
  }

  // ---- terms

  Term postfix() {
    Term t = primary();
    while (peek().kind == Tok::LParen) {
      next();
      Term a = term();
      if (peek().kind == Tok::Comma) {
        next();
        Term b = term();
        a = Term::pair(std::move(a), std::move(b));
      }
      if (peek().kind != Tok::RParen) fail("expected ',' or ')', found " + show(peek()), {"','", "')'"});
      next();
      t = Term::apply(std::move(t), std::move(a));
    }
    return t;
  }

  Term primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Int: return Term::constant(Value::integer(next().number));
      case Tok::LBrace: return Term::constant(set_literal());
      case Tok::LBracket: {
        next();
        Value v = value();
        expect(Tok::RBracket);
        return Term::constant(std::move(v));
      }
      case Tok::LParen: {
        next();
        Term a = term();
        if (peek().kind == Tok::Comma) {
          next();
          Term b = term();
          a = Term::pair(std::move(a), std::move(b));
        }
        if (peek().kind != Tok::RParen) fail("expected ',' or ')', found " + show(peek()), {"','", "')'"});
        next();
        return a;
      }
      case Tok::Ident: {
        if (t.text == "P" || t.text == "fst" || t.text == "snd") {
          const std::string word = next().text;
          expect(Tok::LParen);
          Term a = term();
          expect(Tok::RParen);
          if (word == "P") return Term::powset(std::move(a));
          return word == "fst" ? Term::fst(std::move(a)) : Term::snd(std::move(a));
        }
        if (is_reserved(t.text)) fail("unexpected '" + t.text + "' in a term", {"term"});
        next();
        if (std::find(scope_.begin(), scope_.end(), t.text) != scope_.end()) return Term::var(t.text);
        if (std::find(set_names_.begin(), set_names_.end(), t.text) != set_names_.end()) return Term::base_set(t.text);
        if (t.text == symbol_) return Term::structure(t.text);
        throw ParseError(ErrorCode::UnboundSymbol, t.pos, "unbound symbol " + t.text);
      }
      default:
        fail("expected a term, found " + show(t),
             {"identifier", "integer", "'('", "'{'", "'['", "'P'", "'fst'", "'snd'"});
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<std::string> set_names_;
  std::string symbol_;
  std::vector<std::string> scope_;
};

inline Value parse_value(std::string_view text) {
  Parser p(text);
  Value v = p.value();
  p.expect_end();
  return v;
}

inline EchelonType parse_type(std::string_view text) {
  Parser p(text);
  EchelonType t = p.type();
  p.expect_end();
  return t;
}

/// A closed formula over the given base-set names and structure symbol.
inline Formula parse_formula(std::string_view text, std::vector<std::string> set_names, std::string symbol) {
  Parser p(text);
  p.bind_symbols(std::move(set_names), std::move(symbol));
  Formula f = p.formula();
  p.expect_end();
  return f;
}

inline Declarations parse_file(std::string_view text) {
  Parser p(text);
  return p.file();
}

/// The single species of `text` (type aliases may precede it).
inline Species parse_species(std::string_view text) {
  Declarations d = parse_file(text);
  if (d.species.size() != 1 || !d.properties.empty()) {
    throw ParseError(ErrorCode::SyntaxError, SourcePosition{1, 1},
                     "expected exactly one species declaration, found " + std::to_string(d.species.size()),
                     {"'species'"});
  }
  return std::move(d.species.front());
}

inline PropertySpec parse_property(std::string_view text) {
  Declarations d = parse_file(text);
  if (d.properties.size() != 1 || !d.species.empty()) {
    throw ParseError(ErrorCode::SyntaxError, SourcePosition{1, 1},
                     "expected exactly one property declaration, found " + std::to_string(d.properties.size()),
                     {"'property'"});
  }
  return std::move(d.properties.front());
}

}  // namespace structura::dsl
