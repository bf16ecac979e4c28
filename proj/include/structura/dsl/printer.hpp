#pragma once

// Canonical source text for types, terms, formulas and declarations.
// Parentheses are as few as the grammar allows, except that a quantifier is
// always parenthesized when it is an operand (its body would otherwise run
// to the end). parse(pretty(x)) == x.

#include <string>
#include <vector>

#include "structura/dsl/parser.hpp"
#include "structura/echelon.hpp"
#include "structura/formula.hpp"
#include "structura/value.hpp"

namespace structura::dsl {

namespace detail {

inline void type_body(const EchelonType& t, std::string& out) {
  switch (t.kind()) {
    case EchelonType::Kind::Proj: out += "pr" + std::to_string(t.index()); return;
    case EchelonType::Kind::Pow:
      out += "P(";
      type_body(t.inner(), out);
      out += ")";
      return;
    case EchelonType::Kind::Prod: {
      // Left-assoc '*': a product on the right needs parentheses; on the
      // left they are kept for readability and parse back the same.
      for (const auto* side : {&t.left(), &t.right()}) {
        const bool wrap = side->kind() == EchelonType::Kind::Prod;
        if (wrap) out += "(";
        type_body(*side, out);
        if (wrap) out += ")";
        if (side == &t.left()) out += " * ";
      }
      return;
    }
  }
}

// Term levels: 0 product, 1 application, 2 primary.
inline int term_level(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::ProdSet: return 0;
    case Term::Kind::Apply: return 1;
    default: return 2;
  }
}

inline void term(const Term& t, std::string& out, int min_level = 0) {
  const bool wrap = term_level(t) < min_level;
  if (wrap) out += "(";
  switch (t.kind()) {
    case Term::Kind::Var:
    case Term::Kind::BaseSet:
    case Term::Kind::Structure: out += t.name(); break;
    case Term::Kind::Const: {
      const Value& v = t.constant_value();
      if (v.is_int() || v.is_set()) {
        out += to_string(v);
      } else {
        out += "[" + to_string(v) + "]";
      }
      break;
    }
    case Term::Kind::Pair:
      out += "(";
      term(t.arg(0), out);
      out += ", ";
      term(t.arg(1), out);
      out += ")";
      break;
    case Term::Kind::Apply: {
      term(t.arg(0), out, 1);
      const Term& a = t.arg(1);
      out += "(";
      if (a.kind() == Term::Kind::Pair) {
        term(a.arg(0), out);
        out += ", ";
        term(a.arg(1), out);
      } else {
        term(a, out);
      }
      out += ")";
      break;
    }
    case Term::Kind::Fst:
    case Term::Kind::Snd:
    case Term::Kind::PowSet:
      out += t.kind() == Term::Kind::Fst ? "fst(" : t.kind() == Term::Kind::Snd ? "snd(" : "P(";
      term(t.arg(0), out);
      out += ")";
      break;
    case Term::Kind::ProdSet:
      term(t.arg(0), out, 0);
      out += " * ";
      term(t.arg(1), out, 1);
      break;
  }
  if (wrap) out += ")";
}

inline bool mentions(const Term& t, const std::string& var) {
  if (t.kind() == Term::Kind::Var) return t.name() == var;
  for (const auto& a : t.args()) {
    if (mentions(a, var)) return true;
  }
  return false;
}

// Formula levels, loosest first: 0 iff, 1 implies, 2 or, 3 and, 4 unary.
inline int level(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Iff: return 0;
    case Formula::Kind::Implies: return 1;
    case Formula::Kind::Or: return 2;
    case Formula::Kind::And: return 3;
    default: return 4;
  }
}

inline bool is_quantifier(const Formula& f) {
  return f.kind() == Formula::Kind::ForAll || f.kind() == Formula::Kind::Exists;
}

inline void formula(const Formula& f, std::string& out, int min_level, bool operand);

inline void binary(const Formula& f, std::string& out, const char* op, int lhs, int rhs) {
  formula(f.sub(0), out, lhs, true);
  out += op;
  formula(f.sub(1), out, rhs, true);
}

/// `operand`: something follows f or f is under a prefix operator, so a
/// quantifier there must be closed off.
inline void formula(const Formula& f, std::string& out, int min_level, bool operand) {
  const bool wrap = level(f) < min_level || (operand && is_quantifier(f));
  if (wrap) out += "(";
  switch (f.kind()) {
    case Formula::Kind::True: out += "true"; break;
    case Formula::Kind::False: out += "false"; break;
    case Formula::Kind::Eq:
    case Formula::Kind::Member:
      term(f.term(0), out);
      out += f.kind() == Formula::Kind::Eq ? " = " : " in ";
      term(f.term(1), out);
      break;
    case Formula::Kind::Not:
      if (f.sub(0).kind() == Formula::Kind::Eq) {
        term(f.sub(0).term(0), out);
        out += " != ";
        term(f.sub(0).term(1), out);
      } else {
        out += "!";
        formula(f.sub(0), out, 4, true);
      }
      break;
    case Formula::Kind::And: binary(f, out, " & ", 3, 4); break;
    case Formula::Kind::Or: binary(f, out, " | ", 2, 3); break;
    case Formula::Kind::Implies: binary(f, out, " -> ", 2, 1); break;
    case Formula::Kind::Iff: binary(f, out, " <-> ", 0, 1); break;
    case Formula::Kind::ForAll:
    case Formula::Kind::Exists: {
      out += f.kind() == Formula::Kind::ForAll ? "forall " : "exists ";
      std::vector<std::string> vars = {f.var()};
      const Formula* body = &f.body();
      while (body->kind() == f.kind() && body->domain() == f.domain()) {
        bool capture = false;
        for (const auto& v : vars) capture = capture || mentions(f.domain(), v);
        if (capture) break;
        vars.push_back(body->var());
        body = &body->body();
      }
      for (std::size_t i = 0; i < vars.size(); ++i) out += (i ? ", " : "") + vars[i];
      out += " in ";
      term(f.domain(), out);
      out += ". ";
      formula(*body, out, 0, false);
      break;
    }
  }
  if (wrap) out += ")";
}

inline void block_body(const Typification& typing, const std::string& symbol, std::string& out) {
  out += "  mains " + std::to_string(typing.n_main()) + ";\n";
  for (const auto& a : typing.aux()) out += "  aux " + a.name + " = " + to_string(a.carrier) + ";\n";
  out += "  typing " + symbol + " in ";
  type_body(typing.type(), out);
  out += " @" + std::to_string(typing.type().arity()) + ";\n";
}

// Only the left spine: "a & b & c" reads back left-nested.
inline void left_spine(const Formula& f, std::vector<Formula>& parts) {
  if (f.kind() == Formula::Kind::And) {
    left_spine(f.sub(0), parts);
    parts.push_back(f.sub(1));
  } else {
    parts.push_back(f);
  }
}

inline void axiom_lines(const Formula& f, std::string& out) {
  std::vector<Formula> parts;
  left_spine(f, parts);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += "\n    & ";
    formula(parts[i], out, i ? 4 : 3, parts.size() > 1);
  }
}

}  // namespace detail

inline std::string pretty(const EchelonType& t) {
  std::string out;
  detail::type_body(t, out);
  return out + " @" + std::to_string(t.arity());
}

inline std::string pretty(const Term& t) {
  std::string out;
  detail::term(t, out);
  return out;
}

inline std::string pretty(const Formula& f) {
  std::string out;
  detail::formula(f, out, 0, false);
  return out;
}

inline std::string pretty(const Species& s) {
  std::string out = "species " + s.name + " {\n";
  detail::block_body(s.typing, s.symbol, out);
  out += "  axiom ";
  detail::axiom_lines(s.axiom, out);
  out += ";\n";
  if (s.certificate) {
    out += "  certificate " + std::to_string(s.certificate->bound) + (s.certificate->verified ? "" : " refuted") + ";\n";
  }
  return out + "}\n";
}

inline std::string pretty(const PropertySpec& p) {
  std::string out = "property " + p.name + " {\n";
  detail::block_body(p.typing, p.symbol, out);
  out += "  formula ";
  detail::axiom_lines(p.formula, out);
  return out + ";\n}\n";
}

/// Aliases are not re-introduced: types print expanded, so the output is
/// aliases first, then species, then properties.
inline std::string pretty(const Declarations& d) {
  std::string out;
  for (const auto& a : d.types) out += "type " + a.name + " = " + pretty(a.type) + ";\n";
  for (const auto& s : d.species) out += (out.empty() ? "" : "\n") + pretty(s);
  for (const auto& p : d.properties) out += (out.empty() ? "" : "\n") + pretty(p);
  return out;
}

}  // namespace structura::dsl
