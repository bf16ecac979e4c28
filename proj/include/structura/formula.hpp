#pragma once

// First-order axiom language over finite interpretations.
//
// Terms denote Values: bound variables, constants, pairs, application of a
// functional pair-set, pair projections, set-forming P(t) and t1 * t2, base
// set symbols and the structure symbol. Formulas are the usual connectives
// plus bounded quantifiers whose domains are set-valued terms.

#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "structura/error.hpp"
#include "structura/value.hpp"

namespace structura {

class Term {
 public:
  enum class Kind { Var, Const, Pair, Apply, Fst, Snd, PowSet, ProdSet, BaseSet, Structure };

  static Term var(std::string name) { return Term(Kind::Var, std::move(name)); }
  static Term constant(Value v) { return Term(std::make_shared<Node>(Node{Kind::Const, {}, std::move(v), {}})); }
  static Term pair(Term a, Term b) { return Term(Kind::Pair, {}, {std::move(a), std::move(b)}); }
  /// f(arg); f must denote a functional set of pairs.
  static Term apply(Term f, Term arg) { return Term(Kind::Apply, {}, {std::move(f), std::move(arg)}); }
  static Term fst(Term t) { return Term(Kind::Fst, {}, {std::move(t)}); }
  static Term snd(Term t) { return Term(Kind::Snd, {}, {std::move(t)}); }
  static Term powset(Term t) { return Term(Kind::PowSet, {}, {std::move(t)}); }
  static Term prodset(Term a, Term b) { return Term(Kind::ProdSet, {}, {std::move(a), std::move(b)}); }
  static Term base_set(std::string name) { return Term(Kind::BaseSet, std::move(name)); }
  static Term structure(std::string name) { return Term(Kind::Structure, std::move(name)); }

  Kind kind() const noexcept { return node_->kind; }
  const std::string& name() const noexcept { return node_->name; }
  const Value& constant_value() const noexcept { return node_->constant; }
  const std::vector<Term>& args() const noexcept { return node_->args; }
  const Term& arg(std::size_t i) const { return node_->args.at(i); }

  friend bool operator==(const Term& a, const Term& b) {
    if (a.node_ == b.node_) return true;
    return a.kind() == b.kind() && a.name() == b.name() && a.constant_value() == b.constant_value() &&
           a.args() == b.args();
  }

 private:
  struct Node {
    Kind kind;
    std::string name;
    Value constant;
    std::vector<Term> args;
  };
  Term(Kind kind, std::string name, std::vector<Term> args = {})
      : node_(std::make_shared<Node>(Node{kind, std::move(name), Value(), std::move(args)})) {}
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

class Formula {
 public:
  enum class Kind { True, False, Not, And, Or, Implies, Iff, ForAll, Exists, Eq, Member };

  static Formula truth() { return Formula(Kind::True); }
  static Formula falsity() { return Formula(Kind::False); }
  static Formula negation(Formula f) { return Formula(Kind::Not, {}, {}, {std::move(f)}); }
  static Formula conj(Formula a, Formula b) { return Formula(Kind::And, {}, {}, {std::move(a), std::move(b)}); }
  static Formula disj(Formula a, Formula b) { return Formula(Kind::Or, {}, {}, {std::move(a), std::move(b)}); }
  static Formula implies(Formula a, Formula b) { return Formula(Kind::Implies, {}, {}, {std::move(a), std::move(b)}); }
  static Formula iff(Formula a, Formula b) { return Formula(Kind::Iff, {}, {}, {std::move(a), std::move(b)}); }
  static Formula forall(std::string var, Term domain, Formula body) {
    return Formula(Kind::ForAll, std::move(var), {std::move(domain)}, {std::move(body)});
  }
  static Formula exists(std::string var, Term domain, Formula body) {
    return Formula(Kind::Exists, std::move(var), {std::move(domain)}, {std::move(body)});
  }
  static Formula eq(Term a, Term b) { return Formula(Kind::Eq, {}, {std::move(a), std::move(b)}); }
  static Formula member(Term element, Term set) { return Formula(Kind::Member, {}, {std::move(element), std::move(set)}); }

  Kind kind() const noexcept { return node_->kind; }
  /// Bound variable of a quantifier.
  const std::string& var() const noexcept { return node_->var; }
  /// Quantifier domain, or the operands of Eq / Member.
  const std::vector<Term>& terms() const noexcept { return node_->terms; }
  const Term& term(std::size_t i) const { return node_->terms.at(i); }
  const std::vector<Formula>& subs() const noexcept { return node_->subs; }
  const Formula& sub(std::size_t i) const { return node_->subs.at(i); }
  const Term& domain() const { return term(0); }
  const Formula& body() const { return sub(0); }

  friend bool operator==(const Formula& a, const Formula& b) {
    if (a.node_ == b.node_) return true;
    return a.kind() == b.kind() && a.var() == b.var() && a.terms() == b.terms() && a.subs() == b.subs();
  }

 private:
  struct Node {
    Kind kind;
    std::string var;
    std::vector<Term> terms;
    std::vector<Formula> subs;
  };
  explicit Formula(Kind kind, std::string var = {}, std::vector<Term> terms = {}, std::vector<Formula> subs = {})
      : node_(std::make_shared<Node>(Node{kind, std::move(var), std::move(terms), std::move(subs)})) {}
  std::shared_ptr<const Node> node_;
};

/// Conjunction of a list, left-nested; the empty list is `true`.
inline Formula conj_all(const std::vector<Formula>& parts) {
  if (parts.empty()) return Formula::truth();
  Formula out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) out = Formula::conj(out, parts[i]);
  return out;
}

/// Top-level conjuncts, flattening nested And nodes left to right.
inline std::vector<Formula> conjuncts(const Formula& f) {
  if (f.kind() != Formula::Kind::And) return {f};
  auto out = conjuncts(f.sub(0));
  auto rest = conjuncts(f.sub(1));
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

namespace detail {

inline void collect_symbols(const Term& t, std::set<std::string>& base_sets, std::set<std::string>& structures) {
  if (t.kind() == Term::Kind::BaseSet) base_sets.insert(t.name());
  if (t.kind() == Term::Kind::Structure) structures.insert(t.name());
  for (const auto& a : t.args()) collect_symbols(a, base_sets, structures);
}

inline void collect_symbols(const Formula& f, std::set<std::string>& base_sets, std::set<std::string>& structures) {
  for (const auto& t : f.terms()) collect_symbols(t, base_sets, structures);
  for (const auto& s : f.subs()) collect_symbols(s, base_sets, structures);
}

}  // namespace detail

struct FreeSymbols {
  std::set<std::string> base_sets;
  std::set<std::string> structures;
};

inline FreeSymbols free_symbols(const Formula& f) {
  FreeSymbols out;
  detail::collect_symbols(f, out.base_sets, out.structures);
  return out;
}

/// Symbol renaming: base-set and structure names only; bound variables are untouched.
using Substitution = std::map<std::string, std::string>;

namespace detail {

inline Term rename_term(const Term& t, const Substitution& sub, const std::vector<std::string>& bound) {
  switch (t.kind()) {
    case Term::Kind::BaseSet:
    case Term::Kind::Structure: {
      const auto it = sub.find(t.name());
      if (it == sub.end()) return t;
      if (std::find(bound.begin(), bound.end(), it->second) != bound.end()) {
        throw Error(ErrorCode::CaptureDetected,
                    "renaming " + t.name() + " to " + it->second + " would be captured by a bound variable");
      }
      return t.kind() == Term::Kind::BaseSet ? Term::base_set(it->second) : Term::structure(it->second);
    }
    case Term::Kind::Var:
    case Term::Kind::Const: return t;
    case Term::Kind::Pair: return Term::pair(rename_term(t.arg(0), sub, bound), rename_term(t.arg(1), sub, bound));
    case Term::Kind::Apply: return Term::apply(rename_term(t.arg(0), sub, bound), rename_term(t.arg(1), sub, bound));
    case Term::Kind::Fst: return Term::fst(rename_term(t.arg(0), sub, bound));
    case Term::Kind::Snd: return Term::snd(rename_term(t.arg(0), sub, bound));
    case Term::Kind::PowSet: return Term::powset(rename_term(t.arg(0), sub, bound));
    case Term::Kind::ProdSet:
      return Term::prodset(rename_term(t.arg(0), sub, bound), rename_term(t.arg(1), sub, bound));
  }
  return t;
}

inline Formula rename_formula(const Formula& f, const Substitution& sub, std::vector<std::string>& bound) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::True:
    case K::False: return f;
    case K::Not: return Formula::negation(rename_formula(f.sub(0), sub, bound));
    case K::And: return Formula::conj(rename_formula(f.sub(0), sub, bound), rename_formula(f.sub(1), sub, bound));
    case K::Or: return Formula::disj(rename_formula(f.sub(0), sub, bound), rename_formula(f.sub(1), sub, bound));
    case K::Implies:
      return Formula::implies(rename_formula(f.sub(0), sub, bound), rename_formula(f.sub(1), sub, bound));
    case K::Iff: return Formula::iff(rename_formula(f.sub(0), sub, bound), rename_formula(f.sub(1), sub, bound));
    case K::ForAll:
    case K::Exists: {
      Term domain = rename_term(f.domain(), sub, bound);
      bound.push_back(f.var());
      Formula body = rename_formula(f.body(), sub, bound);
      bound.pop_back();
      return f.kind() == K::ForAll ? Formula::forall(f.var(), std::move(domain), std::move(body))
                                   : Formula::exists(f.var(), std::move(domain), std::move(body));
    }
    case K::Eq: return Formula::eq(rename_term(f.term(0), sub, bound), rename_term(f.term(1), sub, bound));
    case K::Member: return Formula::member(rename_term(f.term(0), sub, bound), rename_term(f.term(1), sub, bound));
  }
  return f;
}

}  // namespace detail

/// Capture-avoiding renaming of free symbols. The substitution must be
/// injective on the symbols of `f` after renaming; a target name bound by an
/// enclosing quantifier raises CaptureDetected.
inline Formula rename_formula(const Formula& f, const Substitution& sub) {
  const FreeSymbols symbols = free_symbols(f);
  std::map<std::string, std::string> image;  // renamed name -> original
  auto record = [&](const std::string& original) {
    const auto it = sub.find(original);
    const std::string& renamed = it == sub.end() ? original : it->second;
    const auto [pos, inserted] = image.emplace(renamed, original);
    if (!inserted && pos->second != original) {
      throw Error(ErrorCode::CaptureDetected,
                  "renaming merges the symbols " + pos->second + " and " + original + " into " + renamed);
    }
  };
  for (const auto& name : symbols.base_sets) record(name);
  for (const auto& name : symbols.structures) record(name);
  std::vector<std::string> bound;
  return detail::rename_formula(f, sub, bound);
}

/// Terse builders for writing formulas in C++.
namespace build {

inline Term v(std::string name) { return Term::var(std::move(name)); }
inline Term set(std::string name) { return Term::base_set(std::move(name)); }
inline Term sym(std::string name) { return Term::structure(std::move(name)); }
inline Term c(Value value) { return Term::constant(std::move(value)); }
inline Term tup(Term a, Term b) { return Term::pair(std::move(a), std::move(b)); }
inline Term app(Term f, Term x) { return Term::apply(std::move(f), std::move(x)); }
inline Term app(Term f, Term x, Term y) { return Term::apply(std::move(f), Term::pair(std::move(x), std::move(y))); }
inline Term fst(Term t) { return Term::fst(std::move(t)); }
inline Term snd(Term t) { return Term::snd(std::move(t)); }
inline Term pw(Term t) { return Term::powset(std::move(t)); }
inline Term times(Term a, Term b) { return Term::prodset(std::move(a), std::move(b)); }

inline Formula tt() { return Formula::truth(); }
inline Formula ff() { return Formula::falsity(); }
inline Formula no(Formula f) { return Formula::negation(std::move(f)); }
inline Formula land(Formula a, Formula b) { return Formula::conj(std::move(a), std::move(b)); }
inline Formula land(Formula a, Formula b, Formula c) { return land(land(std::move(a), std::move(b)), std::move(c)); }
inline Formula lor(Formula a, Formula b) { return Formula::disj(std::move(a), std::move(b)); }
inline Formula imp(Formula a, Formula b) { return Formula::implies(std::move(a), std::move(b)); }
inline Formula iff(Formula a, Formula b) { return Formula::iff(std::move(a), std::move(b)); }
inline Formula eq(Term a, Term b) { return Formula::eq(std::move(a), std::move(b)); }
inline Formula neq(Term a, Term b) { return no(eq(std::move(a), std::move(b))); }
inline Formula in(Term a, Term b) { return Formula::member(std::move(a), std::move(b)); }

/// forall x1 in d. forall x2 in d. ... body
inline Formula all(std::initializer_list<std::string> vars, const Term& domain, Formula body) {
  std::vector<std::string> names(vars);
  for (auto it = names.rbegin(); it != names.rend(); ++it) body = Formula::forall(*it, domain, std::move(body));
  return body;
}

inline Formula some(std::initializer_list<std::string> vars, const Term& domain, Formula body) {
  std::vector<std::string> names(vars);
  for (auto it = names.rbegin(); it != names.rend(); ++it) body = Formula::exists(*it, domain, std::move(body));
  return body;
}

}  // namespace build

}  // namespace structura
