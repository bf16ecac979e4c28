#pragma once

// The built-in catalogue of transportable properties: relation properties,
// operation properties and topology properties, each a closed formula over
// its own typification.

#include <string>
#include <utility>
#include <vector>

#include "structura/echelon.hpp"
#include "structura/formula.hpp"
#include "structura/transport.hpp"

namespace structura {

struct PropertySpec {
  std::string name;
  Typification typing;
  Formula formula;
  /// Name of the structure symbol in `formula`.
  std::string symbol = "s";

  friend bool operator==(const PropertySpec&, const PropertySpec&) = default;
};

namespace types {

inline EchelonType rel(std::size_t arity = 1) {
  const auto p = EchelonType::proj(1, arity);
  return EchelonType::pow(EchelonType::prod(p, p));
}

/// P((X * X) * X): ternary relations, binary operations among them.
inline EchelonType op(std::size_t arity = 1) {
  const auto p = EchelonType::proj(1, arity);
  return EchelonType::pow(EchelonType::prod(EchelonType::prod(p, p), p));
}

inline EchelonType topology(std::size_t arity = 1) {
  return EchelonType::pow(EchelonType::pow(EchelonType::proj(1, arity)));
}

}  // namespace types

/// Formula fragments, parametrized by the term denoting the structure
/// component and the term denoting its carrier.
namespace fragments {

using namespace build;

inline Formula reflexive(const Term& r, const Term& x) { return all({"x"}, x, in(tup(v("x"), v("x")), r)); }

inline Formula irreflexive(const Term& r, const Term& x) { return all({"x"}, x, no(in(tup(v("x"), v("x")), r))); }

inline Formula symmetric(const Term& r, const Term& x) {
  return all({"x", "y"}, x, imp(in(tup(v("x"), v("y")), r), in(tup(v("y"), v("x")), r)));
}

inline Formula asymmetric(const Term& r, const Term& x) {
  return all({"x", "y"}, x, imp(in(tup(v("x"), v("y")), r), no(in(tup(v("y"), v("x")), r))));
}

inline Formula antisymmetric(const Term& r, const Term& x) {
  return all({"x", "y"}, x,
             imp(land(in(tup(v("x"), v("y")), r), in(tup(v("y"), v("x")), r)), eq(v("x"), v("y"))));
}

inline Formula transitive(const Term& r, const Term& x) {
  return all({"x", "y", "z"}, x,
             imp(land(in(tup(v("x"), v("y")), r), in(tup(v("y"), v("z")), r)), in(tup(v("x"), v("z")), r)));
}

/// f is a total function from `from` to `to`: every key has exactly one value.
inline Formula function_from(const Term& f, const Term& from, const Term& to) {
  return all({"p"}, from,
             some({"z"}, to, land(in(tup(v("p"), v("z")), f), all({"w"}, to, imp(in(tup(v("p"), v("w")), f), eq(v("w"), v("z")))))));
}

/// f is a binary operation on x. Member-only, so it can guard applications.
inline Formula operation(const Term& f, const Term& x) {
  return all({"x", "y"}, x,
             some({"z"}, x,
                  land(in(tup(tup(v("x"), v("y")), v("z")), f),
                       all({"w"}, x, imp(in(tup(tup(v("x"), v("y")), v("w")), f), eq(v("w"), v("z")))))));
}

inline Formula associative_law(const Term& f, const Term& x) {
  return all({"x", "y", "z"}, x, eq(app(f, app(f, v("x"), v("y")), v("z")), app(f, v("x"), app(f, v("y"), v("z")))));
}

inline Formula commutative_law(const Term& f, const Term& x) {
  return all({"x", "y"}, x, eq(app(f, v("x"), v("y")), app(f, v("y"), v("x"))));
}

inline Formula neutral(const Term& f, const Term& x, const std::string& e) {
  return all({"x"}, x, land(eq(app(f, v(e), v("x")), v("x")), eq(app(f, v("x"), v(e)), v("x"))));
}

inline Formula has_neutral_law(const Term& f, const Term& x) { return some({"e"}, x, neutral(f, x, "e")); }

inline Formula has_inverses_law(const Term& f, const Term& x) {
  return some({"e"}, x,
              land(neutral(f, x, "e"),
                   all({"x"}, x, some({"y"}, x, land(eq(app(f, v("x"), v("y")), v("e")), eq(app(f, v("y"), v("x")), v("e")))))));
}

/// mul(x, add(y, z)) = add(mul(x, y), mul(x, z))
inline Formula distributive_law(const Term& mul, const Term& add, const Term& x) {
  return all({"x", "y", "z"}, x,
             eq(app(mul, v("x"), app(add, v("y"), v("z"))), app(add, app(mul, v("x"), v("y")), app(mul, v("x"), v("z")))));
}

inline Formula topology_axioms(const Term& t, const Term& x) {
  const auto union_closed = all(
      {"U", "V"}, t,
      some({"W"}, t, all({"x"}, x, iff(in(v("x"), v("W")), lor(in(v("x"), v("U")), in(v("x"), v("V")))))));
  const auto intersection_closed = all(
      {"U", "V"}, t,
      some({"W"}, t, all({"x"}, x, iff(in(v("x"), v("W")), land(in(v("x"), v("U")), in(v("x"), v("V")))))));
  return land(land(in(c(Value::empty_set()), t), in(x, t)), land(union_closed, intersection_closed));
}

inline Formula hausdorff_law(const Term& t, const Term& x) {
  return all({"x", "y"}, x,
             imp(neq(v("x"), v("y")),
                 some({"U", "V"}, t,
                      land(land(in(v("x"), v("U")), in(v("y"), v("V"))),
                           all({"z"}, x, no(land(in(v("z"), v("U")), in(v("z"), v("V")))))))));
}

/// No open set other than {} and X has an open complement.
inline Formula connected_law(const Term& t, const Term& x) {
  return no(some({"U"}, t,
                 land(land(neq(v("U"), c(Value::empty_set())), neq(v("U"), x)),
                      some({"V"}, t, all({"x"}, x, iff(in(v("x"), v("V")), no(in(v("x"), v("U")))))))));
}

}  // namespace fragments

/// Relations (P(X*X)), operations (P((X*X)*X)), the distributive pair of
/// operations, and topologies (P(P(X))). "compact" is `true`: every cover of a
/// finite space already is finite.
inline const std::vector<PropertySpec>& builtin_properties() {
  static const std::vector<PropertySpec> catalogue = [] {
    using namespace build;
    using namespace fragments;
    const Term s = sym("s");
    const Term x = set("X1");
    const Typification rel_t(types::rel(), 1);
    const Typification op_t(types::op(), 1);
    const Typification top_t(types::topology(), 1);
    const Typification pair_t(EchelonType::prod(types::op(), types::op()), 1);
    std::vector<PropertySpec> out = {
        {"reflexive", rel_t, reflexive(s, x)},
        {"irreflexive", rel_t, irreflexive(s, x)},
        {"symmetric", rel_t, symmetric(s, x)},
        {"asymmetric", rel_t, asymmetric(s, x)},
        {"antisymmetric", rel_t, antisymmetric(s, x)},
        {"transitive", rel_t, transitive(s, x)},
        {"binary_operation", op_t, operation(s, x)},
        {"associative", op_t, land(operation(s, x), associative_law(s, x))},
        {"commutative", op_t, land(operation(s, x), commutative_law(s, x))},
        {"has_neutral", op_t, land(operation(s, x), has_neutral_law(s, x))},
        {"has_inverses", op_t, land(operation(s, x), has_inverses_law(s, x))},
        {"distributive_pair", pair_t,
         land(operation(fst(s), x), operation(snd(s), x), distributive_law(fst(s), snd(s), x))},
        {"topology", top_t, topology_axioms(s, x)},
        {"hausdorff", top_t, hausdorff_law(s, x)},
        {"connected", top_t, connected_law(s, x)},
        {"compact", top_t, tt()},
    };
    return out;
  }();
  return catalogue;
}

inline const PropertySpec& builtin_property(const std::string& name) {
  for (const auto& p : builtin_properties()) {
    if (p.name == name) return p;
  }
  throw Error(ErrorCode::UnboundSymbol, "no built-in property named " + name);
}

}  // namespace structura
