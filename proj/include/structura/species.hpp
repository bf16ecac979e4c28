#pragma once

// Species of structure: main base sets, bound auxiliary carriers, a
// typification and an axiom. Models are carriers plus a structure of the
// type satisfying the axiom.

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "structura/echelon.hpp"
#include "structura/error.hpp"
#include "structura/evaluate.hpp"
#include "structura/finite_map.hpp"
#include "structura/formula.hpp"
#include "structura/limits.hpp"
#include "structura/model_search.hpp"
#include "structura/properties.hpp"
#include "structura/transport.hpp"

namespace structura {

/// "No counterexample to transportability on canonical carriers up to `bound`."
struct Certificate {
  std::size_t bound = 0;
  bool verified = false;

  friend bool operator==(const Certificate&, const Certificate&) = default;
};

struct Species {
  std::string name;
  Typification typing;
  Formula axiom;
  std::string symbol = "s";
  std::optional<Certificate> certificate;

  std::size_t n_main() const { return typing.n_main(); }

  friend bool operator==(const Species&, const Species&) = default;
};

struct Model {
  std::vector<FiniteSet> mains;
  Value structure;

  friend bool operator==(const Model&, const Model&) = default;
};

/// Typification membership and the axiom.
inline bool check_model(const Species& sigma, std::span<const FiniteSet> mains, const Value& s,
                        const Limits& limits = {}) {
  const auto carriers = sigma.typing.carriers(mains);
  if (!contains_structure(sigma.typing.type(), carriers, s)) return false;
  return evaluate(sigma.axiom, sigma.typing, mains, s, sigma.symbol, limits);
}

inline bool check_model(const Species& sigma, const Model& m, const Limits& limits = {}) {
  return check_model(sigma, m.mains, m.structure, limits);
}

/// Every labeled model on the given carriers, in canonical order of structures.
inline std::vector<Model> enumerate_models(const Species& sigma, std::span<const FiniteSet> mains,
                                           const Limits& limits = {}) {
  std::vector<Value> found;
  search_models(sigma.typing, sigma.symbol, sigma.axiom, mains, limits, [&](const Value& s) { found.push_back(s); });
  std::sort(found.begin(), found.end());
  std::vector<Model> out;
  out.reserve(found.size());
  for (auto& s : found) out.push_back(Model{std::vector<FiniteSet>(mains.begin(), mains.end()), std::move(s)});
  return out;
}

/// Calls `visit` with each tuple (f1..fn), fi : from[i] -> to[i] bijective, in
/// lexicographic order of the per-carrier enumerations; stops when `visit`
/// returns true. Returns whether it stopped early.
template <typename Visit>
bool for_each_bijection_tuple(std::span<const FiniteSet> from, std::span<const FiniteSet> to, const Limits& limits,
                              Visit&& visit) {
  std::vector<std::vector<FiniteMap>> choices;
  for (std::size_t i = 0; i < from.size(); ++i) choices.push_back(enumerate_bijections(from[i], to[i], limits));
  std::vector<std::size_t> digits(from.size(), 0);
  std::vector<FiniteMap> tuple;
  while (true) {
    tuple.clear();
    for (std::size_t i = 0; i < digits.size(); ++i) tuple.push_back(choices[i][digits[i]]);
    if (visit(std::as_const(tuple))) return true;
    std::size_t pos = digits.size();
    while (pos > 0) {
      --pos;
      if (++digits[pos] < choices[pos].size()) break;
      digits[pos] = 0;
      if (pos == 0) return false;
    }
    if (digits.empty()) return false;
  }
}

/// First bijection tuple carrying m1's structure onto m2's, or nothing.
inline std::optional<std::vector<FiniteMap>> are_isomorphic(const Species& sigma, const Model& m1, const Model& m2,
                                                            const Limits& limits = {}) {
  if (m1.mains.size() != sigma.n_main() || m2.mains.size() != sigma.n_main()) {
    throw Error(ErrorCode::ArityMismatch, "models do not match the species' main base sets");
  }
  for (std::size_t i = 0; i < m1.mains.size(); ++i) {
    if (m1.mains[i].size() != m2.mains[i].size()) return std::nullopt;
  }
  const auto carriers = sigma.typing.carriers(m1.mains);
  if (!contains_structure(sigma.typing.type(), carriers, m1.structure)) {
    throw Error(ErrorCode::NotAStructureOfType, "first model's structure is not of the species' type");
  }
  std::optional<std::vector<FiniteMap>> witness;
  for_each_bijection_tuple(m1.mains, m2.mains, limits, [&](const std::vector<FiniteMap>& fs) {
    if (extend_at(sigma.typing.type(), sigma.typing.maps(fs), m1.structure) == m2.structure) {
      witness = fs;
      return true;
    }
    return false;
  });
  return witness;
}

/// Partition of `models` into isomorphism classes (indices, in first-seen order).
inline std::vector<std::vector<std::size_t>> isomorphism_classes(const Species& sigma, std::span<const Model> models,
                                                                 const Limits& limits = {}) {
  std::vector<std::vector<std::size_t>> classes;
  for (std::size_t i = 0; i < models.size(); ++i) {
    bool placed = false;
    for (auto& cls : classes) {
      if (are_isomorphic(sigma, models[cls.front()], models[i], limits)) {
        cls.push_back(i);
        placed = true;
        break;
      }
    }
    if (!placed) classes.push_back({i});
  }
  return classes;
}

/// Equivalence relation, partial order, graph, monoid, group, topological
/// space, ordered semigroup (operation plus order) and a vector space over
/// the two-element field carried as fixed auxiliary sets.
inline const std::vector<Species>& builtin_species() {
  static const std::vector<Species> catalogue = [] {
    using namespace build;
    using namespace fragments;
    const Term s = sym("s");
    const Term x = set("X1");
    const Typification rel_t(types::rel(), 1);
    const Typification op_t(types::op(), 1);
    const Typification top_t(types::topology(), 1);

    std::vector<Species> out;
    out.push_back({"equivalence_relation", rel_t, land(reflexive(s, x), symmetric(s, x), transitive(s, x)), "s", std::nullopt});
    out.push_back({"partial_order", rel_t, land(reflexive(s, x), antisymmetric(s, x), transitive(s, x)), "s", std::nullopt});
    out.push_back({"graph", rel_t, land(irreflexive(s, x), symmetric(s, x)), "s", std::nullopt});
    out.push_back({"monoid", op_t, land(operation(s, x), associative_law(s, x), has_neutral_law(s, x)), "s", std::nullopt});
    out.push_back({"group", op_t, land(operation(s, x), associative_law(s, x), has_inverses_law(s, x)), "s", std::nullopt});
    out.push_back({"topological_space", top_t, topology_axioms(s, x), "s", std::nullopt});

    {
      const Typification t(EchelonType::prod(types::op(), types::rel()), 1);
      const Term op = fst(s);
      const Term le = snd(s);
      const Formula monotone = all(
          {"x", "y", "z"}, x,
          imp(in(tup(v("x"), v("y")), le), land(in(tup(app(op, v("x"), v("z")), app(op, v("y"), v("z"))), le),
                                                 in(tup(app(op, v("z"), v("x")), app(op, v("z"), v("y"))), le))));
      out.push_back({"ordered_semigroup", t,
                     conj_all({operation(op, x), associative_law(op, x), reflexive(le, x), antisymmetric(le, x),
                               transitive(le, x), monotone}), "s", std::nullopt});
    }

    {
      const Value k = Value::set({num(0), num(1)});
      auto table = [](auto fn) {
        std::vector<Value> rows;
        for (int a = 0; a <= 1; ++a) {
          for (int b = 0; b <= 1; ++b) rows.push_back(pair(pair(num(a), num(b)), num(fn(a, b))));
        }
        return Value::set(std::move(rows));
      };
      const Value kadd = table([](int a, int b) { return (a + b) % 2; });
      const Value kmul = table([](int a, int b) { return a * b; });
      const auto e = EchelonType::proj(1, 4);
      const auto scalars = EchelonType::proj(2, 4);
      const auto add_t = EchelonType::pow(EchelonType::prod(EchelonType::prod(e, e), e));
      const auto mul_t = EchelonType::pow(EchelonType::prod(EchelonType::prod(scalars, e), e));
      const Typification t(EchelonType::prod(add_t, mul_t), 1, {{"K", k}, {"Kadd", kadd}, {"Kmul", kmul}});
      const Term a = fst(s);
      const Term m = snd(s);
      const Term kk = set("K");
      out.push_back(
          {"gf2_vector_space", t,
           conj_all({operation(a, x), associative_law(a, x), commutative_law(a, x), has_inverses_law(a, x),
                     function_from(m, times(kk, x), x),
                     all({"v"}, x, eq(app(m, c(num(1)), v("v")), v("v"))),
                     all({"l"}, kk,
                         all({"u", "v"}, x,
                             eq(app(m, v("l"), app(a, v("u"), v("v"))), app(a, app(m, v("l"), v("u")), app(m, v("l"), v("v")))))),
                     all({"l", "k"}, kk,
                         all({"v"}, x,
                             eq(app(m, app(set("Kadd"), v("l"), v("k")), v("v")),
                                app(a, app(m, v("l"), v("v")), app(m, v("k"), v("v")))))),
                     all({"l", "k"}, kk,
                         all({"v"}, x,
                             eq(app(m, app(set("Kmul"), v("l"), v("k")), v("v")), app(m, v("l"), app(m, v("k"), v("v"))))))}), "s", std::nullopt});
    }
    return out;
  }();
  return catalogue;
}

inline const Species& builtin_species(const std::string& name) {
  for (const auto& s : builtin_species()) {
    if (s.name == name) return s;
  }
  throw Error(ErrorCode::UnboundSymbol, "no built-in species named " + name);
}

}  // namespace structura
