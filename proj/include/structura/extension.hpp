#pragma once

// Canonical extensions of maps: to subsets, to products, and along an
// arbitrary echelon type.

#include <span>
#include <string>
#include <vector>

#include "structura/echelon.hpp"
#include "structura/error.hpp"
#include "structura/finite_map.hpp"
#include "structura/limits.hpp"
#include "structura/sets.hpp"

namespace structura {

/// P<f>: P(X) -> P(Y), s |-> f[s].
inline FiniteMap pow_extend(const FiniteMap& f, const Limits& limits = {}) {
  const FiniteSet domain = powerset(f.domain(), limits);
  const FiniteSet codomain = powerset(f.codomain(), limits);
  std::vector<Value> images;
  images.reserve(domain.size());
  for (const auto& s : domain.elements()) images.push_back(image(f, s));
  return FiniteMap::from_images_unchecked(domain, codomain, std::move(images));
}

/// f1 * f2: (x1, x2) |-> (f1(x1), f2(x2)).
inline FiniteMap prod_extend(const FiniteMap& f1, const FiniteMap& f2, const Limits& limits = {}) {
  const FiniteSet domain = cartesian(f1.domain(), f2.domain(), limits);
  const FiniteSet codomain = cartesian(f1.codomain(), f2.codomain(), limits);
  std::vector<Value> images;
  images.reserve(domain.size());
  const auto xs = f1.domain().elements();
  const auto ys = f2.domain().elements();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = 0; j < ys.size(); ++j) images.push_back(Value::pair(f1.images()[i], f2.images()[j]));
  }
  return FiniteMap::from_images_unchecked(domain, codomain, std::move(images));
}

/// T<f1..fn>: T(X1..Xn) -> T(Y1..Yn), materialized.
inline FiniteMap echelon_extend(const EchelonType& t, std::span<const FiniteMap> fs, const Limits& limits = {}) {
  detail::check_arity(t, fs.size());
  auto go = [&](auto&& self, const EchelonType& n) -> FiniteMap {
    switch (n.kind()) {
      case EchelonType::Kind::Proj: return fs[n.index() - 1];
      case EchelonType::Kind::Pow: return pow_extend(self(self, n.inner()), limits);
      case EchelonType::Kind::Prod: return prod_extend(self(self, n.left()), self(self, n.right()), limits);
    }
    return FiniteMap{};
  };
  return go(go, t);
}

/// T<f1..fn>(s) computed pointwise, without building the whole map.
/// Agrees with echelon_extend(t, fs)(s) for every s in T(dom f1, ..., dom fn).
inline Value extend_at(const EchelonType& t, std::span<const FiniteMap> fs, const Value& s) {
  detail::check_arity(t, fs.size());
  auto go = [&](auto&& self, const EchelonType& n, const Value& v) -> Value {
    switch (n.kind()) {
      case EchelonType::Kind::Proj: return fs[n.index() - 1](v);
      case EchelonType::Kind::Pow: {
        if (!v.is_set()) throw Error(ErrorCode::NotAStructureOfType, to_string(v) + " is not a set");
        std::vector<Value> out;
        out.reserve(v.size());
        for (const auto& e : v.elements()) out.push_back(self(self, n.inner(), e));
        return Value::set(std::move(out));
      }
      case EchelonType::Kind::Prod:
        if (!v.is_pair()) throw Error(ErrorCode::NotAStructureOfType, to_string(v) + " is not a pair");
        return Value::pair(self(self, n.left(), v.left()), self(self, n.right(), v.right()));
    }
    return v;
  };
  return go(go, t, s);
}

// Relations as raw sets of pairs. These need not be functional, and they are
// deliberately independent of the extension code above.

/// {(x, f(x))}
inline Value relation_of(const FiniteMap& f) { return f.graph_value(); }

/// r2 after r1: {(x, z) : exists y. (x, y) in r1 and (y, z) in r2}.
inline Value compose_relations(const Value& r2, const Value& r1) {
  std::vector<Value> out;
  for (const auto& p : require_set(r1, "relation").elements()) {
    for (const auto& q : require_set(r2, "relation").elements()) {
      if (p.right() == q.left()) out.push_back(Value::pair(p.left(), q.right()));
    }
  }
  return Value::set(std::move(out));
}

/// {(y, x) : (x, y) in r}
inline Value converse_relation(const Value& r) {
  std::vector<Value> out;
  for (const auto& p : require_set(r, "relation").elements()) out.push_back(Value::pair(p.right(), p.left()));
  return Value::set(std::move(out));
}

/// r1 * r2 = {((a, c), (b, d)) : (a, b) in r1, (c, d) in r2}.
inline Value product_relation(const Value& r1, const Value& r2) {
  std::vector<Value> out;
  for (const auto& p : require_set(r1, "relation").elements()) {
    for (const auto& q : require_set(r2, "relation").elements()) {
      out.push_back(Value::pair(Value::pair(p.left(), q.left()), Value::pair(p.right(), q.right())));
    }
  }
  return Value::set(std::move(out));
}

}  // namespace structura
