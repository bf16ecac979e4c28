#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "structura/error.hpp"
#include "structura/limits.hpp"
#include "structura/value.hpp"

namespace structura {

/// A Value of kind Set used as a carrier or a realization.
using FiniteSet = Value;

inline const Value& require_set(const Value& v, const char* what) {
  if (!v.is_set()) throw Error(ErrorCode::InvalidFormula, std::string(what) + " must be a set, got " + to_string(v));
  return v;
}

/// All subsets of `base`, in canonical order.
inline FiniteSet powerset(const FiniteSet& base, const Limits& limits = {}) {
  const auto elems = require_set(base, "powerset argument").elements();
  const std::size_t n = elems.size();
  if (n > limits.max_powerset_base || n >= 64 || (std::uint64_t{1} << n) > limits.max_cells) {
    throw Error(ErrorCode::SizeExceeded, "powerset of a " + std::to_string(n) + "-element set");
  }
  std::vector<Value> subsets;
  subsets.reserve(std::size_t{1} << n);
  std::vector<Value> members;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    members.clear();
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1U) members.push_back(elems[i]);
    }
    subsets.push_back(Value::set_from_sorted(members));
  }
  return Value::set(std::move(subsets));
}

/// {(a,b) : a in A, b in B}; already canonical because pairs order by left first.
inline FiniteSet cartesian(const FiniteSet& a, const FiniteSet& b, const Limits& limits = {}) {
  const auto left = require_set(a, "cartesian factor").elements();
  const auto right = require_set(b, "cartesian factor").elements();
  const auto cells = static_cast<unsigned __int128>(left.size()) * right.size();
  if (cells > limits.max_cells) {
    throw Error(ErrorCode::SizeExceeded, "cartesian product of " + std::to_string(left.size()) + " x " +
                                             std::to_string(right.size()) + " elements");
  }
  std::vector<Value> pairs;
  pairs.reserve(static_cast<std::size_t>(cells));
  for (const auto& x : left) {
    for (const auto& y : right) pairs.push_back(Value::pair(x, y));
  }
  return Value::set_from_sorted(std::move(pairs));
}

inline bool is_subset(const FiniteSet& sub, const FiniteSet& super) {
  for (const auto& e : sub.elements()) {
    if (!super.contains(e)) return false;
  }
  return true;
}

}  // namespace structura
