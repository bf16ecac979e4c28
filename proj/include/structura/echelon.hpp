#pragma once

// Echelon types over n base sets and their realization on concrete carriers.
// A type is a tree of projections pr_i, powerset-compositions P(T) and
// products S * T; every node of a tree carries the same arity.

#include <algorithm>
#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "structura/error.hpp"
#include "structura/limits.hpp"
#include "structura/sets.hpp"
#include "structura/value.hpp"

namespace structura {

using BigInt = boost::multiprecision::cpp_int;

class EchelonType {
 public:
  enum class Kind { Proj, Pow, Prod };

  /// pr_index over `arity` sets; 1 <= index <= arity.
  static EchelonType proj(std::size_t index, std::size_t arity) {
    if (arity == 0) throw Error(ErrorCode::ArityMismatch, "echelon types need at least one base set");
    if (index < 1 || index > arity) {
      throw Error(ErrorCode::ArityMismatch,
                  "pr" + std::to_string(index) + " does not exist over " + std::to_string(arity) + " sets");
    }
    auto node = std::make_shared<Node>();
    node->kind = Kind::Proj;
    node->index = index;
    node->arity = arity;
    node->depth = 1;
    return EchelonType(std::move(node));
  }

  static EchelonType pow(const EchelonType& inner) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::Pow;
    node->arity = inner.arity();
    node->depth = inner.depth() + 1;
    node->children = {inner};
    return EchelonType(std::move(node));
  }

  static EchelonType prod(const EchelonType& left, const EchelonType& right) {
    if (left.arity() != right.arity()) {
      throw Error(ErrorCode::ArityMismatch, "product of types over " + std::to_string(left.arity()) + " and " +
                                                std::to_string(right.arity()) + " sets");
    }
    auto node = std::make_shared<Node>();
    node->kind = Kind::Prod;
    node->arity = left.arity();
    node->depth = std::max(left.depth(), right.depth()) + 1;
    node->children = {left, right};
    return EchelonType(std::move(node));
  }

  Kind kind() const noexcept { return node_->kind; }
  std::size_t arity() const noexcept { return node_->arity; }
  /// Nodes on the longest root-to-leaf path; pr_i has depth 1.
  std::size_t depth() const noexcept { return node_->depth; }
  std::size_t index() const noexcept { return node_->index; }
  const EchelonType& inner() const { return node_->children.at(0); }
  const EchelonType& left() const { return node_->children.at(0); }
  const EchelonType& right() const { return node_->children.at(1); }

  /// Largest projection index used.
  std::size_t max_index() const {
    switch (kind()) {
      case Kind::Proj: return index();
      case Kind::Pow: return inner().max_index();
      case Kind::Prod: return std::max(left().max_index(), right().max_index());
    }
    return 0;
  }

  /// Same tree over a different number of base sets.
  EchelonType with_arity(std::size_t arity) const {
    switch (kind()) {
      case Kind::Proj: return proj(index(), arity);
      case Kind::Pow: return pow(inner().with_arity(arity));
      case Kind::Prod: return prod(left().with_arity(arity), right().with_arity(arity));
    }
    return *this;
  }

  friend bool operator==(const EchelonType& a, const EchelonType& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind() || a.arity() != b.arity()) return false;
    switch (a.kind()) {
      case Kind::Proj: return a.index() == b.index();
      case Kind::Pow: return a.inner() == b.inner();
      case Kind::Prod: return a.left() == b.left() && a.right() == b.right();
    }
    return false;
  }

 private:
  struct Node {
    Kind kind = Kind::Proj;
    std::size_t index = 0;
    std::size_t arity = 0;
    std::size_t depth = 0;
    std::vector<EchelonType> children;
  };
  explicit EchelonType(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Debug rendering, e.g. `P(pr1*pr1)@1`; the DSL printer owns the canonical form.
inline std::string describe(const EchelonType& t) {
  std::string body;
  auto go = [&](auto&& self, const EchelonType& n) -> void {
    switch (n.kind()) {
      case EchelonType::Kind::Proj: body += "pr" + std::to_string(n.index()); return;
      case EchelonType::Kind::Pow:
        body += "P(";
        self(self, n.inner());
        body += ")";
        return;
      case EchelonType::Kind::Prod:
        body += "(";
        self(self, n.left());
        body += "*";
        self(self, n.right());
        body += ")";
        return;
    }
  };
  go(go, t);
  return body + "@" + std::to_string(t.arity());
}

namespace detail {
inline void check_arity(const EchelonType& t, std::size_t carriers) {
  if (carriers != t.arity()) {
    throw Error(ErrorCode::ArityMismatch, "type over " + std::to_string(t.arity()) + " sets given " +
                                              std::to_string(carriers) + " carriers");
  }
}
}  // namespace detail

/// Exact |T(X1..Xn)| without materializing it.
inline BigInt estimated_size(const EchelonType& t, std::span<const FiniteSet> carriers) {
  detail::check_arity(t, carriers.size());
  auto go = [&](auto&& self, const EchelonType& n) -> BigInt {
    switch (n.kind()) {
      case EchelonType::Kind::Proj: return BigInt(require_set(carriers[n.index() - 1], "carrier").size());
      case EchelonType::Kind::Pow: {
        const BigInt inner = self(self, n.inner());
        if (inner > 1'000'000) {
          const std::string e = inner.str();
          const std::string shown = e.size() <= 20 ? e : "(" + std::to_string(e.size()) + "-digit number)";
          throw Error(ErrorCode::SizeExceeded, "2^" + shown + " is too large to report exactly");
        }
        return BigInt(1) << static_cast<unsigned>(inner);
      }
      case EchelonType::Kind::Prod: return self(self, n.left()) * self(self, n.right());
    }
    return BigInt(0);
  };
  return go(go, t);
}

/// T(X1..Xn) as a concrete set.
inline FiniteSet realize(const EchelonType& t, std::span<const FiniteSet> carriers, const Limits& limits = {}) {
  detail::check_arity(t, carriers.size());
  BigInt total;
  try {
    total = estimated_size(t, carriers);
  } catch (const Error&) {
    throw Error(ErrorCode::SizeExceeded, "realization of " + describe(t) + " is astronomically large");
  }
  if (total > limits.max_cells) {
    const std::string digits = total.str();
    const std::string count = digits.size() <= 20 ? digits + " elements" : "about 10^" + std::to_string(digits.size() - 1) + " elements";
    throw Error(ErrorCode::SizeExceeded, "realization of " + describe(t) + " has " + count + " (limit " +
                                             std::to_string(limits.max_cells) + ")");
  }
  auto go = [&](auto&& self, const EchelonType& n) -> FiniteSet {
    switch (n.kind()) {
      case EchelonType::Kind::Proj: return carriers[n.index() - 1];
      case EchelonType::Kind::Pow: return powerset(self(self, n.inner()), limits);
      case EchelonType::Kind::Prod: return cartesian(self(self, n.left()), self(self, n.right()), limits);
    }
    return FiniteSet{};
  };
  return go(go, t);
}

/// s in T(X1..Xn), decided structurally; never materializes the realization.
inline bool contains_structure(const EchelonType& t, std::span<const FiniteSet> carriers, const Value& s) {
  detail::check_arity(t, carriers.size());
  auto go = [&](auto&& self, const EchelonType& n, const Value& v) -> bool {
    switch (n.kind()) {
      case EchelonType::Kind::Proj: return require_set(carriers[n.index() - 1], "carrier").contains(v);
      case EchelonType::Kind::Pow:
        if (!v.is_set()) return false;
        for (const auto& e : v.elements()) {
          if (!self(self, n.inner(), e)) return false;
        }
        return true;
      case EchelonType::Kind::Prod:
        return v.is_pair() && self(self, n.left(), v.left()) && self(self, n.right(), v.right());
    }
    return false;
  };
  return go(go, t, s);
}

/// Every type over `arity` sets of depth at most `max_depth`, smallest depth first.
inline std::vector<EchelonType> enumerate_types(std::size_t max_depth, std::size_t arity) {
  std::vector<std::vector<EchelonType>> by_depth(max_depth + 1);
  if (max_depth == 0) return {};
  for (std::size_t i = 1; i <= arity; ++i) by_depth[1].push_back(EchelonType::proj(i, arity));
  for (std::size_t d = 2; d <= max_depth; ++d) {
    for (const auto& t : by_depth[d - 1]) by_depth[d].push_back(EchelonType::pow(t));
    for (std::size_t da = 1; da < d; ++da) {
      for (std::size_t db = 1; db < d; ++db) {
        if (std::max(da, db) != d - 1) continue;
        for (const auto& a : by_depth[da]) {
          for (const auto& b : by_depth[db]) by_depth[d].push_back(EchelonType::prod(a, b));
        }
      }
    }
  }
  std::vector<EchelonType> out;
  for (const auto& level : by_depth) out.insert(out.end(), level.begin(), level.end());
  return out;
}

}  // namespace structura
