#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "structura/error.hpp"
#include "structura/limits.hpp"
#include "structura/sets.hpp"
#include "structura/value.hpp"

namespace structura {

/// Total function between two finite sets, stored as an explicit graph.
/// images()[i] is the image of domain().elements()[i].
class FiniteMap {
 public:
  FiniteMap() { compute_flags(); }

  /// Validates totality, functionality and that every image lies in the codomain.
  static FiniteMap from_graph(FiniteSet domain, FiniteSet codomain,
                              std::vector<std::pair<Value, Value>> graph) {
    require_set(domain, "map domain");
    require_set(codomain, "map codomain");
    std::sort(graph.begin(), graph.end());
    graph.erase(std::unique(graph.begin(), graph.end()), graph.end());
    if (graph.size() != domain.size()) {
      throw Error(ErrorCode::NotAFunction, "graph has " + std::to_string(graph.size()) +
                                               " entries for a domain of " + std::to_string(domain.size()));
    }
    std::vector<Value> images;
    images.reserve(graph.size());
    const auto keys = domain.elements();
    for (std::size_t i = 0; i < graph.size(); ++i) {
      if (graph[i].first != keys[i]) {
        throw Error(ErrorCode::NotAFunction, "graph key " + to_string(graph[i].first) + " does not match the domain");
      }
      if (!codomain.contains(graph[i].second)) {
        throw Error(ErrorCode::NotASubset, "image " + to_string(graph[i].second) + " lies outside the codomain");
      }
      images.push_back(std::move(graph[i].second));
    }
    return FiniteMap(std::move(domain), std::move(codomain), std::move(images));
  }

  /// Builds the graph of `fn` on `domain`.
  template <typename Fn>
  static FiniteMap from_function(const FiniteSet& domain, const FiniteSet& codomain, Fn&& fn) {
    std::vector<Value> images;
    images.reserve(domain.size());
    for (const auto& x : domain.elements()) {
      Value y = fn(x);
      if (!codomain.contains(y)) {
        throw Error(ErrorCode::NotASubset, "image " + to_string(y) + " lies outside the codomain");
      }
      images.push_back(std::move(y));
    }
    return FiniteMap(domain, codomain, std::move(images));
  }

  /// Images listed in domain order; no codomain check beyond the caller's guarantee.
  static FiniteMap from_images_unchecked(FiniteSet domain, FiniteSet codomain, std::vector<Value> images) {
    return FiniteMap(std::move(domain), std::move(codomain), std::move(images));
  }

  /// Reads a set of pairs as a map from its left components onto its right components.
  static FiniteMap from_pairs(const Value& pairs) {
    std::vector<std::pair<Value, Value>> graph;
    std::vector<Value> lefts;
    std::vector<Value> rights;
    for (const auto& p : require_set(pairs, "map literal").elements()) {
      if (!p.is_pair()) throw Error(ErrorCode::NotAFunction, "map literal element " + to_string(p) + " is not a pair");
      graph.emplace_back(p.left(), p.right());
      lefts.push_back(p.left());
      rights.push_back(p.right());
    }
    const auto domain = Value::set(std::move(lefts));
    if (domain.size() != graph.size()) {
      throw Error(ErrorCode::NotAFunction, "map literal assigns two images to one element");
    }
    return from_graph(domain, Value::set(std::move(rights)), std::move(graph));
  }

  static FiniteMap identity(const FiniteSet& x) {
    const auto elems = require_set(x, "identity carrier").elements();
    return FiniteMap(x, x, std::vector<Value>(elems.begin(), elems.end()));
  }

  const FiniteSet& domain() const noexcept { return domain_; }
  const FiniteSet& codomain() const noexcept { return codomain_; }
  std::span<const Value> images() const noexcept { return images_; }

  const Value& operator()(const Value& x) const {
    const std::size_t i = domain_.index_of(x);
    if (i == domain_.size()) throw Error(ErrorCode::NotASubset, to_string(x) + " is outside the map domain");
    return images_[i];
  }

  bool injective() const noexcept { return injective_; }
  bool surjective() const noexcept { return surjective_; }
  bool bijective() const noexcept { return injective_ && surjective_; }

  /// {(x, f(x))} as a Value.
  Value graph_value() const {
    std::vector<Value> pairs;
    pairs.reserve(images_.size());
    const auto keys = domain_.elements();
    for (std::size_t i = 0; i < keys.size(); ++i) pairs.push_back(Value::pair(keys[i], images_[i]));
    return Value::set_from_sorted(std::move(pairs));
  }

  friend bool operator==(const FiniteMap& a, const FiniteMap& b) {
    return a.domain_ == b.domain_ && a.codomain_ == b.codomain_ && a.images_ == b.images_;
  }

 private:
  FiniteMap(FiniteSet domain, FiniteSet codomain, std::vector<Value> images)
      : domain_(std::move(domain)), codomain_(std::move(codomain)), images_(std::move(images)) {
    compute_flags();
  }

  void compute_flags() {
    std::vector<Value> sorted = images_;
    std::sort(sorted.begin(), sorted.end());
    const auto distinct = static_cast<std::size_t>(std::unique(sorted.begin(), sorted.end()) - sorted.begin());
    injective_ = distinct == images_.size();
    surjective_ = distinct == codomain_.size();
  }

  FiniteSet domain_;
  FiniteSet codomain_;
  std::vector<Value> images_;
  bool injective_ = true;
  bool surjective_ = true;
};

inline std::string to_string(const FiniteMap& f) { return to_string(f.graph_value()); }

/// f[s]
inline FiniteSet image(const FiniteMap& f, const FiniteSet& s) {
  std::vector<Value> out;
  out.reserve(s.size());
  for (const auto& x : require_set(s, "image argument").elements()) {
    const std::size_t i = f.domain().index_of(x);
    if (i == f.domain().size()) throw Error(ErrorCode::NotASubset, to_string(x) + " is outside the map domain");
    out.push_back(f.images()[i]);
  }
  return Value::set(std::move(out));
}

/// g after f.
inline FiniteMap compose(const FiniteMap& g, const FiniteMap& f) {
  if (f.codomain() != g.domain()) {
    throw Error(ErrorCode::DomainMismatch, "codomain of the inner map differs from the domain of the outer map");
  }
  std::vector<Value> images;
  images.reserve(f.images().size());
  for (const auto& y : f.images()) images.push_back(g(y));
  return FiniteMap::from_images_unchecked(f.domain(), g.codomain(), std::move(images));
}

inline FiniteMap invert(const FiniteMap& f) {
  if (!f.bijective()) throw Error(ErrorCode::NotBijective, "cannot invert " + to_string(f));
  std::vector<std::pair<Value, Value>> graph;
  graph.reserve(f.images().size());
  const auto keys = f.domain().elements();
  for (std::size_t i = 0; i < keys.size(); ++i) graph.emplace_back(f.images()[i], keys[i]);
  std::sort(graph.begin(), graph.end());
  std::vector<Value> images;
  images.reserve(graph.size());
  for (auto& [y, x] : graph) images.push_back(std::move(x));
  return FiniteMap::from_images_unchecked(f.codomain(), f.domain(), std::move(images));
}

/// All bijections A -> B. Order: the targets of A's elements (taken in
/// canonical order) run through the permutations of B in lexicographic order,
/// so the order-preserving bijection comes first.
inline std::vector<FiniteMap> enumerate_bijections(const FiniteSet& a, const FiniteSet& b, const Limits& limits = {}) {
  require_set(a, "bijection domain");
  require_set(b, "bijection codomain");
  if (a.size() != b.size()) {
    throw Error(ErrorCode::CardinalityMismatch,
                "no bijection between sets of sizes " + std::to_string(a.size()) + " and " + std::to_string(b.size()));
  }
  if (a.size() > limits.max_bijection_base) {
    throw Error(ErrorCode::SizeExceeded, "bijection enumeration on " + std::to_string(a.size()) + " elements");
  }
  const auto targets = b.elements();
  std::vector<std::size_t> perm(targets.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::vector<FiniteMap> out;
  do {
    std::vector<Value> images;
    images.reserve(perm.size());
    for (const auto i : perm) images.push_back(targets[i]);
    out.push_back(FiniteMap::from_images_unchecked(a, b, std::move(images)));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

/// All |B|^|A| maps A -> B, in lexicographic order of image indices.
inline std::vector<FiniteMap> enumerate_functions(const FiniteSet& a, const FiniteSet& b, const Limits& limits = {}) {
  const auto n = require_set(a, "function domain").size();
  const auto targets = require_set(b, "function codomain").elements();
  unsigned __int128 count = 1;
  for (std::size_t i = 0; i < n; ++i) {
    count *= targets.size();
    if (count > limits.max_cells) throw Error(ErrorCode::SizeExceeded, "too many functions to enumerate");
  }
  std::vector<FiniteMap> out;
  if (count == 0) return out;
  std::vector<std::size_t> digits(n, 0);
  while (true) {
    std::vector<Value> images;
    images.reserve(n);
    for (const auto d : digits) images.push_back(targets[d]);
    out.push_back(FiniteMap::from_images_unchecked(a, b, std::move(images)));
    std::size_t pos = n;
    while (pos > 0) {
      --pos;
      if (++digits[pos] < targets.size()) break;
      digits[pos] = 0;
      if (pos == 0) return out;
    }
    if (n == 0) return out;
  }
}

}  // namespace structura
