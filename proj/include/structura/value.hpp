#pragma once

// Hereditarily-finite values: atoms, integers, ordered pairs and finite sets.
// Every carrier, element, relation, operation and topology handled by the
// engine is one Value. Sets are kept in canonical form (strictly increasing
// under the structural order), so structural equality is extensional
// equality.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "structura/error.hpp"

namespace structura {

class Value {
 public:
  /// Declaration order is the constructor rank of the structural order.
  enum class Kind : std::uint8_t { Atom, Int, Pair, Set };

  /// The empty set.
  Value();

  static Value atom(std::string name);
  static Value integer(std::int64_t k);
  static Value pair(Value left, Value right);
  /// Sorts and deduplicates.
  static Value set(std::vector<Value> elems);
  static Value set(std::initializer_list<Value> elems) { return set(std::vector<Value>(elems)); }
  static Value empty_set() { return Value(); }
  /// Caller guarantees `elems` is already strictly increasing.
  static Value set_from_sorted(std::vector<Value> elems);

  Kind kind() const noexcept;
  bool is_atom() const noexcept { return kind() == Kind::Atom; }
  bool is_int() const noexcept { return kind() == Kind::Int; }
  bool is_pair() const noexcept { return kind() == Kind::Pair; }
  bool is_set() const noexcept { return kind() == Kind::Set; }

  const std::string& atom_name() const;
  std::int64_t int_value() const;
  const Value& left() const;
  const Value& right() const;
  std::span<const Value> elements() const;
  std::size_t size() const;
  bool empty() const { return size() == 0; }

  /// Set membership by binary search.
  bool contains(const Value& v) const;
  /// Position of `v` among the elements, or size() when absent.
  std::size_t index_of(const Value& v) const;

  std::size_t hash() const noexcept;
  bool same_object(const Value& other) const noexcept { return rep_ == other.rep_; }
  /// Address of the shared representation; equal for copies of one Value.
  const void* identity() const noexcept { return rep_.get(); }

  friend std::strong_ordering operator<=>(const Value& a, const Value& b);
  friend bool operator==(const Value& a, const Value& b);

 private:
  struct Rep;
  static const std::shared_ptr<const Rep>& empty_rep();
  explicit Value(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}
  std::shared_ptr<const Rep> rep_;
};

struct Value::Rep {
  Kind kind = Kind::Set;
  std::size_t hash = 0;
  std::string name;
  std::int64_t k = 0;
  std::vector<Value> elems;  // Pair: {left, right}; Set: members
};

namespace detail {

inline std::size_t mix_hash(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace detail

inline const std::shared_ptr<const Value::Rep>& Value::empty_rep() {
  static const std::shared_ptr<const Value::Rep> rep = [] {
    auto r = std::make_shared<Value::Rep>();
    r->kind = Value::Kind::Set;
    r->hash = detail::mix_hash(0x5e7, 0);
    return std::shared_ptr<const Value::Rep>(std::move(r));
  }();
  return rep;
}

inline Value::Value() : rep_(empty_rep()) {}

inline Value Value::atom(std::string name) {
  auto r = std::make_shared<Rep>();
  r->kind = Kind::Atom;
  r->hash = detail::mix_hash(0xa70, std::hash<std::string>{}(name));
  r->name = std::move(name);
  return Value(std::move(r));
}

inline Value Value::integer(std::int64_t k) {
  auto r = std::make_shared<Rep>();
  r->kind = Kind::Int;
  r->hash = detail::mix_hash(0x147, std::hash<std::int64_t>{}(k));
  r->k = k;
  return Value(std::move(r));
}

inline Value Value::pair(Value left, Value right) {
  auto r = std::make_shared<Rep>();
  r->kind = Kind::Pair;
  r->hash = detail::mix_hash(detail::mix_hash(0x9a1, left.hash()), right.hash());
  r->elems.reserve(2);
  r->elems.push_back(std::move(left));
  r->elems.push_back(std::move(right));
  return Value(std::move(r));
}

inline Value Value::set(std::vector<Value> elems) {
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  return set_from_sorted(std::move(elems));
}

inline Value Value::set_from_sorted(std::vector<Value> elems) {
  if (elems.empty()) return Value();
  auto r = std::make_shared<Rep>();
  r->kind = Kind::Set;
  std::size_t h = 0x5e7;
  for (const auto& e : elems) h = detail::mix_hash(h, e.hash());
  r->hash = detail::mix_hash(h, elems.size());
  r->elems = std::move(elems);
  return Value(std::move(r));
}

inline Value::Kind Value::kind() const noexcept { return rep_->kind; }

inline const std::string& Value::atom_name() const {
  if (!is_atom()) throw Error(ErrorCode::InvalidFormula, "value is not an atom");
  return rep_->name;
}

inline std::int64_t Value::int_value() const {
  if (!is_int()) throw Error(ErrorCode::InvalidFormula, "value is not an integer");
  return rep_->k;
}

inline const Value& Value::left() const {
  if (!is_pair()) throw Error(ErrorCode::InvalidFormula, "value is not a pair");
  return rep_->elems[0];
}

inline const Value& Value::right() const {
  if (!is_pair()) throw Error(ErrorCode::InvalidFormula, "value is not a pair");
  return rep_->elems[1];
}

inline std::span<const Value> Value::elements() const {
  if (!is_set()) throw Error(ErrorCode::InvalidFormula, "value is not a set");
  return rep_->elems;
}

inline std::size_t Value::size() const { return elements().size(); }

inline std::size_t Value::index_of(const Value& v) const {
  const auto elems = elements();
  const auto it = std::lower_bound(elems.begin(), elems.end(), v);
  if (it != elems.end() && *it == v) return static_cast<std::size_t>(it - elems.begin());
  return elems.size();
}

inline bool Value::contains(const Value& v) const { return index_of(v) != size(); }

inline std::size_t Value::hash() const noexcept { return rep_->hash; }

inline std::strong_ordering operator<=>(const Value& a, const Value& b) {
  if (a.rep_ == b.rep_) return std::strong_ordering::equal;
  const auto& x = *a.rep_;
  const auto& y = *b.rep_;
  if (x.kind != y.kind) return x.kind <=> y.kind;
  switch (x.kind) {
    case Value::Kind::Atom: {
      const int c = x.name.compare(y.name);
      return c < 0 ? std::strong_ordering::less
                   : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }
    case Value::Kind::Int:
      return x.k <=> y.k;
    case Value::Kind::Set:
      // Shortlex: smaller sets first, so P({0,1}) lists {} {0} {1} {0,1}.
      if (x.elems.size() != y.elems.size()) return x.elems.size() <=> y.elems.size();
      [[fallthrough]];
    case Value::Kind::Pair: {
      const std::size_t n = std::min(x.elems.size(), y.elems.size());
      for (std::size_t i = 0; i < n; ++i) {
        if (auto c = x.elems[i] <=> y.elems[i]; c != 0) return c;
      }
      return x.elems.size() <=> y.elems.size();
    }
  }
  return std::strong_ordering::equal;
}

inline bool operator==(const Value& a, const Value& b) {
  if (a.rep_ == b.rep_) return true;
  if (a.rep_->hash != b.rep_->hash) return false;
  return (a <=> b) == 0;
}

enum class Ordering { Less, Equal, Greater };

/// Total structural order: Atom < Int < Pair < Set; names, integers and pairs
/// compare lexicographically, sets by size and then elementwise.
inline Ordering value_cmp(const Value& a, const Value& b) {
  const auto c = a <=> b;
  if (c < 0) return Ordering::Less;
  if (c > 0) return Ordering::Greater;
  return Ordering::Equal;
}

/// Canonical set from arbitrary elements.
inline Value mk_set(std::vector<Value> elems) { return Value::set(std::move(elems)); }

inline void render(const Value& v, std::string& out) {
  switch (v.kind()) {
    case Value::Kind::Atom: out += v.atom_name(); return;
    case Value::Kind::Int: out += std::to_string(v.int_value()); return;
    case Value::Kind::Pair:
      out += '(';
      render(v.left(), out);
      out += ',';
      render(v.right(), out);
      out += ')';
      return;
    case Value::Kind::Set: {
      out += '{';
      bool first = true;
      for (const auto& e : v.elements()) {
        if (!first) out += ',';
        first = false;
        render(e, out);
      }
      out += '}';
      return;
    }
  }
}

/// Canonical text: atoms bare, integers decimal, `(a,b)`, `{e1,e2}`.
inline std::string to_string(const Value& v) {
  std::string out;
  render(v, out);
  return out;
}

struct ValueHash {
  std::size_t operator()(const Value& v) const noexcept { return v.hash(); }
};

inline Value atom(std::string name) { return Value::atom(std::move(name)); }
inline Value num(std::int64_t k) { return Value::integer(k); }
inline Value pair(Value a, Value b) { return Value::pair(std::move(a), std::move(b)); }

/// {lo, lo+1, ..., hi}
inline Value int_range(std::int64_t lo, std::int64_t hi) {
  std::vector<Value> elems;
  for (std::int64_t k = lo; k <= hi; ++k) elems.push_back(Value::integer(k));
  return Value::set_from_sorted(std::move(elems));
}

/// {a0, ..., a(n-1)}: the canonical carrier of size n.
inline Value atom_carrier(std::size_t n) {
  std::vector<Value> elems;
  for (std::size_t i = 0; i < n; ++i) elems.push_back(Value::atom("a" + std::to_string(i)));
  return Value::set(std::move(elems));
}

}  // namespace structura

template <>
struct std::hash<structura::Value> {
  std::size_t operator()(const structura::Value& v) const noexcept { return v.hash(); }
};
