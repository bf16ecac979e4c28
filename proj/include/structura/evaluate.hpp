#pragma once

// Model checking of closed formulas over a finite interpretation.
//
// Evaluation is Kleene three-valued so the same engine can run over a
// PartialStructure whose cells are only partly decided: Unknown is returned
// whenever some completion could go either way, and True/False only when
// every completion agrees. Over a fully known structure the result is always
// True or False. Connectives evaluate left to right and short-circuit, so a
// guard such as "s is an operation" protects the applications to its right.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "structura/echelon.hpp"
#include "structura/error.hpp"
#include "structura/formula.hpp"
#include "structura/limits.hpp"
#include "structura/sets.hpp"
#include "structura/transport.hpp"
#include "structura/value.hpp"

namespace structura {

enum class Truth : std::uint8_t { False, True, Unknown };

inline Truth truth_of(bool b) { return b ? Truth::True : Truth::False; }

/// A structure of a given type whose components are decided cell by cell.
///
/// The type's top-level products become pair slots, projections become
/// element slots (one cell choosing a carrier element) and powersets become
/// subset slots (one in/out cell per element of the inner realization).
class PartialStructure {
 public:
  enum class SlotKind { Element, Subset, Pair };

  /// How to locate a value in a slot's universe without building it:
  /// carriers and listed sets by binary search, products by mixed radix.
  struct Shape {
    enum class Kind { Listed, Prod };
    Kind kind = Kind::Listed;
    Value set;
    std::size_t left = 0;
    std::size_t right = 0;
    std::size_t size = 0;
  };

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  struct Slot {
    SlotKind kind = SlotKind::Element;
    Value universe;
    std::size_t shape = 0;
    std::size_t first_cell = 0;
    std::size_t cell_count = 0;
    std::size_t assigned = 0;
    std::size_t left = 0;
    std::size_t right = 0;
  };

  static constexpr int kUnassigned = -1;

  PartialStructure(const EchelonType& type, std::span<const FiniteSet> carriers, const Limits& limits = {}) {
    detail::check_arity(type, carriers.size());
    build(type, carriers, limits);
  }

  std::size_t cell_count() const noexcept { return cells_.size(); }
  /// Number of choices for a cell: the universe size for element cells, 2 for subset cells.
  std::size_t choices(std::size_t cell) const {
    const Slot& s = slots_[cell_slot_[cell]];
    return s.kind == SlotKind::Element ? s.universe.size() : 2;
  }
  int state(std::size_t cell) const noexcept { return cells_[cell]; }

  void assign(std::size_t cell, int choice) {
    if (cells_[cell] == kUnassigned) ++slots_[cell_slot_[cell]].assigned;
    cells_[cell] = choice;
  }
  void unassign(std::size_t cell) {
    if (cells_[cell] != kUnassigned) --slots_[cell_slot_[cell]].assigned;
    cells_[cell] = kUnassigned;
  }

  const Slot& slot(std::size_t i) const { return slots_[i]; }
  const Shape& shape(std::size_t i) const { return shapes_[i]; }

  /// Position of `v` in the universe of `shape`, or npos.
  std::size_t index_in(std::size_t shape, const Value& v) const {
    const Shape& sh = shapes_[shape];
    if (sh.kind == Shape::Kind::Listed) {
      const std::size_t k = sh.set.index_of(v);
      return k == sh.set.size() ? npos : k;
    }
    if (!v.is_pair()) return npos;
    const std::size_t l = index_in(sh.left, v.left());
    if (l == npos) return npos;
    const std::size_t r = index_in(sh.right, v.right());
    if (r == npos) return npos;
    return l * shapes_[sh.right].size + r;
  }
  static constexpr std::size_t root() { return 0; }

  bool complete(std::size_t i) const {
    const Slot& s = slots_[i];
    if (s.kind == SlotKind::Pair) return complete(s.left) && complete(s.right);
    return s.assigned == s.cell_count;
  }

  Value materialize(std::size_t i = root()) const {
    const Slot& s = slots_[i];
    switch (s.kind) {
      case SlotKind::Element: return s.universe.elements()[static_cast<std::size_t>(cells_[s.first_cell])];
      case SlotKind::Subset: {
        std::vector<Value> members;
        const auto elems = s.universe.elements();
        for (std::size_t k = 0; k < s.cell_count; ++k) {
          if (cells_[s.first_cell + k] == 1) members.push_back(elems[k]);
        }
        return Value::set_from_sorted(std::move(members));
      }
      case SlotKind::Pair: return Value::pair(materialize(s.left), materialize(s.right));
    }
    return Value();
  }

 private:
  std::size_t build(const EchelonType& t, std::span<const FiniteSet> carriers, const Limits& limits) {
    const std::size_t index = slots_.size();
    slots_.emplace_back();
    switch (t.kind()) {
      case EchelonType::Kind::Proj: {
        Slot s;
        s.kind = SlotKind::Element;
        s.universe = carriers[t.index() - 1];
        s.shape = build_shape(t, carriers, limits);
        add_cells(s, 1, index);
        slots_[index] = std::move(s);
        break;
      }
      case EchelonType::Kind::Pow: {
        Slot s;
        s.kind = SlotKind::Subset;
        s.universe = realize(t.inner(), carriers, limits);
        s.shape = build_shape(t.inner(), carriers, limits);
        add_cells(s, s.universe.size(), index);
        slots_[index] = std::move(s);
        break;
      }
      case EchelonType::Kind::Prod: {
        const std::size_t l = build(t.left(), carriers, limits);
        const std::size_t r = build(t.right(), carriers, limits);
        Slot s;
        s.kind = SlotKind::Pair;
        s.left = l;
        s.right = r;
        s.first_cell = slots_[l].first_cell;
        slots_[index] = std::move(s);
        break;
      }
    }
    return index;
  }

  std::size_t build_shape(const EchelonType& t, std::span<const FiniteSet> carriers, const Limits& limits) {
    Shape sh;
    if (t.kind() == EchelonType::Kind::Prod) {
      sh.kind = Shape::Kind::Prod;
      sh.left = build_shape(t.left(), carriers, limits);
      sh.right = build_shape(t.right(), carriers, limits);
      sh.size = shapes_[sh.left].size * shapes_[sh.right].size;
    } else {
      sh.set = t.kind() == EchelonType::Kind::Proj ? carriers[t.index() - 1] : realize(t, carriers, limits);
      sh.size = sh.set.size();
    }
    shapes_.push_back(std::move(sh));
    return shapes_.size() - 1;
  }

  void add_cells(Slot& s, std::size_t n, std::size_t index) {
    s.first_cell = cells_.size();
    s.cell_count = n;
    cells_.insert(cells_.end(), n, kUnassigned);
    cell_slot_.insert(cell_slot_.end(), n, index);
  }

  std::vector<Slot> slots_;
  std::vector<Shape> shapes_;
  std::vector<int> cells_;
  std::vector<std::size_t> cell_slot_;
};

/// A formula with variables resolved to binder depths and symbols resolved
/// against a fixed list of base-set names and one structure name.
class CompiledFormula {
 public:
  CompiledFormula(const Formula& f, std::vector<std::string> set_names, std::string structure_name)
      : set_names_(std::move(set_names)), structure_name_(std::move(structure_name)) {
    std::vector<std::string> scope;
    root_ = compile(f, scope);
  }

  struct CTerm {
    Term::Kind kind = Term::Kind::Const;
    std::size_t slot = 0;
    Value constant;
    std::vector<CTerm> args;
    bool closed = false;  // no variables, no structure symbol
    std::size_t cache = 0;
  };

  struct CFormula {
    Formula::Kind kind = Formula::Kind::True;
    std::vector<CTerm> terms;
    std::vector<CFormula> subs;
  };

  const CFormula& root() const noexcept { return root_; }
  std::size_t cache_slots() const noexcept { return cache_slots_; }
  const std::vector<std::string>& set_names() const noexcept { return set_names_; }
  const std::string& structure_name() const noexcept { return structure_name_; }

 private:
  CTerm compile(const Term& t, std::vector<std::string>& scope) {
    CTerm out;
    out.kind = t.kind();
    switch (t.kind()) {
      case Term::Kind::Var: {
        const auto it = std::find(scope.rbegin(), scope.rend(), t.name());
        if (it == scope.rend()) throw Error(ErrorCode::UnboundSymbol, "unbound variable " + t.name());
        out.slot = static_cast<std::size_t>(scope.rend() - it - 1);
        return out;
      }
      case Term::Kind::Const:
        out.constant = t.constant_value();
        out.closed = true;
        return out;
      case Term::Kind::BaseSet: {
        const auto it = std::find(set_names_.begin(), set_names_.end(), t.name());
        if (it == set_names_.end()) throw Error(ErrorCode::UnboundSymbol, "unknown base set " + t.name());
        out.slot = static_cast<std::size_t>(it - set_names_.begin());
        out.closed = true;
        return out;
      }
      case Term::Kind::Structure:
        if (t.name() != structure_name_) throw Error(ErrorCode::UnboundSymbol, "unknown structure symbol " + t.name());
        return out;
      default: break;
    }
    out.closed = true;
    for (const auto& a : t.args()) {
      out.args.push_back(compile(a, scope));
      out.closed = out.closed && out.args.back().closed;
    }
    if (out.closed && (out.kind == Term::Kind::PowSet || out.kind == Term::Kind::ProdSet)) out.cache = ++cache_slots_;
    return out;
  }

  CFormula compile(const Formula& f, std::vector<std::string>& scope) {
    CFormula out;
    out.kind = f.kind();
    if (f.kind() == Formula::Kind::ForAll || f.kind() == Formula::Kind::Exists) {
      out.terms.push_back(compile(f.domain(), scope));
      scope.push_back(f.var());
      out.subs.push_back(compile(f.body(), scope));
      scope.pop_back();
      return out;
    }
    for (const auto& t : f.terms()) out.terms.push_back(compile(t, scope));
    for (const auto& s : f.subs()) out.subs.push_back(compile(s, scope));
    return out;
  }

  std::vector<std::string> set_names_;
  std::string structure_name_;
  CFormula root_;
  std::size_t cache_slots_ = 0;
};

/// Evaluates one compiled formula under fixed base-set values.
class Evaluator {
 public:
  Evaluator(std::shared_ptr<const CompiledFormula> formula, std::vector<Value> sets, const Limits& limits = {})
      : formula_(std::move(formula)), sets_(std::move(sets)), limits_(limits), cache_(formula_->cache_slots() + 1) {
    if (sets_.size() != formula_->set_names().size()) {
      throw Error(ErrorCode::ArityMismatch, "interpretation binds the wrong number of base sets");
    }
  }

  /// Exact evaluation; ApplyUndefined and other errors propagate.
  bool eval(const Value& structure) {
    partial_ = nullptr;
    known_structure_ = structure;
    env_.clear();
    const Truth t = eval(formula_->root());
    return t == Truth::True;
  }

  /// Three-valued evaluation over a partial structure; never throws ApplyUndefined.
  Truth eval(const PartialStructure& ps) {
    partial_ = &ps;
    env_.clear();
    saw_unknown_ = false;
    const Truth t = eval(formula_->root());
    partial_ = nullptr;
    return t;
  }

  /// Whether the last partial evaluation met any undecided cell or undefined
  /// application. When it did not, the result equals exact evaluation of the
  /// materialized structure.
  bool saw_unknown() const noexcept { return saw_unknown_; }

  using CTerm = CompiledFormula::CTerm;
  using CFormula = CompiledFormula::CFormula;

  /// A bound variable remembers where its value sits, which spares a search
  /// when it is looked up in the same set again.
  struct Binding {
    const Value* value;
    const void* domain;
    std::size_t index;
  };

  /// The body of the formula under one assignment of its leading universal
  /// quantifiers.
  struct Instance {
    const CFormula* body;
    std::vector<Binding> env;
  };

  /// Splits the leading universal quantifiers whose domains do not mention
  /// the structure into instances, one per tuple of elements, stopping before
  /// the count would pass `cap`. The formula is the conjunction of its
  /// instances.
  std::vector<Instance> instances(std::size_t cap = 4096) {
    std::vector<Instance> out;
    std::vector<Binding> env;
    partial_ = nullptr;
    env_.clear();
    expand(formula_->root(), env, 1, cap, out);
    return out;
  }

  /// Three-valued evaluation of one instance; undecided cells consulted on
  /// the way are appended to `reads` when it is given.
  Truth eval(const Instance& inst, const PartialStructure& ps, std::vector<std::uint32_t>* reads) {
    partial_ = &ps;
    reads_ = reads;
    env_ = inst.env;
    saw_unknown_ = false;
    const Truth t = eval(*inst.body);
    partial_ = nullptr;
    reads_ = nullptr;
    return t;
  }

 private:
  void expand(const CFormula& f, std::vector<Binding>& env, std::size_t count, std::size_t cap,
              std::vector<Instance>& out) {
    if (f.kind == Formula::Kind::ForAll && f.terms[0].closed) {
      env_ = env;
      const PVal d = eval_term(f.terms[0]);
      const Value& set = require_set_value(d.value(), "quantifier domain");
      if (count * std::max<std::size_t>(set.size(), 1) <= cap) {
        const Value kept = set;
        instance_domains_.push_back(kept);
        for (std::size_t k = 0; k < kept.size(); ++k) {
          env.push_back(Binding{&kept.elements()[k], kept.identity(), k});
          expand(f.subs[0], env, count * kept.size(), cap, out);
          env.pop_back();
        }
        return;
      }
    }
    out.push_back(Instance{&f, env});
  }

  struct PVal {
    enum class Kind : std::uint8_t { Known, Unknown, Partial };
    Kind kind = Kind::Unknown;
    std::size_t slot = 0;

    // Known values either live in storage that outlasts the evaluation
    // (`ref`) or are owned. `domain`/`index` optionally say where the value
    // sits inside some set.
    const Value* ref = nullptr;
    std::optional<Value> owned;
    const void* domain = nullptr;
    std::size_t index = 0;

    const Value& value() const { return ref != nullptr ? *ref : *owned; }

    static PVal known(Value v) {
      PVal p;
      p.kind = Kind::Known;
      p.owned = std::move(v);
      return p;
    }
    static PVal known_ref(const Value& v, const void* domain = nullptr, std::size_t index = 0) {
      PVal p;
      p.kind = Kind::Known;
      p.ref = &v;
      p.domain = domain;
      p.index = index;
      return p;
    }
    /// A part of `parent`'s value: referenced when the parent is, else copied.
    static PVal part_of(const PVal& parent, const Value& v) { return parent.ref != nullptr ? known_ref(v) : known(v); }
    static PVal unknown() { return PVal{}; }
    static PVal partial(std::size_t slot) {
      PVal p;
      p.kind = Kind::Partial;
      p.slot = slot;
      return p;
    }
  };

  // Reads of undecided cells are logged when a recorder is set: a result
  // computed from decided cells only cannot change as more cells are decided.
  int cell_state(std::size_t cell) {
    const int st = partial_->state(cell);
    if (st == PartialStructure::kUnassigned && reads_ != nullptr) reads_->push_back(cell);
    return st;
  }

  bool slot_complete(std::size_t slot) {
    if (partial_->complete(slot)) return true;
    if (reads_ != nullptr) record_open_cells(slot);
    return false;
  }

  void record_open_cells(std::size_t slot) {
    const auto& s = partial_->slot(slot);
    if (s.kind == PartialStructure::SlotKind::Pair) {
      record_open_cells(s.left);
      record_open_cells(s.right);
      return;
    }
    for (std::size_t k = 0; k < s.cell_count; ++k) cell_state(s.first_cell + k);
  }

  PVal of_slot(std::size_t slot) {
    const auto& s = partial_->slot(slot);
    if (s.kind == PartialStructure::SlotKind::Element) {
      return slot_complete(slot) ? PVal::known(partial_->materialize(slot)) : PVal::unknown();
    }
    return PVal::partial(slot);
  }

  /// Known value when one is available, materializing a complete partial slot.
  PVal resolve(PVal v) {
    if (v.kind == PVal::Kind::Partial && slot_complete(v.slot)) return PVal::known(partial_->materialize(v.slot));
    return v;
  }

  static const Value& require_set_value(const Value& v, const char* role) {
    if (!v.is_set()) throw Error(ErrorCode::InvalidFormula, std::string(role) + " is not a set: " + to_string(v));
    return v;
  }

  PVal eval_term(const CTerm& t) {
    switch (t.kind) {
      case Term::Kind::Var: {
        const Binding& b = env_[t.slot];
        return PVal::known_ref(*b.value, b.domain, b.index);
      }
      case Term::Kind::Const: return PVal::known_ref(t.constant);
      case Term::Kind::BaseSet: return PVal::known_ref(sets_[t.slot]);
      case Term::Kind::Structure:
        return partial_ != nullptr ? of_slot(PartialStructure::root()) : PVal::known_ref(known_structure_);
      case Term::Kind::Pair: {
        PVal a = resolve(eval_term(t.args[0]));
        PVal b = resolve(eval_term(t.args[1]));
        if (a.kind != PVal::Kind::Known || b.kind != PVal::Kind::Known) return PVal::unknown();
        return PVal::known(Value::pair(a.value(), b.value()));
      }
      case Term::Kind::Fst:
      case Term::Kind::Snd: {
        PVal a = eval_term(t.args[0]);
        const bool first = t.kind == Term::Kind::Fst;
        if (a.kind == PVal::Kind::Unknown) return a;
        if (a.kind == PVal::Kind::Partial) {
          const auto& s = partial_->slot(a.slot);
          if (s.kind != PartialStructure::SlotKind::Pair) {
            throw Error(ErrorCode::InvalidFormula, "projection of a value that is not a pair");
          }
          return of_slot(first ? s.left : s.right);
        }
        if (!a.value().is_pair()) throw Error(ErrorCode::InvalidFormula, "projection of " + to_string(a.value()));
        return PVal::part_of(a, first ? a.value().left() : a.value().right());
      }
      case Term::Kind::Apply: {
        PVal f = eval_term(t.args[0]);
        if (f.kind == PVal::Kind::Partial) {
          const auto& s = partial_->slot(f.slot);
          if (s.kind == PartialStructure::SlotKind::Subset &&
              partial_->shape(s.shape).kind == PartialStructure::Shape::Kind::Prod) {
            return apply_indexed(s, t.args[1]);
          }
        }
        return apply(f, resolve(eval_term(t.args[1])));
      }
      case Term::Kind::PowSet:
      case Term::Kind::ProdSet: {
        if (t.closed && cache_[t.cache]) return PVal::known_ref(*cache_[t.cache]);
        PVal a = resolve(eval_term(t.args[0]));
        if (a.kind != PVal::Kind::Known) return PVal::unknown();
        Value out;
        if (t.kind == Term::Kind::PowSet) {
          out = powerset(require_set_value(a.value(), "powerset argument"), limits_);
        } else {
          PVal b = resolve(eval_term(t.args[1]));
          if (b.kind != PVal::Kind::Known) return PVal::unknown();
          out = cartesian(require_set_value(a.value(), "product factor"), require_set_value(b.value(), "product factor"),
                          limits_);
        }
        if (t.closed) {
          cache_[t.cache] = std::move(out);
          return PVal::known_ref(*cache_[t.cache]);
        }
        return PVal::known(std::move(out));
      }
    }
    return PVal::unknown();
  }

  // Elements of a sorted set whose pair-left equals `key` form one contiguous run.
  static std::pair<std::size_t, std::size_t> key_range(std::span<const Value> elems, const Value& key) {
    auto below = [&](const Value& e) {
      if (e.kind() != Value::Kind::Pair) return e.kind() < Value::Kind::Pair;
      return e.left() < key;
    };
    auto not_above = [&](const Value& e) {
      if (e.kind() != Value::Kind::Pair) return e.kind() < Value::Kind::Pair;
      return !(key < e.left());
    };
    const auto lo = std::partition_point(elems.begin(), elems.end(), below);
    const auto hi = std::partition_point(lo, elems.end(), not_above);
    return {static_cast<std::size_t>(lo - elems.begin()), static_cast<std::size_t>(hi - elems.begin())};
  }

  enum class Found { Yes, No, Unknown };

  // Locates the value of term `t` in `shape` without building pairs.
  Found locate(std::size_t shape, const CTerm& t, std::size_t& index) {
    const auto& sh = partial_->shape(shape);
    if (t.kind == Term::Kind::Pair && sh.kind == PartialStructure::Shape::Kind::Prod) {
      std::size_t l = 0;
      std::size_t r = 0;
      const Found a = locate(sh.left, t.args[0], l);
      const Found b = locate(sh.right, t.args[1], r);
      if (a == Found::Unknown || b == Found::Unknown) return Found::Unknown;
      if (a == Found::No || b == Found::No) return Found::No;
      index = l * partial_->shape(sh.right).size + r;
      return Found::Yes;
    }
    if (t.kind == Term::Kind::Var && sh.kind == PartialStructure::Shape::Kind::Listed) {
      const Binding& b = env_[t.slot];
      if (b.domain == sh.set.identity()) {
        index = b.index;
        return Found::Yes;
      }
    }
    const PVal v = resolve(eval_term(t));
    if (v.kind != PVal::Kind::Known) return Found::Unknown;
    if (v.domain != nullptr && sh.kind == PartialStructure::Shape::Kind::Listed && v.domain == sh.set.identity()) {
      index = v.index;
      return Found::Yes;
    }
    index = partial_->index_in(shape, v.value());
    return index == PartialStructure::npos ? Found::No : Found::Yes;
  }

  PVal apply_indexed(const PartialStructure::Slot& s, const CTerm& arg) {
    const auto& sh = partial_->shape(s.shape);
    std::size_t key = 0;
    if (locate(sh.left, arg, key) != Found::Yes) {
      saw_unknown_ = true;
      return PVal::unknown();
    }
    const std::size_t width = partial_->shape(sh.right).size;
    std::size_t hits = 0;
    std::size_t hit = 0;
    bool open = false;
    for (std::size_t k = key * width; k < (key + 1) * width; ++k) {
      const int st = cell_state(s.first_cell + k);
      if (st == PartialStructure::kUnassigned) open = true;
      if (st == 1) {
        ++hits;
        hit = k;
      }
    }
    if (hits == 1 && !open) {
      const auto& value_shape = partial_->shape(sh.right);
      const void* where = value_shape.kind == PartialStructure::Shape::Kind::Listed ? value_shape.set.identity() : nullptr;
      return PVal::known_ref(s.universe.elements()[hit].right(), where, hit % width);
    }
    saw_unknown_ = true;
    return PVal::unknown();
  }

  PVal apply(const PVal& f, const PVal& x) {
    if (f.kind == PVal::Kind::Unknown || x.kind != PVal::Kind::Known) {
      saw_unknown_ = true;
      return PVal::unknown();
    }
    if (f.kind == PVal::Kind::Known) {
      const auto elems = require_set_value(f.value(), "applied term").elements();
      const auto [lo, hi] = key_range(elems, x.value());
      if (hi - lo == 1) return PVal::part_of(f, elems[lo].right());
      if (partial_ != nullptr) {
        saw_unknown_ = true;
        return PVal::unknown();
      }
      throw Error(ErrorCode::ApplyUndefined, to_string(f.value()) + " has " + std::to_string(hi - lo) +
                                                 " values at " + to_string(x.value()));
    }
    const auto& s = partial_->slot(f.slot);
    if (s.kind != PartialStructure::SlotKind::Subset) {
      throw Error(ErrorCode::InvalidFormula, "applied term is not a set of pairs");
    }
    const auto elems = s.universe.elements();
    const auto [lo, hi] = key_range(elems, x.value());
    std::size_t hits = 0;
    std::size_t hit = 0;
    bool open = false;
    for (std::size_t k = lo; k < hi; ++k) {
      const int st = cell_state(s.first_cell + k);
      if (st == PartialStructure::kUnassigned) open = true;
      if (st == 1) {
        ++hits;
        hit = k;
      }
    }
    if (hits == 1 && !open) return PVal::known_ref(elems[hit].right());
    saw_unknown_ = true;
    return PVal::unknown();
  }

  Truth member(const PVal& x, const PVal& set) {
    if (set.kind == PVal::Kind::Unknown) return Truth::Unknown;
    if (set.kind == PVal::Kind::Known) {
      const Value& s = require_set_value(set.value(), "membership target");
      if (s.empty()) return Truth::False;
      if (x.kind != PVal::Kind::Known) return Truth::Unknown;
      return truth_of(s.contains(x.value()));
    }
    const auto& slot = partial_->slot(set.slot);
    if (slot.kind != PartialStructure::SlotKind::Subset) {
      throw Error(ErrorCode::InvalidFormula, "membership target is not a set");
    }
    if (x.kind != PVal::Kind::Known) return Truth::Unknown;
    const std::size_t k = slot.universe.index_of(x.value());
    if (k == slot.universe.size()) return Truth::False;
    const int st = cell_state(slot.first_cell + k);
    return st == PartialStructure::kUnassigned ? Truth::Unknown : truth_of(st == 1);
  }

  Truth quantify(const CFormula& f) {
    const bool universal = f.kind == Formula::Kind::ForAll;
    const PVal domain = eval_term(f.terms[0]);
    if (domain.kind == PVal::Kind::Unknown) return Truth::Unknown;

    Truth result = universal ? Truth::True : Truth::False;
    // Returns true when the quantifier is decided.
    auto step = [&](const Value& domain_set, std::size_t k, Truth in_domain) -> bool {
      env_.push_back(Binding{&domain_set.elements()[k], domain_set.identity(), k});
      const Truth body = eval(f.subs[0]);
      env_.pop_back();
      if (universal) {
        if (in_domain == Truth::True) {
          if (body == Truth::False) return true;
          if (body == Truth::Unknown) result = Truth::Unknown;
        } else if (body != Truth::True) {
          result = Truth::Unknown;
        }
      } else {
        if (in_domain == Truth::True) {
          if (body == Truth::True) return true;
          if (body == Truth::Unknown) result = Truth::Unknown;
        } else if (body != Truth::False) {
          result = Truth::Unknown;
        }
      }
      return false;
    };

    if (domain.kind == PVal::Kind::Known) {
      const Value& set = require_set_value(domain.value(), "quantifier domain");
      for (std::size_t k = 0; k < set.size(); ++k) {
        if (step(set, k, Truth::True)) return universal ? Truth::False : Truth::True;
      }
      return result;
    }
    const auto& slot = partial_->slot(domain.slot);
    if (slot.kind != PartialStructure::SlotKind::Subset) {
      throw Error(ErrorCode::InvalidFormula, "quantifier domain is not a set");
    }
    for (std::size_t k = 0; k < slot.universe.size(); ++k) {
      const int st = cell_state(slot.first_cell + k);
      if (st == 0) continue;
      if (step(slot.universe, k, st == 1 ? Truth::True : Truth::Unknown)) return universal ? Truth::False : Truth::True;
    }
    return result;
  }

  Truth eval(const CFormula& f) {
    const Truth t = eval_node(f);
    if (t == Truth::Unknown) saw_unknown_ = true;
    return t;
  }

  Truth eval_node(const CFormula& f) {
    using K = Formula::Kind;
    switch (f.kind) {
      case K::True: return Truth::True;
      case K::False: return Truth::False;
      case K::Not: {
        const Truth a = eval(f.subs[0]);
        if (a == Truth::Unknown) return a;
        return a == Truth::True ? Truth::False : Truth::True;
      }
      case K::And: {
        const Truth a = eval(f.subs[0]);
        if (a == Truth::False) return a;
        const Truth b = eval(f.subs[1]);
        if (a == Truth::True) return b;
        return b == Truth::False ? Truth::False : Truth::Unknown;
      }
      case K::Or: {
        const Truth a = eval(f.subs[0]);
        if (a == Truth::True) return a;
        const Truth b = eval(f.subs[1]);
        if (a == Truth::False) return b;
        return b == Truth::True ? Truth::True : Truth::Unknown;
      }
      case K::Implies: {
        const Truth a = eval(f.subs[0]);
        if (a == Truth::False) return Truth::True;
        const Truth b = eval(f.subs[1]);
        if (a == Truth::True) return b;
        return b == Truth::True ? Truth::True : Truth::Unknown;
      }
      case K::Iff: {
        const Truth a = eval(f.subs[0]);
        const Truth b = eval(f.subs[1]);
        if (a == Truth::Unknown || b == Truth::Unknown) return Truth::Unknown;
        return truth_of(a == b);
      }
      case K::ForAll:
      case K::Exists: return quantify(f);
      case K::Eq: {
        const PVal a = resolve(eval_term(f.terms[0]));
        const PVal b = resolve(eval_term(f.terms[1]));
        if (a.kind != PVal::Kind::Known || b.kind != PVal::Kind::Known) return Truth::Unknown;
        return truth_of(a.value() == b.value());
      }
      case K::Member: {
        const PVal set = eval_term(f.terms[1]);
        if (set.kind == PVal::Kind::Partial) {
          const auto& slot = partial_->slot(set.slot);
          if (slot.kind == PartialStructure::SlotKind::Subset) {
            std::size_t k = 0;
            const Found where = locate(slot.shape, f.terms[0], k);
            if (where == Found::Unknown) return Truth::Unknown;
            if (where == Found::No) return Truth::False;
            const int st = cell_state(slot.first_cell + k);
            return st == PartialStructure::kUnassigned ? Truth::Unknown : truth_of(st == 1);
          }
        }
        return member(resolve(eval_term(f.terms[0])), set);
      }
    }
    return Truth::Unknown;
  }

  std::shared_ptr<const CompiledFormula> formula_;
  std::vector<Value> sets_;
  Limits limits_;
  std::vector<std::optional<Value>> cache_;
  const PartialStructure* partial_ = nullptr;
  Value known_structure_;
  std::vector<Binding> env_;
  std::vector<Value> instance_domains_;
  std::vector<std::uint32_t>* reads_ = nullptr;
  bool saw_unknown_ = false;
};

/// Names of the base sets a typification exposes to formulas: X1..Xn, then the aux names.
inline std::vector<std::string> base_set_names(const Typification& typ) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < typ.n_main(); ++i) names.push_back(main_set_name(i));
  for (const auto& a : typ.aux()) names.push_back(a.name);
  return names;
}

/// One-shot exact evaluation of `phi` with X1..Xn bound to `mains`, the aux
/// names bound to their carriers and `symbol` bound to `s`.
inline bool evaluate(const Formula& phi, const Typification& typ, std::span<const FiniteSet> mains, const Value& s,
                     const std::string& symbol = "s", const Limits& limits = {}) {
  auto compiled = std::make_shared<const CompiledFormula>(phi, base_set_names(typ), symbol);
  Evaluator ev(std::move(compiled), typ.carriers(mains), limits);
  return ev.eval(s);
}

/// Exact evaluation against an explicit name -> set binding.
inline bool evaluate(const Formula& phi, const std::vector<std::pair<std::string, Value>>& sets,
                     const std::string& symbol, const Value& s, const Limits& limits = {}) {
  std::vector<std::string> names;
  std::vector<Value> values;
  for (const auto& [name, value] : sets) {
    names.push_back(name);
    values.push_back(value);
  }
  auto compiled = std::make_shared<const CompiledFormula>(phi, std::move(names), symbol);
  Evaluator ev(std::move(compiled), std::move(values), limits);
  return ev.eval(s);
}

}  // namespace structura
