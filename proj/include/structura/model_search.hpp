#pragma once

// Pruned search for the structures of a type that satisfy a formula.
//
// Cells of a PartialStructure are decided in order. The formula is split
// into units: its top-level conjuncts, each further cut into the instances
// of its leading universal quantifiers. A unit is evaluated three-valued and
//  - False cuts the branch, since no completion can be a model;
//  - True is final for the whole subtree;
//  - Unknown is watched on the undecided cells it consulted and evaluated
//    again only when one of them is decided.
// Evaluation is monotone in the decided cells, so a watched result can only
// change through a watched cell. At a leaf every unit is decided; a leaf
// whose units all came out True without touching anything undecided or
// undefined is a model, any other leaf is settled by the whole formula.

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "structura/error.hpp"
#include "structura/evaluate.hpp"
#include "structura/formula.hpp"
#include "structura/limits.hpp"
#include "structura/transport.hpp"

namespace structura {

struct SearchStats {
  std::uint64_t nodes = 0;
  std::uint64_t leaves = 0;
  std::uint64_t models = 0;
};

template <typename OnModel>
SearchStats search_models(const Typification& typ, const std::string& symbol, const Formula& phi,
                          std::span<const FiniteSet> mains, const Limits& limits, OnModel&& on_model) {
  const auto carriers = typ.carriers(mains);
  const auto names = base_set_names(typ);
  PartialStructure ps(typ.type(), carriers, limits);

  std::vector<std::unique_ptr<Evaluator>> parts;
  struct Unit {
    Evaluator* ev;
    Evaluator::Instance inst;
  };
  std::vector<Unit> units;
  for (const auto& part : conjuncts(phi)) {
    parts.push_back(std::make_unique<Evaluator>(std::make_shared<const CompiledFormula>(part, names, symbol), carriers,
                                                limits));
    for (auto& inst : parts.back()->instances()) units.push_back(Unit{parts.back().get(), std::move(inst)});
  }
  Evaluator whole(std::make_shared<const CompiledFormula>(phi, names, symbol), carriers, limits);

  struct UnitState {
    Truth truth = Truth::Unknown;
    std::uint64_t gen = 0;
    bool clean = false;  // decided without meeting anything undecided or undefined
  };
  struct Watch {
    std::uint32_t unit;
    std::uint64_t gen;
  };
  struct Undo {
    bool is_unit;
    std::uint32_t index;  // unit or cell
    UnitState state;      // previous unit state
    std::size_t size;     // previous watch-list length
  };

  const std::size_t n_cells = ps.cell_count();
  std::vector<UnitState> state(units.size());
  std::vector<std::vector<Watch>> watch(n_cells);
  std::vector<Undo> undo;
  std::vector<std::uint32_t> reads;
  std::vector<std::uint64_t> seen(n_cells, 0);
  std::uint64_t gen = 0;
  SearchStats stats;

  // Evaluates unit u and rewires its watches; returns its new truth value.
  auto refresh = [&](std::uint32_t u) {
    reads.clear();
    const Truth t = units[u].ev->eval(units[u].inst, ps, &reads);
    undo.push_back(Undo{true, u, state[u], 0});
    state[u] = UnitState{t, ++gen, !units[u].ev->saw_unknown()};
    if (t == Truth::Unknown) {
      for (const auto c : reads) {
        if (seen[c] == gen) continue;
        seen[c] = gen;
        undo.push_back(Undo{false, c, {}, watch[c].size()});
        watch[c].push_back(Watch{u, gen});
      }
    }
    return t;
  };

  auto rollback = [&](std::size_t mark) {
    while (undo.size() > mark) {
      const Undo& e = undo.back();
      if (e.is_unit) {
        state[e.index] = e.state;
      } else {
        watch[e.index].resize(e.size);
      }
      undo.pop_back();
    }
  };

  auto dfs = [&](auto&& self, std::size_t cell) -> void {
    if (++stats.nodes > limits.max_search_nodes) {
      throw Error(ErrorCode::SizeExceeded, "model search exceeded " + std::to_string(limits.max_search_nodes) + " nodes");
    }
    if (cell == n_cells) {
      ++stats.leaves;
      // Clean True units evaluated exactly as the whole formula would be.
      bool all_clean = true;
      for (const auto& st : state) all_clean = all_clean && st.truth == Truth::True && st.clean;
      if (all_clean) {
        ++stats.models;
        on_model(ps.materialize());
        return;
      }
      const Truth quick = whole.eval(ps);
      if (quick == Truth::False && !whole.saw_unknown()) return;
      Value s = ps.materialize();
      if (quick == Truth::True && !whole.saw_unknown() ? true : whole.eval(s)) {
        ++stats.models;
        on_model(s);
      }
      return;
    }
    const std::size_t n = ps.choices(cell);
    for (std::size_t choice = 0; choice < n; ++choice) {
      const std::size_t mark = undo.size();
      ps.assign(cell, static_cast<int>(choice));
      bool alive = true;
      // refresh() never appends to this cell's list: it is decided now.
      for (std::size_t i = 0; i < watch[cell].size() && alive; ++i) {
        const Watch w = watch[cell][i];
        if (state[w.unit].gen != w.gen || state[w.unit].truth != Truth::Unknown) continue;
        alive = refresh(w.unit) != Truth::False;
      }
      if (alive) self(self, cell + 1);
      rollback(mark);
    }
    ps.unassign(cell);
  };

  for (std::uint32_t u = 0; u < units.size(); ++u) {
    if (refresh(u) == Truth::False) return stats;
  }
  dfs(dfs, 0);
  return stats;
}

}  // namespace structura
