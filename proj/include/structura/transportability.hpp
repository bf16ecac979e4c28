#pragma once

// Bounded-exhaustive transportability: for every tuple of canonical main
// carriers of size <= k, every permutation tuple f and every structure s of
// the type, phi(s) <=> phi(f.s). The verdict says "no counterexample up to k",
// nothing more.
//
// Two ways of covering a size tuple:
//  - Direct walks the realization and every bijection tuple.
//  - ModelClosure enumerates the model set M with the pruned search and checks
//    that M is mapped into itself by a generating set of the permutation
//    groups (per main, the swap of the first two atoms and the full cycle).
//    For a finite group action that is equivalent to the direct statement:
//    f.M is a subset of M for all f in the group, hence f.M = M, hence M and
//    its complement are both invariant.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "structura/echelon.hpp"
#include "structura/error.hpp"
#include "structura/evaluate.hpp"
#include "structura/extension.hpp"
#include "structura/finite_map.hpp"
#include "structura/limits.hpp"
#include "structura/model_search.hpp"
#include "structura/properties.hpp"
#include "structura/species.hpp"
#include "structura/transport.hpp"

namespace structura {

enum class SweepMethod { Auto, Direct, ModelClosure };

inline std::string to_string(SweepMethod m) {
  switch (m) {
    case SweepMethod::Auto: return "auto";
    case SweepMethod::Direct: return "direct";
    case SweepMethod::ModelClosure: return "model-closure";
  }
  return "?";
}

struct SweepOptions {
  SweepMethod method = SweepMethod::Auto;
  /// Auto picks Direct when a size tuple's realization has at most this many elements.
  std::uint64_t direct_threshold = 4096;
};

/// One size tuple of the sweep.
struct SizeReport {
  std::vector<std::size_t> sizes;
  SweepMethod method = SweepMethod::Direct;
  std::uint64_t structures = 0;  // structures evaluated (Direct) or models found (ModelClosure)
  std::uint64_t maps = 0;        // bijection tuples applied per structure
};

struct Counterexample {
  std::vector<FiniteSet> mains;
  std::vector<FiniteMap> maps;
  Value structure;
  Value transported;
  bool holds_before = false;
  bool holds_after = false;
};

struct TransportabilityVerdict {
  std::size_t bound = 0;
  std::vector<SizeReport> sizes;
  std::optional<Counterexample> counterexample;

  bool verified() const { return !counterexample; }
};

namespace detail {

inline std::vector<std::vector<std::size_t>> size_tuples(std::size_t n_main, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur(n_main, 0);
  while (true) {
    out.push_back(cur);
    std::size_t pos = n_main;
    while (pos > 0) {
      --pos;
      if (++cur[pos] <= k) break;
      cur[pos] = 0;
      if (pos == 0) return out;
    }
    if (n_main == 0) return out;
  }
}

inline FiniteMap permutation_of(const FiniteSet& carrier, const std::vector<std::size_t>& image_index) {
  std::vector<Value> images;
  images.reserve(image_index.size());
  for (auto j : image_index) images.push_back(carrier.elements()[j]);
  return FiniteMap::from_images_unchecked(carrier, carrier, std::move(images));
}

/// Per main: swap of positions 0,1 and the cycle i -> i+1, identity elsewhere.
inline std::vector<std::vector<FiniteMap>> generator_tuples(std::span<const FiniteSet> mains) {
  std::vector<std::vector<FiniteMap>> out;
  for (std::size_t i = 0; i < mains.size(); ++i) {
    const std::size_t n = mains[i].size();
    if (n < 2) continue;
    std::vector<std::size_t> swap(n), cycle(n);
    for (std::size_t j = 0; j < n; ++j) {
      swap[j] = j;
      cycle[j] = (j + 1) % n;
    }
    std::swap(swap[0], swap[1]);
    for (const auto* perm : {&swap, &cycle}) {
      if (n == 2 && perm == &cycle) continue;  // same as the swap
      std::vector<FiniteMap> tuple;
      for (std::size_t m = 0; m < mains.size(); ++m) {
        tuple.push_back(m == i ? permutation_of(mains[m], *perm) : FiniteMap::identity(mains[m]));
      }
      out.push_back(std::move(tuple));
    }
  }
  return out;
}

inline Evaluator make_evaluator(const PropertySpec& p, std::span<const FiniteSet> carriers, const Limits& limits) {
  auto compiled = std::make_shared<const CompiledFormula>(p.formula, base_set_names(p.typing), p.symbol);
  return Evaluator(std::move(compiled), std::vector<Value>(carriers.begin(), carriers.end()), limits);
}

inline std::optional<Counterexample> sweep_direct(const PropertySpec& p, std::span<const FiniteSet> mains,
                                                  const Limits& limits, SizeReport& report) {
  const auto carriers = p.typing.carriers(mains);
  const FiniteSet all = realize(p.typing.type(), carriers, limits);
  Evaluator eval = make_evaluator(p, carriers, limits);
  std::vector<char> truth;
  truth.reserve(all.size());
  for (const auto& s : all.elements()) truth.push_back(eval.eval(s) ? 1 : 0);
  report.structures = all.size();

  std::vector<std::vector<FiniteMap>> tuples;
  for_each_bijection_tuple(mains, mains, limits, [&](const std::vector<FiniteMap>& fs) {
    tuples.push_back(fs);
    return false;
  });
  report.maps = tuples.size();

  std::vector<std::vector<FiniteMap>> extended;
  for (const auto& fs : tuples) extended.push_back(p.typing.maps(fs));
  for (std::size_t i = 0; i < all.size(); ++i) {
    const Value& s = all.elements()[i];
    for (std::size_t t = 0; t < tuples.size(); ++t) {
      Value moved = extend_at(p.typing.type(), extended[t], s);
      const auto j = all.index_of(moved);
      if (j == all.size()) throw Error(ErrorCode::NotAStructureOfType, "transported structure left the realization");
      if (truth[j] != truth[i]) {
        return Counterexample{std::vector<FiniteSet>(mains.begin(), mains.end()), tuples[t], s, std::move(moved),
                              truth[i] != 0, truth[j] != 0};
      }
    }
  }
  return std::nullopt;
}

inline std::optional<Counterexample> sweep_closure(const PropertySpec& p, std::span<const FiniteSet> mains,
                                                   const Limits& limits, SizeReport& report) {
  std::vector<Value> models;
  search_models(p.typing, p.symbol, p.formula, mains, limits, [&](const Value& s) { models.push_back(s); });
  std::sort(models.begin(), models.end());
  report.structures = models.size();
  std::unordered_set<Value, ValueHash> members(models.begin(), models.end());

  const auto generators = generator_tuples(mains);
  report.maps = generators.size();
  bool closed = true;
  for (const auto& g : generators) {
    const auto ext = p.typing.maps(g);
    for (const auto& s : models) {
      if (!members.contains(extend_at(p.typing.type(), ext, s))) {
        closed = false;
        break;
      }
    }
    if (!closed) break;
  }
  if (closed) return std::nullopt;

  // A model leaves M: report the least model, then the first bijection tuple, that does.
  std::optional<Counterexample> found;
  for (const auto& s : models) {
    for_each_bijection_tuple(mains, mains, limits, [&](const std::vector<FiniteMap>& fs) {
      Value moved = extend_at(p.typing.type(), p.typing.maps(fs), s);
      if (members.contains(moved)) return false;
      found = Counterexample{std::vector<FiniteSet>(mains.begin(), mains.end()), fs, s, std::move(moved), true, false};
      return true;
    });
    if (found) return found;
  }
  throw Error(ErrorCode::InvalidFormula, "closure check failed without a witnessing bijection");
}

}  // namespace detail

inline TransportabilityVerdict check_transportability(const PropertySpec& p, std::size_t k, const Limits& limits = {},
                                                      const SweepOptions& options = {}) {
  const std::size_t n_main = p.typing.n_main();
  if (k > limits.max_bijection_base) {
    throw Error(ErrorCode::SizeExceeded, "size bound " + std::to_string(k) + " exceeds the bijection limit");
  }
  TransportabilityVerdict verdict;
  verdict.bound = k;
  for (const auto& sizes : detail::size_tuples(n_main, k)) {
    std::vector<FiniteSet> mains;
    for (auto n : sizes) mains.push_back(atom_carrier(n));
    SizeReport report;
    report.sizes = sizes;
    SweepMethod method = options.method;
    if (method == SweepMethod::Auto) {
      const BigInt size = estimated_size(p.typing.type(), p.typing.carriers(mains));
      method = size <= options.direct_threshold ? SweepMethod::Direct : SweepMethod::ModelClosure;
    }
    report.method = method;
    auto cex = method == SweepMethod::Direct ? detail::sweep_direct(p, mains, limits, report)
                                             : detail::sweep_closure(p, mains, limits, report);
    verdict.sizes.push_back(std::move(report));
    if (cex) {
      verdict.counterexample = std::move(cex);
      return verdict;
    }
  }
  return verdict;
}

inline PropertySpec axiom_of(const Species& sigma) { return PropertySpec{sigma.name, sigma.typing, sigma.axiom, sigma.symbol}; }

inline TransportabilityVerdict check_transportability(const Species& sigma, std::size_t k, const Limits& limits = {},
                                                      const SweepOptions& options = {}) {
  return check_transportability(axiom_of(sigma), k, limits, options);
}

/// Recomputes both sides of a counterexample from scratch: true iff it is a
/// genuine violation (transport really gives `transported` and the truth
/// values really differ).
inline bool replay(const PropertySpec& p, const Counterexample& c, const Limits& limits = {}) {
  const Value moved = transport(c.structure, p.typing, c.mains, c.maps);
  if (moved != c.transported) return false;
  std::vector<FiniteSet> images;
  for (const auto& f : c.maps) images.push_back(f.codomain());
  const bool before = evaluate(p.formula, p.typing, c.mains, c.structure, p.symbol, limits);
  const bool after = evaluate(p.formula, p.typing, images, moved, p.symbol, limits);
  return before == c.holds_before && after == c.holds_after && before != after;
}

/// True when the attached certificate (if any) is reproduced at its bound.
inline bool certificate_holds(const Species& sigma, const Limits& limits = {}) {
  if (!sigma.certificate) return true;
  const auto verdict = check_transportability(sigma, sigma.certificate->bound, limits);
  return verdict.verified() == sigma.certificate->verified;
}

}  // namespace structura
