#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "structura/formula.hpp"
#include "structura/species.hpp"

namespace fuzz {

using namespace structura;
using namespace structura::build;

// Random ASTs. Depth counts nested formula and term nodes together.
class Fuzzer {
 public:
  explicit Fuzzer(std::uint32_t seed) : rng_(seed) {}

  Value value(int depth) {
    switch (pick(depth <= 1 ? 2 : 4)) {
      case 0: return num(range(-2, 5));
      case 1: return atom(std::string(1, static_cast<char>('a' + range(0, 2))));
      case 2: return pair(value(depth - 1), value(depth - 1));
      default: {
        std::vector<Value> elems;
        for (int i = range(0, 3); i > 0; --i) elems.push_back(value(depth - 1));
        return Value::set(std::move(elems));
      }
    }
  }

  EchelonType type(int depth, std::size_t arity) {
    switch (pick(depth <= 1 ? 1 : 3)) {
      case 0: return EchelonType::proj(static_cast<std::size_t>(range(1, static_cast<int>(arity))), arity);
      case 1: return EchelonType::pow(type(depth - 1, arity));
      default: return EchelonType::prod(type(depth - 1, arity), type(depth - 1, arity));
    }
  }

  Term term(int depth, std::vector<std::string>& scope) {
    const int leaves = scope.empty() ? 3 : 4;
    const int k = pick(depth <= 1 ? leaves : leaves + 6);
    if (k >= leaves) {
      switch (k - leaves) {
        case 0: return tup(term(depth - 1, scope), term(depth - 1, scope));
        case 1: return app(term(depth - 1, scope), term(depth - 1, scope));
        case 2: return fst(term(depth - 1, scope));
        case 3: return snd(term(depth - 1, scope));
        case 4: return pw(term(depth - 1, scope));
        default: return times(term(depth - 1, scope), term(depth - 1, scope));
      }
    }
    switch (k) {
      case 0: return c(value(3));
      case 1: return set(sets_[pick(static_cast<int>(sets_.size()))]);
      case 2: return sym(symbol_);
      default: return v(scope[pick(static_cast<int>(scope.size()))]);
    }
  }

  Formula formula(int depth, std::vector<std::string>& scope) {
    if (depth <= 1) return pick(2) ? tt() : ff();
    switch (pick(11)) {
      case 0: return tt();
      case 1: return ff();
      case 2: return no(formula(depth - 1, scope));
      case 3: return land(formula(depth - 1, scope), formula(depth - 1, scope));
      case 4: return lor(formula(depth - 1, scope), formula(depth - 1, scope));
      case 5: return imp(formula(depth - 1, scope), formula(depth - 1, scope));
      case 6: return iff(formula(depth - 1, scope), formula(depth - 1, scope));
      case 7:
      case 8: {
        const std::string var = vars_[pick(static_cast<int>(vars_.size()))];
        Term domain = term(depth - 1, scope);
        scope.push_back(var);
        Formula body = formula(depth - 1, scope);
        scope.pop_back();
        return pick(2) ? Formula::forall(var, domain, body) : Formula::exists(var, domain, body);
      }
      case 9: return eq(term(depth - 1, scope), term(depth - 1, scope));
      default: return in(term(depth - 1, scope), term(depth - 1, scope));
    }
  }

  Species species(int depth) {
    const auto mains = static_cast<std::size_t>(range(1, 2));
    std::vector<AuxSet> aux;
    for (int i = range(0, 2); i > 0; --i) aux.push_back({"K" + std::to_string(aux.size() + 1), Value::set({value(2), value(2)})});
    sets_.clear();
    for (std::size_t i = 1; i <= mains; ++i) sets_.push_back("X" + std::to_string(i));
    for (const auto& a : aux) sets_.push_back(a.name);
    const std::vector<std::string> symbols = {"s", "t", "delta"};
    symbol_ = symbols[pick(3)];
    const std::size_t arity = mains + aux.size();
    Typification typing(type(3, arity), mains, aux);
    std::vector<std::string> scope;
    Formula axiom = formula(depth, scope);
    std::optional<Certificate> cert;
    if (pick(3) == 0) cert = Certificate{static_cast<std::size_t>(range(0, 4)), pick(2) == 0};
    return Species{"fuzz" + std::to_string(counter_++), std::move(typing), std::move(axiom), symbol_, cert};
  }

  const std::vector<std::string>& set_names() const { return sets_; }
  const std::string& symbol() const { return symbol_; }

 private:
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }
  int range(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  std::mt19937 rng_;
  std::vector<std::string> sets_ = {"X1"};
  std::string symbol_ = "s";
  std::vector<std::string> vars_ = {"x", "y", "z", "u2", "w"};
  int counter_ = 0;
};

}  // namespace fuzz
