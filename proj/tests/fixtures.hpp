#pragma once

// Bitmask / table encodings from oracles.hpp turned into library values over {0..n-1}.

#include "oracles.hpp"
#include "structura/value.hpp"

namespace fixture {

using structura::num;
using structura::pair;
using structura::Value;

inline Value relation(std::uint32_t mask, int n) {
  std::vector<Value> pairs;
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (oracle::has(mask, n, x, y)) pairs.push_back(pair(num(x), num(y)));
    }
  }
  return Value::set(std::move(pairs));
}

inline Value family(std::uint64_t fam, int n) {
  std::vector<Value> opens;
  for (int m = 0; m < (1 << n); ++m) {
    if (!((fam >> m) & 1u)) continue;
    std::vector<Value> elems;
    for (int x = 0; x < n; ++x) {
      if ((m >> x) & 1) elems.push_back(num(x));
    }
    opens.push_back(Value::set(std::move(elems)));
  }
  return Value::set(std::move(opens));
}

inline Value table(const oracle::Table& t, int n) {
  std::vector<Value> rows;
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) rows.push_back(pair(pair(num(x), num(y)), num(t[x * n + y])));
  }
  return Value::set(std::move(rows));
}

}  // namespace fixture
