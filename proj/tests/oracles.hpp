#pragma once

// Brute-force counters over plain integers. Nothing here touches the
// library: relations are bitmasks, operations are tables, topologies are
// families of bitmask subsets. The frozen constants in the tests were read
// off these functions before the engine existed.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <set>
#include <vector>

namespace oracle {

// ---- relations on {0..n-1}, bit x*n+y set iff (x,y) is in r

inline bool has(std::uint32_t r, int n, int x, int y) { return (r >> (x * n + y)) & 1u; }

inline bool reflexive(std::uint32_t r, int n) {
  for (int x = 0; x < n; ++x) {
    if (!has(r, n, x, x)) return false;
  }
  return true;
}

inline bool irreflexive(std::uint32_t r, int n) {
  for (int x = 0; x < n; ++x) {
    if (has(r, n, x, x)) return false;
  }
  return true;
}

inline bool symmetric(std::uint32_t r, int n) {
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (has(r, n, x, y) && !has(r, n, y, x)) return false;
    }
  }
  return true;
}

inline bool asymmetric(std::uint32_t r, int n) {
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (has(r, n, x, y) && has(r, n, y, x)) return false;
    }
  }
  return true;
}

inline bool antisymmetric(std::uint32_t r, int n) {
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (x != y && has(r, n, x, y) && has(r, n, y, x)) return false;
    }
  }
  return true;
}

inline bool transitive(std::uint32_t r, int n) {
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      for (int z = 0; z < n; ++z) {
        if (has(r, n, x, y) && has(r, n, y, z) && !has(r, n, x, z)) return false;
      }
    }
  }
  return true;
}

inline std::uint64_t count_relations(int n, const std::function<bool(std::uint32_t, int)>& pred) {
  std::uint64_t count = 0;
  for (std::uint32_t r = 0; r < (1u << (n * n)); ++r) count += pred(r, n) ? 1 : 0;
  return count;
}

/// p.r: (p[x], p[y]) in result iff (x, y) in r.
inline std::uint32_t relabel(std::uint32_t r, int n, const std::vector<int>& p) {
  std::uint32_t out = 0;
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (has(r, n, x, y)) out |= 1u << (p[x] * n + p[y]);
    }
  }
  return out;
}

/// Orbits of the relations satisfying pred under relabeling.
inline std::uint64_t count_relation_classes(int n, const std::function<bool(std::uint32_t, int)>& pred) {
  std::vector<int> p(n);
  std::uint64_t classes = 0;
  for (std::uint32_t r = 0; r < (1u << (n * n)); ++r) {
    if (!pred(r, n)) continue;
    std::iota(p.begin(), p.end(), 0);
    std::uint32_t least = r;
    do {
      least = std::min(least, relabel(r, n, p));
    } while (std::next_permutation(p.begin(), p.end()));
    classes += least == r ? 1 : 0;
  }
  return classes;
}

// ---- topologies: families of subsets of {0..n-1}, family bit m set iff subset m is open

inline bool is_topology(std::uint64_t family, int n) {
  const int full = (1 << n) - 1;
  auto open = [&](int m) { return (family >> m) & 1u; };
  if (!open(0) || !open(full)) return false;
  for (int a = 0; a <= full; ++a) {
    for (int b = 0; b <= full; ++b) {
      if (open(a) && open(b) && (!open(a | b) || !open(a & b))) return false;
    }
  }
  return true;
}

inline std::uint64_t count_topologies(int n) {
  std::uint64_t count = 0;
  for (std::uint64_t fam = 0; fam < (std::uint64_t{1} << (1 << n)); ++fam) count += is_topology(fam, n) ? 1 : 0;
  return count;
}

/// Connected: the specialization graph (x ~ y when some minimal open set
/// holds both) links every point. For finite spaces this agrees with "no
/// clopen set besides {} and X"; computed here by union-find over minimal
/// neighbourhoods.
inline bool connected_by_reachability(std::uint64_t family, int n) {
  if (n == 0) return true;
  const int full = (1 << n) - 1;
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (int x = 0; x < n; ++x) {
    int minimal = full;
    for (int m = 0; m <= full; ++m) {
      if (((family >> m) & 1u) && ((m >> x) & 1)) minimal &= m;
    }
    for (int y = 0; y < n; ++y) {
      if ((minimal >> y) & 1) parent[find(x)] = find(y);
    }
  }
  for (int x = 1; x < n; ++x) {
    if (find(x) != find(0)) return false;
  }
  return true;
}

inline bool is_discrete(std::uint64_t family, int n) {
  for (int x = 0; x < n; ++x) {
    if (!((family >> (1 << x)) & 1u)) return false;
  }
  return true;
}

// ---- binary operations as tables t[x*n+y]

using Table = std::vector<int>;

template <typename Visit>
void for_each_table(int n, Visit&& visit) {
  Table t(static_cast<std::size_t>(n * n), 0);
  while (true) {
    visit(std::as_const(t));
    std::size_t i = 0;
    while (i < t.size() && ++t[i] == n) t[i++] = 0;
    if (i == t.size()) return;
  }
}

inline bool associative(const Table& t, int n) {
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      for (int z = 0; z < n; ++z) {
        if (t[t[x * n + y] * n + z] != t[x * n + t[y * n + z]]) return false;
      }
    }
  }
  return true;
}

inline bool commutative(const Table& t, int n) {
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (t[x * n + y] != t[y * n + x]) return false;
    }
  }
  return true;
}

inline int neutral(const Table& t, int n) {
  for (int e = 0; e < n; ++e) {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x) ok = t[e * n + x] == x && t[x * n + e] == x;
    if (ok) return e;
  }
  return -1;
}

inline bool has_inverses(const Table& t, int n) {
  const int e = neutral(t, n);
  if (e < 0) return false;
  for (int x = 0; x < n; ++x) {
    bool found = false;
    for (int y = 0; y < n && !found; ++y) found = t[x * n + y] == e && t[y * n + x] == e;
    if (!found) return false;
  }
  return true;
}

inline std::uint64_t count_tables(int n, const std::function<bool(const Table&, int)>& pred) {
  std::uint64_t count = 0;
  for_each_table(n, [&](const Table& t) { count += pred(t, n) ? 1 : 0; });
  return count;
}

/// Pairs (add, mul) with mul(x, add(y, z)) = add(mul(x, y), mul(x, z)).
inline std::uint64_t count_distributive_pairs(int n) {
  std::vector<Table> all;
  for_each_table(n, [&](const Table& t) { all.push_back(t); });
  std::uint64_t count = 0;
  for (const auto& add : all) {
    for (const auto& mul : all) {
      bool ok = true;
      for (int x = 0; x < n && ok; ++x) {
        for (int y = 0; y < n && ok; ++y) {
          for (int z = 0; z < n && ok; ++z) ok = mul[x * n + add[y * n + z]] == add[mul[x * n + y] * n + mul[x * n + z]];
        }
      }
      count += ok ? 1 : 0;
    }
  }
  return count;
}

inline bool group(const Table& t, int n) { return associative(t, n) && has_inverses(t, n); }
inline bool monoid(const Table& t, int n) { return associative(t, n) && neutral(t, n) >= 0; }

/// Orbits of the tables satisfying pred under relabeling: t'(p x, p y) = p t(x, y).
inline std::uint64_t count_table_classes(int n, const std::function<bool(const Table&, int)>& pred) {
  std::set<Table> seen;
  std::uint64_t classes = 0;
  for_each_table(n, [&](const Table& t) {
    if (!pred(t, n) || seen.count(t)) return;
    ++classes;
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    do {
      Table u(t.size());
      for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) u[p[x] * n + p[y]] = p[t[x * n + y]];
      }
      seen.insert(u);
    } while (std::next_permutation(p.begin(), p.end()));
  });
  return classes;
}

inline std::uint64_t factorial(int n) { return n <= 1 ? 1 : static_cast<std::uint64_t>(n) * factorial(n - 1); }

}  // namespace oracle
