#pragma once

#include <cstdint>
#include <cstdlib>
#include <string>

namespace structura {

/// Size guards. The mathematics is size-free; the engine is not.
struct Limits {
  /// Largest base set handed to powerset().
  std::size_t max_powerset_base = 16;
  /// Largest number of elements any single constructed set may hold.
  std::uint64_t max_cells = std::uint64_t{1} << 16;
  /// Largest carrier for bijection enumeration (8! maps).
  std::size_t max_bijection_base = 8;
  /// Node budget for the pruned model search.
  std::uint64_t max_search_nodes = 200'000'000;

  /// Defaults, with STRUCTURA_MAX_CELLS applied when set to a positive integer.
  static Limits from_env() {
    Limits limits;
    if (const char* raw = std::getenv("STRUCTURA_MAX_CELLS")) {
      try {
        const auto parsed = std::stoull(raw);
        if (parsed > 0) limits.max_cells = parsed;
      } catch (...) {
        // unparsable override is ignored
      }
    }
    return limits;
  }
};

}  // namespace structura
