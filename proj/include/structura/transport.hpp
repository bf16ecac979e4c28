#pragma once

// Transport of structures along bijections of the main carriers, with the
// identity on every auxiliary carrier, under an explicit typification.

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "structura/echelon.hpp"
#include "structura/error.hpp"
#include "structura/extension.hpp"
#include "structura/finite_map.hpp"

namespace structura {

/// Name of the i-th (0-based) main base set in formulas: X1, X2, ...
inline std::string main_set_name(std::size_t i) { return "X" + std::to_string(i + 1); }

struct AuxSet {
  std::string name;
  FiniteSet carrier;

  friend bool operator==(const AuxSet&, const AuxSet&) = default;
};

/// `s in T(X1..Xn; Y1..Ym)`: slots 1..n are main, n+1..n+m are the bound
/// auxiliary carriers.
class Typification {
 public:
  Typification(EchelonType type, std::size_t n_main, std::vector<AuxSet> aux = {})
      : type_(std::move(type)), n_main_(n_main), aux_(std::move(aux)) {
    if (n_main_ < 1) throw Error(ErrorCode::ArityMismatch, "a typification needs at least one main base set");
    if (type_.arity() != n_main_ + aux_.size()) {
      throw Error(ErrorCode::ArityMismatch, "type over " + std::to_string(type_.arity()) + " sets cannot house " +
                                                std::to_string(n_main_) + " main and " + std::to_string(aux_.size()) +
                                                " auxiliary sets");
    }
    for (const auto& a : aux_) require_set(a.carrier, "auxiliary carrier");
  }

  const EchelonType& type() const noexcept { return type_; }
  std::size_t n_main() const noexcept { return n_main_; }
  const std::vector<AuxSet>& aux() const noexcept { return aux_; }

  /// mains followed by the auxiliary carriers.
  std::vector<FiniteSet> carriers(std::span<const FiniteSet> mains) const {
    if (mains.size() != n_main_) {
      throw Error(ErrorCode::ArityMismatch,
                  "expected " + std::to_string(n_main_) + " main carriers, got " + std::to_string(mains.size()));
    }
    std::vector<FiniteSet> out(mains.begin(), mains.end());
    for (const auto& a : aux_) out.push_back(a.carrier);
    return out;
  }

  /// fs followed by the identities on the auxiliary carriers.
  std::vector<FiniteMap> maps(std::span<const FiniteMap> fs) const {
    if (fs.size() != n_main_) {
      throw Error(ErrorCode::ArityMismatch,
                  "expected " + std::to_string(n_main_) + " maps, got " + std::to_string(fs.size()));
    }
    std::vector<FiniteMap> out(fs.begin(), fs.end());
    for (const auto& a : aux_) out.push_back(FiniteMap::identity(a.carrier));
    return out;
  }

  friend bool operator==(const Typification&, const Typification&) = default;

 private:
  EchelonType type_;
  std::size_t n_main_;
  std::vector<AuxSet> aux_;
};

namespace detail {

inline void check_transport_args(const Typification& typ, std::span<const FiniteSet> mains,
                                 std::span<const FiniteMap> fs, bool forward) {
  if (fs.size() != typ.n_main() || mains.size() != typ.n_main()) {
    throw Error(ErrorCode::ArityMismatch, "transport needs exactly one bijection per main carrier");
  }
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (!fs[i].bijective()) throw Error(ErrorCode::NotBijective, "map " + std::to_string(i + 1) + " is not a bijection");
    if (fs[i].domain() != mains[i]) {
      throw Error(ErrorCode::DomainMismatch,
                  "map " + std::to_string(i + 1) + " does not start at " + (forward ? "" : "the source of ") +
                      main_set_name(i));
    }
  }
}

}  // namespace detail

/// s' = T<f1..fn; I_Y1..I_Ym>(s).
inline Value transport(const Value& s, const Typification& typ, std::span<const FiniteSet> mains,
                       std::span<const FiniteMap> fs) {
  detail::check_transport_args(typ, mains, fs, true);
  const auto carriers = typ.carriers(mains);
  if (!contains_structure(typ.type(), carriers, s)) {
    throw Error(ErrorCode::NotAStructureOfType, to_string(s) + " is not a structure of type " + describe(typ.type()));
  }
  return extend_at(typ.type(), typ.maps(fs), s);
}

/// Inverse of transport: carries s', typed on the image carriers, back along fs^-1.
inline Value transport_back(const Value& s_prime, const Typification& typ, std::span<const FiniteSet> mains,
                            std::span<const FiniteMap> fs) {
  detail::check_transport_args(typ, mains, fs, false);
  std::vector<FiniteMap> inverses;
  std::vector<FiniteSet> images;
  inverses.reserve(fs.size());
  for (const auto& f : fs) {
    inverses.push_back(invert(f));
    images.push_back(f.codomain());
  }
  return transport(s_prime, typ, images, inverses);
}

}  // namespace structura
