// The infinite-valued truth domain V, truncated at a finite depth kappa:
//
//   F_0 < F_1 < ... < F_{kappa-1} < 0 < T_{kappa-1} < ... < T_1 < T_0
//
// Values are written T<level>, F<level> and 0. The level of a signed value is
// its "order"; the neutral value 0 has infinite order. Negation-as-failure
// maps a value of order a to the opposite sign at order a+1.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace extensia {

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Negation or restriction would need a level at or beyond the configured
// truncation depth. Signals that kappa is too small for the computation.
struct LevelOverflow : Error {
  using Error::Error;
};

// Argument set of a staged lub/glb is not contained in any cone (x]_alpha.
struct NotInCone : Error {
  using Error::Error;
};

enum class Sign : int8_t { False = -1, Zero = 0, True = 1 };

struct TruthValue {
  Sign sign = Sign::False;
  uint32_t level = 0;  // always 0 when sign == Zero

  static constexpr TruthValue truth(uint32_t level) {
    return TruthValue{Sign::True, level};
  }
  static constexpr TruthValue falsity(uint32_t level) {
    return TruthValue{Sign::False, level};
  }
  static constexpr TruthValue zero() { return TruthValue{Sign::Zero, 0}; }

  bool operator==(const TruthValue&) const = default;
};

// A natural number extended with +infinity (the order of 0).
struct Ordinal {
  static Ordinal finite(uint64_t v) { return Ordinal{false, v}; }
  static Ordinal infinity() { return Ordinal{true, 0}; }

  bool isInfinite = false;
  uint64_t value = 0;

  bool operator==(const Ordinal&) const = default;

  friend bool operator<(const Ordinal& a, const Ordinal& b) {
    if (a.isInfinite) return false;
    if (b.isInfinite) return true;
    return a.value < b.value;
  }
  friend bool operator<=(const Ordinal& a, const Ordinal& b) {
    return a == b || a < b;
  }
  friend bool operator>(const Ordinal& a, const Ordinal& b) { return b < a; }
  friend bool operator>=(const Ordinal& a, const Ordinal& b) { return b <= a; }
};

Ordinal order(TruthValue v);

// Position in the chain F_0 < F_1 < ... < 0 < ... < T_1 < T_0, independent of
// any truncation. Total order on V.
int64_t chainRank(TruthValue v);

inline bool leq(TruthValue a, TruthValue b) {
  return chainRank(a) <= chainRank(b);
}

TruthValue meet2(TruthValue a, TruthValue b);
TruthValue join2(TruthValue a, TruthValue b);

// Chain minimum / maximum; empty meet is T_0 (top), empty join is F_0 (bottom).
TruthValue meet(std::span<const TruthValue> values);
TruthValue join(std::span<const TruthValue> values);

// The stage preorder x [=_alpha y on V.
bool sqAlpha(TruthValue x, TruthValue y, uint32_t alpha);

// x =_alpha y iff x = y, or both orders exceed alpha.
bool eqAlpha(TruthValue x, TruthValue y, uint32_t alpha);

// Negation-as-failure: F_a -> T_{a+1}, T_a -> F_{a+1}, 0 -> 0.
// Throws LevelOverflow when the result level would reach kappa.
TruthValue neg(TruthValue v, uint64_t kappa);

// x|_alpha: x itself when order(x) <= alpha, otherwise F_{alpha+1}.
TruthValue restrictTo(TruthValue v, uint32_t alpha, uint64_t kappa);

// Staged greatest lower bound on V: T_alpha for the empty set; otherwise the
// chain meet when its order is <= alpha, else T_{alpha+1}. Requires the set to
// lie in a cone (x]_alpha: distinct members must all have order >= alpha.
TruthValue glbAlpha(std::span<const TruthValue> values, uint32_t alpha,
                    uint64_t kappa);

// Dual of glbAlpha.
TruthValue lubAlpha(std::span<const TruthValue> values, uint32_t alpha,
                    uint64_t kappa);

// All 2*kappa+1 truth values in chain order.
std::vector<TruthValue> truthChain(uint32_t kappa);

// Index of v in truthChain(kappa). Requires order(v) < kappa or v == 0.
uint64_t chainIndex(TruthValue v, uint32_t kappa);
TruthValue truthFromChainIndex(uint64_t index, uint32_t kappa);
bool inTruncatedDomain(TruthValue v, uint32_t kappa);

std::string toText(TruthValue v);  // "T0", "F3", "0"
std::optional<TruthValue> truthFromText(const std::string& text);

}  // namespace extensia
