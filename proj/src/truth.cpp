#include "truth.hpp"

#include <algorithm>

namespace extensia {

namespace {
// Anything comfortably above every representable level.
constexpr int64_t kZeroRank = int64_t{1} << 40;
}  // namespace

Ordinal order(TruthValue v) {
  if (v.sign == Sign::Zero) return Ordinal::infinity();
  return Ordinal::finite(v.level);
}

int64_t chainRank(TruthValue v) {
  switch (v.sign) {
    case Sign::False:
      return static_cast<int64_t>(v.level);
    case Sign::Zero:
      return kZeroRank;
    case Sign::True:
      return 2 * kZeroRank - static_cast<int64_t>(v.level);
  }
  return 0;
}

TruthValue meet2(TruthValue a, TruthValue b) {
  return chainRank(a) <= chainRank(b) ? a : b;
}

TruthValue join2(TruthValue a, TruthValue b) {
  return chainRank(a) >= chainRank(b) ? a : b;
}

TruthValue meet(std::span<const TruthValue> values) {
  TruthValue acc = TruthValue::truth(0);
  for (TruthValue v : values) acc = meet2(acc, v);
  return acc;
}

TruthValue join(std::span<const TruthValue> values) {
  TruthValue acc = TruthValue::falsity(0);
  for (TruthValue v : values) acc = join2(acc, v);
  return acc;
}

bool sqAlpha(TruthValue x, TruthValue y, uint32_t alpha) {
  const Ordinal a = Ordinal::finite(alpha);
  if (x == y && order(x) < a) return true;
  if (x == TruthValue::falsity(alpha) && order(y) >= a) return true;
  if (y == TruthValue::truth(alpha) && order(x) >= a) return true;
  return order(x) > a && order(y) > a;
}

bool eqAlpha(TruthValue x, TruthValue y, uint32_t alpha) {
  if (x == y) return true;
  const Ordinal a = Ordinal::finite(alpha);
  return order(x) > a && order(y) > a;
}

TruthValue neg(TruthValue v, uint64_t kappa) {
  if (v.sign == Sign::Zero) return v;
  if (v.level + uint64_t{1} >= kappa)
    throw LevelOverflow("negation of " + toText(v) + " exceeds kappa = " +
                        std::to_string(kappa));
  return v.sign == Sign::False ? TruthValue::truth(v.level + 1)
                               : TruthValue::falsity(v.level + 1);
}

TruthValue restrictTo(TruthValue v, uint32_t alpha, uint64_t kappa) {
  if (order(v) <= Ordinal::finite(alpha)) return v;
  if (alpha + uint64_t{1} >= kappa)
    throw LevelOverflow("restriction to level " + std::to_string(alpha) +
                        " exceeds kappa = " + std::to_string(kappa));
  return TruthValue::falsity(alpha + 1);
}

namespace {

void checkCone(std::span<const TruthValue> values, uint32_t alpha) {
  // X lies in some (x]_alpha iff its members are pairwise =_beta for all
  // beta < alpha, i.e. distinct members all have order >= alpha.
  bool twoDistinct = false;
  for (size_t i = 1; i < values.size() && !twoDistinct; ++i)
    twoDistinct = !(values[i] == values[0]);
  if (!twoDistinct) return;
  for (TruthValue v : values) {
    if (order(v) < Ordinal::finite(alpha))
      throw NotInCone("set member " + toText(v) + " has order below " +
                      std::to_string(alpha));
  }
}

}  // namespace

TruthValue glbAlpha(std::span<const TruthValue> values, uint32_t alpha,
                    uint64_t kappa) {
  if (values.empty()) return TruthValue::truth(alpha);
  checkCone(values, alpha);
  TruthValue m = meet(values);
  if (order(m) <= Ordinal::finite(alpha)) return m;
  if (alpha + uint64_t{1} >= kappa)
    throw LevelOverflow("glb at level " + std::to_string(alpha) +
                        " exceeds kappa = " + std::to_string(kappa));
  return TruthValue::truth(alpha + 1);
}

TruthValue lubAlpha(std::span<const TruthValue> values, uint32_t alpha,
                    uint64_t kappa) {
  if (values.empty()) return TruthValue::falsity(alpha);
  checkCone(values, alpha);
  TruthValue j = join(values);
  if (order(j) <= Ordinal::finite(alpha)) return j;
  if (alpha + uint64_t{1} >= kappa)
    throw LevelOverflow("lub at level " + std::to_string(alpha) +
                        " exceeds kappa = " + std::to_string(kappa));
  return TruthValue::falsity(alpha + 1);
}

std::vector<TruthValue> truthChain(uint32_t kappa) {
  std::vector<TruthValue> chain;
  chain.reserve(2 * static_cast<size_t>(kappa) + 1);
  for (uint32_t l = 0; l < kappa; ++l) chain.push_back(TruthValue::falsity(l));
  chain.push_back(TruthValue::zero());
  for (uint32_t l = kappa; l-- > 0;) chain.push_back(TruthValue::truth(l));
  return chain;
}

bool inTruncatedDomain(TruthValue v, uint32_t kappa) {
  return v.sign == Sign::Zero || v.level < kappa;
}

uint64_t chainIndex(TruthValue v, uint32_t kappa) {
  if (!inTruncatedDomain(v, kappa))
    throw LevelOverflow("value " + toText(v) +
                        " lies outside the domain truncated at kappa = " +
                        std::to_string(kappa));
  switch (v.sign) {
    case Sign::False:
      return v.level;
    case Sign::Zero:
      return kappa;
    case Sign::True:
      return 2 * static_cast<uint64_t>(kappa) - v.level;
  }
  return 0;
}

TruthValue truthFromChainIndex(uint64_t index, uint32_t kappa) {
  if (index < kappa) return TruthValue::falsity(static_cast<uint32_t>(index));
  if (index == kappa) return TruthValue::zero();
  if (index <= 2 * static_cast<uint64_t>(kappa))
    return TruthValue::truth(static_cast<uint32_t>(2 * uint64_t{kappa} - index));
  throw Error("truth index out of range");
}

std::string toText(TruthValue v) {
  switch (v.sign) {
    case Sign::False:
      return "F" + std::to_string(v.level);
    case Sign::Zero:
      return "0";
    case Sign::True:
      return "T" + std::to_string(v.level);
  }
  return "?";
}

std::optional<TruthValue> truthFromText(const std::string& text) {
  if (text == "0") return TruthValue::zero();
  if (text.size() < 2) return std::nullopt;
  if (text[0] != 'T' && text[0] != 'F') return std::nullopt;
  uint64_t level = 0;
  for (size_t i = 1; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9') return std::nullopt;
    level = level * 10 + static_cast<uint64_t>(text[i] - '0');
    if (level > 0xffffffffull) return std::nullopt;
  }
  if (text.size() > 2 && text[1] == '0') return std::nullopt;
  return text[0] == 'T' ? TruthValue::truth(static_cast<uint32_t>(level))
                        : TruthValue::falsity(static_cast<uint32_t>(level));
}

}  // namespace extensia
