#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <optional>
#include <vector>

#include "truth.hpp"

using namespace extensia;

namespace {

constexpr uint32_t kKappa = 4;

std::vector<TruthValue> allValues(uint32_t kappa = kKappa) {
  return truthChain(kappa);
}

// Independent oracle for x|_alpha: the minimal (w.r.t. both [=_alpha and <=)
// upper bound of {x} within the cone (x]_alpha, found by scanning all of V.
std::optional<TruthValue> restrictOracle(TruthValue x, uint32_t alpha,
                                         uint32_t kappa) {
  auto inCone = [&](TruthValue y) {
    for (uint32_t beta = 0; beta < alpha; ++beta)
      if (!eqAlpha(x, y, beta)) return false;
    return true;
  };
  std::vector<TruthValue> candidates;
  for (TruthValue y : allValues(kappa))
    if (sqAlpha(x, y, alpha)) candidates.push_back(y);
  for (TruthValue y : candidates) {
    bool minimal = true;
    for (TruthValue z : candidates) {
      if (!inCone(z)) continue;
      if (!sqAlpha(y, z, alpha) || !leq(y, z)) {
        minimal = false;
        break;
      }
    }
    if (minimal) return y;
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("order of truth values") {
  CHECK(order(TruthValue::truth(0)) == Ordinal::finite(0));
  CHECK(order(TruthValue::falsity(3)) == Ordinal::finite(3));
  CHECK(order(TruthValue::zero()) == Ordinal::infinity());
  CHECK(Ordinal::infinity() > Ordinal::finite(1'000'000));
}

TEST_CASE("chain order") {
  // F_0 < F_1 < ... < 0 < ... < T_1 < T_0
  CHECK(leq(TruthValue::falsity(0), TruthValue::zero()));
  CHECK(leq(TruthValue::falsity(0), TruthValue::falsity(1)));
  CHECK(leq(TruthValue::truth(1), TruthValue::truth(0)));
  CHECK(leq(TruthValue::zero(), TruthValue::truth(7)));
  CHECK(!leq(TruthValue::truth(5), TruthValue::zero()));
  for (TruthValue v : allValues()) CHECK(leq(v, v));
  // Totality and transitivity, exhaustively.
  auto vs = allValues();
  for (TruthValue a : vs)
    for (TruthValue b : vs) {
      CHECK((leq(a, b) || leq(b, a)));
      for (TruthValue c : vs)
        if (leq(a, b) && leq(b, c)) CHECK(leq(a, c));
    }
}

TEST_CASE("negation") {
  CHECK(neg(TruthValue::falsity(0), kKappa) == TruthValue::truth(1));
  CHECK(neg(TruthValue::truth(0), kKappa) == TruthValue::falsity(1));
  CHECK(neg(TruthValue::zero(), kKappa) == TruthValue::zero());
  // Order-reversing into strictly deeper levels.
  for (TruthValue v : allValues()) {
    if (v.sign == Sign::Zero) continue;
    if (v.level + 1 >= kKappa) {
      CHECK_THROWS_AS(neg(v, kKappa), LevelOverflow);
      continue;
    }
    TruthValue n = neg(v, kKappa);
    CHECK(order(n) == Ordinal::finite(v.level + 1));
    CHECK(((v.sign == Sign::False) == (n.sign == Sign::True)));
  }
}

TEST_CASE("meet and join") {
  CHECK(meet(std::vector<TruthValue>{TruthValue::truth(0),
                                     TruthValue::falsity(1)}) ==
        TruthValue::falsity(1));
  CHECK(join(std::vector<TruthValue>{}) == TruthValue::falsity(0));
  CHECK(meet(std::vector<TruthValue>{}) == TruthValue::truth(0));
  CHECK(join(std::vector<TruthValue>{TruthValue::falsity(2), TruthValue::zero(),
                                     TruthValue::truth(3)}) ==
        TruthValue::truth(3));
}

TEST_CASE("sq_alpha defining clauses") {
  CHECK(sqAlpha(TruthValue::falsity(1), TruthValue::truth(1), 1));
  CHECK(sqAlpha(TruthValue::falsity(2), TruthValue::truth(3), 1));
  CHECK(!sqAlpha(TruthValue::falsity(0), TruthValue::truth(3), 1));
  // Reference re-implementation straight from the three clauses.
  auto vs = allValues();
  for (uint32_t alpha = 0; alpha < kKappa; ++alpha) {
    for (TruthValue x : vs)
      for (TruthValue y : vs) {
        bool clause1 = x == y && order(x) < Ordinal::finite(alpha);
        bool clause2 =
            (x == TruthValue::falsity(alpha) &&
             order(y) >= Ordinal::finite(alpha)) ||
            (y == TruthValue::truth(alpha) && order(x) >= Ordinal::finite(alpha));
        bool clause3 = order(x) > Ordinal::finite(alpha) &&
                       order(y) > Ordinal::finite(alpha);
        CHECK(sqAlpha(x, y, alpha) == (clause1 || clause2 || clause3));
      }
  }
}

TEST_CASE("eq_alpha") {
  CHECK(eqAlpha(TruthValue::truth(0), TruthValue::truth(0), 4));
  CHECK(eqAlpha(TruthValue::falsity(2), TruthValue::truth(5), 1));
  CHECK(!eqAlpha(TruthValue::falsity(1), TruthValue::falsity(2), 1));
  // eq_alpha is sq_alpha in both directions.
  auto vs = allValues();
  for (uint32_t alpha = 0; alpha < kKappa; ++alpha)
    for (TruthValue x : vs)
      for (TruthValue y : vs)
        CHECK(eqAlpha(x, y, alpha) ==
              (sqAlpha(x, y, alpha) && sqAlpha(y, x, alpha)));
}

TEST_CASE("sq_alpha is a preorder") {
  auto vs = allValues();
  for (uint32_t alpha = 0; alpha < kKappa; ++alpha) {
    for (TruthValue x : vs) CHECK(sqAlpha(x, x, alpha));
    for (TruthValue a : vs)
      for (TruthValue b : vs)
        for (TruthValue c : vs)
          if (sqAlpha(a, b, alpha) && sqAlpha(b, c, alpha))
            CHECK(sqAlpha(a, c, alpha));
  }
}

TEST_CASE("restriction against the brute-force oracle") {
  // Frozen values, derived by the oracle below.
  CHECK(restrictTo(TruthValue::truth(0), 2, kKappa + 2) == TruthValue::truth(0));
  CHECK(restrictTo(TruthValue::falsity(5), 2, 8) == TruthValue::falsity(3));
  CHECK(restrictTo(TruthValue::zero(), 2, kKappa + 2) == TruthValue::falsity(3));
  for (uint32_t alpha = 0; alpha + 1 < kKappa; ++alpha)
    for (TruthValue v : allValues()) {
      auto expected = restrictOracle(v, alpha, kKappa);
      REQUIRE(expected.has_value());
      CHECK(restrictTo(v, alpha, kKappa) == *expected);
    }
}

TEST_CASE("restriction identities") {
  // x =_alpha x|_alpha and x|_alpha <= ... <= x.
  for (uint32_t alpha = 0; alpha + 1 < kKappa; ++alpha)
    for (TruthValue v : allValues()) {
      TruthValue r = restrictTo(v, alpha, kKappa);
      CHECK(eqAlpha(v, r, alpha));
      CHECK(leq(r, v));
    }
  // (x|_a)|_b = x|_min(a,b)
  for (uint32_t a = 0; a + 1 < kKappa; ++a)
    for (uint32_t b = 0; b + 1 < kKappa; ++b)
      for (TruthValue v : allValues())
        CHECK(restrictTo(restrictTo(v, a, kKappa), b, kKappa) ==
              restrictTo(v, std::min(a, b), kKappa));
}

TEST_CASE("pairwise restriction lemma") {
  // For alpha != beta: x|_b [=_a y|_b iff (b < a and x|_b = y|_b)
  //                                or (b > a and x|_a [=_a y|_a).
  for (uint32_t a = 0; a + 1 < kKappa; ++a)
    for (uint32_t b = 0; b + 1 < kKappa; ++b) {
      if (a == b) continue;
      for (TruthValue x : allValues())
        for (TruthValue y : allValues()) {
          bool lhs = sqAlpha(restrictTo(x, b, kKappa), restrictTo(y, b, kKappa), a);
          bool rhs =
              (b < a && restrictTo(x, b, kKappa) == restrictTo(y, b, kKappa)) ||
              (b > a && sqAlpha(restrictTo(x, a, kKappa),
                                restrictTo(y, a, kKappa), a));
          CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("staged glb") {
  CHECK(glbAlpha(std::vector<TruthValue>{}, 2, kKappa) == TruthValue::truth(2));
  CHECK(glbAlpha(std::vector<TruthValue>{TruthValue::falsity(0)}, 2, kKappa) ==
        TruthValue::falsity(0));
  CHECK(glbAlpha(std::vector<TruthValue>{TruthValue::truth(3),
                                         TruthValue::truth(4)},
                 2, kKappa + 2) == TruthValue::truth(3));
  CHECK_THROWS_AS(
      glbAlpha(std::vector<TruthValue>{TruthValue::truth(0),
                                       TruthValue::truth(5)},
               2, kKappa + 2),
      NotInCone);
}

TEST_CASE("staged lub") {
  CHECK(lubAlpha(std::vector<TruthValue>{}, 1, kKappa) ==
        TruthValue::falsity(1));
  CHECK(lubAlpha(std::vector<TruthValue>{TruthValue::truth(0)}, 1, kKappa) ==
        TruthValue::truth(0));
  // Cross-check the singleton case against restriction.
  CHECK(lubAlpha(std::vector<TruthValue>{TruthValue::truth(0)}, 1, kKappa) ==
        restrictTo(TruthValue::truth(0), 1, kKappa));
  CHECK(lubAlpha(std::vector<TruthValue>{TruthValue::falsity(3),
                                         TruthValue::zero()},
                 1, kKappa) == TruthValue::falsity(2));
}

// The four axioms of a basic model, checked exhaustively over V.
TEST_CASE("basic model axioms on V") {
  auto vs = allValues();

  // Axiom 1: x [=_b y and a < b imply x =_a y.
  for (uint32_t b = 0; b < kKappa; ++b)
    for (uint32_t a = 0; a < b; ++a)
      for (TruthValue x : vs)
        for (TruthValue y : vs)
          if (sqAlpha(x, y, b)) CHECK(eqAlpha(x, y, a));

  // Axiom 2: =_a for all a < kappa implies equality.
  for (TruthValue x : vs)
    for (TruthValue y : vs) {
      bool allEq = true;
      for (uint32_t a = 0; a < kKappa; ++a) allEq = allEq && eqAlpha(x, y, a);
      if (allEq) CHECK(x == y);
    }

  // Axiom 3: every subset of a cone has a minimal upper bound within the
  // cone, for both [=_alpha and <=. The implemented lub_alpha is that bound
  // whenever the subset is nonempty or the cone's base has order >= alpha;
  // in the remaining case (the empty subset of a one-element cone {x} with
  // order(x) < alpha) the witness is x itself.
  for (uint32_t alpha = 0; alpha + 1 < kKappa; ++alpha) {
    for (TruthValue x : vs) {
      std::vector<TruthValue> cone;
      for (TruthValue y : vs) {
        bool in = true;
        for (uint32_t beta = 0; beta < alpha && in; ++beta)
          in = eqAlpha(x, y, beta);
        if (in) cone.push_back(y);
      }
      const size_t n = cone.size();
      REQUIRE(n <= 16);
      for (uint64_t mask = 0; mask < (uint64_t{1} << n); ++mask) {
        std::vector<TruthValue> subset;
        for (size_t i = 0; i < n; ++i)
          if (mask & (uint64_t{1} << i)) subset.push_back(cone[i]);
        TruthValue y = (subset.empty() && order(x) < Ordinal::finite(alpha))
                           ? x
                           : lubAlpha(subset, alpha, kKappa);
        for (TruthValue s : subset) CHECK(sqAlpha(s, y, alpha));
        for (TruthValue z : cone) {
          bool upper = true;
          for (TruthValue s : subset) upper = upper && sqAlpha(s, z, alpha);
          if (upper) {
            CHECK(sqAlpha(y, z, alpha));
            CHECK(leq(y, z));
          }
        }
      }
    }
  }

  // Axiom 4: joins preserve [=_alpha, for all pairs of pairs.
  for (uint32_t alpha = 0; alpha < kKappa; ++alpha)
    for (TruthValue x1 : vs)
      for (TruthValue y1 : vs) {
        if (!sqAlpha(x1, y1, alpha)) continue;
        for (TruthValue x2 : vs)
          for (TruthValue y2 : vs) {
            if (!sqAlpha(x2, y2, alpha)) continue;
            CHECK(sqAlpha(join2(x1, x2), join2(y1, y2), alpha));
          }
      }
}

TEST_CASE("text round-trip") {
  CHECK(toText(TruthValue::truth(0)) == "T0");
  CHECK(toText(TruthValue::falsity(3)) == "F3");
  CHECK(toText(TruthValue::zero()) == "0");
  for (TruthValue v : allValues(6)) {
    auto parsed = truthFromText(toText(v));
    REQUIRE(parsed.has_value());
    CHECK(*parsed == v);
  }
  CHECK(!truthFromText("T").has_value());
  CHECK(!truthFromText("x3").has_value());
  CHECK(!truthFromText("T03").has_value());
}

TEST_CASE("chain enumeration") {
  auto chain = truthChain(2);
  REQUIRE(chain.size() == 5);
  CHECK(chain[0] == TruthValue::falsity(0));
  CHECK(chain[1] == TruthValue::falsity(1));
  CHECK(chain[2] == TruthValue::zero());
  CHECK(chain[3] == TruthValue::truth(1));
  CHECK(chain[4] == TruthValue::truth(0));
  for (size_t i = 0; i < chain.size(); ++i) {
    CHECK(chainIndex(chain[i], 2) == i);
    CHECK(truthFromChainIndex(i, 2) == chain[i]);
    if (i + 1 < chain.size()) CHECK(leq(chain[i], chain[i + 1]));
  }
}
