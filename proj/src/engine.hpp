// The staged least-fixed-point procedure, the three-valued collapse, and the
// staged greatest lower bound of interpretation sets.

#pragma once

#include <optional>

#include "semantics.hpp"

namespace extensia {

// Within-stage iteration exceeded its cap; indicates a monotonicity bug.
struct StageDivergence : Error {
  using Error::Error;
};

// A within-stage iterate failed [=_alpha against its predecessor.
struct MonotonicityViolation : Error {
  using Error::Error;
};

struct EmptySet : Error {
  using Error::Error;
};

// The solver's result failed an internal consistency assertion.
struct InternalInvariant : Error {
  using Error::Error;
};

struct EngineConfig {
  std::optional<uint32_t> kappa;            // nullopt = auto
  std::optional<uint64_t> iterationCap;     // per stage; nullopt = 2*cells+2
  bool trace = false;
  uint64_t budget = kDefaultBudget;
};

enum class CellStatus : uint8_t {
  Stabilized,    // value of order alpha, fixed at stage alpha
  Rigid,         // constant across the final iterates, kept as computed
  ZeroAssigned,  // never stabilized; carries the intermediate value 0
};

struct CellOutcome {
  CellStatus status = CellStatus::ZeroAssigned;
  uint32_t stage = 0;  // meaningful for Stabilized
};

struct SolveResult {
  Interpretation model;
  uint32_t kappa = 0;
  uint32_t stagesUsed = 0;
  std::map<std::string, std::vector<CellOutcome>> cellInfo;
  std::vector<std::string> trace;
};

// N+1 where N counts the program's first-order cells: for each predicate the
// product of |U| over its iota argument positions (predicate-typed positions
// contribute a factor of one, since their domain size grows with kappa).
uint32_t autoKappa(const Program& program);

// The staged procedure: starting from the all-F_0 interpretation, iterate T_P
// within stage alpha until consecutive iterates are =_alpha, stabilize the
// cells of order alpha, reset the rest to F_{alpha+1} and continue. Stops when
// everything is stabilized, a stage stabilizes nothing new, or the stage
// budget runs out; the leftover cells keep their value when it was constant
// across the final iterates and become 0 otherwise.
SolveResult leastModel(const Program& program, const EngineConfig& cfg);

// T_alpha -> T_0 (True), F_alpha -> F_0 (False), 0 -> 0 (Undefined).
Interpretation collapse(const Interpretation& m);
std::string collapseLabel(TruthValue v);  // "True" | "False" | "Undef"

// The [=-greatest lower bound of a nonempty set of interpretations, computed
// stage by stage; cells whose staged descent never lands below kappa are 0.
Interpretation glbInterpretations(const std::vector<Interpretation>& ms);

}  // namespace extensia
