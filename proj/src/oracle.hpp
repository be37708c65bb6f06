// Independent brute-force and classical-algorithm oracles used to validate
// the solver on desk-scale instances: interpretation enumeration, the
// minimum model by model filtering and staged glb, grounding of the
// first-order normal fragment, and the alternating-fixpoint well-founded
// model.

#pragma once

#include <functional>

#include "engine.hpp"
#include "semantics.hpp"

namespace extensia {

struct NotNormalFragment : Error {
  using Error::Error;
};

// Raised when no Herbrand model is found; impossible by the theory, so it
// always indicates a solver or oracle bug.
struct NoModels : Error {
  using Error::Error;
};

// Pull-based stream of all interpretations of a program at a fixed kappa,
// cells swept in canonical order.
class InterpretationEnumerator {
 public:
  InterpretationEnumerator(std::shared_ptr<const DomainContext> ctx,
                           const Program& program);

  // Total number of interpretations; throws BudgetExceeded when the count
  // does not fit the context's budget.
  uint64_t count() const { return count_; }

  std::optional<Interpretation> next();

 private:
  Interpretation base_;
  std::vector<uint64_t> digits_;
  uint64_t truthCount_;
  uint64_t count_;
  bool done_ = false;
};

// Filters the enumerated interpretations through isModel and returns the
// staged glb of all of them (checked to be a model itself).
Interpretation bruteMinModel(const Program& program,
                             std::shared_ptr<const DomainContext> ctx);

// First-order normal programs over ground atoms.
struct GroundNormalProgram {
  struct Rule {
    size_t head;
    std::vector<size_t> positive;
    std::vector<size_t> negative;
  };
  std::vector<std::string> atoms;  // canonical names, sorted
  std::vector<Rule> rules;

  size_t atomIndex(const std::string& name) const;
};

// Instantiates a surface program over a universe. The program must be in the
// normal fragment: atoms and negated atoms over variables and constants only.
GroundNormalProgram ground(const SurfaceProgram& sp, const Universe& universe);

enum class ThreeValued : uint8_t { False, Undef, True };

// The well-founded model by the alternating fixpoint of the reduct operator.
std::map<std::string, ThreeValued> wfsAlternatingFixpoint(
    const GroundNormalProgram& g);

// Deterministic pseudo-random normal programs for the test corpus.
// `index` selects one program of the fixed-seed family.
std::string generateNormalProgram(uint64_t seed, uint32_t index);

// Smaller family: propositional programs with at most `maxAtoms` atoms.
std::string generateTinyProgram(uint64_t seed, uint32_t index,
                                uint32_t maxAtoms);

}  // namespace extensia
