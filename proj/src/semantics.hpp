// Herbrand interpretations, states, the expression evaluator, the immediate
// consequence operator and the interpretation-level orderings.

#pragma once

#include "domains.hpp"
#include "syntax.hpp"

namespace extensia {

struct SignatureMismatch : Error {
  using Error::Error;
};

// One predicate's fully materialized table over its cell space. Cells are
// stored flat in row-major order of the argument domains.
struct PredTable {
  TypeRef type;
  std::vector<TypeRef> argTypes;
  std::vector<uint64_t> argSizes;
  uint64_t cellCount = 1;
  std::shared_ptr<const std::vector<TruthValue>> cells;
  Denotation denotation;  // table view sharing `cells`
};

class Interpretation {
 public:
  using CellMap = std::map<std::string, std::vector<TruthValue>>;

  Interpretation() = default;

  // All predicates of the program filled with a constant value.
  Interpretation(std::shared_ptr<const DomainContext> ctx,
                 const Program& program, TruthValue fill);

  // Same signature, new cell values.
  Interpretation withCells(CellMap cells) const;

  using SharedCellMap =
      std::map<std::string, std::shared_ptr<const std::vector<TruthValue>>>;
  Interpretation withShared(SharedCellMap cells) const;

  const DomainContext& ctx() const { return *ctx_; }
  const std::shared_ptr<const DomainContext>& ctxPtr() const { return ctx_; }
  const std::map<std::string, PredTable>& tables() const { return tables_; }
  const PredTable& table(const std::string& pred) const;
  uint64_t totalCells() const { return totalCells_; }

  bool sameSignature(const Interpretation& other) const;

 private:
  std::shared_ptr<const DomainContext> ctx_;
  std::map<std::string, PredTable> tables_;
  uint64_t totalCells_ = 0;
};

// Variable bindings; a small stack-shaped map.
class State {
 public:
  void bind(const std::string& name, Denotation d) {
    bindings_.emplace_back(name, std::move(d));
  }
  void pop() { bindings_.pop_back(); }
  const Denotation* lookup(const std::string& name) const {
    for (auto it = bindings_.rbegin(); it != bindings_.rend(); ++it)
      if (it->first == name) return &it->second;
    return nullptr;
  }

 private:
  std::vector<std::pair<std::string, Denotation>> bindings_;
};

// The thirteen-clause semantics of expressions.
Denotation eval(const Interpretation& interp, State& state, const ExprRef& e);
Denotation evalClosed(const Interpretation& interp, const ExprRef& e);

// T_P: joins the clause-body denotations per predicate; predicates with no
// clause get the empty join (the all-F_0 table). Fully materialized.
Interpretation tpStep(const Program& program, const Interpretation& interp);

// Repeated application of T_P with per-clause caching: a clause's table is
// recomputed only when a predicate table it reads has changed since the last
// step. Unchanged predicate tables keep their identity across steps, so the
// cache carries across a whole solver run.
class TpEvaluator {
 public:
  explicit TpEvaluator(const Program& program);
  Interpretation step(const Interpretation& interp);

 private:
  struct ClauseCache {
    std::vector<std::string> reads;  // predicate constants in the body
    // A few recent results, keyed by the identities of the tables read; the
    // solver revisits earlier inputs around stage resets. Entries share
    // ownership of their keys, otherwise a recycled allocation could alias a
    // dead table.
    struct Entry {
      std::vector<std::shared_ptr<const std::vector<TruthValue>>> readTables;
      std::shared_ptr<const std::vector<TruthValue>> table;
    };
    std::vector<Entry> entries;
  };
  const Program& program_;
  std::vector<ClauseCache> clauses_;
  std::map<std::string, std::shared_ptr<const std::vector<TruthValue>>>
      bottoms_;
};

// M is a model iff every clause body evaluates below the head's table.
bool isModel(const Program& program, const Interpretation& m);

bool interpLeq(const Interpretation& a, const Interpretation& b);
bool interpSqAlpha(const Interpretation& a, const Interpretation& b,
                   uint32_t alpha);
bool interpEqAlpha(const Interpretation& a, const Interpretation& b,
                   uint32_t alpha);
bool interpEquals(const Interpretation& a, const Interpretation& b);

// The global relation [=: equality, or strict [=_alpha at the least level
// where the two interpretations are not =_alpha-equal (below kappa).
bool interpSq(const Interpretation& a, const Interpretation& b);

// Canonical cell key of a predicate table cell: argument keys joined with
// commas ("a,b", "[T0,F0]"), or "()" for propositional predicates.
std::string cellKey(const DomainContext& ctx, const PredTable& table,
                    uint64_t cell);

// Human-readable cell label: "p", "p(a,b)", "phi([T0,F0])".
std::string cellLabel(const DomainContext& ctx, const std::string& pred,
                      const PredTable& table, uint64_t cell);

}  // namespace extensia
