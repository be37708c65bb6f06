#include "engine.hpp"

#include <algorithm>
#include <sstream>

namespace extensia {

namespace {

void requireSolvable(const Program& program) {
  if (program.hasFunctionSymbols())
    throw InfiniteUniverse(
        "the program uses function symbols, so its Herbrand universe is "
        "infinite; only function-free programs can be solved");
  for (const auto& [name, type] : program.sig.predicates)
    for (const TypeRef& arg : type->predicateArgs())
      if (!arg->isEnumerable())
        throw NonEnumerableType(
            "predicate '" + name + "' takes an argument of type " +
            arg->toString() +
            ", which is outside the supported second-order fragment");
}

uint64_t countChanged(const Interpretation& a, const Interpretation& b) {
  uint64_t changed = 0;
  auto ita = a.tables().begin();
  auto itb = b.tables().begin();
  for (; ita != a.tables().end(); ++ita, ++itb) {
    const auto& ca = *ita->second.cells;
    const auto& cb = *itb->second.cells;
    for (size_t i = 0; i < ca.size(); ++i)
      if (!(ca[i] == cb[i])) ++changed;
  }
  return changed;
}

}  // namespace

uint32_t autoKappa(const Program& program) {
  if (program.hasFunctionSymbols())
    throw InfiniteUniverse("auto kappa needs a function-free program");
  Universe u = Universe::fromProgram(program);
  uint64_t cells = 0;
  for (const auto& [name, type] : program.sig.predicates) {
    uint64_t n = 1;
    for (const TypeRef& arg : type->predicateArgs())
      if (arg->isIota()) n *= u.size();
    cells += n;
  }
  uint64_t kappa = cells + 1;
  if (kappa > 100'000) throw BudgetExceeded("auto kappa is unreasonably large");
  return static_cast<uint32_t>(kappa);
}

namespace {

uint32_t negDepth(const ExprRef& e) {
  uint32_t inner = 0;
  for (const ExprRef& c : e->child) inner = std::max(inner, negDepth(c));
  return inner + (e->kind == Expr::Kind::Not ? 1 : 0);
}

uint32_t maxNegDepth(const Program& program) {
  uint32_t depth = 0;
  for (const Clause& c : program.clauses)
    depth = std::max(depth, negDepth(c.body));
  return depth;
}

bool appliesComputedTables(const Expr* e) {
  // Variables are only ever bound to enumerated domain elements, which fit
  // the truncated domain by construction; any other predicate-typed argument
  // is a computed table whose levels can climb past the stage budget.
  if (e->kind == Expr::Kind::App && e->child[1]->type &&
      !e->child[1]->type->isIota() && !e->child[1]->isVariable())
    return true;
  for (const ExprRef& c : e->child)
    if (appliesComputedTables(c.get())) return true;
  return false;
}

// True when evaluation can look computed truth values up as table keys, in
// which case the enumerated domain needs headroom above the stage budget.
bool appliesComputedTables(const Program& program) {
  for (const Clause& c : program.clauses)
    if (appliesComputedTables(c.body.get())) return true;
  return false;
}

SolveResult solveStaged(const Program& program, const EngineConfig& cfg,
                        uint32_t stageBudget, uint32_t domainKappa,
                        bool explicitKappa);

}  // namespace

SolveResult leastModel(const Program& program, const EngineConfig& cfg) {
  requireSolvable(program);
  typecheck(program);
  if (cfg.kappa) {
    if (*cfg.kappa < 1) throw Error("kappa must be at least 1");
    return solveStaged(program, cfg, *cfg.kappa, *cfg.kappa, true);
  }
  // Auto mode: the stage budget is the first-order cell bound. When the
  // program passes predicate-typed arguments around, evaluation looks
  // computed values up as table keys, so the enumerated domain is deepened
  // by a headroom covering the levels an unstabilized cell can climb to in
  // the final stages. A retry widens the headroom when a key still escapes.
  const uint32_t stages = autoKappa(program);
  if (!appliesComputedTables(program))
    return solveStaged(program, cfg, stages, stages, false);
  uint32_t headroom = std::max(4u, 2 * maxNegDepth(program));
  for (int attempt = 0;; ++attempt) {
    try {
      return solveStaged(program, cfg, stages, stages + headroom, false);
    } catch (const LevelOverflow&) {
      if (attempt >= 3) throw;
      headroom *= 2;
    }
  }
}

namespace {

SolveResult solveStaged(const Program& program, const EngineConfig& cfg,
                        uint32_t stageBudget, uint32_t domainKappa,
                        bool explicitKappa) {
  auto ctx = std::make_shared<const DomainContext>(
      Universe::fromProgram(program), domainKappa, cfg.budget);
  const uint32_t kappa = stageBudget;
  TpEvaluator evaluator(program);

  SolveResult result;
  result.kappa = domainKappa;
  Interpretation current(ctx, program, TruthValue::falsity(0));
  const uint64_t totalCells = current.totalCells();
  const uint64_t iterationCap = cfg.iterationCap.value_or(2 * totalCells + 2);

  // stage of stabilization per cell, or unset.
  std::map<std::string, std::vector<std::optional<uint32_t>>> stabilized;
  for (const auto& [name, table] : current.tables())
    stabilized[name].resize(table.cellCount);

  auto traceLine = [&](const std::string& line) {
    if (cfg.trace) result.trace.push_back(line);
  };

  uint64_t stabilizedCount = 0;
  Interpretation last = current, lastPrev = current, prevStageLast = current;
  bool havePrevStage = false;
  uint32_t stage = 0;
  bool allStable = false;

  for (; stage < kappa; ++stage) {
    // Iterate T_P until consecutive iterates agree on order-<=alpha values.
    uint64_t iters = 0;
    if (stage > 0) {
      prevStageLast = last;
      havePrevStage = true;
    }
    Interpretation prev = current;
    while (true) {
      Interpretation next = evaluator.step(prev);
      ++iters;
      if (!interpSqAlpha(prev, next, stage))
        throw MonotonicityViolation(
            "iterate " + std::to_string(iters) + " of stage " +
            std::to_string(stage) + " is not a [=_alpha successor");
      if (cfg.trace)
        traceLine("stage " + std::to_string(stage) + " iterate " +
                  std::to_string(iters) + " changed " +
                  std::to_string(countChanged(prev, next)) + " cells");
      if (interpEqAlpha(prev, next, stage)) {
        lastPrev = std::move(prev);
        last = std::move(next);
        break;
      }
      if (iters >= iterationCap)
        throw StageDivergence("stage " + std::to_string(stage) +
                              " exceeded the iteration cap of " +
                              std::to_string(iterationCap));
      prev = std::move(next);
    }

    // Cells whose limit value has order exactly alpha are final.
    uint64_t newlyStabilized = 0;
    for (const auto& [name, table] : last.tables()) {
      auto& marks = stabilized[name];
      const auto& cells = *table.cells;
      for (uint64_t i = 0; i < table.cellCount; ++i) {
        if (marks[i]) continue;
        if (order(cells[i]) == Ordinal::finite(stage)) {
          marks[i] = stage;
          ++newlyStabilized;
        }
      }
    }
    stabilizedCount += newlyStabilized;
    if (cfg.trace) {
      std::string line = "stage " + std::to_string(stage) + " stabilized " +
                         std::to_string(newlyStabilized) + " cells after " +
                         std::to_string(iters) + " iterates";
      if (newlyStabilized > 0 && newlyStabilized <= 8) {
        line += ":";
        for (const auto& [name, table] : last.tables()) {
          const auto& marks = stabilized[name];
          for (uint64_t i = 0; i < table.cellCount; ++i)
            if (marks[i] && *marks[i] == stage)
              line += " " + cellLabel(*ctx, name, table, i);
        }
      }
      traceLine(line);
    }

    if (stabilizedCount == totalCells) {
      allStable = true;
      ++stage;
      break;
    }
    if (stage + 1 == kappa) {
      ++stage;
      break;
    }

    // Reset the unstabilized cells to F_{alpha+1} for the next stage. Fully
    // stabilized tables keep their identity so downstream clause caches can
    // survive the stage boundary.
    Interpretation::SharedCellMap resetCells;
    for (const auto& [name, table] : last.tables()) {
      const auto& marks = stabilized[name];
      bool touched = false;
      for (uint64_t i = 0; i < table.cellCount && !touched; ++i)
        touched = !marks[i];
      if (!touched) {
        resetCells.emplace(name, table.cells);
        continue;
      }
      std::vector<TruthValue> cells = *table.cells;
      for (uint64_t i = 0; i < table.cellCount; ++i)
        if (!marks[i]) cells[i] = TruthValue::falsity(stage + 1);
      resetCells.emplace(
          name, std::make_shared<const std::vector<TruthValue>>(
                    std::move(cells)));
    }
    current = last.withShared(std::move(resetCells));
  }
  result.stagesUsed = stage;

  // Terminal assignment for cells that never reached their stage. A cell
  // whose value lives above the stage budget is kept only when it is rigid:
  // constant across the final iterates and identical to the previous
  // stage's converged value (an oscillating cell escapes one level deeper
  // per stage, so a stage-to-stage comparison separates the two). Everything
  // else is 0. A cell can also sit still by phase coincidence inside a
  // longer oscillation, so the candidates are refined against T_P: disputed
  // cells are demoted to 0 and the check repeats.
  Interpretation model = last;
  if (!allStable) {
    Interpretation::CellMap finalCells;
    for (const auto& [name, table] : last.tables()) {
      std::vector<TruthValue> cells = *table.cells;
      const auto& before = *lastPrev.table(name).cells;
      const auto& prior = *prevStageLast.table(name).cells;
      const auto& marks = stabilized[name];
      for (uint64_t i = 0; i < table.cellCount; ++i) {
        if (marks[i]) continue;
        bool rigid = cells[i] == before[i] &&
                     (!havePrevStage || cells[i] == prior[i]) &&
                     order(cells[i]) >= Ordinal::finite(stage);
        if (!rigid) cells[i] = TruthValue::zero();
      }
      finalCells.emplace(name, std::move(cells));
    }
    model = last.withCells(std::move(finalCells));

    for (uint64_t round = 0;; ++round) {
      Interpretation stepped = evaluator.step(model);
      uint64_t mismatched = 0, progressed = 0;
      TruthValue stuckValue = TruthValue::zero();
      std::string stuckCell;
      Interpretation::CellMap refined;
      for (const auto& [name, table] : model.tables()) {
        std::vector<TruthValue> cells = *table.cells;
        const auto& after = *stepped.table(name).cells;
        const auto& marks = stabilized[name];
        for (uint64_t i = 0; i < table.cellCount; ++i) {
          if (cells[i] == after[i]) continue;
          ++mismatched;
          if (marks[i] || cells[i].sign == Sign::Zero) {
            // A stabilized or zero-assigned cell cannot be demoted further;
            // if nothing else moves this round, the result cannot be made a
            // fixed point within this truncation.
            stuckValue = after[i];
            stuckCell = name;
            continue;
          }
          cells[i] = TruthValue::zero();
          ++progressed;
        }
        refined.emplace(name, std::move(cells));
      }
      if (mismatched == 0) break;
      if (progressed == 0) {
        if (explicitKappa && order(stuckValue) >= Ordinal::finite(kappa))
          throw LevelOverflow("kappa = " + std::to_string(kappa) +
                              " is too small for this program (cell of '" +
                              stuckCell + "' needs " + toText(stuckValue) +
                              ")");
        throw InternalInvariant(
            "terminal refinement cannot reach a fixed point");
      }
      model = model.withCells(std::move(refined));
      if (round > totalCells)
        throw InternalInvariant("terminal refinement failed to settle");
    }
  }

  // The result must be an exact fixed point of T_P.
  Interpretation check = evaluator.step(model);
  if (!interpEquals(check, model)) {
    if (explicitKappa) {
      // Diagnose a truncation that is too shallow for the program.
      auto ita = check.tables().begin();
      auto itb = model.tables().begin();
      for (; ita != check.tables().end(); ++ita, ++itb) {
        const auto& ca = *ita->second.cells;
        const auto& cb = *itb->second.cells;
        for (size_t i = 0; i < ca.size(); ++i)
          if (!(ca[i] == cb[i]) &&
              order(ca[i]) >= Ordinal::finite(kappa))
            throw LevelOverflow("kappa = " + std::to_string(kappa) +
                                " is too small for this program (cell of '" +
                                ita->first + "' needs " + toText(ca[i]) + ")");
      }
    }
    throw InternalInvariant("solver result is not a fixed point of T_P");
  }
  if (explicitKappa) {
    for (const auto& [name, table] : model.tables())
      for (TruthValue v : *table.cells)
        if (v.sign != Sign::Zero && v.level >= kappa)
          throw LevelOverflow("kappa = " + std::to_string(kappa) +
                              " is too small for this program (cell of '" +
                              name + "' stabilized at " + toText(v) + ")");
  }

  // Record per-cell outcomes.
  for (const auto& [name, table] : model.tables()) {
    auto& info = result.cellInfo[name];
    info.resize(table.cellCount);
    const auto& marks = stabilized[name];
    const auto& cells = *table.cells;
    for (uint64_t i = 0; i < table.cellCount; ++i) {
      if (marks[i]) {
        info[i] = {CellStatus::Stabilized, *marks[i]};
      } else if (cells[i].sign == Sign::Zero) {
        info[i] = {CellStatus::ZeroAssigned, 0};
      } else {
        info[i] = {CellStatus::Rigid, 0};
      }
    }
  }
  if (cfg.trace) {
    std::ostringstream os;
    os << "done: " << result.stagesUsed << " stages, " << stabilizedCount
       << "/" << totalCells << " cells stabilized";
    result.trace.push_back(os.str());
  }
  result.model = std::move(model);
  return result;
}

}  // namespace

Interpretation collapse(const Interpretation& m) {
  Interpretation::CellMap out;
  for (const auto& [name, table] : m.tables()) {
    std::vector<TruthValue> cells = *table.cells;
    for (TruthValue& v : cells)
      if (v.sign != Sign::Zero) v.level = 0;
    out.emplace(name, std::move(cells));
  }
  return m.withCells(std::move(out));
}

std::string collapseLabel(TruthValue v) {
  switch (v.sign) {
    case Sign::True:
      return "True";
    case Sign::False:
      return "False";
    case Sign::Zero:
      return "Undef";
  }
  return "?";
}

Interpretation glbInterpretations(const std::vector<Interpretation>& ms) {
  if (ms.empty()) throw EmptySet("glb of an empty set of interpretations");
  for (const Interpretation& m : ms)
    if (!m.sameSignature(ms.front()))
      throw SignatureMismatch("glb needs interpretations of one signature");
  const uint32_t kappa = ms.front().ctx().kappa();
  const uint64_t cap = ms.front().ctx().valueCap();

  // Stage alpha: the staged glb of the members that agree with every earlier
  // stage result up to its level, or the plain meet of the stage results when
  // no member is left.
  std::vector<const Interpretation*> live;
  for (const Interpretation& m : ms) live.push_back(&m);
  std::vector<Interpretation::CellMap> stageResults;

  for (uint32_t alpha = 0; alpha < kappa; ++alpha) {
    Interpretation::CellMap x;
    for (const auto& [name, table] : ms.front().tables()) {
      std::vector<TruthValue> cells(table.cellCount);
      std::vector<TruthValue> column;
      column.reserve(live.size());
      for (uint64_t i = 0; i < table.cellCount; ++i) {
        if (!live.empty()) {
          column.clear();
          for (const Interpretation* m : live)
            column.push_back((*m->table(name).cells)[i]);
          cells[i] = glbAlpha(column, alpha, cap);
        } else {
          TruthValue acc = TruthValue::truth(0);
          for (const auto& earlier : stageResults)
            acc = meet2(acc, earlier.at(name)[i]);
          cells[i] = acc;
        }
      }
      x.emplace(name, std::move(cells));
    }

    // Keep only the members that are =_alpha the stage result.
    std::vector<const Interpretation*> kept;
    for (const Interpretation* m : live) {
      bool agrees = true;
      for (const auto& [name, cells] : x) {
        const auto& mc = *m->table(name).cells;
        for (uint64_t i = 0; i < cells.size() && agrees; ++i)
          agrees = eqAlpha(mc[i], cells[i], alpha);
        if (!agrees) break;
      }
      if (agrees) kept.push_back(m);
    }
    live = std::move(kept);
    stageResults.push_back(std::move(x));
  }

  // Chain meet across the stages; a cell whose descent never landed below
  // kappa is 0 in the truncated domain.
  Interpretation::CellMap out;
  for (const auto& [name, table] : ms.front().tables()) {
    std::vector<TruthValue> cells(table.cellCount, TruthValue::truth(0));
    for (const auto& stageCells : stageResults) {
      const auto& sc = stageCells.at(name);
      for (uint64_t i = 0; i < table.cellCount; ++i)
        cells[i] = meet2(cells[i], sc[i]);
    }
    for (TruthValue& v : cells)
      if (v.sign != Sign::Zero && v.level >= kappa) v = TruthValue::zero();
    out.emplace(name, std::move(cells));
  }
  return ms.front().withCells(std::move(out));
}

}  // namespace extensia
