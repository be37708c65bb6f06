#include "semantics.hpp"

#include <algorithm>
#include <set>

namespace extensia {

// ---------------------------------------------------------------------------
// Interpretation

namespace {

PredTable makeTable(const DomainContext& ctx, const TypeRef& type,
                    std::shared_ptr<const std::vector<TruthValue>> cells) {
  PredTable t;
  t.type = type;
  t.argTypes = type->predicateArgs();
  for (const TypeRef& arg : t.argTypes) {
    if (!arg->isEnumerable())
      throw NonEnumerableType("argument type " + arg->toString() +
                              " is outside the second-order fragment");
    t.argSizes.push_back(ctx.domainSize(arg));
    t.cellCount *= t.argSizes.back();
  }
  t.cells = std::move(cells);
  if (t.cells->size() != t.cellCount)
    throw SignatureMismatch("table has wrong cell count");
  if (type->isO()) {
    t.denotation = Denotation::truth((*t.cells)[0]);
  } else {
    t.denotation = Denotation::table(ctx, type, t.cells);
  }
  return t;
}

}  // namespace

Interpretation::Interpretation(std::shared_ptr<const DomainContext> ctx,
                               const Program& program, TruthValue fill)
    : ctx_(std::move(ctx)) {
  for (const auto& [name, type] : program.sig.predicates) {
    uint64_t cellCount = 1;
    for (const TypeRef& arg : type->predicateArgs())
      cellCount *= ctx_->domainSize(arg);
    auto cells = std::make_shared<const std::vector<TruthValue>>(
        std::vector<TruthValue>(cellCount, fill));
    tables_.emplace(name, makeTable(*ctx_, type, std::move(cells)));
    totalCells_ += cellCount;
  }
}

Interpretation Interpretation::withCells(CellMap cells) const {
  SharedCellMap shared;
  for (auto& [name, vs] : cells)
    shared.emplace(name, std::make_shared<const std::vector<TruthValue>>(
                             std::move(vs)));
  return withShared(std::move(shared));
}

Interpretation Interpretation::withShared(SharedCellMap cells) const {
  Interpretation out;
  out.ctx_ = ctx_;
  out.totalCells_ = totalCells_;
  for (const auto& [name, table] : tables_) {
    auto it = cells.find(name);
    if (it == cells.end())
      throw SignatureMismatch("missing cells for predicate '" + name + "'");
    if (it->second.get() == table.cells.get()) {
      out.tables_.emplace(name, table);  // unchanged, keep identity
    } else {
      out.tables_.emplace(name,
                          makeTable(*ctx_, table.type, std::move(it->second)));
    }
  }
  return out;
}

const PredTable& Interpretation::table(const std::string& pred) const {
  auto it = tables_.find(pred);
  if (it == tables_.end())
    throw SignatureMismatch("no table for predicate '" + pred + "'");
  return it->second;
}

bool Interpretation::sameSignature(const Interpretation& other) const {
  if (tables_.size() != other.tables_.size()) return false;
  auto a = tables_.begin();
  auto b = other.tables_.begin();
  for (; a != tables_.end(); ++a, ++b) {
    if (a->first != b->first) return false;
    if (!typeEquals(a->second.type, b->second.type)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

// `root` owns the nodes reachable from `e`; lambda closures alias it.
Denotation evalNode(const Interpretation& interp, State& state,
                    const ExprRef& root, const Expr* e);

// Application spines (.. ((E0 E1) E2) .. En) index tables directly instead of
// materializing one view per partial application.
Denotation evalSpine(const Interpretation& interp, State& state,
                     const ExprRef& root, const Expr* e) {
  const DomainContext& ctx = interp.ctx();
  const Expr* parts[16];
  size_t count = 0;
  const Expr* head = e;
  while (head->kind == Expr::Kind::App && count < 16) {
    parts[count++] = head->child[1].get();
    head = head->child[0].get();
  }
  Denotation fn = evalNode(interp, state, root, head);
  for (size_t i = count; i-- > 0;) {
    Denotation arg = evalNode(interp, state, root, parts[i]);
    if (fn.kind() == Denotation::Kind::Table) {
      // Fold the remaining arguments into one offset computation.
      const auto& data = fn.tableData();
      uint64_t offset = data.offset;
      uint64_t span = data.span;
      TypeRef type = data.type;
      size_t level = 0;
      while (true) {
        span /= data.argSizes[level];
        offset += ctx.encode(arg, type->arg()) * span;
        type = type->result();
        ++level;
        if (i == 0 || level >= data.argSizes.size()) break;
        arg = evalNode(interp, state, root, parts[--i]);
      }
      if (level == data.argSizes.size())
        return Denotation::truth((*data.cells)[offset]);
      return Denotation::tableView(data, type, offset, span, level);
    }
    fn = ctx.apply(fn, arg);
  }
  return fn;
}

Denotation evalNode(const Interpretation& interp, State& state,
                    const ExprRef& root, const Expr* e) {
  const DomainContext& ctx = interp.ctx();
  switch (e->kind) {
    case Expr::Kind::TrueLit:
      return Denotation::truth(TruthValue::truth(0));
    case Expr::Kind::FalseLit:
      return Denotation::truth(TruthValue::falsity(0));
    case Expr::Kind::IndConst:
      return Denotation::individual(ctx.universe().indexOf(e->name));
    case Expr::Kind::PredConst:
      return interp.table(e->name).denotation;
    case Expr::Kind::IndVar:
    case Expr::Kind::PredVar: {
      const Denotation* d = state.lookup(e->name);
      if (!d) throw UnboundVariable("unbound variable '" + e->name + "'");
      return *d;
    }
    case Expr::Kind::FunApp:
      throw InfiniteUniverse(
          "function symbol '" + e->name +
          "' reached evaluation; such programs are rejected before solving");
    case Expr::Kind::App:
      return evalSpine(interp, state, root, e);
    case Expr::Kind::Lambda: {
      // Suspended: entries are computed (and memoized) on application. The
      // closure keeps its own interpretation snapshot.
      State captured = state;
      ExprRef body(root, e->child[0].get());
      std::string var = e->name;
      Interpretation snapshot = interp;
      return Denotation::suspended(
          e->type,
          [snapshot = std::move(snapshot), captured = std::move(captured),
           var = std::move(var), body = std::move(body)](const Denotation& arg) {
            State inner = captured;
            inner.bind(var, arg);
            return evalNode(snapshot, inner, body, body.get());
          });
    }
    case Expr::Kind::Or:
    case Expr::Kind::And: {
      Denotation l = evalNode(interp, state, root, e->child[0].get());
      Denotation r = evalNode(interp, state, root, e->child[1].get());
      if (e->type->isO()) {
        TruthValue a = l.truthValue(), b = r.truthValue();
        return Denotation::truth(e->kind == Expr::Kind::Or ? join2(a, b)
                                                           : meet2(a, b));
      }
      const Denotation ds[2] = {std::move(l), std::move(r)};
      return e->kind == Expr::Kind::Or ? denJoin(ctx, ds, e->type)
                                       : denMeet(ctx, ds, e->type);
    }
    case Expr::Kind::Not: {
      TruthValue v =
          evalNode(interp, state, root, e->child[0].get()).truthValue();
      return Denotation::truth(neg(v, ctx.valueCap()));
    }
    case Expr::Kind::Eq: {
      uint64_t l =
          evalNode(interp, state, root, e->child[0].get()).individualIndex();
      uint64_t r =
          evalNode(interp, state, root, e->child[1].get()).individualIndex();
      return Denotation::truth(l == r ? TruthValue::truth(0)
                                      : TruthValue::falsity(0));
    }
    case Expr::Kind::Exists: {
      TruthValue acc = TruthValue::falsity(0);
      const Expr* body = e->child[0].get();
      for (const Denotation& d : ctx.enumerate(e->binderType)) {
        state.bind(e->name, d);
        TruthValue v = evalNode(interp, state, root, body).truthValue();
        state.pop();
        acc = join2(acc, v);
        if (acc == TruthValue::truth(0)) break;  // top of the chain
      }
      return Denotation::truth(acc);
    }
  }
  throw Error("malformed expression in eval");
}

}  // namespace

Denotation eval(const Interpretation& interp, State& state, const ExprRef& e) {
  return evalNode(interp, state, e, e.get());
}

Denotation evalClosed(const Interpretation& interp, const ExprRef& e) {
  State s;
  return evalNode(interp, s, e, e.get());
}

// ---------------------------------------------------------------------------
// T_P

namespace {

// Leading lambda binders of a clause body, up to the head's arity.
std::vector<const Expr*> leadingLambdas(const ExprRef& body, size_t arity) {
  std::vector<const Expr*> binders;
  const Expr* e = body.get();
  while (binders.size() < arity && e->kind == Expr::Kind::Lambda) {
    binders.push_back(e);
    e = e->child[0].get();
  }
  return binders;
}

std::shared_ptr<const std::vector<TruthValue>> clauseTable(
    const Clause& clause, const PredTable& table,
    const Interpretation& interp) {
  const DomainContext& ctx = interp.ctx();
  std::vector<TruthValue> acc(table.cellCount);
  const size_t arity = table.argTypes.size();
  std::vector<const Expr*> binders = leadingLambdas(clause.body, arity);
  if (binders.size() == arity) {
    // Bind the head parameters cell by cell and evaluate the body per cell.
    std::vector<const std::vector<Denotation>*> domains;
    domains.reserve(arity);
    for (const TypeRef& argType : table.argTypes)
      domains.push_back(&ctx.enumerate(argType));
    const Expr* body =
        arity == 0 ? clause.body.get() : binders.back()->child[0].get();
    std::vector<uint64_t> digits(arity, 0);
    State state;
    for (uint64_t cell = 0; cell < table.cellCount; ++cell) {
      for (size_t i = 0; i < arity; ++i)
        state.bind(binders[i]->name, (*domains[i])[digits[i]]);
      acc[cell] = evalNode(interp, state, clause.body, body).truthValue();
      for (size_t i = 0; i < arity; ++i) state.pop();
      for (size_t i = arity; i-- > 0;) {
        if (++digits[i] < domains[i]->size()) break;
        digits[i] = 0;
      }
    }
  } else {
    Denotation d = ctx.force(evalClosed(interp, clause.body));
    if (table.type->isO()) {
      acc[0] = d.truthValue();
    } else {
      const auto& data = d.tableData();
      std::copy(data.cells->begin() + data.offset,
                data.cells->begin() + data.offset + data.span, acc.begin());
    }
  }
  return std::make_shared<const std::vector<TruthValue>>(std::move(acc));
}

void collectReads(const Expr* e, std::set<std::string>& out) {
  if (e->kind == Expr::Kind::PredConst) out.insert(e->name);
  for (const ExprRef& c : e->child) collectReads(c.get(), out);
}

}  // namespace

TpEvaluator::TpEvaluator(const Program& program) : program_(program) {
  clauses_.resize(program.clauses.size());
  for (size_t i = 0; i < program.clauses.size(); ++i) {
    std::set<std::string> reads;
    collectReads(program.clauses[i].body.get(), reads);
    clauses_[i].reads.assign(reads.begin(), reads.end());
  }
}

Interpretation TpEvaluator::step(const Interpretation& interp) {
  std::map<std::string,
           std::vector<std::shared_ptr<const std::vector<TruthValue>>>>
      parts;
  for (size_t i = 0; i < program_.clauses.size(); ++i) {
    const Clause& clause = program_.clauses[i];
    ClauseCache& cache = clauses_[i];
    std::vector<std::shared_ptr<const std::vector<TruthValue>>> inputs;
    inputs.reserve(cache.reads.size());
    for (const std::string& name : cache.reads)
      inputs.push_back(interp.table(name).cells);
    auto sameInputs = [&](const ClauseCache::Entry& entry) {
      for (size_t k = 0; k < inputs.size(); ++k)
        if (entry.readTables[k].get() != inputs[k].get()) return false;
      return true;
    };
    std::shared_ptr<const std::vector<TruthValue>> table;
    for (size_t e = 0; e < cache.entries.size(); ++e) {
      if (sameInputs(cache.entries[e])) {
        table = cache.entries[e].table;
        std::rotate(cache.entries.begin(), cache.entries.begin() + e,
                    cache.entries.begin() + e + 1);
        break;
      }
    }
    if (!table) {
      table = clauseTable(clause, interp.table(clause.head), interp);
      cache.entries.insert(cache.entries.begin(), {std::move(inputs), table});
      if (cache.entries.size() > 4) cache.entries.pop_back();
    }
    parts[clause.head].push_back(std::move(table));
  }

  Interpretation::SharedCellMap out;
  for (const auto& [name, table] : interp.tables()) {
    auto it = parts.find(name);
    if (it == parts.end()) {
      // No clauses: the empty join, pointer-stable across steps.
      auto& bottom = bottoms_[name];
      if (!bottom)
        bottom = std::make_shared<const std::vector<TruthValue>>(
            std::vector<TruthValue>(table.cellCount, TruthValue::falsity(0)));
      out.emplace(name, bottom);
      continue;
    }
    if (it->second.size() == 1) {
      out.emplace(name, it->second.front());
      continue;
    }
    std::vector<TruthValue> acc(table.cellCount, TruthValue::falsity(0));
    for (const auto& part : it->second)
      for (uint64_t c = 0; c < table.cellCount; ++c)
        acc[c] = join2(acc[c], (*part)[c]);
    if (acc == *table.cells) {
      out.emplace(name, table.cells);  // unchanged, keep identity
    } else {
      out.emplace(name, std::make_shared<const std::vector<TruthValue>>(
                            std::move(acc)));
    }
  }
  return interp.withShared(std::move(out));
}

Interpretation tpStep(const Program& program, const Interpretation& interp) {
  return TpEvaluator(program).step(interp);
}

bool isModel(const Program& program, const Interpretation& m) {
  for (const Clause& clause : program.clauses) {
    const PredTable& table = m.table(clause.head);
    Denotation body = evalClosed(m, clause.body);
    if (!denLeq(m.ctx(), body, table.denotation, table.type)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Orderings

namespace {

template <typename CellRel>
bool cellwise(const Interpretation& a, const Interpretation& b, CellRel rel) {
  if (!a.sameSignature(b))
    throw SignatureMismatch("interpretations have different signatures");
  auto ita = a.tables().begin();
  auto itb = b.tables().begin();
  for (; ita != a.tables().end(); ++ita, ++itb) {
    const auto& ca = *ita->second.cells;
    const auto& cb = *itb->second.cells;
    if (&ca == &cb) continue;
    for (size_t i = 0; i < ca.size(); ++i)
      if (!rel(ca[i], cb[i])) return false;
  }
  return true;
}

}  // namespace

bool interpLeq(const Interpretation& a, const Interpretation& b) {
  return cellwise(a, b, [](TruthValue x, TruthValue y) { return leq(x, y); });
}

bool interpSqAlpha(const Interpretation& a, const Interpretation& b,
                   uint32_t alpha) {
  return cellwise(a, b, [alpha](TruthValue x, TruthValue y) {
    return sqAlpha(x, y, alpha);
  });
}

bool interpEqAlpha(const Interpretation& a, const Interpretation& b,
                   uint32_t alpha) {
  return cellwise(a, b, [alpha](TruthValue x, TruthValue y) {
    return eqAlpha(x, y, alpha);
  });
}

bool interpEquals(const Interpretation& a, const Interpretation& b) {
  return cellwise(a, b,
                  [](TruthValue x, TruthValue y) { return x == y; });
}

std::string cellKey(const DomainContext& ctx, const PredTable& table,
                    uint64_t cell) {
  if (table.argTypes.empty()) return "()";
  std::vector<uint64_t> digits(table.argTypes.size());
  for (size_t i = table.argTypes.size(); i-- > 0;) {
    digits[i] = cell % table.argSizes[i];
    cell /= table.argSizes[i];
  }
  std::string out;
  for (size_t i = 0; i < digits.size(); ++i) {
    if (i) out += ",";
    out += ctx.renderKey(ctx.decode(digits[i], table.argTypes[i]));
  }
  return out;
}

std::string cellLabel(const DomainContext& ctx, const std::string& pred,
                      const PredTable& table, uint64_t cell) {
  if (table.argTypes.empty()) return pred;
  return pred + "(" + cellKey(ctx, table, cell) + ")";
}

bool interpSq(const Interpretation& a, const Interpretation& b) {
  if (!a.sameSignature(b))
    throw SignatureMismatch("interpretations have different signatures");
  // Least level at which the two differ; Axiom 1 makes it the only witness
  // candidate for a strict [=_alpha.
  Ordinal least = Ordinal::infinity();
  auto ita = a.tables().begin();
  auto itb = b.tables().begin();
  for (; ita != a.tables().end(); ++ita, ++itb) {
    const auto& ca = *ita->second.cells;
    const auto& cb = *itb->second.cells;
    if (&ca == &cb) continue;
    for (size_t i = 0; i < ca.size(); ++i) {
      if (ca[i] == cb[i]) continue;
      Ordinal diff = std::min(order(ca[i]), order(cb[i]));
      if (diff < least) least = diff;
    }
  }
  if (least.isInfinite) return true;  // equal
  if (least.value >= a.ctx().kappa()) return false;
  return interpSqAlpha(a, b, static_cast<uint32_t>(least.value));
}

}  // namespace extensia
