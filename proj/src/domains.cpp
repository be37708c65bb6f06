#include "domains.hpp"

#include <algorithm>

namespace extensia {

Universe Universe::fromProgram(const Program& program) {
  Universe u;
  for (const auto& [name, type] : program.sig.constants)
    u.individuals.push_back(name);
  if (u.individuals.empty()) u.individuals.push_back("u");
  return u;
}

uint64_t Universe::indexOf(const std::string& name) const {
  for (uint64_t i = 0; i < individuals.size(); ++i)
    if (individuals[i] == name) return i;
  throw Error("unknown individual constant '" + name + "'");
}

// ---------------------------------------------------------------------------
// Denotation

Denotation Denotation::individual(uint64_t index) {
  Denotation d;
  d.kind_ = Kind::Individual;
  d.individual_ = index;
  return d;
}

Denotation Denotation::truth(TruthValue v) {
  Denotation d;
  d.kind_ = Kind::Truth;
  d.truth_ = v;
  return d;
}

Denotation Denotation::table(
    const DomainContext& ctx, TypeRef type,
    std::shared_ptr<const std::vector<TruthValue>> cells) {
  auto data = std::make_shared<TableData>();
  data->type = type;
  uint64_t span = 1;
  for (const TypeRef& arg : type->predicateArgs()) {
    uint64_t size = ctx.domainSize(arg);
    data->argSizes.push_back(size);
    span *= size;
  }
  if (cells->size() != span)
    throw TypeMismatch("table for " + type->toString() + " needs " +
                       std::to_string(span) + " cells, got " +
                       std::to_string(cells->size()));
  data->cells = std::move(cells);
  data->offset = 0;
  data->span = span;
  Denotation d;
  d.kind_ = Kind::Table;
  d.table_ = std::move(data);
  return d;
}

Denotation Denotation::table(const DomainContext& ctx, TypeRef type,
                             std::vector<TruthValue> cells) {
  return table(ctx, std::move(type),
               std::make_shared<const std::vector<TruthValue>>(std::move(cells)));
}

Denotation Denotation::tableView(const TableData& base, TypeRef type,
                                 uint64_t offset, uint64_t span,
                                 size_t applied) {
  auto view = std::make_shared<TableData>();
  view->type = std::move(type);
  view->argSizes.assign(base.argSizes.begin() + applied, base.argSizes.end());
  view->cells = base.cells;
  view->offset = offset;
  view->span = span;
  Denotation d;
  d.kind_ = Kind::Table;
  d.table_ = std::move(view);
  return d;
}

Denotation Denotation::suspended(
    TypeRef type, std::function<Denotation(const Denotation&)> fn) {
  auto data = std::make_shared<SuspendedData>();
  data->type = std::move(type);
  data->applyFn = std::move(fn);
  Denotation d;
  d.kind_ = Kind::Suspended;
  d.suspended_ = std::move(data);
  return d;
}

uint64_t Denotation::individualIndex() const {
  if (kind_ != Kind::Individual) throw TypeMismatch("not an individual");
  return individual_;
}

TruthValue Denotation::truthValue() const {
  if (kind_ != Kind::Truth) throw TypeMismatch("not a truth value");
  return truth_;
}

TypeRef Denotation::type() const {
  switch (kind_) {
    case Kind::Individual:
      return Type::iota();
    case Kind::Truth:
      return Type::o();
    case Kind::Table:
      return table_->type;
    case Kind::Suspended:
      return suspended_->type;
  }
  return nullptr;
}

// ---------------------------------------------------------------------------
// DomainContext

DomainContext::DomainContext(Universe universe, uint32_t kappa, uint64_t budget)
    : universe_(std::move(universe)), kappa_(kappa), budget_(budget) {
  if (kappa_ < 1) throw Error("kappa must be at least 1");
  if (universe_.individuals.empty()) throw Error("universe must be nonempty");
}

uint64_t DomainContext::domainSize(const TypeRef& type) const {
  if (type->isIota()) return universe_.size();
  if (type->isO()) return truthCount();
  if (!type->isEnumerable())
    throw NonEnumerableType("domain of " + type->toString() +
                            " is not enumerable (predicate-typed argument)");
  {
    std::lock_guard lock(mu_);
    auto it = sizeCache_.find(type->toString());
    if (it != sizeCache_.end()) return it->second;
  }
  // iota^n -> o: |V| ^ (|U|^n) many tables.
  uint64_t cells = 1;
  for (size_t i = 0; i < type->predicateArgs().size(); ++i) {
    cells *= universe_.size();
    if (cells > 62)
      throw BudgetExceeded("domain of " + type->toString() +
                           " is too large to enumerate");
  }
  long double approx = 1.0L;
  uint64_t size = 1;
  for (uint64_t i = 0; i < cells; ++i) {
    approx *= static_cast<long double>(truthCount());
    if (approx > static_cast<long double>(budget_) * 16.0L)
      throw BudgetExceeded("domain of " + type->toString() + " has about " +
                           std::to_string(static_cast<double>(approx)) +
                           " elements; budget is " + std::to_string(budget_));
    size *= truthCount();
  }
  std::lock_guard lock(mu_);
  sizeCache_[type->toString()] = size;
  return size;
}

const std::vector<Denotation>& DomainContext::enumerate(
    const TypeRef& type) const {
  {
    std::lock_guard lock(mu_);
    auto it = enumCache_.find(type->toString());
    if (it != enumCache_.end()) return *it->second;
  }
  uint64_t size = domainSize(type);
  if (size > budget_)
    throw BudgetExceeded("enumerating " + std::to_string(size) +
                         " elements of " + type->toString() +
                         " exceeds the budget of " + std::to_string(budget_));
  auto result = std::make_shared<std::vector<Denotation>>();
  result->reserve(size);
  for (uint64_t i = 0; i < size; ++i) result->push_back(decode(i, type));
  std::lock_guard lock(mu_);
  auto [it, inserted] = enumCache_.emplace(type->toString(), std::move(result));
  return *it->second;
}

uint64_t DomainContext::encode(const Denotation& d, const TypeRef& type) const {
  if (type->isIota()) return d.individualIndex();
  if (type->isO()) return chainIndex(d.truthValue(), kappa_);
  if (d.kind() == Denotation::Kind::Table) {
    const auto& data = d.tableData();
    uint64_t index = 0;
    for (uint64_t i = 0; i < data.span; ++i)
      index = index * truthCount() +
              chainIndex((*data.cells)[data.offset + i], kappa_);
    return index;
  }
  std::vector<TruthValue> cells = flatten(d);
  uint64_t index = 0;
  for (TruthValue v : cells) index = index * truthCount() + chainIndex(v, kappa_);
  return index;
}

Denotation DomainContext::decode(uint64_t index, const TypeRef& type) const {
  if (type->isIota()) {
    if (index >= universe_.size()) throw Error("individual index out of range");
    return Denotation::individual(index);
  }
  if (type->isO()) return Denotation::truth(truthFromChainIndex(index, kappa_));
  if (!type->isEnumerable())
    throw NonEnumerableType("cannot decode element of " + type->toString());
  uint64_t cellCount = 1;
  for (size_t i = 0; i < type->predicateArgs().size(); ++i)
    cellCount *= universe_.size();
  std::vector<TruthValue> cells(cellCount);
  for (uint64_t i = cellCount; i-- > 0;) {
    cells[i] = truthFromChainIndex(index % truthCount(), kappa_);
    index /= truthCount();
  }
  if (index != 0) throw Error("table index out of range");
  return Denotation::table(*this, type, std::move(cells));
}

Denotation DomainContext::apply(const Denotation& fn,
                                const Denotation& arg) const {
  if (fn.kind() == Denotation::Kind::Table) {
    const auto& data = fn.tableData();
    if (data.argSizes.empty()) throw TypeMismatch("applying a non-function");
    const TypeRef argType = data.type->arg();
    uint64_t argIndex = encode(arg, argType);
    uint64_t span = data.span / data.argSizes.front();
    uint64_t offset = data.offset + argIndex * span;
    if (data.argSizes.size() == 1) return Denotation::truth((*data.cells)[offset]);
    auto view = std::make_shared<Denotation::TableData>();
    view->type = data.type->result();
    view->argSizes.assign(data.argSizes.begin() + 1, data.argSizes.end());
    view->cells = data.cells;
    view->offset = offset;
    view->span = span;
    Denotation d;
    d.kind_ = Denotation::Kind::Table;
    d.table_ = std::move(view);
    return d;
  }
  if (fn.kind() == Denotation::Kind::Suspended) {
    const auto& data = *fn.suspended_;
    uint64_t argIndex = encode(arg, data.type->arg());
    {
      std::lock_guard lock(data.mu);
      auto it = data.memo.find(argIndex);
      if (it != data.memo.end()) return it->second;
    }
    Denotation result = data.applyFn(arg);
    std::lock_guard lock(data.mu);
    return data.memo.emplace(argIndex, std::move(result)).first->second;
  }
  throw TypeMismatch("applying a non-function denotation");
}

void DomainContext::flattenInto(const Denotation& d,
                                std::vector<TruthValue>& out) const {
  switch (d.kind()) {
    case Denotation::Kind::Individual:
      throw TypeMismatch("an individual has no table form");
    case Denotation::Kind::Truth:
      out.push_back(d.truthValue());
      return;
    case Denotation::Kind::Table: {
      const auto& data = d.tableData();
      out.insert(out.end(), data.cells->begin() + data.offset,
                 data.cells->begin() + data.offset + data.span);
      return;
    }
    case Denotation::Kind::Suspended: {
      const TypeRef argType = d.suspended_->type->arg();
      for (const Denotation& arg : enumerate(argType))
        flattenInto(apply(d, arg), out);
      return;
    }
  }
}

std::vector<TruthValue> DomainContext::flatten(const Denotation& d) const {
  std::vector<TruthValue> cells;
  flattenInto(d, cells);
  return cells;
}

Denotation DomainContext::force(const Denotation& d) const {
  switch (d.kind()) {
    case Denotation::Kind::Individual:
    case Denotation::Kind::Truth:
      return d;
    case Denotation::Kind::Table:
      if (d.tableData().offset == 0 &&
          d.tableData().span == d.tableData().cells->size())
        return d;
      return Denotation::table(*this, d.type(), flatten(d));
    case Denotation::Kind::Suspended:
      return Denotation::table(*this, d.type(), flatten(d));
  }
  return d;
}

std::string DomainContext::renderKey(const Denotation& d) const {
  switch (d.kind()) {
    case Denotation::Kind::Individual:
      return universe_.individuals.at(d.individualIndex());
    case Denotation::Kind::Truth:
      return toText(d.truthValue());
    default: {
      std::vector<TruthValue> cells = flatten(d);
      std::string out = "[";
      for (size_t i = 0; i < cells.size(); ++i) {
        if (i) out += ",";
        out += toText(cells[i]);
      }
      return out + "]";
    }
  }
}

// ---------------------------------------------------------------------------
// Pointwise operations

namespace {

std::vector<TruthValue> cellsOf(const DomainContext& ctx, const Denotation& d,
                                const TypeRef& type) {
  if (type->isO()) return {d.truthValue()};
  Denotation forced = ctx.force(d);
  const auto& data = forced.tableData();
  return std::vector<TruthValue>(data.cells->begin() + data.offset,
                                 data.cells->begin() + data.offset + data.span);
}

void checkSameType(const Denotation& a, const Denotation& b,
                   const TypeRef& type) {
  if (type->isIota()) {
    if (a.kind() != Denotation::Kind::Individual ||
        b.kind() != Denotation::Kind::Individual)
      throw TypeMismatch("expected individuals");
  }
}

}  // namespace

bool denLeq(const DomainContext& ctx, const Denotation& a, const Denotation& b,
            const TypeRef& type) {
  if (type->isIota()) {
    checkSameType(a, b, type);
    return a.individualIndex() == b.individualIndex();
  }
  std::vector<TruthValue> ca = cellsOf(ctx, a, type), cb = cellsOf(ctx, b, type);
  if (ca.size() != cb.size()) throw TypeMismatch("table sizes differ");
  for (size_t i = 0; i < ca.size(); ++i)
    if (!leq(ca[i], cb[i])) return false;
  return true;
}

bool denSqAlpha(const DomainContext& ctx, const Denotation& a,
                const Denotation& b, const TypeRef& type, uint32_t alpha) {
  if (type->isIota()) return a.individualIndex() == b.individualIndex();
  std::vector<TruthValue> ca = cellsOf(ctx, a, type), cb = cellsOf(ctx, b, type);
  if (ca.size() != cb.size()) throw TypeMismatch("table sizes differ");
  for (size_t i = 0; i < ca.size(); ++i)
    if (!sqAlpha(ca[i], cb[i], alpha)) return false;
  return true;
}

bool denEqAlpha(const DomainContext& ctx, const Denotation& a,
                const Denotation& b, const TypeRef& type, uint32_t alpha) {
  if (type->isIota()) return a.individualIndex() == b.individualIndex();
  std::vector<TruthValue> ca = cellsOf(ctx, a, type), cb = cellsOf(ctx, b, type);
  if (ca.size() != cb.size()) throw TypeMismatch("table sizes differ");
  for (size_t i = 0; i < ca.size(); ++i)
    if (!eqAlpha(ca[i], cb[i], alpha)) return false;
  return true;
}

bool denEquals(const DomainContext& ctx, const Denotation& a,
               const Denotation& b, const TypeRef& type) {
  if (type->isIota()) return a.individualIndex() == b.individualIndex();
  return cellsOf(ctx, a, type) == cellsOf(ctx, b, type);
}

Denotation denJoinMeet(const DomainContext& ctx, std::span<const Denotation> ds,
                       const TypeRef& type, bool isJoin) {
  if (type->isO()) {
    TruthValue acc = isJoin ? TruthValue::falsity(0) : TruthValue::truth(0);
    for (const Denotation& d : ds)
      acc = isJoin ? join2(acc, d.truthValue()) : meet2(acc, d.truthValue());
    return Denotation::truth(acc);
  }
  if (!type->isPredicate())
    throw TypeMismatch("join/meet only exists at predicate types");
  std::vector<std::vector<TruthValue>> all;
  all.reserve(ds.size());
  for (const Denotation& d : ds) all.push_back(cellsOf(ctx, d, type));
  uint64_t cellCount = all.empty() ? [&] {
    uint64_t n = 1;
    for (const TypeRef& arg : type->predicateArgs()) n *= ctx.domainSize(arg);
    return n;
  }()
                                   : all.front().size();
  std::vector<TruthValue> out(cellCount,
                              isJoin ? TruthValue::falsity(0)
                                     : TruthValue::truth(0));
  for (const auto& cells : all) {
    if (cells.size() != cellCount) throw TypeMismatch("table sizes differ");
    for (uint64_t i = 0; i < cellCount; ++i)
      out[i] = isJoin ? join2(out[i], cells[i]) : meet2(out[i], cells[i]);
  }
  return Denotation::table(ctx, type, std::move(out));
}

Denotation denJoin(const DomainContext& ctx, std::span<const Denotation> ds,
                   const TypeRef& type) {
  return denJoinMeet(ctx, ds, type, true);
}

Denotation denMeet(const DomainContext& ctx, std::span<const Denotation> ds,
                   const TypeRef& type) {
  return denJoinMeet(ctx, ds, type, false);
}

Denotation denRestrict(const DomainContext& ctx, const Denotation& d,
                       const TypeRef& type, uint32_t alpha) {
  if (type->isO())
    return Denotation::truth(restrictTo(d.truthValue(), alpha, ctx.valueCap()));
  std::vector<TruthValue> cells = cellsOf(ctx, d, type);
  for (TruthValue& v : cells) v = restrictTo(v, alpha, ctx.valueCap());
  return Denotation::table(ctx, type, std::move(cells));
}

namespace {

Denotation denStagedBound(const DomainContext& ctx,
                          std::span<const Denotation> ds, const TypeRef& type,
                          uint32_t alpha, bool isLub) {
  auto bound = [&](std::span<const TruthValue> values) {
    return isLub ? lubAlpha(values, alpha, ctx.valueCap())
                 : glbAlpha(values, alpha, ctx.valueCap());
  };
  if (type->isO()) {
    std::vector<TruthValue> values;
    values.reserve(ds.size());
    for (const Denotation& d : ds) values.push_back(d.truthValue());
    return Denotation::truth(bound(values));
  }
  std::vector<std::vector<TruthValue>> all;
  all.reserve(ds.size());
  for (const Denotation& d : ds) all.push_back(cellsOf(ctx, d, type));
  uint64_t cellCount = 1;
  for (const TypeRef& arg : type->predicateArgs()) cellCount *= ctx.domainSize(arg);
  std::vector<TruthValue> out(cellCount);
  std::vector<TruthValue> column(all.size());
  for (uint64_t i = 0; i < cellCount; ++i) {
    for (size_t j = 0; j < all.size(); ++j) column[j] = all[j][i];
    out[i] = bound(column);
  }
  return Denotation::table(ctx, type, std::move(out));
}

}  // namespace

Denotation denLubAlpha(const DomainContext& ctx, std::span<const Denotation> ds,
                       const TypeRef& type, uint32_t alpha) {
  return denStagedBound(ctx, ds, type, alpha, true);
}

Denotation denGlbAlpha(const DomainContext& ctx, std::span<const Denotation> ds,
                       const TypeRef& type, uint32_t alpha) {
  return denStagedBound(ctx, ds, type, alpha, false);
}

bool checkAlphaMonotone(const DomainContext& ctx, const Denotation& d,
                        const TypeRef& type, uint32_t alpha) {
  if (!type->isArrow()) return true;
  const TypeRef argType = type->arg();
  const TypeRef resType = type->result();
  const auto& domain = ctx.enumerate(argType);
  if (argType->isPredicate()) {
    for (const Denotation& x : domain) {
      for (const Denotation& y : domain) {
        if (!denSqAlpha(ctx, x, y, argType, alpha)) continue;
        if (!denSqAlpha(ctx, ctx.apply(d, x), ctx.apply(d, y), resType, alpha))
          return false;
      }
    }
  }
  for (const Denotation& x : domain)
    if (!checkAlphaMonotone(ctx, ctx.apply(d, x), resType, alpha)) return false;
  return true;
}

}  // namespace extensia
