// Finite semantic domains over a finite Herbrand universe: denotations of the
// argument types, their enumeration in canonical order, and the pointwise
// liftings of the truth-domain orderings.

#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "syntax.hpp"
#include "truth.hpp"

namespace extensia {

// The type has a predicate-typed argument position somewhere; its domain is a
// space of monotone functions and is not enumerated.
struct NonEnumerableType : Error {
  using Error::Error;
};

// The program uses function symbols, so its Herbrand universe is infinite.
struct InfiniteUniverse : Error {
  using Error::Error;
};

struct BudgetExceeded : Error {
  using Error::Error;
};

struct TypeMismatch : Error {
  using Error::Error;
};

struct UnboundVariable : Error {
  using Error::Error;
};

constexpr uint64_t kDefaultBudget = 10'000'000;

// Headroom for truth levels produced while evaluating; the configured kappa
// truncates the enumerated domain, not intermediate arithmetic.
constexpr uint64_t kLevelHeadroom = 1'000'000;

struct Universe {
  std::vector<std::string> individuals;

  // The individual constants of the program in declaration (map) order; a
  // single artificial constant when the program has none.
  static Universe fromProgram(const Program& program);

  uint64_t size() const { return individuals.size(); }
  uint64_t indexOf(const std::string& name) const;
};

class DomainContext;

// A semantic value: an individual, a truth value, a materialized function
// table, or a suspended function that computes entries on demand.
class Denotation {
 public:
  enum class Kind { Individual, Truth, Table, Suspended };

  struct TableData {
    TypeRef type;  // remaining function type, always some rho_1->..->rho_k->o
    std::vector<uint64_t> argSizes;
    std::shared_ptr<const std::vector<TruthValue>> cells;
    uint64_t offset = 0;  // view into cells after partial application
    uint64_t span = 0;    // number of cells covered by this view
  };

  struct SuspendedData {
    TypeRef type;
    std::function<Denotation(const Denotation&)> applyFn;
    mutable std::mutex mu;
    mutable std::map<uint64_t, Denotation> memo;  // argument index -> result
  };

  Denotation() : kind_(Kind::Truth), truth_(TruthValue::falsity(0)) {}

  static Denotation individual(uint64_t index);
  static Denotation truth(TruthValue v);
  static Denotation table(const DomainContext& ctx, TypeRef type,
                          std::shared_ptr<const std::vector<TruthValue>> cells);
  static Denotation table(const DomainContext& ctx, TypeRef type,
                          std::vector<TruthValue> cells);
  static Denotation suspended(TypeRef type,
                              std::function<Denotation(const Denotation&)> fn);

  // Partial-application view into an existing table, after `applied` leading
  // arguments have fixed `offset` and `span`.
  static Denotation tableView(const TableData& base, TypeRef type,
                              uint64_t offset, uint64_t span, size_t applied);

  Kind kind() const { return kind_; }
  bool isTruth() const { return kind_ == Kind::Truth; }
  uint64_t individualIndex() const;
  TruthValue truthValue() const;
  const TableData& tableData() const { return *table_; }

  // Type of the denotation; Individual reports iota.
  TypeRef type() const;

 private:
  friend class DomainContext;
  Kind kind_;
  uint64_t individual_ = 0;
  TruthValue truth_;
  std::shared_ptr<const TableData> table_;
  std::shared_ptr<SuspendedData> suspended_;
};

class DomainContext {
 public:
  DomainContext(Universe universe, uint32_t kappa,
                uint64_t budget = kDefaultBudget);

  const Universe& universe() const { return universe_; }
  uint32_t kappa() const { return kappa_; }
  uint64_t truthCount() const { return 2 * uint64_t{kappa_} + 1; }
  uint64_t valueCap() const { return kLevelHeadroom; }
  uint64_t budget() const { return budget_; }

  // Number of elements of an enumerable type's domain.
  uint64_t domainSize(const TypeRef& type) const;

  // All elements of the domain in canonical order: individuals by declaration
  // index, truth values in chain order, tables lexicographically by entries.
  const std::vector<Denotation>& enumerate(const TypeRef& type) const;

  uint64_t encode(const Denotation& d, const TypeRef& type) const;
  Denotation decode(uint64_t index, const TypeRef& type) const;

  // Applies a function denotation to one argument.
  Denotation apply(const Denotation& fn, const Denotation& arg) const;

  // Materializes a function denotation into a full table (identity on tables
  // without partial application offsets, truth values and individuals).
  Denotation force(const Denotation& d) const;

  std::string renderKey(const Denotation& d) const;

 private:
  std::vector<TruthValue> flatten(const Denotation& d) const;
  void flattenInto(const Denotation& d, std::vector<TruthValue>& out) const;

  Universe universe_;
  uint32_t kappa_;
  uint64_t budget_;
  mutable std::mutex mu_;
  mutable std::map<std::string, uint64_t> sizeCache_;
  mutable std::map<std::string, std::shared_ptr<std::vector<Denotation>>>
      enumCache_;

  friend Denotation denJoinMeet(const DomainContext&,
                                std::span<const Denotation>, const TypeRef&,
                                bool);
};

// Pointwise orderings; both sides must have the given type.
bool denLeq(const DomainContext& ctx, const Denotation& a, const Denotation& b,
            const TypeRef& type);
bool denSqAlpha(const DomainContext& ctx, const Denotation& a,
                const Denotation& b, const TypeRef& type, uint32_t alpha);
bool denEqAlpha(const DomainContext& ctx, const Denotation& a,
                const Denotation& b, const TypeRef& type, uint32_t alpha);
bool denEquals(const DomainContext& ctx, const Denotation& a,
               const Denotation& b, const TypeRef& type);

// Pointwise lattice operations at a predicate type. Empty join is the bottom
// element, empty meet the top.
Denotation denJoin(const DomainContext& ctx, std::span<const Denotation> ds,
                   const TypeRef& type);
Denotation denMeet(const DomainContext& ctx, std::span<const Denotation> ds,
                   const TypeRef& type);

// Entrywise restriction and staged bounds.
Denotation denRestrict(const DomainContext& ctx, const Denotation& d,
                       const TypeRef& type, uint32_t alpha);
Denotation denLubAlpha(const DomainContext& ctx, std::span<const Denotation> ds,
                       const TypeRef& type, uint32_t alpha);
Denotation denGlbAlpha(const DomainContext& ctx, std::span<const Denotation> ds,
                       const TypeRef& type, uint32_t alpha);

// Brute-force check that a function denotation preserves [=_alpha; argument
// positions of type iota impose no constraint.
bool checkAlphaMonotone(const DomainContext& ctx, const Denotation& d,
                        const TypeRef& type, uint32_t alpha);

}  // namespace extensia
