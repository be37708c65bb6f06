#include "oracle.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace extensia {

// ---------------------------------------------------------------------------
// Enumeration

InterpretationEnumerator::InterpretationEnumerator(
    std::shared_ptr<const DomainContext> ctx, const Program& program)
    : base_(ctx, program, TruthValue::falsity(0)),
      truthCount_(ctx->truthCount()) {
  digits_.assign(base_.totalCells(), 0);
  long double approx = 1.0L;
  count_ = 1;
  for (uint64_t i = 0; i < base_.totalCells(); ++i) {
    approx *= static_cast<long double>(truthCount_);
    if (approx > static_cast<long double>(ctx->budget()))
      throw BudgetExceeded(
          "enumerating all interpretations needs at least " +
          std::to_string(static_cast<double>(approx)) +
          " candidates; budget is " + std::to_string(ctx->budget()));
    count_ *= truthCount_;
  }
}

std::optional<Interpretation> InterpretationEnumerator::next() {
  if (done_) return std::nullopt;
  Interpretation::CellMap cells;
  size_t digit = 0;
  const uint32_t kappa = base_.ctx().kappa();
  for (const auto& [name, table] : base_.tables()) {
    std::vector<TruthValue> vs(table.cellCount);
    for (uint64_t i = 0; i < table.cellCount; ++i)
      vs[i] = truthFromChainIndex(digits_[digit++], kappa);
    cells.emplace(name, std::move(vs));
  }
  // Advance the odometer.
  done_ = true;
  for (size_t i = digits_.size(); i-- > 0;) {
    if (++digits_[i] < truthCount_) {
      done_ = false;
      break;
    }
    digits_[i] = 0;
  }
  if (digits_.empty()) done_ = true;
  return base_.withCells(std::move(cells));
}

Interpretation bruteMinModel(const Program& program,
                             std::shared_ptr<const DomainContext> ctx) {
  InterpretationEnumerator stream(ctx, program);
  std::vector<Interpretation> models;
  while (auto candidate = stream.next()) {
    if (isModel(program, *candidate)) models.push_back(std::move(*candidate));
  }
  if (models.empty())
    throw NoModels("no Herbrand model found; this contradicts the model "
                   "intersection theorem and indicates a bug");
  Interpretation glb = glbInterpretations(models);
  if (!isModel(program, glb))
    throw NoModels("glb of all models failed the model check; this "
                   "contradicts the model intersection theorem");
  return glb;
}

// ---------------------------------------------------------------------------
// Grounding

size_t GroundNormalProgram::atomIndex(const std::string& name) const {
  auto it = std::lower_bound(atoms.begin(), atoms.end(), name);
  if (it == atoms.end() || *it != name)
    throw Error("unknown ground atom '" + name + "'");
  return static_cast<size_t>(it - atoms.begin());
}

namespace {

struct FlatAtom {
  std::string pred;
  std::vector<SurfaceTerm> args;  // variables and constants only
  bool negated = false;
};

std::string atomName(const std::string& pred,
                     const std::vector<std::string>& args) {
  if (args.empty()) return pred;
  std::string out = pred + "(";
  for (size_t i = 0; i < args.size(); ++i) {
    if (i) out += ",";
    out += args[i];
  }
  return out + ")";
}

FlatAtom checkNormalAtom(const SurfaceLiteral& lit,
                         const std::set<std::string>& predNames) {
  if (lit.kind != SurfaceLiteral::Kind::Atom)
    throw NotNormalFragment("only atoms and negated atoms are allowed in the "
                            "normal fragment");
  if (lit.functor.kind == SurfaceTerm::Kind::Variable)
    throw NotNormalFragment("higher-order call '" + lit.functor.name +
                            "(...)' is outside the normal fragment");
  if (lit.negations > 1)
    throw NotNormalFragment("iterated negation is outside the normal "
                            "fragment");
  FlatAtom atom;
  atom.pred = lit.functor.name;
  atom.negated = lit.negations == 1;
  for (const SurfaceTerm& t : lit.args) {
    if (t.kind == SurfaceTerm::Kind::Compound)
      throw NotNormalFragment("function term '" + t.name +
                              "(...)' is outside the normal fragment");
    if (t.kind == SurfaceTerm::Kind::Constant && predNames.count(t.name))
      throw NotNormalFragment("predicate constant '" + t.name +
                              "' used as an argument is outside the normal "
                              "fragment");
    atom.args.push_back(t);
  }
  return atom;
}

}  // namespace

GroundNormalProgram ground(const SurfaceProgram& sp, const Universe& universe) {
  std::set<std::string> predNames;
  std::map<std::string, size_t> arity;
  for (const SurfaceClause& c : sp.clauses) {
    predNames.insert(c.head.name);
    for (const SurfaceLiteral& lit : c.body)
      if (lit.kind == SurfaceLiteral::Kind::Atom &&
          lit.functor.kind != SurfaceTerm::Kind::Variable)
        predNames.insert(lit.functor.name);
  }
  auto recordArity = [&](const std::string& pred, size_t n) {
    auto [it, inserted] = arity.emplace(pred, n);
    if (!inserted && it->second != n)
      throw NotNormalFragment("predicate '" + pred +
                              "' used with inconsistent arities");
  };

  std::vector<std::pair<FlatAtom, std::vector<FlatAtom>>> flatRules;
  for (const SurfaceClause& c : sp.clauses) {
    FlatAtom head;
    head.pred = c.head.name;
    for (const SurfaceTerm& t : c.head.args) {
      if (t.kind == SurfaceTerm::Kind::Compound)
        throw NotNormalFragment("function term in a clause head");
      if (t.kind == SurfaceTerm::Kind::Constant && predNames.count(t.name))
        throw NotNormalFragment("predicate constant in a clause head");
      head.args.push_back(t);
    }
    recordArity(head.pred, head.args.size());
    std::vector<FlatAtom> body;
    for (const SurfaceLiteral& lit : c.body) {
      body.push_back(checkNormalAtom(lit, predNames));
      recordArity(body.back().pred, body.back().args.size());
    }
    flatRules.emplace_back(std::move(head), std::move(body));
  }

  GroundNormalProgram g;
  // Atom universe: every predicate over every tuple.
  for (const auto& [pred, n] : arity) {
    std::vector<uint64_t> digits(n, 0);
    while (true) {
      std::vector<std::string> args;
      for (uint64_t d : digits) args.push_back(universe.individuals[d]);
      g.atoms.push_back(atomName(pred, args));
      size_t i = n;
      while (i-- > 0) {
        if (++digits[i] < universe.size()) break;
        digits[i] = 0;
      }
      if (n == 0 || (i == size_t(-1))) break;
    }
  }
  std::sort(g.atoms.begin(), g.atoms.end());

  // All constant instantiations of each rule.
  for (const auto& [head, body] : flatRules) {
    std::vector<std::string> vars;
    auto collect = [&](const FlatAtom& a) {
      for (const SurfaceTerm& t : a.args)
        if (t.kind == SurfaceTerm::Kind::Variable &&
            std::find(vars.begin(), vars.end(), t.name) == vars.end())
          vars.push_back(t.name);
    };
    collect(head);
    for (const FlatAtom& a : body) collect(a);

    std::vector<uint64_t> digits(vars.size(), 0);
    while (true) {
      std::map<std::string, std::string> subst;
      for (size_t i = 0; i < vars.size(); ++i)
        subst[vars[i]] = universe.individuals[digits[i]];
      auto instantiate = [&](const FlatAtom& a) {
        std::vector<std::string> args;
        for (const SurfaceTerm& t : a.args)
          args.push_back(t.kind == SurfaceTerm::Kind::Variable ? subst[t.name]
                                                               : t.name);
        return g.atomIndex(atomName(a.pred, args));
      };
      GroundNormalProgram::Rule rule;
      rule.head = instantiate(head);
      for (const FlatAtom& a : body)
        (a.negated ? rule.negative : rule.positive).push_back(instantiate(a));
      g.rules.push_back(std::move(rule));
      size_t i = vars.size();
      while (i-- > 0) {
        if (++digits[i] < universe.size()) break;
        digits[i] = 0;
      }
      if (vars.empty() || i == size_t(-1)) break;
    }
  }
  return g;
}

// ---------------------------------------------------------------------------
// Well-founded model by the alternating fixpoint

namespace {

// Least model of the reduct of g with respect to the assumed-true set.
std::vector<bool> reductLeastModel(const GroundNormalProgram& g,
                                   const std::vector<bool>& assumed) {
  std::vector<bool> value(g.atoms.size(), false);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& rule : g.rules) {
      if (value[rule.head]) continue;
      bool fires = true;
      for (size_t a : rule.negative)
        if (assumed[a]) {
          fires = false;
          break;
        }
      if (fires)
        for (size_t a : rule.positive)
          if (!value[a]) {
            fires = false;
            break;
          }
      if (fires) {
        value[rule.head] = true;
        changed = true;
      }
    }
  }
  return value;
}

}  // namespace

std::map<std::string, ThreeValued> wfsAlternatingFixpoint(
    const GroundNormalProgram& g) {
  std::vector<bool> trueSet(g.atoms.size(), false);
  std::vector<bool> possible = reductLeastModel(g, trueSet);
  while (true) {
    std::vector<bool> nextTrue = reductLeastModel(g, possible);
    std::vector<bool> nextPossible = reductLeastModel(g, nextTrue);
    if (nextTrue == trueSet && nextPossible == possible) break;
    trueSet = std::move(nextTrue);
    possible = std::move(nextPossible);
  }
  std::map<std::string, ThreeValued> out;
  for (size_t i = 0; i < g.atoms.size(); ++i) {
    ThreeValued v = trueSet[i]          ? ThreeValued::True
                    : possible[i]       ? ThreeValued::Undef
                                        : ThreeValued::False;
    out[g.atoms[i]] = v;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Corpus generation

namespace {

struct Rng {
  uint64_t state;
  explicit Rng(uint64_t seed) : state(seed ^ 0x9e3779b97f4a7c15ull) {
    next();
    next();
  }
  uint64_t next() {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    return state >> 33;
  }
  uint32_t below(uint32_t n) { return static_cast<uint32_t>(next() % n); }
  bool chance(uint32_t percent) { return below(100) < percent; }
};

}  // namespace

std::string generateNormalProgram(uint64_t seed, uint32_t index) {
  Rng rng(seed + 0x51ed2701ull * (index + 1));
  // Predicates p1..pk with arities summing to at most 6 ground atoms over
  // {a, b}.
  const char* consts[2] = {"a", "b"};
  struct Pred {
    std::string name;
    uint32_t arity;
  };
  std::vector<Pred> preds;
  uint32_t atomBudget = 6;
  uint32_t count = 1 + rng.below(3);
  for (uint32_t i = 0; i < count; ++i) {
    uint32_t arity = rng.chance(50) ? 1 : 0;
    uint32_t atoms = arity == 1 ? 2 : 1;
    if (atoms > atomBudget) arity = 0, atoms = 1;
    if (atomBudget == 0) break;
    atomBudget -= atoms;
    preds.push_back({"p" + std::to_string(i + 1), arity});
  }

  auto randomTerm = [&](std::vector<std::string>& vars) -> std::string {
    if (!vars.empty() && rng.chance(55)) return vars[rng.below(vars.size())];
    if (rng.chance(40)) {
      std::string v = "X" + std::to_string(vars.size() + 1);
      vars.push_back(v);
      return v;
    }
    return consts[rng.below(2)];
  };
  auto randomAtom = [&](std::vector<std::string>& vars) {
    const Pred& p = preds[rng.below(preds.size())];
    std::string out = p.name;
    if (p.arity == 1) out += "(" + randomTerm(vars) + ")";
    return out;
  };

  std::ostringstream os;
  uint32_t rules = 1 + rng.below(10);
  for (uint32_t r = 0; r < rules; ++r) {
    std::vector<std::string> vars;
    std::string head = randomAtom(vars);
    uint32_t bodyLen = rng.below(4);
    os << head;
    if (bodyLen > 0) {
      os << " :- ";
      for (uint32_t b = 0; b < bodyLen; ++b) {
        if (b) os << ", ";
        if (rng.chance(40)) os << "not ";
        os << randomAtom(vars);
      }
    }
    os << ".\n";
  }
  return os.str();
}

std::string generateTinyProgram(uint64_t seed, uint32_t index,
                                uint32_t maxAtoms) {
  Rng rng(seed + 0xabcf31ull * (index + 1));
  uint32_t atoms = 1 + rng.below(maxAtoms);
  std::vector<std::string> names;
  for (uint32_t i = 0; i < atoms; ++i) names.push_back("q" + std::to_string(i));
  std::ostringstream os;
  uint32_t rules = 1 + rng.below(5);
  for (uint32_t r = 0; r < rules; ++r) {
    os << names[rng.below(atoms)];
    uint32_t bodyLen = rng.below(3);
    if (bodyLen > 0) {
      os << " :- ";
      for (uint32_t b = 0; b < bodyLen; ++b) {
        if (b) os << ", ";
        if (rng.chance(35)) os << "not ";
        os << names[rng.below(atoms)];
      }
    }
    os << ".\n";
  }
  return os.str();
}

}  // namespace extensia
