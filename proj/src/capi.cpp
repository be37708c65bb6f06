// The extern-C surface of the library. Exceptions are mapped to ex_status
// codes at this boundary; nothing past it throws.

#include "extensia.h"

#include <cstdlib>
#include <cstring>
#include <optional>
#include <sstream>
#include <string>

#include "engine.hpp"
#include "json_io.hpp"
#include "oracle.hpp"
#include "semantics.hpp"
#include "syntax.hpp"

using namespace extensia;

struct ex_program {
  ex_options opts{};
  SurfaceProgram surface;
  Program program;
  std::optional<SolveResult> solved;  // cached for queries
};

struct ex_result {
  SolveResult result;
};

namespace {

char* dupString(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void setError(char** slot, const std::string& message) {
  if (slot) *slot = dupString(message);
}

ex_status classify(const std::exception& e, char** error) {
  setError(error, e.what());
  if (dynamic_cast<const SyntaxError*>(&e) ||
      dynamic_cast<const TypeError*>(&e) ||
      dynamic_cast<const CompileError*>(&e))
    return EX_SYNTAX;
  if (dynamic_cast<const InfiniteUniverse*>(&e) ||
      dynamic_cast<const NonEnumerableType*>(&e) ||
      dynamic_cast<const NotNormalFragment*>(&e))
    return EX_SEMANTIC;
  if (dynamic_cast<const BudgetExceeded*>(&e) ||
      dynamic_cast<const LevelOverflow*>(&e))
    return EX_BUDGET;
  return EX_INTERNAL;
}

template <typename Fn>
ex_status guarded(char** error, Fn&& fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    return classify(e, error);
  }
}

uint64_t effectiveBudget(const ex_options& opts) {
  if (opts.budget > 0) return static_cast<uint64_t>(opts.budget);
  if (const char* env = std::getenv("EXTENSIA_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return kDefaultBudget;
}

EngineConfig engineConfig(const ex_program* p) {
  EngineConfig cfg;
  if (p->opts.kappa > 0) cfg.kappa = static_cast<uint32_t>(p->opts.kappa);
  cfg.trace = p->opts.trace != 0;
  cfg.budget = effectiveBudget(p->opts);
  return cfg;
}

const SolveResult& solveCached(ex_program* p) {
  if (!p->solved) p->solved = leastModel(p->program, engineConfig(p));
  return *p->solved;
}

}  // namespace

extern "C" {

const char* ex_version(void) { return "extensia 0.1.0"; }

void ex_string_free(char* s) { std::free(s); }

ex_status ex_program_load(const char* text, const ex_options* opts,
                          ex_program** out, char** error) {
  if (!text || !out) {
    setError(error, "ex_program_load: null argument");
    return EX_USAGE;
  }
  return guarded(error, [&]() -> ex_status {
    auto p = std::make_unique<ex_program>();
    if (opts) p->opts = *opts;
    p->surface = parseSurface(text);
    p->program = compileSurface(p->surface, p->opts.wadge != 0);
    typecheck(p->program);
    *out = p.release();
    return EX_OK;
  });
}

void ex_program_free(ex_program* p) { delete p; }

ex_status ex_program_report(const ex_program* p, char** out) {
  if (!p || !out) return EX_USAGE;
  return guarded(nullptr, [&]() -> ex_status {
    std::ostringstream os;
    for (const auto& [name, type] : p->program.sig.predicates)
      os << "pred " << name << " : " << type->toString() << "\n";
    for (const auto& [name, type] : p->program.sig.constants)
      os << "const " << name << " : " << type->toString() << "\n";
    for (const auto& [name, type] : p->program.sig.functions)
      os << "func " << name << " : " << type->toString() << "\n";
    os << "clauses: " << p->program.clauses.size() << "\n";
    *out = dupString(os.str());
    return EX_OK;
  });
}

ex_status ex_program_core(const ex_program* p, char** out) {
  if (!p || !out) return EX_USAGE;
  return guarded(nullptr, [&]() -> ex_status {
    *out = dupString(pretty(p->program));
    return EX_OK;
  });
}

ex_status ex_solve(ex_program* p, ex_result** out, char** error) {
  if (!p || !out) {
    setError(error, "ex_solve: null argument");
    return EX_USAGE;
  }
  return guarded(error, [&]() -> ex_status {
    auto r = std::make_unique<ex_result>();
    r->result = solveCached(p);
    *out = r.release();
    return EX_OK;
  });
}

void ex_result_free(ex_result* r) { delete r; }

ex_status ex_result_text(const ex_result* r, int collapsed, char** out) {
  if (!r || !out) return EX_USAGE;
  return guarded(nullptr, [&]() -> ex_status {
    const Interpretation& m =
        collapsed ? collapse(r->result.model) : r->result.model;
    *out = dupString(interpretationText(m, collapsed != 0));
    return EX_OK;
  });
}

ex_status ex_result_json(const ex_result* r, char** out) {
  if (!r || !out) return EX_USAGE;
  return guarded(nullptr, [&]() -> ex_status {
    *out = dupString(solveResultJsonText(r->result));
    return EX_OK;
  });
}

ex_status ex_result_trace(const ex_result* r, char** out) {
  if (!r || !out) return EX_USAGE;
  std::string all;
  for (const std::string& line : r->result.trace) all += line + "\n";
  *out = dupString(all);
  return EX_OK;
}

ex_status ex_result_stat(const ex_result* r, const char* name,
                         long long* out) {
  if (!r || !name || !out) return EX_USAGE;
  std::string key(name);
  if (key == "stages")
    *out = r->result.stagesUsed;
  else if (key == "cells")
    *out = static_cast<long long>(r->result.model.totalCells());
  else if (key == "kappa")
    *out = r->result.kappa;
  else
    return EX_USAGE;
  return EX_OK;
}

ex_status ex_query(ex_program* p, const char* expr, int allow_table,
                   char** out, char** error) {
  if (!p || !expr || !out) {
    setError(error, "ex_query: null argument");
    return EX_USAGE;
  }
  return guarded(error, [&]() -> ex_status {
    const SolveResult& solved = solveCached(p);
    ExprRef e = parseCoreExpr(expr, p->program.sig);
    // Wrap in a throwaway clause to reuse the program typechecker: the
    // expression must be closed and well-typed in the program's signature.
    Program probe;
    probe.sig = p->program.sig;
    if (!e->type) throw TypeError("query expression is not typeable");
    if (!e->type->isPredicate())
      throw TypeError("query must have a predicate type, got " +
                      e->type->toString());
    probe.sig.predicates["query'"] = e->type;
    probe.clauses.push_back(Clause{"query'", e});
    // "query'" is not parseable from the surface, so no collision.
    typecheck(probe);
    Denotation d = evalClosed(solved.model, e);
    const DomainContext& ctx = solved.model.ctx();
    if (e->type->isO()) {
      *out = dupString(toText(d.truthValue()));
      return EX_OK;
    }
    if (!allow_table)
      throw TypeError("query has type " + e->type->toString() +
                      "; pass --table to print a full table");
    *out = dupString(ctx.renderKey(ctx.force(d)));
    return EX_OK;
  });
}

ex_status ex_wfs(ex_program* p, int as_json, char** out, char** error) {
  if (!p || !out) {
    setError(error, "ex_wfs: null argument");
    return EX_USAGE;
  }
  return guarded(error, [&]() -> ex_status {
    Universe u = Universe::fromProgram(p->program);
    GroundNormalProgram g = ground(p->surface, u);
    auto wfm = wfsAlternatingFixpoint(g);
    *out = dupString(as_json ? wfsJson(wfm).dump(2) + "\n" : wfsText(wfm));
    return EX_OK;
  });
}

ex_status ex_oracle_min(ex_program* p, int as_json, char** out, char** error) {
  if (!p || !out) {
    setError(error, "ex_oracle_min: null argument");
    return EX_USAGE;
  }
  return guarded(error, [&]() -> ex_status {
    EngineConfig cfg = engineConfig(p);
    uint32_t kappa = cfg.kappa.value_or(autoKappa(p->program));
    auto ctx = std::make_shared<const DomainContext>(
        Universe::fromProgram(p->program), kappa, cfg.budget);
    Interpretation m = bruteMinModel(p->program, ctx);
    *out = dupString(as_json ? interpretationJsonText(m, false)
                             : interpretationText(m, false));
    return EX_OK;
  });
}

}  // extern "C"
