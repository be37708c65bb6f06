// Verifies the formation rules of H for every node of a program, that
// clause bodies are closed expressions of their head's type, and that
// lambda/exists binders have enumerable types.

#include <vector>

#include "domains.hpp"
#include "syntax.hpp"

namespace extensia {

namespace {

class Checker {
 public:
  explicit Checker(const Program& program) : prog_(program) {}

  void run() {
    for (const auto& [name, type] : prog_.sig.predicates)
      if (!type->isPredicate())
        throw TypeError("predicate '" + name + "' has non-predicate type " +
                        type->toString());
    for (const auto& [name, type] : prog_.sig.functions)
      if (!type->isFunctional() || type->isIota())
        throw TypeError("function symbol '" + name +
                        "' has non-functional type " + type->toString());
    for (const Clause& c : prog_.clauses) {
      auto it = prog_.sig.predicates.find(c.head);
      if (it == prog_.sig.predicates.end())
        throw TypeError("clause head '" + c.head + "' is not a declared predicate");
      TypeRef bodyType = check(c.body);
      if (!typeEquals(bodyType, it->second))
        throw TypeError("clause for '" + c.head + "' has body of type " +
                        bodyType->toString() + ", expected " +
                        it->second->toString());
    }
  }

 private:
  TypeRef check(const ExprRef& e) {
    TypeRef derived = derive(e);
    if (!e->type || !typeEquals(e->type, derived))
      throw TypeError("annotation mismatch on '" + pretty(e) + "': derived " +
                      derived->toString());
    return derived;
  }

  TypeRef derive(const ExprRef& e) {
    switch (e->kind) {
      case Expr::Kind::TrueLit:
      case Expr::Kind::FalseLit:
        return Type::o();
      case Expr::Kind::IndConst:
        if (!prog_.sig.constants.count(e->name))
          throw TypeError("undeclared individual constant '" + e->name + "'");
        return Type::iota();
      case Expr::Kind::PredConst: {
        auto it = prog_.sig.predicates.find(e->name);
        if (it == prog_.sig.predicates.end())
          throw TypeError("undeclared predicate constant '" + e->name + "'");
        return it->second;
      }
      case Expr::Kind::IndVar:
      case Expr::Kind::PredVar: {
        for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
          if (it->first == e->name) return it->second;
        throw TypeError("free variable '" + e->name +
                        "' (clause bodies must be closed)");
      }
      case Expr::Kind::FunApp: {
        auto it = prog_.sig.functions.find(e->name);
        if (it == prog_.sig.functions.end())
          throw TypeError("undeclared function symbol '" + e->name + "'");
        size_t arity = it->second->predicateArgs().size();
        if (e->child.size() != arity)
          throw TypeError("function '" + e->name + "' expects " +
                          std::to_string(arity) + " arguments");
        for (const ExprRef& a : e->child)
          if (!check(a)->isIota())
            throw TypeError("function arguments must have type i");
        return Type::iota();
      }
      case Expr::Kind::App: {
        TypeRef fn = check(e->child[0]);
        TypeRef arg = check(e->child[1]);
        if (!fn->isArrow())
          throw TypeError("application of non-function '" +
                          pretty(e->child[0]) + "' of type " + fn->toString());
        if (!typeEquals(fn->arg(), arg))
          throw TypeError("argument '" + pretty(e->child[1]) + "' has type " +
                          arg->toString() + ", expected " +
                          fn->arg()->toString());
        return fn->result();
      }
      case Expr::Kind::Lambda: {
        checkBinder(e);
        scope_.emplace_back(e->name, e->binderType);
        TypeRef body = check(e->child[0]);
        scope_.pop_back();
        if (!body->isPredicate())
          throw TypeError("lambda body must have a predicate type, got " +
                          body->toString());
        return Type::arrow(e->binderType, body);
      }
      case Expr::Kind::And:
      case Expr::Kind::Or: {
        TypeRef l = check(e->child[0]);
        TypeRef r = check(e->child[1]);
        if (!typeEquals(l, r) || !l->isPredicate())
          throw TypeError("conjunction/disjunction needs equal predicate "
                          "types, got " +
                          l->toString() + " and " + r->toString());
        return l;
      }
      case Expr::Kind::Not: {
        TypeRef t = check(e->child[0]);
        if (!t->isO()) throw TypeError("negation applies to type o, got " +
                                       t->toString());
        return Type::o();
      }
      case Expr::Kind::Eq: {
        TypeRef l = check(e->child[0]);
        TypeRef r = check(e->child[1]);
        if (!l->isIota() || !r->isIota())
          throw TypeError("equality compares individuals, got " +
                          l->toString() + " and " + r->toString());
        return Type::o();
      }
      case Expr::Kind::Exists: {
        checkBinder(e);
        scope_.emplace_back(e->name, e->binderType);
        TypeRef body = check(e->child[0]);
        scope_.pop_back();
        if (!body->isO())
          throw TypeError("quantified body must have type o, got " +
                          body->toString());
        return Type::o();
      }
    }
    throw TypeError("malformed expression");
  }

  void checkBinder(const ExprRef& e) {
    if (!e->binderType || !e->binderType->isArgument())
      throw TypeError("binder '" + e->name + "' must have an argument type");
    if (!e->binderType->isEnumerable())
      throw NonEnumerableType(
          "binder '" + e->name + "' ranges over " + e->binderType->toString() +
          ", which has a predicate-typed argument position; only i, o and "
          "i^n -> o are supported here");
  }

  const Program& prog_;
  std::vector<std::pair<std::string, TypeRef>> scope_;
};

}  // namespace

const Program& typecheck(const Program& program) {
  Checker(program).run();
  return program;
}

}  // namespace extensia
