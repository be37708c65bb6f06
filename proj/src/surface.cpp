// Prolog-like surface syntax: parser, usage-based type inference, and the
// compilation of surface clauses into core program clauses.

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

#include "lexer.hpp"
#include "syntax.hpp"

namespace extensia {

namespace {

const std::vector<std::string>& surfaceSymbols() {
  static const std::vector<std::string> symbols = {":-", "->", ".", ",",
                                                   "(",  ")",  "=", ":"};
  return symbols;
}

const std::set<std::string>& reservedNames() {
  static const std::set<std::string> names = {
      "pred", "const", "func", "exists", "true", "false", "not"};
  return names;
}

// ---------------------------------------------------------------------------
// Parser

class SurfaceParser {
 public:
  explicit SurfaceParser(const std::string& text)
      : lex_(text, surfaceSymbols()) {}

  SurfaceProgram parse() {
    SurfaceProgram sp;
    while (lex_.peek().kind != Token::Kind::End) {
      if (lex_.atName("pred")) {
        parseAnnotation(sp);
      } else {
        sp.clauses.push_back(parseClause());
      }
    }
    return sp;
  }

 private:
  void parseAnnotation(SurfaceProgram& sp) {
    lex_.take();  // pred
    Token name = lex_.take();
    if (name.kind != Token::Kind::Name)
      throw SyntaxError(name.pos, "expected a predicate name after 'pred'");
    lex_.expectSymbol(":");
    TypeRef type = parseType();
    lex_.expectSymbol(".");
    if (!type->isPredicate())
      throw SyntaxError(name.pos, "'" + name.text +
                                      "' is annotated with the non-predicate "
                                      "type " +
                                      type->toString());
    sp.annotations[name.text] = type;
  }

  TypeRef parseType() {
    TypeRef lhs = parseTypeAtom();
    if (lex_.atSymbol("->")) {
      lex_.take();
      return Type::arrow(lhs, parseType());
    }
    return lhs;
  }

  TypeRef parseTypeAtom() {
    if (lex_.atName("i")) {
      lex_.take();
      return Type::iota();
    }
    if (lex_.atName("o")) {
      lex_.take();
      return Type::o();
    }
    if (lex_.atSymbol("(")) {
      lex_.take();
      TypeRef t = parseType();
      lex_.expectSymbol(")");
      return t;
    }
    lex_.fail("expected a type");
  }

  SurfaceClause parseClause() {
    SurfaceClause clause;
    clause.pos = lex_.peek().pos;
    Token head = lex_.take();
    if (head.kind != Token::Kind::Name)
      throw SyntaxError(head.pos, "clause heads must be predicate constants");
    if (reservedNames().count(head.text))
      throw SyntaxError(head.pos, "'" + head.text + "' is a reserved word");
    clause.head.name = head.text;
    clause.head.pos = head.pos;
    if (lex_.atSymbol("(")) {
      clause.head.kind = SurfaceTerm::Kind::Compound;
      clause.head.args = parseTermList();
    } else {
      clause.head.kind = SurfaceTerm::Kind::Constant;
    }
    if (lex_.atSymbol(":-")) {
      lex_.take();
      clause.body.push_back(parseLiteral());
      while (lex_.atSymbol(",")) {
        lex_.take();
        clause.body.push_back(parseLiteral());
      }
    }
    lex_.expectSymbol(".");
    return clause;
  }

  std::vector<SurfaceTerm> parseTermList() {
    lex_.expectSymbol("(");
    std::vector<SurfaceTerm> terms;
    terms.push_back(parseTerm());
    while (lex_.atSymbol(",")) {
      lex_.take();
      terms.push_back(parseTerm());
    }
    lex_.expectSymbol(")");
    return terms;
  }

  SurfaceTerm parseTerm() {
    Token t = lex_.take();
    SurfaceTerm term;
    term.pos = t.pos;
    term.name = t.text;
    if (t.kind == Token::Kind::Variable) {
      term.kind = SurfaceTerm::Kind::Variable;
      return term;
    }
    if (t.kind != Token::Kind::Name)
      throw SyntaxError(t.pos, "expected a term");
    if (reservedNames().count(t.text))
      throw SyntaxError(t.pos, "'" + t.text + "' is a reserved word");
    if (lex_.atSymbol("(")) {
      term.kind = SurfaceTerm::Kind::Compound;
      term.args = parseTermList();
    } else {
      term.kind = SurfaceTerm::Kind::Constant;
    }
    return term;
  }

  SurfaceLiteral parseLiteral() {
    SurfaceLiteral lit;
    lit.pos = lex_.peek().pos;
    if (lex_.atName("not")) {
      lex_.take();
      lit = parseLiteral();
      ++lit.negations;
      return lit;
    }
    if (lex_.atSymbol("(")) {
      lex_.take();
      lit = parseLiteral();
      lex_.expectSymbol(")");
      return lit;
    }
    if (lex_.atName("true") || lex_.atName("false")) {
      lit.kind = lex_.atName("true") ? SurfaceLiteral::Kind::TrueLit
                                     : SurfaceLiteral::Kind::FalseLit;
      lex_.take();
      return lit;
    }
    SurfaceTerm first = parseTerm();
    if (lex_.atSymbol("=")) {
      lex_.take();
      SurfaceTerm second = parseTerm();
      lit.kind = SurfaceLiteral::Kind::Equality;
      lit.args = {std::move(first), std::move(second)};
      return lit;
    }
    // An atom: p(args), a higher-order call Var(args), or a bare name/variable.
    lit.kind = SurfaceLiteral::Kind::Atom;
    if (first.kind == SurfaceTerm::Kind::Compound) {
      lit.functor = first;
      lit.functor.args.clear();
      lit.functor.kind = SurfaceTerm::Kind::Constant;
      lit.args = first.args;
    } else {
      lit.functor = first;
    }
    if (lit.functor.kind == SurfaceTerm::Kind::Variable && lex_.atSymbol("(")) {
      lit.args = parseTermList();
    }
    return lit;
  }

  Lexer lex_;
};

// ---------------------------------------------------------------------------
// Usage-based type inference. Argument positions are unified with iota where
// a constant, equality or function term pins them down, and with predicate
// types where application does. Positions left unconstrained default to iota;
// an explicit `pred name : type.` annotation overrides everything.

struct TNode {
  enum class Kind { Unknown, Iota, O, Arrow };
  Kind kind = Kind::Unknown;
  TNode* parent = nullptr;
  TNode* left = nullptr;
  TNode* right = nullptr;
};

class Inference {
 public:
  explicit Inference(const SurfaceProgram& sp) : sp_(sp) {}

  void run() {
    collectPredicates();
    for (const SurfaceClause& c : sp_.clauses) {
      clauseVars_.emplace_back();
      constrainClause(c, clauseVars_.back());
    }
    resolveAll();
  }

  const std::map<std::string, TypeRef>& predTypes() const { return predTypes_; }
  const std::set<std::string>& individualConstants() const { return consts_; }
  const std::map<std::string, size_t>& functions() const { return functions_; }
  bool isPredicate(const std::string& name) const { return preds_.count(name); }

  TypeRef varType(size_t clauseIndex, const std::string& var) const {
    const auto& env = clauseVars_[clauseIndex];
    auto it = env.find(var);
    if (it == env.end()) return Type::iota();
    return resolvedVar_.at(it->second);
  }

 private:
  TNode* fresh() {
    arena_.emplace_back();
    return &arena_.back();
  }

  TNode* make(TNode::Kind kind, TNode* l = nullptr, TNode* r = nullptr) {
    TNode* n = fresh();
    n->kind = kind;
    n->left = l;
    n->right = r;
    return n;
  }

  TNode* find(TNode* n) {
    while (n->parent) n = n->parent;
    return n;
  }

  void unify(TNode* a, TNode* b, const SourcePos& pos, const char* what) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a->kind == TNode::Kind::Unknown) {
      a->parent = b;
      return;
    }
    if (b->kind == TNode::Kind::Unknown) {
      b->parent = a;
      return;
    }
    if (a->kind != b->kind)
      throw TypeError(std::to_string(pos.line) + ":" +
                      std::to_string(pos.column) + ": type conflict at " +
                      what + " (individual vs predicate use); add a 'pred "
                      "name : type.' annotation if intended");
    b->parent = a;
    if (a->kind == TNode::Kind::Arrow) {
      unify(a->left, b->left, pos, what);
      unify(a->right, b->right, pos, what);
    }
  }

  TNode* fromType(const TypeRef& t) {
    switch (t->kind()) {
      case Type::Kind::Iota:
        return make(TNode::Kind::Iota);
      case Type::Kind::O:
        return make(TNode::Kind::O);
      case Type::Kind::Arrow:
        return make(TNode::Kind::Arrow, fromType(t->arg()),
                    fromType(t->result()));
    }
    return nullptr;
  }

  void collectPredicates() {
    for (const auto& [name, type] : sp_.annotations) preds_.insert(name);
    for (const SurfaceClause& c : sp_.clauses) {
      recordPredicate(c.head.name,
                      c.head.kind == SurfaceTerm::Kind::Compound
                          ? c.head.args.size()
                          : 0,
                      c.head.pos);
      for (const SurfaceLiteral& lit : c.body) {
        if (lit.kind == SurfaceLiteral::Kind::Atom &&
            lit.functor.kind != SurfaceTerm::Kind::Variable)
          recordPredicate(lit.functor.name, lit.args.size(), lit.pos);
      }
    }
    for (const auto& [name, type] : sp_.annotations) {
      auto& info = info_[name];
      size_t arity = type->predicateArgs().size();
      if (info.arity != size_t(-1) && info.arity != arity)
        throw TypeError("annotation for '" + name + "' declares arity " +
                        std::to_string(arity) + " but it is used with arity " +
                        std::to_string(info.arity));
      info.arity = arity;
    }
    for (auto& [name, info] : info_) {
      info.args.clear();
      for (size_t i = 0; i < info.arity; ++i) info.args.push_back(fresh());
      info.full = make(TNode::Kind::O);
      for (auto it = info.args.rbegin(); it != info.args.rend(); ++it)
        info.full = make(TNode::Kind::Arrow, *it, info.full);
      if (auto a = sp_.annotations.find(name); a != sp_.annotations.end())
        unify(info.full, fromType(a->second), SourcePos{}, name.c_str());
    }
  }

  void recordPredicate(const std::string& name, size_t arity,
                       const SourcePos& pos) {
    preds_.insert(name);
    auto& info = info_[name];
    if (info.arity != size_t(-1) && info.arity != arity)
      throw TypeError(std::to_string(pos.line) + ":" +
                      std::to_string(pos.column) + ": predicate '" + name +
                      "' used with arities " + std::to_string(info.arity) +
                      " and " + std::to_string(arity));
    info.arity = arity;
  }

  using VarEnv = std::map<std::string, TNode*>;

  void constrainClause(const SurfaceClause& c, VarEnv& env) {
    auto& info = info_.at(c.head.name);
    for (size_t i = 0; i < c.head.args.size(); ++i)
      unify(termNode(c.head.args[i], env), info.args[i], c.head.args[i].pos,
            c.head.name.c_str());
    for (const SurfaceLiteral& lit : c.body) constrainLiteral(lit, env);
  }

  void constrainLiteral(const SurfaceLiteral& lit, VarEnv& env) {
    switch (lit.kind) {
      case SurfaceLiteral::Kind::TrueLit:
      case SurfaceLiteral::Kind::FalseLit:
        return;
      case SurfaceLiteral::Kind::Equality: {
        unify(termNode(lit.args[0], env), make(TNode::Kind::Iota),
              lit.args[0].pos, "'='");
        unify(termNode(lit.args[1], env), make(TNode::Kind::Iota),
              lit.args[1].pos, "'='");
        return;
      }
      case SurfaceLiteral::Kind::Atom: {
        if (lit.functor.kind == SurfaceTerm::Kind::Variable) {
          TNode* full = make(TNode::Kind::O);
          for (auto it = lit.args.rbegin(); it != lit.args.rend(); ++it)
            full = make(TNode::Kind::Arrow, termNode(*it, env), full);
          unify(varNode(lit.functor.name, env), full, lit.pos,
                lit.functor.name.c_str());
        } else {
          auto& info = info_.at(lit.functor.name);
          for (size_t i = 0; i < lit.args.size(); ++i)
            unify(termNode(lit.args[i], env), info.args[i], lit.args[i].pos,
                  lit.functor.name.c_str());
        }
        return;
      }
    }
  }

  TNode* varNode(const std::string& name, VarEnv& env) {
    auto it = env.find(name);
    if (it != env.end()) return it->second;
    return env.emplace(name, fresh()).first->second;
  }

  TNode* termNode(const SurfaceTerm& term, VarEnv& env) {
    switch (term.kind) {
      case SurfaceTerm::Kind::Variable:
        return varNode(term.name, env);
      case SurfaceTerm::Kind::Constant:
        if (preds_.count(term.name)) return info_.at(term.name).full;
        consts_.insert(term.name);
        return make(TNode::Kind::Iota);
      case SurfaceTerm::Kind::Compound: {
        if (preds_.count(term.name))
          throw TypeError(std::to_string(term.pos.line) + ":" +
                          std::to_string(term.pos.column) + ": predicate '" +
                          term.name + "' used as a function symbol");
        auto [it, inserted] = functions_.emplace(term.name, term.args.size());
        if (!inserted && it->second != term.args.size())
          throw TypeError("function symbol '" + term.name +
                          "' used with inconsistent arities");
        for (const SurfaceTerm& a : term.args)
          unify(termNode(a, env), make(TNode::Kind::Iota), a.pos,
                term.name.c_str());
        return make(TNode::Kind::Iota);
      }
    }
    return nullptr;
  }

  TypeRef resolve(TNode* n, std::set<TNode*>& onPath) {
    n = find(n);
    switch (n->kind) {
      case TNode::Kind::Unknown:
        return Type::iota();  // unconstrained positions take the
                              // first-order reading
      case TNode::Kind::Iota:
        return Type::iota();
      case TNode::Kind::O:
        return Type::o();
      case TNode::Kind::Arrow: {
        if (!onPath.insert(n).second)
          throw TypeError("cyclic type (self-application is untypeable)");
        TypeRef t = Type::arrow(resolve(n->left, onPath),
                                resolve(n->right, onPath));
        onPath.erase(n);
        return t;
      }
    }
    return nullptr;
  }

  void resolveAll() {
    for (auto& [name, info] : info_) {
      std::set<TNode*> onPath;
      TypeRef t = resolve(info.full, onPath);
      if (!t->isPredicate())
        throw TypeError("inferred type for '" + name +
                        "' is not a predicate type: " + t->toString());
      predTypes_[name] = t;
    }
    for (auto& env : clauseVars_) {
      for (auto& [name, node] : env) {
        std::set<TNode*> onPath;
        TypeRef t = resolve(node, onPath);
        if (!t->isArgument())
          throw TypeError("variable '" + name +
                          "' has a non-argument type: " + t->toString());
        resolvedVar_[node] = t;
      }
    }
    // A name cannot be both an individual constant and a function symbol.
    for (const auto& [name, arity] : functions_)
      if (consts_.count(name) || preds_.count(name))
        throw TypeError("'" + name + "' is used both as a function symbol and "
                        "as a constant or predicate");
  }

  struct PredInfo {
    size_t arity = size_t(-1);
    std::vector<TNode*> args;
    TNode* full = nullptr;
  };

  const SurfaceProgram& sp_;
  std::deque<TNode> arena_;
  std::set<std::string> preds_;
  std::set<std::string> consts_;
  std::map<std::string, size_t> functions_;
  std::map<std::string, PredInfo> info_;
  std::map<std::string, TypeRef> predTypes_;
  std::vector<VarEnv> clauseVars_;
  std::map<TNode*, TypeRef> resolvedVar_;
};

// ---------------------------------------------------------------------------
// Compilation to core clauses

std::string mangleType(const TypeRef& t) {
  switch (t->kind()) {
    case Type::Kind::Iota:
      return "i";
    case Type::Kind::O:
      return "o";
    case Type::Kind::Arrow:
      return (t->arg()->isArrow() ? "L" + mangleType(t->arg()) + "R"
                                  : mangleType(t->arg())) +
             mangleType(t->result());
  }
  return "?";
}

class Compiler {
 public:
  Compiler(const SurfaceProgram& sp, bool wadgeMode)
      : sp_(sp), wadge_(wadgeMode), infer_(sp) {}

  Program run() {
    infer_.run();
    for (const auto& [name, type] : infer_.predTypes())
      prog_.sig.predicates[name] = type;
    for (const std::string& name : infer_.individualConstants())
      prog_.sig.constants[name] = Type::iota();
    for (const auto& [name, arity] : infer_.functions()) {
      TypeRef t = Type::iota();
      for (size_t i = 0; i < arity; ++i) t = Type::arrow(Type::iota(), t);
      prog_.sig.functions[name] = t;
    }
    for (size_t i = 0; i < sp_.clauses.size(); ++i)
      prog_.clauses.push_back(compileClause(sp_.clauses[i], i));
    injectEqualityLibrary();
    return std::move(prog_);
  }

 private:
  struct Binder {
    std::string name;
    TypeRef type;
  };

  Clause compileClause(const SurfaceClause& c, size_t clauseIndex) {
    const TypeRef headType = prog_.sig.predicates.at(c.head.name);
    const std::vector<TypeRef> paramTypes = headType->predicateArgs();

    usedNames_.clear();
    collectVarNames(c);
    std::vector<Binder> binders;
    std::vector<ExprRef> guards;
    std::map<std::string, TypeRef> lambdaBound;

    for (size_t i = 0; i < c.head.args.size(); ++i) {
      const SurfaceTerm& t = c.head.args[i];
      const TypeRef& paramType = paramTypes[i];
      if (t.kind == SurfaceTerm::Kind::Variable && !lambdaBound.count(t.name)) {
        binders.push_back({t.name, paramType});
        lambdaBound[t.name] = paramType;
        continue;
      }
      std::string fresh = freshName();
      binders.push_back({fresh, paramType});
      lambdaBound[fresh] = paramType;
      ExprRef param = Expr::var(fresh, paramType);
      if (t.kind == SurfaceTerm::Kind::Variable) {
        // Repeated head variable.
        guards.push_back(equalityGuard(param, Expr::var(t.name, paramType),
                                       paramType, t.pos));
      } else if (t.kind == SurfaceTerm::Kind::Constant &&
                 infer_.isPredicate(t.name)) {
        if (!wadge_)
          throw CompileError(
              std::to_string(t.pos.line) + ":" + std::to_string(t.pos.column) +
              ": predicate constant '" + t.name +
              "' in a clause head; recompile with the Wadge transformation "
              "enabled to rewrite it through an equality predicate");
        guards.push_back(equalityGuard(
            param, Expr::predConst(t.name, prog_.sig.predicates.at(t.name)),
            paramType, t.pos));
      } else {
        guards.push_back(Expr::eq(param, termExpr(t, clauseIndex)));
      }
    }

    ExprRef body;
    if (!c.body.empty()) {
      std::vector<ExprRef> lits;
      for (const SurfaceLiteral& lit : c.body)
        lits.push_back(literalExpr(lit, clauseIndex));
      body = lits.back();
      for (size_t i = lits.size() - 1; i-- > 0;)
        body = Expr::conj(lits[i], body);
    }

    ExprRef guardConj;
    for (auto it = guards.rbegin(); it != guards.rend(); ++it)
      guardConj = guardConj ? Expr::conj(*it, guardConj) : *it;
    ExprRef full;
    if (guardConj && body)
      full = Expr::conj(guardConj, body);
    else if (guardConj)
      full = guardConj;
    else if (body)
      full = body;
    else
      full = Expr::trueLit();

    // Every variable not bound by a head parameter is existentially
    // quantified around the whole of guards and body, in first-occurrence
    // order (head arguments first, then body literals).
    std::vector<std::string> clauseVars;
    for (const SurfaceTerm& t : c.head.args) collectTermVars(t, clauseVars);
    for (const SurfaceLiteral& lit : c.body)
      collectLiteralVars(lit, clauseVars);
    std::vector<std::string> toWrap;
    std::set<std::string> seen;
    for (const std::string& v : clauseVars) {
      if (lambdaBound.count(v) || seen.count(v)) continue;
      seen.insert(v);
      toWrap.push_back(v);
    }
    for (auto it = toWrap.rbegin(); it != toWrap.rend(); ++it)
      full = Expr::exists(*it, infer_.varType(clauseIndex, *it), full);

    for (auto it = binders.rbegin(); it != binders.rend(); ++it)
      full = Expr::lambda(it->name, it->type, full);
    return Clause{c.head.name, full};
  }

  ExprRef equalityGuard(ExprRef lhs, ExprRef rhs, const TypeRef& type,
                        const SourcePos& pos) {
    if (type->isIota()) return Expr::eq(std::move(lhs), std::move(rhs));
    if (!wadge_)
      throw CompileError(std::to_string(pos.line) + ":" +
                         std::to_string(pos.column) +
                         ": predicate-typed head parameter needs the Wadge "
                         "transformation");
    const std::string equalName = "equal_" + mangleType(type);
    neededTypes_[type->toString()] = type;
    TypeRef eqType = Type::arrow(type, Type::arrow(type, Type::o()));
    return Expr::app(Expr::app(Expr::predConst(equalName, eqType), lhs), rhs);
  }

  ExprRef literalExpr(const SurfaceLiteral& lit, size_t clauseIndex) {
    ExprRef e;
    switch (lit.kind) {
      case SurfaceLiteral::Kind::TrueLit:
        e = Expr::trueLit();
        break;
      case SurfaceLiteral::Kind::FalseLit:
        e = Expr::falseLit();
        break;
      case SurfaceLiteral::Kind::Equality:
        e = Expr::eq(termExpr(lit.args[0], clauseIndex),
                     termExpr(lit.args[1], clauseIndex));
        break;
      case SurfaceLiteral::Kind::Atom: {
        if (lit.functor.kind == SurfaceTerm::Kind::Variable) {
          e = Expr::var(lit.functor.name,
                        infer_.varType(clauseIndex, lit.functor.name));
        } else {
          e = Expr::predConst(lit.functor.name,
                              prog_.sig.predicates.at(lit.functor.name));
        }
        for (const SurfaceTerm& a : lit.args)
          e = Expr::app(e, termExpr(a, clauseIndex));
        break;
      }
    }
    for (uint32_t n = 0; n < lit.negations; ++n) e = Expr::negation(e);
    return e;
  }

  ExprRef termExpr(const SurfaceTerm& term, size_t clauseIndex) {
    switch (term.kind) {
      case SurfaceTerm::Kind::Variable:
        return Expr::var(term.name, infer_.varType(clauseIndex, term.name));
      case SurfaceTerm::Kind::Constant:
        if (infer_.isPredicate(term.name))
          return Expr::predConst(term.name,
                                 prog_.sig.predicates.at(term.name));
        return Expr::indConst(term.name);
      case SurfaceTerm::Kind::Compound: {
        std::vector<ExprRef> args;
        for (const SurfaceTerm& a : term.args)
          args.push_back(termExpr(a, clauseIndex));
        return Expr::funApp(term.name, std::move(args));
      }
    }
    return nullptr;
  }

  void collectVarNames(const SurfaceClause& c) {
    std::vector<std::string> names;
    for (const SurfaceTerm& t : c.head.args) collectTermVars(t, names);
    for (const SurfaceLiteral& lit : c.body) collectLiteralVars(lit, names);
    usedNames_.insert(names.begin(), names.end());
  }

  void collectLiteralVars(const SurfaceLiteral& lit,
                          std::vector<std::string>& out) {
    if (lit.functor.kind == SurfaceTerm::Kind::Variable)
      out.push_back(lit.functor.name);
    for (const SurfaceTerm& t : lit.args) collectTermVars(t, out);
  }

  void collectTermVars(const SurfaceTerm& t, std::vector<std::string>& out) {
    if (t.kind == SurfaceTerm::Kind::Variable) out.push_back(t.name);
    for (const SurfaceTerm& a : t.args) collectTermVars(a, out);
  }

  std::string freshName() {
    for (int i = 1;; ++i) {
      std::string name = "V" + std::to_string(i);
      if (!usedNames_.count(name)) {
        usedNames_.insert(name);
        return name;
      }
    }
  }

  void injectEqualityLibrary() {
    for (const auto& [key, type] : neededTypes_) {
      const std::string suffix = mangleType(type);
      const std::string subsetName = "subset_" + suffix;
      const std::string equalName = "equal_" + suffix;
      if (prog_.sig.predicates.count(subsetName) ||
          prog_.sig.predicates.count(equalName))
        throw CompileError("the Wadge transformation needs the names '" +
                           subsetName + "' and '" + equalName +
                           "', which the program already defines");
      TypeRef relType = Type::arrow(type, Type::arrow(type, Type::o()));
      prog_.sig.predicates[subsetName] = relType;
      prog_.sig.predicates[equalName] = relType;

      // subset <- \P. \Q. ~ exists X1..Xk ((P X1..Xk) & ~(Q X1..Xk))
      std::vector<TypeRef> argTypes = type->predicateArgs();
      ExprRef p = Expr::var("P", type);
      ExprRef q = Expr::var("Q", type);
      ExprRef appP = p, appQ = q;
      std::vector<std::string> xs;
      for (size_t i = 0; i < argTypes.size(); ++i) {
        xs.push_back("X" + std::to_string(i + 1));
        ExprRef x = Expr::var(xs.back(), argTypes[i]);
        appP = Expr::app(appP, x);
        appQ = Expr::app(appQ, x);
      }
      ExprRef inner = Expr::conj(appP, Expr::negation(appQ));
      for (size_t i = argTypes.size(); i-- > 0;)
        inner = Expr::exists(xs[i], argTypes[i], inner);
      ExprRef subsetBody =
          Expr::lambda("P", type, Expr::lambda("Q", type, Expr::negation(inner)));
      prog_.clauses.push_back(Clause{subsetName, subsetBody});

      // equal <- \P. \Q. (subset P Q) & (subset Q P)
      ExprRef subsetConst = Expr::predConst(subsetName, relType);
      ExprRef equalBody = Expr::lambda(
          "P", type,
          Expr::lambda(
              "Q", type,
              Expr::conj(Expr::app(Expr::app(subsetConst, p), q),
                         Expr::app(Expr::app(subsetConst, q), p))));
      prog_.clauses.push_back(Clause{equalName, equalBody});
    }
  }

  const SurfaceProgram& sp_;
  bool wadge_;
  Inference infer_;
  Program prog_;
  std::set<std::string> usedNames_;
  std::map<std::string, TypeRef> neededTypes_;
};

}  // namespace

SurfaceProgram parseSurface(const std::string& text) {
  return SurfaceParser(text).parse();
}

Program compileSurface(const SurfaceProgram& sp, bool wadgeMode) {
  return Compiler(sp, wadgeMode).run();
}

}  // namespace extensia
