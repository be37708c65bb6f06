// Types, expressions and programs of the higher-order language H, plus the
// Prolog-like surface syntax and its compilation to core program clauses.

#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace extensia {

struct SourcePos {
  int line = 0;  // 1-based; 0 when synthesized
  int column = 0;
};

struct SyntaxError : std::runtime_error {
  SyntaxError(SourcePos pos, const std::string& message)
      : std::runtime_error(std::to_string(pos.line) + ":" +
                           std::to_string(pos.column) + ": " + message),
        pos(pos) {}
  SourcePos pos;
};

struct TypeError : std::runtime_error {
  explicit TypeError(const std::string& message)
      : std::runtime_error(message) {}
};

struct CompileError : std::runtime_error {
  explicit CompileError(const std::string& message)
      : std::runtime_error(message) {}
};

// ---------------------------------------------------------------------------
// Types. Functional types are iota or iota^n -> iota; predicate types end in
// o; argument types are iota or predicate types.

class Type;
using TypeRef = std::shared_ptr<const Type>;

class Type {
 public:
  enum class Kind { Iota, O, Arrow };

  static TypeRef iota();
  static TypeRef o();
  static TypeRef arrow(TypeRef arg, TypeRef result);
  static TypeRef predicate(const std::vector<TypeRef>& args);  // args -> o

  Kind kind() const { return kind_; }
  const TypeRef& arg() const { return arg_; }
  const TypeRef& result() const { return result_; }

  bool isIota() const { return kind_ == Kind::Iota; }
  bool isO() const { return kind_ == Kind::O; }
  bool isArrow() const { return kind_ == Kind::Arrow; }
  bool isFunctional() const;  // iota or iota^n -> iota
  bool isPredicate() const;   // o or rho -> pi
  bool isArgument() const { return isIota() || isPredicate(); }

  // True for iota, o and iota^n -> o: the types whose semantic domain over a
  // finite universe can be enumerated outright.
  bool isEnumerable() const;

  // For a predicate type rho_1 -> ... -> rho_n -> o, the list rho_1..rho_n.
  std::vector<TypeRef> predicateArgs() const;

  std::string toString() const;

  explicit Type(Kind kind, TypeRef arg = nullptr, TypeRef result = nullptr)
      : kind_(kind), arg_(std::move(arg)), result_(std::move(result)) {}

 private:
  Kind kind_;
  TypeRef arg_;
  TypeRef result_;
};

bool typeEquals(const TypeRef& a, const TypeRef& b);

// ---------------------------------------------------------------------------
// Expressions. Nodes are immutable and carry their type from construction;
// typecheck() re-derives and verifies every annotation.

class Expr;
using ExprRef = std::shared_ptr<const Expr>;

class Expr {
 public:
  enum class Kind {
    TrueLit,
    FalseLit,
    IndConst,
    PredConst,
    IndVar,
    PredVar,
    FunApp,
    App,
    Lambda,
    And,
    Or,
    Not,
    Eq,
    Exists,
  };

  Kind kind;
  std::string name;            // constant / variable / function symbol
  std::vector<ExprRef> child;  // see the factory functions for layout
  TypeRef binderType;          // Lambda / Exists: type of the bound variable
  TypeRef type;                // type of the whole expression

  static ExprRef trueLit();
  static ExprRef falseLit();
  static ExprRef indConst(std::string name);
  static ExprRef predConst(std::string name, TypeRef type);
  static ExprRef var(std::string name, TypeRef type);  // picks Ind/Pred kind
  static ExprRef funApp(std::string fn, std::vector<ExprRef> args);
  static ExprRef app(ExprRef fn, ExprRef arg);
  static ExprRef lambda(std::string var, TypeRef varType, ExprRef body);
  static ExprRef conj(ExprRef l, ExprRef r);
  static ExprRef disj(ExprRef l, ExprRef r);
  static ExprRef negation(ExprRef e);
  static ExprRef eq(ExprRef l, ExprRef r);
  static ExprRef exists(std::string var, TypeRef varType, ExprRef body);

  bool isVariable() const {
    return kind == Kind::IndVar || kind == Kind::PredVar;
  }
};

bool exprEquals(const ExprRef& a, const ExprRef& b);

// ---------------------------------------------------------------------------
// Core programs.

struct Signature {
  std::map<std::string, TypeRef> predicates;  // name -> predicate type
  std::map<std::string, TypeRef> constants;   // name -> iota
  std::map<std::string, TypeRef> functions;   // name -> iota^n -> iota
};

struct Clause {
  std::string head;  // predicate constant
  ExprRef body;      // closed expression of the head's type
};

struct Program {
  Signature sig;
  std::vector<Clause> clauses;

  bool hasFunctionSymbols() const { return !sig.functions.empty(); }
};

// Verifies the formation rules for every node, that clause bodies are closed
// and match their head's type, and that lambda/exists binders have enumerable
// types. Throws TypeError. Returns its argument for chaining.
const Program& typecheck(const Program& program);

// Printable core form; parseCore(pretty(p)) reproduces p structurally.
std::string pretty(const Program& program);
std::string pretty(const ExprRef& expr);
Program parseCore(const std::string& text);

// Parses a single expression in the context of an existing signature; used by
// query evaluation. Free occurrences of signature names resolve to constants.
ExprRef parseCoreExpr(const std::string& text, const Signature& sig);

// ---------------------------------------------------------------------------
// Surface syntax: Prolog-like clauses with "not", "=", higher-order calls
// Var(args), and optional `pred name : type.` annotations.

struct SurfaceTerm {
  enum class Kind { Variable, Constant, Compound };
  Kind kind = Kind::Constant;
  std::string name;
  std::vector<SurfaceTerm> args;  // Compound only
  SourcePos pos;
};

struct SurfaceLiteral {
  enum class Kind { Atom, Equality, TrueLit, FalseLit };
  Kind kind = Kind::Atom;
  // Number of enclosing "not"s. Negation is not involutive here (each one
  // moves the value a level deeper), so the count matters.
  uint32_t negations = 0;
  // Atom: functor applied to args (functor may be a variable);
  // Equality: args = {lhs, rhs}.
  SurfaceTerm functor;
  std::vector<SurfaceTerm> args;
  SourcePos pos;
};

struct SurfaceClause {
  SurfaceTerm head;  // Compound or Constant (propositional)
  std::vector<SurfaceLiteral> body;
  SourcePos pos;
};

struct SurfaceProgram {
  std::vector<SurfaceClause> clauses;
  std::map<std::string, TypeRef> annotations;  // pred name -> declared type
};

SurfaceProgram parseSurface(const std::string& text);

// Compiles surface clauses to core form. With wadgeMode, predicate constants
// in head argument positions are rewritten through injected equal_*/subset_*
// predicates; without it they are a CompileError.
Program compileSurface(const SurfaceProgram& sp, bool wadgeMode);

}  // namespace extensia
