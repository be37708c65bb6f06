// Printable core form and its parser. The two are inverse on well-typed
// programs: parseCore(pretty(p)) is structurally equal to p.

#include <functional>
#include <sstream>

#include "lexer.hpp"
#include "syntax.hpp"

namespace extensia {

namespace {

const std::vector<std::string>& coreSymbols() {
  static const std::vector<std::string> symbols = {
      "<-", "->", ".", ":", "(", ")", "&", "|", "~", "=", "\\"};
  return symbols;
}

// Precedence levels, loosest first.
enum Level : int {
  kLevelQuant = 0,
  kLevelOr = 1,
  kLevelAnd = 2,
  kLevelEq = 3,
  kLevelNot = 4,
  kLevelApp = 5,
  kLevelAtom = 6,
};

std::string typeText(const TypeRef& t) { return t->toString(); }

std::string binderTypeText(const TypeRef& t) {
  return t->isArrow() ? "(" + t->toString() + ")" : t->toString();
}

void printExpr(std::ostream& os, const ExprRef& e, int context) {
  auto wrap = [&](int level, auto&& body) {
    if (level < context) {
      os << "(";
      body();
      os << ")";
    } else {
      body();
    }
  };
  switch (e->kind) {
    case Expr::Kind::TrueLit:
      os << "true";
      return;
    case Expr::Kind::FalseLit:
      os << "false";
      return;
    case Expr::Kind::IndConst:
    case Expr::Kind::PredConst:
    case Expr::Kind::IndVar:
    case Expr::Kind::PredVar:
      os << e->name;
      return;
    case Expr::Kind::FunApp:
      wrap(kLevelApp, [&] {
        os << e->name;
        for (const auto& a : e->child) {
          os << " ";
          printExpr(os, a, kLevelAtom);
        }
      });
      return;
    case Expr::Kind::App:
      wrap(kLevelApp, [&] {
        printExpr(os, e->child[0], kLevelApp);
        os << " ";
        printExpr(os, e->child[1], kLevelAtom);
      });
      return;
    case Expr::Kind::Lambda:
      wrap(kLevelQuant, [&] {
        os << "\\" << e->name << " : " << binderTypeText(e->binderType) << ". ";
        printExpr(os, e->child[0], kLevelQuant);
      });
      return;
    case Expr::Kind::Exists:
      wrap(kLevelQuant, [&] {
        os << "exists " << e->name << " : " << binderTypeText(e->binderType)
           << ". ";
        printExpr(os, e->child[0], kLevelQuant);
      });
      return;
    case Expr::Kind::And:
      wrap(kLevelAnd, [&] {
        printExpr(os, e->child[0], kLevelAnd);
        os << " & ";
        printExpr(os, e->child[1], kLevelAnd + 1);
      });
      return;
    case Expr::Kind::Or:
      wrap(kLevelOr, [&] {
        printExpr(os, e->child[0], kLevelOr);
        os << " | ";
        printExpr(os, e->child[1], kLevelOr + 1);
      });
      return;
    case Expr::Kind::Not:
      wrap(kLevelNot, [&] {
        os << "~";
        printExpr(os, e->child[0], kLevelAtom);
      });
      return;
    case Expr::Kind::Eq:
      wrap(kLevelEq, [&] {
        printExpr(os, e->child[0], kLevelEq + 1);
        os << " = ";
        printExpr(os, e->child[1], kLevelEq + 1);
      });
      return;
  }
}

class CoreParser {
 public:
  CoreParser(const std::string& text, const Signature* sig)
      : lex_(text, coreSymbols()) {
    if (sig) prog_.sig = *sig;
  }

  Program parseProgram() {
    while (lex_.peek().kind != Token::Kind::End) {
      if (lex_.atName("const") || lex_.atName("func") || lex_.atName("pred")) {
        parseDecl();
      } else {
        parseClause();
      }
    }
    return std::move(prog_);
  }

  ExprRef parseSingleExpr() {
    ExprRef e = parseExpr();
    if (lex_.peek().kind != Token::Kind::End) lex_.fail("expected end of expression");
    return e;
  }

 private:
  void parseDecl() {
    std::string what = lex_.take().text;
    Token name = lex_.take();
    if (name.kind != Token::Kind::Name)
      throw SyntaxError(name.pos, "expected a lowercase name in declaration");
    lex_.expectSymbol(":");
    TypeRef type = parseType();
    lex_.expectSymbol(".");
    if (what == "const") {
      if (!type->isIota())
        throw SyntaxError(name.pos, "individual constants have type i");
      prog_.sig.constants[name.text] = type;
    } else if (what == "func") {
      if (!type->isFunctional() || type->isIota())
        throw SyntaxError(name.pos, "function symbols have type i^n -> i");
      prog_.sig.functions[name.text] = type;
    } else {
      if (!type->isPredicate())
        throw SyntaxError(name.pos,
                          "predicate type expected, got " + type->toString());
      prog_.sig.predicates[name.text] = type;
    }
  }

  void parseClause() {
    Token head = lex_.take();
    if (head.kind != Token::Kind::Name)
      throw SyntaxError(head.pos, "expected a clause head or declaration");
    auto it = prog_.sig.predicates.find(head.text);
    if (it == prog_.sig.predicates.end())
      throw SyntaxError(head.pos, "undeclared predicate '" + head.text + "'");
    lex_.expectSymbol("<-");
    ExprRef body = parseExpr();
    lex_.expectSymbol(".");
    prog_.clauses.push_back(Clause{head.text, std::move(body)});
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

  ExprRef parseExpr() {
    if (lex_.atSymbol("\\")) {
      lex_.take();
      auto [name, type] = parseBinder();
      ExprRef body = parseExpr();
      scope_.pop_back();
      return Expr::lambda(name, type, body);
    }
    if (lex_.atName("exists")) {
      lex_.take();
      auto [name, type] = parseBinder();
      ExprRef body = parseExpr();
      scope_.pop_back();
      return Expr::exists(name, type, body);
    }
    return parseOr();
  }

  std::pair<std::string, TypeRef> parseBinder() {
    Token var = lex_.take();
    if (var.kind != Token::Kind::Variable && var.kind != Token::Kind::Name)
      throw SyntaxError(var.pos, "expected a bound variable name");
    lex_.expectSymbol(":");
    TypeRef type = parseType();
    lex_.expectSymbol(".");
    scope_.emplace_back(var.text, type);
    return {var.text, type};
  }

  ExprRef parseOr() {
    ExprRef e = parseAnd();
    while (lex_.atSymbol("|")) {
      lex_.take();
      e = Expr::disj(e, parseAnd());
    }
    return e;
  }

  ExprRef parseAnd() {
    ExprRef e = parseCmp();
    while (lex_.atSymbol("&")) {
      lex_.take();
      e = Expr::conj(e, parseCmp());
    }
    return e;
  }

  ExprRef parseCmp() {
    ExprRef e = parseUnary();
    if (lex_.atSymbol("=")) {
      lex_.take();
      e = Expr::eq(e, parseUnary());
    }
    return e;
  }

  ExprRef parseUnary() {
    if (lex_.atSymbol("~")) {
      lex_.take();
      return Expr::negation(parseUnary());
    }
    return parseApp();
  }

  bool atAtomStart() const {
    const Token& t = lex_.peek();
    if (t.kind == Token::Kind::Variable) return true;
    if (t.kind == Token::Kind::Name) return t.text != "exists";
    return t.kind == Token::Kind::Symbol && (t.text == "(" || t.text == "\\");
  }

  ExprRef parseApp() {
    Token first = lex_.peek();
    // A function symbol takes exactly its arity of argument atoms.
    if (first.kind == Token::Kind::Name && !inScope(first.text) &&
        prog_.sig.functions.count(first.text)) {
      lex_.take();
      size_t arity = prog_.sig.functions.at(first.text)->predicateArgs().size();
      std::vector<ExprRef> args;
      for (size_t i = 0; i < arity; ++i) {
        if (!atAtomStart())
          throw SyntaxError(first.pos, "function '" + first.text + "' expects " +
                                           std::to_string(arity) + " arguments");
        args.push_back(parseAtom());
      }
      return Expr::funApp(first.text, std::move(args));
    }
    ExprRef e = parseAtom();
    while (atAtomStart()) e = Expr::app(e, parseAtom());
    return e;
  }

  ExprRef parseAtom() {
    Token t = lex_.take();
    if (t.kind == Token::Kind::Symbol && t.text == "(") {
      ExprRef e = parseExpr();
      lex_.expectSymbol(")");
      return e;
    }
    if (t.kind == Token::Kind::Symbol && t.text == "\\") {
      auto [name, type] = parseBinder();
      ExprRef body = parseExpr();
      scope_.pop_back();
      return Expr::lambda(name, type, body);
    }
    if (t.kind == Token::Kind::Name || t.kind == Token::Kind::Variable) {
      if (t.text == "true") return Expr::trueLit();
      if (t.text == "false") return Expr::falseLit();
      if (const TypeRef* bound = lookup(t.text)) return Expr::var(t.text, *bound);
      if (auto it = prog_.sig.predicates.find(t.text);
          it != prog_.sig.predicates.end())
        return Expr::predConst(t.text, it->second);
      if (prog_.sig.constants.count(t.text)) return Expr::indConst(t.text);
      throw SyntaxError(t.pos, "unknown name '" + t.text + "'");
    }
    throw SyntaxError(t.pos, "expected an expression");
  }

  bool inScope(const std::string& name) const { return lookup(name) != nullptr; }

  const TypeRef* lookup(const std::string& name) const {
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
      if (it->first == name) return &it->second;
    return nullptr;
  }

  Lexer lex_;
  Program prog_;
  std::vector<std::pair<std::string, TypeRef>> scope_;
};

}  // namespace

std::string pretty(const ExprRef& expr) {
  std::ostringstream os;
  printExpr(os, expr, kLevelQuant);
  return os.str();
}

std::string pretty(const Program& program) {
  std::ostringstream os;
  for (const auto& [name, type] : program.sig.constants)
    os << "const " << name << " : " << typeText(type) << ".\n";
  for (const auto& [name, type] : program.sig.functions)
    os << "func " << name << " : " << typeText(type) << ".\n";
  for (const auto& [name, type] : program.sig.predicates)
    os << "pred " << name << " : " << typeText(type) << ".\n";
  if (!program.clauses.empty()) os << "\n";
  for (const Clause& c : program.clauses)
    os << c.head << " <- " << pretty(c.body) << ".\n";
  return os.str();
}

Program parseCore(const std::string& text) {
  return CoreParser(text, nullptr).parseProgram();
}

ExprRef parseCoreExpr(const std::string& text, const Signature& sig) {
  return CoreParser(text, &sig).parseSingleExpr();
}

}  // namespace extensia
