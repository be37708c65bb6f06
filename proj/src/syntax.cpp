#include "syntax.hpp"

namespace extensia {

// ---------------------------------------------------------------------------
// Types

TypeRef Type::iota() {
  static const TypeRef t = std::make_shared<Type>(Kind::Iota);
  return t;
}

TypeRef Type::o() {
  static const TypeRef t = std::make_shared<Type>(Kind::O);
  return t;
}

TypeRef Type::arrow(TypeRef arg, TypeRef result) {
  return std::make_shared<Type>(Kind::Arrow, std::move(arg),
                                std::move(result));
}

TypeRef Type::predicate(const std::vector<TypeRef>& args) {
  TypeRef t = o();
  for (auto it = args.rbegin(); it != args.rend(); ++it) t = arrow(*it, t);
  return t;
}

bool Type::isFunctional() const {
  const Type* t = this;
  while (t->kind_ == Kind::Arrow) {
    if (!t->arg_->isIota()) return false;
    t = t->result_.get();
  }
  return t->kind_ == Kind::Iota;
}

bool Type::isPredicate() const {
  const Type* t = this;
  while (t->kind_ == Kind::Arrow) {
    if (!t->arg_->isArgument()) return false;
    t = t->result_.get();
  }
  return t->kind_ == Kind::O;
}

bool Type::isEnumerable() const {
  if (isIota() || isO()) return true;
  const Type* t = this;
  while (t->kind_ == Kind::Arrow) {
    if (!t->arg_->isIota()) return false;
    t = t->result_.get();
  }
  return t->kind_ == Kind::O;
}

std::vector<TypeRef> Type::predicateArgs() const {
  std::vector<TypeRef> args;
  const Type* t = this;
  while (t->kind_ == Kind::Arrow) {
    args.push_back(t->arg_);
    t = t->result_.get();
  }
  return args;
}

std::string Type::toString() const {
  switch (kind_) {
    case Kind::Iota:
      return "i";
    case Kind::O:
      return "o";
    case Kind::Arrow: {
      std::string lhs = arg_->toString();
      if (arg_->isArrow()) lhs = "(" + lhs + ")";
      return lhs + " -> " + result_->toString();
    }
  }
  return "?";
}

bool typeEquals(const TypeRef& a, const TypeRef& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (a->kind() != b->kind()) return false;
  if (!a->isArrow()) return true;
  return typeEquals(a->arg(), b->arg()) && typeEquals(a->result(), b->result());
}

// ---------------------------------------------------------------------------
// Expressions

namespace {

std::shared_ptr<Expr> node(Expr::Kind kind) {
  auto e = std::make_shared<Expr>();
  e->kind = kind;
  return e;
}

}  // namespace

ExprRef Expr::trueLit() {
  auto e = node(Kind::TrueLit);
  e->type = Type::o();
  return e;
}

ExprRef Expr::falseLit() {
  auto e = node(Kind::FalseLit);
  e->type = Type::o();
  return e;
}

ExprRef Expr::indConst(std::string name) {
  auto e = node(Kind::IndConst);
  e->name = std::move(name);
  e->type = Type::iota();
  return e;
}

ExprRef Expr::predConst(std::string name, TypeRef type) {
  auto e = node(Kind::PredConst);
  e->name = std::move(name);
  e->type = std::move(type);
  return e;
}

ExprRef Expr::var(std::string name, TypeRef type) {
  auto e = node(type->isIota() ? Kind::IndVar : Kind::PredVar);
  e->name = std::move(name);
  e->type = std::move(type);
  return e;
}

ExprRef Expr::funApp(std::string fn, std::vector<ExprRef> args) {
  auto e = node(Kind::FunApp);
  e->name = std::move(fn);
  e->child = std::move(args);
  e->type = Type::iota();
  return e;
}

ExprRef Expr::app(ExprRef fn, ExprRef arg) {
  auto e = node(Kind::App);
  if (fn->type && fn->type->isArrow()) e->type = fn->type->result();
  e->child = {std::move(fn), std::move(arg)};
  return e;
}

ExprRef Expr::lambda(std::string var, TypeRef varType, ExprRef body) {
  auto e = node(Kind::Lambda);
  e->name = std::move(var);
  e->type = body->type ? Type::arrow(varType, body->type) : nullptr;
  e->binderType = std::move(varType);
  e->child = {std::move(body)};
  return e;
}

ExprRef Expr::conj(ExprRef l, ExprRef r) {
  auto e = node(Kind::And);
  e->type = l->type;
  e->child = {std::move(l), std::move(r)};
  return e;
}

ExprRef Expr::disj(ExprRef l, ExprRef r) {
  auto e = node(Kind::Or);
  e->type = l->type;
  e->child = {std::move(l), std::move(r)};
  return e;
}

ExprRef Expr::negation(ExprRef e0) {
  auto e = node(Kind::Not);
  e->type = Type::o();
  e->child = {std::move(e0)};
  return e;
}

ExprRef Expr::eq(ExprRef l, ExprRef r) {
  auto e = node(Kind::Eq);
  e->type = Type::o();
  e->child = {std::move(l), std::move(r)};
  return e;
}

ExprRef Expr::exists(std::string var, TypeRef varType, ExprRef body) {
  auto e = node(Kind::Exists);
  e->name = std::move(var);
  e->type = Type::o();
  e->binderType = std::move(varType);
  e->child = {std::move(body)};
  return e;
}

bool exprEquals(const ExprRef& a, const ExprRef& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->name != b->name) return false;
  if ((a->binderType == nullptr) != (b->binderType == nullptr)) return false;
  if (a->binderType && !typeEquals(a->binderType, b->binderType)) return false;
  if (a->child.size() != b->child.size()) return false;
  for (size_t i = 0; i < a->child.size(); ++i)
    if (!exprEquals(a->child[i], b->child[i])) return false;
  return true;
}

}  // namespace extensia
