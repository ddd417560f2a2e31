#include "spacebound/symint.hpp"

#include "spacebound/error.hpp"

namespace spacebound {

SymInt SymInt::constant(std::int64_t value) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Const;
  n->value = value;
  return SymInt(std::move(n));
}

SymInt SymInt::var(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Var;
  n->name = std::move(name);
  return SymInt(std::move(n));
}

namespace {
std::shared_ptr<const SymInt> boxed(SymInt s) { return std::make_shared<const SymInt>(std::move(s)); }
}  // namespace

SymInt SymInt::add(SymInt lhs, SymInt rhs) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Add;
  n->lhs = boxed(std::move(lhs));
  n->rhs = boxed(std::move(rhs));
  return SymInt(std::move(n));
}

SymInt SymInt::sub(SymInt lhs, SymInt rhs) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Sub;
  n->lhs = boxed(std::move(lhs));
  n->rhs = boxed(std::move(rhs));
  return SymInt(std::move(n));
}

SymInt SymInt::mul(SymInt lhs, SymInt rhs) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Mul;
  n->lhs = boxed(std::move(lhs));
  n->rhs = boxed(std::move(rhs));
  return SymInt(std::move(n));
}

bool operator==(const SymInt& a, const SymInt& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case SymInt::Kind::Const: return a.value() == b.value();
    case SymInt::Kind::Var: return a.name() == b.name();
    default: return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
}

std::int64_t eval_symint(const SymInt& s, const Env& env) {
  switch (s.kind()) {
    case SymInt::Kind::Const:
      return s.value();
    case SymInt::Kind::Var: {
      auto it = env.find(s.name());
      if (it == env.end()) throw Error(ErrorCode::UnboundVariable, s.name());
      return it->second;
    }
    case SymInt::Kind::Add:
      return eval_symint(s.lhs(), env) + eval_symint(s.rhs(), env);
    case SymInt::Kind::Sub:
      return eval_symint(s.lhs(), env) - eval_symint(s.rhs(), env);
    case SymInt::Kind::Mul:
      return eval_symint(s.lhs(), env) * eval_symint(s.rhs(), env);
  }
  return 0;
}

void collect_variables(const SymInt& s, std::set<std::string>& out) {
  if (s.kind() == SymInt::Kind::Var) {
    out.insert(s.name());
  } else if (s.is_binary()) {
    collect_variables(s.lhs(), out);
    collect_variables(s.rhs(), out);
  }
}

}  // namespace spacebound
