#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>

namespace spacebound {

using Env = std::map<std::string, std::int64_t, std::less<>>;

/// Symbolic integer expression used for box coordinates that are only known
/// once an environment (for example event timing) is supplied.
class SymInt {
 public:
  enum class Kind : std::uint8_t { Const, Var, Add, Sub, Mul };

  SymInt() : SymInt(constant(0)) {}

  static SymInt constant(std::int64_t value);
  static SymInt var(std::string name);
  static SymInt add(SymInt lhs, SymInt rhs);
  static SymInt sub(SymInt lhs, SymInt rhs);
  static SymInt mul(SymInt lhs, SymInt rhs);

  Kind kind() const { return node_->kind; }
  std::int64_t value() const { return node_->value; }
  const std::string& name() const { return node_->name; }
  const SymInt& lhs() const { return *node_->lhs; }
  const SymInt& rhs() const { return *node_->rhs; }

  bool is_binary() const { return kind() == Kind::Add || kind() == Kind::Sub || kind() == Kind::Mul; }

  friend bool operator==(const SymInt& a, const SymInt& b);

 private:
  struct Node {
    Kind kind = Kind::Const;
    std::int64_t value = 0;
    std::string name;
    std::shared_ptr<const SymInt> lhs;
    std::shared_ptr<const SymInt> rhs;
  };
  explicit SymInt(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  std::shared_ptr<const Node> node_;
};

/// Throws Error(UnboundVariable) when a variable has no binding.
std::int64_t eval_symint(const SymInt& s, const Env& env);

void collect_variables(const SymInt& s, std::set<std::string>& out);

}  // namespace spacebound
