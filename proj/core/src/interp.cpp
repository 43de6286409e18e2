#include <cctype>
#include <charconv>

#include "plofc/error.hpp"
#include "plofc/interp.hpp"

namespace plofc {
namespace {

std::int64_t eval(const Expr& e, const Env& env, int line) {
  switch (e.kind) {
    case Expr::Kind::Const:
    case Expr::Kind::ConstRef:
      return e.value;
    case Expr::Kind::Var: {
      auto it = env.find(e.name);
      if (it == env.end()) throw UnboundVariable(e.name, line);
      return it->second;
    }
    case Expr::Kind::Binary:
      break;
  }
  const std::int64_t lhs = eval(e.lhs(), env, line);
  const std::int64_t rhs = eval(e.rhs(), env, line);
  std::int64_t result = 0;
  bool overflow = false;
  switch (e.op) {
    case ArithOp::Add: overflow = __builtin_add_overflow(lhs, rhs, &result); break;
    case ArithOp::Sub: overflow = __builtin_sub_overflow(lhs, rhs, &result); break;
    case ArithOp::Mul: overflow = __builtin_mul_overflow(lhs, rhs, &result); break;
  }
  if (overflow) throw ArithmeticOverflow(line);
  return result;
}

bool test(const Condition& c, const Env& env, int line) {
  const std::int64_t lhs = eval(c.lhs, env, line);
  const std::int64_t rhs = eval(c.rhs, env, line);
  switch (c.op) {
    case RelOp::Lt: return lhs < rhs;
    case RelOp::Gt: return lhs > rhs;
    case RelOp::Le: return lhs <= rhs;
    case RelOp::Ge: return lhs >= rhs;
    case RelOp::Eq: return lhs == rhs;
    case RelOp::Ne: return lhs != rhs;
  }
  return false;
}

class Machine {
 public:
  Machine(const Env& inputs, const BranchPlan& plan) : plan_(plan) {
    trace_.final_env = inputs;
  }

  void run(const std::vector<Statement>& body) {
    for (const auto& s : body) step(s);
  }

  Trace finish() && { return std::move(trace_); }

 private:
  void step(const Statement& s) {
    trace_.executed_lines.push_back(s.line);
    Env& env = trace_.final_env;
    if (s.is_assign()) {
      env.insert_or_assign(s.assign().target, eval(s.assign().value, env, s.line));
      return;
    }
    const auto& node = s.if_then_else();
    const bool held = test(node.condition, env, s.line);
    auto forced = plan_.find(s.line);
    const bool take_then = forced == plan_.end() ? held : forced->second;
    trace_.branches.push_back({s.line, take_then, held});
    run(take_then ? node.then_branch : node.else_branch);
  }

  const BranchPlan& plan_;
  Trace trace_;
};

}  // namespace

Trace execute(const Program& program, const Env& inputs, const BranchPlan& plan) {
  Machine machine(inputs, plan);
  machine.run(program.statements);
  return std::move(machine).finish();
}

std::int64_t eval_expr(const Expr& expr, const Env& env) { return eval(expr, env, 0); }

bool eval_condition(const Condition& condition, const Env& env) {
  return test(condition, env, 0);
}

Env parse_bindings(std::string_view text) {
  Env env;
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  while (!text.empty()) {
    const std::size_t comma = text.find(',');
    const std::string_view item = trim(text.substr(0, comma));
    text = comma == std::string_view::npos ? std::string_view() : text.substr(comma + 1);
    if (item.empty()) continue;
    const std::size_t eq = item.find('=');
    if (eq == std::string_view::npos)
      throw Error("binding '" + std::string(item) + "' is not of the form name=value");
    const std::string_view name = trim(item.substr(0, eq));
    const std::string_view digits = trim(item.substr(eq + 1));
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (name.empty() || ec != std::errc() || ptr != digits.data() + digits.size())
      throw Error("binding '" + std::string(item) + "' is not of the form name=value");
    env.insert_or_assign(std::string(name), value);
  }
  return env;
}

std::string to_string(const Env& env) {
  std::string out;
  for (const auto& [name, value] : env) {
    if (!out.empty()) out += ", ";
    out += name + "=" + std::to_string(value);
  }
  return out;
}

}  // namespace plofc
