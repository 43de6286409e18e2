#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "plofc/lang.hpp"

namespace plofc {

using Env = std::map<std::string, std::int64_t, std::less<>>;

struct BranchDecision {
  int line = 0;
  bool took_then = false;
  // Truth value of the condition in the state reaching it. Differs from
  // took_then only under a forced branch plan.
  bool condition_held = false;

  friend bool operator==(const BranchDecision&, const BranchDecision&) = default;
};

struct Trace {
  std::vector<int> executed_lines;
  std::vector<BranchDecision> branches;
  Env final_env;
};

/// Condition line -> branch to take. Lines absent from the plan are decided
/// by evaluating their condition.
using BranchPlan = std::map<int, bool>;

/// Big-step execution with checked 64-bit arithmetic.
///
/// With a non-empty plan the listed conditions are still evaluated and
/// recorded, but control follows the plan. This is how a designated path is
/// traced irrespective of whether the inputs satisfy its path condition.
Trace execute(const Program& program, const Env& inputs, const BranchPlan& plan = {});

std::int64_t eval_expr(const Expr& expr, const Env& env);
bool eval_condition(const Condition& condition, const Env& env);

/// Parses `a=3,b=4` style bindings.
Env parse_bindings(std::string_view text);

std::string to_string(const Env& env);

}  // namespace plofc
