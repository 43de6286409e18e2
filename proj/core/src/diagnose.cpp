#include <algorithm>
#include <future>
#include <map>
#include <optional>
#include <set>

#include "plofc/diagnose.hpp"
#include "plofc/error.hpp"

namespace plofc {
namespace {

// Pre-order walk over the statements executed on the path.
template <typename Fn>
void for_each_executed(const std::vector<Statement>& body, const std::set<int>& lines, Fn&& fn) {
  for (const auto& s : body) {
    if (!lines.count(s.line)) continue;
    fn(s);
    if (s.is_if()) {
      for_each_executed(s.if_then_else().then_branch, lines, fn);
      for_each_executed(s.if_then_else().else_branch, lines, fn);
    }
  }
}

bool is_pure_expr(const Expr& e, const std::set<std::string>& pure) {
  if (e.kind == Expr::Kind::Var) return pure.count(e.name) > 0;
  if (e.kind != Expr::Kind::Binary || e.op != ArithOp::Add) return false;
  return is_pure_expr(e.lhs(), pure) && is_pure_expr(e.rhs(), pure);
}

struct ConstantSite {
  std::int64_t value = 0;
  int line = 0;
};

std::optional<ConstantSite> find_constant(const Program& program, std::string_view id) {
  std::optional<ConstantSite> site;
  for_each_statement(program, [&](const Statement& s) {
    auto scan = [&](const Expr& e) {
      for (const Expr* leaf : leaves(e))
        if (leaf->kind == Expr::Kind::ConstRef && leaf->name == id && !site)
          site = ConstantSite{leaf->value, s.line};
    };
    if (s.is_assign()) {
      scan(s.assign().value);
    } else {
      scan(s.if_then_else().condition.lhs);
      scan(s.if_then_else().condition.rhs);
    }
  });
  return site;
}

std::optional<std::int64_t> output_of(const Program& program, const Env& inputs,
                                      const std::string& target, const BranchPlan& plan) {
  try {
    const Trace trace = execute(program, inputs, plan);
    auto it = trace.final_env.find(target);
    if (it == trace.final_env.end()) return std::nullopt;
    return it->second;
  } catch (const Error&) {
    return std::nullopt;
  }
}

std::int64_t absolute_difference(std::int64_t a, std::int64_t b) {
  std::int64_t diff = 0;
  if (__builtin_sub_overflow(a, b, &diff) || diff == INT64_MIN) throw ArithmeticOverflow(0);
  return diff < 0 ? -diff : diff;
}

bool assigns_on_path(const Program& program, const std::set<int>& lines,
                     const std::string& target) {
  bool found = false;
  for_each_executed(program.statements, lines, [&](const Statement& s) {
    if (s.is_assign() && s.assign().target == target) found = true;
  });
  return found;
}

}  // namespace

Reduction reduce_input_pure(const DepSet& set, const Program& program, const Env& inputs,
                            std::span<const int> path_lines) {
  std::set<std::string> pure(program.inputs.begin(), program.inputs.end());
  for (const auto& [name, value] : inputs) pure.insert(name);

  // Purity snapshot taken before each executed line.
  std::map<int, std::set<std::string>> before;
  const std::set<int> lines(path_lines.begin(), path_lines.end());
  for_each_executed(program.statements, lines, [&](const Statement& s) {
    before[s.line] = pure;
    if (!s.is_assign()) return;
    if (is_pure_expr(s.assign().value, pure))
      pure.insert(s.assign().target);
    else
      pure.erase(s.assign().target);
  });

  Reduction result;
  for (const auto& pair : set.pairs) {
    bool input_pure = pair.source_kind == SourceKind::Variable && !pair.lines.empty();
    for (int line : pair.lines) {
      if (!input_pure) break;
      auto it = before.find(line);
      const auto& snapshot = it == before.end() ? pure : it->second;
      input_pure = snapshot.count(pair.source) > 0;
    }
    if (input_pure)
      result.removed.push_back({pair, std::string(kInputPureReason)});
    else
      result.reduced.pairs.push_back(pair);
  }
  return result;
}

RepairSearch suggest_constant_repairs(const Program& uniquified, const DepSet& reduced,
                                      const Env& inputs, const std::string& target,
                                      std::int64_t desired, const RepairOptions& options) {
  struct Candidate {
    std::string id;
    ConstantSite site;
    std::int64_t delta = 0;
  };

  RepairSearch search;
  const auto observed = output_of(uniquified, inputs, target, options.branch_plan);
  if (!observed) throw TargetNotAssigned(target);
  search.output_difference = absolute_difference(*observed, desired);

  std::vector<std::pair<std::string, ConstantSite>> eligible;
  for (const auto& pair : reduced.pairs) {
    if (pair.source_kind != SourceKind::Constant || !pair.op) continue;
    if (*pair.op != DepOp::Add && *pair.op != DepOp::Sub) continue;
    if (auto site = find_constant(uniquified, pair.source)) eligible.emplace_back(pair.source, *site);
  }
  if (eligible.empty()) throw NoConstantsToMutate();
  search.eligible = eligible.size();
  if (search.output_difference == 0) return search;

  std::vector<Candidate> candidates;
  for (const auto& [id, site] : eligible) {
    candidates.push_back({id, site, search.output_difference});
    candidates.push_back({id, site, -search.output_difference});
  }

  auto evaluate = [&](const Candidate& c) -> std::optional<Repair> {
    std::int64_t replacement = 0;
    if (__builtin_add_overflow(c.site.value, c.delta, &replacement)) return std::nullopt;
    const auto output =
        output_of(with_constant(uniquified, c.id, replacement), inputs, target, options.branch_plan);
    if (!output || *output != desired) return std::nullopt;
    return Repair{c.id, c.site.line, c.site.value, replacement, c.delta, true};
  };

  std::vector<std::optional<Repair>> outcomes(candidates.size());
  if (options.parallel) {
    std::vector<std::future<std::optional<Repair>>> pending;
    pending.reserve(candidates.size());
    for (const auto& c : candidates)
      pending.push_back(std::async(std::launch::async, evaluate, std::cref(c)));
    for (std::size_t i = 0; i < pending.size(); ++i) outcomes[i] = pending[i].get();
  } else {
    for (std::size_t i = 0; i < candidates.size(); ++i) outcomes[i] = evaluate(candidates[i]);
  }
  search.executions = candidates.size();

  for (auto& outcome : outcomes)
    if (outcome) search.repairs.push_back(std::move(*outcome));
  std::stable_sort(search.repairs.begin(), search.repairs.end(),
                   [](const Repair& a, const Repair& b) {
                     return std::tie(a.line, a.constant, a.delta) <
                            std::tie(b.line, b.constant, b.delta);
                   });
  return search;
}

DiagnosisReport predict_faulty_lines(const FaultQuery& query,
                                     std::span<const TestCase> extra_cases) {
  DiagnosisReport report;
  report.target = query.target;
  report.desired = query.desired;

  report.trace = execute(query.program, query.inputs, query.branch_plan);
  const std::set<int> executed(report.trace.executed_lines.begin(),
                               report.trace.executed_lines.end());
  if (!assigns_on_path(query.program, executed, query.target))
    throw TargetNotAssigned(query.target);
  report.observed = report.trace.final_env.at(query.target);
  report.output_difference = absolute_difference(report.observed, report.desired);

  report.blocks = build_blocks(query.program);
  report.runtime = runtime_path(report.trace, report.blocks);
  report.slice = slice_blocks(report.blocks, query.target, line_def_use(query.program));

  std::set<int> kept_lines;
  for (const auto& b : report.slice.kept) kept_lines.insert(b.lines.begin(), b.lines.end());
  for (int line : report.runtime.path.lines)
    if (kept_lines.count(line)) report.analysed_lines.push_back(line);

  report.uniquified = uniquify_constants(query.program, report.analysed_lines);
  const auto deps = extract_line_deps(report.uniquified.program, report.analysed_lines);
  report.final_set = compose_deps(deps);

  if (!report.fault_found()) return report;

  Reduction reduction = reduce_input_pure(report.final_set, report.uniquified.program,
                                          query.inputs, report.runtime.path.lines);
  report.surviving = std::move(reduction.reduced);
  report.removed = std::move(reduction.removed);

  try {
    RepairSearch search = suggest_constant_repairs(
        report.uniquified.program, report.surviving, query.inputs, query.target, query.desired,
        RepairOptions{query.branch_plan, query.parallel});
    report.executions = search.executions;
    report.repairs = std::move(search.repairs);
  } catch (const NoConstantsToMutate&) {
  }

  if (!extra_cases.empty()) {
    std::erase_if(report.repairs, [&](const Repair& r) {
      const Program mutated = with_constant(report.uniquified.program, r.constant, r.replacement);
      return std::any_of(extra_cases.begin(), extra_cases.end(), [&](const TestCase& c) {
        return output_of(mutated, c.inputs, query.target, query.branch_plan) != c.desired;
      });
    });
  }

  // Surviving pairs name their own lines; variable sources add the line
  // that last defined them before the use.
  std::set<int> plofc;
  std::map<std::string, std::vector<int>> definitions;
  for_each_executed(query.program.statements, executed, [&](const Statement& s) {
    if (s.is_assign()) definitions[s.assign().target].push_back(s.line);
  });
  for (const auto& pair : report.surviving.pairs) {
    plofc.insert(pair.lines.begin(), pair.lines.end());
    if (pair.source_kind != SourceKind::Variable) continue;
    auto it = definitions.find(pair.source);
    if (it == definitions.end()) continue;
    for (int use : pair.lines) {
      auto def = std::lower_bound(it->second.begin(), it->second.end(), use);
      if (def != it->second.begin()) plofc.insert(*std::prev(def));
    }
  }
  report.plofc.assign(plofc.begin(), plofc.end());
  return report;
}

}  // namespace plofc
