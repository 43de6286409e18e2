#include <algorithm>
#include <map>
#include <set>

#include "plofc/blocks.hpp"
#include "plofc/error.hpp"

namespace plofc {
namespace {

constexpr std::string_view kNot = "\xC2\xAC";  // ¬

class Partitioner {
 public:
  std::vector<Block> blocks;

  void top_level(const std::vector<Statement>& body) {
    std::vector<int> run;
    for (const auto& s : body) {
      if (s.is_assign()) {
        run.push_back(s.line);
        continue;
      }
      flush(run);
      branch(s);
    }
    flush(run);
  }

 private:
  void flush(std::vector<int>& run) {
    if (run.empty()) return;
    Block block;
    block.id = block_label(next_++);
    block.lines = std::move(run);
    blocks.push_back(std::move(block));
    run.clear();
  }

  static std::vector<int> arm_lines(int condition, const std::vector<Statement>& arm) {
    std::vector<int> lines{condition};
    for (const auto& s : arm)
      if (s.is_assign()) lines.push_back(s.line);
    std::sort(lines.begin(), lines.end());
    return lines;
  }

  void branch(const Statement& s) {
    const auto& node = s.if_then_else();
    const std::string label = block_label(next_++);

    Block then_block;
    then_block.id = label;
    then_block.kind = BlockKind::BranchThen;
    then_block.lines = arm_lines(s.line, node.then_branch);
    then_block.paired_with = negated(label);
    then_block.condition_line = s.line;

    Block else_block;
    else_block.id = negated(label);
    else_block.kind = BlockKind::BranchElse;
    else_block.lines = arm_lines(s.line, node.else_branch);
    else_block.paired_with = label;
    else_block.condition_line = s.line;

    blocks.push_back(std::move(then_block));
    blocks.push_back(std::move(else_block));

    for (const auto& inner : node.then_branch)
      if (inner.is_if()) branch(inner);
    for (const auto& inner : node.else_branch)
      if (inner.is_if()) branch(inner);
  }

  std::size_t next_ = 0;
};

std::string join_and(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += " \xE2\x88\xA7 ";  // ∧
    out += p;
  }
  return out;
}

// Groups consecutive then/else blocks into clauses.
template <typename Fn>
void for_each_clause(std::span<const Block> blocks, Fn&& fn) {
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (blocks[i].kind == BlockKind::BranchThen && i + 1 < blocks.size() &&
        blocks[i + 1].kind == BlockKind::BranchElse) {
      fn(&blocks[i], &blocks[i + 1]);
      ++i;
    } else {
      fn(&blocks[i], nullptr);
    }
  }
}

std::vector<int> union_lines(const std::vector<const Block*>& chosen) {
  std::set<int> lines;
  for (const Block* b : chosen) lines.insert(b->lines.begin(), b->lines.end());
  return {lines.begin(), lines.end()};
}

}  // namespace

bool Block::contains(int line) const {
  return std::binary_search(lines.begin(), lines.end(), line);
}

std::string block_label(std::size_t index) {
  std::string label(1, static_cast<char>('A' + index % 26));
  if (index >= 26) label += std::to_string(index / 26);
  return label;
}

std::string negated(const std::string& label) { return std::string(kNot) + label; }

std::vector<Block> build_blocks(const Program& program) {
  Partitioner partitioner;
  partitioner.top_level(program.statements);
  return std::move(partitioner.blocks);
}

const Block* find_block(std::span<const Block> blocks, std::string_view id) {
  auto it = std::find_if(blocks.begin(), blocks.end(),
                         [&](const Block& b) { return b.id == id; });
  return it == blocks.end() ? nullptr : &*it;
}

std::size_t PathFormula::branch_count() const {
  return static_cast<std::size_t>(
      std::count_if(clauses.begin(), clauses.end(), [](const Clause& c) { return c.is_branch(); }));
}

std::string PathFormula::to_string() const {
  std::vector<std::string> parts;
  for (const auto& c : clauses) {
    if (c.is_branch())
      parts.push_back("(" + c.literals[0].id + " \xE2\x88\xA8 " + c.literals[1].id + ")");  // ∨
    else
      parts.push_back(c.literals[0].id);
  }
  return join_and(parts);
}

PathFormula all_path_formula(std::span<const Block> blocks) {
  PathFormula formula;
  for_each_clause(blocks, [&](const Block* first, const Block* second) {
    Clause clause;
    clause.literals.push_back(*first);
    if (second) clause.literals.push_back(*second);
    formula.clauses.push_back(std::move(clause));
  });
  return formula;
}

std::string ExecutionPath::to_string() const { return join_and(chosen); }

std::vector<ExecutionPath> enumerate_paths(const PathFormula& formula, std::size_t cap) {
  const std::size_t branches = formula.branch_count();
  if (branches > cap || branches >= 63) throw PathExplosion(branches, cap);
  const std::uint64_t total = std::uint64_t{1} << branches;
  std::vector<ExecutionPath> paths;
  paths.reserve(total);
  for (std::uint64_t index = 0; index < total; ++index) {
    std::vector<const Block*> chosen;
    std::size_t k = 0;
    for (const auto& clause : formula.clauses) {
      if (!clause.is_branch()) {
        chosen.push_back(&clause.literals[0]);
        continue;
      }
      const bool take_else = (index >> (branches - 1 - k)) & 1U;
      chosen.push_back(&clause.literals[take_else ? 1 : 0]);
      ++k;
    }
    ExecutionPath path;
    for (const Block* b : chosen) path.chosen.push_back(b->id);
    path.lines = union_lines(chosen);
    paths.push_back(std::move(path));
  }
  return paths;
}

BranchPlan branch_plan(const ExecutionPath& path, std::span<const Block> blocks) {
  BranchPlan plan;
  for (const auto& id : path.chosen) {
    const Block* b = find_block(blocks, id);
    if (b == nullptr) throw Error("path names unknown block '" + id + "'");
    if (b->kind != BlockKind::Linear) plan[b->condition_line] = b->kind == BlockKind::BranchThen;
  }
  return plan;
}

RuntimePath runtime_path(const Trace& trace, std::span<const Block> blocks) {
  const std::set<int> executed(trace.executed_lines.begin(), trace.executed_lines.end());
  std::map<int, bool> decisions;
  for (const auto& d : trace.branches) decisions[d.line] = d.took_then;

  auto all_executed = [&](const Block& b) {
    return std::all_of(b.lines.begin(), b.lines.end(), [&](int l) { return executed.count(l) > 0; });
  };
  auto body_untouched = [&](const Block& b) {
    return std::none_of(b.lines.begin(), b.lines.end(), [&](int l) {
      return l != b.condition_line && executed.count(l) > 0;
    });
  };

  RuntimePath result;
  std::vector<const Block*> chosen;
  for_each_clause(blocks, [&](const Block* first, const Block* second) {
    if (second == nullptr) {
      if (!all_executed(*first))
        throw InconsistentTrace("linear block " + first->id + " only partially executed");
      chosen.push_back(first);
      return;
    }
    const int condition = first->condition_line;
    if (!executed.count(condition)) {
      if (!body_untouched(*first) || !body_untouched(*second))
        throw InconsistentTrace("lines under unreached condition " + std::to_string(condition) +
                                " were executed");
      result.removed.push_back({first->id, "not reached"});
      result.removed.push_back({second->id, "not reached"});
      return;
    }
    auto decision = decisions.find(condition);
    if (decision == decisions.end())
      throw InconsistentTrace("no branch decision recorded for line " + std::to_string(condition));
    const Block* taken = decision->second ? first : second;
    const Block* skipped = decision->second ? second : first;
    if (!all_executed(*taken) || !body_untouched(*skipped))
      throw InconsistentTrace("blocks " + first->id + "/" + second->id +
                              " disagree with the executed lines");
    chosen.push_back(taken);
    result.removed.push_back({skipped->id, "not executed"});
  });
  for (const Block* b : chosen) result.path.chosen.push_back(b->id);
  result.path.lines = union_lines(chosen);
  return result;
}

SliceResult slice_blocks(std::span<const Block> blocks, const std::string& target,
                         std::span<const LineDefUse> line_deps) {
  if (std::none_of(line_deps.begin(), line_deps.end(),
                   [&](const LineDefUse& d) { return d.defines == target; }))
    throw UnknownTarget(target);

  std::set<std::string> relevant_vars{target};
  std::set<int> relevant_lines;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& d : line_deps) {
      if (relevant_lines.count(d.line)) continue;
      const bool relevant = d.is_condition ? false
                                           : d.defines && relevant_vars.count(*d.defines) > 0;
      if (!relevant) continue;
      relevant_lines.insert(d.line);
      relevant_vars.insert(d.uses.begin(), d.uses.end());
      changed = true;
    }
    // Conditions governing a relevant line are relevant too, along with
    // everything they read.
    for (const auto& d : line_deps) {
      if (d.is_condition || !relevant_lines.count(d.line)) continue;
      for (int g : d.governing) {
        if (relevant_lines.insert(g).second) changed = true;
      }
    }
    for (const auto& d : line_deps) {
      if (!d.is_condition || !relevant_lines.count(d.line)) continue;
      for (const auto& v : d.uses)
        if (relevant_vars.insert(v).second) changed = true;
      for (int g : d.governing)
        if (relevant_lines.insert(g).second) changed = true;
    }
  }

  SliceResult result;
  for (const auto& b : blocks) {
    const bool keep = std::any_of(b.lines.begin(), b.lines.end(),
                                  [&](int l) { return relevant_lines.count(l) > 0; });
    (keep ? result.kept : result.removed).push_back(b);
  }
  return result;
}

}  // namespace plofc
