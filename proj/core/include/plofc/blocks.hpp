#pragma once

// Block partition, all-path formula and path selection.
//
// Consecutive top-level assignments form a linear block. Every if statement
// yields a then-block and an else-block that both contain the condition line
// plus the non-if statements of their arm; nested ifs produce their own pair.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "plofc/interp.hpp"
#include "plofc/lang.hpp"

namespace plofc {

enum class BlockKind { Linear, BranchThen, BranchElse };

struct Block {
  std::string id;
  std::vector<int> lines;  // ascending
  BlockKind kind = BlockKind::Linear;
  std::optional<std::string> paired_with;
  int condition_line = 0;  // branch blocks only

  bool contains(int line) const;

  friend bool operator==(const Block&, const Block&) = default;
};

/// Label for the n-th block group: A..Z, then A1..Z1, A2...
std::string block_label(std::size_t index);
std::string negated(const std::string& label);

std::vector<Block> build_blocks(const Program& program);

const Block* find_block(std::span<const Block> blocks, std::string_view id);

struct Clause {
  std::vector<Block> literals;  // one (linear) or two (then, else)

  bool is_branch() const { return literals.size() == 2; }
};

struct PathFormula {
  std::vector<Clause> clauses;

  std::size_t branch_count() const;
  /// e.g. "A ∧ (B ∨ ¬B) ∧ C"
  std::string to_string() const;
};

PathFormula all_path_formula(std::span<const Block> blocks);

struct ExecutionPath {
  std::vector<std::string> chosen;
  std::vector<int> lines;  // union of the chosen blocks' lines, ascending

  /// e.g. "A ∧ B ∧ C ∧ ¬D ∧ E"
  std::string to_string() const;

  friend bool operator==(const ExecutionPath&, const ExecutionPath&) = default;
};

inline constexpr std::size_t kDefaultPathCap = 20;

/// Every satisfying assignment of the formula, then-before-else with the
/// first clause most significant.
std::vector<ExecutionPath> enumerate_paths(const PathFormula& formula,
                                           std::size_t cap = kDefaultPathCap);

/// Forces the branch choices of a path during execution.
BranchPlan branch_plan(const ExecutionPath& path, std::span<const Block> blocks);

struct RemovedBlock {
  std::string id;
  std::string reason;

  friend bool operator==(const RemovedBlock&, const RemovedBlock&) = default;
};

struct RuntimePath {
  ExecutionPath path;
  std::vector<RemovedBlock> removed;
};

/// Selects the executed block of every clause reached by the trace.
RuntimePath runtime_path(const Trace& trace, std::span<const Block> blocks);

/// Per-line def/use facts consumed by slicing.
struct LineDefUse {
  int line = 0;
  std::optional<std::string> defines;   // assignments only
  std::vector<std::string> uses;        // variables read on the line
  std::vector<int> governing;           // enclosing condition lines, outermost first
  bool is_condition = false;
};

struct SliceResult {
  std::vector<Block> kept;
  std::vector<Block> removed;
};

/// Drops blocks that neither define the target, nor define anything the
/// target depends on, nor hold a condition governing such a definition.
SliceResult slice_blocks(std::span<const Block> blocks, const std::string& target,
                         std::span<const LineDefUse> line_deps);

}  // namespace plofc
