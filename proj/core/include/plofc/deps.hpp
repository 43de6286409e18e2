#pragma once

// Operator-tagged dependencies between variables and (uniquified) constants.

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "plofc/blocks.hpp"
#include "plofc/lang.hpp"

namespace plofc {

enum class ConstantContext { Expression, Condition };

struct ConstantEntry {
  std::string id;
  std::int64_t value = 0;
  int line = 0;
  ConstantContext context = ConstantContext::Expression;

  friend bool operator==(const ConstantEntry&, const ConstantEntry&) = default;
};

struct ConstantTable {
  std::vector<ConstantEntry> entries;  // in order of textual occurrence

  const ConstantEntry* find(std::string_view id) const;
  bool empty() const { return entries.empty(); }
  std::size_t size() const { return entries.size(); }
};

struct UniquifiedProgram {
  Program program;
  ConstantTable table;
};

/// Replaces every integer literal with a fresh named constant c1, c2, ...
/// (one per occurrence, skipping names the program already uses).
UniquifiedProgram uniquify_constants(const Program& program);

/// Same, but only literals on the given lines are named; the rest stay
/// literal so the program as a whole remains executable.
UniquifiedProgram uniquify_constants(const Program& program, std::span<const int> lines);

/// Turns named constants back into literals using the table's values.
Program inline_constants(const Program& program, const ConstantTable& table);

/// Rebinds one named constant.
Program with_constant(const Program& program, std::string_view id, std::int64_t value);

enum class DepOp { Assign, Add, Sub, Mul, Lt, Gt, Le, Ge, Eq, Ne };

std::string_view symbol(DepOp op);
bool is_relational(DepOp op);

enum class SourceKind { Variable, Constant };

enum class Exclusion { None, SelfAssignment, ControlOperator };

std::string_view describe(Exclusion reason);

struct Dependency {
  std::string target;
  std::string source;  // variable name, constant id, or literal text
  SourceKind source_kind = SourceKind::Variable;
  DepOp op = DepOp::Assign;
  int line = 0;
  bool control = false;
  Exclusion exclusion = Exclusion::None;

  bool excluded() const { return exclusion != Exclusion::None; }

  friend bool operator==(const Dependency&, const Dependency&) = default;
};

/// Dependencies of every executed assignment on the path.
///
/// The first leaf of the right-hand side is tagged `=`, every later leaf
/// with the operator that combines it. Operands of each enclosing condition
/// yield control dependencies tagged with the comparison.
std::vector<Dependency> extract_line_deps(const Program& program, std::span<const int> path_lines);
std::vector<Dependency> extract_line_deps(const Program& program, const ExecutionPath& path);

struct DepPair {
  std::optional<DepOp> op;  // empty when operators are erased
  std::string target;
  std::string source;
  SourceKind source_kind = SourceKind::Variable;
  std::vector<int> lines;  // ascending lines the pair arises on

  /// "(+,(z1,c1))" or "(z1,c1)"
  std::string to_string() const;

  friend bool operator==(const DepPair&, const DepPair&) = default;
};

/// Deduplicated pairs in canonical order: (first line, target, source, op).
struct DepSet {
  std::vector<DepPair> pairs;

  std::size_t size() const { return pairs.size(); }
  bool empty() const { return pairs.empty(); }
  bool contains(std::optional<DepOp> op, std::string_view target, std::string_view source) const;
  /// "{ (x1,a), (y1,b) }"
  std::string to_string() const;

  void canonicalize();

  friend bool operator==(const DepSet&, const DepSet&) = default;
};

struct ComposeOptions {
  bool include_constants = true;
  bool apply_exclusions = true;
  bool keep_operators = true;
};

/// Deduplicating union of per-line dependencies. Control dependencies never
/// enter a composed set.
DepSet compose_deps(std::span<const Dependency> deps, const ComposeOptions& options = {});

/// Def/use facts for every statement line.
std::vector<LineDefUse> line_def_use(const Program& program);

}  // namespace plofc
