#pragma once

// Fault diagnosis: reduce the operator-associated dependence set under the
// assumption that inputs are correct, map what survives to possible faulty
// lines (PLOFC), and search single-constant repairs of size ±OD.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "plofc/blocks.hpp"
#include "plofc/deps.hpp"
#include "plofc/interp.hpp"
#include "plofc/lang.hpp"

namespace plofc {

struct RemovedDep {
  DepPair dep;
  std::string reason;
};

struct Reduction {
  DepSet reduced;
  std::vector<RemovedDep> removed;
};

inline constexpr std::string_view kInputPureReason =
    "error here would implicate the input, assumed correct";

/// Removes every pair whose source is an input, or a variable that at the
/// pair's point of use holds a pure copy/sum of inputs with no constant
/// involved.
Reduction reduce_input_pure(const DepSet& set, const Program& program, const Env& inputs,
                            std::span<const int> path_lines);

struct Repair {
  std::string constant;
  int line = 0;
  std::int64_t original = 0;
  std::int64_t replacement = 0;
  std::int64_t delta = 0;
  bool verified = false;

  friend bool operator==(const Repair&, const Repair&) = default;
};

struct RepairOptions {
  BranchPlan branch_plan;
  bool parallel = false;
};

struct RepairSearch {
  std::vector<Repair> repairs;      // verified only, ordered by line
  std::size_t eligible = 0;         // d: constant pairs tagged + or -
  std::size_t executions = 0;       // candidate runs, always 2d
  std::int64_t output_difference = 0;
};

/// Mutates each eligible constant by +OD and -OD and keeps the mutations
/// whose re-execution yields the desired output.
///
/// Throws NoConstantsToMutate when the set holds no constant under + or -.
RepairSearch suggest_constant_repairs(const Program& uniquified, const DepSet& reduced,
                                      const Env& inputs, const std::string& target,
                                      std::int64_t desired, const RepairOptions& options = {});

struct FaultQuery {
  Program program;
  Env inputs;
  std::string target;
  std::int64_t desired = 0;
  // Empty: branches follow the program. Otherwise the diagnosed path.
  BranchPlan branch_plan;
  bool parallel = false;
};

/// Additional (inputs, desired output) pair a repair must also satisfy.
struct TestCase {
  Env inputs;
  std::int64_t desired = 0;
};

struct DiagnosisReport {
  std::string target;
  std::int64_t observed = 0;
  std::int64_t desired = 0;
  std::int64_t output_difference = 0;
  std::vector<int> plofc;
  DepSet surviving;
  std::vector<RemovedDep> removed;
  std::vector<Repair> repairs;
  std::size_t executions = 0;

  // Intermediate results of the pipeline.
  Trace trace;
  std::vector<Block> blocks;
  RuntimePath runtime;
  SliceResult slice;
  std::vector<int> analysed_lines;  // runtime path lines inside kept blocks
  UniquifiedProgram uniquified;
  DepSet final_set;

  bool fault_found() const { return observed != desired; }
};

DiagnosisReport predict_faulty_lines(const FaultQuery& query,
                                     std::span<const TestCase> extra_cases = {});

}  // namespace plofc
