#pragma once

#include <string_view>

#include "plofc/blocks.hpp"
#include "plofc/lang.hpp"

namespace plofc::testing {

// The running example: two inputs, two if-then-else statements.
inline constexpr std::string_view kExample1 = R"(x1 = a;
y1 = b;
if (x1 < y1)
    then z1 = x1 + 2
    else z1 = y1 + 2
z1 = z1 + y1;
if (y1 > 5)
    then z1 = z1 + 5
    else z1 = z1 - 2
z1 = z1 + 3;
)";

// Line 4 adds 4 instead of 2.
inline constexpr std::string_view kExample1Buggy = R"(x1 = a;
y1 = b;
if (x1 < y1)
    then z1 = x1 + 4
    else z1 = y1 + 2
z1 = z1 + y1;
if (y1 > 5)
    then z1 = z1 + 5
    else z1 = z1 - 2
z1 = z1 + 3;
)";

// Lines 5 and 9 removed; remaining lines keep their numbers.
inline constexpr std::string_view kExample1Reduced = R"(1   x1 = a;
2   y1 = b;
3   if (x1 < y1)
4       then z1 = x1 + 2
6   z1 = z1 + y1;
7   if (y1 > 5)
8       then z1 = z1 + 5
10  z1 = z1 + 3;
)";

/// The first enumerated path: then-branches everywhere.
inline ExecutionPath first_path(const Program& program) {
  const auto blocks = build_blocks(program);
  return enumerate_paths(all_path_formula(blocks)).front();
}

inline BranchPlan first_path_plan(const Program& program) {
  const auto blocks = build_blocks(program);
  return branch_plan(first_path(program), blocks);
}

}  // namespace plofc::testing
