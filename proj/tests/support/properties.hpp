#pragma once

// Seeded-fault property checks over random programs. Shared by the gtest
// suite and the acceptance runner.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "random_program.hpp"

namespace plofc::testing {

struct PropertyCounts {
  std::size_t checked = 0;
  std::size_t failed = 0;
};

struct PropertyReport {
  std::size_t cases = 0;           // seeded faults that changed the output
  std::size_t masked = 0;          // seeded faults with no visible effect
  std::size_t od_equals_delta = 0; // cases where property (d) applies
  std::size_t discarded = 0;       // overflow or path-changing perturbations
  std::size_t sliced = 0;          // programs where slicing removed a block

  PropertyCounts slice_sound;      // (a)
  PropertyCounts path_equals_trace;// (b)
  PropertyCounts survives;         // (c)
  PropertyCounts repair_found;     // (d)
  PropertyCounts budget;           // (e)
  PropertyCounts repairs_verified;
  PropertyCounts fixpoint;         // masked faults: empty plofc and repairs

  std::vector<std::string> failures;  // first few, for diagnostics

  bool all_passed() const;
};

/// Runs until `wanted` output-changing faults have been diagnosed.
PropertyReport run_property_suite(std::uint64_t seed, std::size_t wanted,
                                  const GeneratorLimits& limits = {});

}  // namespace plofc::testing
