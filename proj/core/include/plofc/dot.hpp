#pragma once

// Graphviz renderings of the block flow graph. Nodes are blocks labelled
// with their lines; edges are control-flow successors.

#include <span>
#include <string>

#include "plofc/blocks.hpp"
#include "plofc/deps.hpp"
#include "plofc/lang.hpp"

namespace plofc {

/// Every block and every path.
std::string dot_all_paths(const Program& program, std::span<const Block> blocks);

/// Blocks on the runtime path that survive slicing are green, the rest red.
std::string dot_runtime_path(const Program& program, std::span<const Block> blocks,
                             const RuntimePath& runtime, const SliceResult& slice);

/// The runtime path alone, each block annotated with its dependencies.
std::string dot_dependences(std::span<const Block> blocks, const ExecutionPath& path,
                            const DepSet& deps);

}  // namespace plofc
