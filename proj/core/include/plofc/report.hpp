#pragma once

// JSON and plain-text renderings. JSON objects use sorted keys and every
// collection is emitted in a fixed order, so output is reproducible.

#include <span>
#include <string>

#include <nlohmann/json.hpp>

#include "plofc/blocks.hpp"
#include "plofc/deps.hpp"
#include "plofc/diagnose.hpp"
#include "plofc/interp.hpp"

namespace plofc {

nlohmann::json to_json(const DepPair& pair);
nlohmann::json to_json(const DepSet& set);
nlohmann::json to_json(const Trace& trace);
nlohmann::json to_json(const Repair& repair);
nlohmann::json to_json(const DiagnosisReport& report);

nlohmann::json blocks_to_json(std::span<const Block> blocks, const PathFormula& formula,
                              std::span<const ExecutionPath> paths);

Env env_from_json(const nlohmann::json& object);

std::string to_text(const Trace& trace);
std::string to_text(const DiagnosisReport& report);
std::string blocks_to_text(std::span<const Block> blocks, const PathFormula& formula,
                           std::span<const ExecutionPath> paths);

/// "(+,(z1,c1)) @4" lines under a heading.
std::string deps_to_text(const std::string& heading, const DepSet& set);

/// Serialized with two-space indentation and a trailing newline.
std::string dump(const nlohmann::json& value);

}  // namespace plofc
