#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "plofc/interp.hpp"

namespace plofc::cli {

enum class Format { Text, Json };

struct CliConfig {
  std::string program_path;
  Env inputs;
  std::string target;
  std::optional<std::int64_t> expect;
  Format format = Format::Text;
  std::optional<std::string> emit_dot;
  std::size_t path_cap = 20;
  // 1-based index into the enumerated paths; forces execution along it.
  std::optional<std::size_t> path;
  std::vector<std::string> extra_cases;  // "a=1,b=2:17"
  bool parallel = false;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitFault = 1;
inline constexpr int kExitError = 2;

int cmd_diagnose(const CliConfig& config, std::ostream& out, std::ostream& err);
int cmd_trace(const CliConfig& config, std::ostream& out, std::ostream& err);
int cmd_blocks(const CliConfig& config, std::ostream& out, std::ostream& err);
int cmd_deps(const CliConfig& config, std::ostream& out, std::ostream& err);

/// Full command line, program name excluded.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace plofc::cli
