#include <sstream>

#include "plofc/error.hpp"
#include "plofc/report.hpp"

namespace plofc {
namespace {

std::string join_lines(const std::vector<int>& lines) {
  std::string out;
  for (int l : lines) {
    if (!out.empty()) out += ", ";
    out += std::to_string(l);
  }
  return out;
}

std::string_view kind_name(BlockKind kind) {
  switch (kind) {
    case BlockKind::Linear: return "linear";
    case BlockKind::BranchThen: return "branch-then";
    case BlockKind::BranchElse: return "branch-else";
  }
  return "linear";
}

}  // namespace

nlohmann::json to_json(const DepPair& pair) {
  nlohmann::json j = {
      {"target", pair.target},
      {"source", pair.source},
      {"lines", pair.lines},
  };
  if (pair.op) j["op"] = std::string(symbol(*pair.op));
  return j;
}

nlohmann::json to_json(const DepSet& set) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& pair : set.pairs) j.push_back(to_json(pair));
  return j;
}

nlohmann::json to_json(const Trace& trace) {
  nlohmann::json branches = nlohmann::json::array();
  for (const auto& b : trace.branches)
    branches.push_back({{"line", b.line},
                        {"taken", b.took_then ? "then" : "else"},
                        {"condition", b.condition_held}});
  nlohmann::json env = nlohmann::json::object();
  for (const auto& [name, value] : trace.final_env) env[name] = value;
  return {{"executed", trace.executed_lines}, {"branches", branches}, {"env", env}};
}

nlohmann::json to_json(const Repair& repair) {
  return {{"constant", repair.constant},
          {"line", repair.line},
          {"from", repair.original},
          {"to", repair.replacement},
          {"delta", repair.delta}};
}

nlohmann::json to_json(const DiagnosisReport& report) {
  nlohmann::json removed = nlohmann::json::array();
  for (const auto& r : report.removed) {
    nlohmann::json j = to_json(r.dep);
    j["reason"] = r.reason;
    removed.push_back(std::move(j));
  }
  nlohmann::json repairs = nlohmann::json::array();
  for (const auto& r : report.repairs) repairs.push_back(to_json(r));
  return {
      {"target", report.target},
      {"observed", report.observed},
      {"desired", report.desired},
      {"od", report.output_difference},
      {"path", report.runtime.path.to_string()},
      {"plofc", report.plofc},
      {"surviving", to_json(report.surviving)},
      {"removed", removed},
      {"repairs", repairs},
      {"executions", report.executions},
  };
}

nlohmann::json blocks_to_json(std::span<const Block> blocks, const PathFormula& formula,
                              std::span<const ExecutionPath> paths) {
  nlohmann::json jb = nlohmann::json::array();
  for (const auto& b : blocks) jb.push_back({{"id", b.id}, {"lines", b.lines}, {"kind", kind_name(b.kind)}});
  nlohmann::json jp = nlohmann::json::array();
  for (const auto& p : paths) jp.push_back({{"chosen", p.chosen}, {"lines", p.lines}});
  return {{"blocks", jb}, {"formula", formula.to_string()}, {"paths", jp}};
}

Env env_from_json(const nlohmann::json& object) {
  if (!object.is_object()) throw Error("inputs must be a JSON object of integers");
  Env env;
  for (const auto& [name, value] : object.items()) {
    if (!value.is_number_integer())
      throw Error("input '" + name + "' is not an integer");
    env[name] = value.get<std::int64_t>();
  }
  return env;
}

std::string to_text(const Trace& trace) {
  std::ostringstream out;
  out << "executed: " << join_lines(trace.executed_lines) << "\n";
  for (const auto& b : trace.branches) {
    out << "branch " << b.line << ": " << (b.took_then ? "then" : "else");
    if (b.took_then != b.condition_held)
      out << " (forced; condition is " << (b.condition_held ? "true" : "false") << ")";
    out << "\n";
  }
  for (const auto& [name, value] : trace.final_env) out << name << "=" << value << "\n";
  return out.str();
}

std::string deps_to_text(const std::string& heading, const DepSet& set) {
  std::ostringstream out;
  out << heading << ": " << set.to_string() << "\n";
  for (const auto& pair : set.pairs) out << "  " << pair.to_string() << " @" << join_lines(pair.lines) << "\n";
  return out.str();
}

std::string to_text(const DiagnosisReport& report) {
  std::ostringstream out;
  out << "target: " << report.target << "\n"
      << "observed: " << report.observed << "\n"
      << "desired: " << report.desired << "\n"
      << "od: " << report.output_difference << "\n"
      << "path: " << report.runtime.path.to_string() << "\n"
      << "plofc: " << join_lines(report.plofc) << "\n";
  out << "surviving:\n";
  for (const auto& pair : report.surviving.pairs)
    out << "  " << pair.to_string() << " @" << join_lines(pair.lines) << "\n";
  out << "removed:\n";
  for (const auto& r : report.removed)
    out << "  " << r.dep.to_string() << " @" << join_lines(r.dep.lines) << ": " << r.reason << "\n";
  out << "repairs:\n";
  for (const auto& r : report.repairs)
    out << "  " << r.constant << " line " << r.line << ": " << r.original << " -> " << r.replacement
        << " (delta " << (r.delta > 0 ? "+" : "") << r.delta << ")\n";
  out << "executions: " << report.executions << "\n";
  return out.str();
}

std::string blocks_to_text(std::span<const Block> blocks, const PathFormula& formula,
                           std::span<const ExecutionPath> paths) {
  std::ostringstream out;
  out << "blocks:\n";
  for (const auto& b : blocks) out << "  " << b.id << ": " << join_lines(b.lines) << "\n";
  out << "formula: " << formula.to_string() << "\n";
  out << "paths:\n";
  for (std::size_t i = 0; i < paths.size(); ++i)
    out << "  (" << i + 1 << ") " << paths[i].to_string() << "  [" << join_lines(paths[i].lines)
        << "]\n";
  return out.str();
}

std::string dump(const nlohmann::json& value) { return value.dump(2) + "\n"; }

}  // namespace plofc
