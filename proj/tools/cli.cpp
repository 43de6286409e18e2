#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "plofc/blocks.hpp"
#include "plofc/deps.hpp"
#include "plofc/diagnose.hpp"
#include "plofc/dot.hpp"
#include "plofc/error.hpp"
#include "plofc/lang.hpp"
#include "plofc/report.hpp"

namespace plofc::cli {
namespace {

struct Loaded {
  Program program;
  std::vector<Block> blocks;
  BranchPlan plan;
  std::optional<ExecutionPath> forced;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open program file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Loaded load(const CliConfig& config) {
  Loaded loaded;
  loaded.program = parse_program(read_file(config.program_path));
  loaded.blocks = build_blocks(loaded.program);
  if (config.path) {
    const auto paths = enumerate_paths(all_path_formula(loaded.blocks), config.path_cap);
    if (*config.path == 0 || *config.path > paths.size())
      throw Error("--path must be between 1 and " + std::to_string(paths.size()));
    loaded.forced = paths[*config.path - 1];
    loaded.plan = branch_plan(*loaded.forced, loaded.blocks);
  }
  return loaded;
}

TestCase parse_case(const std::string& text) {
  const std::size_t colon = text.rfind(':');
  if (colon == std::string::npos) throw Error("test case '" + text + "' must look like a=1,b=2:17");
  TestCase c;
  c.inputs = parse_bindings(text.substr(0, colon));
  try {
    std::size_t used = 0;
    c.desired = std::stoll(text.substr(colon + 1), &used);
    if (used != text.size() - colon - 1) throw std::invalid_argument(text);
  } catch (const std::logic_error&) {
    throw Error("test case '" + text + "' has a malformed expected value");
  }
  return c;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << content;
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

}  // namespace

int cmd_diagnose(const CliConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (config.target.empty() || !config.expect) throw Error("diagnose needs --target and --expect");
    Loaded loaded = load(config);
    FaultQuery query{loaded.program, config.inputs, config.target, *config.expect, loaded.plan,
                     config.parallel};
    std::vector<TestCase> cases;
    for (const auto& text : config.extra_cases) cases.push_back(parse_case(text));
    const DiagnosisReport report = predict_faulty_lines(query, cases);

    if (config.emit_dot) {
      const std::filesystem::path dir(*config.emit_dot);
      std::filesystem::create_directories(dir);
      write_file(dir / "graph1.dot", dot_all_paths(loaded.program, report.blocks));
      write_file(dir / "graph2.dot",
                 dot_runtime_path(loaded.program, report.blocks, report.runtime, report.slice));
      write_file(dir / "graph3.dot",
                 dot_dependences(report.blocks, report.runtime.path, report.final_set));
    }
    out << (config.format == Format::Json ? dump(to_json(report)) : to_text(report));
    return report.fault_found() ? kExitFault : kExitOk;
  });
}

int cmd_trace(const CliConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Loaded loaded = load(config);
    const Trace trace = execute(loaded.program, config.inputs, loaded.plan);
    out << (config.format == Format::Json ? dump(to_json(trace)) : to_text(trace));
    return kExitOk;
  });
}

int cmd_blocks(const CliConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Loaded loaded = load(config);
    const PathFormula formula = all_path_formula(loaded.blocks);
    const auto paths = enumerate_paths(formula, config.path_cap);
    out << (config.format == Format::Json ? dump(blocks_to_json(loaded.blocks, formula, paths))
                                          : blocks_to_text(loaded.blocks, formula, paths));
    return kExitOk;
  });
}

int cmd_deps(const CliConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Loaded loaded = load(config);
    ExecutionPath path;
    if (loaded.forced) {
      path = *loaded.forced;
    } else {
      const Trace trace = execute(loaded.program, config.inputs);
      path = runtime_path(trace, loaded.blocks).path;
    }
    std::vector<int> lines = path.lines;
    if (!config.target.empty()) {
      const SliceResult slice =
          slice_blocks(loaded.blocks, config.target, line_def_use(loaded.program));
      std::erase_if(lines, [&](int l) {
        return std::none_of(slice.kept.begin(), slice.kept.end(),
                            [&](const Block& b) { return b.contains(l); });
      });
    }

    const auto raw = extract_line_deps(loaded.program, lines);
    const DepSet set1 = compose_deps(raw, {.include_constants = false,
                                           .apply_exclusions = false,
                                           .keep_operators = false});
    const UniquifiedProgram named = uniquify_constants(loaded.program, lines);
    const auto deps = extract_line_deps(named.program, lines);
    const DepSet set2 = compose_deps(deps, {.include_constants = true,
                                            .apply_exclusions = false,
                                            .keep_operators = false});
    const DepSet final_set = compose_deps(deps);

    if (config.format == Format::Json) {
      nlohmann::json constants = nlohmann::json::array();
      for (const auto& c : named.table.entries)
        constants.push_back({{"id", c.id},
                             {"value", c.value},
                             {"line", c.line},
                             {"context", c.context == ConstantContext::Condition ? "condition"
                                                                                 : "expression"}});
      out << dump({{"path", path.to_string()},
                   {"lines", lines},
                   {"constants", constants},
                   {"set1", to_json(set1)},
                   {"set2", to_json(set2)},
                   {"final", to_json(final_set)}});
      return kExitOk;
    }
    out << "path: " << path.to_string() << "\n";
    out << "constants:\n";
    for (const auto& c : named.table.entries)
      out << "  " << c.id << " = " << c.value << " (line " << c.line
          << (c.context == ConstantContext::Condition ? ", condition" : "") << ")\n";
    out << deps_to_text("set1", set1) << deps_to_text("set2", set2)
        << deps_to_text("final", final_set);
    return kExitOk;
  });
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Path-condition fault localization for MiniImp programs", "plofc"};
  app.require_subcommand(1);

  CliConfig config;
  std::string inputs_text;
  std::string inputs_file;
  std::string format = "text";
  std::size_t path_index = 0;
  std::int64_t expect = 0;

  auto common = [&](CLI::App* sub, bool with_inputs) {
    sub->add_option("--program", config.program_path, "MiniImp source file")->required();
    sub->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--path-cap", config.path_cap, "Maximum number of branch clauses");
    if (!with_inputs) return;
    sub->add_option("--inputs", inputs_text, "Inputs as name=value pairs, e.g. a=3,b=4");
    sub->add_option("--inputs-file", inputs_file, "JSON object mapping inputs to integers");
    sub->add_option("--path", path_index, "Trace the N-th enumerated path (1-based)");
  };

  CLI::App* diagnose = app.add_subcommand("diagnose", "Localize faulty lines and suggest repairs");
  common(diagnose, true);
  diagnose->add_option("--target", config.target, "Output variable to diagnose")->required();
  diagnose->add_option("--expect", expect, "Desired value of the target")->required();
  diagnose->add_option("--emit-dot", config.emit_dot, "Directory for graph1..3.dot");
  diagnose->add_option("--case", config.extra_cases,
                       "Extra test case a=1,b=2:17 every repair must satisfy");
  diagnose->add_flag("--parallel", config.parallel, "Evaluate repair candidates concurrently");

  CLI::App* trace = app.add_subcommand("trace", "Execute and print the trace");
  common(trace, true);

  CLI::App* blocks = app.add_subcommand("blocks", "Print blocks, path formula and paths");
  common(blocks, false);

  CLI::App* deps = app.add_subcommand("deps", "Print the dependence sets along a path");
  common(deps, true);
  deps->add_option("--target", config.target, "Restrict to blocks relevant to this variable");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (!inputs_file.empty()) {
      std::ifstream in(inputs_file);
      if (!in) throw Error("cannot open inputs file '" + inputs_file + "'");
      config.inputs = env_from_json(nlohmann::json::parse(in));
    }
    for (const auto& [name, value] : parse_bindings(inputs_text)) config.inputs[name] = value;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  config.format = format == "json" ? Format::Json : Format::Text;
  if (path_index > 0) config.path = path_index;
  if (diagnose->parsed()) config.expect = expect;

  if (diagnose->parsed()) return cmd_diagnose(config, out, err);
  if (trace->parsed()) return cmd_trace(config, out, err);
  if (blocks->parsed()) return cmd_blocks(config, out, err);
  return cmd_deps(config, out, err);
}

}  // namespace plofc::cli
