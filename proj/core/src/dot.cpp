#include <algorithm>
#include <set>
#include <sstream>
#include <utility>

#include "plofc/dot.hpp"

namespace plofc {
namespace {

using Edge = std::pair<std::string, std::string>;

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string lines_label(const Block& b) {
  std::string out = b.id + "\\n";
  for (std::size_t i = 0; i < b.lines.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(b.lines[i]);
  }
  return out;
}

class FlowEdges {
 public:
  explicit FlowEdges(std::span<const Block> blocks) : blocks_(blocks) {}

  std::vector<Edge> edges;

  void top_level(const std::vector<Statement>& body) {
    std::vector<std::string> preds;
    bool in_run = false;
    for (const auto& s : body) {
      if (s.is_assign()) {
        if (in_run) continue;
        in_run = true;
        const std::string node = owner(s.line, BlockKind::Linear);
        link(preds, node);
        preds = {node};
        continue;
      }
      in_run = false;
      preds = branch(s, preds);
    }
  }

 private:
  std::string owner(int line, BlockKind kind) const {
    for (const auto& b : blocks_)
      if (b.kind == kind && b.contains(line)) return b.id;
    return {};
  }

  void link(const std::vector<std::string>& preds, const std::string& node) {
    for (const auto& p : preds) edges.emplace_back(p, node);
  }

  std::vector<std::string> branch(const Statement& s, const std::vector<std::string>& preds) {
    const auto& node = s.if_then_else();
    const std::string then_id = owner(s.line, BlockKind::BranchThen);
    const std::string else_id = owner(s.line, BlockKind::BranchElse);
    link(preds, then_id);
    link(preds, else_id);
    auto exits = arm(node.then_branch, {then_id});
    auto else_exits = arm(node.else_branch, {else_id});
    exits.insert(exits.end(), else_exits.begin(), else_exits.end());
    return exits;
  }

  std::vector<std::string> arm(const std::vector<Statement>& body, std::vector<std::string> preds) {
    for (const auto& s : body)
      if (s.is_if()) preds = branch(s, preds);
    return preds;
  }

  std::span<const Block> blocks_;
};

void write_edges(std::ostringstream& out, const std::vector<Edge>& edges,
                 const std::set<std::string>* green = nullptr) {
  for (const auto& [from, to] : edges) {
    out << "  " << quote(from) << " -> " << quote(to);
    if (green && green->count(from) && green->count(to)) out << " [color=green, penwidth=2]";
    out << ";\n";
  }
}

}  // namespace

std::string dot_all_paths(const Program& program, std::span<const Block> blocks) {
  FlowEdges flow(blocks);
  flow.top_level(program.statements);
  std::ostringstream out;
  out << "digraph all_paths {\n  node [shape=box];\n";
  for (const auto& b : blocks) out << "  " << quote(b.id) << " [label=\"" << lines_label(b) << "\"];\n";
  write_edges(out, flow.edges);
  out << "}\n";
  return out.str();
}

std::string dot_runtime_path(const Program& program, std::span<const Block> blocks,
                             const RuntimePath& runtime, const SliceResult& slice) {
  std::set<std::string> green;
  for (const auto& id : runtime.path.chosen)
    if (std::any_of(slice.kept.begin(), slice.kept.end(), [&](const Block& b) { return b.id == id; }))
      green.insert(id);
  FlowEdges flow(blocks);
  flow.top_level(program.statements);
  std::ostringstream out;
  out << "digraph runtime_path {\n  node [shape=box];\n";
  for (const auto& b : blocks)
    out << "  " << quote(b.id) << " [label=\"" << lines_label(b) << "\", color="
        << (green.count(b.id) ? "green" : "red") << "];\n";
  write_edges(out, flow.edges, &green);
  out << "}\n";
  return out.str();
}

std::string dot_dependences(std::span<const Block> blocks, const ExecutionPath& path,
                            const DepSet& deps) {
  std::ostringstream out;
  out << "digraph dependences {\n  node [shape=box];\n";
  for (const auto& id : path.chosen) {
    const Block* b = find_block(blocks, id);
    if (b == nullptr) continue;
    std::string label = lines_label(*b);
    for (const auto& pair : deps.pairs)
      if (std::any_of(pair.lines.begin(), pair.lines.end(), [&](int l) { return b->contains(l); }))
        label += "\\n" + pair.to_string();
    out << "  " << quote(id) << " [label=\"" << label << "\"];\n";
  }
  for (std::size_t i = 1; i < path.chosen.size(); ++i)
    out << "  " << quote(path.chosen[i - 1]) << " -> " << quote(path.chosen[i]) << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace plofc
