#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "plofc/deps.hpp"

namespace plofc {
namespace {

class Namer {
 public:
  explicit Namer(const Program& program) {
    for_each_statement(program, [&](const Statement& s) {
      auto note = [&](const Expr& e) {
        for (const Expr* leaf : leaves(e))
          if (leaf->kind != Expr::Kind::Const) taken_.insert(leaf->name);
      };
      if (s.is_assign()) {
        taken_.insert(s.assign().target);
        note(s.assign().value);
      } else {
        note(s.if_then_else().condition.lhs);
        note(s.if_then_else().condition.rhs);
      }
    });
    for (const auto& name : program.inputs) taken_.insert(name);
  }

  std::string next() {
    for (;;) {
      std::string id = "c" + std::to_string(counter_++);
      if (!taken_.count(id)) return id;
    }
  }

 private:
  std::set<std::string> taken_;
  int counter_ = 1;
};

class Uniquifier {
 public:
  Uniquifier(Namer namer, std::optional<std::set<int>> lines)
      : namer_(std::move(namer)), lines_(std::move(lines)) {}

  void body(std::vector<Statement>& statements) {
    for (auto& s : statements) {
      const bool named = !lines_ || lines_->count(s.line) > 0;
      if (s.is_assign()) {
        if (named) expr(s.assign().value, s.line, ConstantContext::Expression);
        continue;
      }
      auto& node = s.if_then_else();
      if (named) {
        expr(node.condition.lhs, s.line, ConstantContext::Condition);
        expr(node.condition.rhs, s.line, ConstantContext::Condition);
      }
      body(node.then_branch);
      body(node.else_branch);
    }
  }

  ConstantTable table;

 private:
  void expr(Expr& e, int line, ConstantContext context) {
    if (e.kind == Expr::Kind::Binary) {
      expr(e.operands[0], line, context);
      expr(e.operands[1], line, context);
      return;
    }
    if (e.kind != Expr::Kind::Const) return;
    std::string id = namer_.next();
    table.entries.push_back({id, e.value, line, context});
    e = Expr::const_ref(std::move(id), e.value);
  }

  Namer namer_;
  std::optional<std::set<int>> lines_;
};

template <typename Fn>
void rewrite_leaves(std::vector<Statement>& statements, Fn&& fn) {
  for (auto& s : statements) {
    auto walk = [&](auto& self, Expr& e) -> void {
      if (e.kind == Expr::Kind::Binary) {
        self(self, e.operands[0]);
        self(self, e.operands[1]);
      } else {
        fn(e);
      }
    };
    if (s.is_assign()) {
      walk(walk, s.assign().value);
      continue;
    }
    auto& node = s.if_then_else();
    walk(walk, node.condition.lhs);
    walk(walk, node.condition.rhs);
    rewrite_leaves(node.then_branch, fn);
    rewrite_leaves(node.else_branch, fn);
  }
}

UniquifiedProgram uniquify(const Program& program, std::optional<std::set<int>> lines) {
  UniquifiedProgram out;
  out.program = program;
  Uniquifier uniquifier(Namer(program), std::move(lines));
  uniquifier.body(out.program.statements);
  out.table = std::move(uniquifier.table);
  return out;
}

DepOp to_dep_op(ArithOp op) {
  switch (op) {
    case ArithOp::Add: return DepOp::Add;
    case ArithOp::Sub: return DepOp::Sub;
    case ArithOp::Mul: return DepOp::Mul;
  }
  return DepOp::Add;
}

DepOp to_dep_op(RelOp op) {
  switch (op) {
    case RelOp::Lt: return DepOp::Lt;
    case RelOp::Gt: return DepOp::Gt;
    case RelOp::Le: return DepOp::Le;
    case RelOp::Ge: return DepOp::Ge;
    case RelOp::Eq: return DepOp::Eq;
    case RelOp::Ne: return DepOp::Ne;
  }
  return DepOp::Lt;
}

// Leaves paired with the operator that directly combines them.
void tagged_leaves(const Expr& e, std::optional<DepOp> parent,
                   std::vector<std::pair<const Expr*, std::optional<DepOp>>>& out) {
  if (e.is_leaf()) {
    out.emplace_back(&e, parent);
    return;
  }
  tagged_leaves(e.lhs(), to_dep_op(e.op), out);
  tagged_leaves(e.rhs(), to_dep_op(e.op), out);
}

std::pair<std::string, SourceKind> source_of(const Expr& leaf) {
  switch (leaf.kind) {
    case Expr::Kind::Var: return {leaf.name, SourceKind::Variable};
    case Expr::Kind::ConstRef: return {leaf.name, SourceKind::Constant};
    default: return {std::to_string(leaf.value), SourceKind::Constant};
  }
}

class Extractor {
 public:
  explicit Extractor(std::set<int> executed) : executed_(std::move(executed)) {}

  void body(const std::vector<Statement>& statements) {
    for (const auto& s : statements) {
      if (!executed_.count(s.line)) continue;
      if (s.is_assign()) {
        assignment(s.line, s.assign());
        continue;
      }
      const auto& node = s.if_then_else();
      governing_.push_back(&node.condition);
      body(node.then_branch);
      body(node.else_branch);
      governing_.pop_back();
    }
  }

  std::vector<Dependency> deps;

 private:
  void assignment(int line, const Assign& a) {
    std::vector<std::pair<const Expr*, std::optional<DepOp>>> tagged;
    tagged_leaves(a.value, std::nullopt, tagged);
    for (std::size_t i = 0; i < tagged.size(); ++i) {
      Dependency d;
      d.target = a.target;
      std::tie(d.source, d.source_kind) = source_of(*tagged[i].first);
      d.op = i == 0 ? DepOp::Assign : *tagged[i].second;
      d.line = line;
      if (d.op == DepOp::Assign && d.source_kind == SourceKind::Variable && d.source == d.target)
        d.exclusion = Exclusion::SelfAssignment;
      deps.push_back(std::move(d));
    }
    for (const Condition* c : governing_) {
      for (const Expr* side : {&c->lhs, &c->rhs}) {
        for (const Expr* leaf : leaves(*side)) {
          Dependency d;
          d.target = a.target;
          std::tie(d.source, d.source_kind) = source_of(*leaf);
          d.op = to_dep_op(c->op);
          d.line = line;
          d.control = true;
          d.exclusion = Exclusion::ControlOperator;
          deps.push_back(std::move(d));
        }
      }
    }
  }

  std::set<int> executed_;
  std::vector<const Condition*> governing_;
};

void def_use(const std::vector<Statement>& statements, std::vector<int>& governing,
             std::vector<LineDefUse>& out) {
  auto reads = [](const Expr& e, std::vector<std::string>& into) {
    for (const Expr* leaf : leaves(e))
      if (leaf->kind == Expr::Kind::Var &&
          std::find(into.begin(), into.end(), leaf->name) == into.end())
        into.push_back(leaf->name);
  };
  for (const auto& s : statements) {
    LineDefUse d;
    d.line = s.line;
    d.governing = governing;
    if (s.is_assign()) {
      d.defines = s.assign().target;
      reads(s.assign().value, d.uses);
      out.push_back(std::move(d));
      continue;
    }
    const auto& node = s.if_then_else();
    d.is_condition = true;
    reads(node.condition.lhs, d.uses);
    reads(node.condition.rhs, d.uses);
    out.push_back(std::move(d));
    governing.push_back(s.line);
    def_use(node.then_branch, governing, out);
    def_use(node.else_branch, governing, out);
    governing.pop_back();
  }
}

}  // namespace

const ConstantEntry* ConstantTable::find(std::string_view id) const {
  auto it = std::find_if(entries.begin(), entries.end(),
                         [&](const ConstantEntry& e) { return e.id == id; });
  return it == entries.end() ? nullptr : &*it;
}

UniquifiedProgram uniquify_constants(const Program& program) {
  return uniquify(program, std::nullopt);
}

UniquifiedProgram uniquify_constants(const Program& program, std::span<const int> lines) {
  return uniquify(program, std::set<int>(lines.begin(), lines.end()));
}

Program inline_constants(const Program& program, const ConstantTable& table) {
  Program out = program;
  rewrite_leaves(out.statements, [&](Expr& e) {
    if (e.kind != Expr::Kind::ConstRef) return;
    if (const ConstantEntry* entry = table.find(e.name)) e = Expr::constant(entry->value);
  });
  return out;
}

Program with_constant(const Program& program, std::string_view id, std::int64_t value) {
  Program out = program;
  rewrite_leaves(out.statements, [&](Expr& e) {
    if (e.kind == Expr::Kind::ConstRef && e.name == id) e.value = value;
  });
  return out;
}

std::string_view symbol(DepOp op) {
  switch (op) {
    case DepOp::Assign: return "=";
    case DepOp::Add: return "+";
    case DepOp::Sub: return "-";
    case DepOp::Mul: return "*";
    case DepOp::Lt: return "<";
    case DepOp::Gt: return ">";
    case DepOp::Le: return "<=";
    case DepOp::Ge: return ">=";
    case DepOp::Eq: return "==";
    case DepOp::Ne: return "!=";
  }
  return "?";
}

bool is_relational(DepOp op) {
  return op == DepOp::Lt || op == DepOp::Gt || op == DepOp::Le || op == DepOp::Ge ||
         op == DepOp::Eq || op == DepOp::Ne;
}

std::string_view describe(Exclusion reason) {
  switch (reason) {
    case Exclusion::None: return "none";
    case Exclusion::SelfAssignment: return "self-assignment";
    case Exclusion::ControlOperator: return "control-operator";
  }
  return "none";
}

std::vector<Dependency> extract_line_deps(const Program& program, std::span<const int> path_lines) {
  Extractor extractor(std::set<int>(path_lines.begin(), path_lines.end()));
  extractor.body(program.statements);
  return std::move(extractor.deps);
}

std::vector<Dependency> extract_line_deps(const Program& program, const ExecutionPath& path) {
  return extract_line_deps(program, path.lines);
}

std::string DepPair::to_string() const {
  std::string pair = "(" + target + "," + source + ")";
  if (!op) return pair;
  return "(" + std::string(symbol(*op)) + "," + pair + ")";
}

bool DepSet::contains(std::optional<DepOp> op, std::string_view target,
                      std::string_view source) const {
  return std::any_of(pairs.begin(), pairs.end(), [&](const DepPair& p) {
    return p.op == op && p.target == target && p.source == source;
  });
}

std::string DepSet::to_string() const {
  std::string out = "{";
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    out += i == 0 ? " " : ", ";
    out += pairs[i].to_string();
  }
  out += pairs.empty() ? "}" : " }";
  return out;
}

void DepSet::canonicalize() {
  for (auto& p : pairs) {
    std::sort(p.lines.begin(), p.lines.end());
    p.lines.erase(std::unique(p.lines.begin(), p.lines.end()), p.lines.end());
  }
  std::sort(pairs.begin(), pairs.end(), [](const DepPair& a, const DepPair& b) {
    const int la = a.lines.empty() ? 0 : a.lines.front();
    const int lb = b.lines.empty() ? 0 : b.lines.front();
    return std::tie(la, a.target, a.source, a.op) < std::tie(lb, b.target, b.source, b.op);
  });
}

DepSet compose_deps(std::span<const Dependency> deps, const ComposeOptions& options) {
  std::map<std::tuple<std::optional<DepOp>, std::string, std::string>, DepPair> merged;
  for (const auto& d : deps) {
    if (d.control) continue;
    if (!options.include_constants && d.source_kind == SourceKind::Constant) continue;
    if (options.apply_exclusions && d.excluded()) continue;
    std::optional<DepOp> op;
    if (options.keep_operators) op = d.op;
    auto [it, fresh] = merged.try_emplace({op, d.target, d.source});
    if (fresh) it->second = DepPair{op, d.target, d.source, d.source_kind, {}};
    it->second.lines.push_back(d.line);
  }
  DepSet set;
  for (auto& [key, pair] : merged) set.pairs.push_back(std::move(pair));
  set.canonicalize();
  return set;
}

std::vector<LineDefUse> line_def_use(const Program& program) {
  std::vector<LineDefUse> out;
  std::vector<int> governing;
  def_use(program.statements, governing, out);
  return out;
}

}  // namespace plofc
