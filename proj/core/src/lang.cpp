#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "plofc/lang.hpp"

namespace plofc {

std::string_view symbol(ArithOp op) {
  switch (op) {
    case ArithOp::Add: return "+";
    case ArithOp::Sub: return "-";
    case ArithOp::Mul: return "*";
  }
  return "?";
}

std::string_view symbol(RelOp op) {
  switch (op) {
    case RelOp::Lt: return "<";
    case RelOp::Gt: return ">";
    case RelOp::Le: return "<=";
    case RelOp::Ge: return ">=";
    case RelOp::Eq: return "==";
    case RelOp::Ne: return "!=";
  }
  return "?";
}

Expr Expr::var(std::string name) {
  Expr e;
  e.kind = Kind::Var;
  e.name = std::move(name);
  return e;
}

Expr Expr::constant(std::int64_t value) {
  Expr e;
  e.kind = Kind::Const;
  e.value = value;
  return e;
}

Expr Expr::const_ref(std::string id, std::int64_t value) {
  Expr e;
  e.kind = Kind::ConstRef;
  e.name = std::move(id);
  e.value = value;
  return e;
}

Expr Expr::binary(ArithOp op, Expr lhs, Expr rhs) {
  Expr e;
  e.kind = Kind::Binary;
  e.op = op;
  e.operands.reserve(2);
  e.operands.push_back(std::move(lhs));
  e.operands.push_back(std::move(rhs));
  return e;
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Expr::Kind::Var: return a.name == b.name;
    case Expr::Kind::Const: return a.value == b.value;
    case Expr::Kind::ConstRef: return a.name == b.name && a.value == b.value;
    case Expr::Kind::Binary: return a.op == b.op && a.operands == b.operands;
  }
  return false;
}

bool operator==(const IfThenElse& a, const IfThenElse& b) {
  return a.condition == b.condition && a.then_branch == b.then_branch &&
         a.else_branch == b.else_branch;
}

namespace {

int precedence(ArithOp op) { return op == ArithOp::Mul ? 2 : 1; }

void write_expr(const Expr& e, std::string& out) {
  switch (e.kind) {
    case Expr::Kind::Var:
    case Expr::Kind::ConstRef:
      out += e.name;
      return;
    case Expr::Kind::Const:
      out += std::to_string(e.value);
      return;
    case Expr::Kind::Binary:
      break;
  }
  const int prec = precedence(e.op);
  auto operand = [&](const Expr& child, bool right) {
    const bool parens = child.kind == Expr::Kind::Binary &&
                        (right ? precedence(child.op) <= prec
                               : precedence(child.op) < prec);
    if (parens) out += '(';
    write_expr(child, out);
    if (parens) out += ')';
  };
  operand(e.lhs(), false);
  out += ' ';
  out += symbol(e.op);
  out += ' ';
  operand(e.rhs(), true);
}

int last_line(const Statement& s) {
  int line = s.line;
  if (s.is_if()) {
    for (const auto& c : s.if_then_else().then_branch) line = std::max(line, last_line(c));
    for (const auto& c : s.if_then_else().else_branch) line = std::max(line, last_line(c));
  }
  return line;
}

class Layout {
 public:
  std::map<int, std::string> lines;

  void statement(const Statement& s, const std::string& prefix, int depth) {
    std::string text(static_cast<std::size_t>(depth) * 4, ' ');
    text += prefix;
    if (s.is_assign()) {
      text += s.assign().target + " = " + to_string(s.assign().value) + ";";
      lines[s.line] = std::move(text);
      return;
    }
    const auto& node = s.if_then_else();
    text += "if (" + to_string(node.condition) + ")";
    lines[s.line] = std::move(text);
    arm(node.then_branch, "then", depth + 1, s.line);
    if (!node.else_branch.empty()) arm(node.else_branch, "else", depth + 1, s.line);
  }

 private:
  void arm(const std::vector<Statement>& body, const std::string& keyword, int depth,
           int if_line) {
    if (body.empty()) {
      lines[if_line] += " " + keyword + " { }";
      return;
    }
    // A lone nested if is braced so a following else cannot attach to it.
    if (body.size() == 1 && body.front().is_assign()) {
      statement(body.front(), keyword + " ", depth);
      return;
    }
    statement(body.front(), keyword + " { ", depth);
    for (std::size_t i = 1; i < body.size(); ++i) statement(body[i], "", depth + 1);
    lines[last_line(body.back())] += " }";
  }
};

void collect_const_refs(const Expr& e, std::vector<std::pair<std::string, std::int64_t>>& out) {
  for (const Expr* leaf : leaves(e))
    if (leaf->kind == Expr::Kind::ConstRef &&
        std::none_of(out.begin(), out.end(), [&](const auto& p) { return p.first == leaf->name; }))
      out.emplace_back(leaf->name, leaf->value);
}

std::vector<Statement> restrict_body(const std::vector<Statement>& body,
                                     const std::set<int>& keep) {
  std::vector<Statement> out;
  for (const auto& s : body) {
    if (!keep.count(s.line)) continue;
    if (s.is_assign()) {
      out.push_back(s);
      continue;
    }
    const auto& node = s.if_then_else();
    Statement copy;
    copy.line = s.line;
    copy.node = IfThenElse{node.condition, restrict_body(node.then_branch, keep),
                           restrict_body(node.else_branch, keep)};
    out.push_back(std::move(copy));
  }
  return out;
}

}  // namespace

std::string to_string(const Expr& expr) {
  std::string out;
  write_expr(expr, out);
  return out;
}

std::string to_string(const Condition& condition) {
  return to_string(condition.lhs) + " " + std::string(symbol(condition.op)) + " " +
         to_string(condition.rhs);
}

std::string emit_source(const Program& program) {
  Layout layout;
  for (const auto& s : program.statements) layout.statement(s, "", 0);

  std::vector<std::pair<std::string, std::int64_t>> constants;
  for_each_statement(program, [&](const Statement& s) {
    if (s.is_assign()) {
      collect_const_refs(s.assign().value, constants);
    } else {
      collect_const_refs(s.if_then_else().condition.lhs, constants);
      collect_const_refs(s.if_then_else().condition.rhs, constants);
    }
  });

  std::string out;
  if (constants.empty()) {
    int next = 1;
    for (const auto& [line, text] : layout.lines) {
      for (; next < line; ++next) out += '\n';
      out += text;
      out += '\n';
      next = line + 1;
    }
    return out;
  }

  for (const auto& [id, value] : constants)
    out += id + " = " + std::to_string(value) + "\n";
  for (const auto& [line, text] : layout.lines) {
    std::string label = std::to_string(line);
    label.resize(std::max<std::size_t>(label.size() + 1, 4), ' ');
    out += label + text + "\n";
  }
  return out;
}

void for_each_statement(const std::vector<Statement>& statements,
                        const std::function<void(const Statement&)>& visit) {
  for (const auto& s : statements) {
    visit(s);
    if (s.is_if()) {
      for_each_statement(s.if_then_else().then_branch, visit);
      for_each_statement(s.if_then_else().else_branch, visit);
    }
  }
}

void for_each_statement(const Program& program,
                        const std::function<void(const Statement&)>& visit) {
  for_each_statement(program.statements, visit);
}

std::vector<const Expr*> leaves(const Expr& expr) {
  std::vector<const Expr*> out;
  std::vector<const Expr*> stack{&expr};
  while (!stack.empty()) {
    const Expr* e = stack.back();
    stack.pop_back();
    if (e->is_leaf()) {
      out.push_back(e);
    } else {
      stack.push_back(&e->rhs());
      stack.push_back(&e->lhs());
    }
  }
  return out;
}

std::vector<int> statement_lines(const Program& program) {
  std::vector<int> lines;
  for_each_statement(program, [&](const Statement& s) { lines.push_back(s.line); });
  return lines;
}

const Statement* find_statement(const Program& program, int line) {
  const Statement* found = nullptr;
  for_each_statement(program, [&](const Statement& s) {
    if (s.line == line) found = &s;
  });
  return found;
}

Program restrict_to_lines(const Program& program, const std::vector<int>& lines) {
  const std::set<int> keep(lines.begin(), lines.end());
  Program out;
  out.statements = restrict_body(program.statements, keep);
  out.inputs = infer_inputs(out.statements);
  return out;
}

}  // namespace plofc
