#pragma once

// MiniImp: a loop-free imperative language of integer assignments and
// if-then-else statements. Every statement carries the source line it was
// written on; those line numbers are the currency of the whole toolkit.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace plofc {

enum class ArithOp : std::uint8_t { Add, Sub, Mul };
enum class RelOp : std::uint8_t { Lt, Gt, Le, Ge, Eq, Ne };

std::string_view symbol(ArithOp op);
std::string_view symbol(RelOp op);

/// An integer expression tree.
///
/// `ConstRef` is a named constant produced by constant uniquification; it
/// keeps its value so a uniquified program stays directly executable.
struct Expr {
  enum class Kind : std::uint8_t { Var, Const, ConstRef, Binary };

  Kind kind = Kind::Const;
  ArithOp op = ArithOp::Add;
  std::int64_t value = 0;
  std::string name;
  std::vector<Expr> operands;  // two entries for Binary, otherwise empty

  static Expr var(std::string name);
  static Expr constant(std::int64_t value);
  static Expr const_ref(std::string id, std::int64_t value);
  static Expr binary(ArithOp op, Expr lhs, Expr rhs);

  bool is_leaf() const { return kind != Kind::Binary; }
  const Expr& lhs() const { return operands[0]; }
  const Expr& rhs() const { return operands[1]; }

  friend bool operator==(const Expr& a, const Expr& b);
};

struct Condition {
  RelOp op = RelOp::Lt;
  Expr lhs;
  Expr rhs;

  friend bool operator==(const Condition&, const Condition&) = default;
};

struct Statement;

struct Assign {
  std::string target;
  Expr value;

  friend bool operator==(const Assign&, const Assign&) = default;
};

struct IfThenElse {
  Condition condition;
  std::vector<Statement> then_branch;
  std::vector<Statement> else_branch;

  friend bool operator==(const IfThenElse& a, const IfThenElse& b);
};

struct Statement {
  int line = 0;
  std::variant<Assign, IfThenElse> node;

  bool is_assign() const { return std::holds_alternative<Assign>(node); }
  bool is_if() const { return std::holds_alternative<IfThenElse>(node); }
  const Assign& assign() const { return std::get<Assign>(node); }
  const IfThenElse& if_then_else() const { return std::get<IfThenElse>(node); }
  Assign& assign() { return std::get<Assign>(node); }
  IfThenElse& if_then_else() { return std::get<IfThenElse>(node); }

  friend bool operator==(const Statement&, const Statement&) = default;
};

struct Program {
  std::vector<Statement> statements;
  // Free variables that are read but never assigned, in order of first
  // appearance. They are the program's inputs.
  std::vector<std::string> inputs;

  friend bool operator==(const Program&, const Program&) = default;
};

struct ParseOptions {
  // When set, only these names may be read without a prior assignment.
  std::optional<std::vector<std::string>> inputs;
};

Program parse_program(std::string_view source, const ParseOptions& options = {});

/// Emits MiniImp text that parses back to an equal Program.
///
/// Plain programs are laid out so that every statement sits on its own
/// physical line. Programs holding uniquified constants are emitted as a
/// labelled listing preceded by `cN = value` declarations.
std::string emit_source(const Program& program);

std::string to_string(const Expr& expr);
std::string to_string(const Condition& condition);

// Traversal helpers.

/// Pre-order walk over every statement, nested ones included.
void for_each_statement(const std::vector<Statement>& statements,
                        const std::function<void(const Statement&)>& visit);
void for_each_statement(const Program& program,
                        const std::function<void(const Statement&)>& visit);

/// Leaves of an expression in left-to-right order.
std::vector<const Expr*> leaves(const Expr& expr);

/// All statement lines in source order.
std::vector<int> statement_lines(const Program& program);

const Statement* find_statement(const Program& program, int line);

/// Keeps the statements whose line is listed. An if-statement survives when
/// its condition line does; its arms are filtered recursively.
Program restrict_to_lines(const Program& program, const std::vector<int>& lines);

/// Recomputes Program::inputs from the statements.
std::vector<std::string> infer_inputs(const std::vector<Statement>& statements);

}  // namespace plofc
