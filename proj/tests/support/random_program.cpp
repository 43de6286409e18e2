#include "random_program.hpp"

#include <algorithm>
#include <set>

namespace plofc::testing {
namespace {

const std::vector<std::string> kInputs = {"a", "b", "c"};
const std::vector<std::string> kLocals = {"x", "y", "z", "w", "u"};

class Generator {
 public:
  Generator(std::mt19937_64& rng, const GeneratorLimits& limits)
      : rng_(rng), limits_(limits), lines_left_(limits.max_lines - 1), ifs_left_(limits.max_ifs) {}

  GeneratedProgram run() {
    std::set<std::string> defined;
    GeneratedProgram out;
    const int wanted = uniform(1, std::max(1, lines_left_));
    out.program.statements = body(wanted, 0, defined);

    // A final top-level assignment with a trailing +/- constant, so every
    // program has at least one always-executed mutable constant.
    out.target = pick(kLocals);
    Statement last;
    last.line = next_line();
    last.node = Assign{out.target, Expr::binary(coin(0.5) ? ArithOp::Add : ArithOp::Sub,
                                                expr(1, defined), Expr::constant(uniform(-9, 9)))};
    out.program.statements.push_back(std::move(last));
    out.program.inputs = infer_inputs(out.program.statements);
    return out;
  }

 private:
  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin(double p) { return std::bernoulli_distribution(p)(rng_); }
  const std::string& pick(const std::vector<std::string>& from) {
    return from[static_cast<std::size_t>(uniform(0, static_cast<int>(from.size()) - 1))];
  }

  int next_line() {
    line_ += coin(0.1) ? 2 : 1;
    return line_;
  }

  Expr leaf(const std::set<std::string>& defined, bool allow_const = true) {
    if (allow_const && coin(0.4)) return Expr::constant(uniform(-9, 9));
    std::vector<std::string> readable(kInputs);
    readable.insert(readable.end(), defined.begin(), defined.end());
    return Expr::var(pick(readable));
  }

  Expr expr(int depth, const std::set<std::string>& defined) {
    if (depth == 0 || coin(0.3)) return leaf(defined);
    const double roll = std::uniform_real_distribution<double>(0, 1)(rng_);
    if (roll < 0.15)
      return Expr::binary(ArithOp::Mul, leaf(defined, false), Expr::constant(uniform(-3, 3)));
    const ArithOp op = roll < 0.6 ? ArithOp::Add : ArithOp::Sub;
    return Expr::binary(op, expr(depth - 1, defined), expr(depth - 1, defined));
  }

  Statement assignment(std::set<std::string>& defined) {
    Statement s;
    s.line = next_line();
    const std::string target = pick(kLocals);
    s.node = Assign{target, expr(2, defined)};
    defined.insert(target);
    --lines_left_;
    return s;
  }

  Statement branch(int depth, std::set<std::string>& defined) {
    Statement s;
    s.line = next_line();
    --lines_left_;
    --ifs_left_;
    static const RelOp ops[] = {RelOp::Lt, RelOp::Gt, RelOp::Le, RelOp::Ge, RelOp::Eq, RelOp::Ne};
    IfThenElse node;
    node.condition = Condition{ops[uniform(0, 5)], expr(1, defined), expr(1, defined)};
    std::set<std::string> then_defined = defined;
    std::set<std::string> else_defined = defined;
    node.then_branch = body(uniform(1, 3), depth + 1, then_defined);
    if (coin(0.75)) node.else_branch = body(uniform(1, 3), depth + 1, else_defined);
    std::set<std::string> both;
    std::set_intersection(then_defined.begin(), then_defined.end(), else_defined.begin(),
                          else_defined.end(), std::inserter(both, both.end()));
    defined = std::move(both);
    s.node = std::move(node);
    return s;
  }

  std::vector<Statement> body(int wanted, int depth, std::set<std::string>& defined) {
    std::vector<Statement> out;
    for (int i = 0; i < wanted && lines_left_ > 0; ++i) {
      if (ifs_left_ > 0 && depth < limits_.max_depth && lines_left_ >= 2 && coin(0.3))
        out.push_back(branch(depth, defined));
      else
        out.push_back(assignment(defined));
    }
    if (out.empty()) out.push_back(assignment(defined));
    return out;
  }

  std::mt19937_64& rng_;
  GeneratorLimits limits_;
  int lines_left_;
  int ifs_left_;
  int line_ = 0;
};

template <typename Fn>
void rewrite_statement(std::vector<Statement>& body, int line, Fn&& fn) {
  for (auto& s : body) {
    if (s.line == line) {
      fn(s);
      return;
    }
    if (s.is_if()) {
      rewrite_statement(s.if_then_else().then_branch, line, fn);
      rewrite_statement(s.if_then_else().else_branch, line, fn);
    }
  }
}

void collect_sites(const Expr& e, std::optional<ArithOp> parent, bool first, int line,
                   std::size_t& index, std::vector<ConstantSite>& out) {
  if (e.is_leaf()) {
    if (e.kind == Expr::Kind::Const && !first && parent &&
        (*parent == ArithOp::Add || *parent == ArithOp::Sub))
      out.push_back({line, index, e.value});
    ++index;
    return;
  }
  collect_sites(e.lhs(), e.op, first, line, index, out);
  collect_sites(e.rhs(), e.op, false, line, index, out);
}

}  // namespace

GeneratedProgram random_program(std::mt19937_64& rng, const GeneratorLimits& limits) {
  return Generator(rng, limits).run();
}

Env random_inputs(const Program& program, std::mt19937_64& rng) {
  Env env;
  std::uniform_int_distribution<std::int64_t> value(-20, 20);
  for (const auto& name : program.inputs) env[name] = value(rng);
  return env;
}

std::vector<ConstantSite> mutable_constants(const Program& program) {
  std::vector<ConstantSite> out;
  for_each_statement(program, [&](const Statement& s) {
    if (!s.is_assign()) return;
    std::size_t index = 0;
    collect_sites(s.assign().value, std::nullopt, true, s.line, index, out);
  });
  return out;
}

Program with_leaf_value(const Program& program, const ConstantSite& site, std::int64_t value) {
  Program out = program;
  rewrite_statement(out.statements, site.line, [&](Statement& s) {
    std::size_t index = 0;
    auto walk = [&](auto& self, Expr& e) -> void {
      if (e.is_leaf()) {
        if (index++ == site.leaf) e.value = value;
        return;
      }
      self(self, e.operands[0]);
      self(self, e.operands[1]);
    };
    walk(walk, s.assign().value);
  });
  return out;
}

Program with_rhs(const Program& program, int line, Expr value) {
  Program out = program;
  rewrite_statement(out.statements, line, [&](Statement& s) {
    if (s.is_assign()) s.assign().value = value;
  });
  out.inputs = infer_inputs(out.statements);
  return out;
}

}  // namespace plofc::testing
