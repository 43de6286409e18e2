#include <algorithm>
#include <charconv>
#include <cctype>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "plofc/error.hpp"
#include "plofc/lang.hpp"

namespace plofc {
namespace {

enum class Tok {
  Ident, Int, If, Then, Else,
  LParen, RParen, LBrace, RBrace, Semi,
  Assign, Plus, Minus, Star, Slash,
  Lt, Gt, Le, Ge, EqEq, Ne,
  End,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int line = 0;      // statement line this token belongs to (0: unlabelled)
  int physical = 0;  // physical line in the source text
  int column = 0;
};

std::string describe(const Token& t) {
  if (t.kind == Tok::End) return "end of input";
  return "'" + t.text + "'";
}

std::vector<Token> lex_line(std::string_view text, int physical) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto push = [&](Tok kind, std::size_t start, std::size_t len) {
    out.push_back({kind, std::string(text.substr(start, len)), physical,
                   physical, static_cast<int>(start) + 1});
  };
  while (i < text.size()) {
    const char c = text[i];
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
        ++j;
      const std::string_view word = text.substr(i, j - i);
      Tok kind = Tok::Ident;
      if (word == "if") kind = Tok::If;
      else if (word == "then") kind = Tok::Then;
      else if (word == "else") kind = Tok::Else;
      push(kind, i, j - i);
      i = j;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      push(Tok::Int, i, j - i);
      i = j;
      continue;
    }
    const char next = i + 1 < text.size() ? text[i + 1] : '\0';
    auto two = [&](Tok kind) {
      push(kind, i, 2);
      i += 2;
    };
    auto one = [&](Tok kind) {
      push(kind, i, 1);
      ++i;
    };
    switch (c) {
      case '(': one(Tok::LParen); break;
      case ')': one(Tok::RParen); break;
      case '{': one(Tok::LBrace); break;
      case '}': one(Tok::RBrace); break;
      case ';': one(Tok::Semi); break;
      case '+': one(Tok::Plus); break;
      case '-': one(Tok::Minus); break;
      case '*': one(Tok::Star); break;
      case '/': one(Tok::Slash); break;
      case '<': next == '=' ? two(Tok::Le) : one(Tok::Lt); break;
      case '>': next == '=' ? two(Tok::Ge) : one(Tok::Gt); break;
      case '=': next == '=' ? two(Tok::EqEq) : one(Tok::Assign); break;
      case '!':
        if (next == '=') {
          two(Tok::Ne);
          break;
        }
        [[fallthrough]];
      default:
        throw SyntaxError(physical, static_cast<int>(i) + 1,
                          std::string("unexpected character '") + c + "'");
    }
  }
  return out;
}

std::int64_t parse_integer(const Token& digits, bool negative) {
  const std::string text = (negative ? "-" : "") + digits.text;
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw SyntaxError(digits.physical, digits.column,
                      "integer literal out of 64-bit range");
  return value;
}

struct Lexed {
  std::vector<Token> tokens;
  std::map<std::string, std::int64_t, std::less<>> constants;
};

bool is_constant_declaration(const std::vector<Token>& t) {
  std::size_t i = 0;
  if (t.size() < 3 || t[0].kind != Tok::Ident || t[1].kind != Tok::Assign) return false;
  i = 2;
  if (t[i].kind == Tok::Minus) ++i;
  if (i >= t.size() || t[i].kind != Tok::Int) return false;
  ++i;
  if (i < t.size() && t[i].kind == Tok::Semi) ++i;
  return i == t.size();
}

Lexed lex(std::string_view source) {
  std::vector<std::vector<Token>> lines;
  std::size_t start = 0;
  int physical = 1;
  while (start <= source.size()) {
    std::size_t end = source.find('\n', start);
    if (end == std::string_view::npos) end = source.size();
    std::string_view text = source.substr(start, end - start);
    if (!text.empty() && text.back() == '\r') text.remove_suffix(1);
    lines.push_back(lex_line(text, physical));
    ++physical;
    start = end + 1;
  }

  // A leading integer followed by more tokens is a line label.
  std::vector<std::optional<int>> labels(lines.size());
  std::optional<std::size_t> first_label;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto& toks = lines[i];
    if (toks.size() >= 2 && toks[0].kind == Tok::Int) {
      const std::int64_t label = parse_integer(toks[0], false);
      if (label <= 0 || label > 1'000'000'000)
        throw SyntaxError(toks[0].physical, toks[0].column, "line label out of range");
      labels[i] = static_cast<int>(label);
      toks.erase(toks.begin());
      if (!first_label) first_label = i;
    }
  }

  Lexed out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto& toks = lines[i];
    if (toks.empty()) continue;
    if (first_label && i < *first_label) {
      if (!is_constant_declaration(toks))
        throw SyntaxError(toks[0].physical, toks[0].column,
                          "only constant declarations may precede labelled lines");
      const bool negative = toks[2].kind == Tok::Minus;
      const std::int64_t value = parse_integer(toks[negative ? 3 : 2], negative);
      if (!out.constants.emplace(toks[0].text, value).second)
        throw SyntaxError(toks[0].physical, toks[0].column,
                          "constant '" + toks[0].text + "' declared twice");
      continue;
    }
    const int line = first_label ? labels[i].value_or(0) : static_cast<int>(i) + 1;
    for (auto& t : toks) {
      t.line = line;
      out.tokens.push_back(std::move(t));
    }
  }
  out.tokens.push_back({Tok::End, "", 0, physical - 1, 1});
  return out;
}

class Parser {
 public:
  explicit Parser(Lexed lexed)
      : tokens_(std::move(lexed.tokens)), constants_(std::move(lexed.constants)) {}

  std::vector<Statement> parse() {
    auto body = parse_sequence();
    if (peek().kind != Tok::End)
      fail(peek(), "unexpected " + describe(peek()));
    return body;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  const Token& advance() {
    const Token& t = tokens_[pos_];
    if (pos_ + 1 < tokens_.size()) ++pos_;
    return t;
  }
  bool accept(Tok kind) {
    if (peek().kind != kind) return false;
    advance();
    return true;
  }
  const Token& expect(Tok kind, std::string_view what) {
    if (peek().kind != kind)
      fail(peek(), "expected " + std::string(what) + ", found " + describe(peek()));
    return advance();
  }
  [[noreturn]] void fail(const Token& t, const std::string& message) const {
    throw SyntaxError(t.physical, t.column, message);
  }

  std::vector<Statement> parse_sequence() {
    std::vector<Statement> out;
    while (peek().kind != Tok::End && peek().kind != Tok::RBrace)
      out.push_back(parse_statement());
    return out;
  }

  std::vector<Statement> parse_body() {
    if (accept(Tok::LBrace)) {
      auto body = parse_sequence();
      expect(Tok::RBrace, "'}'");
      return body;
    }
    std::vector<Statement> body;
    body.push_back(parse_statement());
    return body;
  }

  int claim_line(const Token& t) {
    if (t.line == 0) fail(t, "statement without a line label");
    if (t.line <= last_line_)
      fail(t, t.line == last_line_ ? "more than one statement on line " +
                                         std::to_string(t.line)
                                   : "line labels must increase");
    last_line_ = t.line;
    return t.line;
  }

  void require_same_line(const Token& anchor, std::size_t from, std::size_t to) const {
    for (std::size_t i = from; i < to; ++i)
      if (tokens_[i].physical != anchor.physical)
        fail(tokens_[i], "a statement must fit on one line");
  }

  Statement parse_statement() {
    const Token& first = peek();
    if (first.kind == Tok::If) return parse_if();
    if (first.kind == Tok::Ident) return parse_assign();
    fail(first, "expected a statement, found " + describe(first));
  }

  Statement parse_assign() {
    const std::size_t begin = pos_;
    const Token& target = advance();
    Statement s;
    s.line = claim_line(target);
    if (constants_.count(target.text))
      fail(target, "cannot assign to constant '" + target.text + "'");
    expect(Tok::Assign, "'='");
    Expr value = parse_expr();
    accept(Tok::Semi);
    require_same_line(target, begin, pos_);
    s.node = Assign{target.text, std::move(value)};
    return s;
  }

  Statement parse_if() {
    const std::size_t begin = pos_;
    const Token& keyword = advance();
    Statement s;
    s.line = claim_line(keyword);
    expect(Tok::LParen, "'('");
    Condition cond;
    cond.lhs = parse_expr();
    cond.op = parse_relop();
    cond.rhs = parse_expr();
    expect(Tok::RParen, "')'");
    require_same_line(keyword, begin, pos_);
    IfThenElse node;
    node.condition = std::move(cond);
    expect(Tok::Then, "'then'");
    node.then_branch = parse_body();
    if (accept(Tok::Else)) node.else_branch = parse_body();
    s.node = std::move(node);
    return s;
  }

  RelOp parse_relop() {
    switch (peek().kind) {
      case Tok::Lt: advance(); return RelOp::Lt;
      case Tok::Gt: advance(); return RelOp::Gt;
      case Tok::Le: advance(); return RelOp::Le;
      case Tok::Ge: advance(); return RelOp::Ge;
      case Tok::EqEq: advance(); return RelOp::Eq;
      case Tok::Ne: advance(); return RelOp::Ne;
      default: fail(peek(), "expected a comparison operator, found " + describe(peek()));
    }
  }

  Expr parse_expr() {
    Expr lhs = parse_term();
    for (;;) {
      if (accept(Tok::Plus)) lhs = Expr::binary(ArithOp::Add, std::move(lhs), parse_term());
      else if (accept(Tok::Minus)) lhs = Expr::binary(ArithOp::Sub, std::move(lhs), parse_term());
      else return lhs;
    }
  }

  Expr parse_term() {
    Expr lhs = parse_factor();
    for (;;) {
      if (accept(Tok::Star)) {
        lhs = Expr::binary(ArithOp::Mul, std::move(lhs), parse_factor());
      } else if (peek().kind == Tok::Slash) {
        fail(peek(), "division is not supported");
      } else {
        return lhs;
      }
    }
  }

  Expr parse_factor() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Int:
        return Expr::constant(parse_integer(advance(), false));
      case Tok::Minus:
        advance();
        if (peek().kind != Tok::Int) fail(peek(), "expected an integer after '-'");
        return Expr::constant(parse_integer(advance(), true));
      case Tok::Ident: {
        const Token& id = advance();
        if (auto it = constants_.find(id.text); it != constants_.end())
          return Expr::const_ref(id.text, it->second);
        return Expr::var(id.text);
      }
      case Tok::LParen: {
        advance();
        Expr inner = parse_expr();
        expect(Tok::RParen, "')'");
        return inner;
      }
      default:
        fail(t, "expected an operand, found " + describe(t));
    }
  }

  std::vector<Token> tokens_;
  std::map<std::string, std::int64_t, std::less<>> constants_;
  std::size_t pos_ = 0;
  int last_line_ = 0;
};

void collect_reads(const Expr& e, std::vector<std::string>& out) {
  for (const Expr* leaf : leaves(e))
    if (leaf->kind == Expr::Kind::Var) out.push_back(leaf->name);
}

std::vector<std::string> reads_of(const Statement& s) {
  std::vector<std::string> out;
  if (s.is_assign()) {
    collect_reads(s.assign().value, out);
  } else {
    collect_reads(s.if_then_else().condition.lhs, out);
    collect_reads(s.if_then_else().condition.rhs, out);
  }
  return out;
}

// A read is legal once some earlier statement on some path assigned the
// variable. Paths that skip the assignment fail at run time instead.
std::set<std::string> check_assigned(const std::vector<Statement>& body,
                                     std::set<std::string> defined) {
  for (const auto& s : body) {
    for (const auto& name : reads_of(s))
      if (!defined.count(name)) throw UseBeforeAssign(name, s.line);
    if (s.is_assign()) {
      defined.insert(s.assign().target);
    } else {
      const auto& node = s.if_then_else();
      auto then_defined = check_assigned(node.then_branch, defined);
      auto else_defined = check_assigned(node.else_branch, defined);
      defined.insert(then_defined.begin(), then_defined.end());
      defined.insert(else_defined.begin(), else_defined.end());
    }
  }
  return defined;
}

}  // namespace

std::vector<std::string> infer_inputs(const std::vector<Statement>& statements) {
  std::set<std::string> assigned;
  std::vector<std::string> reads;
  for_each_statement(statements, [&](const Statement& s) {
    if (s.is_assign()) assigned.insert(s.assign().target);
    for (auto& name : reads_of(s)) reads.push_back(std::move(name));
  });
  std::vector<std::string> inputs;
  for (const auto& name : reads)
    if (!assigned.count(name) &&
        std::find(inputs.begin(), inputs.end(), name) == inputs.end())
      inputs.push_back(name);
  return inputs;
}

Program parse_program(std::string_view source, const ParseOptions& options) {
  Program program;
  program.statements = Parser(lex(source)).parse();
  program.inputs = infer_inputs(program.statements);
  const auto& declared = options.inputs ? *options.inputs : program.inputs;
  check_assigned(program.statements, {declared.begin(), declared.end()});
  return program;
}

}  // namespace plofc
