#pragma once

// A small arithmetic expression language in one free variable `t`.
//
// Grammar (whitespace is insignificant):
//
//   expr    := term (('+' | '-') term)*
//   term    := factor (('*' | '/') factor)*
//   factor  := unary ('^' factor)?          '^' is right-associative
//   unary   := '-' unary | primary
//   primary := number | 't' | 'pi' | 'e' | ident '(' expr ')' | '(' expr ')'
//
// Unary minus is parsed before '^', so "-t^2" is (-t)^2 while "2^-t" is
// 2^(-t). Write "-(t^2)" for the negated square.
//
// Functions: sin cos exp ln sqrt abs floor frac gamma digamma.

#include <array>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>
#include <variant>

#include "adiff/error.hpp"
#include "adiff/numkit.hpp"

namespace adiff::expr {

enum class BinaryOp { Add, Sub, Mul, Div, Pow };
enum class Func { Sin, Cos, Exp, Ln, Sqrt, Abs, Floor, Frac, Gamma, Digamma };
enum class ConstantKind { Pi, E };

inline constexpr std::array<std::pair<std::string_view, Func>, 10> kFunctionNames = {{
    {"sin", Func::Sin},
    {"cos", Func::Cos},
    {"exp", Func::Exp},
    {"ln", Func::Ln},
    {"sqrt", Func::Sqrt},
    {"abs", Func::Abs},
    {"floor", Func::Floor},
    {"frac", Func::Frac},
    {"gamma", Func::Gamma},
    {"digamma", Func::Digamma},
}};

inline std::string_view function_name(Func fn) {
  for (const auto& [name, f] : kFunctionNames)
    if (f == fn) return name;
  return "?";
}

inline std::optional<Func> lookup_function(std::string_view name) {
  for (const auto& [n, f] : kFunctionNames)
    if (n == name) return f;
  return std::nullopt;
}

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Number {
  double value;
};
struct Variable {};
struct Constant {
  ConstantKind kind;
};
struct Negate {
  NodePtr operand;
};
struct Binary {
  BinaryOp op;
  NodePtr lhs;
  NodePtr rhs;
};
struct Call {
  Func fn;
  NodePtr arg;
};

struct Node {
  std::variant<Number, Variable, Constant, Negate, Binary, Call> data;
  std::size_t position = 0;  // source offset, used in error reports
};

// Node factories.
inline NodePtr number(double v, std::size_t pos = 0) { return std::make_shared<const Node>(Node{Number{v}, pos}); }
inline NodePtr variable(std::size_t pos = 0) { return std::make_shared<const Node>(Node{Variable{}, pos}); }
inline NodePtr constant(ConstantKind k, std::size_t pos = 0) {
  return std::make_shared<const Node>(Node{Constant{k}, pos});
}
inline NodePtr negate(NodePtr operand, std::size_t pos = 0) {
  return std::make_shared<const Node>(Node{Negate{std::move(operand)}, pos});
}
inline NodePtr binary(BinaryOp op, NodePtr lhs, NodePtr rhs, std::size_t pos = 0) {
  return std::make_shared<const Node>(Node{Binary{op, std::move(lhs), std::move(rhs)}, pos});
}
inline NodePtr call(Func fn, NodePtr arg, std::size_t pos = 0) {
  return std::make_shared<const Node>(Node{Call{fn, std::move(arg)}, pos});
}

/// Structural equality; source positions are ignored.
inline bool structurally_equal(const Node& a, const Node& b) {
  if (a.data.index() != b.data.index()) return false;
  return std::visit(
      [&b](const auto& lhs) -> bool {
        using T = std::decay_t<decltype(lhs)>;
        const auto& rhs = std::get<T>(b.data);
        if constexpr (std::is_same_v<T, Number>) {
          return lhs.value == rhs.value;
        } else if constexpr (std::is_same_v<T, Variable>) {
          return true;
        } else if constexpr (std::is_same_v<T, Constant>) {
          return lhs.kind == rhs.kind;
        } else if constexpr (std::is_same_v<T, Negate>) {
          return structurally_equal(*lhs.operand, *rhs.operand);
        } else if constexpr (std::is_same_v<T, Binary>) {
          return lhs.op == rhs.op && structurally_equal(*lhs.lhs, *rhs.lhs) && structurally_equal(*lhs.rhs, *rhs.rhs);
        } else {
          return lhs.fn == rhs.fn && structurally_equal(*lhs.arg, *rhs.arg);
        }
      },
      a.data);
}

namespace detail {

inline double integer_power(double base, long exponent, std::size_t pos) {
  double result = 1.0;
  for (long i = 0; i < (exponent < 0 ? -exponent : exponent); ++i) result *= base;
  if (exponent < 0) {
    if (result == 0.0) throw EvalError(ErrorCode::DivisionByZero, pos, "zero raised to a negative power");
    result = 1.0 / result;
  }
  return result;
}

inline double real_power(double base, double exponent, std::size_t pos) {
  if (exponent == std::floor(exponent) && std::abs(exponent) <= 32.0)
    return integer_power(base, static_cast<long>(exponent), pos);
  if (base > 0.0) return std::pow(base, exponent);
  if (base == 0.0) {
    if (exponent > 0.0) return 0.0;
    throw EvalError(ErrorCode::DivisionByZero, pos, "zero raised to a negative power");
  }
  if (exponent == std::floor(exponent)) return std::pow(base, exponent);
  throw EvalError(ErrorCode::DomainError, pos, "negative base with non-integer exponent");
}

inline double apply_function(Func fn, double x, std::size_t pos) {
  switch (fn) {
    case Func::Sin: return std::sin(x);
    case Func::Cos: return std::cos(x);
    case Func::Exp: return std::exp(x);
    case Func::Ln:
      if (!(x > 0.0)) throw EvalError(ErrorCode::DomainError, pos, "ln of a non-positive number");
      return std::log(x);
    case Func::Sqrt:
      if (x < 0.0) throw EvalError(ErrorCode::DomainError, pos, "sqrt of a negative number");
      return std::sqrt(x);
    case Func::Abs: return std::abs(x);
    case Func::Floor: return std::floor(x);
    case Func::Frac: return x - std::floor(x);
    case Func::Gamma:
    case Func::Digamma:
      try {
        return fn == Func::Gamma ? numkit::gamma(x) : numkit::digamma(x);
      } catch (const Error& e) {
        throw EvalError(e.code(), pos, std::string(function_name(fn)) + " undefined at " + std::to_string(x));
      }
  }
  return 0.0;
}

}  // namespace detail

/// Evaluates `node` at t.
inline double evaluate(const Node& node, double t) {
  return std::visit(
      [&](const auto& n) -> double {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Number>) {
          return n.value;
        } else if constexpr (std::is_same_v<T, Variable>) {
          return t;
        } else if constexpr (std::is_same_v<T, Constant>) {
          return n.kind == ConstantKind::Pi ? std::numbers::pi : std::numbers::e;
        } else if constexpr (std::is_same_v<T, Negate>) {
          return -evaluate(*n.operand, t);
        } else if constexpr (std::is_same_v<T, Binary>) {
          const double a = evaluate(*n.lhs, t);
          const double b = evaluate(*n.rhs, t);
          switch (n.op) {
            case BinaryOp::Add: return a + b;
            case BinaryOp::Sub: return a - b;
            case BinaryOp::Mul: return a * b;
            case BinaryOp::Div:
              if (b == 0.0) throw EvalError(ErrorCode::DivisionByZero, node.position, "division by zero");
              return a / b;
            case BinaryOp::Pow: return detail::real_power(a, b, node.position);
          }
          return 0.0;
        } else {
          return detail::apply_function(n.fn, evaluate(*n.arg, t), node.position);
        }
      },
      node.data);
}

namespace detail {

class Parser {
 public:
  explicit Parser(std::string_view source) : src_(source) {}

  NodePtr parse_all() {
    NodePtr root = parse_expr();
    skip_space();
    if (pos_ < src_.size()) throw ParseError(pos_, "unexpected trailing input", "operator or end of input");
    return root;
  }

 private:
  static constexpr int kMaxDepth = 256;

  struct DepthGuard {
    explicit DepthGuard(Parser& p) : parser(p) {
      if (++parser.depth_ > kMaxDepth) throw ParseError(parser.pos_, "expression nested too deeply");
    }
    ~DepthGuard() { --parser.depth_; }
    Parser& parser;
  };

  void skip_space() {
    while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t' || src_[pos_] == '\n' || src_[pos_] == '\r'))
      ++pos_;
  }

  char peek() {
    skip_space();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  bool at_end() {
    skip_space();
    return pos_ >= src_.size();
  }

  static bool is_digit(char c) { return c >= '0' && c <= '9'; }
  static bool is_ident_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }
  static bool is_ident_char(char c) { return is_ident_start(c) || is_digit(c); }

  NodePtr parse_expr() {
    NodePtr lhs = parse_term();
    while (!at_end() && (peek() == '+' || peek() == '-')) {
      const std::size_t op_pos = pos_;
      const BinaryOp op = src_[pos_++] == '+' ? BinaryOp::Add : BinaryOp::Sub;
      lhs = binary(op, std::move(lhs), parse_term(), op_pos);
    }
    return lhs;
  }

  NodePtr parse_term() {
    NodePtr lhs = parse_factor();
    while (!at_end() && (peek() == '*' || peek() == '/')) {
      const std::size_t op_pos = pos_;
      const BinaryOp op = src_[pos_++] == '*' ? BinaryOp::Mul : BinaryOp::Div;
      lhs = binary(op, std::move(lhs), parse_factor(), op_pos);
    }
    return lhs;
  }

  NodePtr parse_factor() {
    NodePtr base = parse_unary();
    if (!at_end() && peek() == '^') {
      const std::size_t op_pos = pos_++;
      DepthGuard guard(*this);
      return binary(BinaryOp::Pow, std::move(base), parse_factor(), op_pos);
    }
    return base;
  }

  NodePtr parse_unary() {
    if (!at_end() && peek() == '-') {
      const std::size_t op_pos = pos_++;
      DepthGuard guard(*this);
      return negate(parse_unary(), op_pos);
    }
    return parse_primary();
  }

  NodePtr parse_primary() {
    if (at_end()) throw ParseError(pos_, "unexpected end of input", "primary");
    const std::size_t start = pos_;
    const char c = src_[pos_];

    if (is_digit(c) || (c == '.' && pos_ + 1 < src_.size() && is_digit(src_[pos_ + 1]))) return parse_number();

    if (is_ident_start(c)) {
      std::size_t end = pos_;
      while (end < src_.size() && is_ident_char(src_[end])) ++end;
      const std::string_view name = src_.substr(pos_, end - pos_);
      pos_ = end;
      if (name == "t") return variable(start);
      if (name == "pi") return constant(ConstantKind::Pi, start);
      if (name == "e") return constant(ConstantKind::E, start);
      const auto fn = lookup_function(name);
      if (!fn) throw ParseError(start, "unknown function '" + std::string(name) + "'", "function name");
      if (peek() != '(') throw ParseError(pos_, "missing argument list", "'('");
      ++pos_;
      DepthGuard guard(*this);
      NodePtr arg = parse_expr();
      if (peek() != ')') throw ParseError(pos_, "unclosed argument list", "')'");
      ++pos_;
      return call(*fn, std::move(arg), start);
    }

    if (c == '(') {
      ++pos_;
      DepthGuard guard(*this);
      NodePtr inner = parse_expr();
      if (peek() != ')') throw ParseError(pos_, "unclosed parenthesis", "')'");
      ++pos_;
      return inner;
    }

    throw ParseError(pos_, "unexpected character", "primary");
  }

  NodePtr parse_number() {
    const std::size_t start = pos_;
    std::size_t end = pos_;
    while (end < src_.size() && is_digit(src_[end])) ++end;
    if (end < src_.size() && src_[end] == '.') {
      ++end;
      while (end < src_.size() && is_digit(src_[end])) ++end;
    }
    if (end < src_.size() && (src_[end] == 'e' || src_[end] == 'E')) {
      std::size_t exp_end = end + 1;
      if (exp_end < src_.size() && (src_[exp_end] == '+' || src_[exp_end] == '-')) ++exp_end;
      if (exp_end < src_.size() && is_digit(src_[exp_end])) {
        while (exp_end < src_.size() && is_digit(src_[exp_end])) ++exp_end;
        end = exp_end;
      }
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(src_.data() + start, src_.data() + end, value);
    if (ec == std::errc::result_out_of_range) throw ParseError(start, "number literal out of range");
    if (ec != std::errc() || ptr != src_.data() + end) throw ParseError(start, "malformed number literal", "number");
    pos_ = end;
    return number(value, start);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int depth_ = 0;
};

enum class Slot { None, AddRhs, MulLhs, MulRhs, PowBase, PowExponent, NegOperand };

inline std::string format_number(double v) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

inline bool needs_parens(const Node& node, Slot slot) {
  const auto* bin = std::get_if<Binary>(&node.data);
  if (!bin) return false;
  const bool additive = bin->op == BinaryOp::Add || bin->op == BinaryOp::Sub;
  const bool multiplicative = bin->op == BinaryOp::Mul || bin->op == BinaryOp::Div;
  switch (slot) {
    case Slot::None: return false;
    case Slot::AddRhs: return additive;
    case Slot::MulLhs: return additive;
    case Slot::MulRhs: return additive || multiplicative;
    case Slot::PowBase: return true;
    case Slot::PowExponent: return additive || multiplicative;
    case Slot::NegOperand: return true;
  }
  return false;
}

inline void format_into(std::string& out, const Node& node, Slot slot);

inline void format_child(std::string& out, const Node& node, Slot slot) {
  if (needs_parens(node, slot)) {
    out += '(';
    format_into(out, node, Slot::None);
    out += ')';
  } else {
    format_into(out, node, slot);
  }
}

inline void format_into(std::string& out, const Node& node, Slot) {
  std::visit(
      [&out](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Number>) {
          out += format_number(n.value);
        } else if constexpr (std::is_same_v<T, Variable>) {
          out += 't';
        } else if constexpr (std::is_same_v<T, Constant>) {
          out += n.kind == ConstantKind::Pi ? "pi" : "e";
        } else if constexpr (std::is_same_v<T, Negate>) {
          out += '-';
          format_child(out, *n.operand, Slot::NegOperand);
        } else if constexpr (std::is_same_v<T, Binary>) {
          switch (n.op) {
            case BinaryOp::Add:
            case BinaryOp::Sub:
              format_child(out, *n.lhs, Slot::None);
              out += n.op == BinaryOp::Add ? " + " : " - ";
              format_child(out, *n.rhs, Slot::AddRhs);
              break;
            case BinaryOp::Mul:
            case BinaryOp::Div:
              format_child(out, *n.lhs, Slot::MulLhs);
              out += n.op == BinaryOp::Mul ? " * " : " / ";
              format_child(out, *n.rhs, Slot::MulRhs);
              break;
            case BinaryOp::Pow:
              format_child(out, *n.lhs, Slot::PowBase);
              out += " ^ ";
              format_child(out, *n.rhs, Slot::PowExponent);
              break;
          }
        } else {
          out += function_name(n.fn);
          out += '(';
          format_into(out, *n.arg, Slot::None);
          out += ')';
        }
      },
      node.data);
}

}  // namespace detail

/// Parses `source`; throws ParseError at the first offending token.
inline NodePtr parse_node(std::string_view source) { return detail::Parser(source).parse_all(); }

/// Canonical rendering with the minimum parentheses needed for
/// parse(format(x)) to reproduce x. Binary operators are surrounded by
/// single spaces ("t + 2 * t"); numbers use the shortest round-trip form.
inline std::string format(const Node& node) {
  std::string out;
  detail::format_into(out, node, detail::Slot::None);
  return out;
}

/// A parsed expression. Immutable and cheap to copy; usable directly as a
/// real function of t.
class Expr {
 public:
  explicit Expr(NodePtr root) : root_(std::move(root)) {}

  static Expr parse(std::string_view source) { return Expr(parse_node(source)); }

  double operator()(double t) const { return evaluate(*root_, t); }

  const Node& root() const { return *root_; }
  const NodePtr& root_ptr() const { return root_; }
  std::string to_string() const { return format(*root_); }

  friend bool operator==(const Expr& a, const Expr& b) { return structurally_equal(*a.root_, *b.root_); }

 private:
  NodePtr root_;
};

inline Expr parse(std::string_view source) { return Expr::parse(source); }
inline std::string format(const Expr& e) { return format(e.root()); }
inline double evaluate(const Expr& e, double t) { return e(t); }

}  // namespace adiff::expr
