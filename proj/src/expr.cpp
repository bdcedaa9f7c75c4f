#include "conelw/expr.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace conelw {

namespace {

using Kind = ExprNode::Kind;

struct FuncInfo {
  const char* name;
  Func func;
  int arity;
};

constexpr std::array<FuncInfo, 10> kFuncs{{
    {"exp", Func::Exp, 1},
    {"log", Func::Log, 1},
    {"sin", Func::Sin, 1},
    {"cos", Func::Cos, 1},
    {"sqrt", Func::Sqrt, 1},
    {"abs", Func::Abs, 1},
    {"min", Func::Min, 2},
    {"max", Func::Max, 2},
    {"clamp", Func::Clamp, 3},
    {"ramp", Func::Ramp, 3},
}};

const FuncInfo* find_func(std::string_view name) {
  for (const auto& f : kFuncs)
    if (name == f.name) return &f;
  return nullptr;
}

ExprNodePtr make_leaf(Kind kind, double number = 0.0) {
  auto n = std::make_shared<ExprNode>();
  n->kind = kind;
  n->number = number;
  return n;
}

ExprNodePtr make_node(Kind kind, std::vector<ExprNodePtr> args) {
  auto n = std::make_shared<ExprNode>();
  n->kind = kind;
  n->args = std::move(args);
  return n;
}

ExprNodePtr make_call(Func f, std::vector<ExprNodePtr> args) {
  auto n = std::make_shared<ExprNode>();
  n->kind = Kind::Call;
  n->func = f;
  n->args = std::move(args);
  return n;
}

std::string describe(std::string_view src, std::size_t pos) {
  if (pos >= src.size()) return "end of input";
  return "'" + std::string(1, src[pos]) + "'";
}

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  ExprNodePtr parse_all() {
    auto e = parse_expr();
    skip_ws();
    if (pos_ != src_.size())
      fail({"operator", "')'", "end of input"});
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(std::vector<std::string> expected) {
    skip_ws();
    std::ostringstream msg;
    msg << "syntax error at byte " << pos_ << ": unexpected " << describe(src_, pos_)
        << ", expected one of {";
    for (std::size_t i = 0; i < expected.size(); ++i) msg << (i ? ", " : "") << expected[i];
    msg << "}";
    throw ParseError(ParseError::Kind::Syntax, pos_, msg.str(), std::move(expected));
  }

  ExprNodePtr parse_expr() {
    auto lhs = parse_term();
    for (;;) {
      if (accept('+'))
        lhs = make_node(Kind::Add, {lhs, parse_term()});
      else if (accept('-'))
        lhs = make_node(Kind::Sub, {lhs, parse_term()});
      else
        return lhs;
    }
  }

  ExprNodePtr parse_term() {
    auto lhs = parse_unary();
    for (;;) {
      if (accept('*'))
        lhs = make_node(Kind::Mul, {lhs, parse_unary()});
      else if (accept('/'))
        lhs = make_node(Kind::Div, {lhs, parse_unary()});
      else
        return lhs;
    }
  }

  ExprNodePtr parse_unary() {
    if (accept('-')) return make_node(Kind::Neg, {parse_unary()});
    return parse_power();
  }

  ExprNodePtr parse_power() {
    auto base = parse_primary();
    if (accept('^')) return make_node(Kind::Pow, {base, parse_unary()});
    return base;
  }

  ExprNodePtr parse_primary() {
    skip_ws();
    if (pos_ >= src_.size()) fail({"number", "identifier", "'('", "'-'"});
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
    if (accept('(')) {
      auto inner = parse_expr();
      if (!accept(')')) fail({"operator", "')'"});
      return inner;
    }
    fail({"number", "identifier", "'('", "'-'"});
  }

  ExprNodePtr parse_number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        ++pos_;
        ++n;
      }
      return n;
    };
    std::size_t mantissa = digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      mantissa += digits();
    }
    if (mantissa == 0) {
      pos_ = start + 1;
      fail({"digit"});
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      ++pos_;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
      if (digits() == 0) fail({"digit"});
    }
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(src_.data() + start, src_.data() + pos_, value);
    if (ec != std::errc() || ptr != src_.data() + pos_ || !std::isfinite(value)) {
      throw ParseError(ParseError::Kind::Syntax, start,
                       "syntax error at byte " + std::to_string(start) +
                           ": numeric literal out of range",
                       {"finite number"});
    }
    return make_leaf(Kind::Number, value);
  }

  ExprNodePtr parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
      ++pos_;
    const std::string_view name = src_.substr(start, pos_ - start);

    const FuncInfo* info = find_func(name);
    skip_ws();
    const bool call = pos_ < src_.size() && src_[pos_] == '(';
    if (!call) {
      if (name == "t") return make_leaf(Kind::VarT);
      if (name == "y") return make_leaf(Kind::VarY);
      if (info) fail({"'('"});
      throw ParseError(ParseError::Kind::UnknownIdentifier, start,
                       "unknown identifier '" + std::string(name) + "' at byte " +
                           std::to_string(start));
    }
    if (!info) {
      throw ParseError(ParseError::Kind::UnknownIdentifier, start,
                       "unknown function '" + std::string(name) + "' at byte " +
                           std::to_string(start));
    }
    ++pos_;  // '('
    std::vector<ExprNodePtr> args;
    args.push_back(parse_expr());
    while (accept(',')) args.push_back(parse_expr());
    if (!accept(')')) fail({"','", "')'"});
    if (static_cast<int>(args.size()) != info->arity) {
      throw ParseError(ParseError::Kind::WrongArity, start,
                       std::string(info->name) + " expects " + std::to_string(info->arity) +
                           " argument(s), got " + std::to_string(args.size()) + " at byte " +
                           std::to_string(start));
    }
    return make_call(info->func, std::move(args));
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

void scan_vars(const ExprNode& n, bool& t, bool& y) {
  if (n.kind == Kind::VarT) t = true;
  if (n.kind == Kind::VarY) y = true;
  for (const auto& a : n.args) scan_vars(*a, t, y);
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

[[noreturn]] void domain_error(const std::string& what, const ExprNode& n) {
  throw EvalError(what, to_string(n));
}

double eval_node(const ExprNode& n, double t, double y) {
  auto arg = [&](std::size_t i) { return eval_node(*n.args[i], t, y); };
  double r = 0.0;
  switch (n.kind) {
    case Kind::Number:
      return n.number;
    case Kind::VarT:
      return t;
    case Kind::VarY:
      return y;
    case Kind::Neg:
      return -arg(0);
    case Kind::Add:
      r = arg(0) + arg(1);
      break;
    case Kind::Sub:
      r = arg(0) - arg(1);
      break;
    case Kind::Mul:
      r = arg(0) * arg(1);
      break;
    case Kind::Div: {
      const double num = arg(0);
      const double den = arg(1);
      if (den == 0.0) domain_error("division by zero", n);
      r = num / den;
      break;
    }
    case Kind::Pow:
      r = std::pow(arg(0), arg(1));
      if (std::isnan(r)) domain_error("power outside its real domain", n);
      break;
    case Kind::Call:
      switch (n.func) {
        case Func::Exp:
          r = std::exp(arg(0));
          break;
        case Func::Log: {
          const double x = arg(0);
          if (!(x > 0.0)) domain_error("log of non-positive value", n);
          r = std::log(x);
          break;
        }
        case Func::Sin:
          r = std::sin(arg(0));
          break;
        case Func::Cos:
          r = std::cos(arg(0));
          break;
        case Func::Sqrt: {
          const double x = arg(0);
          if (x < 0.0) domain_error("sqrt of negative value", n);
          r = std::sqrt(x);
          break;
        }
        case Func::Abs:
          r = std::fabs(arg(0));
          break;
        case Func::Min:
          r = std::min(arg(0), arg(1));
          break;
        case Func::Max:
          r = std::max(arg(0), arg(1));
          break;
        case Func::Clamp: {
          const double x = arg(0), lo = arg(1), hi = arg(2);
          if (lo > hi) domain_error("clamp with lo > hi", n);
          r = std::clamp(x, lo, hi);
          break;
        }
        case Func::Ramp: {
          const double x = arg(0), x0 = arg(1), x1 = arg(2);
          if (x1 == x0) domain_error("division by zero", n);
          r = std::clamp((x - x0) / (x1 - x0), 0.0, 1.0);
          break;
        }
      }
      break;
  }
  if (!std::isfinite(r)) domain_error("non-finite result", n);
  return r;
}

const char* op_symbol(Kind k) {
  switch (k) {
    case Kind::Add: return "+";
    case Kind::Sub: return "-";
    case Kind::Mul: return "*";
    case Kind::Div: return "/";
    case Kind::Pow: return "^";
    default: return "?";
  }
}

}  // namespace

ParseError::ParseError(Kind kind, std::size_t offset, std::string message,
                       std::vector<std::string> expected)
    : Error(message), kind_(kind), offset_(offset), detail_(std::move(message)),
      expected_(std::move(expected)) {}

const char* func_name(Func f) {
  for (const auto& info : kFuncs)
    if (info.func == f) return info.name;
  return "?";
}

int func_arity(Func f) {
  for (const auto& info : kFuncs)
    if (info.func == f) return info.arity;
  return 0;
}

Expr::Expr() : Expr(make_leaf(Kind::Number, 0.0)) {}

Expr::Expr(ExprNodePtr root) : root_(std::move(root)) {
  scan_vars(*root_, uses_t_, uses_y_);
  source_ = conelw::to_string(*root_);
}

Expr Expr::parse(std::string_view source) {
  Expr e(Parser(source).parse_all());
  e.source_ = std::string(source);
  return e;
}

Expr Expr::constant(double value) { return Expr(make_leaf(Kind::Number, value)); }

double Expr::operator()(double t, double y) const { return eval_node(*root_, t, y); }

std::string Expr::to_string() const { return conelw::to_string(*root_); }

bool operator==(const Expr& a, const Expr& b) { return structurally_equal(*a.root_, *b.root_); }

Expr parse(std::string_view source) { return Expr::parse(source); }

std::string to_string(const ExprNode& n) {
  switch (n.kind) {
    case Kind::Number:
      return format_number(n.number);
    case Kind::VarT:
      return "t";
    case Kind::VarY:
      return "y";
    case Kind::Neg:
      return "(-" + to_string(*n.args[0]) + ")";
    case Kind::Add:
    case Kind::Sub:
    case Kind::Mul:
    case Kind::Div:
    case Kind::Pow:
      return "(" + to_string(*n.args[0]) + " " + op_symbol(n.kind) + " " +
             to_string(*n.args[1]) + ")";
    case Kind::Call: {
      std::string s = std::string(func_name(n.func)) + "(";
      for (std::size_t i = 0; i < n.args.size(); ++i) {
        if (i) s += ", ";
        s += to_string(*n.args[i]);
      }
      return s + ")";
    }
  }
  return {};
}

bool structurally_equal(const ExprNode& a, const ExprNode& b) {
  if (a.kind != b.kind || a.args.size() != b.args.size()) return false;
  if (a.kind == Kind::Number &&
      std::bit_cast<std::uint64_t>(a.number) != std::bit_cast<std::uint64_t>(b.number))
    return false;
  if (a.kind == Kind::Call && a.func != b.func) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!structurally_equal(*a.args[i], *b.args[i])) return false;
  return true;
}

}  // namespace conelw
