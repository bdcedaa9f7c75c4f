#pragma once

// A small arithmetic language over the two variables t and y.
//
// Grammar (EBNF, whitespace ignored between tokens):
//
//   expr    = term { ("+" | "-") term } ;
//   term    = unary { ("*" | "/") unary } ;
//   unary   = "-" unary | power ;
//   power   = primary [ "^" unary ] ;            (* right associative *)
//   primary = number | "t" | "y" | call | "(" expr ")" ;
//   call    = name "(" expr { "," expr } ")" ;
//   number  = digits [ "." digits ] [ exponent ] | "." digits [ exponent ] ;
//   exponent= ("e" | "E") [ "+" | "-" ] digits ;
//
// Built-in functions (arity): exp(1) log(1) sin(1) cos(1) sqrt(1) abs(1)
// min(2) max(2) clamp(3) ramp(3), where
//   clamp(x, lo, hi) = min(max(x, lo), hi)
//   ramp(x, x0, x1)  = clamp((x - x0) / (x1 - x0), 0, 1)

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "conelw/errors.hpp"

namespace conelw {

enum class Func : std::uint8_t { Exp, Log, Sin, Cos, Sqrt, Abs, Min, Max, Clamp, Ramp };

struct ExprNode {
  enum class Kind : std::uint8_t { Number, VarT, VarY, Neg, Add, Sub, Mul, Div, Pow, Call };

  Kind kind = Kind::Number;
  double number = 0.0;
  Func func = Func::Exp;
  std::vector<std::shared_ptr<const ExprNode>> args;
};

using ExprNodePtr = std::shared_ptr<const ExprNode>;

/// Immutable parsed expression. Copies share the tree; evaluation is
/// reentrant.
class Expr {
 public:
  /// The constant 0.
  Expr();
  explicit Expr(ExprNodePtr root);

  static Expr parse(std::string_view source);
  static Expr constant(double value);

  /// Throws EvalError on a domain violation or a non-finite intermediate.
  double operator()(double t, double y = 0.0) const;
  double eval(double t, double y = 0.0) const { return (*this)(t, y); }

  bool uses_t() const noexcept { return uses_t_; }
  bool uses_y() const noexcept { return uses_y_; }

  /// Fully parenthesised rendering that re-parses to the same tree.
  std::string to_string() const;
  /// Original source text when parsed, otherwise to_string().
  const std::string& source() const noexcept { return source_; }

  const ExprNode& root() const noexcept { return *root_; }

  /// Structural equality of the trees (numbers compared bitwise).
  friend bool operator==(const Expr& a, const Expr& b);

 private:
  ExprNodePtr root_;
  std::string source_;
  bool uses_t_ = false;
  bool uses_y_ = false;
};

Expr parse(std::string_view source);
std::string to_string(const ExprNode& node);
bool structurally_equal(const ExprNode& a, const ExprNode& b);
const char* func_name(Func f);
int func_arity(Func f);

}  // namespace conelw
