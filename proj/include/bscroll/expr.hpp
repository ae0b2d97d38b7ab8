#pragma once

// Generator expressions in the single variable s.
//
//   expr   := term (('+' | '-') term)*
//   term   := factor (('*' | '/') factor)*
//   factor := '-' factor | atom ('^' factor)?
//   atom   := number | 's' | 'pi' | 'e' | fn '(' expr ')' | '(' expr ')'
//
// '^' is right-associative and its exponent must be constant. Unary minus
// binds looser than '^', so "-s^2" is -(s^2). The Unicode minus sign U+2212
// is accepted wherever '-' is.

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>

#include "bscroll/jet.hpp"

namespace bscroll {

enum class Fn { Exp, Log, Sin, Cos, Tan, Cot, Sinh, Cosh, Tanh, Sqrt };

const char* fn_name(Fn fn);

struct ExprNode {
  enum class Kind { Number, Variable, Pi, E, Neg, Add, Sub, Mul, Div, Pow, Call };

  Kind kind = Kind::Number;
  double number = 0.0;  // Kind::Number
  Fn fn = Fn::Exp;      // Kind::Call
  std::shared_ptr<const ExprNode> lhs;  // operand of Neg/Call, left of binary ops
  std::shared_ptr<const ExprNode> rhs;
  std::size_t offset = 0;  // byte offset of the node in the source text
};

/// Immutable parsed expression.
class Expr {
 public:
  Expr() = default;

  const ExprNode& root() const { return *root_; }
  const std::string& source() const { return source_; }
  bool empty() const { return !root_; }

  /// Jet of the denoted function at s. DomainError carries the offending
  /// node's byte offset.
  Jet eval_jet(double s, int order) const;
  double eval_real(double s) const;

  /// Fully parenthesized text that parses back to an equal tree.
  std::string to_string() const;

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  friend Expr parse(std::string_view text);
  Expr(std::shared_ptr<const ExprNode> root, std::string source)
      : root_(std::move(root)), source_(std::move(source)) {}

  std::shared_ptr<const ExprNode> root_;
  std::string source_;
};

/// Throws SyntaxError or UnknownFunction.
Expr parse(std::string_view text);

}  // namespace bscroll
