#include "bscroll/expr.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <optional>
#include <utility>
#include <vector>

#include "bscroll/errors.hpp"

namespace bscroll {

namespace {

using Kind = ExprNode::Kind;
using NodePtr = std::shared_ptr<const ExprNode>;

constexpr std::array<std::pair<std::string_view, Fn>, 10> kFunctions{{
    {"exp", Fn::Exp},
    {"log", Fn::Log},
    {"sin", Fn::Sin},
    {"cos", Fn::Cos},
    {"tan", Fn::Tan},
    {"cot", Fn::Cot},
    {"sinh", Fn::Sinh},
    {"cosh", Fn::Cosh},
    {"tanh", Fn::Tanh},
    {"sqrt", Fn::Sqrt},
}};

std::optional<Fn> lookup_fn(std::string_view name) {
  for (const auto& [n, fn] : kFunctions) {
    if (n == name) return fn;
  }
  return std::nullopt;
}

const std::vector<std::string> kExpectAtom{"number", "s", "pi", "e", "function", "(", "-"};

NodePtr make(Kind kind, std::size_t offset, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
  auto n = std::make_shared<ExprNode>();
  n->kind = kind;
  n->offset = offset;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

bool depends_on_s(const ExprNode& n) {
  if (n.kind == Kind::Variable) return true;
  return (n.lhs && depends_on_s(*n.lhs)) || (n.rhs && depends_on_s(*n.rhs));
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr parse_all() {
    NodePtr root = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) {
      throw SyntaxError(pos_, {"+", "-", "*", "/", "^", "end of input"}, describe_here());
    }
    return root;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  // Length of a minus sign at the cursor: '-' or U+2212, 0 if none.
  std::size_t minus_len() const {
    if (pos_ < text_.size() && text_[pos_] == '-') return 1;
    if (text_.substr(pos_, 3) == "\xE2\x88\x92") return 3;
    return 0;
  }

  std::string describe_here() const {
    if (pos_ >= text_.size()) return "end of input";
    return "'" + std::string(1, text_[pos_]) + "'";
  }

  NodePtr parse_expr() {
    NodePtr lhs = parse_term();
    for (;;) {
      skip_ws();
      const std::size_t at = pos_;
      if (pos_ < text_.size() && text_[pos_] == '+') {
        ++pos_;
        lhs = make(Kind::Add, at, lhs, parse_term());
      } else if (std::size_t m = minus_len()) {
        pos_ += m;
        lhs = make(Kind::Sub, at, lhs, parse_term());
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_term() {
    NodePtr lhs = parse_factor();
    for (;;) {
      skip_ws();
      const std::size_t at = pos_;
      if (pos_ < text_.size() && (text_[pos_] == '*' || text_[pos_] == '/')) {
        const Kind k = text_[pos_] == '*' ? Kind::Mul : Kind::Div;
        ++pos_;
        lhs = make(k, at, lhs, parse_factor());
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_factor() {
    skip_ws();
    const std::size_t at = pos_;
    if (std::size_t m = minus_len()) {
      pos_ += m;
      return make(Kind::Neg, at, parse_factor());
    }
    NodePtr base = parse_atom();
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '^') {
      const std::size_t caret = pos_;
      ++pos_;
      skip_ws();
      const std::size_t exp_at = pos_;
      NodePtr exponent = parse_factor();
      if (depends_on_s(*exponent)) {
        throw SyntaxError(exp_at, {"constant exponent"}, "exponent depending on s");
      }
      return make(Kind::Pow, caret, base, exponent);
    }
    return base;
  }

  NodePtr parse_atom() {
    skip_ws();
    const std::size_t at = pos_;
    if (pos_ >= text_.size()) throw SyntaxError(pos_, kExpectAtom, "end of input");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t end = pos_;
      while (end < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_')) {
        ++end;
      }
      const std::string_view name = text_.substr(pos_, end - pos_);
      pos_ = end;
      if (name == "s") return make(Kind::Variable, at);
      if (name == "pi") return make(Kind::Pi, at);
      if (name == "e") return make(Kind::E, at);
      skip_ws();
      const bool call = pos_ < text_.size() && text_[pos_] == '(';
      const auto fn = lookup_fn(name);
      if (!fn) {
        if (call) throw UnknownFunction(std::string(name), at);
        throw SyntaxError(at, kExpectAtom, "identifier '" + std::string(name) + "'");
      }
      if (!call) throw SyntaxError(pos_, {"("}, describe_here());
      ++pos_;
      NodePtr arg = parse_expr();
      expect_close();
      auto n = std::make_shared<ExprNode>();
      n->kind = Kind::Call;
      n->fn = *fn;
      n->offset = at;
      n->lhs = std::move(arg);
      return n;
    }
    if (c == '(') {
      ++pos_;
      NodePtr inner = parse_expr();
      expect_close();
      return inner;
    }
    throw SyntaxError(pos_, kExpectAtom, describe_here());
  }

  NodePtr parse_number() {
    const std::size_t at = pos_;
    double value = 0.0;
    const char* first = text_.data() + pos_;
    const char* last = text_.data() + text_.size();
    const auto [ptr, ec] = std::from_chars(first, last, value, std::chars_format::general);
    if (ec != std::errc() || ptr == first) throw SyntaxError(at, {"number"}, describe_here());
    if (!std::isfinite(value)) throw SyntaxError(at, {"finite number"}, "overflowing literal");
    pos_ += static_cast<std::size_t>(ptr - first);
    auto n = std::make_shared<ExprNode>();
    n->kind = Kind::Number;
    n->number = value;
    n->offset = at;
    return n;
  }

  void expect_close() {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != ')') throw SyntaxError(pos_, {")"}, describe_here());
    ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

template <class F>
Jet located(const ExprNode& n, F&& f) {
  try {
    return f();
  } catch (const DomainError& e) {
    if (e.has_offset()) throw;
    throw e.with_offset(n.offset);
  }
}

Jet apply_fn(Fn fn, const Jet& a) {
  switch (fn) {
    case Fn::Exp: return exp(a);
    case Fn::Log: return log(a);
    case Fn::Sin: return sin(a);
    case Fn::Cos: return cos(a);
    case Fn::Tan: return tan(a);
    case Fn::Cot: return cot(a);
    case Fn::Sinh: return sinh(a);
    case Fn::Cosh: return cosh(a);
    case Fn::Tanh: return tanh(a);
    case Fn::Sqrt: return sqrt(a);
  }
  return a;
}

Jet eval(const ExprNode& n, double s, int order) {
  switch (n.kind) {
    case Kind::Number: return Jet::constant(n.number, s, order);
    case Kind::Variable: return Jet::variable(s, order);
    case Kind::Pi: return Jet::constant(std::numbers::pi, s, order);
    case Kind::E: return Jet::constant(std::numbers::e, s, order);
    case Kind::Neg: return -eval(*n.lhs, s, order);
    case Kind::Add: return eval(*n.lhs, s, order) + eval(*n.rhs, s, order);
    case Kind::Sub: return eval(*n.lhs, s, order) - eval(*n.rhs, s, order);
    case Kind::Mul: return eval(*n.lhs, s, order) * eval(*n.rhs, s, order);
    case Kind::Div: {
      const Jet a = eval(*n.lhs, s, order);
      const Jet b = eval(*n.rhs, s, order);
      return located(n, [&] { return a / b; });
    }
    case Kind::Pow: {
      const Jet a = eval(*n.lhs, s, order);
      const double p = eval(*n.rhs, s, 0).value();
      return located(n, [&] { return pow(a, p); });
    }
    case Kind::Call: {
      const Jet a = eval(*n.lhs, s, order);
      return located(n, [&] { return apply_fn(n.fn, a); });
    }
  }
  return Jet(s, order);
}

void print(const ExprNode& n, std::string& out) {
  auto binary = [&](const char* op) {
    out += '(';
    print(*n.lhs, out);
    out += op;
    print(*n.rhs, out);
    out += ')';
  };
  switch (n.kind) {
    case Kind::Number: {
      std::array<char, 32> buf{};
      const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), n.number);
      out.append(buf.data(), res.ptr);
      return;
    }
    case Kind::Variable: out += 's'; return;
    case Kind::Pi: out += "pi"; return;
    case Kind::E: out += 'e'; return;
    case Kind::Neg:
      out += "(-";
      print(*n.lhs, out);
      out += ')';
      return;
    case Kind::Add: binary(" + "); return;
    case Kind::Sub: binary(" - "); return;
    case Kind::Mul: binary(" * "); return;
    case Kind::Div: binary(" / "); return;
    case Kind::Pow: binary(" ^ "); return;
    case Kind::Call:
      out += fn_name(n.fn);
      out += '(';
      print(*n.lhs, out);
      out += ')';
      return;
  }
}

bool same_tree(const ExprNode* a, const ExprNode* b) {
  if (!a || !b) return a == b;
  if (a->kind != b->kind) return false;
  if (a->kind == Kind::Number && a->number != b->number) return false;
  if (a->kind == Kind::Call && a->fn != b->fn) return false;
  return same_tree(a->lhs.get(), b->lhs.get()) && same_tree(a->rhs.get(), b->rhs.get());
}

}  // namespace

const char* fn_name(Fn fn) {
  for (const auto& [n, f] : kFunctions) {
    if (f == fn) return n.data();
  }
  return "?";
}

Expr parse(std::string_view text) {
  Parser p(text);
  return Expr(p.parse_all(), std::string(text));
}

Jet Expr::eval_jet(double s, int order) const {
  if (!root_) throw InputError("empty expression");
  if (order < 0 || order > Jet::kMaxOrder) throw InputError("jet order out of range");
  return eval(*root_, s, order);
}

double Expr::eval_real(double s) const { return eval_jet(s, 0).value(); }

std::string Expr::to_string() const {
  std::string out;
  if (root_) print(*root_, out);
  return out;
}

bool operator==(const Expr& a, const Expr& b) { return same_tree(a.root_.get(), b.root_.get()); }

}  // namespace bscroll
