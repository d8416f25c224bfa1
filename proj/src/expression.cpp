#include "qherm/expression.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <vector>

#include "qherm/errors.hpp"

namespace qherm {
namespace detail {

enum class Kind { Number, Variable, Negate, Add, Sub, Mul, Div, Pow, Call };

enum class Func { Sin, Cos, Tan, Exp, Log, Tanh, Cosh, Sinh, Sqrt, Abs };

struct Node {
  Kind kind = Kind::Number;
  double value = 0.0;
  Func func = Func::Sin;
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
};

}  // namespace detail

namespace {

using detail::Func;
using detail::Kind;
using detail::Node;
using NodePtr = std::shared_ptr<const Node>;

struct FuncName {
  std::string_view name;
  Func func;
};

constexpr std::array<FuncName, 10> kFunctions{{
    {"sin", Func::Sin},
    {"cos", Func::Cos},
    {"tan", Func::Tan},
    {"exp", Func::Exp},
    {"log", Func::Log},
    {"tanh", Func::Tanh},
    {"cosh", Func::Cosh},
    {"sinh", Func::Sinh},
    {"sqrt", Func::Sqrt},
    {"abs", Func::Abs},
}};

std::string_view func_name(Func f) {
  for (const auto& entry : kFunctions) {
    if (entry.func == f) return entry.name;
  }
  return "?";
}

NodePtr make(Kind kind, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

NodePtr number(double v) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Number;
  n->value = v;
  return n;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr parse() {
    skip_space();
    if (pos_ >= text_.size()) fail("empty expression");
    NodePtr root = additive();
    skip_space();
    if (pos_ < text_.size()) fail("unexpected character");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::ParseError,
                what + " at position " + std::to_string(pos_),
                static_cast<double>(pos_));
  }

  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr additive() {
    NodePtr lhs = multiplicative();
    for (;;) {
      if (accept('+')) {
        lhs = make(Kind::Add, lhs, multiplicative());
      } else if (accept('-')) {
        lhs = make(Kind::Sub, lhs, multiplicative());
      } else {
        return lhs;
      }
    }
  }

  NodePtr multiplicative() {
    NodePtr lhs = unary();
    for (;;) {
      if (accept('*')) {
        lhs = make(Kind::Mul, lhs, unary());
      } else if (accept('/')) {
        lhs = make(Kind::Div, lhs, unary());
      } else {
        return lhs;
      }
    }
  }

  NodePtr unary() {
    if (accept('-')) return make(Kind::Negate, unary());
    if (accept('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = atom();
    if (accept('^')) return make(Kind::Pow, base, unary());
    return base;
  }

  NodePtr atom() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr inner = additive();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      return parse_number();
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             std::isalnum(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      }
      const std::string_view ident = text_.substr(start, pos_ - start);
      if (ident == "x") return make(Kind::Variable);
      if (ident == "pi") return number(std::numbers::pi);
      for (const auto& entry : kFunctions) {
        if (entry.name == ident) {
          if (!accept('(')) fail("expected '(' after function name");
          auto call = std::make_shared<Node>();
          call->kind = Kind::Call;
          call->func = entry.func;
          call->lhs = additive();
          if (!accept(')')) fail("expected ')'");
          return call;
        }
      }
      pos_ = start;
      fail("unknown identifier '" + std::string(ident) + "'");
    }
    fail("unexpected character");
  }

  NodePtr parse_number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
        ++n;
      }
      return n;
    };
    std::size_t mantissa = digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      mantissa += digits();
    }
    if (mantissa == 0) fail("malformed number");
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      const std::size_t save = pos_;
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
        ++pos_;
      }
      if (digits() == 0) {
        pos_ = save;
        fail("malformed exponent");
      }
    }
    const std::string literal(text_.substr(start, pos_ - start));
    return number(std::strtod(literal.c_str(), nullptr));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

[[noreturn]] void domain_error(const char* what, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  throw Error(ErrorCode::EvalError, std::string(what) + " at x = " + buf, x);
}

double apply(Func f, double v, double x) {
  switch (f) {
    case Func::Sin: return std::sin(v);
    case Func::Cos: return std::cos(v);
    case Func::Tan: return std::tan(v);
    case Func::Exp: return std::exp(v);
    case Func::Log:
      if (!(v > 0.0)) domain_error("log of non-positive argument", x);
      return std::log(v);
    case Func::Tanh: return std::tanh(v);
    case Func::Cosh: return std::cosh(v);
    case Func::Sinh: return std::sinh(v);
    case Func::Sqrt:
      if (v < 0.0) domain_error("sqrt of negative argument", x);
      return std::sqrt(v);
    case Func::Abs: return std::abs(v);
  }
  return v;
}

double eval(const Node& n, double x) {
  switch (n.kind) {
    case Kind::Number: return n.value;
    case Kind::Variable: return x;
    case Kind::Negate: return -eval(*n.lhs, x);
    case Kind::Add: return eval(*n.lhs, x) + eval(*n.rhs, x);
    case Kind::Sub: return eval(*n.lhs, x) - eval(*n.rhs, x);
    case Kind::Mul: return eval(*n.lhs, x) * eval(*n.rhs, x);
    case Kind::Div: {
      const double d = eval(*n.rhs, x);
      if (d == 0.0) domain_error("division by zero", x);
      return eval(*n.lhs, x) / d;
    }
    case Kind::Pow: return std::pow(eval(*n.lhs, x), eval(*n.rhs, x));
    case Kind::Call: return apply(n.func, eval(*n.lhs, x), x);
  }
  return 0.0;
}

void render(const Node& n, std::string& out) {
  auto binary = [&](const char* op) {
    out += '(';
    render(*n.lhs, out);
    out += op;
    render(*n.rhs, out);
    out += ')';
  };
  switch (n.kind) {
    case Kind::Number: {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.17g", n.value);
      out += '(';
      out += buf;
      out += ')';
      return;
    }
    case Kind::Variable: out += 'x'; return;
    case Kind::Negate:
      out += "(-";
      render(*n.lhs, out);
      out += ')';
      return;
    case Kind::Add: binary(" + "); return;
    case Kind::Sub: binary(" - "); return;
    case Kind::Mul: binary(" * "); return;
    case Kind::Div: binary(" / "); return;
    case Kind::Pow: binary("^"); return;
    case Kind::Call:
      out += func_name(n.func);
      out += '(';
      render(*n.lhs, out);
      out += ')';
      return;
  }
}

}  // namespace

Expression Expression::parse(std::string_view text) {
  return Expression(Parser(text).parse());
}

double Expression::operator()(double x) const {
  const double v = eval(*root_, x);
  if (!std::isfinite(v)) domain_error("non-finite value", x);
  return v;
}

RealSamples Expression::sample(const RealSamples& xs) const {
  RealSamples out(xs.size());
  for (Eigen::Index i = 0; i < xs.size(); ++i) out(i) = (*this)(xs(i));
  return out;
}

std::string Expression::to_string() const {
  std::string out;
  render(*root_, out);
  return out;
}

}  // namespace qherm
