#include "rlab/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <map>
#include <numbers>
#include <optional>

namespace rlab {

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;
using Op = Expression::Op;
using Fn = Expression::Fn;

const std::map<std::string, Fn, std::less<>> kFunctions{
    {"exp", Fn::Exp}, {"log", Fn::Log}, {"sqrt", Fn::Sqrt}, {"sin", Fn::Sin}, {"cos", Fn::Cos},
    {"conj", Fn::Conj}, {"abs", Fn::Abs}, {"re", Fn::Re},   {"im", Fn::Im}};

NodePtr make(Op op, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
  auto n = std::make_shared<Expression::Node>();
  n->op = op;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

NodePtr constant(std::complex<long double> v) {
  auto n = std::make_shared<Expression::Node>();
  n->op = Op::Constant;
  n->value = v;
  return n;
}

class Parser {
 public:
  Parser(std::string_view text, int dimension) : text_(text), dimension_(dimension) {}

  NodePtr parse() {
    NodePtr root = expr();
    skip();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  NodePtr expr() {
    NodePtr lhs = term();
    while (true) {
      if (accept('+')) {
        lhs = make(Op::Add, lhs, term());
      } else if (accept('-')) {
        lhs = make(Op::Sub, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    while (true) {
      if (accept('*')) {
        lhs = make(Op::Mul, lhs, unary());
      } else if (accept('/')) {
        lhs = make(Op::Div, lhs, unary());
      } else {
        return lhs;
      }
    }
  }

  NodePtr unary() {
    if (accept('-')) return make(Op::Negate, unary());
    if (accept('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (!accept('^')) return base;
    NodePtr exponent = unary();
    if (auto k = as_integer(*exponent)) {
      auto n = std::make_shared<Expression::Node>();
      n->op = Op::IntPow;
      n->index = *k;
      n->lhs = base;
      return n;
    }
    return make(Op::Pow, base, exponent);
  }

  static std::optional<int> as_integer(const Expression::Node& n) {
    if (n.op == Op::Negate) {
      auto k = as_integer(*n.lhs);
      if (k) return -*k;
      return std::nullopt;
    }
    if (n.op != Op::Constant || n.value.imag() != 0 || !n.integer_literal) return std::nullopt;
    return static_cast<int>(n.value.real());
  }

  NodePtr primary() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (accept('(')) {
      NodePtr inner = expr();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return name();
    fail(std::string("unexpected '") + c + "'");
  }

  NodePtr number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) ++pos_;
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) ++look;
      if (look < text_.size() && std::isdigit(static_cast<unsigned char>(text_[look]))) {
        pos_ = look;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      }
    }
    const std::string token(text_.substr(start, pos_ - start));
    char* end = nullptr;
    const long double v = std::strtold(token.c_str(), &end);
    if (end != token.c_str() + token.size()) {
      pos_ = start;
      fail("malformed number '" + token + "'");
    }
    auto n = std::make_shared<Expression::Node>();
    n->op = Op::Constant;
    n->value = v;
    n->integer_literal = token.find_first_of(".eE") == std::string::npos && v <= 1e6L;
    return n;
  }

  NodePtr name() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
    const std::string id(text_.substr(start, pos_ - start));
    if (auto it = kFunctions.find(id); it != kFunctions.end()) {
      if (!accept('(')) fail("function '" + id + "' needs an argument list");
      auto n = std::make_shared<Expression::Node>();
      n->op = Op::Call;
      n->fn = it->second;
      n->lhs = expr();
      skip();
      if (pos_ < text_.size() && text_[pos_] == ',') fail("function '" + id + "' takes exactly one argument");
      expect(')');
      return n;
    }
    skip();
    if (pos_ < text_.size() && text_[pos_] == '(') {
      pos_ = start;
      fail("unknown function '" + id + "'");
    }
    if (id == "i") return constant({0.0L, 1.0L});
    if (id == "pi") return constant(std::numbers::pi_v<long double>);
    if (id == "e") return constant(std::numbers::e_v<long double>);
    int index = -1;
    if (id == "z") {
      index = 0;
    } else if (id.size() >= 2 && id[0] == 'z' && id.find_first_not_of("0123456789", 1) == std::string::npos &&
               id[1] != '0') {
      index = std::stoi(id.substr(1)) - 1;
    }
    if (index < 0) {
      pos_ = start;
      fail("unknown name '" + id + "'");
    }
    if (index >= dimension_) {
      pos_ = start;
      fail("variable '" + id + "' exceeds the dimension " + std::to_string(dimension_));
    }
    auto n = std::make_shared<Expression::Node>();
    n->op = Op::Variable;
    n->index = index;
    return n;
  }

  std::string_view text_;
  int dimension_;
  std::size_t pos_ = 0;
};

}  // namespace

Expression Expression::parse(std::string_view text, int dimension) {
  if (dimension < 0) throw PreconditionError("expression dimension must be >= 0");
  Expression e;
  e.root_ = Parser(text, dimension).parse();
  e.dimension_ = dimension;
  e.source_ = std::string(text);
  return e;
}

std::complex<double> Expression::constant() const {
  if (dimension_ != 0) throw PreconditionError("expression is not a constant");
  const auto v = evaluate(Point<double>(0));
  return v;
}

}  // namespace rlab
