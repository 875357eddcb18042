#pragma once

// A tiny expression language for test functions of z1..zn:
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('+' | '-') unary | power
//   power   := primary ('^' unary)?            (right associative)
//   primary := number | constant | variable | name '(' expr ')' | '(' expr ')'
// Constants: i, pi, e. Variables: z1..zn, and z for z1.
// Functions: exp, log, sqrt, sin, cos, conj, abs, re, im.

#include "rlab/types.hpp"

#include <complex>
#include <memory>
#include <string>
#include <string_view>

namespace rlab {

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class Expression {
 public:
  enum class Op { Constant, Variable, Negate, Add, Sub, Mul, Div, Pow, IntPow, Call };
  enum class Fn { Exp, Log, Sqrt, Sin, Cos, Conj, Abs, Re, Im };

  struct Node {
    Op op = Op::Constant;
    std::complex<long double> value;
    int index = 0;
    Fn fn = Fn::Exp;
    bool integer_literal = false;
    std::shared_ptr<const Node> lhs, rhs;
  };

  /// Parses `text` for functions of `dimension` variables (0 for constants).
  static Expression parse(std::string_view text, int dimension);

  int dimension() const { return dimension_; }
  const std::string& source() const { return source_; }

  template <typename Real>
  std::complex<Real> evaluate(const Point<Real>& z) const {
    if (z.size() != dimension_) throw EvaluationError("expression expects " + std::to_string(dimension_) + " variables");
    return eval<Real>(*root_, z);
  }

  template <typename Real>
  ComplexFunction<Real> function() const {
    auto self = *this;
    return [self](const Point<Real>& z) { return self.evaluate(z); };
  }

  /// One-variable view; requires dimension 1.
  template <typename Real>
  ScalarFunction<Real> scalar() const {
    if (dimension_ != 1) throw PreconditionError("expression is not a function of one variable");
    auto self = *this;
    return [self](std::complex<Real> w) {
      Point<Real> z(1);
      z[0] = w;
      return self.evaluate(z);
    };
  }

  /// Value of a constant expression.
  std::complex<double> constant() const;

 private:
  template <typename Real>
  static std::complex<Real> eval(const Node& n, const Point<Real>& z) {
    using C = std::complex<Real>;
    switch (n.op) {
      case Op::Constant: return C(static_cast<Real>(n.value.real()), static_cast<Real>(n.value.imag()));
      case Op::Variable: return z[n.index];
      case Op::Negate: return -eval(*n.lhs, z);
      case Op::Add: return eval(*n.lhs, z) + eval(*n.rhs, z);
      case Op::Sub: return eval(*n.lhs, z) - eval(*n.rhs, z);
      case Op::Mul: return eval(*n.lhs, z) * eval(*n.rhs, z);
      case Op::Div: return eval(*n.lhs, z) / eval(*n.rhs, z);
      case Op::Pow: return std::pow(eval(*n.lhs, z), eval(*n.rhs, z));
      case Op::IntPow: return ipow(eval(*n.lhs, z), n.index);
      case Op::Call: {
        const C a = eval(*n.lhs, z);
        switch (n.fn) {
          case Fn::Exp: return std::exp(a);
          case Fn::Log: return std::log(a);
          case Fn::Sqrt: return std::sqrt(a);
          case Fn::Sin: return std::sin(a);
          case Fn::Cos: return std::cos(a);
          case Fn::Conj: return std::conj(a);
          case Fn::Abs: return C(std::abs(a));
          case Fn::Re: return C(a.real());
          case Fn::Im: return C(a.imag());
        }
      }
    }
    throw EvaluationError("corrupt expression tree");
  }

  std::shared_ptr<const Node> root_;
  int dimension_ = 0;
  std::string source_;
};

}  // namespace rlab
