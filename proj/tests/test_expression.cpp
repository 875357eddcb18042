#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "rlab/expression.hpp"

#include <cmath>

using namespace rlab;
using C = std::complex<double>;

namespace {

Point<double> at(std::initializer_list<C> values) {
  Point<double> z(static_cast<Eigen::Index>(values.size()));
  Eigen::Index k = 0;
  for (const auto& v : values) z[k++] = v;
  return z;
}

}  // namespace

TEST_CASE("geometric series kernels") {
  auto f = Expression::parse("1/(1-z1)", 1);
  CHECK(std::abs(f.evaluate(at({0.5})) - C(2.0)) < 1e-15);
  auto g = Expression::parse("1/(2-z1-z2)", 2);
  CHECK(std::abs(g.evaluate(at({0.0, 0.0})) - C(0.5)) < 1e-15);
  auto h = Expression::parse("conj(z1)", 1);
  CHECK(std::abs(h.evaluate(at({C(0.3, 0.4)})) - C(0.3, -0.4)) < 1e-15);
}

TEST_CASE("precedence and associativity") {
  CHECK(std::abs(Expression::parse("2^3^2", 0).constant() - C(512.0)) < 1e-12);
  CHECK(std::abs(Expression::parse("-2^2", 0).constant() - C(-4.0)) < 1e-15);
  CHECK(std::abs(Expression::parse("2^-1", 0).constant() - C(0.5)) < 1e-15);
  CHECK(std::abs(Expression::parse("1+2*3-4/2", 0).constant() - C(5.0)) < 1e-15);
  CHECK(std::abs(Expression::parse("exp(i*pi)", 0).constant() - C(-1.0)) < 1e-15);
  CHECK(std::abs(Expression::parse("1.5e-1 + re(3+4*i) + im(3+4*i) + abs(3+4*i)", 0).constant() - C(12.15)) < 1e-13);
}

TEST_CASE("integer powers are exact on negative exponents") {
  auto f = Expression::parse("z^-3", 1);
  auto v = f.evaluate(at({C(0.0, 2.0)}));
  CHECK(std::abs(v - C(0.0, 0.125)) < 1e-16);
  auto g = Expression::parse("z1^2*z2^-1", 2);
  CHECK(std::abs(g.evaluate(at({3.0, 2.0})) - C(4.5)) < 1e-15);
}

TEST_CASE("long double evaluation keeps literal precision") {
  auto f = Expression::parse("0.1", 0);
  auto v = f.evaluate(Point<long double>(0));
  CHECK(v.real() == 0.1L);
}

TEST_CASE("parse errors report positions") {
  auto position_of = [](const char* text, int n) -> std::size_t {
    try {
      Expression::parse(text, n);
    } catch (const ParseError& e) {
      return e.position();
    }
    return std::string::npos;
  };
  CHECK(position_of("1 + * 2", 1) == 4);
  CHECK(position_of("z3", 2) == 0);
  CHECK(position_of("foo(z)", 1) == 0);
  CHECK(position_of("exp(z, z)", 1) == 5);
  CHECK(position_of("(1+z", 1) == 4);
  CHECK(position_of("1+z)", 1) == 3);
  CHECK(position_of("w", 1) == 0);
  CHECK(position_of("", 1) == 0);
}

TEST_CASE("dimension checks on evaluation") {
  auto f = Expression::parse("z1+z2", 2);
  CHECK_THROWS_AS(f.evaluate(at({1.0})), EvaluationError);
  CHECK_THROWS_AS(f.scalar<double>(), PreconditionError);
}
