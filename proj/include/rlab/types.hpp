#pragma once

#include <Eigen/Core>

#include <compare>
#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace rlab {

template <typename Real>
using VectorX = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

/// A point of C^n.
template <typename Real>
using Point = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

/// Black-box evaluator C^n -> C.
template <typename Real>
using ComplexFunction = std::function<std::complex<Real>(const Point<Real>&)>;

/// Evaluator of one complex variable.
template <typename Real>
using ScalarFunction = std::function<std::complex<Real>(std::complex<Real>)>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an input violates the geometric contract of a domain operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Raised when a requested frequency is not resolvable on the sampling grid.
class AliasingError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class EvaluationError : public Error {
 public:
  using Error::Error;
};

/// Exponent vector of a Laurent monomial z^alpha.
struct MultiIndex {
  std::vector<int> exponents;

  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> e) : exponents(std::move(e)) {}
  MultiIndex(std::initializer_list<int> e) : exponents(e) {}

  std::size_t size() const { return exponents.size(); }
  int operator[](std::size_t j) const { return exponents[j]; }
  int& operator[](std::size_t j) { return exponents[j]; }

  int linf() const {
    int r = 0;
    for (int a : exponents) r = std::max(r, a < 0 ? -a : a);
    return r;
  }
  int l1() const {
    int r = 0;
    for (int a : exponents) r += a < 0 ? -a : a;
    return r;
  }

  friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;
};

/// Canonical order: increasing |alpha|_inf, lexicographic within a shell.
struct ShellOrder {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const {
    const int sa = a.linf(), sb = b.linf();
    if (sa != sb) return sa < sb;
    return a.exponents < b.exponents;
  }
};

/// All multi-indices with |alpha_j| <= bound, in shell order.
std::vector<MultiIndex> index_box(std::size_t n, int bound);

std::string to_string(const MultiIndex& alpha);

template <typename Real>
std::complex<Real> ipow(std::complex<Real> z, int k) {
  if (k < 0) return std::complex<Real>(1) / ipow(z, -k);
  std::complex<Real> result(1), base = z;
  while (k > 0) {
    if (k & 1) result *= base;
    base *= base;
    k >>= 1;
  }
  return result;
}

template <typename Real>
Real ipow(Real x, int k) {
  if (k < 0) return Real(1) / ipow(x, -k);
  Real result(1), base = x;
  while (k > 0) {
    if (k & 1) result *= base;
    base *= base;
    k >>= 1;
  }
  return result;
}

/// e_alpha(z) = z^alpha.
template <typename Real>
std::complex<Real> monomial(const MultiIndex& alpha, const Point<Real>& z) {
  if (alpha.size() != static_cast<std::size_t>(z.size()))
    throw PreconditionError("monomial: dimension mismatch");
  std::complex<Real> r(1);
  for (std::size_t j = 0; j < alpha.size(); ++j) {
    if (alpha[j] < 0 && z[j] == std::complex<Real>(0))
      throw DomainError("monomial: negative exponent at a zero coordinate");
    r *= ipow(z[j], alpha[j]);
  }
  return r;
}

/// prod_j r_j^{alpha_j} for positive radii.
template <typename Real>
Real monomial_modulus(const MultiIndex& alpha, const VectorX<Real>& radii) {
  Real r(1);
  for (std::size_t j = 0; j < alpha.size(); ++j) r *= ipow(radii[j], alpha[j]);
  return r;
}

}  // namespace rlab
