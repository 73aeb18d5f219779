// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <compare>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace ifsnet {

/// Arbitrary precision rational; gmpxx keeps it in lowest terms with a
/// positive denominator.
using Rational = mpq_class;
using Integer = mpz_class;

class ArithmeticError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::invalid_argument(what), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

bool is_square_free(std::uint64_t d);

/// Exact element a + b*sqrt(d) of Q or of a real quadratic field Q(sqrt(d)).
///
/// Canonical form: if b == 0 the radicand is stored as 0, so every rational
/// has exactly one representation regardless of the field it came from.
/// Binary operations between two irrational values require equal radicands.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long n) : a_(n) {}  // NOLINT(google-explicit-constructor)
  Scalar(Rational q) : a_(std::move(q)) { a_.canonicalize(); }  // NOLINT(google-explicit-constructor)
  Scalar(long num, long den);
  /// Throws ArithmeticError unless d is square-free and > 1 (when b != 0).
  Scalar(Rational a, Rational b, std::uint64_t d);

  static Scalar sqrt_of(std::uint64_t d) { return Scalar(0, 1, d); }

  const Rational& rational_part() const { return a_; }
  const Rational& sqrt_coefficient() const { return b_; }
  std::uint64_t radicand() const { return d_; }
  bool is_rational() const { return d_ == 0; }

  /// Exact sign of a + b*sqrt(d).
  int sign() const;
  bool is_zero() const { return d_ == 0 && sgn(a_) == 0; }
  Scalar abs() const { return sign() < 0 ? -*this : *this; }

  /// Largest integer n with n <= *this.
  Integer floor() const;
  Integer ceil() const;

  /// Canonical text form "p/q" or "(p/q)+(r/s)*sqrt(d)".
  std::string str() const;
  static Scalar parse(std::string_view text);

  /// Advisory decimal rendering with `digits` significant digits.
  std::string decimal(int digits = 30) const;
  /// Nearest double; display and heuristics only.
  double approx() const;

  std::size_t hash() const;

  friend Scalar operator+(const Scalar& x, const Scalar& y);
  friend Scalar operator-(const Scalar& x, const Scalar& y);
  friend Scalar operator*(const Scalar& x, const Scalar& y);
  friend Scalar operator/(const Scalar& x, const Scalar& y);
  friend Scalar operator-(const Scalar& x);
  Scalar& operator+=(const Scalar& y) { return *this = *this + y; }
  Scalar& operator-=(const Scalar& y) { return *this = *this - y; }
  Scalar& operator*=(const Scalar& y) { return *this = *this * y; }
  Scalar& operator/=(const Scalar& y) { return *this = *this / y; }

  friend bool operator==(const Scalar& x, const Scalar& y) {
    return x.d_ == y.d_ && x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend std::strong_ordering operator<=>(const Scalar& x, const Scalar& y);

 private:
  struct Unchecked {};
  Scalar(Rational a, Rational b, std::uint64_t d, Unchecked);
  void canonicalize();

  Rational a_{0};
  Rational b_{0};
  std::uint64_t d_ = 0;
};

Scalar min(const Scalar& x, const Scalar& y);
Scalar max(const Scalar& x, const Scalar& y);

/// Radicand shared by both operands (0 when both are rational).
std::uint64_t common_radicand(const Scalar& x, const Scalar& y);

std::size_t hash_integer(const Integer& z);

struct ScalarHash {
  std::size_t operator()(const Scalar& x) const { return x.hash(); }
};

}  // namespace ifsnet
