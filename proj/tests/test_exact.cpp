// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>

#include "oracles.hpp"

using namespace ifsnet;

namespace {

Scalar random_scalar(std::mt19937_64& rng, std::uint64_t d) {
  std::uniform_int_distribution<long> num(-1000000, 1000000);
  std::uniform_int_distribution<long> den(1, 1000000);
  const Rational a(num(rng), den(rng));
  if (d == 0) return Scalar(Rational(a));
  const Rational b(num(rng), den(rng));
  return Scalar(a, b, d);
}

Rational q(long n, long d) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

}  // namespace

TEST_SUITE("exact") {
  TEST_CASE("products") {
    CHECK(Scalar(1, 3) * Scalar(1, 4) == Scalar(1, 12));
    const Scalar rho(q(-1, 2), q(1, 2), 5);
    CHECK(rho * rho == Scalar(q(3, 2), q(-1, 2), 5));
    for (const Scalar& x : {Scalar(7, 9), rho, Scalar(q(2, 3), q(-5, 7), 3)}) {
      CHECK(x * Scalar(1) == x);
    }
  }

  TEST_CASE("sign of small values") {
    CHECK(Scalar(1, 2).sign() == 1);
    CHECK(Scalar(0).sign() == 0);
    const Scalar x(q(1, 2), q(-1, 2), 5);
    CHECK(x.sign() == -1);
    CHECK(oracle::mpfr_sign(x) == -1);
  }

  TEST_CASE("sign agrees with a 50-digit evaluation") {
    std::mt19937_64 rng(1234);
    const std::uint64_t fields[] = {0, 2, 3, 5};
    for (int i = 0; i < 10000; ++i) {
      const Scalar x = random_scalar(rng, fields[i % 4]);
      REQUIRE_MESSAGE(x.sign() == oracle::mpfr_sign(x, 170), x.str());
    }
  }

  TEST_CASE("sign near cancellation") {
    // a^2 - b^2 d = +-1 with large a, b: Pell-type pairs
    const Scalar u(Rational(9), Rational(4), 5);  // 81 - 80 = 1
    CHECK((u - Scalar(Rational(0), Rational(4), 5)).sign() == 1);
    const Scalar close(Rational(161), Rational(-72), 5);  // 161^2 - 72^2*5 = 1
    CHECK(close.sign() == 1);
    CHECK((-close).sign() == -1);
    CHECK(oracle::mpfr_sign(close) == 1);
    const Scalar closer(Rational(-51841), Rational(23184), 5);
    CHECK(closer.sign() == oracle::mpfr_sign(closer));
  }

  TEST_CASE("trichotomy and multiplicative sign") {
    std::mt19937_64 rng(99);
    for (std::uint64_t d : {0, 2, 5}) {
      for (int i = 0; i < 500; ++i) {
        const Scalar x = random_scalar(rng, d);
        const Scalar y = random_scalar(rng, d);
        const int holds = int(x < y) + int(x == y) + int(x > y);
        CHECK(holds == 1);
        CHECK((x * y).sign() == x.sign() * y.sign());
        if (!y.is_zero()) CHECK((x / y) * y == x);
        CHECK((x + y) - y == x);
      }
    }
  }

  TEST_CASE("text round trip") {
    std::mt19937_64 rng(7);
    for (std::uint64_t d : {0, 2, 3, 5, 7}) {
      for (int i = 0; i < 200; ++i) {
        const Scalar x = random_scalar(rng, d);
        CHECK(Scalar::parse(x.str()) == x);
      }
    }
    CHECK(Scalar(3, 4).str() == "3/4");
    CHECK(Scalar(q(-1, 2), q(1, 2), 5).str() == "(-1/2)+(1/2)*sqrt(5)");
    CHECK(Scalar::parse("7") == Scalar(7));
    CHECK(Scalar::parse("-2/4") == Scalar(-1, 2));
  }

  TEST_CASE("canonical form") {
    const Scalar x(q(1, 2), Rational(0), 5);
    CHECK(x.radicand() == 0);
    CHECK(x == Scalar(1, 2));
    const Scalar s = Scalar::sqrt_of(5);
    CHECK((s - s).radicand() == 0);
    CHECK(s * s == Scalar(5));
    CHECK(s.hash() != Scalar(5).hash());
  }

  TEST_CASE("invalid input") {
    CHECK_THROWS_AS(Scalar(Rational(1), Rational(1), 12), ArithmeticError);
    CHECK_THROWS_AS(Scalar(Rational(1), Rational(1), 1), ArithmeticError);
    CHECK_THROWS_AS(Scalar::parse("(1/1)+(1/1)*sqrt(4)"), std::invalid_argument);
    CHECK_THROWS_AS(Scalar::parse("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(Scalar::parse("abc"), ParseError);
    CHECK_THROWS_AS(Scalar::parse(""), ParseError);
    CHECK_THROWS_AS(Scalar(1) / Scalar(0), ArithmeticError);
    CHECK_THROWS_AS(Scalar::sqrt_of(2) + Scalar::sqrt_of(3), ArithmeticError);
    CHECK_NOTHROW(Scalar::sqrt_of(2) + Scalar(1, 3));
  }

  TEST_CASE("floor and ceil") {
    std::mt19937_64 rng(5);
    for (std::uint64_t d : {0, 2, 5}) {
      for (int i = 0; i < 300; ++i) {
        const Scalar x = random_scalar(rng, d) * Scalar(1000);
        const Integer f = x.floor();
        CHECK(Scalar(Rational(f)) <= x);
        CHECK(x < Scalar(Rational(f + 1)));
        const Integer c = x.ceil();
        CHECK(Scalar(Rational(c)) >= x);
        CHECK(x > Scalar(Rational(c - 1)));
      }
    }
    CHECK(Scalar::sqrt_of(5).floor() == 2);
    CHECK((-Scalar::sqrt_of(5)).floor() == -3);
    CHECK(Scalar(4).floor() == 4);
  }

  TEST_CASE("decimal rendering") {
    CHECK(Scalar(1, 4).decimal(5) == "0.25");
    const Scalar rho(q(-1, 2), q(1, 2), 5);
    CHECK(rho.decimal(10).rfind("0.618033988", 0) == 0);
  }

  TEST_CASE("square-free test") {
    CHECK(is_square_free(2));
    CHECK(is_square_free(30));
    CHECK_FALSE(is_square_free(12));
    CHECK_FALSE(is_square_free(49));
  }
}
