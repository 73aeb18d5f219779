// SPDX-License-Identifier: Apache-2.0

#include "ifsnet/exact.hpp"

#include <cctype>
#include <cstdio>
#include <functional>
#include <vector>

namespace ifsnet {

bool is_square_free(std::uint64_t d) {
  if (d == 0) return false;
  for (std::uint64_t p = 2; p * p <= d; ++p) {
    if (d % (p * p) == 0) return false;
  }
  return true;
}

Scalar::Scalar(long num, long den) {
  if (den == 0) throw ArithmeticError("zero denominator");
  a_ = Rational(num, den);
  a_.canonicalize();
}

Scalar::Scalar(Rational a, Rational b, std::uint64_t d)
    : a_(std::move(a)), b_(std::move(b)), d_(d) {
  a_.canonicalize();
  b_.canonicalize();
  if (sgn(b_) != 0 && (d_ < 2 || !is_square_free(d_))) {
    throw ArithmeticError("radicand " + std::to_string(d_) +
                          " is not a square-free integer > 1");
  }
  canonicalize();
}

Scalar::Scalar(Rational a, Rational b, std::uint64_t d, Unchecked)
    : a_(std::move(a)), b_(std::move(b)), d_(d) {
  canonicalize();
}

void Scalar::canonicalize() {
  if (sgn(b_) == 0) d_ = 0;
}

std::uint64_t common_radicand(const Scalar& x, const Scalar& y) {
  if (x.radicand() == 0) return y.radicand();
  if (y.radicand() == 0 || y.radicand() == x.radicand()) return x.radicand();
  throw ArithmeticError("mismatched radicands " + std::to_string(x.radicand()) +
                        " and " + std::to_string(y.radicand()));
}

Scalar operator+(const Scalar& x, const Scalar& y) {
  const auto d = common_radicand(x, y);
  if (d == 0) return Scalar(Rational(x.a_ + y.a_));
  return Scalar(x.a_ + y.a_, x.b_ + y.b_, d, Scalar::Unchecked{});
}

Scalar operator-(const Scalar& x, const Scalar& y) {
  const auto d = common_radicand(x, y);
  if (d == 0) return Scalar(Rational(x.a_ - y.a_));
  return Scalar(x.a_ - y.a_, x.b_ - y.b_, d, Scalar::Unchecked{});
}

Scalar operator-(const Scalar& x) {
  if (x.d_ == 0) return Scalar(Rational(-x.a_));
  return Scalar(-x.a_, -x.b_, x.d_, Scalar::Unchecked{});
}

Scalar operator*(const Scalar& x, const Scalar& y) {
  const auto d = common_radicand(x, y);
  if (d == 0) return Scalar(Rational(x.a_ * y.a_));
  // (a + b r)(c + e r) = (ac + be d) + (ae + bc) r
  Rational a = x.a_ * y.a_ + x.b_ * y.b_ * d;
  Rational b = x.a_ * y.b_ + x.b_ * y.a_;
  return Scalar(std::move(a), std::move(b), d, Scalar::Unchecked{});
}

Scalar operator/(const Scalar& x, const Scalar& y) {
  if (y.is_zero()) throw ArithmeticError("division by zero");
  const auto d = common_radicand(x, y);
  if (d == 0) return Scalar(Rational(x.a_ / y.a_));
  // multiply by the conjugate; the norm c^2 - e^2 d is non-zero because d is
  // not a perfect square
  Rational norm = y.a_ * y.a_ - y.b_ * y.b_ * d;
  Rational a = (x.a_ * y.a_ - x.b_ * y.b_ * d) / norm;
  Rational b = (x.b_ * y.a_ - x.a_ * y.b_) / norm;
  return Scalar(std::move(a), std::move(b), d, Scalar::Unchecked{});
}

int Scalar::sign() const {
  const int sa = sgn(a_);
  const int sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // opposite signs: the larger of a^2 and b^2 d wins
  const int cmp = ::cmp(Rational(a_ * a_), Rational(b_ * b_ * d_));
  if (cmp > 0) return sa;
  if (cmp < 0) return sb;
  return 0;
}

std::strong_ordering operator<=>(const Scalar& x, const Scalar& y) {
  if (x.d_ == 0 && y.d_ == 0) {
    const int c = cmp(x.a_, y.a_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
  const int s = (x - y).sign();
  return s < 0 ? std::strong_ordering::less
               : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

Scalar min(const Scalar& x, const Scalar& y) { return y < x ? y : x; }
Scalar max(const Scalar& x, const Scalar& y) { return x < y ? y : x; }

namespace {

mpf_class to_mpf(const Scalar& x, mp_bitcnt_t bits) {
  mpf_class a(x.rational_part(), bits);
  if (x.is_rational()) return a;
  mpf_class r(0, bits);
  mpf_sqrt_ui(r.get_mpf_t(), x.radicand());
  mpf_class b(x.sqrt_coefficient(), bits);
  mpf_class out(0, bits);
  out = a + b * r;
  return out;
}

}  // namespace

Integer Scalar::floor() const {
  if (is_rational()) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a_.get_num_mpz_t(), a_.get_den_mpz_t());
    return q;
  }
  const mpf_class v = to_mpf(*this, 512);
  mpf_class f(0, 512);
  mpf_floor(f.get_mpf_t(), v.get_mpf_t());
  Integer n(f);
  // correct the approximation exactly
  while (Scalar(Rational(n)) > *this) --n;
  while (Scalar(Rational(n + 1)) <= *this) ++n;
  return n;
}

Integer Scalar::ceil() const {
  Integer n = floor();
  if (Scalar(Rational(n)) == *this) return n;
  return n + 1;
}

std::string Scalar::str() const {
  auto rat = [](const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
  };
  if (d_ == 0) return rat(a_);
  return "(" + rat(a_) + ")+(" + rat(b_) + ")*sqrt(" + std::to_string(d_) + ")";
}

std::string Scalar::decimal(int digits) const {
  const auto bits = static_cast<mp_bitcnt_t>(digits * 4 + 64);
  const mpf_class v = to_mpf(*this, bits);
  std::vector<char> buf(static_cast<std::size_t>(digits) + 64);
  gmp_snprintf(buf.data(), buf.size(), "%.*Fg", digits, v.get_mpf_t());
  return buf.data();
}

double Scalar::approx() const { return to_mpf(*this, 128).get_d(); }

std::size_t hash_integer(const Integer& z) {
  std::size_t h = static_cast<std::size_t>(mpz_sgn(z.get_mpz_t())) + 0x9e3779b97f4a7c15ULL;
  const std::size_t n = mpz_size(z.get_mpz_t());
  for (std::size_t i = 0; i < n; ++i) {
    h ^= static_cast<std::size_t>(mpz_getlimbn(z.get_mpz_t(), static_cast<mp_size_t>(i))) +
         0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

std::size_t Scalar::hash() const {
  std::size_t h = hash_integer(a_.get_num());
  auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
  mix(hash_integer(a_.get_den()));
  if (d_ != 0) {
    mix(hash_integer(b_.get_num()));
    mix(hash_integer(b_.get_den()));
    mix(std::hash<std::uint64_t>{}(d_));
  }
  return h;
}

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view s) : s_(s) {}

  bool done() const { return i_ == s_.size(); }
  std::size_t pos() const { return i_; }
  char peek() const { return done() ? '\0' : s_[i_]; }

  void expect(std::string_view lit) {
    if (s_.substr(i_, lit.size()) != lit) {
      throw ParseError("expected '" + std::string(lit) + "'", i_);
    }
    i_ += lit.size();
  }

  bool accept(char c) {
    if (peek() != c) return false;
    ++i_;
    return true;
  }

  std::string digits() {
    const std::size_t start = i_;
    while (!done() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (start == i_) throw ParseError("expected digits", i_);
    return std::string(s_.substr(start, i_ - start));
  }

  Rational rational() {
    const bool neg = accept('-');
    Integer num(digits());
    Integer den(1);
    if (accept('/')) {
      const std::size_t at = i_;
      den = Integer(digits());
      if (den == 0) throw ParseError("zero denominator", at);
    }
    Rational q(neg ? Integer(-num) : num, den);
    q.canonicalize();
    return q;
  }

 private:
  std::string_view s_;
  std::size_t i_ = 0;
};

}  // namespace

Scalar Scalar::parse(std::string_view text) {
  Cursor c(text);
  if (c.peek() != '(') {
    Rational q = c.rational();
    if (!c.done()) throw ParseError("trailing characters in scalar", c.pos());
    return Scalar(std::move(q));
  }
  c.expect("(");
  Rational a = c.rational();
  c.expect(")+(");
  Rational b = c.rational();
  c.expect(")*sqrt(");
  const std::size_t at = c.pos();
  const std::string ds = c.digits();
  c.expect(")");
  if (!c.done()) throw ParseError("trailing characters in scalar", c.pos());
  if (ds.size() > 18) throw ParseError("radicand too large", at);
  const auto d = std::stoull(ds);
  if (d < 2 || !is_square_free(d)) {
    throw ParseError("radicand " + ds + " is not a square-free integer > 1", at);
  }
  return Scalar(std::move(a), std::move(b), d);
}

}  // namespace ifsnet
