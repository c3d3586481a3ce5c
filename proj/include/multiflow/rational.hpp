// Exact rational arithmetic. Every value in this project that is not a plain
// count is a Rational; no floating-point value ever participates in a result.
#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace multiflow {

// Arbitrary-precision integer (counts, scaled numerators, bounds).
using Int = mpz_class;

class DivisionByZero : public std::domain_error {
 public:
  DivisionByZero() : std::domain_error("rational division by zero") {}
};

// Exact rational number, always stored in lowest terms with a positive
// denominator. Arithmetic never rounds; comparisons are exact.
class Rational {
 public:
  Rational() : q_(0) {}
  Rational(int n) : q_(n) {}
  Rational(long n) : q_(static_cast<long>(n)) {}
  Rational(long long n) : q_(Int(static_cast<long>(n))) {}
  explicit Rational(const Int& n) : q_(n) {}

  Rational(const Int& num, const Int& den) {
    if (den == 0) throw DivisionByZero();
    q_ = mpq_class(num, den);
    q_.canonicalize();
  }
  Rational(long num, long den) : Rational(Int(num), Int(den)) {}

  // Parses "num", "num/den", or a leading-sign variant thereof.
  static Rational parse(const std::string& text);

  Int num() const { return q_.get_num(); }
  Int den() const { return q_.get_den(); }

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }

  Rational abs() const { return wrap(::abs(q_)); }
  Rational reciprocal() const {
    if (is_zero()) throw DivisionByZero();
    return wrap(1 / q_);
  }

  Rational operator-() const { return wrap(-q_); }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw DivisionByZero();
    q_ /= o.q_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return mpq_equal(a.q_.get_mpq_t(), b.q_.get_mpq_t()) != 0;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  // "num/den", or just "num" when the denominator is 1.
  std::string str() const;

  // Decimal rendering for human-readable tables only; never used in logic.
  double approx() const { return q_.get_d(); }

 private:
  static Rational wrap(mpq_class q) {
    Rational r;
    r.q_ = std::move(q);
    return r;
  }
  mpq_class q_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

// Convenience literal-style constructor: frac(2, 3) == 2/3.
inline Rational frac(long num, long den) { return Rational(num, den); }

}  // namespace multiflow
