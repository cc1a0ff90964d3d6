#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <string>

namespace mrip {

// Exact rational number, always in lowest terms with a positive denominator.
//
// Every payment, probability and expected utility in this project is a
// Rational; there is deliberately no conversion to floating point anywhere in
// a payment path. Backed by GMP so that products of many small probabilities
// (e.g. closed-form acceptance probabilities f^m) stay exact.
class Rational {
public:
  Rational() : v_(0) {}
  Rational(long n) : v_(n) {}  // NOLINT: implicit by design, mirrors integer literals
  Rational(long n, long d);
  explicit Rational(const mpq_class& v);

  // Parses "num/den" or a bare integer "num". Throws std::invalid_argument on
  // malformed input or a zero denominator.
  static Rational from_string(const std::string& s);

  // Renders as "num/den" with den always present ("0/1", "-3/7", ...). This is
  // the serialization format used in every report.
  std::string str() const;

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  int sign() const { return sgn(v_); }
  std::string numerator_str() const { return v_.get_num().get_str(); }
  std::string denominator_str() const { return v_.get_den().get_str(); }

  // a^e for non-negative integer exponents (used by the closed-form f^m path).
  Rational pow(unsigned long e) const;

  Rational abs() const { return v_ < 0 ? Rational(mpq_class(-v_)) : *this; }

  const mpq_class& raw() const { return v_; }

private:
  mpq_class v_;  // invariant: canonical (lowest terms, positive denominator)
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace mrip
