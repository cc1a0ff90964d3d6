#include "mrip/rational.hpp"

#include <ostream>
#include <stdexcept>

namespace {

// Strict integer token: an optional leading '-', then digits only. GMP's own
// parser skips whitespace, which would let padded report fields through.
bool integer_token(const std::string& t) {
  std::size_t i = (t.size() > 1 && t[0] == '-') ? 1 : 0;
  if (i >= t.size()) return false;
  for (; i < t.size(); ++i) {
    if (t[i] < '0' || t[i] > '9') return false;
  }
  return true;
}

}  // namespace

namespace mrip {

Rational::Rational(long n, long d) {
  if (d == 0) throw std::invalid_argument("Rational: zero denominator");
  v_ = mpq_class(n, d);
  v_.canonicalize();
}

Rational::Rational(const mpq_class& v) : v_(v) {
  v_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.v_ == 0) throw std::invalid_argument("Rational: division by zero");
  v_ /= o.v_;
  return *this;
}

Rational Rational::from_string(const std::string& s) {
  std::string num = s, den = "1";
  if (auto slash = s.find('/'); slash != std::string::npos) {
    num = s.substr(0, slash);
    den = s.substr(slash + 1);
  }
  mpz_class n, d;
  if (!integer_token(num) || n.set_str(num, 10) != 0)
    throw std::invalid_argument("Rational: malformed numerator in '" + s + "'");
  if (!integer_token(den) || d.set_str(den, 10) != 0)
    throw std::invalid_argument("Rational: malformed denominator in '" + s + "'");
  if (d == 0) throw std::invalid_argument("Rational: zero denominator in '" + s + "'");
  mpq_class q(n);
  q /= mpq_class(d);
  return Rational(q);
}

std::string Rational::str() const {
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rational Rational::pow(unsigned long e) const {
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), v_.get_num().get_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), v_.get_den().get_mpz_t(), e);
  mpq_class q(num);
  q /= mpq_class(den);
  return Rational(q);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.str();
}

}  // namespace mrip
