#include "mrip/scoring.hpp"

#include <stdexcept>

namespace mrip {

BinaryDistribution::BinaryDistribution(Rational prob_of_one) : p1(std::move(prob_of_one)) {
  if (p1 < Rational(0) || p1 > Rational(1))
    throw std::invalid_argument("BinaryDistribution: p1 must lie in [0,1], got " + p1.str());
}

Rational brier_score(const BinaryDistribution& report, int outcome) {
  const Rational p_omega = outcome ? report.p1 : report.p0();
  return Rational(2) * p_omega - (report.p1 * report.p1 + report.p0() * report.p0()) - Rational(1);
}

Rational protocol_score(const BinaryDistribution& report, int b) {
  return (brier_score(report, b) + Rational(2)) / Rational(11);
}

Rational expected_protocol_score(const BinaryDistribution& report,
                                 const BinaryDistribution& truth) {
  return truth.p1 * protocol_score(report, 1) + truth.p0() * protocol_score(report, 0);
}

}  // namespace mrip
