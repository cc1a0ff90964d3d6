#pragma once

#include "mrip/rational.hpp"

namespace mrip {

// A reported distribution over the binary outcome space {0,1}.
// p0 is implicit as 1 - p1. Construction checks 0 <= p1 <= 1.
struct BinaryDistribution {
  Rational p1;

  explicit BinaryDistribution(Rational prob_of_one);
  Rational p0() const { return Rational(1) - p1; }
};

// Brier's quadratic scoring rule, BSR(D, w) = 2 D(w) - sum_w D(w)^2 - 1.
// Range [-2, 0]; 0 only for a certain, correct forecast. Strictly proper.
Rational brier_score(const BinaryDistribution& report, int outcome);

// The shifted/scaled variant used as the step-5c payment of the scoring
// protocol: (2 p_b - (p1^2 + p0^2) + 1) / 11 = (BSR + 2) / 11, range [0, 2/11].
// The /11 scaling is kept exactly as stated; downstream payment bounds
// (R <= 2/11) are quoted against it.
Rational protocol_score(const BinaryDistribution& report, int b);

// Expected step-5c payment when the outcome bit is 1 with probability
// truth.p1: q * score(report,1) + (1-q) * score(report,0). The truthful curve
// g(q) = expected_protocol_score(q,q) equals (2(q^2 - q) + 2) / 11 — symmetric
// about 1/2, minimized there, maximized at q in {0,1}.
Rational expected_protocol_score(const BinaryDistribution& report,
                                 const BinaryDistribution& truth);

}  // namespace mrip
