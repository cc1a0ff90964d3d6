#pragma once

#include <cstdint>
#include <string>

#include "mrip/rational.hpp"
#include "mrip/strategy.hpp"
#include "mrip/transcript.hpp"

namespace mrip {

// A rational interactive proof protocol with an explicit finite coin space.
//
// Rounds are 1-based and alternate: in odd rounds every prover sends a
// message to the verifier, in even rounds the verifier sends one message to
// every prover. The verifier is deterministic given the coin index; all of
// its randomness is the choice of coin. After the final round it pays the
// provers a single payment in [-1, 1], shared by all of them.
class Protocol {
 public:
  virtual ~Protocol() = default;

  virtual std::string name() const = 0;
  virtual int num_provers() const = 0;
  virtual int num_rounds() const = 0;

  // Coins are indexed 0..coin_count()-1.
  virtual std::uint64_t coin_count() const = 0;

  // Probability of drawing `coin`. Uniform by default; weighted protocols
  // override. Weights must be positive and sum to exactly 1 (tested).
  virtual Rational coin_weight(std::uint64_t coin) const;

  // The verifier's message to `prover` (0-based) in even round `round`,
  // given the coin and everything exchanged in rounds 1..round-1.
  virtual Message query(std::uint64_t coin, int prover, int round,
                        const Transcript& transcript) const = 0;

  // The payment after the final round. Must lie in [-1, 1]; the run loop
  // enforces this. Verifiers here are defensive: a message that does not
  // parse as the protocol expects earns the worst payment the protocol can
  // hand out rather than crashing the run.
  virtual Rational payment(std::uint64_t coin, const Transcript& transcript) const = 0;

  // Exact expected payment of `profile` under the coin distribution. The
  // default runs every coin and accumulates weight * payment. Protocols may
  // override with an algebraically regrouped computation; overrides must be
  // exact and agree with the per-coin path (property-tested).
  virtual Rational expected_payment(const StrategyProfile& profile) const;
};

struct ProtocolOutcome {
  Transcript transcript;
  Rational payment;
  Token claim = -1;  // first token of prover 0's round-1 message, -1 if empty
};

// Executes one full run under `coin` and returns the transcript, the
// payment (validated to lie in [-1, 1]) and the announced membership bit.
ProtocolOutcome run_protocol(const Protocol& protocol, const StrategyProfile& profile,
                             std::uint64_t coin);

// Allocation-light variant for hot loops: reuses `scratch`'s buffers and
// returns only the payment.
Rational run_payment(const Protocol& protocol, const StrategyProfile& profile,
                     std::uint64_t coin, Transcript& scratch);

// The per-coin reference evaluation of the expected payment - exactly what
// Protocol::expected_payment does when not overridden. Tests use it to
// cross-check protocols that override the default.
Rational expected_payment_per_coin(const Protocol& protocol, const StrategyProfile& profile);

}  // namespace mrip
