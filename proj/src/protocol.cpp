#include "mrip/protocol.hpp"

#include <stdexcept>

namespace mrip {

Rational Protocol::coin_weight(std::uint64_t coin) const {
  if (coin >= coin_count()) throw std::out_of_range("coin index out of range");
  return Rational(1, static_cast<long>(coin_count()));
}

namespace {

// Drives one run into `t`, which must already be reset to the right prover
// count. Returns the payment after range-checking it.
Rational drive_run(const Protocol& protocol, const StrategyProfile& profile, std::uint64_t coin,
                   Transcript& t) {
  const int provers = protocol.num_provers();
  const int rounds = protocol.num_rounds();
  for (int round = 1; round <= rounds; ++round) {
    if (round % 2 == 1) {
      // Prover round: each prover answers from its own channel history. The
      // channel vector currently holds exactly rounds 1..round-1, i.e. the
      // prover's visible prefix.
      for (int p = 0; p < provers; ++p)
        t.channels[p].push_back(profile.respond(p, round, t.channels[p]));
    } else {
      // Verifier round: queries may depend on every channel so far, so all
      // of them are computed before any is appended.
      std::vector<Message> queries(provers);
      for (int p = 0; p < provers; ++p) queries[p] = protocol.query(coin, p, round, t);
      for (int p = 0; p < provers; ++p) t.channels[p].push_back(std::move(queries[p]));
    }
  }
  Rational r = protocol.payment(coin, t);
  static const Rational kOne(1), kMinusOne(-1);
  if (r < kMinusOne || r > kOne)
    throw std::logic_error("protocol '" + protocol.name() + "' paid " + r.str() +
                           ", outside [-1, 1]");
  return r;
}

}  // namespace

ProtocolOutcome run_protocol(const Protocol& protocol, const StrategyProfile& profile,
                             std::uint64_t coin) {
  if (coin >= protocol.coin_count()) throw std::out_of_range("coin index out of range");
  ProtocolOutcome out;
  out.transcript.reset(protocol.num_provers());
  out.payment = drive_run(protocol, profile, coin, out.transcript);
  const Message& first = out.transcript.at(0, 1);
  out.claim = first.empty() ? Token{-1} : first.front();
  return out;
}

Rational run_payment(const Protocol& protocol, const StrategyProfile& profile, std::uint64_t coin,
                     Transcript& scratch) {
  scratch.reset(protocol.num_provers());
  return drive_run(protocol, profile, coin, scratch);
}

Rational expected_payment_per_coin(const Protocol& protocol, const StrategyProfile& profile) {
  Rational total(0);
  Transcript scratch(protocol.num_provers());
  const std::uint64_t coins = protocol.coin_count();
  for (std::uint64_t coin = 0; coin < coins; ++coin)
    total += protocol.coin_weight(coin) * run_payment(protocol, profile, coin, scratch);
  return total;
}

Rational Protocol::expected_payment(const StrategyProfile& profile) const {
  return expected_payment_per_coin(*this, profile);
}

}  // namespace mrip
