#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "mrip/engine.hpp"
#include "mrip/protocol.hpp"
#include "mrip/three_level.hpp"

namespace mrip {

// The three-level-circuit protocol: decides the output of a circuit whose
// middle layer is made of NEXP gates (each deciding Oracle-3SAT membership
// of the p-bit block feeding it). Four provers, nine rounds. The verifier
// never decides a block itself - NEXP gates are delegated to a membership
// sub-protocol run with the second prover pair.
//
// Coins are weighted pairs (gate i, slot in 0..fanin(i)) with probability
// 1/G * 1/(1+fanin(i)), G the composite gate count, so every gate carries
// total weight 1/G no matter how wide it is.
//
//   round 1: prover 1 announces the circuit output c;
//   round 2: the verifier sends prover 1 the sampled gate i;
//   round 3: prover 1 reports the local view [t, v, u_1..u_fanin] - type
//            code, gate value, and the values of its input gates (for an
//            NEXP gate the u's are the whole claimed block);
//   step 4:  the view must match the circuit: right type, gate logic for
//            plain gates, x bits at input gates, c at the output gate
//            (NEXP logic is not checked here). Failure pays 0;
//   rounds 4-5: prover 2 is asked the slot's gate alone (the gate itself or
//            its slot-th input) and must answer the matching value field of
//            prover 1's report; a mismatch pays -1 (step 7b);
//   step 8:  a plain gate that survived everything pays 1;
//   rounds 6-9 (NEXP gate only): the claimed block x' goes to prover 3,
//            which answers with a membership claim and, on claim 1, an
//            oracle table; the verifier checks the table against the block
//            exhaustively. The sub-payment R' (1 accept, 1/2 for claim 0,
//            0 for a failed claim-1 check) is paid as 2R'/(p+1), but only if
//            the sub-claim equals prover 1's claimed gate value - otherwise
//            -1. A block that does not decode is treated as a non-member.
//
// Prover 4 is reserved for sub-protocol variants that need a second prover;
// the exhaustive check used here leaves it silent.
class ThreeLevelProtocol : public Protocol {
 public:
  ThreeLevelProtocol(ThreeLevelCircuit tlc, std::vector<std::uint8_t> x,
                     DeskBounds bounds = DeskBounds{});

  std::string name() const override { return "expnexp"; }
  int num_provers() const override { return 4; }
  int num_rounds() const override { return 9; }
  std::uint64_t coin_count() const override { return coin_offsets_.back(); }
  Rational coin_weight(std::uint64_t coin) const override;
  Message query(std::uint64_t coin, int prover, int round,
                const Transcript& transcript) const override;
  Rational payment(std::uint64_t coin, const Transcript& transcript) const override;

  const ThreeLevelCircuit& tlc() const { return tlc_; }
  const std::vector<std::uint8_t>& input() const { return x_; }

  // Coin decoding, exposed for the conditional-payment tests.
  std::pair<int, int> coin_to_gate_slot(std::uint64_t coin) const;
  std::uint64_t first_coin_of_gate(int gate) const { return coin_offsets_[gate - 1]; }

 private:
  bool step_four_ok(int gate, const Transcript& transcript) const;
  bool cross_check_ok(int gate, int slot, const Transcript& transcript) const;

  ThreeLevelCircuit tlc_;
  std::vector<std::uint8_t> x_;
  DeskBounds bounds_;
  std::vector<std::vector<int>> inputs_;     // 1-based cache of inputs_of
  std::vector<std::uint64_t> coin_offsets_;  // coin_offsets_[i-1] = first coin of gate i
};

std::shared_ptr<ThreeLevelProtocol> make_fig_expnexp(const ThreeLevelCircuit& tlc,
                                                     const std::vector<std::uint8_t>& x,
                                                     const DeskBounds& bounds = DeskBounds{});

// Prover 1's honest-format local view of composite gate i under a committed
// value table: [t, v, u_1..u_fanin].
Message tl_gate_report(const ThreeLevelCircuit& tlc, const std::vector<std::uint8_t>& values,
                       int i);

// A full four-prover strategy: provers 1 and 2 committed to one composite
// value table, prover 3 deciding received blocks honestly unless overridden
// for specific blocks, prover 4 silent.
class ThreeLevelProfile : public StrategyProfile {
 public:
  struct SubChoice {
    int claim = 0;
    std::vector<std::uint8_t> table;  // sent when claim = 1
  };

  ThreeLevelProfile(std::shared_ptr<const ThreeLevelCircuit> tlc, int claim,
                    std::vector<std::uint8_t> values, std::string label,
                    DeskBounds bounds = DeskBounds{});

  // Overrides prover 3's behavior for one exact received block.
  void set_sub_choice(std::vector<std::uint8_t> block, SubChoice choice);

  Message respond(int prover, int round, const std::vector<Message>& history) const override;
  std::string descriptor() const override;

  int claim() const { return claim_; }
  const std::vector<std::uint8_t>& values() const { return values_; }

 private:
  SubChoice sub_behavior(const std::vector<std::uint8_t>& block) const;

  std::shared_ptr<const ThreeLevelCircuit> tlc_;
  int claim_;
  std::vector<std::uint8_t> values_;  // 1-based composite table
  std::map<std::vector<std::uint8_t>, SubChoice> sub_overrides_;
  std::string label_;
  DeskBounds bounds_;
};

std::shared_ptr<ThreeLevelProfile> honest_three_level_profile(
    const ThreeLevelCircuit& tlc, const std::vector<std::uint8_t>& x,
    const DeskBounds& bounds = DeskBounds{});

// The structured profile family the engine exhausts for this protocol (the
// full message-function space is astronomically large): the honest profile,
// the claim flip, every single-gate value flip with both claims, both
// constant tables with both claims, `random_tables` seeded random tables
// with both claims, and per-block sub-prover deviations (flipped sub-claim;
// corrupted table where the honest sub-claim is 1).
std::unique_ptr<ProfileFamily> make_three_level_family(const ThreeLevelCircuit& tlc,
                                                       const std::vector<std::uint8_t>& x,
                                                       std::uint64_t seed = 1,
                                                       int random_tables = 8,
                                                       const DeskBounds& bounds = DeskBounds{});

}  // namespace mrip
