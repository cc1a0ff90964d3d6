#pragma once

#include <cstdint>
#include <memory>

#include "mrip/engine.hpp"
#include "mrip/oracle3sat.hpp"
#include "mrip/protocol.hpp"
#include "mrip/scoring.hpp"

namespace mrip {

// The scoring-rule membership protocol for Oracle-3SAT. Two provers, three
// rounds, coin = (w, w', k) with w, w' uniform assignments and k in 1..6.
//
//   round 1: prover 1 sends (c, a) - the membership bit and a report a/W of
//            the chance a random assignment is satisfied, a in 0..W, W = 2^(r+3s);
//   step 2:  claiming c = 1 with a < W, or c = 0 with a = W, halts with -1
//            (the bit must commit to whether the report is "all satisfied");
//   round 2: the verifier sends prover 1 the six oracle queries of w and w',
//            and prover 2 only the k-th of those six;
//   round 3: prover 1 returns six answer bits, prover 2 one;
//   step 5a: the answers to the k-th query disagree: -1;
//   step 5b: w with prover 1's answers does not satisfy the formula: 0;
//   step 5c: otherwise pay the proper-scoring payment for report a/W against
//            the outcome "w' with prover 1's answers satisfies the formula".
//
// Reporting the true satisfied fraction of the committed oracle is the
// unique best report, and inflating it to "all" (the c = 1 region) costs
// exactly 2 f (1-f)^2 / 11, so the maximizers carry the right bit.
class ScoringProtocol : public Protocol {
 public:
  explicit ScoringProtocol(Oracle3SatInstance instance, DeskBounds bounds = DeskBounds{});

  std::string name() const override { return "scoring"; }
  int num_provers() const override { return 2; }
  int num_rounds() const override { return 3; }
  std::uint64_t coin_count() const override { return 6 * w_count_ * w_count_; }
  Message query(std::uint64_t coin, int prover, int round,
                const Transcript& transcript) const override;
  Rational payment(std::uint64_t coin, const Transcript& transcript) const override;

  // Closed-form shortcut for committed profiles with one shared table:
  // -1 when (c, a) is in the halt region, else f * E-score(a/W against f)
  // with f the table's satisfied fraction. Anything else falls back to the
  // per-coin path. Exactness is property-tested against that path.
  Rational expected_payment(const StrategyProfile& profile) const override;

  const Oracle3SatInstance& instance() const { return instance_; }
  std::uint64_t report_denominator() const { return w_count_; }  // W

 private:
  struct CoinParts {
    std::uint64_t w, w_prime;
    int k;  // 0-based position of the cross-checked query
  };
  CoinParts split(std::uint64_t coin) const;

  Oracle3SatInstance instance_;
  std::uint64_t w_count_;
};

std::shared_ptr<ScoringProtocol> make_fig_scoring(const Oracle3SatInstance& instance,
                                                  const DeskBounds& bounds = DeskBounds{});

// Committed strategy: prover 1 opens with (c, a), then both provers answer
// oracle queries from fixed tables (shared in the canonical family).
class ScoringCommittedProfile : public StrategyProfile {
 public:
  ScoringCommittedProfile(int claim, std::uint64_t report, OracleTable table);
  ScoringCommittedProfile(int claim, std::uint64_t report, OracleTable table1,
                          OracleTable table2);

  Message respond(int prover, int round, const std::vector<Message>& history) const override;
  std::string descriptor() const override;

  int claim() const { return claim_; }
  std::uint64_t report() const { return report_; }
  const OracleTable& table1() const { return table1_; }
  const OracleTable& table2() const { return table2_; }
  bool shared_table() const { return table1_ == table2_; }

 private:
  int claim_;
  std::uint64_t report_;
  OracleTable table1_, table2_;
};

// Every (c, a, shared table): index = (c * (W+1) + a) * 2^(2^s) + table.
std::unique_ptr<ProfileFamily> make_scoring_committed_family(const Oracle3SatInstance& instance);

// The honest profile: c = membership, a = a* (the best oracle's satisfied
// count), table = the witness oracle, as produced by decide_oracle3sat.
std::shared_ptr<ScoringCommittedProfile> honest_scoring_profile(
    const Oracle3SatInstance& instance, const DeskBounds& bounds = DeskBounds{});

}  // namespace mrip
