#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "mrip/engine.hpp"
#include "mrip/protocol.hpp"

namespace mrip {

// ---- complement wrapper -----------------------------------------------------
//
// Decides the complement language of the wrapped protocol: the verifier is
// the inner verifier run on a transcript whose announced bit (the first
// token of prover 1's opening, when it is a bit) is flipped. A strategy
// claiming c in the wrapper is treated exactly as a strategy claiming 1-c
// inside, so payment-maximizers end up announcing the complemented
// membership bit. Coins, rounds and prover count are untouched.
class ComplementProtocol : public Protocol {
 public:
  explicit ComplementProtocol(std::shared_ptr<const Protocol> inner);

  std::string name() const override;
  int num_provers() const override { return inner_->num_provers(); }
  int num_rounds() const override { return inner_->num_rounds(); }
  std::uint64_t coin_count() const override { return inner_->coin_count(); }
  Rational coin_weight(std::uint64_t coin) const override { return inner_->coin_weight(coin); }
  Message query(std::uint64_t coin, int prover, int round,
                const Transcript& transcript) const override;
  Rational payment(std::uint64_t coin, const Transcript& transcript) const override;

  const Protocol& inner() const { return *inner_; }

 private:
  Transcript flipped(const Transcript& transcript) const;
  std::shared_ptr<const Protocol> inner_;
};

std::shared_ptr<ComplementProtocol> complement_wrap(std::shared_ptr<const Protocol> inner);

// The matching strategy bijection: behaves like `base` with the first token
// of the opening message flipped, and translates histories so `base` never
// notices. An involution: flipping twice gives back the original behavior.
// Run for run, wrapper(sigma) and inner(flip(sigma)) earn the same payment.
std::shared_ptr<const StrategyProfile> complement_profile(
    std::shared_ptr<const StrategyProfile> base);

// ---- 2-prover / 5-round wrapper ---------------------------------------------
//
// Compresses any inner protocol (t provers, p rounds) to two provers and
// five rounds. Coins are (r, j, k): the inner coin, a round j in 1..p and a
// prover k in 1..t.
//
//   round 1: prover 1' announces c;
//   round 2: the verifier reveals the inner coin r;
//   round 3: prover 1' claims the entire inner interaction - every inner
//            prover's message in every prover round, length-prefixed;
//   round 4: the verifier reconstructs the inner transcript (claimed prover
//            messages, recomputed verifier messages), picks (j, k), and
//            sends prover 2' the round number, the prover index and inner
//            prover k's channel history before round j;
//   round 5: prover 2' answers with inner prover k's round-j message (the
//            empty message when j is a verifier round).
//
// Pay -1 when the claim is malformed, when prover 2's answer differs from
// the claimed message (consistency), or when (j, k) = (1, 1) and the answer
// does not open with c (the announced bit must be the inner one). Otherwise
// pay the inner payment of the claimed transcript, scaled by 1/(2pt).
// Honest lifts therefore earn exactly u_inner/(2pt), and a claim lying
// anywhere earns strictly negative expectation conditioned on that coin.
class TwoFiveProtocol : public Protocol {
 public:
  explicit TwoFiveProtocol(std::shared_ptr<const Protocol> inner);

  std::string name() const override;
  int num_provers() const override { return 2; }
  int num_rounds() const override { return 5; }
  std::uint64_t coin_count() const override;
  Rational coin_weight(std::uint64_t coin) const override;
  Message query(std::uint64_t coin, int prover, int round,
                const Transcript& transcript) const override;
  Rational payment(std::uint64_t coin, const Transcript& transcript) const override;

  // Exact evaluation with two fast routes, both property-tested against the
  // per-coin path: honest lifts of this very protocol collapse to
  // inner_utility/(2pt) (their claims are real runs, so every consistency
  // check passes by construction); everything else is regrouped per inner
  // coin, parsing each claim and reconstructing once instead of pt times.
  Rational expected_payment(const StrategyProfile& profile) const override;

  const Protocol& inner() const { return *inner_; }
  int inner_rounds() const { return p_; }
  int inner_provers() const { return t_; }

  // (r, j, k) <-> coin index; j is 1-based, k is 0-based.
  std::uint64_t coin_of(std::uint64_t r, int j, int k) const;

 private:
  struct Verdict {
    bool claim_ok = false;
    std::vector<std::vector<Message>> claimed;  // [prover][prover-round index]
    Transcript reconstructed;
  };
  Verdict reconstruct(std::uint64_t r, const Message& claim_msg) const;
  // scaled_inner = inner payment of the reconstructed transcript / (2pt),
  // computed once per inner coin by both callers.
  Rational judge(int j, int k, const Verdict& verdict, Token c, const Message& response,
                 const Rational& scaled_inner) const;
  Rational scaled_inner_payment(std::uint64_t r, const Verdict& verdict) const;

  std::shared_ptr<const Protocol> inner_;
  int p_;  // inner rounds
  int t_;  // inner provers
};

std::shared_ptr<TwoFiveProtocol> two_five_wrap(std::shared_ptr<const Protocol> inner);

// The honest lift of an inner profile: prover 1' opens with the inner bit
// and claims real inner runs (built per inner coin on first use); prover 2'
// simulates the requested inner prover on the prefix it is shown.
class HonestLiftProfile : public StrategyProfile {
 public:
  HonestLiftProfile(std::shared_ptr<const Protocol> inner,
                    std::shared_ptr<const StrategyProfile> base);

  Message respond(int prover, int round, const std::vector<Message>& history) const override;
  std::string descriptor() const override;

  const std::shared_ptr<const Protocol>& inner() const { return inner_; }
  const std::shared_ptr<const StrategyProfile>& base() const { return base_; }
  // Whether the base profile sends a nonempty inner opening; the closed-form
  // utility u/(2pt) requires it (an empty opening fails the announcement
  // binding at (j, k) = (1, first prover)).
  bool opens() const { return !opening_.empty(); }

 private:
  Message claim_for(std::uint64_t r) const;  // canonical claim, lazily built from a real run

  std::shared_ptr<const Protocol> inner_;
  std::shared_ptr<const StrategyProfile> base_;
  Message opening_;  // the base profile's inner round-1 message
  mutable std::mutex mutex_;
  mutable std::vector<std::optional<Message>> claims_;
};

// A lift that lies: the claim for every inner coin is tampered with at one
// (prover, round) slot (an extra token appended), while prover 2' stays
// honest. Every inner coin then carries one inconsistent pair, so the
// expected payment is strictly negative.
std::shared_ptr<const StrategyProfile> tampered_lift_profile(
    std::shared_ptr<const Protocol> inner, std::shared_ptr<const StrategyProfile> base,
    int lie_prover, int lie_round);

// Lifts every profile of an inner family.
std::unique_ptr<ProfileFamily> make_lifted_family(std::shared_ptr<const Protocol> inner,
                                                  std::shared_ptr<const ProfileFamily> base);

// Applies complement_profile to every profile of a family (the strategy-side
// counterpart of complement_wrap).
std::unique_ptr<ProfileFamily> make_complement_family(std::shared_ptr<const ProfileFamily> base);

}  // namespace mrip
