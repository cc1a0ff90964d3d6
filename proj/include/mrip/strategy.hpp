#pragma once

#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <vector>

#include "mrip/transcript.hpp"

namespace mrip {

// A deterministic strategy profile: one response function per prover.
// `respond` is called for prover `prover` (0-based) in odd round `round`
// (1-based) with the prover's visible history - the messages on its own
// channel from rounds 1..round-1, which alternate its earlier messages and
// the verifier's queries. Implementations must be pure functions of
// (prover, round, history); the engine may call them concurrently.
class StrategyProfile {
 public:
  virtual ~StrategyProfile() = default;

  virtual Message respond(int prover, int round, const std::vector<Message>& history) const = 0;

  // Short human-readable identity used in reports and maximizer lists.
  virtual std::string descriptor() const = 0;
};

// The membership bit a profile announces: the first token of prover 0's
// round-1 message. Returns -1 when that message is empty (no claim). Tokens
// outside {0,1} are returned verbatim; they never match a membership bit.
Token claimed_bit(const StrategyProfile& profile);

// A profile that plays like `base` except on explicitly listed
// (prover, round, visible history) triples. Useful for building one-shot
// deviations - e.g. a prover that answers honestly until it sees a specific
// query and then lies - without writing a new profile class.
class DeviationProfile : public StrategyProfile {
 public:
  DeviationProfile(std::shared_ptr<const StrategyProfile> base, std::string label);

  // Registers a response override. Later registrations for the same key win.
  void set_response(int prover, int round, std::vector<Message> history, Message reply);

  Message respond(int prover, int round, const std::vector<Message>& history) const override;
  std::string descriptor() const override;

 private:
  std::shared_ptr<const StrategyProfile> base_;
  std::map<std::tuple<int, int, std::vector<Message>>, Message> overrides_;
  std::string label_;
};

}  // namespace mrip
