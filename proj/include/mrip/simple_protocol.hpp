#pragma once

#include <cstdint>
#include <memory>

#include "mrip/engine.hpp"
#include "mrip/oracle3sat.hpp"
#include "mrip/protocol.hpp"

namespace mrip {

// The flat-payment membership protocol for Oracle-3SAT. Two provers, three
// rounds. Prover 1 opens with the membership bit c. A claim of c = 0 is
// simply paid 1/2. A claim of c = 1 triggers a classical multi-prover
// membership check and pays 1 on accept, 0 on reject. Lying is unattractive
// in both directions: claiming 0 on a member forfeits the extra 1/2, and
// claiming 1 on a non-member gets caught by the check.
//
// Two interchangeable membership checks are provided:
//   kExhaustive - prover 1 transmits the whole oracle table and the verifier
//     checks every assignment w. Deterministic, a single coin.
//   kSpotCheck  - the verifier samples m assignments (m chosen so that a
//     false claim survives with probability at most 1/3), asks prover 1 the
//     3m oracle queries, re-asks prover 2 one uniformly chosen query, and
//     accepts iff all m assignments check out and the two answers agree.
//     The raw coin space has W^m * 3m coins, so this variant is only
//     constructible at small widths.
enum class MipVariant { kExhaustive, kSpotCheck };

struct SimpleOptions {
  MipVariant variant = MipVariant::kExhaustive;
  // Negative control: accept every c = 1 claim without checking. The result
  // is not an MRIP (on non-members the maximizers claim 1); the CLI exposes
  // it so the exit-status contract can be demonstrated.
  bool broken_accept_all = false;
  DeskBounds bounds{};
};

// Smallest m >= 1 with (1 - 1/W)^m <= 1/3, computed exactly.
int spot_check_count(const Oracle3SatInstance& instance);

class SimpleProtocol : public Protocol {
 public:
  SimpleProtocol(Oracle3SatInstance instance, SimpleOptions options);

  std::string name() const override;
  int num_provers() const override { return 2; }
  int num_rounds() const override { return 3; }
  std::uint64_t coin_count() const override { return coin_count_; }
  Message query(std::uint64_t coin, int prover, int round,
                const Transcript& transcript) const override;
  Rational payment(std::uint64_t coin, const Transcript& transcript) const override;

  const Oracle3SatInstance& instance() const { return instance_; }
  MipVariant variant() const { return options_.variant; }
  int spot_checks() const { return m_; }  // m of the spot-check variant (0 otherwise)

 private:
  Oracle3SatInstance instance_;
  SimpleOptions options_;
  int m_ = 0;
  std::uint64_t coin_count_ = 1;
};

std::shared_ptr<SimpleProtocol> make_fig_simple(const Oracle3SatInstance& instance,
                                                const SimpleOptions& options = {});

// The committed strategies the engine exhausts for this protocol: prover 1
// announces c and both provers answer oracle queries from a fixed table.
// When asked with an empty query message (the exhaustive variant's request),
// prover 1 transmits its whole table. A split pair with different tables for
// the two provers is available for deviation experiments.
class SimpleCommittedProfile : public StrategyProfile {
 public:
  SimpleCommittedProfile(int claim, OracleTable table);
  SimpleCommittedProfile(int claim, OracleTable table1, OracleTable table2);

  Message respond(int prover, int round, const std::vector<Message>& history) const override;
  std::string descriptor() const override;

  int claim() const { return claim_; }

 private:
  int claim_;
  OracleTable table1_, table2_;
};

// All committed profiles with a shared table: index = c * 2^(2^s) + table
// index, so the c = 0 block comes first.
std::unique_ptr<ProfileFamily> make_simple_committed_family(const Oracle3SatInstance& instance);

}  // namespace mrip
