#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "mrip/circuit.hpp"
#include "mrip/engine.hpp"
#include "mrip/protocol.hpp"

namespace mrip {

// The gate-spot-check protocol: decides C(x) = 1 for an explicit circuit by
// asking the provers about one uniformly chosen gate. Two provers, three
// rounds, coin = (gate i, slot in {0,1,2}), 3g coins in all.
//
//   round 1: prover 1 announces c;
//   round 2: the verifier sends prover 1 the gate id i, and prover 2 a
//            single gate id i' - gate i itself (slot 0) or one of its input
//            gates (slots 1/2; a slot beyond the gate's fan-in falls back to
//            i so the coin space stays uniform);
//   round 3: prover 1 reports the gate's local view
//            [t, i1, i2, h1, h2, v, v1, v2] - type, input gate ids, input
//            wire ids, gate value and input values (absent fields are
//            ignored); prover 2 reports the value of i' alone;
//   checks:  topology fields must agree with the structure oracle (TYPE /
//            INPUT / OUTPUT wire queries), v must follow from (v1, v2) by the
//            gate's logic, input gates must report their x bit, the output
//            gate must report c, and prover 2's value must match the
//            corresponding field of prover 1's report.
//
// All checks pass: payment 1; anything else: 0. A profile whose reported
// values deviate from the true computation anywhere is caught with
// probability at least 1/(3g) (a single slot of a single gate), and a
// topology lie with probability at least 1/g, which the tests realize
// exactly.
class CircuitProtocol : public Protocol {
 public:
  CircuitProtocol(Circuit circuit, std::vector<std::uint8_t> x);
  CircuitProtocol(const CircuitProtocol&) = delete;
  CircuitProtocol& operator=(const CircuitProtocol&) = delete;

  std::string name() const override { return "expmrip"; }
  int num_provers() const override { return 2; }
  int num_rounds() const override { return 3; }
  std::uint64_t coin_count() const override { return 3 * static_cast<std::uint64_t>(g_); }
  Message query(std::uint64_t coin, int prover, int round,
                const Transcript& transcript) const override;
  Rational payment(std::uint64_t coin, const Transcript& transcript) const override;

  const Circuit& circuit() const { return circuit_; }
  const std::vector<std::uint8_t>& input() const { return x_; }

 private:
  int slot_target(int gate, int slot) const;

  Circuit circuit_;
  std::vector<std::uint8_t> x_;
  CircuitDcOracle dc_;
  int g_;
};

std::shared_ptr<CircuitProtocol> make_fig_expmrip(const Circuit& circuit,
                                                  const std::vector<std::uint8_t>& x);

// The honest-topology local view of gate i under a committed value table
// (1-based, size g+1): [t, i1, i2, h1, h2, v, v1, v2] with absent fields 0.
// Exposed so tests can take an honest report and tamper with single fields.
Message gate_report(const Circuit& circuit, const std::vector<std::uint8_t>& values, int i);

// Both provers committed to one value table and honest topology reporting.
class GateOracleProfile : public StrategyProfile {
 public:
  GateOracleProfile(std::shared_ptr<const Circuit> circuit, int claim,
                    std::vector<std::uint8_t> values);

  Message respond(int prover, int round, const std::vector<Message>& history) const override;
  std::string descriptor() const override;

  int claim() const { return claim_; }
  const std::vector<std::uint8_t>& values() const { return values_; }

 private:
  std::shared_ptr<const Circuit> circuit_;
  int claim_;
  std::vector<std::uint8_t> values_;  // 1-based, values_[0] unused
};

// Every (c, value table): index = c * 2^g + value bits, bit k = gate k+1.
// Feasible for the g <= 8 circuits these experiments run on.
std::unique_ptr<ProfileFamily> make_gate_value_family(const Circuit& circuit);

// The profile that reports the actual computation: values from evaluating
// the circuit on x, claim = the output value.
std::shared_ptr<GateOracleProfile> honest_gate_profile(const Circuit& circuit,
                                                       const std::vector<std::uint8_t>& x);

}  // namespace mrip
