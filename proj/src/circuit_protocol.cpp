#include "mrip/circuit_protocol.hpp"

#include <array>
#include <stdexcept>
#include <utility>

namespace mrip {

namespace {

// Field positions in the 8-token gate report.
enum : std::size_t { kT, kI1, kI2, kH1, kH2, kV, kV1, kV2, kReportSize };

int fanin_of(GateType t) {
  switch (t) {
    case GateType::INPUT: return 0;
    case GateType::NOT: return 1;
    case GateType::AND:
    case GateType::OR: return 2;
  }
  throw std::logic_error("unknown gate type");
}

bool is_bit(Token t) { return t == 0 || t == 1; }

}  // namespace

CircuitProtocol::CircuitProtocol(Circuit circuit, std::vector<std::uint8_t> x)
    : circuit_(std::move(circuit)), x_(std::move(x)), dc_(circuit_), g_(circuit_.g()) {
  circuit_.validate();
  if (static_cast<int>(x_.size()) != circuit_.n)
    throw std::invalid_argument("input width does not match the circuit");
  for (std::uint8_t bit : x_)
    if (bit != 0 && bit != 1) throw std::invalid_argument("input bits must be 0 or 1");
}

int CircuitProtocol::slot_target(int gate, int slot) const {
  if (slot == 0) return gate;
  const auto& inputs = circuit_.gates[gate].inputs;
  if (slot <= static_cast<int>(inputs.size())) return inputs[slot - 1];
  return gate;  // padding slot: fall back to the gate itself
}

Message CircuitProtocol::query(std::uint64_t coin, int prover, int round,
                               const Transcript& transcript) const {
  (void)transcript;
  if (round != 2) throw std::logic_error("expmrip: verifier speaks only in round 2");
  const int gate = static_cast<int>(coin / 3) + 1;
  const int slot = static_cast<int>(coin % 3);
  if (prover == 0) return {Token{gate}};
  return {Token{slot_target(gate, slot)}};
}

Rational CircuitProtocol::payment(std::uint64_t coin, const Transcript& transcript) const {
  const int gate = static_cast<int>(coin / 3) + 1;
  const int slot = static_cast<int>(coin % 3);

  const Message& opening = transcript.at(0, 1);
  if (opening.empty() || !is_bit(opening.front())) return Rational(0);
  const int c = static_cast<int>(opening.front());

  const Message& report = transcript.at(0, 3);
  const Message& cross = transcript.at(1, 3);
  if (report.size() != kReportSize || cross.size() != 1) return Rational(0);

  // Topology checks, via the structure oracle only.
  if (report[kT] < 0 || report[kT] > 3) return Rational(0);
  const GateType t = static_cast<GateType>(report[kT]);
  if (!dc_.type(gate, t)) return Rational(0);
  const int fanin = fanin_of(t);
  const std::array<Token, 2> in_ids{report[kI1], report[kI2]};
  const std::array<Token, 2> wire_ids{report[kH1], report[kH2]};
  for (int s = 1; s <= fanin; ++s) {
    const Token src = in_ids[s - 1];
    const Token wire = wire_ids[s - 1];
    if (src < 1 || src > g_ || wire < 1 || wire > 2 * g_) return Rational(0);
    if (!dc_.input_wire(static_cast<int>(wire), gate)) return Rational(0);
    if (!dc_.output_wire(static_cast<int>(wire), static_cast<int>(src))) return Rational(0);
    // The two input slots carry distinct wires; input s sits in 0-based
    // slot s-1, whose wire id is 2*gate - (s-1).
    if (wire != Circuit::wire_id(gate, s - 1)) return Rational(0);
  }

  // Value checks: gate logic, input bits, the output gate's claim.
  const Token v = report[kV];
  const Token v1 = report[kV1];
  const Token v2 = report[kV2];
  if (!is_bit(v)) return Rational(0);
  if (fanin >= 1 && !is_bit(v1)) return Rational(0);
  if (fanin >= 2 && !is_bit(v2)) return Rational(0);
  switch (t) {
    case GateType::INPUT:
      if (v != x_[gate - 1]) return Rational(0);
      break;
    case GateType::AND:
      if (v != (v1 & v2)) return Rational(0);
      break;
    case GateType::OR:
      if (v != (v1 | v2)) return Rational(0);
      break;
    case GateType::NOT:
      if (v != 1 - v1) return Rational(0);
      break;
  }
  if (gate == g_ && v != c) return Rational(0);

  // Cross-check against prover 2: the slot's value field must match.
  Token claimed = v;
  if (slot >= 1 && slot <= fanin) claimed = slot == 1 ? v1 : v2;
  if (cross[0] != claimed) return Rational(0);

  return Rational(1);
}

std::shared_ptr<CircuitProtocol> make_fig_expmrip(const Circuit& circuit,
                                                  const std::vector<std::uint8_t>& x) {
  return std::make_shared<CircuitProtocol>(circuit, x);
}

Message gate_report(const Circuit& circuit, const std::vector<std::uint8_t>& values, int i) {
  const Gate& gate = circuit.gates.at(i);
  Message report(kReportSize, 0);
  report[kT] = static_cast<Token>(gate.type);
  report[kV] = values.at(i);
  for (std::size_t s = 0; s < gate.inputs.size(); ++s) {
    const int src = gate.inputs[s];
    report[s == 0 ? kI1 : kI2] = src;
    report[s == 0 ? kH1 : kH2] = Circuit::wire_id(i, static_cast<int>(s));
    report[s == 0 ? kV1 : kV2] = values.at(src);
  }
  return report;
}

GateOracleProfile::GateOracleProfile(std::shared_ptr<const Circuit> circuit, int claim,
                                     std::vector<std::uint8_t> values)
    : circuit_(std::move(circuit)), claim_(claim), values_(std::move(values)) {
  if (claim_ != 0 && claim_ != 1) throw std::invalid_argument("claim must be 0 or 1");
  if (static_cast<int>(values_.size()) != circuit_->g() + 1)
    throw std::invalid_argument("value table must cover gates 1..g");
}

Message GateOracleProfile::respond(int prover, int round,
                                   const std::vector<Message>& history) const {
  if (round == 1) return prover == 0 ? Message{Token{claim_}} : Message{};
  const Message& q = history.at(1);
  if (q.size() != 1 || q[0] < 1 || q[0] > circuit_->g()) return {};
  const int gate = static_cast<int>(q[0]);
  if (prover == 0) return gate_report(*circuit_, values_, gate);
  return {Token{values_[gate]}};
}

std::string GateOracleProfile::descriptor() const {
  std::string bits;
  bits.reserve(values_.size() - 1);
  for (std::size_t i = 1; i < values_.size(); ++i) bits.push_back(values_[i] ? '1' : '0');
  return "gate-table(c=" + std::to_string(claim_) + ",v=" + bits + ")";
}

namespace {

class GateValueFamily : public ProfileFamily {
 public:
  explicit GateValueFamily(Circuit circuit)
      : circuit_(std::make_shared<const Circuit>(std::move(circuit))) {
    circuit_->validate();
    if (circuit_->g() > 62)
      throw std::invalid_argument("gate-value family needs g <= 62 to index profiles");
  }

  std::string name() const override { return "gate-tables"; }
  std::uint64_t size() const override {
    return std::uint64_t{2} << circuit_->g();  // 2 * 2^g
  }

  std::shared_ptr<const StrategyProfile> make(std::uint64_t index) const override {
    if (index >= size()) throw std::out_of_range("profile index out of range");
    const std::uint64_t half = size() / 2;
    const int claim = static_cast<int>(index / half);
    const std::uint64_t bits = index % half;
    std::vector<std::uint8_t> values(circuit_->g() + 1, 0);
    for (int i = 1; i <= circuit_->g(); ++i)
      values[i] = static_cast<std::uint8_t>((bits >> (i - 1)) & 1);
    return std::make_shared<GateOracleProfile>(circuit_, claim, std::move(values));
  }

 private:
  std::shared_ptr<const Circuit> circuit_;
};

}  // namespace

std::unique_ptr<ProfileFamily> make_gate_value_family(const Circuit& circuit) {
  return std::make_unique<GateValueFamily>(circuit);
}

std::shared_ptr<GateOracleProfile> honest_gate_profile(const Circuit& circuit,
                                                       const std::vector<std::uint8_t>& x) {
  auto shared = std::make_shared<const Circuit>(circuit);
  std::vector<std::uint8_t> values = eval_circuit(circuit, x);
  const int claim = values[circuit.g()];
  return std::make_shared<GateOracleProfile>(shared, claim, std::move(values));
}

}  // namespace mrip
