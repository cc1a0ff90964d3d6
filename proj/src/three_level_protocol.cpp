#include "mrip/three_level_protocol.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <utility>

namespace mrip {

namespace {

bool is_bit(Token t) { return t == 0 || t == 1; }

// Block tokens -> bit vector; false on any non-bit token.
bool tokens_to_bits(const Message& m, std::size_t offset, std::size_t count,
                    std::vector<std::uint8_t>& out) {
  if (m.size() < offset + count) return false;
  out.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (!is_bit(m[offset + i])) return false;
    out[i] = static_cast<std::uint8_t>(m[offset + i]);
  }
  return true;
}

}  // namespace

ThreeLevelProtocol::ThreeLevelProtocol(ThreeLevelCircuit tlc, std::vector<std::uint8_t> x,
                                       DeskBounds bounds)
    : tlc_(std::move(tlc)), x_(std::move(x)), bounds_(bounds) {
  tlc_.validate(bounds_);
  if (static_cast<int>(x_.size()) != tlc_.n())
    throw std::invalid_argument("input width does not match the circuit");
  for (std::uint8_t bit : x_)
    if (bit != 0 && bit != 1) throw std::invalid_argument("input bits must be 0 or 1");
  const int total = tlc_.total_gates();
  inputs_.resize(total + 1);
  coin_offsets_.resize(total + 1);
  coin_offsets_[0] = 0;
  for (int i = 1; i <= total; ++i) {
    inputs_[i] = tlc_.inputs_of(i);
    coin_offsets_[i] = coin_offsets_[i - 1] + 1 + inputs_[i].size();
  }
}

std::pair<int, int> ThreeLevelProtocol::coin_to_gate_slot(std::uint64_t coin) const {
  if (coin >= coin_count()) throw std::out_of_range("coin index out of range");
  const auto it = std::upper_bound(coin_offsets_.begin(), coin_offsets_.end(), coin);
  const int gate = static_cast<int>(it - coin_offsets_.begin());
  const int slot = static_cast<int>(coin - coin_offsets_[gate - 1]);
  return {gate, slot};
}

Rational ThreeLevelProtocol::coin_weight(std::uint64_t coin) const {
  const auto [gate, slot] = coin_to_gate_slot(coin);
  (void)slot;
  const long fanin = static_cast<long>(inputs_[gate].size());
  return Rational(1, static_cast<long>(tlc_.total_gates()) * (1 + fanin));
}

bool ThreeLevelProtocol::step_four_ok(int gate, const Transcript& transcript) const {
  const Message& opening = transcript.at(0, 1);
  if (opening.empty() || !is_bit(opening.front())) return false;
  const int c = static_cast<int>(opening.front());

  const Message& report = transcript.at(0, 3);
  const std::vector<int>& in = inputs_[gate];
  const std::size_t fanin = in.size();
  if (report.size() != 2 + fanin) return false;
  const TlcType t = tlc_.type_of(gate);
  if (report[0] != static_cast<Token>(t)) return false;
  if (!is_bit(report[1])) return false;
  for (std::size_t h = 0; h < fanin; ++h)
    if (!is_bit(report[2 + h])) return false;

  const Token v = report[1];
  switch (t) {
    case TlcType::INPUT:
      // Level-1 inputs and the level-3 copies of x must show the input bit;
      // the copies of NEXP outputs (fan-in 1) must just pass their value on.
      if (fanin == 0) {
        const int local = gate <= tlc_.g1() ? gate : gate - tlc_.g1() - tlc_.q;
        if (v != x_[local - 1]) return false;
      } else {
        if (v != report[2]) return false;
      }
      break;
    case TlcType::AND:
      if (v != (report[2] & report[3])) return false;
      break;
    case TlcType::OR:
      if (v != (report[2] | report[3])) return false;
      break;
    case TlcType::NOT:
      if (v != 1 - report[2]) return false;
      break;
    case TlcType::NEXP:
      break;  // the block's meaning is checked by the sub-protocol, not here
  }
  if (gate == tlc_.output_gate() && v != c) return false;
  return true;
}

bool ThreeLevelProtocol::cross_check_ok(int gate, int slot, const Transcript& transcript) const {
  const Message& report = transcript.at(0, 3);
  const Message& cross = transcript.at(1, 5);
  if (cross.size() != 1) return false;
  // slot 0 compares against v (field 1), slot h >= 1 against u_h (field 1+h).
  return cross[0] == report[1 + slot];
}

Message ThreeLevelProtocol::query(std::uint64_t coin, int prover, int round,
                                  const Transcript& transcript) const {
  const auto [gate, slot] = coin_to_gate_slot(coin);
  switch (round) {
    case 2:
      return prover == 0 ? Message{Token{gate}} : Message{};
    case 4: {
      if (prover != 1) return {};
      const int target = slot == 0 ? gate : inputs_[gate][slot - 1];
      return {Token{target}};
    }
    case 6: {
      // The claimed block goes to prover 3 only when an NEXP gate was drawn
      // and everything up to the cross-check held; otherwise the run is
      // already settled and the verifier stays silent.
      if (prover != 2) return {};
      if (tlc_.type_of(gate) != TlcType::NEXP) return {};
      if (!step_four_ok(gate, transcript) || !cross_check_ok(gate, slot, transcript)) return {};
      const Message& report = transcript.at(0, 3);
      return Message(report.begin() + 2, report.end());
    }
    case 8:
      return {};  // the sub-protocol's "send your table" request is empty
    default:
      throw std::logic_error("expnexp: no verifier message in round " + std::to_string(round));
  }
}

Rational ThreeLevelProtocol::payment(std::uint64_t coin, const Transcript& transcript) const {
  const auto [gate, slot] = coin_to_gate_slot(coin);
  if (!step_four_ok(gate, transcript)) return Rational(0);
  if (!cross_check_ok(gate, slot, transcript)) return Rational(-1);
  if (tlc_.type_of(gate) != TlcType::NEXP) return Rational(1);

  // NEXP gate: prover 1 claimed value c' for block x'; prover 3's claim must
  // agree with c', and the sub-protocol's payment is scaled into the slot.
  const Message& report = transcript.at(0, 3);
  const Token c_prime = report[1];
  const Message& sub_claim = transcript.at(2, 7);
  if (sub_claim.size() != 1 || !is_bit(sub_claim[0])) return Rational(-1);
  if (sub_claim[0] != c_prime) return Rational(-1);

  Rational sub_payment(0);
  if (sub_claim[0] == 0) {
    sub_payment = Rational(1, 2);
  } else {
    std::vector<std::uint8_t> block;
    tokens_to_bits(report, 2, report.size() - 2, block);  // bits already vetted in step 4
    const auto instance = decode_block(block, bounds_);
    if (instance) {
      std::vector<int> bits;
      const Message& table_msg = transcript.at(2, 9);
      const std::size_t want = std::size_t{1} << instance->s;
      bool ok = table_msg.size() == want;
      bits.reserve(want);
      for (std::size_t i = 0; ok && i < want; ++i) {
        ok = is_bit(table_msg[i]);
        if (ok) bits.push_back(static_cast<int>(table_msg[i]));
      }
      if (ok) {
        OracleTable table{instance->s, std::vector<std::uint8_t>(bits.begin(), bits.end())};
        if (count_satisfying(*instance, table) == instance->w_count()) sub_payment = Rational(1);
      }
    }
    // An undecodable block is a non-member; a member claim on it just fails.
  }
  return Rational(2) * sub_payment / Rational(static_cast<long>(tlc_.p) + 1);
}

std::shared_ptr<ThreeLevelProtocol> make_fig_expnexp(const ThreeLevelCircuit& tlc,
                                                     const std::vector<std::uint8_t>& x,
                                                     const DeskBounds& bounds) {
  return std::make_shared<ThreeLevelProtocol>(tlc, x, bounds);
}

Message tl_gate_report(const ThreeLevelCircuit& tlc, const std::vector<std::uint8_t>& values,
                       int i) {
  Message report;
  const std::vector<int> in = tlc.inputs_of(i);
  report.reserve(2 + in.size());
  report.push_back(static_cast<Token>(tlc.type_of(i)));
  report.push_back(values.at(i));
  for (int src : in) report.push_back(values.at(src));
  return report;
}

ThreeLevelProfile::ThreeLevelProfile(std::shared_ptr<const ThreeLevelCircuit> tlc, int claim,
                                     std::vector<std::uint8_t> values, std::string label,
                                     DeskBounds bounds)
    : tlc_(std::move(tlc)), claim_(claim), values_(std::move(values)),
      label_(std::move(label)), bounds_(bounds) {
  if (claim_ != 0 && claim_ != 1) throw std::invalid_argument("claim must be 0 or 1");
  if (static_cast<int>(values_.size()) != tlc_->total_gates() + 1)
    throw std::invalid_argument("value table must cover all composite gates");
}

void ThreeLevelProfile::set_sub_choice(std::vector<std::uint8_t> block, SubChoice choice) {
  sub_overrides_[std::move(block)] = std::move(choice);
}

ThreeLevelProfile::SubChoice ThreeLevelProfile::sub_behavior(
    const std::vector<std::uint8_t>& block) const {
  const auto it = sub_overrides_.find(block);
  if (it != sub_overrides_.end()) return it->second;
  const auto instance = decode_block(block, bounds_);
  if (!instance) return SubChoice{0, {}};
  const DecideResult truth = decide_oracle3sat(*instance, bounds_);
  SubChoice choice;
  choice.claim = truth.member;
  if (truth.member) choice.table = truth.witness.table;
  return choice;
}

Message ThreeLevelProfile::respond(int prover, int round,
                                   const std::vector<Message>& history) const {
  if (round == 1) return prover == 0 ? Message{Token{claim_}} : Message{};
  if (prover == 0 && round == 3) {
    const Message& q = history.at(1);
    if (q.size() != 1 || q[0] < 1 || q[0] > tlc_->total_gates()) return {};
    return tl_gate_report(*tlc_, values_, static_cast<int>(q[0]));
  }
  if (prover == 1 && round == 5) {
    const Message& q = history.at(3);
    if (q.size() != 1 || q[0] < 1 || q[0] > tlc_->total_gates()) return {};
    return {Token{values_[static_cast<std::size_t>(q[0])]}};
  }
  if (prover == 2 && (round == 7 || round == 9)) {
    const Message& block_msg = history.at(5);
    if (block_msg.empty()) return {};
    std::vector<std::uint8_t> block;
    if (!tokens_to_bits(block_msg, 0, block_msg.size(), block)) return {};
    const SubChoice choice = sub_behavior(block);
    if (round == 7) return {Token{choice.claim}};
    return choice.claim == 1 ? Message(choice.table.begin(), choice.table.end()) : Message{};
  }
  return {};
}

std::string ThreeLevelProfile::descriptor() const { return label_; }

std::shared_ptr<ThreeLevelProfile> honest_three_level_profile(const ThreeLevelCircuit& tlc,
                                                              const std::vector<std::uint8_t>& x,
                                                              const DeskBounds& bounds) {
  const ThreeLevelValue truth = eval_three_level(tlc, x, bounds);
  auto shared = std::make_shared<const ThreeLevelCircuit>(tlc);
  return std::make_shared<ThreeLevelProfile>(shared, truth.final, truth.values, "honest", bounds);
}

std::unique_ptr<ProfileFamily> make_three_level_family(const ThreeLevelCircuit& tlc,
                                                       const std::vector<std::uint8_t>& x,
                                                       std::uint64_t seed, int random_tables,
                                                       const DeskBounds& bounds) {
  const ThreeLevelValue truth = eval_three_level(tlc, x, bounds);
  auto shared = std::make_shared<const ThreeLevelCircuit>(tlc);
  const int total = tlc.total_gates();

  std::vector<std::shared_ptr<const StrategyProfile>> profiles;
  const auto add = [&](int claim, std::vector<std::uint8_t> values, std::string label) {
    profiles.push_back(std::make_shared<ThreeLevelProfile>(shared, claim, std::move(values),
                                                           std::move(label), bounds));
  };

  add(truth.final, truth.values, "honest");
  add(1 - truth.final, truth.values, "claim-flip");

  for (int gate = 1; gate <= total; ++gate) {
    for (int claim = 0; claim <= 1; ++claim) {
      std::vector<std::uint8_t> values = truth.values;
      values[gate] ^= 1;
      add(claim, std::move(values),
          "flip(g=" + std::to_string(gate) + ",c=" + std::to_string(claim) + ")");
    }
  }

  for (int bit = 0; bit <= 1; ++bit)
    for (int claim = 0; claim <= 1; ++claim)
      add(claim, std::vector<std::uint8_t>(total + 1, static_cast<std::uint8_t>(bit)),
          "const(" + std::to_string(bit) + ",c=" + std::to_string(claim) + ")");

  std::mt19937_64 rng(seed);
  for (int k = 0; k < random_tables; ++k) {
    std::vector<std::uint8_t> values(total + 1, 0);
    for (int gate = 1; gate <= total; ++gate)
      values[gate] = static_cast<std::uint8_t>(rng() % 2);
    for (int claim = 0; claim <= 1; ++claim)
      add(claim, values, "random(" + std::to_string(k) + ",c=" + std::to_string(claim) + ")");
  }

  // Sub-prover deviations on otherwise-honest play: flip the membership
  // claim for one block, and (where the honest claim is 1) keep the claim
  // but corrupt the table.
  for (int j = 1; j <= tlc.q; ++j) {
    std::vector<std::uint8_t> block(tlc.p);
    for (int t = 0; t < tlc.p; ++t) block[t] = truth.values[tlc.block_gate(j, t)];
    const auto instance = decode_block(block, bounds);
    DecideResult block_truth;
    if (instance) block_truth = decide_oracle3sat(*instance, bounds);

    auto flipped = std::make_shared<ThreeLevelProfile>(
        shared, truth.final, truth.values, "sub-claim-flip(b=" + std::to_string(j) + ")", bounds);
    ThreeLevelProfile::SubChoice flip;
    flip.claim = 1 - block_truth.member;
    if (flip.claim == 1) flip.table = block_truth.witness.table;
    flipped->set_sub_choice(block, flip);
    profiles.push_back(flipped);

    if (block_truth.member) {
      auto corrupted = std::make_shared<ThreeLevelProfile>(
          shared, truth.final, truth.values, "sub-bad-table(b=" + std::to_string(j) + ")",
          bounds);
      ThreeLevelProfile::SubChoice bad;
      bad.claim = 1;
      bad.table = block_truth.witness.table;
      bad.table[0] ^= 1;
      corrupted->set_sub_choice(block, bad);
      profiles.push_back(corrupted);
    }
  }

  return std::make_unique<ListedFamily>("three-level-structured", std::move(profiles));
}

}  // namespace mrip
