#include "mrip/scoring_protocol.hpp"

#include <array>
#include <stdexcept>
#include <utility>

namespace mrip {

namespace {

// Opening message as (c, a); {-1, 0} when malformed. A well-formed opening
// is exactly two tokens with c a bit and 0 <= a <= W.
struct Opening {
  int c = -1;
  std::uint64_t a = 0;
};

Opening parse_opening(const Transcript& t, std::uint64_t w_count) {
  const Message& first = t.at(0, 1);
  if (first.size() != 2) return {};
  if (first[0] != 0 && first[0] != 1) return {};
  if (first[1] < 0 || static_cast<std::uint64_t>(first[1]) > w_count) return {};
  return {static_cast<int>(first[0]), static_cast<std::uint64_t>(first[1])};
}

// The halt rule: the bit must say exactly whether the report is "all of
// them". Malformed openings halt too.
bool halts_with_penalty(const Opening& o, std::uint64_t w_count) {
  if (o.c == -1) return true;
  if (o.c == 1 && o.a < w_count) return true;
  if (o.c == 0 && o.a == w_count) return true;
  return false;
}

bool parse_bits(const Message& m, std::size_t count, std::array<int, 6>& out) {
  if (m.size() != count) return false;
  for (std::size_t i = 0; i < count; ++i) {
    if (m[i] != 0 && m[i] != 1) return false;
    out[i] = static_cast<int>(m[i]);
  }
  return true;
}

}  // namespace

ScoringProtocol::ScoringProtocol(Oracle3SatInstance instance, DeskBounds bounds)
    : instance_(std::move(instance)) {
  instance_.validate(bounds);
  w_count_ = instance_.w_count();
}

ScoringProtocol::CoinParts ScoringProtocol::split(std::uint64_t coin) const {
  CoinParts parts{};
  parts.k = static_cast<int>(coin % 6);
  const std::uint64_t pair = coin / 6;
  parts.w_prime = pair % w_count_;
  parts.w = pair / w_count_;
  return parts;
}

Message ScoringProtocol::query(std::uint64_t coin, int prover, int round,
                               const Transcript& transcript) const {
  if (round != 2) throw std::logic_error("scoring: verifier speaks only in round 2");
  const Opening o = parse_opening(transcript, w_count_);
  if (halts_with_penalty(o, w_count_)) return {};
  const CoinParts parts = split(coin);
  const WAssignment wa{parts.w, instance_.r, instance_.s};
  const WAssignment wb{parts.w_prime, instance_.r, instance_.s};
  const std::array<Token, 6> queries{
      static_cast<Token>(wa.b(1)), static_cast<Token>(wa.b(2)), static_cast<Token>(wa.b(3)),
      static_cast<Token>(wb.b(1)), static_cast<Token>(wb.b(2)), static_cast<Token>(wb.b(3))};
  if (prover == 0) return Message(queries.begin(), queries.end());
  return {queries[parts.k]};
}

Rational ScoringProtocol::payment(std::uint64_t coin, const Transcript& transcript) const {
  const Opening o = parse_opening(transcript, w_count_);
  if (halts_with_penalty(o, w_count_)) return Rational(-1);

  std::array<int, 6> answers{};
  std::array<int, 6> cross{};
  if (!parse_bits(transcript.at(0, 3), 6, answers)) return Rational(-1);
  if (!parse_bits(transcript.at(1, 3), 1, cross)) return Rational(-1);
  const CoinParts parts = split(coin);
  if (answers[parts.k] != cross[0]) return Rational(-1);

  if (!eval_cnf(instance_, parts.w, {answers[0], answers[1], answers[2]})) return Rational(0);

  const int outcome = eval_cnf(instance_, parts.w_prime, {answers[3], answers[4], answers[5]});
  const BinaryDistribution report(
      Rational(static_cast<long>(o.a), static_cast<long>(w_count_)));
  return protocol_score(report, outcome);
}

Rational ScoringProtocol::expected_payment(const StrategyProfile& profile) const {
  if (const auto* committed = dynamic_cast<const ScoringCommittedProfile*>(&profile)) {
    if (committed->shared_table() && committed->table1().width == instance_.s) {
      const Opening o{committed->claim(), committed->report()};
      if (halts_with_penalty(o, w_count_)) return Rational(-1);
      const Rational f(static_cast<long>(count_satisfying(instance_, committed->table1())),
                       static_cast<long>(w_count_));
      const BinaryDistribution report(
          Rational(static_cast<long>(o.a), static_cast<long>(w_count_)));
      return f * expected_protocol_score(report, BinaryDistribution(f));
    }
  }
  return expected_payment_per_coin(*this, profile);
}

std::shared_ptr<ScoringProtocol> make_fig_scoring(const Oracle3SatInstance& instance,
                                                  const DeskBounds& bounds) {
  return std::make_shared<ScoringProtocol>(instance, bounds);
}

ScoringCommittedProfile::ScoringCommittedProfile(int claim, std::uint64_t report,
                                                 OracleTable table)
    : ScoringCommittedProfile(claim, report, table, table) {}

ScoringCommittedProfile::ScoringCommittedProfile(int claim, std::uint64_t report,
                                                 OracleTable table1, OracleTable table2)
    : claim_(claim), report_(report), table1_(std::move(table1)), table2_(std::move(table2)) {
  if (claim_ != 0 && claim_ != 1) throw std::invalid_argument("claim must be 0 or 1");
}

Message ScoringCommittedProfile::respond(int prover, int round,
                                         const std::vector<Message>& history) const {
  if (round == 1)
    return prover == 0 ? Message{Token{claim_}, static_cast<Token>(report_)} : Message{};
  const Message& queries = history.at(1);
  const OracleTable& table = prover == 0 ? table1_ : table2_;
  Message answers;
  answers.reserve(queries.size());
  for (Token q : queries) {
    const bool in_range = q >= 0 && static_cast<std::uint64_t>(q) < table.size();
    answers.push_back(in_range ? Token{table(static_cast<std::uint64_t>(q))} : Token{0});
  }
  return answers;
}

std::string ScoringCommittedProfile::descriptor() const {
  std::string d = "committed(c=" + std::to_string(claim_) + ",a=" + std::to_string(report_) +
                  ",A=" + std::to_string(table1_.index());
  if (!(table2_ == table1_)) d += ",A2=" + std::to_string(table2_.index());
  return d + ")";
}

namespace {

class ScoringCommittedFamily : public ProfileFamily {
 public:
  explicit ScoringCommittedFamily(Oracle3SatInstance instance) : instance_(std::move(instance)) {
    instance_.validate();
    tables_ = std::uint64_t{1} << (std::uint64_t{1} << instance_.s);
    reports_ = instance_.w_count() + 1;
  }

  std::string name() const override { return "scoring-committed"; }
  std::uint64_t size() const override { return 2 * reports_ * tables_; }

  std::shared_ptr<const StrategyProfile> make(std::uint64_t index) const override {
    if (index >= size()) throw std::out_of_range("profile index out of range");
    const std::uint64_t table = index % tables_;
    const std::uint64_t rest = index / tables_;
    const std::uint64_t report = rest % reports_;
    const int claim = static_cast<int>(rest / reports_);
    return std::make_shared<ScoringCommittedProfile>(
        claim, report, OracleTable::from_index(instance_.s, table));
  }

 private:
  Oracle3SatInstance instance_;
  std::uint64_t tables_ = 0;
  std::uint64_t reports_ = 0;
};

}  // namespace

std::unique_ptr<ProfileFamily> make_scoring_committed_family(const Oracle3SatInstance& instance) {
  return std::make_unique<ScoringCommittedFamily>(instance);
}

std::shared_ptr<ScoringCommittedProfile> honest_scoring_profile(const Oracle3SatInstance& instance,
                                                                const DeskBounds& bounds) {
  const DecideResult truth = decide_oracle3sat(instance, bounds);
  return std::make_shared<ScoringCommittedProfile>(truth.member, truth.a_star, truth.witness);
}

}  // namespace mrip
