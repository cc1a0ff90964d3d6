#include "mrip/simple_protocol.hpp"

#include <stdexcept>
#include <utility>

namespace mrip {

namespace {

constexpr std::uint64_t kMaxRawCoins = std::uint64_t{1} << 22;

// The announced bit, or -1 when the opening message is malformed.
int parse_claim(const Transcript& t) {
  const Message& first = t.at(0, 1);
  if (first.empty()) return -1;
  if (first.front() != 0 && first.front() != 1) return -1;
  return static_cast<int>(first.front());
}

// Reads a message of exactly `count` bit tokens; false on anything else.
bool parse_bits(const Message& m, std::size_t count, std::vector<int>& out) {
  if (m.size() != count) return false;
  out.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (m[i] != 0 && m[i] != 1) return false;
    out[i] = static_cast<int>(m[i]);
  }
  return true;
}

}  // namespace

int spot_check_count(const Oracle3SatInstance& instance) {
  const std::uint64_t w = instance.w_count();
  const Rational miss(static_cast<long>(w - 1), static_cast<long>(w));
  const Rational third(1, 3);
  Rational p(1);
  for (int m = 1;; ++m) {
    p *= miss;
    if (p <= third) return m;
  }
}

SimpleProtocol::SimpleProtocol(Oracle3SatInstance instance, SimpleOptions options)
    : instance_(std::move(instance)), options_(options) {
  instance_.validate(options_.bounds);
  if (options_.variant == MipVariant::kSpotCheck) {
    m_ = spot_check_count(instance_);
    const std::uint64_t w = instance_.w_count();
    std::uint64_t coins = 3 * static_cast<std::uint64_t>(m_);
    for (int i = 0; i < m_; ++i) {
      if (coins > kMaxRawCoins / w)
        throw std::invalid_argument(
            "spot-check variant needs " + std::to_string(m_) + " samples over " +
            std::to_string(w) + " assignments; raw coin space is infeasible at this width");
      coins *= w;
    }
    coin_count_ = coins;
  }
}

std::string SimpleProtocol::name() const {
  return options_.broken_accept_all ? "simple-broken" : "simple";
}

Message SimpleProtocol::query(std::uint64_t coin, int prover, int round,
                              const Transcript& transcript) const {
  if (round != 2) throw std::logic_error("simple: verifier speaks only in round 2");
  if (parse_claim(transcript) != 1) return {};  // c = 0 (or junk): halt, pay without asking
  if (options_.variant == MipVariant::kExhaustive)
    return {};  // the empty round-2 message is the "send your table" request
  // Spot-check coin layout: ((w_1 w_2 ... w_m) * m + (j-1)) * 3 + (l-1).
  const std::uint64_t l = coin % 3;
  const std::uint64_t j = (coin / 3) % static_cast<std::uint64_t>(m_);
  std::uint64_t ws = coin / 3 / static_cast<std::uint64_t>(m_);
  std::vector<std::uint64_t> w(m_);
  for (int i = m_ - 1; i >= 0; --i) {
    w[i] = ws % instance_.w_count();
    ws /= instance_.w_count();
  }
  if (prover == 0) {
    Message queries;
    queries.reserve(3 * m_);
    for (int i = 0; i < m_; ++i) {
      const WAssignment wa{w[i], instance_.r, instance_.s};
      for (int b = 1; b <= 3; ++b) queries.push_back(static_cast<Token>(wa.b(b)));
    }
    return queries;
  }
  const WAssignment wa{w[j], instance_.r, instance_.s};
  return {static_cast<Token>(wa.b(static_cast<int>(l) + 1))};
}

Rational SimpleProtocol::payment(std::uint64_t coin, const Transcript& transcript) const {
  const int c = parse_claim(transcript);
  if (c == -1) return Rational(0);  // defensively the worst payment on offer
  if (c == 0) return Rational(1, 2);
  if (options_.broken_accept_all) return Rational(1);

  if (options_.variant == MipVariant::kExhaustive) {
    std::vector<int> bits;
    if (!parse_bits(transcript.at(0, 3), static_cast<std::size_t>(1) << instance_.s, bits))
      return Rational(0);
    OracleTable table{instance_.s, std::vector<std::uint8_t>(bits.begin(), bits.end())};
    return count_satisfying(instance_, table) == instance_.w_count() ? Rational(1) : Rational(0);
  }

  // Spot-check variant: recompute the sampled assignments from the coin.
  const std::uint64_t l = coin % 3;
  const std::uint64_t j = (coin / 3) % static_cast<std::uint64_t>(m_);
  std::uint64_t ws = coin / 3 / static_cast<std::uint64_t>(m_);
  std::vector<std::uint64_t> w(m_);
  for (int i = m_ - 1; i >= 0; --i) {
    w[i] = ws % instance_.w_count();
    ws /= instance_.w_count();
  }
  std::vector<int> answers, cross;
  if (!parse_bits(transcript.at(0, 3), static_cast<std::size_t>(3 * m_), answers))
    return Rational(0);
  if (!parse_bits(transcript.at(1, 3), 1, cross)) return Rational(0);
  if (answers[3 * j + l] != cross[0]) return Rational(0);
  for (int i = 0; i < m_; ++i) {
    const std::array<int, 3> a{answers[3 * i], answers[3 * i + 1], answers[3 * i + 2]};
    if (!eval_cnf(instance_, w[i], a)) return Rational(0);
  }
  return Rational(1);
}

std::shared_ptr<SimpleProtocol> make_fig_simple(const Oracle3SatInstance& instance,
                                                const SimpleOptions& options) {
  return std::make_shared<SimpleProtocol>(instance, options);
}

SimpleCommittedProfile::SimpleCommittedProfile(int claim, OracleTable table)
    : SimpleCommittedProfile(claim, table, table) {}

SimpleCommittedProfile::SimpleCommittedProfile(int claim, OracleTable table1, OracleTable table2)
    : claim_(claim), table1_(std::move(table1)), table2_(std::move(table2)) {
  if (claim_ != 0 && claim_ != 1) throw std::invalid_argument("claim must be 0 or 1");
}

Message SimpleCommittedProfile::respond(int prover, int round,
                                        const std::vector<Message>& history) const {
  if (round == 1) return prover == 0 ? Message{claim_} : Message{};
  const Message& queries = history.at(1);  // the verifier's round-2 message
  const OracleTable& table = prover == 0 ? table1_ : table2_;
  if (prover == 0 && queries.empty()) {
    Message whole(table.table.begin(), table.table.end());
    return whole;
  }
  Message answers;
  answers.reserve(queries.size());
  for (Token q : queries) {
    const bool in_range = q >= 0 && static_cast<std::uint64_t>(q) < table.size();
    answers.push_back(in_range ? Token{table(static_cast<std::uint64_t>(q))} : Token{0});
  }
  return answers;
}

std::string SimpleCommittedProfile::descriptor() const {
  std::string d = "committed(c=" + std::to_string(claim_) + ",A=" + std::to_string(table1_.index());
  if (!(table2_ == table1_)) d += ",A2=" + std::to_string(table2_.index());
  return d + ")";
}

namespace {

class SimpleCommittedFamily : public ProfileFamily {
 public:
  explicit SimpleCommittedFamily(Oracle3SatInstance instance) : instance_(std::move(instance)) {
    instance_.validate();
    tables_ = std::uint64_t{1} << (std::uint64_t{1} << instance_.s);
  }

  std::string name() const override { return "simple-committed"; }
  std::uint64_t size() const override { return 2 * tables_; }

  std::shared_ptr<const StrategyProfile> make(std::uint64_t index) const override {
    if (index >= size()) throw std::out_of_range("profile index out of range");
    const int c = static_cast<int>(index / tables_);
    const OracleTable table = OracleTable::from_index(instance_.s, index % tables_);
    return std::make_shared<SimpleCommittedProfile>(c, table);
  }

 private:
  Oracle3SatInstance instance_;
  std::uint64_t tables_;
};

}  // namespace

std::unique_ptr<ProfileFamily> make_simple_committed_family(const Oracle3SatInstance& instance) {
  return std::make_unique<SimpleCommittedFamily>(instance);
}

}  // namespace mrip
