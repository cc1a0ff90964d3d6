#include "mrip/wrappers.hpp"

#include <optional>
#include <stdexcept>
#include <utility>

namespace mrip {

// ---- complement wrapper -----------------------------------------------------

namespace {

Token flip_bit_token(Token t) { return t == 0 ? 1 : t == 1 ? 0 : t; }

}  // namespace

ComplementProtocol::ComplementProtocol(std::shared_ptr<const Protocol> inner)
    : inner_(std::move(inner)) {
  if (!inner_) throw std::invalid_argument("complement wrapper needs a protocol");
}

std::string ComplementProtocol::name() const { return "complement(" + inner_->name() + ")"; }

Transcript ComplementProtocol::flipped(const Transcript& transcript) const {
  Transcript copy = transcript;
  if (!copy.channels.empty() && !copy.channels[0].empty() && !copy.channels[0][0].empty())
    copy.channels[0][0][0] = flip_bit_token(copy.channels[0][0][0]);
  return copy;
}

Message ComplementProtocol::query(std::uint64_t coin, int prover, int round,
                                  const Transcript& transcript) const {
  return inner_->query(coin, prover, round, flipped(transcript));
}

Rational ComplementProtocol::payment(std::uint64_t coin, const Transcript& transcript) const {
  return inner_->payment(coin, flipped(transcript));
}

std::shared_ptr<ComplementProtocol> complement_wrap(std::shared_ptr<const Protocol> inner) {
  return std::make_shared<ComplementProtocol>(std::move(inner));
}

namespace {

class FlippedProfile : public StrategyProfile {
 public:
  explicit FlippedProfile(std::shared_ptr<const StrategyProfile> base) : base_(std::move(base)) {}

  Message respond(int prover, int round, const std::vector<Message>& history) const override {
    if (prover != 0) return base_->respond(prover, round, history);
    if (round == 1) {
      Message m = base_->respond(0, 1, history);
      if (!m.empty()) m[0] = flip_bit_token(m[0]);
      return m;
    }
    // Translate the visible history back so the base profile sees the
    // opening it actually sent.
    std::vector<Message> translated = history;
    if (!translated.empty() && !translated[0].empty())
      translated[0][0] = flip_bit_token(translated[0][0]);
    return base_->respond(0, round, translated);
  }

  std::string descriptor() const override { return "flipped(" + base_->descriptor() + ")"; }

 private:
  std::shared_ptr<const StrategyProfile> base_;
};

}  // namespace

std::shared_ptr<const StrategyProfile> complement_profile(
    std::shared_ptr<const StrategyProfile> base) {
  return std::make_shared<FlippedProfile>(std::move(base));
}

// ---- 2-prover / 5-round wrapper ---------------------------------------------

namespace {

// Claim layout: for each inner prover (ascending), for each odd inner round
// (ascending): a length token followed by that many message tokens.
Message encode_claim(const std::vector<std::vector<Message>>& prover_msgs) {
  Message out;
  for (const auto& per_round : prover_msgs) {
    for (const Message& m : per_round) {
      out.push_back(static_cast<Token>(m.size()));
      out.insert(out.end(), m.begin(), m.end());
    }
  }
  return out;
}

std::optional<std::vector<std::vector<Message>>> parse_claim(const Message& claim, int t,
                                                             int p) {
  const int prover_rounds = (p + 1) / 2;
  std::vector<std::vector<Message>> msgs(t, std::vector<Message>(prover_rounds));
  std::size_t pos = 0;
  for (int k = 0; k < t; ++k) {
    for (int idx = 0; idx < prover_rounds; ++idx) {
      if (pos >= claim.size()) return std::nullopt;
      const Token len = claim[pos++];
      if (len < 0 || static_cast<std::size_t>(len) > claim.size() - pos) return std::nullopt;
      msgs[k][idx].assign(claim.begin() + pos, claim.begin() + pos + len);
      pos += static_cast<std::size_t>(len);
    }
  }
  if (pos != claim.size()) return std::nullopt;
  return msgs;
}

// The verifier's round-4 message: [j, k, then the j-1 messages of inner
// prover k's channel, each length-prefixed].
Message encode_prefix(int j, int k, const std::vector<Message>& channel) {
  Message out{Token{j}, Token{k}};
  for (int round = 1; round < j; ++round) {
    const Message& m = channel[round - 1];
    out.push_back(static_cast<Token>(m.size()));
    out.insert(out.end(), m.begin(), m.end());
  }
  return out;
}

struct ParsedPrefix {
  int j = 0;
  int k = 0;
  std::vector<Message> history;
};

std::optional<ParsedPrefix> parse_prefix(const Message& m, int t, int p) {
  if (m.size() < 2) return std::nullopt;
  if (m[0] < 1 || m[0] > p || m[1] < 0 || m[1] >= t) return std::nullopt;
  ParsedPrefix out;
  out.j = static_cast<int>(m[0]);
  out.k = static_cast<int>(m[1]);
  std::size_t pos = 2;
  for (int round = 1; round < out.j; ++round) {
    if (pos >= m.size()) return std::nullopt;
    const Token len = m[pos++];
    if (len < 0 || static_cast<std::size_t>(len) > m.size() - pos) return std::nullopt;
    out.history.emplace_back(m.begin() + pos, m.begin() + pos + len);
    pos += static_cast<std::size_t>(len);
  }
  if (pos != m.size()) return std::nullopt;
  return out;
}

Token opening_token(const Transcript& transcript) {
  const Message& first = transcript.at(0, 1);
  return first.empty() ? Token{-1} : first.front();
}

}  // namespace

TwoFiveProtocol::TwoFiveProtocol(std::shared_ptr<const Protocol> inner) : inner_(std::move(inner)) {
  if (!inner_) throw std::invalid_argument("two-five wrapper needs a protocol");
  p_ = inner_->num_rounds();
  t_ = inner_->num_provers();
  if (p_ < 1 || t_ < 1) throw std::invalid_argument("inner protocol has no rounds or provers");
}

std::string TwoFiveProtocol::name() const { return "two-five(" + inner_->name() + ")"; }

std::uint64_t TwoFiveProtocol::coin_count() const {
  return inner_->coin_count() * static_cast<std::uint64_t>(p_) * static_cast<std::uint64_t>(t_);
}

std::uint64_t TwoFiveProtocol::coin_of(std::uint64_t r, int j, int k) const {
  return (r * p_ + static_cast<std::uint64_t>(j - 1)) * t_ + static_cast<std::uint64_t>(k);
}

Rational TwoFiveProtocol::coin_weight(std::uint64_t coin) const {
  if (coin >= coin_count()) throw std::out_of_range("coin index out of range");
  const std::uint64_t r = coin / (static_cast<std::uint64_t>(p_) * t_);
  return inner_->coin_weight(r) * Rational(1, static_cast<long>(p_) * t_);
}

TwoFiveProtocol::Verdict TwoFiveProtocol::reconstruct(std::uint64_t r,
                                                      const Message& claim_msg) const {
  Verdict verdict;
  auto parsed = parse_claim(claim_msg, t_, p_);
  if (!parsed) return verdict;
  verdict.claim_ok = true;
  verdict.claimed = std::move(*parsed);
  verdict.reconstructed.reset(t_);
  for (int round = 1; round <= p_; ++round) {
    if (round % 2 == 1) {
      for (int k = 0; k < t_; ++k)
        verdict.reconstructed.channels[k].push_back(verdict.claimed[k][(round - 1) / 2]);
    } else {
      std::vector<Message> queries(t_);
      for (int k = 0; k < t_; ++k)
        queries[k] = inner_->query(r, k, round, verdict.reconstructed);
      for (int k = 0; k < t_; ++k)
        verdict.reconstructed.channels[k].push_back(std::move(queries[k]));
    }
  }
  return verdict;
}

Rational TwoFiveProtocol::judge(int j, int k, const Verdict& verdict, Token c,
                                const Message& response, const Rational& scaled_inner) const {
  const Message expected =
      j % 2 == 1 ? verdict.claimed[k][(j - 1) / 2] : Message{};
  if (response != expected) return Rational(-1);
  if (j == 1 && k == 0 && (response.empty() || response.front() != c)) return Rational(-1);
  return scaled_inner;
}

Rational TwoFiveProtocol::scaled_inner_payment(std::uint64_t r, const Verdict& verdict) const {
  return inner_->payment(r, verdict.reconstructed) / Rational(2L * p_ * t_);
}

Message TwoFiveProtocol::query(std::uint64_t coin, int prover, int round,
                               const Transcript& transcript) const {
  const std::uint64_t pt = static_cast<std::uint64_t>(p_) * t_;
  const std::uint64_t r = coin / pt;
  const int j = static_cast<int>((coin % pt) / t_) + 1;
  const int k = static_cast<int>(coin % t_);
  switch (round) {
    case 2:
      return prover == 0 ? Message{static_cast<Token>(r)} : Message{};
    case 4: {
      if (prover != 1) return {};
      const Verdict verdict = reconstruct(r, transcript.at(0, 3));
      if (!verdict.claim_ok) return {};  // settled: the claim itself is bad
      return encode_prefix(j, k, verdict.reconstructed.channels[k]);
    }
    default:
      throw std::logic_error("two-five: no verifier message in round " + std::to_string(round));
  }
}

Rational TwoFiveProtocol::payment(std::uint64_t coin, const Transcript& transcript) const {
  const std::uint64_t pt = static_cast<std::uint64_t>(p_) * t_;
  const std::uint64_t r = coin / pt;
  const int j = static_cast<int>((coin % pt) / t_) + 1;
  const int k = static_cast<int>(coin % t_);
  const Verdict verdict = reconstruct(r, transcript.at(0, 3));
  if (!verdict.claim_ok) return Rational(-1);
  return judge(j, k, verdict, opening_token(transcript), transcript.at(1, 5),
               scaled_inner_payment(r, verdict));
}

Rational TwoFiveProtocol::expected_payment(const StrategyProfile& profile) const {
  // Closed form for honest lifts of this very protocol instance: the claim
  // for coin r is a real inner run, so the reconstruction reproduces that
  // run exactly, every consistency check passes, the announcement binding
  // holds (the lift opens with the inner bit), and all pt pairs pay the
  // inner payment / (2pt). Summing against the coin weights gives exactly
  // inner_utility / (2pt).
  if (const auto* lift = dynamic_cast<const HonestLiftProfile*>(&profile)) {
    if (lift->inner().get() == inner_.get() && lift->opens())
      return inner_->expected_payment(*lift->base()) / Rational(2L * p_ * t_);
  }
  // General route, one pass per inner coin: the claim and the reconstruction
  // do not depend on (j, k), so they are computed once and reused for all
  // p*t pairs.
  Rational total(0);
  const Rational pair_share(1, static_cast<long>(p_) * t_);
  const Message empty;
  const std::uint64_t inner_coins = inner_->coin_count();
  for (std::uint64_t r = 0; r < inner_coins; ++r) {
    const Rational weight = inner_->coin_weight(r);
    const Message m1 = profile.respond(0, 1, {});
    const Token c = m1.empty() ? Token{-1} : m1.front();
    const std::vector<Message> hist1{m1, Message{static_cast<Token>(r)}};
    const Message claim_msg = profile.respond(0, 3, hist1);
    const Verdict verdict = reconstruct(r, claim_msg);
    if (!verdict.claim_ok) {
      total += weight * Rational(-1);
      continue;
    }
    const Message m2_1 = profile.respond(1, 1, {});
    const Message m2_3 = profile.respond(1, 3, {m2_1, empty});
    const Rational scaled_inner = scaled_inner_payment(r, verdict);
    Rational sum(0);
    for (int j = 1; j <= p_; ++j) {
      for (int k = 0; k < t_; ++k) {
        const Message q4 = encode_prefix(j, k, verdict.reconstructed.channels[k]);
        const Message response = profile.respond(1, 5, {m2_1, empty, m2_3, q4});
        sum += judge(j, k, verdict, c, response, scaled_inner);
      }
    }
    total += weight * pair_share * sum;
  }
  return total;
}

std::shared_ptr<TwoFiveProtocol> two_five_wrap(std::shared_ptr<const Protocol> inner) {
  return std::make_shared<TwoFiveProtocol>(std::move(inner));
}

HonestLiftProfile::HonestLiftProfile(std::shared_ptr<const Protocol> inner,
                                     std::shared_ptr<const StrategyProfile> base)
    : inner_(std::move(inner)), base_(std::move(base)) {
  opening_ = base_->respond(0, 1, {});
  claims_.resize(inner_->coin_count());
}

Message HonestLiftProfile::claim_for(std::uint64_t r) const {
  std::lock_guard<std::mutex> lock(mutex_);
  if (!claims_[r]) {
    const ProtocolOutcome outcome = run_protocol(*inner_, *base_, r);
    const int t = inner_->num_provers();
    const int prover_rounds = (inner_->num_rounds() + 1) / 2;
    std::vector<std::vector<Message>> prover_msgs(t, std::vector<Message>(prover_rounds));
    for (int k = 0; k < t; ++k)
      for (int idx = 0; idx < prover_rounds; ++idx)
        prover_msgs[k][idx] = outcome.transcript.channels[k][2 * idx];
    claims_[r] = encode_claim(prover_msgs);
  }
  return *claims_[r];
}

Message HonestLiftProfile::respond(int prover, int round,
                                   const std::vector<Message>& history) const {
  if (prover == 0) {
    if (round == 1) return opening_.empty() ? Message{} : Message{opening_.front()};
    if (round == 3) {
      const Message& coin_msg = history.at(1);
      if (coin_msg.size() != 1 || coin_msg[0] < 0 ||
          static_cast<std::uint64_t>(coin_msg[0]) >= claims_.size())
        return {};
      return claim_for(static_cast<std::uint64_t>(coin_msg[0]));
    }
    return {};
  }
  if (prover == 1 && round == 5) {
    const auto prefix = parse_prefix(history.at(3), inner_->num_provers(), inner_->num_rounds());
    if (!prefix) return {};
    if (prefix->j % 2 == 0) return {};  // inner verifier round: provers are silent
    return base_->respond(prefix->k, prefix->j, prefix->history);
  }
  return {};
}

std::string HonestLiftProfile::descriptor() const { return "lift(" + base_->descriptor() + ")"; }

namespace {

class TamperedLiftProfile : public StrategyProfile {
 public:
  TamperedLiftProfile(std::shared_ptr<const Protocol> inner,
                      std::shared_ptr<const StrategyProfile> base, int lie_prover, int lie_round)
      : honest_(inner, base), p_(inner->num_rounds()), t_(inner->num_provers()),
        lie_prover_(lie_prover), lie_round_(lie_round) {
    if (lie_prover_ < 0 || lie_prover_ >= t_ || lie_round_ < 1 || lie_round_ > p_ ||
        lie_round_ % 2 == 0)
      throw std::invalid_argument("the lie must target a prover round of an inner prover");
  }

  Message respond(int prover, int round, const std::vector<Message>& history) const override {
    Message m = honest_.respond(prover, round, history);
    if (prover == 0 && round == 3 && !m.empty()) {
      auto parsed = parse_claim(m, t_, p_);
      if (parsed) {
        (*parsed)[lie_prover_][(lie_round_ - 1) / 2].push_back(Token{99});
        return encode_claim(*parsed);
      }
    }
    return m;
  }

  std::string descriptor() const override {
    return "tampered(k=" + std::to_string(lie_prover_) + ",j=" + std::to_string(lie_round_) +
           "," + honest_.descriptor() + ")";
  }

 private:
  HonestLiftProfile honest_;
  int p_, t_;
  int lie_prover_, lie_round_;
};

class LiftedFamily : public ProfileFamily {
 public:
  LiftedFamily(std::shared_ptr<const Protocol> inner, std::shared_ptr<const ProfileFamily> base)
      : inner_(std::move(inner)), base_(std::move(base)) {}

  std::string name() const override { return "lifted(" + base_->name() + ")"; }
  std::uint64_t size() const override { return base_->size(); }
  std::shared_ptr<const StrategyProfile> make(std::uint64_t index) const override {
    return std::make_shared<HonestLiftProfile>(inner_, base_->make(index));
  }

 private:
  std::shared_ptr<const Protocol> inner_;
  std::shared_ptr<const ProfileFamily> base_;
};

class ComplementFamily : public ProfileFamily {
 public:
  explicit ComplementFamily(std::shared_ptr<const ProfileFamily> base) : base_(std::move(base)) {}

  std::string name() const override { return "complement(" + base_->name() + ")"; }
  std::uint64_t size() const override { return base_->size(); }
  std::shared_ptr<const StrategyProfile> make(std::uint64_t index) const override {
    return complement_profile(base_->make(index));
  }

 private:
  std::shared_ptr<const ProfileFamily> base_;
};

}  // namespace

std::shared_ptr<const StrategyProfile> tampered_lift_profile(
    std::shared_ptr<const Protocol> inner, std::shared_ptr<const StrategyProfile> base,
    int lie_prover, int lie_round) {
  return std::make_shared<TamperedLiftProfile>(std::move(inner), std::move(base), lie_prover,
                                               lie_round);
}

std::unique_ptr<ProfileFamily> make_lifted_family(std::shared_ptr<const Protocol> inner,
                                                  std::shared_ptr<const ProfileFamily> base) {
  return std::make_unique<LiftedFamily>(std::move(inner), std::move(base));
}

std::unique_ptr<ProfileFamily> make_complement_family(std::shared_ptr<const ProfileFamily> base) {
  return std::make_unique<ComplementFamily>(std::move(base));
}

}  // namespace mrip
