#include "mrip/strategy.hpp"

#include <utility>

namespace mrip {

Token claimed_bit(const StrategyProfile& profile) {
  const Message first = profile.respond(0, 1, {});
  return first.empty() ? Token{-1} : first.front();
}

DeviationProfile::DeviationProfile(std::shared_ptr<const StrategyProfile> base, std::string label)
    : base_(std::move(base)), label_(std::move(label)) {}

void DeviationProfile::set_response(int prover, int round, std::vector<Message> history,
                                    Message reply) {
  overrides_[std::make_tuple(prover, round, std::move(history))] = std::move(reply);
}

Message DeviationProfile::respond(int prover, int round,
                                  const std::vector<Message>& history) const {
  const auto it = overrides_.find(std::make_tuple(prover, round, history));
  if (it != overrides_.end()) return it->second;
  return base_->respond(prover, round, history);
}

std::string DeviationProfile::descriptor() const {
  return label_ + " over " + base_->descriptor();
}

}  // namespace mrip
