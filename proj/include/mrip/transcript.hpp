#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mrip {

// Messages are finite token sequences. Tokens are plain integers; each
// protocol documents how it packs structured content (query strings, tables,
// claims) into tokens. An empty message is a legal "says nothing" turn.
using Token = long long;
using Message = std::vector<Token>;

// The per-prover communication record of one protocol run. channels[i][t]
// holds the message exchanged on prover i's private channel in round t+1;
// odd rounds (1, 3, ...) are prover messages, even rounds verifier messages.
// A prover sees only its own channel, and when it speaks in round j its
// channel already contains exactly the j-1 earlier messages - so the vector
// itself is the prover's visible history.
struct Transcript {
  std::vector<std::vector<Message>> channels;

  explicit Transcript(int num_provers = 0) : channels(num_provers) {}

  int num_provers() const { return static_cast<int>(channels.size()); }

  // Message on prover `prover`'s channel (0-based) in round `round` (1-based).
  const Message& at(int prover, int round) const { return channels.at(prover).at(round - 1); }

  // Clears all messages but keeps the channel skeleton, so a run loop can
  // reuse one transcript's allocations across coins.
  void reset(int num_provers) {
    channels.resize(num_provers);
    for (auto& ch : channels) ch.clear();
  }
};

std::string message_to_string(const Message& m);
std::string transcript_to_string(const Transcript& t);

}  // namespace mrip
