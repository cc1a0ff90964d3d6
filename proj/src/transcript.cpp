#include "mrip/transcript.hpp"

#include <sstream>

namespace mrip {

std::string message_to_string(const Message& m) {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) out << ' ';
    out << m[i];
  }
  out << ']';
  return out.str();
}

std::string transcript_to_string(const Transcript& t) {
  std::ostringstream out;
  for (int p = 0; p < t.num_provers(); ++p) {
    out << "P" << (p + 1) << ":";
    for (std::size_t j = 0; j < t.channels[p].size(); ++j) {
      const bool prover_turn = j % 2 == 0;  // rounds 1, 3, ... are prover turns
      out << ' ' << (j + 1) << (prover_turn ? ">" : "<")
          << message_to_string(t.channels[p][j]);
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace mrip
