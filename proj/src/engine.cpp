#include "mrip/engine.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <thread>
#include <utility>

#include <json.hpp>

namespace mrip {

ListedFamily::ListedFamily(std::string name,
                           std::vector<std::shared_ptr<const StrategyProfile>> profiles)
    : name_(std::move(name)), profiles_(std::move(profiles)) {}

std::uint64_t default_enum_cap() {
  if (const char* env = std::getenv("MRIP_MAX_ENUM")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
    throw std::runtime_error("MRIP_MAX_ENUM must be a positive integer, got '" +
                             std::string(env) + "'");
  }
  return std::uint64_t{1} << 22;
}

namespace {

struct ChunkBest {
  bool any = false;
  Rational max;
  std::vector<std::uint64_t> argmax;
};

ChunkBest best_in_range(const Protocol& protocol, const ProfileFamily& family, std::uint64_t lo,
                        std::uint64_t hi) {
  ChunkBest best;
  for (std::uint64_t i = lo; i < hi; ++i) {
    const auto profile = family.make(i);
    const Rational u = protocol.expected_payment(*profile);
    if (!best.any || u > best.max) {
      best.any = true;
      best.max = u;
      best.argmax.assign(1, i);
    } else if (u == best.max) {
      best.argmax.push_back(i);
    }
  }
  return best;
}

}  // namespace

BestResult enumerate_best(const Protocol& protocol, const ProfileFamily& family,
                          const EnumOptions& options) {
  const std::uint64_t size = family.size();
  if (size == 0) throw std::invalid_argument("profile family '" + family.name() + "' is empty");
  const std::uint64_t cap = options.max_profiles ? options.max_profiles : default_enum_cap();
  if (size > cap)
    throw std::runtime_error("profile family '" + family.name() + "' has " +
                             std::to_string(size) + " profiles, over the enumeration cap of " +
                             std::to_string(cap) + "; set MRIP_MAX_ENUM to raise it");

  unsigned threads = options.threads ? options.threads : std::thread::hardware_concurrency();
  if (threads == 0) threads = 1;
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, size));

  std::vector<ChunkBest> parts(threads);
  if (threads == 1) {
    parts[0] = best_in_range(protocol, family, 0, size);
  } else {
    std::vector<std::thread> workers;
    workers.reserve(threads);
    const std::uint64_t chunk = (size + threads - 1) / threads;
    for (unsigned w = 0; w < threads; ++w) {
      const std::uint64_t lo = std::min<std::uint64_t>(w * chunk, size);
      const std::uint64_t hi = std::min<std::uint64_t>(lo + chunk, size);
      workers.emplace_back(
          [&, w, lo, hi]() { parts[w] = best_in_range(protocol, family, lo, hi); });
    }
    for (auto& t : workers) t.join();
  }

  // Merge in chunk order; chunks cover ascending index ranges, so the result
  // is identical to a single-threaded scan.
  BestResult result;
  result.profiles_examined = size;
  bool any = false;
  Rational max;
  std::vector<std::uint64_t> argmax;
  for (const ChunkBest& part : parts) {
    if (!part.any) continue;
    if (!any || part.max > max) {
      any = true;
      max = part.max;
      argmax = part.argmax;
    } else if (part.max == max) {
      argmax.insert(argmax.end(), part.argmax.begin(), part.argmax.end());
    }
  }
  result.max_utility = max;
  result.maximizers.reserve(argmax.size());
  for (std::uint64_t i : argmax) {
    const auto profile = family.make(i);
    result.maximizers.push_back(Maximizer{i, profile->descriptor(), claimed_bit(*profile)});
  }
  return result;
}

MripReport check_mrip(const Protocol& protocol, const ProfileFamily& family, int true_bit,
                      const EnumOptions& options) {
  if (true_bit != 0 && true_bit != 1)
    throw std::invalid_argument("true_bit must be 0 or 1");
  BestResult best = enumerate_best(protocol, family, options);
  MripReport report;
  report.max_utility = best.max_utility;
  report.maximizers = std::move(best.maximizers);
  report.cond1 = best.max_utility >= Rational(0);
  report.cond2 = std::all_of(report.maximizers.begin(), report.maximizers.end(),
                             [&](const Maximizer& m) { return m.claim == true_bit; });
  report.true_bit = true_bit;
  report.protocol_name = protocol.name();
  report.family_name = family.name();
  return report;
}

std::string report_to_json(const MripReport& report) {
  nlohmann::ordered_json doc;
  doc["max_utility"] = report.max_utility.str();
  doc["maximizers"] = nlohmann::ordered_json::array();
  for (const Maximizer& m : report.maximizers) {
    nlohmann::ordered_json entry;
    entry["index"] = m.index;
    entry["descriptor"] = m.descriptor;
    entry["claim"] = m.claim;
    doc["maximizers"].push_back(entry);
  }
  doc["cond1"] = report.cond1;
  doc["cond2"] = report.cond2;
  doc["true_bit"] = report.true_bit;
  doc["protocol"] = report.protocol_name;
  doc["family"] = report.family_name;
  return doc.dump(2);
}

Rational expected_utility(const Protocol& protocol, const StrategyProfile& profile) {
  return protocol.expected_payment(profile);
}

}  // namespace mrip
