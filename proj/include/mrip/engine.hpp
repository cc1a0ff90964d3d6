#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "mrip/protocol.hpp"
#include "mrip/rational.hpp"
#include "mrip/strategy.hpp"

namespace mrip {

// An indexed, enumerable set of deterministic strategy profiles. Families are
// the unit the engine exhausts: `make(i)` must be a pure function of `i`, so
// enumeration can be split across threads and reproduced exactly.
class ProfileFamily {
 public:
  virtual ~ProfileFamily() = default;

  virtual std::string name() const = 0;
  virtual std::uint64_t size() const = 0;
  virtual std::shared_ptr<const StrategyProfile> make(std::uint64_t index) const = 0;
};

// A family backed by an explicit list, for hand-built profile collections
// (deviation experiments, structured families that cannot be indexed by a
// formula).
class ListedFamily : public ProfileFamily {
 public:
  ListedFamily(std::string name, std::vector<std::shared_ptr<const StrategyProfile>> profiles);

  std::string name() const override { return name_; }
  std::uint64_t size() const override { return profiles_.size(); }
  std::shared_ptr<const StrategyProfile> make(std::uint64_t index) const override {
    return profiles_.at(index);
  }

 private:
  std::string name_;
  std::vector<std::shared_ptr<const StrategyProfile>> profiles_;
};

// Enumeration cap: families larger than this are refused rather than ground
// through. Defaults to 2^22 profiles; the MRIP_MAX_ENUM environment variable
// overrides it.
std::uint64_t default_enum_cap();

struct EnumOptions {
  std::uint64_t max_profiles = 0;  // 0 = use default_enum_cap()
  unsigned threads = 0;            // 0 = hardware concurrency
};

struct Maximizer {
  std::uint64_t index = 0;
  std::string descriptor;
  Token claim = -1;
};

struct BestResult {
  Rational max_utility;
  std::vector<Maximizer> maximizers;  // ascending by index
  std::uint64_t profiles_examined = 0;
};

// Computes every profile's exact expected payment and returns the maximum
// together with all profiles attaining it. Deterministic: results are merged
// in index order regardless of thread scheduling.
BestResult enumerate_best(const Protocol& protocol, const ProfileFamily& family,
                          const EnumOptions& options = {});

// The two defining conditions, checked against an exhaustive enumeration:
//   cond1: the maximum expected payment is nonnegative;
//   cond2: every payment-maximizing profile announces `true_bit`.
struct MripReport {
  Rational max_utility;
  std::vector<Maximizer> maximizers;
  bool cond1 = false;
  bool cond2 = false;
  int true_bit = 0;
  std::string protocol_name;
  std::string family_name;

  bool holds() const { return cond1 && cond2; }
};

MripReport check_mrip(const Protocol& protocol, const ProfileFamily& family, int true_bit,
                      const EnumOptions& options = {});

// JSON rendering with stable key order:
// {"max_utility": "num/den", "maximizers": [...], "cond1": bool, "cond2": bool, ...}.
std::string report_to_json(const MripReport& report);

// Convenience: the exact expected payment of one profile. Utility of the
// cooperating provers equals the expected payment.
Rational expected_utility(const Protocol& protocol, const StrategyProfile& profile);

}  // namespace mrip
