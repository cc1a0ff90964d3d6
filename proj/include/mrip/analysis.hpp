#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mrip/engine.hpp"
#include "mrip/protocol.hpp"
#include "mrip/rational.hpp"

namespace mrip {

// How far the best profiles announcing the true bit sit above the best
// profiles announcing anything else.
struct GapReport {
  std::string instance_id;
  std::string protocol;
  Rational best_utility;
  bool decided = false;         // every best profile announces the same bit
  Token decision = -1;          // that bit, when decided
  bool has_wrong = false;       // the family contains a profile announcing != true_bit
  Rational best_wrong_utility;  // meaningful only when has_wrong
  Rational gap;                 // best_utility - best_wrong_utility, when has_wrong
  std::string alpha_class;      // see classify_gap; "none" when no wrong-bit profile exists
  std::uint64_t profiles_examined = 0;
};

// Pointwise classification of a separation at instance size n:
//   gap >= 1/6            -> "constant"
//   gap >= 1/(2(n+1)^2)   -> "1/poly"
//   gap > 0               -> "smaller"
//   otherwise             -> "nonpositive"
std::string classify_gap(const Rational& gap, int size_n);

// Exhaustive scan splitting the family by announced bit. `true_bit` defines
// which side is "wrong"; `size_n` feeds classify_gap.
GapReport utility_gap(const Protocol& protocol, const ProfileFamily& family, int true_bit,
                      const std::string& instance_id, int size_n, const EnumOptions& options = {});

// One membership question posed to the exhaustive search: "does a profile
// with utility inside interval `interval` exist" (bit = 0), or "... one that
// announces 1" (bit = 1).
struct SweepQuery {
  int interval = 0;  // 1-based
  int bit = 0;
};

// The full query list for a sweep. A pure function of num_intervals: the
// plan never depends on any answer, which is the non-adaptivity guarantee.
std::vector<SweepQuery> sweep_query_plan(int num_intervals);

// Reading off the answer from interval membership alone. [0,1] is divided
// into num_intervals half-open slices [(i-1)/N, i/N), the last one closed at
// 1. The decision is whether an announcing-1 profile lives in the highest
// populated interval.
struct SweepReport {
  std::string instance_id;
  std::string protocol;
  int num_intervals = 0;
  std::vector<SweepQuery> queries;  // == sweep_query_plan(num_intervals)
  std::vector<char> answers;        // parallel to queries, 0/1
  int top_interval = 0;             // highest populated interval; 0 = none
  int decision = -1;                // 1 or 0; -1 when ambiguous or violated
  bool ambiguous = false;           // top interval holds profiles with both announcements
  bool negative_only = false;       // every utility < 0: violates "max utility >= 0"
  Rational best_utility;
  bool has_spacing = false;   // at least two distinct utilities exist
  Rational min_spacing;       // smallest nonzero pairwise utility difference
  std::string note;           // human-readable flag ("", "ambiguous interval", ...)
  std::uint64_t profiles_examined = 0;
};

SweepReport interval_sweep(const Protocol& protocol, const ProfileFamily& family,
                           int num_intervals, const std::string& instance_id = "",
                           const EnumOptions& options = {});

// CSV rendering. Both report kinds share one schema:
//   instance_id,protocol,best_utility,best_wrong_utility,gap,decision,intervals
// Rationals are rendered as "num/den"; absent fields as "none"; a gap row
// carries intervals = 0.
std::string report_csv_header();
std::string to_csv_row(const GapReport& report);
std::string to_csv_row(const SweepReport& report);

}  // namespace mrip
