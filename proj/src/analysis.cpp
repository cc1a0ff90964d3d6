#include "mrip/analysis.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>
#include <vector>

#include <gmpxx.h>

namespace mrip {

namespace {

struct ScanEntry {
  Rational utility;
  Token claim = -1;
};

// Utility and announced bit of every profile, indexed like the family.
// Chunks are written into disjoint slices of a preallocated vector, so the
// result is independent of thread scheduling.
std::vector<ScanEntry> scan_family(const Protocol& protocol, const ProfileFamily& family,
                                   const EnumOptions& options) {
  const std::uint64_t size = family.size();
  if (size == 0) throw std::invalid_argument("profile family '" + family.name() + "' is empty");
  const std::uint64_t cap = options.max_profiles ? options.max_profiles : default_enum_cap();
  if (size > cap)
    throw std::runtime_error("profile family '" + family.name() + "' has " +
                             std::to_string(size) + " profiles, above the cap of " +
                             std::to_string(cap) + " (override with MRIP_MAX_ENUM)");

  std::vector<ScanEntry> entries(size);
  const auto scan_range = [&](std::uint64_t lo, std::uint64_t hi) {
    for (std::uint64_t i = lo; i < hi; ++i) {
      const auto profile = family.make(i);
      entries[i].utility = protocol.expected_payment(*profile);
      entries[i].claim = claimed_bit(*profile);
    }
  };

  std::uint64_t threads = options.threads ? options.threads : std::thread::hardware_concurrency();
  if (threads == 0) threads = 1;
  threads = std::min<std::uint64_t>(threads, size);
  if (threads <= 1) {
    scan_range(0, size);
    return entries;
  }
  const std::uint64_t chunk = (size + threads - 1) / threads;
  std::vector<std::thread> workers;
  for (std::uint64_t w = 0; w < threads; ++w) {
    const std::uint64_t lo = w * chunk;
    const std::uint64_t hi = std::min(size, lo + chunk);
    if (lo >= hi) break;
    workers.emplace_back(scan_range, lo, hi);
  }
  for (auto& worker : workers) worker.join();
  return entries;
}

// 1-based interval of a utility in [0, 1]; 0 when it falls outside. The last
// interval is closed so that utility 1 belongs to interval N.
int interval_of(const Rational& u, int num_intervals) {
  if (u < Rational(0) || u > Rational(1)) return 0;
  const mpz_class scaled_num = u.raw().get_num() * num_intervals;
  const mpz_class idx = scaled_num / u.raw().get_den();  // exact floor: both nonnegative
  const long i = idx.get_si() + 1;
  return static_cast<int>(std::min<long>(i, num_intervals));
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string classify_gap(const Rational& gap, int size_n) {
  if (size_n < 0) throw std::invalid_argument("instance size must be nonnegative");
  if (gap >= Rational(1, 6)) return "constant";
  const long n1 = static_cast<long>(size_n) + 1;
  if (gap >= Rational(1, 2 * n1 * n1)) return "1/poly";
  if (gap > Rational(0)) return "smaller";
  return "nonpositive";
}

GapReport utility_gap(const Protocol& protocol, const ProfileFamily& family, int true_bit,
                      const std::string& instance_id, int size_n, const EnumOptions& options) {
  if (true_bit != 0 && true_bit != 1)
    throw std::invalid_argument("true bit must be 0 or 1, got " + std::to_string(true_bit));
  const std::vector<ScanEntry> entries = scan_family(protocol, family, options);

  GapReport report;
  report.instance_id = instance_id;
  report.protocol = protocol.name();
  report.profiles_examined = entries.size();

  bool first = true;
  bool best_claims_agree = true;
  Token best_claim = -1;
  for (const ScanEntry& e : entries) {
    if (first || e.utility > report.best_utility) {
      first = false;
      report.best_utility = e.utility;
      best_claim = e.claim;
      best_claims_agree = true;
    } else if (e.utility == report.best_utility && e.claim != best_claim) {
      best_claims_agree = false;
    }
    if (e.claim != true_bit) {
      if (!report.has_wrong || e.utility > report.best_wrong_utility) {
        report.has_wrong = true;
        report.best_wrong_utility = e.utility;
      }
    }
  }
  report.decided = best_claims_agree;
  report.decision = best_claims_agree ? best_claim : Token{-1};
  if (report.has_wrong) {
    report.gap = report.best_utility - report.best_wrong_utility;
    report.alpha_class = classify_gap(report.gap, size_n);
  } else {
    report.alpha_class = "none";
  }
  return report;
}

std::vector<SweepQuery> sweep_query_plan(int num_intervals) {
  if (num_intervals < 1) throw std::invalid_argument("need at least one interval");
  std::vector<SweepQuery> plan;
  plan.reserve(2 * static_cast<std::size_t>(num_intervals));
  for (int i = 1; i <= num_intervals; ++i) {
    plan.push_back(SweepQuery{i, 0});
    plan.push_back(SweepQuery{i, 1});
  }
  return plan;
}

SweepReport interval_sweep(const Protocol& protocol, const ProfileFamily& family,
                           int num_intervals, const std::string& instance_id,
                           const EnumOptions& options) {
  if (num_intervals < 1) throw std::invalid_argument("need at least one interval");
  const std::vector<ScanEntry> entries = scan_family(protocol, family, options);

  SweepReport report;
  report.instance_id = instance_id;
  report.protocol = protocol.name();
  report.num_intervals = num_intervals;
  report.queries = sweep_query_plan(num_intervals);
  report.profiles_examined = entries.size();

  // Answer both queries of every interval from one exhaustive pass. The
  // plan above was fixed before any answer was computed.
  std::vector<char> populated(static_cast<std::size_t>(num_intervals) + 1, 0);
  std::vector<char> with_one(static_cast<std::size_t>(num_intervals) + 1, 0);
  std::vector<char> with_other(static_cast<std::size_t>(num_intervals) + 1, 0);
  bool first = true;
  for (const ScanEntry& e : entries) {
    if (first || e.utility > report.best_utility) {
      first = false;
      report.best_utility = e.utility;
    }
    const int i = interval_of(e.utility, num_intervals);
    if (i == 0) continue;
    populated[i] = 1;
    (e.claim == 1 ? with_one : with_other)[i] = 1;
  }
  report.answers.reserve(report.queries.size());
  for (const SweepQuery& q : report.queries)
    report.answers.push_back(q.bit == 0 ? populated[q.interval] : with_one[q.interval]);

  for (int i = num_intervals; i >= 1; --i) {
    if (populated[i]) {
      report.top_interval = i;
      break;
    }
  }
  if (report.top_interval == 0) {
    report.negative_only = true;
    report.decision = -1;
    report.note = "definitional violation: every profile has negative utility";
  } else if (with_one[report.top_interval] && with_other[report.top_interval]) {
    report.ambiguous = true;
    report.decision = -1;
    report.note = "ambiguous interval";
  } else {
    report.decision = with_one[report.top_interval] ? 1 : 0;
  }

  // Smallest nonzero pairwise difference: with interval width below this the
  // top interval can only hold exact ties.
  std::vector<Rational> utilities;
  utilities.reserve(entries.size());
  for (const ScanEntry& e : entries) utilities.push_back(e.utility);
  std::sort(utilities.begin(), utilities.end());
  for (std::size_t i = 1; i < utilities.size(); ++i) {
    if (utilities[i] == utilities[i - 1]) continue;
    const Rational diff = utilities[i] - utilities[i - 1];
    if (!report.has_spacing || diff < report.min_spacing) {
      report.has_spacing = true;
      report.min_spacing = diff;
    }
  }
  return report;
}

std::string report_csv_header() {
  return "instance_id,protocol,best_utility,best_wrong_utility,gap,decision,intervals";
}

std::string to_csv_row(const GapReport& report) {
  std::string decision = report.decided ? std::to_string(report.decision) : "withheld";
  return csv_escape(report.instance_id) + "," + csv_escape(report.protocol) + "," +
         report.best_utility.str() + "," +
         (report.has_wrong ? report.best_wrong_utility.str() : "none") + "," +
         (report.has_wrong ? report.gap.str() : "none") + "," + decision + ",0";
}

std::string to_csv_row(const SweepReport& report) {
  std::string decision;
  if (report.negative_only)
    decision = "violation";
  else if (report.ambiguous)
    decision = "ambiguous";
  else
    decision = std::to_string(report.decision);
  return csv_escape(report.instance_id) + "," + csv_escape(report.protocol) + "," +
         report.best_utility.str() + ",none,none," + decision + "," +
         std::to_string(report.num_intervals);
}

}  // namespace mrip
