#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace mrip {

// Size limits that keep every brute-force loop in this lab feasible. These are
// artifact policy, not mathematical constants, so they are configuration: the
// instance itself is asymptotically meaningful, the caps are what makes
// 2^(r+3s) and 2^(2^s) enumeration a desk exercise.
struct DeskBounds {
  int max_r_plus_3s = 6;
  int max_s = 4;
};

// An Oracle-3SAT instance: a 3-CNF B over r + 3s + 3 variables.
//
// Variables 1..r are the z-part, r+1..r+3s are the three oracle queries
// (b1, b2, b3), and r+3s+1..r+3s+3 stand for the oracle answers A(b1), A(b2),
// A(b3). The question is whether some oracle A: {0,1}^s -> {0,1} makes
// B(w, A(b1), A(b2), A(b3)) true for every w of length r+3s.
//
// Literals are DIMACS-style signed 1-based indices (negative = negated).
// s = 0 is permitted as the degenerate width: A is then the single bit A(ε).
struct Oracle3SatInstance {
  int r = 0;
  int s = 0;
  std::vector<std::array<int, 3>> clauses;

  int num_w_vars() const { return r + 3 * s; }
  int num_vars() const { return r + 3 * s + 3; }
  // Number of w strings, 2^(r+3s); fits easily under desk bounds.
  std::uint64_t w_count() const { return std::uint64_t{1} << num_w_vars(); }

  // Throws std::invalid_argument when a literal is out of range, r/s are
  // negative, or the desk bounds are exceeded.
  void validate(const DeskBounds& bounds = DeskBounds{}) const;
};

// A committed oracle: the full truth table of A: {0,1}^s -> {0,1}.
// Entry at index b is A(b), where a query string maps to its index with the
// first query bit as the least significant bit.
struct OracleTable {
  int width = 0;                 // s
  std::vector<std::uint8_t> table;  // size 2^s, entries in {0,1}

  std::uint64_t size() const { return std::uint64_t{1} << width; }
  int operator()(std::uint64_t b) const { return table[b]; }

  // The canonical integer index of this table: bit b of the index is A(b).
  // Tables of equal width are ordered by this index (ties in the decision
  // procedure are broken toward the smallest).
  std::uint64_t index() const;
  static OracleTable from_index(int width, std::uint64_t idx);

  bool operator==(const OracleTable& o) const = default;
};

// One assignment w = (z, b1, b2, b3) to the first r+3s variables.
// Packed LSB-first: bit 0 of `packed` is variable 1.
struct WAssignment {
  std::uint64_t packed = 0;
  int r = 0;
  int s = 0;

  std::uint64_t z() const { return packed & ((std::uint64_t{1} << r) - 1); }
  // i in {1,2,3}: the i-th oracle query string as an s-bit integer.
  std::uint64_t b(int i) const {
    return (packed >> (r + (i - 1) * s)) & ((std::uint64_t{1} << s) - 1);
  }
};

// Evaluates B(w, answers): 1 iff every clause has a true literal under the
// combined assignment. answers[i-1] supplies the value of variable r+3s+i.
int eval_cnf(const Oracle3SatInstance& instance, const WAssignment& w,
             const std::array<int, 3>& answers);

// Convenience overload taking the packed w directly.
int eval_cnf(const Oracle3SatInstance& instance, std::uint64_t w_packed,
             const std::array<int, 3>& answers);

// a' = |{w : B(w, A(b1), A(b2), A(b3)) = 1}| for a committed oracle A.
// Requires oracle.width == instance.s. Result is in [0, 2^(r+3s)].
std::uint64_t count_satisfying(const Oracle3SatInstance& instance,
                               const OracleTable& oracle);

struct DecideResult {
  int member = 0;            // 1 iff some oracle satisfies all w
  std::uint64_t a_star = 0;  // max over oracles of count_satisfying
  OracleTable witness;       // lowest-index table attaining a_star
};

// Exhaustive ground-truth decision: tries all 2^(2^s) oracles. This is the
// oracle every acceptance test measures protocols against. Throws
// std::invalid_argument ("instance too large for exact decision") when s
// exceeds bounds.max_s.
DecideResult decide_oracle3sat(const Oracle3SatInstance& instance,
                               const DeskBounds& bounds = DeskBounds{});

}  // namespace mrip
