#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mrip/circuit.hpp"
#include "mrip/oracle3sat.hpp"
#include "mrip/three_level.hpp"

namespace mrip {

// Seeded instance generation. The seed fully determines the result; identical
// parameters always reproduce the same instance.
struct InstanceGenParams {
  int r = 1;
  int s = 1;
  int clauses = 3;
  std::uint64_t seed = 1;
  int membership = -1;  // -1 = either, 0 = require non-member, 1 = require member
  int max_attempts = 50000;
  DeskBounds bounds;
};

// Draws random 3-clauses until the brute-force decision matches `membership`
// (when requested). Instances with a_star = 0 (even the best oracle satisfies
// no assignment) are always rejected and redrawn: every announcement then
// ties at utility 0, so no payment scheme can separate the membership bits.
Oracle3SatInstance generate_instance(const InstanceGenParams& params);

struct CorpusEntry {
  std::string id;  // "ex-NNN-rRsS-sat" / "-unsat"
  Oracle3SatInstance instance;
  int member = 0;          // brute-force ground truth
  std::uint64_t a_star = 0;  // best-oracle satisfied-assignment count
};

// The standard desk corpus: 52 instances over shapes (r, s) in
// {(1,0), (2,0), (0,1), (1,1), (2,1), (0,2)}, half members and half
// non-members per shape, all with a_star >= 1. Deterministic in `seed`.
std::vector<CorpusEntry> standard_corpus(std::uint64_t seed = 1);

// Random circuit on `num_inputs` inputs with gates up to `num_gates`; every
// non-input gate draws a type from {AND, OR, NOT} and sources among earlier
// gates, so the result is always a valid DAG with output gate `num_gates`.
Circuit generate_circuit(int num_inputs, int num_gates, std::uint64_t seed);

// Random bit vector of length n.
std::vector<std::uint8_t> generate_input(int n, std::uint64_t seed);

// Tiny Oracle-3SAT instances used as NEXP-gate blocks, alternating member /
// non-member. All fit the block codec (r <= 7, s <= 3, m <= 7).
int block_library_size();
Oracle3SatInstance block_library(int which);
int block_library_member(int which);  // ground truth for the entry

// Three-level circuit on n = 2 inputs: level 1 outputs the chosen library
// instances as constant blocks (built from x1 and NOT x1, so the encoding is
// independent of the input), level 3 folds the NEXP outputs with `combiner`
// (AND/OR; NOT only for a single block).
ThreeLevelCircuit build_three_level(const std::vector<int>& block_choices, GateType combiner);

// Seeded random pick of blocks and combiner.
ThreeLevelCircuit generate_three_level(int q, std::uint64_t seed);

// Six fixed circuits (q = 1 and q = 2) covering member blocks, non-member
// blocks and both fold types.
std::vector<ThreeLevelCircuit> standard_three_level_suite();

}  // namespace mrip
