#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mrip/circuit.hpp"
#include "mrip/oracle3sat.hpp"

namespace mrip {

// Gate vocabulary of the three-level circuit: the four plain types plus the
// NEXP gate (outputs membership of its input block in Oracle-3SAT).
enum class TlcType { INPUT, AND, OR, NOT, NEXP };

std::string tlc_type_name(TlcType t);

// The three-level circuit:
//   level 1: an explicit circuit C on n inputs whose designated output gates
//            are n+1 .. n+p*q (in order), read as q blocks of p bits;
//   level 2: q NEXP gates, gate g+j consumes block j and outputs 1 iff the
//            block, decoded as an Oracle-3SAT instance, is a member;
//   level 3: an explicit circuit C' on n+q inputs — its first n input gates
//            copy x, the next q copy the NEXP outputs — with one output.
//
// Composite gate numbering: level 1 = 1..g, NEXP = g+1..g+q,
// level 3 = g+q+1..g+q+g'. The final answer is the value of gate g+q+g'.
struct ThreeLevelCircuit {
  Circuit level1;
  int p = 0;  // block width (= NEXP gate fan-in)
  int q = 0;  // number of NEXP gates
  Circuit level3;

  int n() const { return level1.n; }
  int g1() const { return level1.g(); }
  int g3() const { return level3.g(); }
  int total_gates() const { return g1() + q + g3(); }
  int output_gate() const { return total_gates(); }

  // First level-1 output gate of block j (1-based): n + (j-1)*p + 1.
  int block_gate(int j, int t) const { return n() + (j - 1) * p + 1 + t; }

  void validate(const DeskBounds& bounds = DeskBounds{}) const;

  // Type and input-gate list of a composite gate id. Level-3 input gates that
  // copy an x bit have no input gates (they read x directly); the ones that
  // copy an NEXP output have exactly one, the NEXP gate.
  TlcType type_of(int i) const;
  std::vector<int> inputs_of(int i) const;
};

// ---- block codec -----------------------------------------------------------
//
// A p-bit block encodes one Oracle-3SAT instance, LSB-first per field:
//   bits 0..2   r           (3 bits)
//   bits 3..4   s           (2 bits)
//   bits 5..7   m           (clause count, 3 bits)
//   then m clauses, 15 bits each: 3 literals of (4-bit variable index, sign bit)
//   remaining bits must be zero padding.
// Decoding rejects (returns nullopt) when a literal index is 0 or out of
// range, m clauses do not fit in p bits, desk bounds are exceeded, or the
// padding is nonzero.

inline constexpr int kBlockHeaderBits = 8;
inline constexpr int kBlockClauseBits = 15;

// Smallest block width that can hold instances with up to max_clauses clauses.
int block_width_for(int max_clauses);

// Encodes an instance into exactly p bits; throws std::invalid_argument if it
// does not fit (r > 7, s > 3, m > 7, or p too small).
std::vector<std::uint8_t> encode_block(const Oracle3SatInstance& instance, int p);

std::optional<Oracle3SatInstance> decode_block(const std::vector<std::uint8_t>& bits,
                                               const DeskBounds& bounds = DeskBounds{});

struct ThreeLevelValue {
  int final = 0;
  std::vector<std::uint8_t> values;  // 1-based over composite gates 1..g+q+g'
};

// Ground-truth evaluation of the three-level circuit: level-1 values by plain
// evaluation, NEXP outputs via decide_oracle3sat, level 3 on (x, NEXP bits).
// An undecodable block is an ingestion error naming the block index.
ThreeLevelValue eval_three_level(const ThreeLevelCircuit& tlc,
                                 const std::vector<std::uint8_t>& x,
                                 const DeskBounds& bounds = DeskBounds{});

// Three-level file format: {"p": int, "q": int, "level1": circuit,
// "level3": circuit} with the circuit objects as in circuit.hpp.
ThreeLevelCircuit parse_three_level_json(const std::string& text,
                                         const std::string& origin = "<string>");
ThreeLevelCircuit load_three_level_file(const std::string& path);
std::string three_level_to_json(const ThreeLevelCircuit& tlc);

}  // namespace mrip
