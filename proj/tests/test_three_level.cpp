#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mrip/generate.hpp"
#include "mrip/instance_io.hpp"
#include "mrip/three_level.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

using namespace mrip;

namespace {

// Independent composed evaluation: evaluate level 1 with eval_circuit, slice
// the block bits by hand, decode, decide membership with decide_oracle3sat,
// then evaluate level 3 on (x, membership bits). This retraces the published
// composition without using eval_three_level's own internals.
int ref_eval(const ThreeLevelCircuit& tlc, const std::vector<std::uint8_t>& x) {
  auto v1 = eval_circuit(tlc.level1, x);
  std::vector<std::uint8_t> nexp_bits;
  for (int j = 1; j <= tlc.q; ++j) {
    std::vector<std::uint8_t> block(tlc.p);
    for (int t = 0; t < tlc.p; ++t) block[t] = v1[tlc.block_gate(j, t)];
    auto inst = decode_block(block);
    REQUIRE(inst.has_value());
    nexp_bits.push_back(
        static_cast<std::uint8_t>(decide_oracle3sat(*inst).member));
  }
  std::vector<std::uint8_t> x3 = x;
  x3.insert(x3.end(), nexp_bits.begin(), nexp_bits.end());
  auto v3 = eval_circuit(tlc.level3, x3);
  return v3[tlc.level3.g()];
}

}  // namespace

TEST_CASE("block width accounts for header plus clauses") {
  CHECK(block_width_for(0) == 8);
  CHECK(block_width_for(1) == 23);
  CHECK(block_width_for(3) == 53);
  CHECK(block_width_for(7) == 113);
}

TEST_CASE("block codec round-trips library instances") {
  for (int which = 0; which < block_library_size(); ++which) {
    Oracle3SatInstance inst = block_library(which);
    int m = static_cast<int>(inst.clauses.size());
    int p = block_width_for(m);
    auto bits = encode_block(inst, p);
    REQUIRE(static_cast<int>(bits.size()) == p);
    auto back = decode_block(bits);
    REQUIRE(back.has_value());
    CHECK(back->r == inst.r);
    CHECK(back->s == inst.s);
    CHECK(back->clauses == inst.clauses);
  }
}

TEST_CASE("encode pads with zeros and decode accepts wider blocks") {
  Oracle3SatInstance inst = block_library(0);
  int m = static_cast<int>(inst.clauses.size());
  int tight = block_width_for(m);
  auto wide = encode_block(inst, tight + 16);
  for (int t = tight; t < tight + 16; ++t) CHECK(wide[t] == 0);
  auto back = decode_block(wide);
  REQUIRE(back.has_value());
  CHECK(back->clauses == inst.clauses);
}

TEST_CASE("encode rejects instances that do not fit") {
  Oracle3SatInstance inst = block_library(0);
  int m = static_cast<int>(inst.clauses.size());
  CHECK_THROWS_AS(encode_block(inst, block_width_for(m) - 1),
                  std::invalid_argument);

  Oracle3SatInstance big;
  big.r = 8;  // header field holds 0..7
  big.s = 0;
  big.clauses = {{1, 2, 3}};
  CHECK_THROWS_AS(encode_block(big, 128), std::invalid_argument);

  Oracle3SatInstance wide_s;
  wide_s.s = 4;  // s field holds 0..3
  wide_s.r = 0;
  wide_s.clauses = {{1, 2, 3}};
  CHECK_THROWS_AS(encode_block(wide_s, 128), std::invalid_argument);

  Oracle3SatInstance many;
  many.r = 1;
  many.s = 0;
  for (int i = 0; i < 8; ++i) many.clauses.push_back({1, 1, 1});  // m > 7
  CHECK_THROWS_AS(encode_block(many, 256), std::invalid_argument);
}

TEST_CASE("decode rejects malformed blocks") {
  Oracle3SatInstance inst = block_library(0);
  int p = block_width_for(static_cast<int>(inst.clauses.size()));
  auto good = encode_block(inst, p + 4);

  // Nonzero padding.
  auto bad = good;
  bad[p + 2] = 1;
  CHECK(!decode_block(bad).has_value());

  // Clause count that does not fit the width: set m = 7 in bits 5..7.
  bad = good;
  bad[5] = 1;
  bad[6] = 1;
  bad[7] = 1;
  CHECK(!decode_block(bad).has_value());

  // Zero literal: blank out the first clause's first variable index.
  bad = good;
  bad[8] = bad[9] = bad[10] = bad[11] = 0;
  CHECK(!decode_block(bad).has_value());

  // Literal index above num_vars: variable 15 with r=1, s=0 (4 vars).
  bad = good;
  bad[8] = bad[9] = bad[10] = bad[11] = 1;
  CHECK(!decode_block(bad).has_value());

  // Desk-bound violation: r=7, s=3 gives r+3s = 16 > 6.
  std::vector<std::uint8_t> oversized(128, 0);
  oversized[0] = oversized[1] = oversized[2] = 1;  // r = 7
  oversized[3] = oversized[4] = 1;                 // s = 3
  CHECK(!decode_block(oversized).has_value());

  // A block shorter than the header is rejected outright.
  CHECK(!decode_block(std::vector<std::uint8_t>(5, 0)).has_value());
}

TEST_CASE("library blocks decide as advertised") {
  REQUIRE(block_library_size() >= 4);
  bool saw_member = false, saw_non_member = false;
  for (int which = 0; which < block_library_size(); ++which) {
    Oracle3SatInstance inst = block_library(which);
    inst.validate();
    DecideResult res = decide_oracle3sat(inst);
    CHECK(res.member == block_library_member(which));
    CHECK(res.a_star >= 1);
    (res.member ? saw_member : saw_non_member) = true;
  }
  CHECK(saw_member);
  CHECK(saw_non_member);
}

TEST_CASE("composite gate numbering and structure queries") {
  ThreeLevelCircuit tlc = build_three_level({0, 1}, GateType::AND);
  tlc.validate();
  CHECK(tlc.n() == 2);
  CHECK(tlc.q == 2);
  CHECK(tlc.total_gates() == tlc.g1() + tlc.q + tlc.g3());
  CHECK(tlc.output_gate() == tlc.total_gates());

  // Level-1 gates keep their plain types.
  CHECK(tlc.type_of(1) == TlcType::INPUT);
  CHECK(tlc.inputs_of(1).empty());

  // NEXP gate j consumes block j's p output gates, in order.
  for (int j = 1; j <= tlc.q; ++j) {
    int id = tlc.g1() + j;
    CHECK(tlc.type_of(id) == TlcType::NEXP);
    auto ins = tlc.inputs_of(id);
    REQUIRE(static_cast<int>(ins.size()) == tlc.p);
    for (int t = 0; t < tlc.p; ++t) CHECK(ins[t] == tlc.block_gate(j, t));
  }

  // Level-3 input gates: x copies have no inputs, NEXP copies have one.
  for (int k = 1; k <= tlc.n(); ++k) {
    CHECK(tlc.type_of(tlc.g1() + tlc.q + k) == TlcType::INPUT);
    CHECK(tlc.inputs_of(tlc.g1() + tlc.q + k).empty());
  }
  for (int j = 1; j <= tlc.q; ++j) {
    int id = tlc.g1() + tlc.q + tlc.n() + j;
    CHECK(tlc.type_of(id) == TlcType::INPUT);
    auto ins = tlc.inputs_of(id);
    REQUIRE(ins.size() == 1);
    CHECK(ins[0] == tlc.g1() + j);
  }

  // Composite ids out of range are rejected.
  CHECK_THROWS_AS(tlc.type_of(0), std::out_of_range);
  CHECK_THROWS_AS(tlc.type_of(tlc.total_gates() + 1), std::out_of_range);
  CHECK_THROWS_AS(tlc.inputs_of(0), std::out_of_range);
}

TEST_CASE("validate rejects structural violations") {
  ThreeLevelCircuit tlc = build_three_level({0}, GateType::NOT);
  CHECK_NOTHROW(tlc.validate());

  ThreeLevelCircuit bad = tlc;
  bad.p = 7;  // below the 8-bit header
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = tlc;
  bad.q = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = tlc;
  bad.q = 5;  // more blocks than level 1 provides
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = tlc;
  bad.level3.n = 1;  // must equal n + q
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("three-level evaluation matches the independent composition") {
  for (const ThreeLevelCircuit& tlc : standard_three_level_suite()) {
    tlc.validate();
    for (int x = 0; x < 4; ++x) {
      std::vector<std::uint8_t> input = {static_cast<std::uint8_t>(x & 1),
                                         static_cast<std::uint8_t>((x >> 1) & 1)};
      ThreeLevelValue got = eval_three_level(tlc, input);
      CHECK(got.final == ref_eval(tlc, input));
      CHECK(static_cast<int>(got.values.size()) == tlc.total_gates() + 1);
      CHECK(got.values[tlc.output_gate()] == got.final);
    }
  }
}

TEST_CASE("constant blocks make the nexp outputs input-independent") {
  // build_three_level wires each block bit as OR(x1, NOT x1) or
  // AND(x1, NOT x1), so the decoded instance is the same for every x.
  ThreeLevelCircuit tlc = build_three_level({0, 3}, GateType::OR);
  for (int x = 0; x < 4; ++x) {
    std::vector<std::uint8_t> input = {static_cast<std::uint8_t>(x & 1),
                                       static_cast<std::uint8_t>((x >> 1) & 1)};
    ThreeLevelValue v = eval_three_level(tlc, input);
    // Block 0 is a member, block 3 a non-member; OR of (1, 0) = 1.
    CHECK(v.values[tlc.g1() + 1] == 1);
    CHECK(v.values[tlc.g1() + 2] == 0);
    CHECK(v.final == 1);
  }
}

TEST_CASE("single-block folds: NOT inverts, AND/OR pass through") {
  ThreeLevelValue v_not =
      eval_three_level(build_three_level({0}, GateType::NOT), {0, 0});
  CHECK(v_not.final == 0);  // block 0 is a member -> NEXP bit 1 -> NOT -> 0

  ThreeLevelValue v_and =
      eval_three_level(build_three_level({1}, GateType::AND), {0, 0});
  CHECK(v_and.final == 0);  // block 1 is a non-member

  ThreeLevelValue v_or =
      eval_three_level(build_three_level({1}, GateType::OR), {0, 0});
  CHECK(v_or.final == 0);
}

TEST_CASE("undecodable block raises an ingestion error naming the block") {
  // Blocks 0 (one clause) and 3 (two clauses) share the two-clause width, so
  // block 0 carries 15 zero padding bits. Corrupt its last one: swapping the
  // constant gate's AND to OR pins that padding bit to 1 for every input,
  // which must not decode.
  ThreeLevelCircuit tlc = build_three_level({0, 3}, GateType::OR);
  int pad_gate = tlc.block_gate(1, tlc.p - 1);
  REQUIRE(tlc.level1.gates[pad_gate].type == GateType::AND);  // constant 0
  tlc.level1.gates[pad_gate].type = GateType::OR;             // now constant 1
  try {
    eval_three_level(tlc, {0, 0});
    FAIL("expected a decode failure");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("block 1") != std::string::npos);
  }
}

TEST_CASE("three-level json round-trip") {
  ThreeLevelCircuit tlc = build_three_level({2, 1}, GateType::OR);
  std::string text = three_level_to_json(tlc);
  ThreeLevelCircuit back = parse_three_level_json(text);
  CHECK(back.p == tlc.p);
  CHECK(back.q == tlc.q);
  CHECK(back.g1() == tlc.g1());
  CHECK(back.g3() == tlc.g3());
  CHECK(three_level_to_json(back) == text);
  for (int x = 0; x < 4; ++x) {
    std::vector<std::uint8_t> input = {static_cast<std::uint8_t>(x & 1),
                                       static_cast<std::uint8_t>((x >> 1) & 1)};
    CHECK(eval_three_level(back, input).final ==
          eval_three_level(tlc, input).final);
  }
}

TEST_CASE("three-level parse errors carry origin") {
  try {
    parse_three_level_json("{\"p\": 8}", "tlc.json");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("tlc.json") != std::string::npos);
  }
}
