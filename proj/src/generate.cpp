#include "mrip/generate.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <string>

namespace mrip {

Oracle3SatInstance generate_instance(const InstanceGenParams& params) {
  if (params.clauses < 1) throw std::invalid_argument("need at least one clause");
  if (params.membership < -1 || params.membership > 1)
    throw std::invalid_argument("membership must be -1, 0 or 1");
  Oracle3SatInstance probe;
  probe.r = params.r;
  probe.s = params.s;
  probe.validate(params.bounds);  // rejects bad r/s before any drawing

  std::mt19937_64 rng(params.seed);
  const int num_vars = probe.num_vars();
  for (int attempt = 0; attempt < params.max_attempts; ++attempt) {
    Oracle3SatInstance instance;
    instance.r = params.r;
    instance.s = params.s;
    instance.clauses.reserve(params.clauses);
    for (int c = 0; c < params.clauses; ++c) {
      std::array<int, 3> clause{};
      for (int l = 0; l < 3; ++l) {
        const int var = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(num_vars));
        clause[l] = rng() % 2 == 0 ? var : -var;
      }
      instance.clauses.push_back(clause);
    }
    const DecideResult decision = decide_oracle3sat(instance, params.bounds);
    if (decision.a_star == 0) continue;  // degenerate: rejected unconditionally
    if (params.membership != -1 && decision.member != params.membership) continue;
    return instance;
  }
  throw std::runtime_error("no instance with r=" + std::to_string(params.r) +
                           " s=" + std::to_string(params.s) + " membership=" +
                           std::to_string(params.membership) + " found after " +
                           std::to_string(params.max_attempts) + " attempts");
}

namespace {

struct ShapePlan {
  int r;
  int s;
  int count;            // instances of this shape, half member / half non-member
  int member_clauses;   // clause budget for member draws
  int nonmember_clauses;
};

}  // namespace

std::vector<CorpusEntry> standard_corpus(std::uint64_t seed) {
  static const ShapePlan plans[] = {
      {1, 0, 6, 3, 3},  {2, 0, 10, 3, 3}, {0, 1, 12, 3, 4},
      {1, 1, 12, 3, 4}, {2, 1, 10, 4, 4}, {0, 2, 2, 3, 5},
  };
  std::vector<CorpusEntry> corpus;
  std::uint64_t entry_index = 0;
  for (const ShapePlan& plan : plans) {
    for (int i = 0; i < plan.count; ++i) {
      const int want_member = i % 2;
      InstanceGenParams params;
      params.r = plan.r;
      params.s = plan.s;
      params.clauses = want_member ? plan.member_clauses : plan.nonmember_clauses;
      params.membership = want_member;
      params.seed = seed * 0x100000000ULL + entry_index;
      CorpusEntry entry;
      entry.instance = generate_instance(params);
      const DecideResult decision = decide_oracle3sat(entry.instance);
      entry.member = decision.member;
      entry.a_star = decision.a_star;
      std::string num = std::to_string(entry_index + 1);
      while (num.size() < 3) num.insert(num.begin(), '0');
      entry.id = "ex-" + num + "-r" + std::to_string(plan.r) + "s" + std::to_string(plan.s) +
                 (entry.member ? "-sat" : "-unsat");
      corpus.push_back(std::move(entry));
      ++entry_index;
    }
  }
  return corpus;
}

Circuit generate_circuit(int num_inputs, int num_gates, std::uint64_t seed) {
  if (num_inputs < 1) throw std::invalid_argument("need at least one input");
  if (num_gates <= num_inputs)
    throw std::invalid_argument("need at least one non-input gate");
  std::mt19937_64 rng(seed);
  Circuit circuit;
  circuit.n = num_inputs;
  circuit.gates.resize(static_cast<std::size_t>(num_gates) + 1);
  for (int i = num_inputs + 1; i <= num_gates; ++i) {
    Gate& gate = circuit.gates[i];
    switch (rng() % 3) {
      case 0: gate.type = GateType::AND; break;
      case 1: gate.type = GateType::OR; break;
      default: gate.type = GateType::NOT; break;
    }
    const int fanin = gate.type == GateType::NOT ? 1 : 2;
    for (int l = 0; l < fanin; ++l)
      gate.inputs.push_back(1 + static_cast<int>(rng() % static_cast<std::uint64_t>(i - 1)));
  }
  circuit.validate();
  return circuit;
}

std::vector<std::uint8_t> generate_input(int n, std::uint64_t seed) {
  if (n < 0) throw std::invalid_argument("negative input width");
  std::mt19937_64 rng(seed);
  std::vector<std::uint8_t> x(static_cast<std::size_t>(n));
  for (auto& bit : x) bit = static_cast<std::uint8_t>(rng() % 2);
  return x;
}

int block_library_size() { return 4; }

Oracle3SatInstance block_library(int which) {
  Oracle3SatInstance instance;
  switch (which) {
    case 0:  // member: w1 or (not w1) or A1 is a tautology
      instance.r = 1;
      instance.s = 0;
      instance.clauses = {{1, -1, 2}};
      break;
    case 1:  // non-member: w1 alone fails at w1 = 0 whatever the oracle says
      instance.r = 1;
      instance.s = 0;
      instance.clauses = {{1, 1, 1}};
      break;
    case 2:  // member: A(b1) = 1 is satisfied by the constant-1 oracle
      instance.r = 0;
      instance.s = 1;
      instance.clauses = {{4, 4, 4}};
      break;
    case 3:  // non-member: (w1 or w2) and (not w1 or not w2) fails at 00 and 11
      instance.r = 2;
      instance.s = 0;
      instance.clauses = {{1, 2, 2}, {-1, -2, -2}};
      break;
    default:
      throw std::out_of_range("block library has entries 0..3");
  }
  instance.validate();
  return instance;
}

int block_library_member(int which) {
  switch (which) {
    case 0:
    case 2:
      return 1;
    case 1:
    case 3:
      return 0;
    default:
      throw std::out_of_range("block library has entries 0..3");
  }
}

ThreeLevelCircuit build_three_level(const std::vector<int>& block_choices, GateType combiner) {
  const int q = static_cast<int>(block_choices.size());
  if (q < 1 || q > 4) throw std::invalid_argument("need 1..4 blocks");
  if (combiner == GateType::INPUT) throw std::invalid_argument("combiner must compute something");
  if (combiner == GateType::NOT && q != 1)
    throw std::invalid_argument("a NOT fold only makes sense for a single block");

  int max_clauses = 1;
  std::vector<Oracle3SatInstance> blocks;
  for (int which : block_choices) {
    blocks.push_back(block_library(which));
    max_clauses = std::max(max_clauses, static_cast<int>(blocks.back().clauses.size()));
  }
  const int p = block_width_for(max_clauses);

  ThreeLevelCircuit tlc;
  tlc.p = p;
  tlc.q = q;

  // Level 1 on x = (x1, x2): each block bit is a constant built from x1 and
  // H = NOT x1 (placed after the block outputs; numbering need not be
  // topological): OR(x1, H) = 1, AND(x1, H) = 0.
  const int n = 2;
  const int helper = n + p * q + 1;
  tlc.level1.n = n;
  tlc.level1.gates.resize(static_cast<std::size_t>(helper) + 1);
  tlc.level1.gates[helper].type = GateType::NOT;
  tlc.level1.gates[helper].inputs = {1};
  for (int j = 1; j <= q; ++j) {
    const std::vector<std::uint8_t> bits = encode_block(blocks[j - 1], p);
    for (int t = 0; t < p; ++t) {
      Gate& gate = tlc.level1.gates[tlc.block_gate(j, t)];
      gate.type = bits[t] ? GateType::OR : GateType::AND;
      gate.inputs = {1, helper};
    }
  }

  // Level 3: inputs copy (x, NEXP outputs); fold the NEXP copies.
  const int n3 = n + q;
  tlc.level3.n = n3;
  tlc.level3.gates.resize(static_cast<std::size_t>(n3) + 1);
  if (combiner == GateType::NOT) {
    Gate gate;
    gate.type = GateType::NOT;
    gate.inputs = {n + 1};
    tlc.level3.gates.push_back(gate);
  } else {
    int acc = n + 1;
    if (q == 1) {
      Gate gate;
      gate.type = combiner;
      gate.inputs = {acc, acc};
      tlc.level3.gates.push_back(gate);
    } else {
      for (int j = 2; j <= q; ++j) {
        Gate gate;
        gate.type = combiner;
        gate.inputs = {acc, n + j};
        tlc.level3.gates.push_back(gate);
        acc = tlc.level3.g();
      }
    }
  }
  tlc.validate();
  return tlc;
}

ThreeLevelCircuit generate_three_level(int q, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<int> choices;
  for (int j = 0; j < q; ++j)
    choices.push_back(static_cast<int>(rng() % static_cast<std::uint64_t>(block_library_size())));
  const GateType combiner = rng() % 2 == 0 ? GateType::AND : GateType::OR;
  return build_three_level(choices, combiner);
}

std::vector<ThreeLevelCircuit> standard_three_level_suite() {
  return {
      build_three_level({0}, GateType::AND),     // member block, answer 1
      build_three_level({1}, GateType::OR),      // non-member block, answer 0
      build_three_level({2}, GateType::NOT),     // member block negated, answer 0
      build_three_level({0, 1}, GateType::AND),  // mixed blocks, answer 0
      build_three_level({0, 2}, GateType::AND),  // two member blocks, answer 1
      build_three_level({1, 3}, GateType::OR),   // two non-member blocks, answer 0
  };
}

}  // namespace mrip
