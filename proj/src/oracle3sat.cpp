#include "mrip/oracle3sat.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace mrip {

void Oracle3SatInstance::validate(const DeskBounds& bounds) const {
  if (r < 0) throw std::invalid_argument("instance: r must be non-negative");
  if (s < 0) throw std::invalid_argument("instance: s must be non-negative");
  if (s > bounds.max_s)
    throw std::invalid_argument("instance: s = " + std::to_string(s) +
                                " exceeds desk bound s <= " + std::to_string(bounds.max_s));
  if (num_w_vars() > bounds.max_r_plus_3s)
    throw std::invalid_argument("instance: r + 3s = " + std::to_string(num_w_vars()) +
                                " exceeds desk bound " + std::to_string(bounds.max_r_plus_3s));
  const int n = num_vars();
  for (std::size_t ci = 0; ci < clauses.size(); ++ci) {
    for (int lit : clauses[ci]) {
      if (lit == 0 || std::abs(lit) > n)
        throw std::invalid_argument("instance: clause " + std::to_string(ci + 1) +
                                    " literal " + std::to_string(lit) +
                                    " out of range 1.." + std::to_string(n));
    }
  }
}

std::uint64_t OracleTable::index() const {
  std::uint64_t idx = 0;
  for (std::uint64_t b = 0; b < size(); ++b)
    if (table[b]) idx |= std::uint64_t{1} << b;
  return idx;
}

OracleTable OracleTable::from_index(int width, std::uint64_t idx) {
  OracleTable t;
  t.width = width;
  t.table.resize(std::size_t{1} << width);
  for (std::uint64_t b = 0; b < t.size(); ++b)
    t.table[b] = static_cast<std::uint8_t>((idx >> b) & 1);
  return t;
}

int eval_cnf(const Oracle3SatInstance& instance, const WAssignment& w,
             const std::array<int, 3>& answers) {
  return eval_cnf(instance, w.packed, answers);
}

int eval_cnf(const Oracle3SatInstance& instance, std::uint64_t w_packed,
             const std::array<int, 3>& answers) {
  const int nw = instance.num_w_vars();
  for (const auto& clause : instance.clauses) {
    bool sat = false;
    for (int lit : clause) {
      const int var = lit < 0 ? -lit : lit;
      // Variables 1..r+3s come from w; r+3s+1..r+3s+3 are the oracle answers.
      const int value = var <= nw ? static_cast<int>((w_packed >> (var - 1)) & 1)
                                  : answers[var - nw - 1];
      if ((lit > 0) == (value == 1)) {
        sat = true;
        break;
      }
    }
    if (!sat) return 0;
  }
  return 1;
}

std::uint64_t count_satisfying(const Oracle3SatInstance& instance,
                               const OracleTable& oracle) {
  if (oracle.width != instance.s)
    throw std::invalid_argument("count_satisfying: oracle width " +
                                std::to_string(oracle.width) + " != instance s " +
                                std::to_string(instance.s));
  std::uint64_t count = 0;
  for (std::uint64_t w = 0; w < instance.w_count(); ++w) {
    WAssignment wa{w, instance.r, instance.s};
    const std::array<int, 3> answers = {oracle(wa.b(1)), oracle(wa.b(2)), oracle(wa.b(3))};
    count += eval_cnf(instance, w, answers);
  }
  return count;
}

DecideResult decide_oracle3sat(const Oracle3SatInstance& instance,
                               const DeskBounds& bounds) {
  if (instance.s > bounds.max_s)
    throw std::invalid_argument(
        "decide_oracle3sat: instance too large for exact decision (s = " +
        std::to_string(instance.s) + " > " + std::to_string(bounds.max_s) + ")");
  instance.validate(bounds);

  DecideResult result;
  bool have_any = false;
  const std::uint64_t num_tables = std::uint64_t{1} << (std::uint64_t{1} << instance.s);
  for (std::uint64_t idx = 0; idx < num_tables; ++idx) {
    const OracleTable oracle = OracleTable::from_index(instance.s, idx);
    const std::uint64_t a = count_satisfying(instance, oracle);
    // Strict > keeps the lowest-index witness on ties ("the provers can
    // pre-agree on any of them" — we pre-agree on the smallest).
    if (!have_any || a > result.a_star) {
      have_any = true;
      result.a_star = a;
      result.witness = oracle;
    }
  }
  result.member = result.a_star == instance.w_count() ? 1 : 0;
  return result;
}

}  // namespace mrip
