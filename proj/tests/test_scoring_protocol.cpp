#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mrip/engine.hpp"
#include "mrip/scoring_protocol.hpp"

#include <memory>
#include <stdexcept>
#include <vector>

using namespace mrip;

namespace {

Oracle3SatInstance member_r1() {  // tautology, member, W = 2
  Oracle3SatInstance inst;
  inst.r = 1;
  inst.s = 0;
  inst.clauses = {{1, -1, 1}};
  return inst;
}

Oracle3SatInstance non_member_r1() {  // a_star = 1, f* = 1/2, W = 2
  Oracle3SatInstance inst;
  inst.r = 1;
  inst.s = 0;
  inst.clauses = {{1, 1, 1}};
  return inst;
}

Oracle3SatInstance oracle_forced_r1() {  // member iff A() = 1, W = 2
  Oracle3SatInstance inst;
  inst.r = 1;
  inst.s = 0;
  inst.clauses = {{4, 4, 4}};
  return inst;
}

Oracle3SatInstance member_s1() {  // forces A(b1) = 1: member, W = 16
  Oracle3SatInstance inst;
  inst.r = 1;
  inst.s = 1;
  inst.clauses = {{5, 5, 5}};
  return inst;
}

}  // namespace

TEST_CASE("protocol shape") {
  auto protocol = make_fig_scoring(member_r1());
  CHECK(protocol->name() == "scoring");
  CHECK(protocol->num_provers() == 2);
  CHECK(protocol->num_rounds() == 3);
  CHECK(protocol->coin_count() == 24);  // 6 W^2 with W = 2
  CHECK(protocol->report_denominator() == 2);

  Rational total;
  for (std::uint64_t c = 0; c < protocol->coin_count(); ++c)
    total += protocol->coin_weight(c);
  CHECK(total == Rational(1));
}

TEST_CASE("honest member earns exactly 2/11") {
  for (const auto& inst : {member_r1(), oracle_forced_r1(), member_s1()}) {
    auto protocol = make_fig_scoring(inst);
    auto honest = honest_scoring_profile(inst);
    CHECK(honest->claim() == 1);
    CHECK(honest->report() == inst.w_count());
    CHECK(expected_utility(*protocol, *honest) == Rational(2, 11));
  }
}

TEST_CASE("honest profile on a non-member reports the best fraction") {
  auto honest = honest_scoring_profile(non_member_r1());
  CHECK(honest->claim() == 0);
  CHECK(honest->report() == 1);  // a* = 1 of W = 2
  auto protocol = make_fig_scoring(non_member_r1());
  // u = f* E(a*/W against f*) with f* = 1/2: (1/2)(3/22) = 3/44.
  CHECK(expected_utility(*protocol, *honest) == Rational(3, 44));
}

TEST_CASE("the bit must commit to whether the report is everything") {
  auto protocol = make_fig_scoring(member_r1());
  OracleTable table = OracleTable::from_index(0, 0);

  // c = 1 with a < W halts at -1.
  ScoringCommittedProfile under(1, 1, table);
  CHECK(protocol->expected_payment(under) == Rational(-1));
  // c = 0 with a = W halts at -1.
  ScoringCommittedProfile over(0, 2, table);
  CHECK(protocol->expected_payment(over) == Rational(-1));

  // Halting is per coin, not an average artifact.
  CHECK(run_protocol(*protocol, under, 0).payment == Rational(-1));
  CHECK(run_protocol(*protocol, over, 17).payment == Rational(-1));
}

TEST_CASE("malformed openings and answers are penalized at -1") {
  auto protocol = make_fig_scoring(member_r1());
  auto base = std::make_shared<ScoringCommittedProfile>(1, 2, OracleTable::from_index(0, 1));

  DeviationProfile no_report(base, "no-report");
  no_report.set_response(0, 1, {}, {1});  // missing a
  CHECK(expected_utility(*protocol, no_report) == Rational(-1));

  DeviationProfile big_report(base, "big-report");
  big_report.set_response(0, 1, {}, {1, 9});  // a > W
  CHECK(expected_utility(*protocol, big_report) == Rational(-1));

  // Well-formed opening, junk answer bits from prover 1.
  DeviationProfile junk(base, "junk-answers");
  junk.set_response(0, 3, {{1, 2}, {0, 0, 0, 0, 0, 0}}, {1, 1, 1});
  CHECK(expected_utility(*protocol, junk) == Rational(-1));
}

TEST_CASE("cross-examination: split tables disagree and pay -1") {
  auto protocol = make_fig_scoring(oracle_forced_r1());
  // Prover 1 answers from the all-ones table, prover 2 from the all-zeros
  // table; at s = 0 every query hits the single entry, so every coin
  // cross-checks a disagreement.
  ScoringCommittedProfile split(1, 2, OracleTable::from_index(0, 1),
                                OracleTable::from_index(0, 0));
  CHECK(expected_utility(*protocol, split) == Rational(-1));
}

TEST_CASE("closed-form expected payment equals the per-coin reference") {
  // The dual-route check: the committed fast path must agree exactly with
  // the coin-by-coin evaluation, profile by profile.
  for (const auto& inst :
       {member_r1(), non_member_r1(), oracle_forced_r1(), member_s1()}) {
    auto protocol = make_fig_scoring(inst);
    auto family = make_scoring_committed_family(inst);
    for (std::uint64_t i = 0; i < family->size(); ++i) {
      auto profile = family->make(i);
      CHECK(protocol->expected_payment(*profile) ==
            expected_payment_per_coin(*protocol, *profile));
    }
  }
}

TEST_CASE("family indexing covers (claim, report, table) lexicographically") {
  auto inst = member_r1();
  auto family = make_scoring_committed_family(inst);
  // 2 claims * (W+1) reports * 2 tables = 12 at W = 2, s = 0.
  CHECK(family->size() == 12);

  auto first = std::dynamic_pointer_cast<const ScoringCommittedProfile>(family->make(0));
  REQUIRE(first);
  CHECK(first->claim() == 0);
  CHECK(first->report() == 0);
  CHECK(first->table1().index() == 0);

  // index = (c (W+1) + a) 2^(2^s) + t: pick c=1, a=2, t=1 -> (3+2)*2+1 = 11.
  auto last = std::dynamic_pointer_cast<const ScoringCommittedProfile>(family->make(11));
  REQUIRE(last);
  CHECK(last->claim() == 1);
  CHECK(last->report() == 2);
  CHECK(last->table1().index() == 1);
  CHECK(last->shared_table());

  CHECK_THROWS_AS(family->make(12), std::out_of_range);
}

TEST_CASE("member gap: best truth 2/11, best lie 3/22, distance 1/22") {
  auto inst = member_r1();
  auto protocol = make_fig_scoring(inst);
  auto family = make_scoring_committed_family(inst);

  BestResult best = enumerate_best(*protocol, *family);
  CHECK(best.max_utility == Rational(2, 11));
  for (const Maximizer& m : best.maximizers) CHECK(m.claim == 1);

  Rational best_wrong(-2);
  for (std::uint64_t i = 0; i < family->size(); ++i) {
    auto profile = family->make(i);
    if (claimed_bit(*profile) == 1) continue;
    Rational u = protocol->expected_payment(*profile);
    if (u > best_wrong) best_wrong = u;
  }
  // The best a lying claim can do is report a = W-1 (here 1/2): 3/22.
  CHECK(best_wrong == Rational(3, 22));
  CHECK(best.max_utility - best_wrong == Rational(1, 22));  // 2/(11 W^2)
}

TEST_CASE("non-member gap: best truth 3/44, best lie 1/22, distance 1/44") {
  auto inst = non_member_r1();
  auto protocol = make_fig_scoring(inst);
  auto family = make_scoring_committed_family(inst);

  BestResult best = enumerate_best(*protocol, *family);
  CHECK(best.max_utility == Rational(3, 44));  // f*(2f*^2 - 2f* + 2)/11
  for (const Maximizer& m : best.maximizers) CHECK(m.claim == 0);

  Rational best_wrong(-2);
  for (std::uint64_t i = 0; i < family->size(); ++i) {
    auto profile = family->make(i);
    if (claimed_bit(*profile) == 0) continue;
    Rational u = protocol->expected_payment(*profile);
    if (u > best_wrong) best_wrong = u;
  }
  // Claiming 1 pins the report to a = W, worth 2 f*^2 / 11 = 1/22.
  CHECK(best_wrong == Rational(1, 22));
  // The lie costs 2 f* (1-f*)^2 / 11 = 1/44.
  CHECK(best.max_utility - best_wrong == Rational(1, 44));
}

TEST_CASE("scoring is mrip on members and non-members, including s = 1") {
  struct Case {
    Oracle3SatInstance inst;
    int bit;
  };
  std::vector<Case> cases = {{member_r1(), 1},
                             {non_member_r1(), 0},
                             {oracle_forced_r1(), 1},
                             {member_s1(), 1}};
  for (const auto& c : cases) {
    auto protocol = make_fig_scoring(c.inst);
    auto family = make_scoring_committed_family(c.inst);
    MripReport report = check_mrip(*protocol, *family, c.bit);
    CHECK(report.holds());
  }
}

TEST_CASE("degenerate a_star = 0 instances defeat the bit condition") {
  // When even the best oracle satisfies nothing, every non-halting profile
  // earns exactly 0, claims 0 and 1 tie at the top, and the maximizer set
  // mixes both bits. This is why the instance generator rejects a_star = 0
  // outright.
  Oracle3SatInstance degenerate;
  degenerate.r = 0;
  degenerate.s = 0;
  degenerate.clauses = {{1, 1, 1}, {-1, -1, -1}};
  REQUIRE(decide_oracle3sat(degenerate).a_star == 0);

  auto protocol = make_fig_scoring(degenerate);
  auto family = make_scoring_committed_family(degenerate);
  MripReport report = check_mrip(*protocol, *family, 0);
  CHECK(report.max_utility == Rational(0));
  CHECK(report.cond1);
  CHECK(!report.cond2);

  bool saw_claim_1 = false;
  for (const Maximizer& m : report.maximizers) saw_claim_1 |= (m.claim == 1);
  CHECK(saw_claim_1);
}
