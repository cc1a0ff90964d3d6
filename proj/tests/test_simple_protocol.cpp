#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mrip/engine.hpp"
#include "mrip/simple_protocol.hpp"

#include <memory>
#include <stdexcept>
#include <vector>

using namespace mrip;

namespace {

// Member: the clause is a tautology, every oracle satisfies both w strings.
Oracle3SatInstance member_r1() {
  Oracle3SatInstance inst;
  inst.r = 1;
  inst.s = 0;
  inst.clauses = {{1, -1, 1}};
  return inst;
}

// Non-member: (x1) holds only for one of the two w strings; a_star = 1, so
// the best table satisfies fraction f* = 1/2.
Oracle3SatInstance non_member_r1() {
  Oracle3SatInstance inst;
  inst.r = 1;
  inst.s = 0;
  inst.clauses = {{1, 1, 1}};
  return inst;
}

// Member whose membership genuinely needs the oracle: A(eps) must be 1.
Oracle3SatInstance oracle_forced_r1() {
  Oracle3SatInstance inst;
  inst.r = 1;
  inst.s = 0;
  inst.clauses = {{4, 4, 4}};
  return inst;
}

}  // namespace

TEST_CASE("spot check count is the smallest m with (1-1/W)^m <= 1/3") {
  // Frozen values, each double-checked by the defining inequality below.
  CHECK(spot_check_count(member_r1()) == 2);  // W = 2

  Oracle3SatInstance w4;
  w4.r = 2;
  w4.s = 0;
  w4.clauses = {{1, -1, 2}};
  CHECK(spot_check_count(w4) == 4);  // W = 4

  Oracle3SatInstance w8;
  w8.r = 0;
  w8.s = 1;
  w8.clauses = {{1, 2, 3}};
  CHECK(spot_check_count(w8) == 9);  // W = 8

  for (const auto& inst : {member_r1(), w4, w8}) {
    int m = spot_check_count(inst);
    Rational miss(static_cast<long>(inst.w_count() - 1),
                  static_cast<long>(inst.w_count()));
    CHECK(miss.pow(static_cast<unsigned long>(m)) <= Rational(1, 3));
    CHECK(miss.pow(static_cast<unsigned long>(m - 1)) > Rational(1, 3));
  }
}

TEST_CASE("exhaustive variant: shape and coin space") {
  auto protocol = make_fig_simple(member_r1());
  CHECK(protocol->name() == "simple");
  CHECK(protocol->num_provers() == 2);
  CHECK(protocol->num_rounds() == 3);
  CHECK(protocol->coin_count() == 1);
  CHECK(protocol->spot_checks() == 0);
}

TEST_CASE("spot-check variant sizes its coin space as W^m * 3m") {
  SimpleOptions opts;
  opts.variant = MipVariant::kSpotCheck;
  auto protocol = make_fig_simple(member_r1(), opts);
  CHECK(protocol->spot_checks() == 2);
  CHECK(protocol->coin_count() == 24);  // 2^2 * 6

  Rational total;
  for (std::uint64_t c = 0; c < protocol->coin_count(); ++c)
    total += protocol->coin_weight(c);
  CHECK(total == Rational(1));
}

TEST_CASE("spot-check refuses widths whose raw coin space explodes") {
  Oracle3SatInstance w8;
  w8.r = 0;
  w8.s = 1;
  w8.clauses = {{1, 2, 3}};
  SimpleOptions opts;
  opts.variant = MipVariant::kSpotCheck;
  // W = 8, m = 9: 8^9 * 27 raw coins is far beyond the feasibility cap.
  CHECK_THROWS_AS(SimpleProtocol(w8, opts), std::invalid_argument);
}

TEST_CASE("exhaustive payments: member") {
  auto protocol = make_fig_simple(oracle_forced_r1());

  // Honest: claim 1 with the witness table A() = 1.
  SimpleCommittedProfile honest(1, OracleTable::from_index(0, 1));
  CHECK(expected_utility(*protocol, honest) == Rational(1));

  // Claim 1 with the wrong table: the check fails, paying 0.
  SimpleCommittedProfile wrong_table(1, OracleTable::from_index(0, 0));
  CHECK(expected_utility(*protocol, wrong_table) == Rational(0));

  // Claiming 0 always collects the flat 1/2.
  SimpleCommittedProfile claim0(0, OracleTable::from_index(0, 1));
  CHECK(expected_utility(*protocol, claim0) == Rational(1, 2));
}

TEST_CASE("exhaustive payments: non-member tops out at 1/2") {
  auto protocol = make_fig_simple(non_member_r1());
  for (std::uint64_t t = 0; t < 2; ++t) {
    SimpleCommittedProfile claim1(1, OracleTable::from_index(0, t));
    CHECK(expected_utility(*protocol, claim1) == Rational(0));
    SimpleCommittedProfile claim0(0, OracleTable::from_index(0, t));
    CHECK(expected_utility(*protocol, claim0) == Rational(1, 2));
  }
}

TEST_CASE("spot-check payments: false claims survive with probability f*^m") {
  SimpleOptions opts;
  opts.variant = MipVariant::kSpotCheck;
  auto protocol = make_fig_simple(non_member_r1(), opts);
  // f* = 1/2 and m = 2: claiming 1 earns (1/2)^2 = 1/4 with any table, since
  // the clause ignores the oracle; claiming 0 earns the safe 1/2.
  for (std::uint64_t t = 0; t < 2; ++t) {
    SimpleCommittedProfile claim1(1, OracleTable::from_index(0, t));
    CHECK(expected_utility(*protocol, claim1) == Rational(1, 4));
    SimpleCommittedProfile claim0(0, OracleTable::from_index(0, t));
    CHECK(expected_utility(*protocol, claim0) == Rational(1, 2));
  }
}

TEST_CASE("spot-check cross-examination catches inconsistent pairs") {
  SimpleOptions opts;
  opts.variant = MipVariant::kSpotCheck;
  auto protocol = make_fig_simple(oracle_forced_r1(), opts);

  // Shared honest table: every sampled assignment checks out.
  SimpleCommittedProfile honest(1, OracleTable::from_index(0, 1));
  CHECK(expected_utility(*protocol, honest) == Rational(1));

  // The provers answer from different tables: prover 2 contradicts prover 1
  // on every cross-checked query (s = 0 means there is only one query), so
  // acceptance probability drops to 0.
  SimpleCommittedProfile split(1, OracleTable::from_index(0, 1),
                               OracleTable::from_index(0, 0));
  CHECK(expected_utility(*protocol, split) == Rational(0));
}

TEST_CASE("malformed openings and answers earn the floor payment") {
  auto protocol = make_fig_simple(member_r1());

  // Opening token outside {0,1}: treated as no claim, paid 0.
  auto base = std::make_shared<SimpleCommittedProfile>(1, OracleTable::from_index(0, 1));
  DeviationProfile junk_claim(base, "junk-claim");
  junk_claim.set_response(0, 1, {}, {7});
  CHECK(expected_utility(*protocol, junk_claim) == Rational(0));

  DeviationProfile empty_claim(base, "empty-claim");
  empty_claim.set_response(0, 1, {}, {});
  CHECK(expected_utility(*protocol, empty_claim) == Rational(0));

  // Wrong-size table transmission in round 3 (expects exactly 2^s = 1 bit).
  DeviationProfile fat_table(base, "fat-table");
  fat_table.set_response(0, 3, {{1}, {}}, {1, 1, 0});
  CHECK(expected_utility(*protocol, fat_table) == Rational(0));

  // Non-bit token inside the table transmission.
  DeviationProfile junk_table(base, "junk-table");
  junk_table.set_response(0, 3, {{1}, {}}, {5});
  CHECK(expected_utility(*protocol, junk_table) == Rational(0));
}

TEST_CASE("committed family enumerates (claim, shared table) pairs") {
  auto family = make_simple_committed_family(member_r1());
  CHECK(family->name() == "simple-committed");
  CHECK(family->size() == 4);  // 2 claims * 2 tables at s = 0

  // Index layout: the c = 0 block first, table index within the block.
  auto p0 = family->make(1);
  auto committed = std::dynamic_pointer_cast<const SimpleCommittedProfile>(p0);
  REQUIRE(committed);
  CHECK(committed->claim() == 0);
  auto p1 = std::dynamic_pointer_cast<const SimpleCommittedProfile>(family->make(2));
  REQUIRE(p1);
  CHECK(p1->claim() == 1);

  CHECK_THROWS_AS(family->make(4), std::out_of_range);
}

TEST_CASE("both variants are mrip on member and non-member instances") {
  for (MipVariant variant : {MipVariant::kExhaustive, MipVariant::kSpotCheck}) {
    SimpleOptions opts;
    opts.variant = variant;

    for (const auto& inst : {member_r1(), oracle_forced_r1()}) {
      auto protocol = make_fig_simple(inst, opts);
      auto family = make_simple_committed_family(inst);
      MripReport report = check_mrip(*protocol, *family, 1);
      CHECK(report.holds());
      CHECK(report.max_utility == Rational(1));
    }

    auto protocol = make_fig_simple(non_member_r1(), opts);
    auto family = make_simple_committed_family(non_member_r1());
    MripReport report = check_mrip(*protocol, *family, 0);
    CHECK(report.holds());
    CHECK(report.max_utility == Rational(1, 2));
  }
}

TEST_CASE("the gap between truth and the best lie is 1/2 on members") {
  auto protocol = make_fig_simple(member_r1());
  auto family = make_simple_committed_family(member_r1());
  BestResult best = enumerate_best(*protocol, *family);
  CHECK(best.max_utility == Rational(1));

  // Best utility among wrong-claim profiles: scan the c = 0 block.
  Rational best_wrong(-1);
  for (std::uint64_t i = 0; i < family->size() / 2; ++i) {
    Rational u = expected_utility(*protocol, *family->make(i));
    if (u > best_wrong) best_wrong = u;
  }
  CHECK(best_wrong == Rational(1, 2));
  CHECK(best.max_utility - best_wrong == Rational(1, 2));
}

TEST_CASE("the broken acceptor is exposed on non-members") {
  SimpleOptions opts;
  opts.broken_accept_all = true;
  auto protocol = make_fig_simple(non_member_r1(), opts);
  CHECK(protocol->name() == "simple-broken");

  auto family = make_simple_committed_family(non_member_r1());
  MripReport report = check_mrip(*protocol, *family, 0);
  // Accept-everything pays 1 for claiming 1, beating the honest 1/2: the
  // maximizers carry the wrong bit and the second condition fails.
  CHECK(report.cond1);
  CHECK(!report.cond2);
  CHECK(!report.holds());
  CHECK(report.max_utility == Rational(1));

  // On members the broken check is indistinguishable from the real one.
  auto ok = make_fig_simple(member_r1(), opts);
  auto fam_m = make_simple_committed_family(member_r1());
  CHECK(check_mrip(*ok, *fam_m, 1).holds());
}
