// End-to-end checks of the mriplab binary. The test runner passes the tool's
// location as --mriplab=<path>; everything else goes to doctest.
#define DOCTEST_CONFIG_IMPLEMENT
#include "doctest.h"

#include "mrip/circuit.hpp"
#include "mrip/instance_io.hpp"
#include "mrip/oracle3sat.hpp"
#include "mrip/three_level.hpp"

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

std::string g_mriplab;

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Runs the tool through the shell so env-var prefixes work; captures both
// streams and the exit code.
CliResult run_cli(const std::string& args, const std::string& env_prefix = "") {
  const std::string out_path = "cli_test_stdout.tmp";
  const std::string err_path = "cli_test_stderr.tmp";
  std::string cmd = env_prefix;
  if (!cmd.empty()) cmd += " ";
  cmd += "\"" + g_mriplab + "\" " + args + " > " + out_path + " 2> " + err_path;
  const int status = std::system(cmd.c_str());
  CliResult result;
  if (WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);
  result.out = slurp(out_path);
  result.err = slurp(err_path);
  std::remove(out_path.c_str());
  std::remove(err_path.c_str());
  return result;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

// Fixture instance files shared across cases.
const char* kMemberPath = "cli_member.json";
const char* kNonMemberPath = "cli_nonmember.json";

void write_fixtures() {
  mrip::Oracle3SatInstance member;
  member.r = 1;
  member.s = 0;
  member.clauses = {{1, -1, 1}};
  write_file(kMemberPath, mrip::instance_to_json(member));

  mrip::Oracle3SatInstance non_member;
  non_member.r = 1;
  non_member.s = 0;
  non_member.clauses = {{1, 1, 1}};
  write_file(kNonMemberPath, mrip::instance_to_json(non_member));
}

}  // namespace

TEST_CASE("generation subcommands are deterministic and emit loadable files") {
  CliResult a = run_cli("gen instance --r 1 --s 1 --clauses 3 --seed 9");
  CliResult b = run_cli("gen instance --r 1 --s 1 --clauses 3 --seed 9");
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(!a.out.empty());
  mrip::Oracle3SatInstance inst = mrip::parse_instance_json(a.out, "gen");
  CHECK(inst.r == 1);
  CHECK(inst.s == 1);
  CHECK(inst.clauses.size() == 3);

  CliResult c = run_cli("gen instance --r 1 --s 1 --clauses 3 --seed 10");
  CHECK(c.exit_code == 0);
  CHECK(c.out != a.out);

  CliResult member = run_cli("gen instance --r 2 --s 0 --membership 1 --seed 4");
  CHECK(member.exit_code == 0);
  CHECK(mrip::decide_oracle3sat(mrip::parse_instance_json(member.out, "gen")).member == 1);

  CliResult circ = run_cli("gen circuit --inputs 2 --gates 6 --seed 3");
  CHECK(circ.exit_code == 0);
  mrip::Circuit circuit = mrip::parse_circuit_json(circ.out, "gen");
  CHECK(circuit.n == 2);
  CHECK(circuit.g() == 6);
  CHECK(run_cli("gen circuit --inputs 2 --gates 6 --seed 3").out == circ.out);

  CliResult tlc = run_cli("gen three-level --q 1 --seed 2");
  CHECK(tlc.exit_code == 0);
  CHECK_NOTHROW(mrip::parse_three_level_json(tlc.out, "gen").validate());

  // --out writes the same bytes to a file and keeps stdout quiet.
  CliResult to_file = run_cli("gen instance --r 1 --s 1 --clauses 3 --seed 9 --out cli_gen.tmp");
  CHECK(to_file.exit_code == 0);
  CHECK(to_file.out.empty());
  CHECK(slurp("cli_gen.tmp") == a.out);
  std::remove("cli_gen.tmp");
}

TEST_CASE("verify exits 0 when both conditions hold") {
  write_fixtures();
  CliResult simple = run_cli(std::string("verify --protocol simple --instance ") + kMemberPath);
  CHECK(simple.exit_code == 0);
  CHECK(simple.out.find("# mriplab verify") != std::string::npos);
  CHECK(simple.out.find("cond1,cond2,true_bit") != std::string::npos);
  CHECK(simple.out.find(",simple,1/1,1/2,1/2,1,0,true,true,1") != std::string::npos);

  CliResult scoring =
      run_cli(std::string("verify --protocol scoring --instance ") + kMemberPath +
              " --instance " + kNonMemberPath);
  CHECK(scoring.exit_code == 0);
  CHECK(scoring.out.find(",scoring,2/11,3/22,1/22,1,0,true,true,1") != std::string::npos);
  CHECK(scoring.out.find(",scoring,3/44,1/22,1/44,0,0,true,true,0") != std::string::npos);

  CliResult spot = run_cli(std::string("verify --protocol simple --mip-variant spot-check ") +
                           "--instance " + kMemberPath);
  CHECK(spot.exit_code == 0);
}

TEST_CASE("verify exits 1 when a condition fails") {
  write_fixtures();
  // The intentionally broken exhaustive check accepts every oracle, so on a
  // non-member a wrong announcement earns as much as the honest one.
  CliResult broken =
      run_cli(std::string("verify --protocol simple-broken --instance ") + kNonMemberPath);
  CHECK(broken.exit_code == 1);
  CHECK(broken.out.find("false") != std::string::npos);

  // On a member the broken variant still holds.
  CliResult ok = run_cli(std::string("verify --protocol simple-broken --instance ") + kMemberPath);
  CHECK(ok.exit_code == 0);
}

TEST_CASE("verify emits json with exact rationals on request") {
  write_fixtures();
  CliResult json = run_cli(std::string("verify --protocol scoring --format json --instance ") +
                           kMemberPath);
  CHECK(json.exit_code == 0);
  CHECK(json.out.find("\"best_utility\": \"2/11\"") != std::string::npos);
  CHECK(json.out.find("\"best_wrong_utility\": \"3/22\"") != std::string::npos);
  CHECK(json.out.find("\"gap\": \"1/22\"") != std::string::npos);
  CHECK(json.out.find("\"cond1\": true") != std::string::npos);
  CHECK(json.out.find("\"cond2\": true") != std::string::npos);
  CHECK(json.out.find("\"all_conditions_hold\": true") != std::string::npos);
  CHECK(json.out.find("\"family\": \"scoring-committed\"") != std::string::npos);

  // Identical invocations produce identical bytes.
  CliResult again = run_cli(std::string("verify --protocol scoring --format json --instance ") +
                            kMemberPath);
  CHECK(again.out == json.out);
}

TEST_CASE("gap and sweep read out the utility structure") {
  write_fixtures();
  CliResult gap = run_cli(std::string("gap --protocol scoring --instance ") + kMemberPath);
  CHECK(gap.exit_code == 0);
  CHECK(gap.out.find("instance_id,protocol,best_utility,best_wrong_utility,gap,decision,intervals") !=
        std::string::npos);
  CHECK(gap.out.find(",scoring,2/11,3/22,1/22,1,0") != std::string::npos);

  CliResult sweep =
      run_cli(std::string("sweep --intervals 32 --protocol scoring --instance ") + kMemberPath);
  CHECK(sweep.exit_code == 0);
  CHECK(sweep.out.find(",scoring,2/11,none,none,1,32") != std::string::npos);

  // Too coarse a sweep cannot separate 2/11 from 3/22 (both fall in the
  // first of two intervals): the decision column says so instead of guessing.
  CliResult coarse =
      run_cli(std::string("sweep --intervals 2 --protocol scoring --instance ") + kMemberPath);
  CHECK(coarse.exit_code == 0);
  CHECK(coarse.out.find("ambiguous") != std::string::npos);

  CliResult sweep_json = run_cli(std::string("sweep --intervals 32 --format json ") +
                                 "--protocol scoring --instance " + kMemberPath);
  CHECK(sweep_json.exit_code == 0);
  CHECK(sweep_json.out.find("\"decision\": \"1\"") != std::string::npos);
  CHECK(sweep_json.out.find("\"min_spacing\": \"1/22\"") != std::string::npos);
}

TEST_CASE("circuit and three-level protocols run end to end") {
  CliResult circ = run_cli("gen circuit --inputs 2 --gates 6 --seed 3 --out cli_circuit.tmp");
  REQUIRE(circ.exit_code == 0);
  CliResult verify =
      run_cli("verify --protocol circuit --circuit cli_circuit.tmp --input 01");
  CHECK(verify.exit_code == 0);
  CHECK(verify.out.find(",expmrip,1/1,") != std::string::npos);

  // The alias spelling selects the same protocol.
  CliResult alias =
      run_cli("verify --protocol expmrip --circuit cli_circuit.tmp --input 01");
  CHECK(alias.exit_code == 0);
  std::remove("cli_circuit.tmp");

  CliResult tlc = run_cli("gen three-level --q 1 --seed 2 --out cli_tlc.tmp");
  REQUIRE(tlc.exit_code == 0);
  CliResult tlc_verify =
      run_cli("verify --protocol three-level --three-level cli_tlc.tmp --input 00");
  CHECK(tlc_verify.exit_code == 0);
  CHECK(tlc_verify.out.find(",expnexp,") != std::string::npos);
  std::remove("cli_tlc.tmp");
}

TEST_CASE("run exposes a single execution for debugging") {
  write_fixtures();
  CliResult run = run_cli(std::string("run --coin 0 --protocol scoring --family honest ") +
                          "--instance " + kMemberPath);
  CHECK(run.exit_code == 0);
  CHECK(run.out.find("protocol: scoring") != std::string::npos);
  CHECK(run.out.find("payment:") != std::string::npos);
  CHECK(run.out.find("claim:    1") != std::string::npos);

  CliResult json = run_cli(std::string("run --coin 5 --format json --protocol scoring ") +
                           "--family honest --instance " + kMemberPath);
  CHECK(json.exit_code == 0);
  CHECK(json.out.find("\"coin\": 5") != std::string::npos);
  CHECK(json.out.find("\"coin_weight\": \"1/24\"") != std::string::npos);
  CHECK(json.out.find("\"payment\":") != std::string::npos);

  CliResult bad_coin = run_cli(std::string("run --coin 999 --protocol scoring ") +
                               "--family honest --instance " + kMemberPath);
  CHECK(bad_coin.exit_code == 2);
  CHECK(bad_coin.err.find("out of range") != std::string::npos);
}

TEST_CASE("usage and runtime errors exit 2 with a message") {
  write_fixtures();
  CliResult no_sub = run_cli("");
  CHECK(no_sub.exit_code == 2);

  CliResult bad_sub = run_cli("frobnicate");
  CHECK(bad_sub.exit_code == 2);

  CliResult bad_protocol =
      run_cli(std::string("verify --protocol bogus --instance ") + kMemberPath);
  CHECK(bad_protocol.exit_code == 2);
  CHECK(bad_protocol.err.find("unknown protocol") != std::string::npos);

  CliResult no_input = run_cli("verify --protocol scoring");
  CHECK(no_input.exit_code == 2);
  CHECK(no_input.err.find("--instance") != std::string::npos);

  CliResult missing_intervals =
      run_cli(std::string("sweep --protocol scoring --instance ") + kMemberPath);
  CHECK(missing_intervals.exit_code == 2);

  CliResult missing_file = run_cli("verify --protocol scoring --instance does_not_exist.json");
  CHECK(missing_file.exit_code == 2);
  CHECK(missing_file.err.find("does_not_exist.json") != std::string::npos);

  CliResult bad_family =
      run_cli(std::string("verify --protocol scoring --family gate --instance ") + kMemberPath);
  CHECK(bad_family.exit_code == 2);

  CliResult help = run_cli("--help");
  CHECK(help.exit_code == 0);
  CHECK(help.out.find("verify") != std::string::npos);
}

TEST_CASE("the enumeration cap is honored end to end") {
  write_fixtures();
  // The committed family for this protocol has 12 profiles; a cap of 4 must
  // abort with a pointer at the knob that raises it.
  CliResult capped = run_cli(std::string("verify --protocol scoring --instance ") + kMemberPath,
                             "MRIP_MAX_ENUM=4");
  CHECK(capped.exit_code == 2);
  CHECK(capped.err.find("MRIP_MAX_ENUM") != std::string::npos);

  CliResult roomy = run_cli(std::string("verify --protocol scoring --instance ") + kMemberPath,
                            "MRIP_MAX_ENUM=64");
  CHECK(roomy.exit_code == 0);
}

int main(int argc, char** argv) {
  doctest::Context context;
  std::vector<char*> forwarded;
  const std::string prefix = "--mriplab=";
  for (int i = 0; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg.rfind(prefix, 0) == 0) {
      g_mriplab = arg.substr(prefix.size());
      continue;
    }
    forwarded.push_back(argv[i]);
  }
  if (g_mriplab.empty()) {
    std::cerr << "test_cli: pass --mriplab=<path to the mriplab binary>\n";
    return 1;
  }
  context.applyCommandLine(static_cast<int>(forwarded.size()), forwarded.data());
  return context.run();
}
