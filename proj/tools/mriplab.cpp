// mriplab: generate instances/circuits, execute rational-proof experiments,
// and emit verification / gap / sweep reports.
//
// Exit codes: 0 = success (for `verify`: every row satisfies both defining
// conditions), 1 = a verify row failed a condition, 2 = usage/runtime error.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mrip/analysis.hpp"
#include "mrip/circuit.hpp"
#include "mrip/circuit_protocol.hpp"
#include "mrip/engine.hpp"
#include "mrip/generate.hpp"
#include "mrip/instance_io.hpp"
#include "mrip/oracle3sat.hpp"
#include "mrip/scoring_protocol.hpp"
#include "mrip/simple_protocol.hpp"
#include "mrip/three_level.hpp"
#include "mrip/three_level_protocol.hpp"
#include "mrip/wrappers.hpp"

namespace {

using nlohmann::ordered_json;

// ---- shared experiment options ----------------------------------------------

struct ExperimentFlags {
  std::string protocol = "scoring";
  std::string family;  // empty = protocol default
  std::vector<std::string> instance_paths;
  bool use_corpus = false;
  std::uint64_t corpus_seed = 1;
  std::string circuit_path;
  std::string three_level_path;
  std::string input_bits;
  std::string mip_variant = "exhaustive";
  std::uint64_t family_seed = 1;
  std::string format = "csv";
  std::string out_path;
};

void add_experiment_flags(CLI::App* cmd, ExperimentFlags& flags, bool with_format = true) {
  cmd->add_option("--protocol", flags.protocol,
                  "simple | simple-broken | scoring | circuit (alias expmrip) | "
                  "three-level (alias expnexp)")
      ->default_val("scoring");
  cmd->add_option("--family", flags.family,
                  "committed (instance protocols) | gate (circuit) | structured (three-level) | "
                  "honest");
  cmd->add_option("--instance", flags.instance_paths, "Oracle-3SAT instance file(s)");
  cmd->add_flag("--corpus", flags.use_corpus, "run over the built-in 52-instance corpus");
  cmd->add_option("--corpus-seed", flags.corpus_seed, "seed for the built-in corpus")
      ->default_val(1);
  cmd->add_option("--circuit", flags.circuit_path, "circuit file (protocol `circuit`)");
  cmd->add_option("--three-level", flags.three_level_path,
                  "three-level circuit file (protocol `three-level`)");
  cmd->add_option("--input", flags.input_bits, "input bits for circuit protocols, e.g. 10");
  cmd->add_option("--mip-variant", flags.mip_variant,
                  "simple protocol flavour: exhaustive | spot-check")
      ->default_val("exhaustive");
  cmd->add_option("--family-seed", flags.family_seed,
                  "seed of the structured three-level family")
      ->default_val(1);
  if (with_format) {
    cmd->add_option("--format", flags.format, "csv | json")->default_val("csv");
    cmd->add_option("--out", flags.out_path, "output path (default: stdout)");
  }
}

// One resolved experiment: a protocol, the family to exhaust, the ground
// truth to compare announcements against, and a size parameter for the gap
// classification.
struct Experiment {
  std::string id;
  std::shared_ptr<const mrip::Protocol> protocol;
  std::shared_ptr<const mrip::ProfileFamily> family;
  int true_bit = 0;
  int size_n = 0;
};

std::vector<std::uint8_t> parse_bits(const std::string& text, int want) {
  if (static_cast<int>(text.size()) != want)
    throw std::runtime_error("--input needs exactly " + std::to_string(want) + " bits, got '" +
                             text + "'");
  std::vector<std::uint8_t> bits;
  for (char c : text) {
    if (c != '0' && c != '1') throw std::runtime_error("--input must be a 0/1 string");
    bits.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return bits;
}

bool is_instance_protocol(const std::string& name) {
  return name == "simple" || name == "simple-broken" || name == "scoring";
}

Experiment make_instance_experiment(const ExperimentFlags& flags, const std::string& id,
                                    const mrip::Oracle3SatInstance& instance) {
  Experiment ex;
  ex.id = id;
  ex.true_bit = mrip::decide_oracle3sat(instance).member;
  ex.size_n = instance.num_vars();
  if (flags.protocol == "scoring") {
    ex.protocol = mrip::make_fig_scoring(instance);
  } else {
    mrip::SimpleOptions options;
    if (flags.mip_variant == "spot-check")
      options.variant = mrip::MipVariant::kSpotCheck;
    else if (flags.mip_variant != "exhaustive")
      throw std::runtime_error("unknown --mip-variant '" + flags.mip_variant + "'");
    options.broken_accept_all = flags.protocol == "simple-broken";
    ex.protocol = mrip::make_fig_simple(instance, options);
  }
  const std::string family = flags.family.empty() ? "committed" : flags.family;
  if (family == "committed") {
    ex.family = flags.protocol == "scoring"
                    ? std::shared_ptr<const mrip::ProfileFamily>(
                          mrip::make_scoring_committed_family(instance))
                    : std::shared_ptr<const mrip::ProfileFamily>(
                          mrip::make_simple_committed_family(instance));
  } else if (family == "honest") {
    std::shared_ptr<const mrip::StrategyProfile> honest;
    if (flags.protocol == "scoring") {
      honest = mrip::honest_scoring_profile(instance);
    } else {
      const mrip::DecideResult decision = mrip::decide_oracle3sat(instance);
      honest = std::make_shared<mrip::SimpleCommittedProfile>(decision.member, decision.witness);
    }
    ex.family = std::make_shared<mrip::ListedFamily>(
        "honest", std::vector<std::shared_ptr<const mrip::StrategyProfile>>{honest});
  } else {
    throw std::runtime_error("family '" + family + "' is not available for protocol '" +
                             flags.protocol + "' (use committed or honest)");
  }
  return ex;
}

std::vector<Experiment> resolve_experiments(const ExperimentFlags& flags) {
  std::vector<Experiment> out;
  if (is_instance_protocol(flags.protocol)) {
    if (flags.use_corpus) {
      for (const mrip::CorpusEntry& entry : mrip::standard_corpus(flags.corpus_seed))
        out.push_back(make_instance_experiment(flags, entry.id, entry.instance));
    }
    for (const std::string& path : flags.instance_paths)
      out.push_back(make_instance_experiment(flags, path, mrip::load_instance_file(path)));
    if (out.empty())
      throw std::runtime_error("protocol '" + flags.protocol +
                               "' needs --instance file(s) or --corpus");
  } else if (flags.protocol == "circuit" || flags.protocol == "expmrip") {
    if (flags.circuit_path.empty()) throw std::runtime_error("protocol 'circuit' needs --circuit");
    const mrip::Circuit circuit = mrip::load_circuit_file(flags.circuit_path);
    const std::vector<std::uint8_t> x = parse_bits(flags.input_bits, circuit.n);
    Experiment ex;
    ex.id = flags.circuit_path + ":" + flags.input_bits;
    ex.true_bit = mrip::eval_circuit(circuit, x)[circuit.g()];
    ex.size_n = circuit.g();
    ex.protocol = mrip::make_fig_expmrip(circuit, x);
    const std::string family = flags.family.empty() ? "gate" : flags.family;
    if (family == "gate") {
      ex.family = mrip::make_gate_value_family(circuit);
    } else if (family == "honest") {
      ex.family = std::make_shared<mrip::ListedFamily>(
          "honest", std::vector<std::shared_ptr<const mrip::StrategyProfile>>{
                        mrip::honest_gate_profile(circuit, x)});
    } else {
      throw std::runtime_error("family '" + family +
                               "' is not available for protocol 'circuit' (use gate or honest)");
    }
    out.push_back(std::move(ex));
  } else if (flags.protocol == "three-level" || flags.protocol == "expnexp") {
    if (flags.three_level_path.empty())
      throw std::runtime_error("protocol 'three-level' needs --three-level");
    const mrip::ThreeLevelCircuit tlc = mrip::load_three_level_file(flags.three_level_path);
    const std::vector<std::uint8_t> x = parse_bits(flags.input_bits, tlc.n());
    Experiment ex;
    ex.id = flags.three_level_path + ":" + flags.input_bits;
    ex.true_bit = mrip::eval_three_level(tlc, x).final;
    ex.size_n = tlc.total_gates();
    ex.protocol = mrip::make_fig_expnexp(tlc, x);
    const std::string family = flags.family.empty() ? "structured" : flags.family;
    if (family == "structured") {
      ex.family = mrip::make_three_level_family(tlc, x, flags.family_seed);
    } else if (family == "honest") {
      ex.family = std::make_shared<mrip::ListedFamily>(
          "honest", std::vector<std::shared_ptr<const mrip::StrategyProfile>>{
                        mrip::honest_three_level_profile(tlc, x)});
    } else {
      throw std::runtime_error(
          "family '" + family +
          "' is not available for protocol 'three-level' (use structured or honest)");
    }
    out.push_back(std::move(ex));
  } else {
    throw std::runtime_error("unknown protocol '" + flags.protocol + "'");
  }
  std::sort(out.begin(), out.end(),
            [](const Experiment& a, const Experiment& b) { return a.id < b.id; });
  return out;
}

// Provenance line embedded in every report so a row can be reproduced.
std::string config_line(const std::string& command, const ExperimentFlags& flags) {
  std::ostringstream os;
  os << "mriplab " << command << " protocol=" << flags.protocol;
  if (!flags.family.empty()) os << " family=" << flags.family;
  if (flags.use_corpus) os << " corpus-seed=" << flags.corpus_seed;
  for (const std::string& path : flags.instance_paths) os << " instance=" << path;
  if (!flags.circuit_path.empty()) os << " circuit=" << flags.circuit_path;
  if (!flags.three_level_path.empty())
    os << " three-level=" << flags.three_level_path << " family-seed=" << flags.family_seed;
  if (!flags.input_bits.empty()) os << " input=" << flags.input_bits;
  if (flags.protocol == "simple" || flags.protocol == "simple-broken")
    os << " mip-variant=" << flags.mip_variant;
  return os.str();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + out_path + "' for writing");
  out << text;
}

// ---- gen ---------------------------------------------------------------------

struct GenFlags {
  int r = 1, s = 1, clauses = 3;
  int membership = -1;
  int inputs = 2, gates = 6;
  int q = 1;
  std::uint64_t seed = 1;
  std::string out_path;
};

int run_gen_instance(const GenFlags& flags) {
  mrip::InstanceGenParams params;
  params.r = flags.r;
  params.s = flags.s;
  params.clauses = flags.clauses;
  params.seed = flags.seed;
  params.membership = flags.membership;
  emit(mrip::instance_to_json(mrip::generate_instance(params)), flags.out_path);
  return 0;
}

int run_gen_circuit(const GenFlags& flags) {
  emit(mrip::circuit_to_json(mrip::generate_circuit(flags.inputs, flags.gates, flags.seed)),
       flags.out_path);
  return 0;
}

int run_gen_three_level(const GenFlags& flags) {
  emit(mrip::three_level_to_json(mrip::generate_three_level(flags.q, flags.seed)),
       flags.out_path);
  return 0;
}

// ---- verify / gap / sweep ------------------------------------------------------

int run_verify(const ExperimentFlags& flags) {
  const std::vector<Experiment> experiments = resolve_experiments(flags);
  bool all_hold = true;
  std::ostringstream csv;
  ordered_json rows = ordered_json::array();
  csv << "# " << config_line("verify", flags) << "\n"
      << mrip::report_csv_header() << ",cond1,cond2,true_bit\n";
  for (const Experiment& ex : experiments) {
    const mrip::MripReport report = mrip::check_mrip(*ex.protocol, *ex.family, ex.true_bit);
    const mrip::GapReport gap =
        mrip::utility_gap(*ex.protocol, *ex.family, ex.true_bit, ex.id, ex.size_n);
    all_hold = all_hold && report.holds();
    csv << mrip::to_csv_row(gap) << "," << (report.cond1 ? "true" : "false") << ","
        << (report.cond2 ? "true" : "false") << "," << ex.true_bit << "\n";
    ordered_json row;
    row["instance_id"] = ex.id;
    row["protocol"] = ex.protocol->name();
    row["family"] = ex.family->name();
    row["best_utility"] = gap.best_utility.str();
    row["best_wrong_utility"] = gap.has_wrong ? gap.best_wrong_utility.str() : "none";
    row["gap"] = gap.has_wrong ? gap.gap.str() : "none";
    row["alpha_class"] = gap.alpha_class;
    row["decision"] = gap.decided ? std::to_string(gap.decision) : "withheld";
    row["cond1"] = report.cond1;
    row["cond2"] = report.cond2;
    row["true_bit"] = ex.true_bit;
    row["maximizers"] = report.maximizers.size();
    rows.push_back(std::move(row));
  }
  if (flags.format == "json") {
    ordered_json doc;
    doc["config"] = config_line("verify", flags);
    doc["rows"] = std::move(rows);
    doc["all_conditions_hold"] = all_hold;
    emit(doc.dump(2) + "\n", flags.out_path);
  } else if (flags.format == "csv") {
    emit(csv.str(), flags.out_path);
  } else {
    throw std::runtime_error("unknown --format '" + flags.format + "'");
  }
  return all_hold ? 0 : 1;
}

int run_gap(const ExperimentFlags& flags) {
  const std::vector<Experiment> experiments = resolve_experiments(flags);
  std::ostringstream csv;
  ordered_json rows = ordered_json::array();
  csv << "# " << config_line("gap", flags) << "\n" << mrip::report_csv_header() << "\n";
  for (const Experiment& ex : experiments) {
    const mrip::GapReport gap =
        mrip::utility_gap(*ex.protocol, *ex.family, ex.true_bit, ex.id, ex.size_n);
    csv << mrip::to_csv_row(gap) << "\n";
    ordered_json row;
    row["instance_id"] = ex.id;
    row["protocol"] = ex.protocol->name();
    row["best_utility"] = gap.best_utility.str();
    row["best_wrong_utility"] = gap.has_wrong ? gap.best_wrong_utility.str() : "none";
    row["gap"] = gap.has_wrong ? gap.gap.str() : "none";
    row["alpha_class"] = gap.alpha_class;
    row["decision"] = gap.decided ? std::to_string(gap.decision) : "withheld";
    rows.push_back(std::move(row));
  }
  if (flags.format == "json") {
    ordered_json doc;
    doc["config"] = config_line("gap", flags);
    doc["rows"] = std::move(rows);
    emit(doc.dump(2) + "\n", flags.out_path);
  } else if (flags.format == "csv") {
    emit(csv.str(), flags.out_path);
  } else {
    throw std::runtime_error("unknown --format '" + flags.format + "'");
  }
  return 0;
}

int run_sweep(const ExperimentFlags& flags, int intervals) {
  const std::vector<Experiment> experiments = resolve_experiments(flags);
  std::ostringstream csv;
  ordered_json rows = ordered_json::array();
  csv << "# " << config_line("sweep", flags) << " intervals=" << intervals << "\n"
      << mrip::report_csv_header() << "\n";
  for (const Experiment& ex : experiments) {
    const mrip::SweepReport report =
        mrip::interval_sweep(*ex.protocol, *ex.family, intervals, ex.id);
    csv << mrip::to_csv_row(report) << "\n";
    ordered_json row;
    row["instance_id"] = ex.id;
    row["protocol"] = ex.protocol->name();
    row["best_utility"] = report.best_utility.str();
    row["top_interval"] = report.top_interval;
    row["decision"] = report.negative_only ? "violation"
                      : report.ambiguous   ? "ambiguous"
                                           : std::to_string(report.decision);
    row["min_spacing"] = report.has_spacing ? report.min_spacing.str() : "none";
    row["intervals"] = report.num_intervals;
    if (!report.note.empty()) row["note"] = report.note;
    rows.push_back(std::move(row));
  }
  if (flags.format == "json") {
    ordered_json doc;
    doc["config"] = config_line("sweep", flags) + " intervals=" + std::to_string(intervals);
    doc["rows"] = std::move(rows);
    emit(doc.dump(2) + "\n", flags.out_path);
  } else if (flags.format == "csv") {
    emit(csv.str(), flags.out_path);
  } else {
    throw std::runtime_error("unknown --format '" + flags.format + "'");
  }
  return 0;
}

// ---- run (single execution, for debugging) ------------------------------------

int run_single(const ExperimentFlags& flags, std::uint64_t coin, std::uint64_t index) {
  const std::vector<Experiment> experiments = resolve_experiments(flags);
  if (experiments.size() != 1)
    throw std::runtime_error("`run` needs exactly one experiment target, got " +
                             std::to_string(experiments.size()));
  const Experiment& ex = experiments.front();
  if (coin >= ex.protocol->coin_count())
    throw std::runtime_error("coin " + std::to_string(coin) + " out of range (protocol has " +
                             std::to_string(ex.protocol->coin_count()) + " coins)");
  if (index >= ex.family->size())
    throw std::runtime_error("profile index " + std::to_string(index) +
                             " out of range (family has " + std::to_string(ex.family->size()) +
                             " profiles)");
  const auto profile = ex.family->make(index);
  const mrip::ProtocolOutcome outcome = mrip::run_protocol(*ex.protocol, *profile, coin);
  if (flags.format == "json") {
    ordered_json doc;
    doc["config"] = config_line("run", flags);
    doc["protocol"] = ex.protocol->name();
    doc["profile"] = profile->descriptor();
    doc["coin"] = coin;
    doc["coin_weight"] = ex.protocol->coin_weight(coin).str();
    doc["payment"] = outcome.payment.str();
    doc["claim"] = outcome.claim;
    doc["transcript"] = mrip::transcript_to_string(outcome.transcript);
    emit(doc.dump(2) + "\n", flags.out_path);
  } else {
    std::ostringstream os;
    os << "# " << config_line("run", flags) << "\n"
       << "protocol: " << ex.protocol->name() << "\n"
       << "profile:  " << profile->descriptor() << "\n"
       << "coin:     " << coin << " (weight " << ex.protocol->coin_weight(coin).str() << ")\n"
       << mrip::transcript_to_string(outcome.transcript) << "payment:  " << outcome.payment.str()
       << "\n"
       << "claim:    " << outcome.claim << "\n";
    emit(os.str(), flags.out_path);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"desk-scale laboratory for rational multi-prover proofs"};
  app.require_subcommand(1);

  GenFlags gen_flags;
  CLI::App* gen = app.add_subcommand("gen", "generate instances and circuits deterministically");
  gen->require_subcommand(1);
  CLI::App* gen_instance = gen->add_subcommand("instance", "random Oracle-3SAT instance");
  gen_instance->add_option("--r", gen_flags.r, "z-variable count")->default_val(1);
  gen_instance->add_option("--s", gen_flags.s, "oracle query width")->default_val(1);
  gen_instance->add_option("--clauses", gen_flags.clauses, "clause count")->default_val(3);
  gen_instance->add_option("--membership", gen_flags.membership,
                           "-1 = either, 0 = non-member, 1 = member")
      ->default_val(-1);
  CLI::App* gen_circuit = gen->add_subcommand("circuit", "random boolean circuit");
  gen_circuit->add_option("--inputs", gen_flags.inputs, "input count")->default_val(2);
  gen_circuit->add_option("--gates", gen_flags.gates, "total gate count")->default_val(6);
  CLI::App* gen_tlc = gen->add_subcommand("three-level", "three-level circuit with NEXP gates");
  gen_tlc->add_option("--q", gen_flags.q, "NEXP gate count (1..4)")->default_val(1);
  for (CLI::App* sub : {gen_instance, gen_circuit, gen_tlc}) {
    sub->add_option("--seed", gen_flags.seed, "generation seed")->default_val(1);
    sub->add_option("--out", gen_flags.out_path, "output path (default: stdout)");
  }

  ExperimentFlags verify_flags, gap_flags, sweep_flags, run_flags;
  CLI::App* verify = app.add_subcommand(
      "verify", "check both defining conditions and report utility gaps; exit 0 iff all hold");
  add_experiment_flags(verify, verify_flags);
  CLI::App* gap = app.add_subcommand("gap", "report utility gaps");
  add_experiment_flags(gap, gap_flags);
  int intervals = 16;
  CLI::App* sweep = app.add_subcommand("sweep", "payment-interval sweep");
  add_experiment_flags(sweep, sweep_flags);
  sweep->add_option("--intervals", intervals, "number of payment intervals")
      ->required()
      ->check(CLI::PositiveNumber);
  std::uint64_t run_coin = 0, run_index = 0;
  CLI::App* run = app.add_subcommand("run", "execute one protocol run with an explicit coin");
  add_experiment_flags(run, run_flags);
  run->add_option("--coin", run_coin, "coin index")->required();
  run->add_option("--index", run_index, "profile index within the family")->default_val(0);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Normalize every usage failure to exit code 2; help/version stay 0.
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (gen_instance->parsed()) return run_gen_instance(gen_flags);
    if (gen_circuit->parsed()) return run_gen_circuit(gen_flags);
    if (gen_tlc->parsed()) return run_gen_three_level(gen_flags);
    if (verify->parsed()) return run_verify(verify_flags);
    if (gap->parsed()) return run_gap(gap_flags);
    if (sweep->parsed()) return run_sweep(sweep_flags, intervals);
    if (run->parsed()) return run_single(run_flags, run_coin, run_index);
  } catch (const std::exception& e) {
    std::cerr << "mriplab: " << e.what() << "\n";
    return 2;
  }
  return 2;  // unreachable: a subcommand is required
}
