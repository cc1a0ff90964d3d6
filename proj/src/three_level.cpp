#include "mrip/three_level.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "mrip/instance_io.hpp"

namespace mrip {

std::string tlc_type_name(TlcType t) {
  switch (t) {
    case TlcType::INPUT: return "INPUT";
    case TlcType::AND: return "AND";
    case TlcType::OR: return "OR";
    case TlcType::NOT: return "NOT";
    case TlcType::NEXP: return "NEXP";
  }
  throw std::logic_error("unknown tlc gate type");
}

void ThreeLevelCircuit::validate(const DeskBounds& bounds) const {
  level1.validate();
  level3.validate();
  if (p < kBlockHeaderBits)
    throw std::invalid_argument("three-level: block width p too small to hold a header");
  if (q < 1 || q > 4)
    throw std::invalid_argument("three-level: q must be in 1..4 at desk scale");
  if (g1() < n() + p * q)
    throw std::invalid_argument("three-level: level 1 must contain output gates n+1..n+p*q");
  if (level3.n != n() + q)
    throw std::invalid_argument("three-level: level 3 input width must be n+q");
  if (g3() <= level3.n)
    throw std::invalid_argument("three-level: level 3 needs at least one non-input gate");
  (void)bounds;
}

TlcType ThreeLevelCircuit::type_of(int i) const {
  if (i < 1 || i > total_gates())
    throw std::out_of_range("three-level: gate id " + std::to_string(i) + " out of range");
  if (i <= g1()) {
    switch (level1.gates[i].type) {
      case GateType::INPUT: return TlcType::INPUT;
      case GateType::AND: return TlcType::AND;
      case GateType::OR: return TlcType::OR;
      case GateType::NOT: return TlcType::NOT;
    }
  }
  if (i <= g1() + q) return TlcType::NEXP;
  const int local = i - g1() - q;
  switch (level3.gates[local].type) {
    case GateType::INPUT: return TlcType::INPUT;
    case GateType::AND: return TlcType::AND;
    case GateType::OR: return TlcType::OR;
    case GateType::NOT: return TlcType::NOT;
  }
  throw std::logic_error("unreachable");
}

std::vector<int> ThreeLevelCircuit::inputs_of(int i) const {
  if (i < 1 || i > total_gates())
    throw std::out_of_range("three-level: gate id " + std::to_string(i) + " out of range");
  if (i <= g1()) return level1.gates[i].inputs;  // level-1 ids are composite ids
  if (i <= g1() + q) {
    // NEXP gate g+j reads block j of the level-1 outputs.
    const int j = i - g1();
    std::vector<int> in(p);
    for (int t = 0; t < p; ++t) in[t] = block_gate(j, t);
    return in;
  }
  const int local = i - g1() - q;
  if (local <= level3.n) {
    if (local <= n()) return {};            // copies bit x_local directly
    return {g1() + (local - n())};          // copies NEXP gate output
  }
  std::vector<int> in = level3.gates[local].inputs;
  for (int& src : in) src += g1() + q;      // lift level-3 local ids to composite
  return in;
}

int block_width_for(int max_clauses) {
  return kBlockHeaderBits + kBlockClauseBits * max_clauses;
}

namespace {

void put_bits(std::vector<std::uint8_t>& bits, int& pos, std::uint64_t value, int width) {
  for (int k = 0; k < width; ++k) bits[pos++] = static_cast<std::uint8_t>((value >> k) & 1);
}

std::uint64_t get_bits(const std::vector<std::uint8_t>& bits, int& pos, int width) {
  std::uint64_t value = 0;
  for (int k = 0; k < width; ++k) value |= std::uint64_t{bits[pos++]} << k;
  return value;
}

}  // namespace

std::vector<std::uint8_t> encode_block(const Oracle3SatInstance& instance, int p) {
  if (instance.r > 7 || instance.s > 3)
    throw std::invalid_argument("encode_block: r must fit 3 bits and s 2 bits");
  const int m = static_cast<int>(instance.clauses.size());
  if (m > 7) throw std::invalid_argument("encode_block: at most 7 clauses per block");
  if (p < kBlockHeaderBits + kBlockClauseBits * m)
    throw std::invalid_argument("encode_block: block width " + std::to_string(p) +
                                " too small for " + std::to_string(m) + " clauses");
  std::vector<std::uint8_t> bits(p, 0);
  int pos = 0;
  put_bits(bits, pos, static_cast<std::uint64_t>(instance.r), 3);
  put_bits(bits, pos, static_cast<std::uint64_t>(instance.s), 2);
  put_bits(bits, pos, static_cast<std::uint64_t>(m), 3);
  for (const auto& clause : instance.clauses) {
    for (int lit : clause) {
      put_bits(bits, pos, static_cast<std::uint64_t>(lit < 0 ? -lit : lit), 4);
      put_bits(bits, pos, lit < 0 ? 1 : 0, 1);
    }
  }
  return bits;
}

std::optional<Oracle3SatInstance> decode_block(const std::vector<std::uint8_t>& bits,
                                               const DeskBounds& bounds) {
  if (static_cast<int>(bits.size()) < kBlockHeaderBits) return std::nullopt;
  int pos = 0;
  Oracle3SatInstance instance;
  instance.r = static_cast<int>(get_bits(bits, pos, 3));
  instance.s = static_cast<int>(get_bits(bits, pos, 2));
  const int m = static_cast<int>(get_bits(bits, pos, 3));
  if (instance.num_w_vars() > bounds.max_r_plus_3s || instance.s > bounds.max_s)
    return std::nullopt;
  if (kBlockHeaderBits + kBlockClauseBits * m > static_cast<int>(bits.size()))
    return std::nullopt;
  for (int k = 0; k < m; ++k) {
    std::array<int, 3> clause{};
    for (int j = 0; j < 3; ++j) {
      const int var = static_cast<int>(get_bits(bits, pos, 4));
      const int neg = static_cast<int>(get_bits(bits, pos, 1));
      if (var < 1 || var > instance.num_vars()) return std::nullopt;
      clause[j] = neg ? -var : var;
    }
    instance.clauses.push_back(clause);
  }
  for (std::size_t k = pos; k < bits.size(); ++k)
    if (bits[k]) return std::nullopt;  // nonzero padding
  return instance;
}

ThreeLevelValue eval_three_level(const ThreeLevelCircuit& tlc,
                                 const std::vector<std::uint8_t>& x,
                                 const DeskBounds& bounds) {
  tlc.validate(bounds);
  if (static_cast<int>(x.size()) != tlc.n())
    throw std::invalid_argument("eval_three_level: wrong input width");

  ThreeLevelValue out;
  out.values.assign(tlc.total_gates() + 1, 0);

  const std::vector<std::uint8_t> v1 = eval_circuit(tlc.level1, x);
  for (int i = 1; i <= tlc.g1(); ++i) out.values[i] = v1[i];

  for (int j = 1; j <= tlc.q; ++j) {
    std::vector<std::uint8_t> block(tlc.p);
    for (int t = 0; t < tlc.p; ++t) block[t] = v1[tlc.block_gate(j, t)];
    const auto instance = decode_block(block, bounds);
    if (!instance)
      throw std::invalid_argument("eval_three_level: block " + std::to_string(j) +
                                  " does not decode to a valid instance");
    out.values[tlc.g1() + j] =
        static_cast<std::uint8_t>(decide_oracle3sat(*instance, bounds).member);
  }

  std::vector<std::uint8_t> x3(tlc.level3.n);
  for (int i = 0; i < tlc.n(); ++i) x3[i] = x[i];
  for (int j = 1; j <= tlc.q; ++j) x3[tlc.n() + j - 1] = out.values[tlc.g1() + j];
  const std::vector<std::uint8_t> v3 = eval_circuit(tlc.level3, x3);
  for (int i = 1; i <= tlc.g3(); ++i) out.values[tlc.g1() + tlc.q + i] = v3[i];

  out.final = out.values[tlc.output_gate()];
  return out;
}

ThreeLevelCircuit parse_three_level_json(const std::string& text, const std::string& origin) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    int line = 1;
    for (std::size_t i = 0; i < e.byte && i < text.size(); ++i)
      if (text[i] == '\n') ++line;
    throw ParseError(origin, line, e.what());
  }
  ThreeLevelCircuit tlc;
  try {
    tlc.p = doc.at("p").get<int>();
    tlc.q = doc.at("q").get<int>();
    tlc.level1 = parse_circuit_json(doc.at("level1").dump(), origin + "#level1");
    tlc.level3 = parse_circuit_json(doc.at("level3").dump(), origin + "#level3");
    tlc.validate();
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(origin, 1, e.what());
  }
  return tlc;
}

ThreeLevelCircuit load_three_level_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open three-level file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_three_level_json(buf.str(), path);
}

std::string three_level_to_json(const ThreeLevelCircuit& tlc) {
  std::ostringstream out;
  std::string l1 = circuit_to_json(tlc.level1);
  std::string l3 = circuit_to_json(tlc.level3);
  // Strip trailing newlines so the composite document stays tidy.
  while (!l1.empty() && l1.back() == '\n') l1.pop_back();
  while (!l3.empty() && l3.back() == '\n') l3.pop_back();
  out << "{\n\"p\": " << tlc.p << ",\n\"q\": " << tlc.q << ",\n\"level1\": " << l1
      << ",\n\"level3\": " << l3 << "\n}\n";
  return out.str();
}

}  // namespace mrip
