#include "mrip/circuit.hpp"

#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "mrip/instance_io.hpp"

namespace mrip {

std::string gate_type_name(GateType t) {
  switch (t) {
    case GateType::INPUT: return "INPUT";
    case GateType::AND: return "AND";
    case GateType::OR: return "OR";
    case GateType::NOT: return "NOT";
  }
  throw std::logic_error("unknown gate type");
}

GateType gate_type_from_name(const std::string& name) {
  if (name == "INPUT") return GateType::INPUT;
  if (name == "AND") return GateType::AND;
  if (name == "OR") return GateType::OR;
  if (name == "NOT") return GateType::NOT;
  throw std::invalid_argument("unknown gate type: " + name);
}

void Circuit::validate() const {
  if (n < 0) throw std::invalid_argument("circuit: negative input width");
  if (g() < n) throw std::invalid_argument("circuit: fewer gates than inputs");
  for (int i = 1; i <= g(); ++i) {
    const Gate& gate = gates[i];
    const std::size_t want = gate.type == GateType::INPUT ? 0
                           : gate.type == GateType::NOT   ? 1
                                                          : 2;
    if (i <= n && gate.type != GateType::INPUT)
      throw std::invalid_argument("circuit: gate " + std::to_string(i) +
                                  " must be INPUT (gates 1..n are the inputs)");
    if (i > n && gate.type == GateType::INPUT)
      throw std::invalid_argument("circuit: gate " + std::to_string(i) +
                                  " may not be INPUT past position n");
    if (gate.inputs.size() != want)
      throw std::invalid_argument("circuit: gate " + std::to_string(i) + " (" +
                                  gate_type_name(gate.type) + ") needs " +
                                  std::to_string(want) + " inputs, has " +
                                  std::to_string(gate.inputs.size()));
    for (int src : gate.inputs)
      if (src < 1 || src > g())
        throw std::invalid_argument("circuit: gate " + std::to_string(i) +
                                    " wired to nonexistent gate " + std::to_string(src));
  }
  // Cycle check: DFS colors. Gate numbering need not be topological (a
  // three-level layout places output gates before their drivers), only acyclic.
  std::vector<int> color(gates.size(), 0);
  std::function<void(int)> visit = [&](int i) {
    if (color[i] == 1)
      throw std::invalid_argument("circuit: cyclic wiring through gate " + std::to_string(i));
    if (color[i] == 2) return;
    color[i] = 1;
    for (int src : gates[i].inputs) visit(src);
    color[i] = 2;
  };
  for (int i = 1; i <= g(); ++i) visit(i);
}

std::vector<std::uint8_t> eval_circuit(const Circuit& circuit,
                                       const std::vector<std::uint8_t>& x) {
  if (static_cast<int>(x.size()) != circuit.n)
    throw std::invalid_argument("eval_circuit: input width " + std::to_string(x.size()) +
                                " != n = " + std::to_string(circuit.n));
  std::vector<std::uint8_t> value(circuit.gates.size(), 0);
  std::vector<std::uint8_t> done(circuit.gates.size(), 0);
  std::function<std::uint8_t(int)> compute = [&](int i) -> std::uint8_t {
    if (done[i]) return value[i];
    const Gate& gate = circuit.gates[i];
    std::uint8_t v = 0;
    switch (gate.type) {
      case GateType::INPUT: v = x[i - 1]; break;
      case GateType::NOT: v = compute(gate.inputs[0]) ? 0 : 1; break;
      case GateType::AND: v = compute(gate.inputs[0]) & compute(gate.inputs[1]); break;
      case GateType::OR: v = compute(gate.inputs[0]) | compute(gate.inputs[1]); break;
    }
    done[i] = 1;
    value[i] = v;
    return v;
  };
  for (int i = 1; i <= circuit.g(); ++i) compute(i);
  return value;
}

CircuitDcOracle::CircuitDcOracle(const Circuit& backing) : backing_(&backing) {
  backing.validate();
}

int CircuitDcOracle::size() const { return backing_->g(); }

void CircuitDcOracle::check_gate(int i) const {
  if (i < 1 || i > backing_->g())
    throw std::out_of_range("dc query: gate id " + std::to_string(i) + " out of range 1.." +
                            std::to_string(backing_->g()));
}

void CircuitDcOracle::check_wire(int h) const {
  if (h < 1 || h > 2 * backing_->g())
    throw std::out_of_range("dc query: wire id " + std::to_string(h) + " out of range 1.." +
                            std::to_string(2 * backing_->g()));
}

int CircuitDcOracle::type(int i, GateType t) const {
  check_gate(i);
  return backing_->gates[i].type == t ? 1 : 0;
}

int CircuitDcOracle::input_wire(int h, int i) const {
  check_wire(h);
  check_gate(i);
  const Gate& gate = backing_->gates[i];
  for (int slot = 0; slot < static_cast<int>(gate.inputs.size()); ++slot)
    if (Circuit::wire_id(i, slot) == h) return 1;
  return 0;
}

int CircuitDcOracle::output_wire(int h, int i) const {
  check_wire(h);
  check_gate(i);
  // Wire h belongs to destination dest = ceil(h/2), slot = 2*dest - h; it
  // leaves gate i iff that slot of dest is wired to i.
  const int dest = (h + 1) / 2;
  const int slot = 2 * dest - h;
  if (dest > backing_->g()) return 0;
  const Gate& gate = backing_->gates[dest];
  return slot < static_cast<int>(gate.inputs.size()) && gate.inputs[slot] == i ? 1 : 0;
}

GeneratorDcOracle::GeneratorDcOracle(const std::string&) {
  throw std::logic_error(
      "GeneratorDcOracle: generator-program backings are not implemented; "
      "store the circuit explicitly");
}

int dc_query(const DcOracle& oracle, const DcQuery& query) {
  switch (query.kind) {
    case DcQuery::Kind::SIZE: return oracle.size();
    case DcQuery::Kind::TYPE: return oracle.type(query.i, query.t);
    case DcQuery::Kind::INPUT: return oracle.input_wire(query.h, query.i);
    case DcQuery::Kind::OUTPUT: return oracle.output_wire(query.h, query.i);
  }
  throw std::logic_error("unknown dc query kind");
}

Circuit parse_circuit_json(const std::string& text, const std::string& origin) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    int line = 1;
    for (std::size_t i = 0; i < e.byte && i < text.size(); ++i)
      if (text[i] == '\n') ++line;
    throw ParseError(origin, line, e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("gates"))
    throw ParseError(origin, 1, "circuit object must have fields n, gates");
  Circuit circuit;
  try {
    circuit.n = doc.at("n").get<int>();
    circuit.gates.resize(1);
    for (const auto& gj : doc.at("gates")) {
      Gate gate;
      gate.type = gate_type_from_name(gj.at("type").get<std::string>());
      if (gj.contains("in"))
        for (const auto& src : gj.at("in")) gate.inputs.push_back(src.get<int>());
      circuit.gates.push_back(std::move(gate));
    }
    circuit.validate();
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    // Mistyped fields, unknown gate names and structural violations all
    // surface as parse errors carrying the origin.
    throw ParseError(origin, 1, e.what());
  }
  return circuit;
}

Circuit load_circuit_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open circuit file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_circuit_json(buf.str(), path);
}

std::string circuit_to_json(const Circuit& circuit) {
  std::ostringstream out;
  out << "{\n  \"n\": " << circuit.n << ",\n  \"gates\": [";
  for (int i = 1; i <= circuit.g(); ++i) {
    const Gate& gate = circuit.gates[i];
    out << (i == 1 ? "\n" : ",\n") << "    {\"type\": \"" << gate_type_name(gate.type) << "\"";
    if (!gate.inputs.empty()) {
      out << ", \"in\": [";
      for (std::size_t k = 0; k < gate.inputs.size(); ++k)
        out << (k ? ", " : "") << gate.inputs[k];
      out << "]";
    }
    out << "}";
  }
  out << (circuit.g() == 0 ? "]" : "\n  ]") << "\n}\n";
  return out.str();
}

}  // namespace mrip
