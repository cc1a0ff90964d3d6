#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mrip {

enum class GateType { INPUT, AND, OR, NOT };

std::string gate_type_name(GateType t);
GateType gate_type_from_name(const std::string& name);

// One gate of an explicitly stored circuit. Gate ids are 1-based; gates 1..n
// are the INPUT gates and, for single-output circuits, gate g is the output.
//
// Wire numbering convention: the wire feeding slot l (0-based) of destination
// gate i has id 2*i - l, so slot 0 gets wire 2i and slot 1 gets wire 2i-1.
// That yields globally unique wire ids bounded by 2g. NOT gates use slot 0
// only; unused slots simply have no wire.
struct Gate {
  GateType type = GateType::INPUT;
  std::vector<int> inputs;  // source gate ids; size 0 (INPUT), 1 (NOT) or 2 (AND/OR)
};

// An explicit boolean circuit: n input gates followed by AND/OR/NOT gates,
// wiring acyclic. This is the "backing" object behind the DC query interface;
// desk scale makes explicit storage the simplest uniform representation.
// (A generator-program backing — a program that emits C_n per n — is an
// interface hook only; see DcOracle.)
struct Circuit {
  int n = 0;                // input width
  std::vector<Gate> gates;  // index 0 unused; gates[i] is gate i, i in 1..g

  int g() const { return static_cast<int>(gates.size()) - 1; }

  // Structural validation; cyclic wiring or malformed fan-in is rejected here,
  // at construction time, never during evaluation.
  void validate() const;

  // Wire id for (destination gate i, slot l), per the convention above.
  static int wire_id(int dest, int slot) { return 2 * dest - slot; }
};

// Evaluates a circuit on input x (x.size() == n): returns the full value table
// v, 1-based, with v[i] the output of gate i. Deterministic and independent of
// gate iteration order (values are forced by the DAG).
std::vector<std::uint8_t> eval_circuit(const Circuit& circuit,
                                       const std::vector<std::uint8_t>& x);

// The four Direct-Connect uniformity queries over a backing circuit.
// Everything a verifier may ask about circuit structure goes through this
// interface, mirroring how an exponential-size circuit would be accessed.
class DcOracle {
public:
  virtual ~DcOracle() = default;
  virtual int size() const = 0;                         // SIZE: gate count g
  virtual int type(int i, GateType t) const = 0;        // TYPE(i,t): 1 iff gate i has type t
  virtual int input_wire(int h, int i) const = 0;       // INPUT(h,i): 1 iff wire h enters gate i
  virtual int output_wire(int h, int i) const = 0;      // OUTPUT(h,i): 1 iff wire h leaves gate i
};

class CircuitDcOracle final : public DcOracle {
public:
  explicit CircuitDcOracle(const Circuit& backing);
  int size() const override;
  int type(int i, GateType t) const override;
  int input_wire(int h, int i) const override;
  int output_wire(int h, int i) const override;
  const Circuit& backing() const { return *backing_; }

private:
  const Circuit* backing_;
  void check_gate(int i) const;
  void check_wire(int h) const;
};

// Hook for DC oracles backed by a generator program rather than a stored
// circuit. Deliberately unimplemented: the lab only consumes the four queries,
// and every corpus circuit is explicit.
class GeneratorDcOracle {
public:
  [[noreturn]] explicit GeneratorDcOracle(const std::string& program);
};

// A tagged DC query, for callers that want the four queries behind one entry
// point (reports, the CLI `run` command).
struct DcQuery {
  enum class Kind { SIZE, TYPE, INPUT, OUTPUT } kind = Kind::SIZE;
  int i = 0;        // gate id (TYPE) or destination/source gate (INPUT/OUTPUT)
  int h = 0;        // wire id (INPUT/OUTPUT)
  GateType t = GateType::INPUT;  // queried type (TYPE only)
};

int dc_query(const DcOracle& oracle, const DcQuery& query);

// Circuit file format:
//   {"n": int, "gates": [{"type": "INPUT|AND|OR|NOT", "in": [ids]}, ...]}
// gates[k] describes gate k+1. Parse errors carry file:line.
Circuit parse_circuit_json(const std::string& text, const std::string& origin = "<string>");
Circuit load_circuit_file(const std::string& path);
std::string circuit_to_json(const Circuit& circuit);

}  // namespace mrip
