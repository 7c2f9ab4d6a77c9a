#pragma once

#include <string>
#include <vector>

#include "qdc/core.hpp"

namespace qdc {

// An ordered gate list over a fixed register.  gates()[0] acts FIRST in
// time.  An operator product written on paper as A B C (rightmost factor
// applied first) is therefore the circuit [C, B, A].  Every identity check
// in this library relies on that one convention; it is stated here and
// nowhere else.
//
// Circuits are immutable after construction; rewrites build new circuits.
class Circuit {
 public:
  Circuit(Dim dim, int wires);
  Circuit(Dim dim, int wires, std::vector<Gate> gates);

  Dim dim() const { return dim_; }
  int wires() const { return wires_; }
  const std::vector<Gate>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }
  bool empty() const { return gates_.empty(); }

  friend bool operator==(const Circuit& a, const Circuit& b) = default;

 private:
  Dim dim_;
  int wires_;
  std::vector<Gate> gates_;
};

// Reversed gate order with every gate daggered; undoes the circuit.
Circuit adjoint(const Circuit& c);

StateVector run(const Circuit& c, const StateVector& input);
StateVector run(const Circuit& c, const BasisState& input);

// Full d^wires x d^wires matrix; column b equals run(c, b).  Meant for the
// small registers of the identity checks; large circuits are compared
// column by column instead (see unitary_equal).
Matrix unitary(const Circuit& c);

// Interchange format: {"d": int, "wires": int, "gates": [{"kind": "H"|"X"|
// "Z"|"CX"|"CZ", "wires": [t] or [c, t], "dagger": bool}, ...]}.
std::string to_json(const Circuit& c);
Circuit circuit_from_json(const std::string& text);

// One row per wire, time flowing left to right.  Controls render as a dot,
// bit-rotation targets as a crossed circle (or '+' in plain mode), daggered
// gates carry a trailing apostrophe.  Diagnostic output only; the JSON form
// above is the canonical one.
std::string render_ascii(const Circuit& c, bool unicode = true);

}  // namespace qdc
