#pragma once

#include <string>
#include <vector>

#include "qdc/core.hpp"
#include "qdc/circuit.hpp"

namespace qdc {

// Two classical digits to transmit: x drives phase gates, y drives bit
// rotations.  Wire 0 of the automated circuit controls the phases, wire 1
// the rotations.
struct Message {
  int x = 0;
  int y = 0;

  friend bool operator==(Message a, Message b) = default;
};

struct ProtocolOutcome {
  Dim dim;
  Message sent;
  Message decoded;
  double probability = 0.0;
  StateVector final_state;
};

std::string to_json(const ProtocolOutcome& o);

// (1/sqrt(d)) sum_z |z,z> on a two-wire register; identical to running
// [H(0), cX(0->1)] on |0,0>.
StateVector bell_state(Dim dim);

// The local operations Alice applies to her half of the pair: y daggered
// bit rotations followed by x daggered phase gates on wire 0.  This is the
// classically-controlled unrolling of the automated circuit's two middle
// gates; at d=2 the daggers are immaterial.
std::vector<Gate> encode(Dim dim, const Message& m);

// The d*d mutually orthogonal two-wire states reachable from the entangled
// pair by local encoding; entry x*d + y is encode(d, {x,y}) applied to
// bell_state(d).
std::vector<StateVector> bell_basis(Dim dim);

// Prepare the pair, encode on wire 0, then decode with cX'(0->1) and H'(0).
// The final state is |x>|y> with probability 1; anything else is reported
// as found.
ProtocolOutcome run_protocol(Dim dim, const Message& m);

struct CrosscheckReport {
  Dim dim;
  int total = 0;
  int matched = 0;
  double max_deviation = 0.0;
  bool pass = false;
  std::vector<Message> mismatches;
};

// For every message, the four-wire automated circuit on |x,y,0,0> must land
// on |x,y,x,y> and the operational runner must decode the same digits.
CrosscheckReport crosscheck_automated(Dim dim);

}  // namespace qdc
