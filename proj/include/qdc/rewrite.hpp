#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qdc/circuit.hpp"
#include "qdc/equivalence.hpp"

namespace qdc {

// R1-R4 preserve the full unitary; R5 preserves it only on inputs matching
// a declared constraint.  The engine verifies every application instead of
// trusting the rule.
enum class RuleId {
  R1_EXPAND_CX,
  R2_INSERT_PAIR,
  R3_COMMUTE,
  R4_SPLIT_SHARED_TARGET,
  R5_DROP_CONSTRAINED_IDENTITY,
};

std::string_view rule_name(RuleId rule);

// R1: replaces the undaggered cX at pos with [H(t), cZ'(c,t), H'(t)], the
// same coupling written through the Fourier gate.
Circuit expand_cx(const Circuit& c, std::size_t pos);

// R2: inserts [g, adjoint(g)] at pos; a no-op pair.
Circuit insert_pair(const Circuit& c, std::size_t pos, const Gate& g);

// R3: swaps gates[pos] and gates[pos+1] when one of the admitted criteria
// licenses it: (i) disjoint wire supports; (ii) one gate is diagonal
// (Z, cZ, or an adjoint) and touches the other only on the other's control
// wire; (iii) both are bit-rotation couplings with the same target and
// different controls (they add independent amounts to the same digit).
// Anything else is refused, even if the matrices happen to commute.
Circuit commute(const Circuit& c, std::size_t pos);

// R4: rewrites [cX(a->t), cX(b->t)] at pos into [cX(a->b), cX(b->t),
// cX'(a->b)]; the target still gains a+b while the controls end unaltered.
Circuit split_shared_target(const Circuit& c, std::size_t pos);

// R5: removes the bit-rotation coupling at pos after verifying, on the
// prefix circuits up to and including pos, that the removal preserves all
// outputs under the constraint.  Throws if the gate is not droppable.
Circuit drop_constrained_identity(const Circuit& c, std::size_t pos,
                                  const InputConstraint& constraint);

struct RewriteStep {
  RuleId rule;
  std::vector<std::size_t> positions;
  EquivalenceReport verification;
};

// Stages a-f of the deconstruction with the verified step between each
// consecutive pair.  Wires 0,1 are the message pair, wires 2,3 the pair
// that starts in |0,0>.
struct DeconstructionTrace {
  Dim dim;
  std::vector<Circuit> stages;
  std::vector<RewriteStep> steps;
};

// The six stages produced by the rule script, without the per-step
// equivalence reports.  Cheap; for consumers that only need a stage (the
// protocol crosscheck wants stage f).
std::vector<Circuit> deconstruction_stages(Dim dim);

// Runs the fixed rule script from the two-coupling circuit (stage a) to the
// dense-coding circuit (stage f), verifying every step: a->b through d->e
// by exact unitary equality, e->f by constrained equality under {wire 2: 0}.
// Throws with the failing report if any verification fails.
DeconstructionTrace deconstruct_pipeline(Dim dim);

std::string to_json(const DeconstructionTrace& t);

}  // namespace qdc
