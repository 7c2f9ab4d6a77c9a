#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "qdc/circuit.hpp"

namespace qdc {

// Loose enough for any sane kernel over <= 10 gates on <= 65536 amplitudes,
// tight enough that a sign or convention error (which produces O(1)
// deviations) can never slip through.
inline constexpr double kDefaultTolerance = 1e-9;

// exact demands entry-wise equality; global_phase allows one overall unit
// factor, aligned on the largest-magnitude entry of the second operand
// (ties broken by lowest index, so reports are deterministic).
enum class PhaseMode { exact, global_phase };

enum class EquivalenceMode { exact, global_phase, constrained, constrained_global_phase };

std::string_view mode_name(EquivalenceMode mode);

// Wires pinned to fixed digits on the input side of a comparison.
class InputConstraint {
 public:
  InputConstraint() = default;
  explicit InputConstraint(std::map<int, int> assignments);

  const std::map<int, int>& assignments() const { return assignments_; }
  bool empty() const { return assignments_.empty(); }

  friend bool operator==(const InputConstraint& a, const InputConstraint& b) = default;

 private:
  std::map<int, int> assignments_;
};

struct EquivalenceReport {
  EquivalenceMode mode = EquivalenceMode::exact;
  double max_deviation = 0.0;
  bool pass = false;
  // Lowest-index basis input on which the circuits disagree; present iff
  // the check failed.
  std::optional<BasisState> witness;
};

std::string to_json(const EquivalenceReport& r);

// Compares the two circuits as operators, column by column, without
// materializing either matrix.
EquivalenceReport unitary_equal(const Circuit& c1, const Circuit& c2,
                                double tolerance = kDefaultTolerance,
                                PhaseMode phase = PhaseMode::exact);

// Compares the circuits on every basis input whose constrained wires hold
// the pinned digits.  In global_phase mode the phase is aligned per input.
// With an empty constraint this agrees with unitary_equal on pass/fail.
EquivalenceReport constrained_equal(const Circuit& c1, const Circuit& c2,
                                    const InputConstraint& constraint,
                                    double tolerance = kDefaultTolerance,
                                    PhaseMode phase = PhaseMode::exact);

}  // namespace qdc
