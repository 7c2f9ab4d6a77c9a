#include "qdc/equivalence.hpp"

#include <cmath>

#include "serialize.hpp"

namespace qdc {

std::string_view mode_name(EquivalenceMode mode) {
  switch (mode) {
    case EquivalenceMode::exact:
      return "exact";
    case EquivalenceMode::global_phase:
      return "global_phase";
    case EquivalenceMode::constrained:
      return "constrained";
    case EquivalenceMode::constrained_global_phase:
      return "constrained_global_phase";
  }
  throw std::invalid_argument("mode_name: unknown mode");
}

InputConstraint::InputConstraint(std::map<int, int> assignments)
    : assignments_(std::move(assignments)) {
  for (const auto& [wire, digit] : assignments_) {
    if (wire < 0 || digit < 0) {
      throw std::invalid_argument("InputConstraint: wire and digit must be non-negative");
    }
  }
}

namespace detail {

nlohmann::json report_json(const EquivalenceReport& r) {
  nlohmann::json witness;
  if (r.witness) witness = r.witness->digits;
  return {{"mode", std::string(mode_name(r.mode))},
          {"max_deviation", r.max_deviation},
          {"pass", r.pass},
          {"witness", std::move(witness)}};
}

}  // namespace detail

std::string to_json(const EquivalenceReport& r) {
  return detail::report_json(r).dump(2);
}

namespace {

void check_shapes(const Circuit& c1, const Circuit& c2) {
  if (c1.dim() != c2.dim() || c1.wires() != c2.wires()) {
    throw std::invalid_argument("equivalence: circuits must share dimension and wire count");
  }
}

// e^{i theta} with theta chosen so that phase * b points along a; unit
// magnitude even when the inputs are tiny, 1 when either vanishes.
Complex alignment_phase(Complex a, Complex b) {
  const Complex p = a * std::conj(b);
  const double mag = std::abs(p);
  if (mag == 0.0) return {1.0, 0.0};
  return p / mag;
}

// Largest-magnitude amplitude, ties broken by lowest index.
std::size_t argmax_abs(const std::vector<Complex>& amps) {
  std::size_t best = 0;
  double best_mag = std::abs(amps[0]);
  for (std::size_t i = 1; i < amps.size(); ++i) {
    const double mag = std::abs(amps[i]);
    if (mag > best_mag) {
      best = i;
      best_mag = mag;
    }
  }
  return best;
}

double max_abs_diff_scaled(const std::vector<Complex>& a,
                           const std::vector<Complex>& b, Complex scale) {
  double dev = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dev = std::max(dev, std::abs(a[i] - scale * b[i]));
  }
  return dev;
}

bool matches(const BasisState& input, const InputConstraint& constraint) {
  for (const auto& [wire, digit] : constraint.assignments()) {
    if (input.digits[static_cast<std::size_t>(wire)] != digit) return false;
  }
  return true;
}

}  // namespace

EquivalenceReport unitary_equal(const Circuit& c1, const Circuit& c2,
                                double tolerance, PhaseMode phase) {
  check_shapes(c1, c2);
  const std::size_t n = register_size(c1.dim(), c1.wires());

  Complex scale{1.0, 0.0};
  if (phase == PhaseMode::global_phase) {
    // Pass 1: the reference entry is the largest-magnitude entry of the
    // second circuit's matrix, scanned column by column.
    std::size_t ref_col = 0, ref_row = 0;
    double ref_mag = -1.0;
    Complex ref_val{};
    for (std::size_t col = 0; col < n; ++col) {
      const StateVector out = run(c2, BasisState::from_index(c2.dim(), c2.wires(), col));
      const std::size_t row = argmax_abs(out.amplitudes());
      const double mag = std::abs(out.amplitudes()[row]);
      if (mag > ref_mag) {
        ref_col = col;
        ref_row = row;
        ref_mag = mag;
        ref_val = out.amplitudes()[row];
      }
    }
    const StateVector ref_out =
        run(c1, BasisState::from_index(c1.dim(), c1.wires(), ref_col));
    scale = alignment_phase(ref_out.amplitudes()[ref_row], ref_val);
  }

  EquivalenceReport report;
  report.mode = phase == PhaseMode::exact ? EquivalenceMode::exact
                                          : EquivalenceMode::global_phase;
  for (std::size_t col = 0; col < n; ++col) {
    const BasisState input = BasisState::from_index(c1.dim(), c1.wires(), col);
    const StateVector s1 = run(c1, input);
    const StateVector s2 = run(c2, input);
    const double dev = max_abs_diff_scaled(s1.amplitudes(), s2.amplitudes(), scale);
    if (dev > tolerance && !report.witness) report.witness = input;
    report.max_deviation = std::max(report.max_deviation, dev);
  }
  report.pass = report.max_deviation <= tolerance;
  return report;
}

EquivalenceReport constrained_equal(const Circuit& c1, const Circuit& c2,
                                    const InputConstraint& constraint,
                                    double tolerance, PhaseMode phase) {
  check_shapes(c1, c2);
  for (const auto& [wire, digit] : constraint.assignments()) {
    if (wire >= c1.wires()) {
      throw std::invalid_argument("constrained_equal: constraint wire " +
                                  std::to_string(wire) + " outside register");
    }
    if (digit >= c1.dim().value()) {
      throw std::invalid_argument("constrained_equal: constraint digit " +
                                  std::to_string(digit) + " not below d");
    }
  }

  EquivalenceReport report;
  report.mode = phase == PhaseMode::exact ? EquivalenceMode::constrained
                                          : EquivalenceMode::constrained_global_phase;
  const std::size_t n = register_size(c1.dim(), c1.wires());
  for (std::size_t col = 0; col < n; ++col) {
    const BasisState input = BasisState::from_index(c1.dim(), c1.wires(), col);
    if (!matches(input, constraint)) continue;
    const StateVector s1 = run(c1, input);
    const StateVector s2 = run(c2, input);
    Complex scale{1.0, 0.0};
    if (phase == PhaseMode::global_phase) {
      const std::size_t ref = argmax_abs(s2.amplitudes());
      scale = alignment_phase(s1.amplitudes()[ref], s2.amplitudes()[ref]);
    }
    const double dev = max_abs_diff_scaled(s1.amplitudes(), s2.amplitudes(), scale);
    if (dev > tolerance && !report.witness) report.witness = input;
    report.max_deviation = std::max(report.max_deviation, dev);
  }
  report.pass = report.max_deviation <= tolerance;
  return report;
}

}  // namespace qdc
