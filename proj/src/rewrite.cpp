#include "qdc/rewrite.hpp"

#include <algorithm>
#include <utility>

#include "serialize.hpp"

namespace qdc {

std::string_view rule_name(RuleId rule) {
  switch (rule) {
    case RuleId::R1_EXPAND_CX:
      return "R1_EXPAND_CX";
    case RuleId::R2_INSERT_PAIR:
      return "R2_INSERT_PAIR";
    case RuleId::R3_COMMUTE:
      return "R3_COMMUTE";
    case RuleId::R4_SPLIT_SHARED_TARGET:
      return "R4_SPLIT_SHARED_TARGET";
    case RuleId::R5_DROP_CONSTRAINED_IDENTITY:
      return "R5_DROP_CONSTRAINED_IDENTITY";
  }
  throw std::invalid_argument("rule_name: unknown rule");
}

namespace {

const Gate& gate_at(const Circuit& c, std::size_t pos, const char* rule) {
  if (pos >= c.size()) {
    throw std::out_of_range(std::string(rule) + ": position " + std::to_string(pos) +
                            " outside circuit of " + std::to_string(c.size()) +
                            " gates");
  }
  return c.gates()[pos];
}

bool overlaps(const Gate& a, const Gate& b) {
  for (int i = 0; i < a.arity(); ++i) {
    for (int j = 0; j < b.arity(); ++j) {
      if (a.wires[i] == b.wires[j]) return true;
    }
  }
  return false;
}

bool is_diagonal(GateKind kind) { return kind == GateKind::Z || kind == GateKind::CZ; }

// Criterion (ii): diag touches other only on other's control wire.
bool diagonal_on_control(const Gate& diag, const Gate& other) {
  if (!is_diagonal(diag.kind) || other.arity() != 2) return false;
  for (int i = 0; i < diag.arity(); ++i) {
    for (int j = 0; j < other.arity(); ++j) {
      if (diag.wires[i] == other.wires[j] && other.wires[j] != other.control()) {
        return false;
      }
    }
  }
  return true;
}

// Criterion (iii): two bit-rotation couplings into the same target add
// independent control digits, so their order is immaterial.
bool independent_rotations(const Gate& a, const Gate& b) {
  return a.kind == GateKind::CX && b.kind == GateKind::CX &&
         a.target() == b.target() && a.control() != b.control();
}

}  // namespace

Circuit expand_cx(const Circuit& c, std::size_t pos) {
  const Gate& g = gate_at(c, pos, "expand_cx");
  if (g.kind != GateKind::CX || g.dagger) {
    throw std::invalid_argument("expand_cx: gate at position " + std::to_string(pos) +
                                " is not an undaggered CX");
  }
  std::vector<Gate> gates = c.gates();
  const int control = g.control();
  const int target = g.target();
  gates[pos] = Gate::h(target);
  gates.insert(gates.begin() + static_cast<std::ptrdiff_t>(pos) + 1,
               {Gate::cz(control, target, true), Gate::h(target, true)});
  return Circuit(c.dim(), c.wires(), std::move(gates));
}

Circuit insert_pair(const Circuit& c, std::size_t pos, const Gate& g) {
  if (pos > c.size()) {
    throw std::out_of_range("insert_pair: position " + std::to_string(pos) +
                            " outside circuit of " + std::to_string(c.size()) +
                            " gates");
  }
  std::vector<Gate> gates = c.gates();
  gates.insert(gates.begin() + static_cast<std::ptrdiff_t>(pos), {g, adjoint(g)});
  return Circuit(c.dim(), c.wires(), std::move(gates));
}

Circuit commute(const Circuit& c, std::size_t pos) {
  const Gate& a = gate_at(c, pos, "commute");
  const Gate& b = gate_at(c, pos + 1, "commute");
  const bool licensed = !overlaps(a, b) || diagonal_on_control(a, b) ||
                        diagonal_on_control(b, a) || independent_rotations(a, b);
  if (!licensed) {
    throw std::invalid_argument("commute: no admitted criterion licenses swapping " +
                                std::string(kind_name(a.kind)) + " at position " +
                                std::to_string(pos) + " with " +
                                std::string(kind_name(b.kind)));
  }
  std::vector<Gate> gates = c.gates();
  std::swap(gates[pos], gates[pos + 1]);
  return Circuit(c.dim(), c.wires(), std::move(gates));
}

Circuit split_shared_target(const Circuit& c, std::size_t pos) {
  const Gate& first = gate_at(c, pos, "split_shared_target");
  const Gate& second = gate_at(c, pos + 1, "split_shared_target");
  const bool pattern = first.kind == GateKind::CX && second.kind == GateKind::CX &&
                       !first.dagger && !second.dagger &&
                       first.target() == second.target() &&
                       first.control() != second.control();
  if (!pattern) {
    throw std::invalid_argument(
        "split_shared_target: positions " + std::to_string(pos) + "," +
        std::to_string(pos + 1) +
        " are not two undaggered CX gates sharing a target");
  }
  const int a = first.control();
  const int b = second.control();
  const int t = first.target();
  std::vector<Gate> gates = c.gates();
  gates[pos] = Gate::cx(a, b);
  gates[pos + 1] = Gate::cx(b, t);
  gates.insert(gates.begin() + static_cast<std::ptrdiff_t>(pos) + 2,
               Gate::cx(a, b, true));
  return Circuit(c.dim(), c.wires(), std::move(gates));
}

Circuit drop_constrained_identity(const Circuit& c, std::size_t pos,
                                  const InputConstraint& constraint) {
  const Gate& g = gate_at(c, pos, "drop_constrained_identity");
  if (g.kind != GateKind::CX) {
    throw std::invalid_argument(
        "drop_constrained_identity: gate at position " + std::to_string(pos) +
        " is not a bit-rotation coupling");
  }
  // If the prefixes agree on the constrained inputs, the suffix (a fixed
  // unitary) cannot reintroduce a difference.
  const std::vector<Gate>& gates = c.gates();
  const auto split = gates.begin() + static_cast<std::ptrdiff_t>(pos);
  Circuit with(c.dim(), c.wires(), std::vector<Gate>(gates.begin(), split + 1));
  Circuit without(c.dim(), c.wires(), std::vector<Gate>(gates.begin(), split));
  const EquivalenceReport check = constrained_equal(with, without, constraint);
  if (!check.pass) {
    throw std::runtime_error(
        "drop_constrained_identity: gate at position " + std::to_string(pos) +
        " is not droppable under the constraint (max deviation " +
        std::to_string(check.max_deviation) + ")");
  }
  std::vector<Gate> result = gates;
  result.erase(result.begin() + static_cast<std::ptrdiff_t>(pos));
  return Circuit(c.dim(), c.wires(), std::move(result));
}

std::vector<Circuit> deconstruction_stages(Dim dim) {
  const Circuit a(dim, 4, {Gate::cx(0, 2), Gate::cx(1, 3)});
  const Circuit b = expand_cx(a, 0);
  const Circuit c = insert_pair(b, 1, Gate::cx(2, 3));
  Circuit d = c;
  for (std::size_t pos : {4, 3, 2, 1, 3}) d = commute(d, pos);
  const Circuit e = split_shared_target(d, 1);
  const Circuit f =
      drop_constrained_identity(e, 1, InputConstraint(std::map<int, int>{{2, 0}}));
  return {a, b, c, std::move(d), e, f};
}

DeconstructionTrace deconstruct_pipeline(Dim dim) {
  std::vector<Circuit> stages = deconstruction_stages(dim);
  std::vector<RewriteStep> steps;
  steps.push_back({RuleId::R1_EXPAND_CX, {0}, unitary_equal(stages[0], stages[1])});
  steps.push_back({RuleId::R2_INSERT_PAIR, {1}, unitary_equal(stages[1], stages[2])});
  steps.push_back(
      {RuleId::R3_COMMUTE, {4, 3, 2, 1, 3}, unitary_equal(stages[2], stages[3])});
  steps.push_back(
      {RuleId::R4_SPLIT_SHARED_TARGET, {1}, unitary_equal(stages[3], stages[4])});
  steps.push_back({RuleId::R5_DROP_CONSTRAINED_IDENTITY,
                   {1},
                   constrained_equal(stages[4], stages[5],
                                     InputConstraint(std::map<int, int>{{2, 0}}))});
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (!steps[i].verification.pass) {
      throw std::runtime_error("deconstruct_pipeline: step " + std::to_string(i) +
                               " (" + std::string(rule_name(steps[i].rule)) +
                               ") failed verification: " +
                               to_json(steps[i].verification));
    }
  }
  return {dim, std::move(stages), std::move(steps)};
}

std::string to_json(const DeconstructionTrace& t) {
  nlohmann::json stages = nlohmann::json::array();
  for (const Circuit& c : t.stages) stages.push_back(detail::circuit_json(c));
  nlohmann::json steps = nlohmann::json::array();
  for (const RewriteStep& s : t.steps) {
    steps.push_back({{"rule", std::string(rule_name(s.rule))},
                     {"positions", s.positions},
                     {"report", detail::report_json(s.verification)}});
  }
  const nlohmann::json j = {
      {"d", t.dim.value()}, {"stages", std::move(stages)}, {"steps", std::move(steps)}};
  return j.dump(2);
}

}  // namespace qdc
