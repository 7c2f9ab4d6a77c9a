#include "qdc/densecoding.hpp"

#include <cmath>

#include "json.hpp"
#include "qdc/equivalence.hpp"
#include "qdc/rewrite.hpp"

namespace qdc {

namespace {

void check_message(Dim dim, const Message& m) {
  if (m.x < 0 || m.x >= dim.value() || m.y < 0 || m.y >= dim.value()) {
    throw std::invalid_argument("Message: digits (" + std::to_string(m.x) + ", " +
                                std::to_string(m.y) + ") must lie in [0, " +
                                std::to_string(dim.value()) + ")");
  }
}

}  // namespace

StateVector bell_state(Dim dim) {
  const int d = dim.value();
  std::vector<Complex> amps(static_cast<std::size_t>(d) * d);
  const double diag = 1.0 / std::sqrt(static_cast<double>(d));
  for (int z = 0; z < d; ++z) {
    amps[static_cast<std::size_t>(z) * d + z] = diag;
  }
  return StateVector(dim, 2, std::move(amps));
}

std::vector<Gate> encode(Dim dim, const Message& m) {
  check_message(dim, m);
  std::vector<Gate> gates;
  for (int i = 0; i < m.y; ++i) gates.push_back(Gate::x(0, true));
  for (int i = 0; i < m.x; ++i) gates.push_back(Gate::z(0, true));
  return gates;
}

std::vector<StateVector> bell_basis(Dim dim) {
  const int d = dim.value();
  std::vector<StateVector> states;
  states.reserve(static_cast<std::size_t>(d) * d);
  for (int x = 0; x < d; ++x) {
    for (int y = 0; y < d; ++y) {
      StateVector s = bell_state(dim);
      for (const Gate& g : encode(dim, {x, y})) s = apply(s, g);
      states.push_back(std::move(s));
    }
  }
  return states;
}

ProtocolOutcome run_protocol(Dim dim, const Message& m) {
  check_message(dim, m);
  StateVector s = bell_state(dim);
  for (const Gate& g : encode(dim, m)) s = apply(s, g);
  s = apply(s, Gate::cx(0, 1, true));
  s = apply(s, Gate::h(0, true));

  std::size_t best = 0;
  double best_prob = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double p = std::norm(s.amplitudes()[i]);
    if (p > best_prob) {
      best = i;
      best_prob = p;
    }
  }
  const BasisState ket = BasisState::from_index(dim, 2, best);
  return {dim, m, {ket.digits[0], ket.digits[1]}, best_prob, std::move(s)};
}

std::string to_json(const ProtocolOutcome& o) {
  const nlohmann::json j = {{"d", o.dim.value()},
                            {"x", o.sent.x},
                            {"y", o.sent.y},
                            {"decoded_x", o.decoded.x},
                            {"decoded_y", o.decoded.y},
                            {"probability", o.probability}};
  return j.dump(2);
}

CrosscheckReport crosscheck_automated(Dim dim) {
  const int d = dim.value();
  const Circuit automated = deconstruction_stages(dim).back();
  CrosscheckReport report{dim, d * d, 0, 0.0, false, {}};
  for (int x = 0; x < d; ++x) {
    for (int y = 0; y < d; ++y) {
      const Message m{x, y};
      const StateVector out = run(automated, BasisState({x, y, 0, 0}));
      const StateVector expected =
          StateVector::basis(dim, 4, BasisState({x, y, x, y}));
      const ProtocolOutcome op = run_protocol(dim, m);
      const double dev = std::max(max_abs_diff(out, expected),
                                  std::abs(op.probability - 1.0));
      report.max_deviation = std::max(report.max_deviation, dev);
      if (dev <= kDefaultTolerance && op.decoded == m) {
        ++report.matched;
      } else {
        report.mismatches.push_back(m);
      }
    }
  }
  report.pass = report.matched == report.total;
  return report;
}

}  // namespace qdc
