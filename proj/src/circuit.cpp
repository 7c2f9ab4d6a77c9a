#include "qdc/circuit.hpp"

#include <utility>

#include "serialize.hpp"

namespace qdc {

namespace {

void validate_gate(const Gate& g, int wires, std::size_t pos) {
  const std::string where = "Circuit: gate " + std::to_string(pos);
  for (int i = 0; i < g.arity(); ++i) {
    if (g.wires[i] < 0 || g.wires[i] >= wires) {
      throw std::invalid_argument(where + ": wire " + std::to_string(g.wires[i]) +
                                  " outside register of " + std::to_string(wires) +
                                  " wires");
    }
  }
  if (g.arity() == 2 && g.wires[0] == g.wires[1]) {
    throw std::invalid_argument(where + ": control and target must be distinct");
  }
}

}  // namespace

Circuit::Circuit(Dim dim, int wires) : Circuit(dim, wires, {}) {}

Circuit::Circuit(Dim dim, int wires, std::vector<Gate> gates)
    : dim_(dim), wires_(wires), gates_(std::move(gates)) {
  register_size(dim, wires);
  for (std::size_t i = 0; i < gates_.size(); ++i) {
    validate_gate(gates_[i], wires_, i);
  }
}

Circuit adjoint(const Circuit& c) {
  std::vector<Gate> gates(c.gates().rbegin(), c.gates().rend());
  for (Gate& g : gates) g = adjoint(g);
  return Circuit(c.dim(), c.wires(), std::move(gates));
}

StateVector run(const Circuit& c, const StateVector& input) {
  if (input.dim() != c.dim() || input.wires() != c.wires()) {
    throw std::invalid_argument("run: input register does not match circuit");
  }
  StateVector state = input;
  for (const Gate& g : c.gates()) {
    state = apply(state, g);
  }
  return state;
}

StateVector run(const Circuit& c, const BasisState& input) {
  return run(c, StateVector::basis(c.dim(), c.wires(), input));
}

Matrix unitary(const Circuit& c) {
  const std::size_t n = register_size(c.dim(), c.wires());
  Matrix m(n);
  for (std::size_t col = 0; col < n; ++col) {
    const StateVector out = run(c, BasisState::from_index(c.dim(), c.wires(), col));
    for (std::size_t row = 0; row < n; ++row) {
      m.at(row, col) = out.amplitudes()[row];
    }
  }
  return m;
}

namespace detail {

nlohmann::json circuit_json(const Circuit& c) {
  nlohmann::json gates = nlohmann::json::array();
  for (const Gate& g : c.gates()) {
    nlohmann::json wires = nlohmann::json::array();
    for (int i = 0; i < g.arity(); ++i) wires.push_back(g.wires[i]);
    gates.push_back({{"kind", std::string(kind_name(g.kind))},
                     {"wires", std::move(wires)},
                     {"dagger", g.dagger}});
  }
  return {{"d", c.dim().value()}, {"wires", c.wires()}, {"gates", std::move(gates)}};
}

namespace {

GateKind kind_from(const std::string& name, std::size_t pos) {
  for (GateKind k : {GateKind::H, GateKind::X, GateKind::Z, GateKind::CX, GateKind::CZ}) {
    if (name == kind_name(k)) return k;
  }
  throw std::invalid_argument("circuit_from_json: gates[" + std::to_string(pos) +
                              "]: unknown kind \"" + name + "\"");
}

}  // namespace

Circuit circuit_from(const nlohmann::json& j) {
  const Dim dim(j.at("d").get<int>());
  const int wires = j.at("wires").get<int>();
  std::vector<Gate> gates;
  const nlohmann::json& list = j.at("gates");
  if (!list.is_array()) {
    throw std::invalid_argument("circuit_from_json: \"gates\" must be an array");
  }
  for (std::size_t i = 0; i < list.size(); ++i) {
    const nlohmann::json& jg = list[i];
    const GateKind kind = kind_from(jg.at("kind").get<std::string>(), i);
    const std::vector<int> w = jg.at("wires").get<std::vector<int>>();
    if (static_cast<int>(w.size()) != arity(kind)) {
      throw std::invalid_argument("circuit_from_json: gates[" + std::to_string(i) +
                                  "]: kind " + std::string(kind_name(kind)) +
                                  " takes " + std::to_string(arity(kind)) +
                                  " wire(s), got " + std::to_string(w.size()));
    }
    const bool dagger = jg.value("dagger", false);
    switch (kind) {
      case GateKind::H: gates.push_back(Gate::h(w[0], dagger)); break;
      case GateKind::X: gates.push_back(Gate::x(w[0], dagger)); break;
      case GateKind::Z: gates.push_back(Gate::z(w[0], dagger)); break;
      case GateKind::CX: gates.push_back(Gate::cx(w[0], w[1], dagger)); break;
      case GateKind::CZ: gates.push_back(Gate::cz(w[0], w[1], dagger)); break;
    }
  }
  return Circuit(dim, wires, std::move(gates));
}

}  // namespace detail

std::string to_json(const Circuit& c) { return detail::circuit_json(c).dump(2); }

Circuit circuit_from_json(const std::string& text) {
  try {
    return detail::circuit_from(nlohmann::json::parse(text));
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("circuit_from_json: ") + e.what());
  }
}

namespace {

// Code points, not bytes; every glyph used here is single-width.
std::size_t display_width(const std::string& s) {
  std::size_t w = 0;
  for (unsigned char b : s) {
    if ((b & 0xC0) != 0x80) ++w;
  }
  return w;
}

}  // namespace

std::string render_ascii(const Circuit& c, bool unicode) {
  const int n = c.wires();
  const std::string wire = unicode ? "─" : "-";
  const std::string link = unicode ? "│" : "|";
  const std::string dot = unicode ? "●" : "*";
  const std::string plus = unicode ? "⊕" : "+";

  std::vector<std::string> rows(static_cast<std::size_t>(n));
  const std::size_t label_width = std::to_string(n - 1).size();
  for (int r = 0; r < n; ++r) {
    std::string label = std::to_string(r);
    rows[static_cast<std::size_t>(r)] =
        std::string(label_width - label.size(), ' ') + label + ": ";
  }

  auto pad = [&](const std::string& token, std::size_t width) {
    std::string cell = wire + token;
    for (std::size_t w = 1 + display_width(token); w < width; ++w) cell += wire;
    return cell;
  };

  if (c.empty()) {
    for (auto& row : rows) row += pad("", 4);
  }
  for (const Gate& g : c.gates()) {
    std::vector<std::string> tokens(static_cast<std::size_t>(n));
    if (g.arity() == 1) {
      tokens[static_cast<std::size_t>(g.wires[0])] =
          std::string(kind_name(g.kind)) + (g.dagger ? "'" : "");
    } else {
      const int lo = std::min(g.control(), g.target());
      const int hi = std::max(g.control(), g.target());
      for (int r = lo + 1; r < hi; ++r) tokens[static_cast<std::size_t>(r)] = link;
      tokens[static_cast<std::size_t>(g.control())] = dot;
      tokens[static_cast<std::size_t>(g.target())] =
          (g.kind == GateKind::CX ? plus : dot) + std::string(g.dagger ? "'" : "");
    }
    std::size_t width = 3;
    for (const std::string& t : tokens) width = std::max(width, display_width(t) + 2);
    for (int r = 0; r < n; ++r) {
      rows[static_cast<std::size_t>(r)] += pad(tokens[static_cast<std::size_t>(r)], width);
    }
  }

  std::string out;
  for (const std::string& row : rows) {
    out += row;
    out += '\n';
  }
  return out;
}

}  // namespace qdc
