#include "qdc/core.hpp"

#include <cmath>
#include <numbers>

namespace qdc {

std::size_t register_size(Dim dim, int wires) {
  if (wires < 1) {
    throw std::invalid_argument("register_size: wire count must be >= 1");
  }
  std::size_t n = 1;
  for (int i = 0; i < wires; ++i) {
    n *= static_cast<std::size_t>(dim.value());
    if (n > kMaxRegisterSize) {
      throw std::invalid_argument("register_size: d^wires exceeds " +
                                  std::to_string(kMaxRegisterSize));
    }
  }
  return n;
}

Complex root_of_unity(Dim dim, long long k) {
  const long long d = dim.value();
  const long long r = ((k % d) + d) % d;
  if (r == 0) return {1.0, 0.0};
  if (2 * r == d) return {-1.0, 0.0};
  if (4 * r == d) return {0.0, 1.0};
  if (4 * r == 3 * d) return {0.0, -1.0};
  const double angle =
      2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(d);
  return {std::cos(angle), std::sin(angle)};
}

int arity(GateKind kind) {
  switch (kind) {
    case GateKind::H:
    case GateKind::X:
    case GateKind::Z:
      return 1;
    case GateKind::CX:
    case GateKind::CZ:
      return 2;
  }
  throw std::invalid_argument("arity: unknown gate kind");
}

std::string_view kind_name(GateKind kind) {
  switch (kind) {
    case GateKind::H:
      return "H";
    case GateKind::X:
      return "X";
    case GateKind::Z:
      return "Z";
    case GateKind::CX:
      return "CX";
    case GateKind::CZ:
      return "CZ";
  }
  throw std::invalid_argument("kind_name: unknown gate kind");
}

namespace {

Gate make_single(GateKind kind, int wire, bool dagger) {
  if (wire < 0) throw std::invalid_argument("Gate: negative wire index");
  return Gate{kind, {wire, -1}, dagger};
}

Gate make_controlled(GateKind kind, int control, int target, bool dagger) {
  if (control < 0 || target < 0) {
    throw std::invalid_argument("Gate: negative wire index");
  }
  if (control == target) {
    throw std::invalid_argument("Gate: control and target must be distinct");
  }
  return Gate{kind, {control, target}, dagger};
}

}  // namespace

Gate Gate::h(int wire, bool dagger) { return make_single(GateKind::H, wire, dagger); }
Gate Gate::x(int wire, bool dagger) { return make_single(GateKind::X, wire, dagger); }
Gate Gate::z(int wire, bool dagger) { return make_single(GateKind::Z, wire, dagger); }
Gate Gate::cx(int control, int target, bool dagger) {
  return make_controlled(GateKind::CX, control, target, dagger);
}
Gate Gate::cz(int control, int target, bool dagger) {
  return make_controlled(GateKind::CZ, control, target, dagger);
}

Gate adjoint(const Gate& g) {
  Gate out = g;
  out.dagger = !out.dagger;
  return out;
}

Matrix identity_matrix(std::size_t n) {
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
  return m;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("multiply: size mismatch");
  }
  const std::size_t n = a.size();
  Matrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const Complex aik = a.at(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < n; ++j) {
        out.at(i, j) += aik * b.at(k, j);
      }
    }
  }
  return out;
}

Matrix conjugate_transpose(const Matrix& m) {
  const std::size_t n = m.size();
  Matrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      out.at(i, j) = std::conj(m.at(j, i));
    }
  }
  return out;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("max_abs_diff: size mismatch");
  }
  double dev = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) {
    dev = std::max(dev, std::abs(a.data()[i] - b.data()[i]));
  }
  return dev;
}

Matrix gate_matrix(const Gate& g, Dim dim) {
  const int d = dim.value();
  Matrix m;
  switch (g.kind) {
    case GateKind::H: {
      m = Matrix(static_cast<std::size_t>(d));
      const double scale = 1.0 / std::sqrt(static_cast<double>(d));
      for (int row = 0; row < d; ++row) {
        for (int col = 0; col < d; ++col) {
          m.at(row, col) = root_of_unity(dim, static_cast<long long>(row) * col) * scale;
        }
      }
      break;
    }
    case GateKind::X: {
      m = Matrix(static_cast<std::size_t>(d));
      for (int col = 0; col < d; ++col) {
        m.at((col + 1) % d, col) = 1.0;
      }
      break;
    }
    case GateKind::Z: {
      m = Matrix(static_cast<std::size_t>(d));
      for (int col = 0; col < d; ++col) {
        m.at(col, col) = root_of_unity(dim, -col);
      }
      break;
    }
    case GateKind::CX: {
      m = Matrix(static_cast<std::size_t>(d) * d);
      for (int control = 0; control < d; ++control) {
        for (int target = 0; target < d; ++target) {
          m.at(control * d + (control + target) % d, control * d + target) = 1.0;
        }
      }
      break;
    }
    case GateKind::CZ: {
      m = Matrix(static_cast<std::size_t>(d) * d);
      for (int control = 0; control < d; ++control) {
        for (int target = 0; target < d; ++target) {
          m.at(control * d + target, control * d + target) =
              root_of_unity(dim, -static_cast<long long>(control) * target);
        }
      }
      break;
    }
  }
  return g.dagger ? conjugate_transpose(m) : m;
}

std::size_t BasisState::index(Dim dim) const {
  const int d = dim.value();
  std::size_t idx = 0;
  for (int digit : digits) {
    if (digit < 0 || digit >= d) {
      throw std::invalid_argument("BasisState: digit " + std::to_string(digit) +
                                  " out of [0, " + std::to_string(d) + ")");
    }
    idx = idx * static_cast<std::size_t>(d) + static_cast<std::size_t>(digit);
  }
  return idx;
}

BasisState BasisState::from_index(Dim dim, int wires, std::size_t index) {
  const std::size_t size = register_size(dim, wires);
  if (index >= size) {
    throw std::out_of_range("BasisState::from_index: index out of range");
  }
  const std::size_t d = static_cast<std::size_t>(dim.value());
  std::vector<int> digits(static_cast<std::size_t>(wires));
  for (int w = wires - 1; w >= 0; --w) {
    digits[static_cast<std::size_t>(w)] = static_cast<int>(index % d);
    index /= d;
  }
  return BasisState{std::move(digits)};
}

namespace {

void check_finite(const std::vector<Complex>& amps) {
  for (const Complex& a : amps) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      throw std::invalid_argument("StateVector: non-finite amplitude");
    }
  }
}

}  // namespace

StateVector::StateVector(Dim dim, int wires)
    : dim_(dim), wires_(wires), amps_(register_size(dim, wires)) {
  amps_[0] = 1.0;
}

StateVector::StateVector(Dim dim, int wires, std::vector<Complex> amps)
    : dim_(dim), wires_(wires), amps_(std::move(amps)) {
  if (amps_.size() != register_size(dim, wires)) {
    throw std::invalid_argument("StateVector: amplitude count does not match d^wires");
  }
  check_finite(amps_);
}

StateVector StateVector::basis(Dim dim, int wires, const BasisState& ket) {
  if (ket.wires() != wires) {
    throw std::invalid_argument("StateVector::basis: digit count does not match wires");
  }
  StateVector s(dim, wires);
  s.amps_[0] = 0.0;
  s.amps_[ket.index(dim)] = 1.0;
  return s;
}

double StateVector::norm_sq() const {
  double n = 0.0;
  for (const Complex& a : amps_) n += std::norm(a);
  return n;
}

double max_abs_diff(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim() || a.wires() != b.wires()) {
    throw std::invalid_argument("max_abs_diff: state shape mismatch");
  }
  double dev = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dev = std::max(dev, std::abs(a.amplitudes()[i] - b.amplitudes()[i]));
  }
  return dev;
}

namespace {

// d^(wires - 1 - wire): distance between consecutive digit values of `wire`.
std::size_t wire_stride(int d, int wires, int wire) {
  std::size_t s = 1;
  for (int i = 0; i < wires - 1 - wire; ++i) s *= static_cast<std::size_t>(d);
  return s;
}

void check_wire(int wire, int wires) {
  if (wire < 0 || wire >= wires) {
    throw std::out_of_range("apply: gate wire " + std::to_string(wire) +
                            " outside register of " + std::to_string(wires) +
                            " wires");
  }
}

}  // namespace

StateVector apply(const StateVector& state, const Gate& g) {
  const int d = state.dim().value();
  const int wires = state.wires();
  const std::size_t size = state.size();
  const std::vector<Complex>& in = state.amplitudes();

  check_wire(g.wires[0], wires);
  if (g.arity() == 2) {
    check_wire(g.wires[1], wires);
    if (g.wires[0] == g.wires[1]) {
      throw std::invalid_argument("apply: control and target coincide");
    }
  }

  std::vector<Complex> out(size);

  switch (g.kind) {
    case GateKind::H: {
      // Dense mix along the wire's axis.
      const Matrix m = gate_matrix(g, state.dim());
      const std::size_t stride = wire_stride(d, wires, g.wires[0]);
      for (std::size_t base = 0; base < size; ++base) {
        if ((base / stride) % static_cast<std::size_t>(d) != 0) continue;
        for (int row = 0; row < d; ++row) {
          Complex acc{};
          for (int col = 0; col < d; ++col) {
            acc += m.at(row, col) * in[base + static_cast<std::size_t>(col) * stride];
          }
          out[base + static_cast<std::size_t>(row) * stride] = acc;
        }
      }
      break;
    }
    case GateKind::X: {
      const std::size_t stride = wire_stride(d, wires, g.wires[0]);
      const int shift = g.dagger ? d - 1 : 1;
      for (std::size_t idx = 0; idx < size; ++idx) {
        const int digit = static_cast<int>((idx / stride) % static_cast<std::size_t>(d));
        const int next = (digit + shift) % d;
        const std::size_t base = idx - static_cast<std::size_t>(digit) * stride;
        out[base + static_cast<std::size_t>(next) * stride] = in[idx];
      }
      break;
    }
    case GateKind::Z: {
      const std::size_t stride = wire_stride(d, wires, g.wires[0]);
      std::vector<Complex> phase(static_cast<std::size_t>(d));
      for (int k = 0; k < d; ++k) {
        phase[static_cast<std::size_t>(k)] = root_of_unity(state.dim(), g.dagger ? k : -k);
      }
      for (std::size_t idx = 0; idx < size; ++idx) {
        const int digit = static_cast<int>((idx / stride) % static_cast<std::size_t>(d));
        out[idx] = in[idx] * phase[static_cast<std::size_t>(digit)];
      }
      break;
    }
    case GateKind::CX: {
      const std::size_t cs = wire_stride(d, wires, g.control());
      const std::size_t ts = wire_stride(d, wires, g.target());
      for (std::size_t idx = 0; idx < size; ++idx) {
        const int control = static_cast<int>((idx / cs) % static_cast<std::size_t>(d));
        const int target = static_cast<int>((idx / ts) % static_cast<std::size_t>(d));
        const int next = g.dagger ? (target - control + d) % d
                                  : (target + control) % d;
        const std::size_t base = idx - static_cast<std::size_t>(target) * ts;
        out[base + static_cast<std::size_t>(next) * ts] = in[idx];
      }
      break;
    }
    case GateKind::CZ: {
      const std::size_t cs = wire_stride(d, wires, g.control());
      const std::size_t ts = wire_stride(d, wires, g.target());
      std::vector<Complex> phase(static_cast<std::size_t>(d));
      for (int k = 0; k < d; ++k) {
        phase[static_cast<std::size_t>(k)] = root_of_unity(state.dim(), g.dagger ? k : -k);
      }
      for (std::size_t idx = 0; idx < size; ++idx) {
        const int control = static_cast<int>((idx / cs) % static_cast<std::size_t>(d));
        const int target = static_cast<int>((idx / ts) % static_cast<std::size_t>(d));
        out[idx] = in[idx] * phase[static_cast<std::size_t>((control * target) % d)];
      }
      break;
    }
  }

  return StateVector(state.dim(), wires, std::move(out));
}

}  // namespace qdc
