// Numerical kernel for qudit registers and the five gate families
// (H, X, Z, CX, CZ) over a configurable dimension d.
//
// Conventions used throughout the library:
//   H : |y> -> (1/sqrt d) sum_z  e^{+2 pi i z y / d} |z>     (positive exponent)
//   X : |y> -> |y + 1 mod d>
//   Z : |y> -> e^{-2 pi i y / d} |y>                         (negative exponent)
//   CX: |x,y> -> |x, y + x mod d>                            (control x, target y)
//   CZ: |x,y> -> e^{-2 pi i x y / d} |x,y>
// With these signs, CZ is Z raised to the control digit, and the adjoint of
// each gate is its conjugate transpose. At d = 2 every gate equals its own
// adjoint; for d > 2 the dagger flag matters.
//
// Basis indexing is big-endian: wire 0 is the most significant digit, so a
// 4-wire register at dimension d stores ket |a,b,c,e> at index
// a*d^3 + b*d^2 + c*d + e.

#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qdc {

using Complex = std::complex<double>;

/// Qudit dimension. Bounded so a four-wire register stays at desk scale.
class Dim {
 public:
  static constexpr int kMin = 2;
  static constexpr int kMax = 16;

  explicit Dim(int d) : d_(d) {
    if (d < kMin || d > kMax) {
      throw std::invalid_argument("Dim: dimension must be in [" +
                                  std::to_string(kMin) + ", " +
                                  std::to_string(kMax) + "], got " +
                                  std::to_string(d));
    }
  }

  int value() const { return d_; }

  friend bool operator==(Dim a, Dim b) = default;

 private:
  int d_;
};

// Registers are capped at 65536 amplitudes (4 wires at d = 16).
inline constexpr std::size_t kMaxRegisterSize = 65536;

/// d^wires, validated against kMaxRegisterSize.
std::size_t register_size(Dim dim, int wires);

/// e^{2 pi i (k mod d) / d}, computed from the exactly reduced angle.
/// Quarter-turn values (1, i, -1, -i) are returned exactly, so e.g. the
/// d = 4 primitive root is i with no rounding residue.
Complex root_of_unity(Dim dim, long long k);

enum class GateKind { H, X, Z, CX, CZ };

/// 1 for H, X, Z; 2 for CX, CZ.
int arity(GateKind kind);

std::string_view kind_name(GateKind kind);

/// One gate instance. Two-wire gates store control first, target second.
struct Gate {
  GateKind kind = GateKind::H;
  std::array<int, 2> wires{0, -1};
  bool dagger = false;

  static Gate h(int wire, bool dagger = false);
  static Gate x(int wire, bool dagger = false);
  static Gate z(int wire, bool dagger = false);
  static Gate cx(int control, int target, bool dagger = false);
  static Gate cz(int control, int target, bool dagger = false);

  int arity() const { return qdc::arity(kind); }
  int control() const { return wires[0]; }
  int target() const { return wires[1]; }

  friend bool operator==(const Gate& a, const Gate& b) = default;
};

/// Flips the dagger flag; the matrix of the result is the conjugate
/// transpose of the original.
Gate adjoint(const Gate& g);

/// Dense square complex matrix, row-major.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t n) : n_(n), a_(n * n) {}

  std::size_t size() const { return n_; }
  Complex& at(std::size_t row, std::size_t col) { return a_[row * n_ + col]; }
  const Complex& at(std::size_t row, std::size_t col) const {
    return a_[row * n_ + col];
  }
  const std::vector<Complex>& data() const { return a_; }

  friend bool operator==(const Matrix& a, const Matrix& b) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Complex> a_;
};

Matrix identity_matrix(std::size_t n);
Matrix multiply(const Matrix& a, const Matrix& b);
Matrix conjugate_transpose(const Matrix& m);
double max_abs_diff(const Matrix& a, const Matrix& b);

/// The gate's unitary on its own wires (d x d, or d^2 x d^2 for CX/CZ,
/// basis ordered control-major). dagger = true gives the conjugate
/// transpose.
Matrix gate_matrix(const Gate& g, Dim dim);

/// Digit string labelling one computational-basis ket, one digit per wire.
struct BasisState {
  std::vector<int> digits;

  BasisState() = default;
  explicit BasisState(std::vector<int> d) : digits(std::move(d)) {}

  int wires() const { return static_cast<int>(digits.size()); }

  /// Big-endian linear index of this ket. Throws if a digit is out of [0, d).
  std::size_t index(Dim dim) const;

  static BasisState from_index(Dim dim, int wires, std::size_t index);

  friend bool operator==(const BasisState& a, const BasisState& b) = default;
};

/// Dense amplitude vector over the computational basis of `wires` qudits.
/// Amplitudes are always finite; construction rejects NaN/Inf.
class StateVector {
 public:
  /// |0...0>
  StateVector(Dim dim, int wires);

  StateVector(Dim dim, int wires, std::vector<Complex> amps);

  static StateVector basis(Dim dim, int wires, const BasisState& ket);

  Dim dim() const { return dim_; }
  int wires() const { return wires_; }
  std::size_t size() const { return amps_.size(); }
  const std::vector<Complex>& amplitudes() const { return amps_; }
  Complex amplitude(std::size_t index) const { return amps_.at(index); }
  Complex amplitude(const BasisState& ket) const {
    return amps_.at(ket.index(dim_));
  }

  double norm_sq() const;

  friend bool operator==(const StateVector& a, const StateVector& b) = default;

 private:
  Dim dim_;
  int wires_;
  std::vector<Complex> amps_;
};

/// Max-norm distance between two states of the same shape.
double max_abs_diff(const StateVector& a, const StateVector& b);

/// Applies the gate on its wires, identity elsewhere. Implemented by direct
/// index arithmetic; no register-sized matrix is formed. Throws
/// std::out_of_range if a gate wire does not fit the register.
StateVector apply(const StateVector& state, const Gate& g);

}  // namespace qdc
