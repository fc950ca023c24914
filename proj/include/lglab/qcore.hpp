// qcore.hpp
// Small-dimension complex linear algebra: pure states, operators,
// projectors and Born-rule probabilities.

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace lglab {

using Complex = std::complex<double>;

/// Tolerance for structural identities (hermiticity, unitarity, projector algebra).
inline constexpr double kStructuralTol = 1e-12;
/// Tolerance for validating user-supplied inputs such as normalization.
inline constexpr double kInputTol = 1e-9;

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NormalizationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NotHermitian : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NotUnitary : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NotProjector : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NonFiniteValue : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Raised when an identity that must hold by construction is found broken.
struct InvariantError : std::logic_error {
  using std::logic_error::logic_error;
};

enum class NormPolicy { reject, renormalize };

/// Normalized pure state over a finite-dimensional Hilbert space.
class StateVector {
 public:
  /// Inputs off-normal by more than kInputTol are rejected unless the
  /// policy asks for renormalization. Zero vectors are always rejected.
  explicit StateVector(std::vector<Complex> amps,
                       NormPolicy policy = NormPolicy::reject);

  static StateVector basis(std::size_t dim, std::size_t index);

  std::size_t dim() const { return amps_.size(); }
  std::span<const Complex> amps() const { return amps_; }
  Complex operator[](std::size_t i) const { return amps_[i]; }

 private:
  std::vector<Complex> amps_;
};

enum class OperatorKind { general, hermitian, unitary };

/// Dense dim x dim complex matrix, row-major. A hermitian or unitary kind is
/// validated at construction.
class Operator {
 public:
  Operator(std::size_t dim, std::vector<Complex> entries,
           OperatorKind kind = OperatorKind::general);

  static Operator identity(std::size_t dim);
  static Operator zero(std::size_t dim);
  /// |a><b|
  static Operator outer(const StateVector& a, const StateVector& b);
  /// |s><s|
  static Operator projector(const StateVector& s);

  std::size_t dim() const { return dim_; }
  OperatorKind kind() const { return kind_; }
  Complex operator()(std::size_t row, std::size_t col) const {
    return entries_[row * dim_ + col];
  }
  std::span<const Complex> entries() const { return entries_; }

  Operator adjoint() const;
  Operator with_kind(OperatorKind kind) const;

  bool is_hermitian(double tol = kStructuralTol) const;
  bool is_unitary(double tol = kStructuralTol) const;
  bool is_projector(double tol = kStructuralTol) const;
  /// Max-abs entrywise distance.
  double distance(const Operator& other) const;
  Complex trace() const;

  friend Operator operator+(const Operator& a, const Operator& b);
  friend Operator operator-(const Operator& a, const Operator& b);
  friend Operator operator*(const Operator& a, const Operator& b);
  friend Operator operator*(Complex s, const Operator& a);

 private:
  struct Unchecked {};
  Operator(Unchecked, std::size_t dim, std::vector<Complex> entries, OperatorKind kind)
      : dim_(dim), entries_(std::move(entries)), kind_(kind) {}

  std::size_t dim_;
  std::vector<Complex> entries_;
  OperatorKind kind_;
};

/// Hermitian operator with spectrum {+1, -1}, stored as its two spectral
/// projectors.
class DichotomicObservable {
 public:
  DichotomicObservable(Operator plus_projector, Operator minus_projector);

  /// P+ given; P- = I - P+.
  static DichotomicObservable from_plus_projector(const Operator& plus);
  /// M = 2|s><s| - I, i.e. s is the +1 eigenstate.
  static DichotomicObservable from_plus_state(const StateVector& s);
  /// M = |a><a| - |b><b| for an orthonormal pair spanning the space.
  static DichotomicObservable from_pair(const StateVector& plus,
                                        const StateVector& minus);

  std::size_t dim() const { return plus_.dim(); }
  const Operator& plus_projector() const { return plus_; }
  const Operator& minus_projector() const { return minus_; }
  /// Projector for outcome m in {+1, -1}.
  const Operator& projector(int outcome) const;
  /// M = P+ - P-
  Operator matrix() const;

  static constexpr int kPlus = +1;
  static constexpr int kMinus = -1;

 private:
  Operator plus_;
  Operator minus_;
};

Complex inner_product(const StateVector& a, const StateVector& b);
Complex inner_product(std::span<const Complex> a, std::span<const Complex> b);
double norm_squared(std::span<const Complex> v);

/// Raw matrix-vector product, no normalization or kind checks.
std::vector<Complex> multiply(const Operator& m, std::span<const Complex> v);

/// <s|M|s>; M must be Hermitian.
double expectation(const Operator& m, const StateVector& s);
/// <a|M|b> without any hermiticity requirement.
Complex matrix_element(const StateVector& a, const Operator& m,
                       const StateVector& b);
/// Tr[P |s><s|]; P must be a projector.
double born_probability(const Operator& p, const StateVector& s);
/// U|s>; U must be unitary.
StateVector apply(const Operator& u, const StateVector& s);

/// Pure-state density matrix |s><s|.
Operator density(const StateVector& s);

void require_same_dim(std::size_t a, std::size_t b, const char* what);

}  // namespace lglab
