#include "lglab/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lglab {

namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw DimensionMismatch(std::string(what) + ": dimension mismatch (" +
                            std::to_string(a) + " vs " + std::to_string(b) + ")");
  }
}

// ---------------------------------------------------------------- StateVector

StateVector::StateVector(std::vector<Complex> amps, NormPolicy policy)
    : amps_(std::move(amps)) {
  if (amps_.empty()) throw DimensionMismatch("StateVector: dimension must be positive");
  if (!std::all_of(amps_.begin(), amps_.end(), finite)) {
    throw NonFiniteValue("StateVector: non-finite amplitude");
  }
  const double n2 = norm_squared(amps_);
  if (n2 == 0.0) throw NormalizationError("StateVector: zero vector");
  if (std::abs(n2 - 1.0) > kInputTol) {
    if (policy == NormPolicy::reject) {
      throw NormalizationError("StateVector: squared norm " + std::to_string(n2) +
                               " differs from 1 by more than 1e-9");
    }
  }
  if (n2 != 1.0) {
    const double scale = 1.0 / std::sqrt(n2);
    for (auto& a : amps_) a *= scale;
  }
}

StateVector StateVector::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) throw std::out_of_range("StateVector::basis: index out of range");
  std::vector<Complex> amps(dim);
  amps[index] = 1.0;
  return StateVector(std::move(amps));
}

// ---------------------------------------------------------------- Operator

Operator::Operator(std::size_t dim, std::vector<Complex> entries, OperatorKind kind)
    : dim_(dim), entries_(std::move(entries)), kind_(kind) {
  if (dim_ == 0) throw DimensionMismatch("Operator: dimension must be positive");
  if (entries_.size() != dim_ * dim_) {
    throw DimensionMismatch("Operator: expected " + std::to_string(dim_ * dim_) +
                            " entries, got " + std::to_string(entries_.size()));
  }
  if (!std::all_of(entries_.begin(), entries_.end(), finite)) {
    throw NonFiniteValue("Operator: non-finite entry");
  }
  if (kind_ == OperatorKind::hermitian && !is_hermitian()) {
    throw NotHermitian("Operator: declared hermitian but M != M^dagger");
  }
  if (kind_ == OperatorKind::unitary && !is_unitary()) {
    throw NotUnitary("Operator: declared unitary but U^dagger U != I");
  }
}

Operator Operator::identity(std::size_t dim) {
  std::vector<Complex> e(dim * dim);
  for (std::size_t i = 0; i < dim; ++i) e[i * dim + i] = 1.0;
  return Operator(dim, std::move(e), OperatorKind::hermitian);
}

Operator Operator::zero(std::size_t dim) {
  return Operator(dim, std::vector<Complex>(dim * dim), OperatorKind::hermitian);
}

Operator Operator::outer(const StateVector& a, const StateVector& b) {
  require_same_dim(a.dim(), b.dim(), "Operator::outer");
  const std::size_t d = a.dim();
  std::vector<Complex> e(d * d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) e[r * d + c] = a[r] * std::conj(b[c]);
  return Operator(d, std::move(e));
}

Operator Operator::projector(const StateVector& s) {
  return outer(s, s).with_kind(OperatorKind::hermitian);
}

Operator Operator::adjoint() const {
  std::vector<Complex> e(dim_ * dim_);
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = 0; c < dim_; ++c) e[c * dim_ + r] = std::conj((*this)(r, c));
  // The adjoint of a hermitian (unitary) matrix is hermitian (unitary).
  return Operator(Unchecked{}, dim_, std::move(e), kind_);
}

Operator Operator::with_kind(OperatorKind kind) const {
  return Operator(dim_, entries_, kind);
}

bool Operator::is_hermitian(double tol) const {
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = r; c < dim_; ++c)
      if (std::abs((*this)(r, c) - std::conj((*this)(c, r))) > tol) return false;
  return true;
}

bool Operator::is_unitary(double tol) const {
  return (adjoint() * *this).distance(identity(dim_)) <= tol;
}

bool Operator::is_projector(double tol) const {
  if (!is_hermitian(tol)) return false;
  return (*this * *this).distance(*this) <= tol;
}

double Operator::distance(const Operator& other) const {
  require_same_dim(dim_, other.dim_, "Operator::distance");
  double worst = 0.0;
  for (std::size_t i = 0; i < entries_.size(); ++i)
    worst = std::max(worst, std::abs(entries_[i] - other.entries_[i]));
  return worst;
}

Complex Operator::trace() const {
  Complex t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

Operator operator+(const Operator& a, const Operator& b) {
  require_same_dim(a.dim_, b.dim_, "Operator +");
  std::vector<Complex> e(a.entries_);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] += b.entries_[i];
  return Operator(a.dim_, std::move(e));
}

Operator operator-(const Operator& a, const Operator& b) {
  require_same_dim(a.dim_, b.dim_, "Operator -");
  std::vector<Complex> e(a.entries_);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] -= b.entries_[i];
  return Operator(a.dim_, std::move(e));
}

Operator operator*(const Operator& a, const Operator& b) {
  require_same_dim(a.dim_, b.dim_, "Operator *");
  const std::size_t d = a.dim_;
  std::vector<Complex> e(d * d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t k = 0; k < d; ++k) {
      const Complex ark = a(r, k);
      for (std::size_t c = 0; c < d; ++c) e[r * d + c] += ark * b(k, c);
    }
  return Operator(d, std::move(e));
}

Operator operator*(Complex s, const Operator& a) {
  std::vector<Complex> e(a.entries_);
  for (auto& x : e) x *= s;
  return Operator(a.dim_, std::move(e));
}

// ------------------------------------------------------ DichotomicObservable

DichotomicObservable::DichotomicObservable(Operator plus_projector,
                                           Operator minus_projector)
    : plus_(std::move(plus_projector)), minus_(std::move(minus_projector)) {
  require_same_dim(plus_.dim(), minus_.dim(), "DichotomicObservable");
  if (!plus_.is_projector() || !minus_.is_projector()) {
    throw NotProjector("DichotomicObservable: P+ and P- must be projectors");
  }
  if ((plus_ * minus_).distance(Operator::zero(dim())) > kStructuralTol) {
    throw NotProjector("DichotomicObservable: P+ P- != 0");
  }
  if ((plus_ + minus_).distance(Operator::identity(dim())) > kStructuralTol) {
    throw NotProjector("DichotomicObservable: P+ + P- != I");
  }
  plus_ = plus_.with_kind(OperatorKind::hermitian);
  minus_ = minus_.with_kind(OperatorKind::hermitian);
}

DichotomicObservable DichotomicObservable::from_plus_projector(const Operator& plus) {
  return DichotomicObservable(plus, Operator::identity(plus.dim()) - plus);
}

DichotomicObservable DichotomicObservable::from_plus_state(const StateVector& s) {
  return from_plus_projector(Operator::projector(s));
}

DichotomicObservable DichotomicObservable::from_pair(const StateVector& plus,
                                                     const StateVector& minus) {
  return DichotomicObservable(Operator::projector(plus), Operator::projector(minus));
}

const Operator& DichotomicObservable::projector(int outcome) const {
  if (outcome == kPlus) return plus_;
  if (outcome == kMinus) return minus_;
  throw std::invalid_argument("DichotomicObservable: outcome must be +1 or -1");
}

Operator DichotomicObservable::matrix() const {
  return (plus_ - minus_).with_kind(OperatorKind::hermitian);
}

// ---------------------------------------------------------------- free ops

Complex inner_product(std::span<const Complex> a, std::span<const Complex> b) {
  require_same_dim(a.size(), b.size(), "inner_product");
  Complex acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

Complex inner_product(const StateVector& a, const StateVector& b) {
  return inner_product(a.amps(), b.amps());
}

double norm_squared(std::span<const Complex> v) {
  double acc = 0.0;
  for (const auto& z : v) acc += std::norm(z);
  return acc;
}

std::vector<Complex> multiply(const Operator& m, std::span<const Complex> v) {
  require_same_dim(m.dim(), v.size(), "multiply");
  const std::size_t d = m.dim();
  std::vector<Complex> out(d);
  for (std::size_t r = 0; r < d; ++r) {
    Complex acc = 0.0;
    for (std::size_t c = 0; c < d; ++c) acc += m(r, c) * v[c];
    out[r] = acc;
  }
  return out;
}

Complex matrix_element(const StateVector& a, const Operator& m, const StateVector& b) {
  require_same_dim(a.dim(), m.dim(), "matrix_element");
  return inner_product(a.amps(), multiply(m, b.amps()));
}

double expectation(const Operator& m, const StateVector& s) {
  require_same_dim(m.dim(), s.dim(), "expectation");
  if (!m.is_hermitian()) throw NotHermitian("expectation: operator is not Hermitian");
  const Complex v = matrix_element(s, m, s);
  if (std::abs(v.imag()) >= kStructuralTol) {
    throw InvariantError("expectation: imaginary part of <s|M|s> exceeds 1e-12");
  }
  return v.real();
}

double born_probability(const Operator& p, const StateVector& s) {
  require_same_dim(p.dim(), s.dim(), "born_probability");
  if (!p.is_projector()) throw NotProjector("born_probability: operator is not a projector");
  // ||P s||^2 equals <s|P|s> for projectors and is nonnegative by construction.
  const double prob = norm_squared(multiply(p, s.amps()));
  return std::clamp(prob, 0.0, 1.0);
}

StateVector apply(const Operator& u, const StateVector& s) {
  require_same_dim(u.dim(), s.dim(), "apply");
  if (!u.is_unitary()) throw NotUnitary("apply: operator is not unitary");
  auto out = multiply(u, s.amps());
  const double n2 = norm_squared(out);
  if (std::abs(n2 - 1.0) > kStructuralTol) {
    throw InvariantError("apply: output norm drifted beyond 1e-12");
  }
  return StateVector(std::move(out));
}

Operator density(const StateVector& s) { return Operator::projector(s); }

}  // namespace lglab
