#include "lglab/interferometer.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace lglab {

namespace {

constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;
constexpr Complex kI{0.0, 1.0};

}  // namespace

MZConfig MZConfig::from_beta(double beta, double phi, PropagationMode mode) {
  if (!std::isfinite(beta) || std::abs(beta) > 1.0) {
    throw std::invalid_argument("beta must satisfy |beta| <= 1");
  }
  MZConfig cfg{std::sqrt(std::max(0.0, 1.0 - beta * beta)), beta, phi, mode};
  cfg.validate();
  return cfg;
}

void MZConfig::validate() const {
  if (!std::isfinite(alpha) || !std::isfinite(beta) || !std::isfinite(phi)) {
    throw std::invalid_argument("alpha, beta and phi must be finite");
  }
  const double n = alpha * alpha + beta * beta;
  if (std::abs(n - 1.0) > kInputTol) {
    throw std::invalid_argument("alpha^2 + beta^2 must equal 1 (got " +
                                std::to_string(n) + ")");
  }
}

const MZBasis& mz_basis() {
  static const MZBasis basis{
      StateVector::basis(2, 0),
      StateVector::basis(2, 1),
      StateVector({kInvSqrt2, kInvSqrt2}),
      StateVector({kInvSqrt2, -kInvSqrt2}),
  };
  return basis;
}

StateVector input_state(const MZConfig& cfg) {
  cfg.validate();
  return StateVector({cfg.alpha, cfg.beta});
}

Operator bs_unitary() {
  return Operator(2, {kInvSqrt2, kI * kInvSqrt2, kI * kInvSqrt2, kInvSqrt2},
                  OperatorKind::unitary);
}

Operator phase_unitary(double phi) {
  return Operator(2, {1.0, 0.0, 0.0, std::polar(1.0, phi)}, OperatorKind::unitary);
}

Operator bs1_stage() { return Operator(2, {1.0, 0.0, 0.0, kI}, OperatorKind::unitary); }

Operator bs2_stage() {
  const Operator sigma_y(2, {0.0, -kI, kI, 0.0}, OperatorKind::unitary);
  // Columns are psi3 and psi4 in path coordinates.
  const Operator ports_to_paths(2, {kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2},
                                OperatorKind::unitary);
  return (ports_to_paths * sigma_y * bs_unitary()).with_kind(OperatorKind::unitary);
}

Operator mz_unitary(double phi) {
  return (bs2_stage() * phase_unitary(phi) * bs1_stage()).with_kind(OperatorKind::unitary);
}

StateVector propagate(const MZConfig& cfg) {
  cfg.validate();
  if (cfg.mode == PropagationMode::unitary) {
    return apply(mz_unitary(cfg.phi), input_state(cfg));
  }
  const Complex b = cfg.beta * std::polar(1.0, cfg.phi);
  const Complex c3 = (cfg.alpha + b) * kInvSqrt2;
  const Complex c4 = kI * (cfg.alpha - b) * kInvSqrt2;
  const auto& basis = mz_basis();
  return StateVector({c3 * basis.psi3[0] + c4 * basis.psi4[0],
                      c3 * basis.psi3[1] + c4 * basis.psi4[1]});
}

DetectionProbabilities detection_probabilities(const MZConfig& cfg) {
  cfg.validate();
  if (cfg.phi == 0.0) {
    const double s = cfg.alpha + cfg.beta;
    const double d = cfg.alpha - cfg.beta;
    return {s * s / 2.0, d * d / 2.0};
  }
  const Complex b = cfg.beta * std::polar(1.0, cfg.phi);
  return {std::norm(cfg.alpha + b) / 2.0, std::norm(cfg.alpha - b) / 2.0};
}

DichotomicObservable path_observable() {
  const auto& basis = mz_basis();
  return DichotomicObservable::from_pair(basis.psi1, basis.psi2);
}

DichotomicObservable output_observable() {
  const auto& basis = mz_basis();
  return DichotomicObservable::from_pair(basis.psi4, basis.psi3);
}

StateVector postselect_psi3(double phi) {
  if (phi == 0.0) return mz_basis().psi3;
  return StateVector(multiply(phase_unitary(phi).adjoint(), mz_basis().psi3.amps()));
}

StateVector postselect_psi4(double phi) {
  if (phi == 0.0) return mz_basis().psi4;
  return StateVector(multiply(phase_unitary(phi).adjoint(), mz_basis().psi4.amps()));
}

DichotomicObservable output_observable(double phi) {
  return DichotomicObservable::from_pair(postselect_psi4(phi), postselect_psi3(phi));
}

}  // namespace lglab
