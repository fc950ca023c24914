// interferometer.hpp
// Two-path Mach-Zehnder model: preparation, beam splitters, phase shifter,
// detection probabilities and the path / output observables.
//
// Conventions (basis {psi1, psi2} = the two input paths):
//   U_BS  = (1/sqrt2) [[1, i], [i, 1]]
//   PS(phi) = diag(1, e^{i phi})            (phase on path psi2)
//   BS1 stage = diag(1, i)                   (maps a|psi1> + b|psi2> to a|psi1> + i b|psi2>)
//   BS2 stage = sigma_y * U_BS, read out in the port basis {psi3, psi4}
// With these choices the unitary route reproduces
//   [(a+b)|psi3> + i(a-b)|psi4>] / sqrt2  at phi = 0
// amplitude for amplitude, not only in probability.

#pragma once

#include "lglab/qcore.hpp"

namespace lglab {

enum class PropagationMode { closed_form, unitary };

struct MZConfig {
  double alpha = 1.0;
  double beta = 0.0;
  double phi = 0.0;
  PropagationMode mode = PropagationMode::closed_form;

  /// alpha = +sqrt(1 - beta^2). Throws if |beta| > 1.
  static MZConfig from_beta(double beta, double phi = 0.0,
                            PropagationMode mode = PropagationMode::closed_form);

  /// Throws std::invalid_argument unless alpha, beta, phi are finite and
  /// alpha^2 + beta^2 = 1 within 1e-9.
  void validate() const;
};

struct MZBasis {
  StateVector psi1;
  StateVector psi2;
  StateVector psi3;  // (psi1 + psi2)/sqrt2
  StateVector psi4;  // (psi1 - psi2)/sqrt2
};

const MZBasis& mz_basis();

/// alpha|psi1> + beta|psi2>
StateVector input_state(const MZConfig& cfg);

Operator bs_unitary();
Operator phase_unitary(double phi);
/// diag(1, i): the relative phase the first splitter stage imprints.
Operator bs1_stage();
/// sigma_y U_BS followed by the change from port coordinates to path coordinates.
Operator bs2_stage();
/// Full BS2 * PS(phi) * BS1 composition.
Operator mz_unitary(double phi);

/// Output state expressed in the path basis. Both modes agree in amplitude
/// under the conventions documented above.
StateVector propagate(const MZConfig& cfg);

struct DetectionProbabilities {
  double p3;
  double p4;
};

/// p3 = |a + b e^{i phi}|^2 / 2, p4 = |a - b e^{i phi}|^2 / 2.
DetectionProbabilities detection_probabilities(const MZConfig& cfg);

/// M2 = |psi1><psi1| - |psi2><psi2|
DichotomicObservable path_observable();
/// M3 = |psi4><psi4| - |psi3><psi3|; the +1 outcome is the psi4 port.
DichotomicObservable output_observable();
/// Output observable pulled back through the phase shifter,
/// PS(phi)^dagger M3 PS(phi). Equals output_observable() at phi = 0.
DichotomicObservable output_observable(double phi);

/// Post-selected states seen from the preparation: PS(phi)^dagger |psi3>,
/// PS(phi)^dagger |psi4>.
StateVector postselect_psi3(double phi);
StateVector postselect_psi4(double phi);

}  // namespace lglab
