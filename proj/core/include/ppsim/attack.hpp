#ifndef PPSIM_ATTACK_HPP
#define PPSIM_ATTACK_HPP

#include <array>

#include "ppsim/qlin.hpp"

namespace ppsim::attack {

using qlin::DensityOperator;
using qlin::Matrix;

/// Unitaries of the probe attack on the travel qutrit. All act on the
/// 27-dimensional (t, x, y) space except h_y, which is the 3x3 probe
/// rotation. q = swap_tx * cpbs * h_y (h_y applied first).
struct AttackOperators {
  Matrix cpbs;       // 27x27 permutation
  Matrix h_y;        // 3x3, Hadamard on the {|0>,|1>} block of y
  Matrix swap_tx;    // 27x27, exchanges t and x
  Matrix q;          // 27x27
  Matrix q_inverse;  // adjoint of q
};

/// Controlled polarization beam splitter on (t, x, y): swaps the basis
/// pairs |020> <-> |002> and |121> <-> |112>, identity elsewhere.
Matrix build_cpbs();

/// Hadamard on the polarization block of a qutrit, identity on |2>.
Matrix build_probe_hadamard();

/// Exchange of the t and x qutrits, identity on y.
Matrix build_swap_tx();

AttackOperators build_q();

/// Alice's encoding on the travel qutrit: identity for bit 0, the
/// polarization phase flip diag(1, -1, 1) for bit 1.
Matrix encoding_operator(int bit);

/// Bell-state analysis on h (x) t, dimension 6: projectors onto psi+,
/// psi-, phi+, phi- in the polarization block plus the residual projector
/// onto span{|h>|2>}. Outcome order (psi+, psi-, phi+, phi-) = (0,1,2,3).
struct BellMeasurement {
  std::array<Matrix, 5> projectors;

  /// max deviation from idempotence / mutual orthogonality / completeness.
  double resolution_deviation() const;
};

BellMeasurement build_bell_measurement();

/// Index of the residual outcome in measurement tables.
inline constexpr int kResidualOutcome = 4;
/// Index of the vacuum outcome of the probe measurement.
inline constexpr int kVacuumOutcome = 2;

struct MeasureOptions {
  /// Require the x probe to sit in |2><2| within x_purity_tol. The
  /// standard pipeline guarantees this; exploratory noise orderings
  /// may not and can disable the check.
  bool enforce_x_purity = true;
  double x_purity_tol = 1e-10;
};

/// Joint outcome distribution of Eve's computational-basis probe readout
/// e in {0, 1, 2} and Bob's Bell outcome b in {0, 1, 2, 3, residual},
/// taken on a density operator over the full (h, t, x, y) space. The x
/// probe is verified to be |2> and is not measured.
struct MeasureResult {
  qlin::ProbabilityTable eb;  // axes ("e", 3) x ("b", 5)
  double x_purity_deviation = 0.0;

  double vacuum_mass() const;
  double residual_mass() const;
};

MeasureResult measure(const DensityOperator& rho_htxy, const MeasureOptions& opts = {});

}  // namespace ppsim::attack

#endif
