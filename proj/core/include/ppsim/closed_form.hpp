#ifndef PPSIM_CLOSED_FORM_HPP
#define PPSIM_CLOSED_FORM_HPP

#include <Eigen/Dense>
#include <vector>

#include "ppsim/prob_table.hpp"

namespace ppsim::closed_form {

/// Analytic reference data for the attacked protocol. The joint tables
/// are the published closed forms; they double as the target statistics
/// of the classical local-noise feasibility analysis. Axes are always
/// ("a", 2), ("e", 2), ("b", 4) with Bell outcome order
/// (psi+, psi-, phi+, phi-).

/// Noiseless attack: P(0,0,0) = 1/2, P(1,e,b) = 1/8 for e,b in {0,1}.
qlin::ProbabilityTable noiseless_joint();

/// Amplitude damping at noise level p:
///   P000 = (2-p)^2/8, P001 = p^2/8, P002 = P003 = (2-p)p/8,
///   P100 = P101 = 1/8, P102 = P103 = (2-p)p/8,
///   P110 = P111 = (1-p)^2/8, rest zero.
qlin::ProbabilityTable ad_joint(double p);

/// Depolarizing at noise level p (p = polarization-block replacement
/// probability):
///   P000 = 1/2 + 3p(p-2)/8, P001 = P002 = P003 = p(2-p)/8,
///   P1e{0,1} = 1/8 + p(p-2)/16, P1e{2,3} = p(2-p)/16, rest zero.
qlin::ProbabilityTable depol_joint(double p);

/// Reduced Bob state for the damped channel, basis {|01>, |10>, |00>}.
Eigen::Matrix3d ad_reduced_ht(double p, int a);

/// Reduced Bob state for the depolarizing channel, polarization-block
/// basis {|00>, |01>, |10>, |11>}.
Eigen::Matrix4d depol_reduced_ht(double p, int a);

enum class StatePick { a0, a1, average };

/// Eigenvalues of the reduced Bob states (and of their equal mixture),
/// ascending.
std::vector<double> ad_spectrum(double p, StatePick which);
std::vector<double> depol_spectrum(double p, StatePick which);

/// Lower bound on the total-variation distance between any classically
/// post-processed noiseless table and the damped-channel target: the
/// local model cannot change the probe marginal, whose e=1 mass shrinks
/// from 1/4 to (1-p)^2/4. The feasibility search attains this bound.
double classical_floor_tv(double p);

}  // namespace ppsim::closed_form

#endif
