#ifndef PPSIM_QLIN_HPP
#define PPSIM_QLIN_HPP

#include <span>
#include <string_view>
#include <vector>

#include "ppsim/prob_table.hpp"
#include "ppsim/state.hpp"

namespace ppsim::qlin {

/// Kronecker products with layout bookkeeping. Operands must carry
/// disjoint subsystem labels; the result layout is the concatenation.
StateVector tensor(const StateVector& a, const StateVector& b);
DensityOperator tensor(const DensityOperator& a, const DensityOperator& b);

/// Reduced operator on the kept subsystems (layout order preserved).
DensityOperator partial_trace(const DensityOperator& rho, const std::vector<Label>& keep);

/// Ascending eigenvalues of a Hermitian operator. Throws if the input
/// deviates from Hermiticity by more than herm_tol.
Eigen::VectorXd hermitian_spectrum(const DensityOperator& rho, double herm_tol = 1e-10);
Eigen::VectorXd hermitian_spectrum(const Matrix& m, double herm_tol = 1e-10);

/// S(rho) = -sum lambda log2 lambda in bits, with 0 log 0 := 0.
/// Eigenvalues below -eig_tol are an error; small negatives are clamped.
double von_neumann_entropy(const DensityOperator& rho, double eig_tol = 1e-10);
double von_neumann_entropy(const Matrix& m, double eig_tol = 1e-10);

/// Shannon entropy in bits of a nonnegative weight list (need not be
/// normalized by the caller for the joint-entropy identities used here).
double shannon_entropy(std::span<const double> probs);

/// I(axis1; axis2) in bits of the named pair of axes, marginalizing the
/// rest. Symmetric in its axis arguments; requires a normalized table.
double mutual_information(const ProbabilityTable& joint, std::string_view axis1,
                          std::string_view axis2);

}  // namespace ppsim::qlin

#endif
