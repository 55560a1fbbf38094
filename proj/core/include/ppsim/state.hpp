#ifndef PPSIM_STATE_HPP
#define PPSIM_STATE_HPP

#include <Eigen/Dense>
#include <complex>

#include "ppsim/layout.hpp"

namespace ppsim::qlin {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

/// Pure state on a labeled tensor-product space. Normalized to 1e-12.
class StateVector {
 public:
  StateVector(SubsystemLayout layout, Vector amplitudes);

  /// Basis state |k> of a single labeled subsystem.
  static StateVector basis(Label label, int dim, int k);

  const SubsystemLayout& layout() const { return layout_; }
  const Vector& amplitudes() const { return amp_; }
  long dim() const { return amp_.size(); }

  double norm() const { return amp_.norm(); }

 private:
  SubsystemLayout layout_;
  Vector amp_;
};

/// Density operator on a labeled tensor-product space.
class DensityOperator {
 public:
  DensityOperator(SubsystemLayout layout, Matrix matrix);

  static DensityOperator from_state(const StateVector& psi);

  const SubsystemLayout& layout() const { return layout_; }
  const Matrix& matrix() const { return mat_; }
  long dim() const { return mat_.rows(); }

  Complex trace() const { return mat_.trace(); }

 private:
  SubsystemLayout layout_;
  Matrix mat_;
};

/// Largest deviation from Hermiticity, max_ij |M - M^dag|.
double hermiticity_deviation(const Matrix& m);

/// Throws std::runtime_error unless rho is Hermitian within herm_tol,
/// unit trace within trace_tol and positive within eig_tol.
void check_density(const DensityOperator& rho, double herm_tol = 1e-10,
                   double trace_tol = 1e-10, double eig_tol = 1e-10);

}  // namespace ppsim::qlin

#endif
