#include "ppsim/state.hpp"

#include <sstream>
#include <stdexcept>

namespace ppsim::qlin {

StateVector::StateVector(SubsystemLayout layout, Vector amplitudes)
    : layout_(std::move(layout)), amp_(std::move(amplitudes)) {
  if (amp_.size() != layout_.total_dim()) {
    throw std::invalid_argument("amplitude length does not match layout dimension");
  }
  if (std::abs(amp_.squaredNorm() - 1.0) > 1e-12) {
    std::ostringstream os;
    os << "state vector not normalized: |psi|^2 = " << amp_.squaredNorm();
    throw std::invalid_argument(os.str());
  }
}

StateVector StateVector::basis(Label label, int dim, int k) {
  if (k < 0 || k >= dim) throw std::invalid_argument("basis index out of range");
  Vector v = Vector::Zero(dim);
  v(k) = 1.0;
  return StateVector(SubsystemLayout{{label, dim}}, std::move(v));
}

DensityOperator::DensityOperator(SubsystemLayout layout, Matrix matrix)
    : layout_(std::move(layout)), mat_(std::move(matrix)) {
  if (mat_.rows() != mat_.cols()) {
    throw std::invalid_argument("density operator must be square");
  }
  if (mat_.rows() != layout_.total_dim()) {
    throw std::invalid_argument("matrix size does not match layout dimension");
  }
}

DensityOperator DensityOperator::from_state(const StateVector& psi) {
  return DensityOperator(psi.layout(), psi.amplitudes() * psi.amplitudes().adjoint());
}

double hermiticity_deviation(const Matrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

void check_density(const DensityOperator& rho, double herm_tol, double trace_tol,
                   double eig_tol) {
  if (hermiticity_deviation(rho.matrix()) > herm_tol) {
    throw std::runtime_error("density operator is not Hermitian");
  }
  if (std::abs(rho.trace() - 1.0) > trace_tol) {
    std::ostringstream os;
    os << "density operator trace deviates from 1 by " << std::abs(rho.trace() - 1.0);
    throw std::runtime_error(os.str());
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(rho.matrix(),
                                               Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -eig_tol) {
    std::ostringstream os;
    os << "density operator has negative eigenvalue " << solver.eigenvalues().minCoeff();
    throw std::runtime_error(os.str());
  }
}

}  // namespace ppsim::qlin
