#include "ppsim/channels.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ppsim::channels {

namespace {
void require_unit_interval(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    std::ostringstream os;
    os << what << " requires p in [0, 1], got " << p;
    throw std::invalid_argument(os.str());
  }
}
}  // namespace

KrausChannel::KrausChannel(std::string name, double p, std::vector<Matrix> operators)
    : name_(std::move(name)), p_(p), ops_(std::move(operators)) {
  if (ops_.empty()) throw std::invalid_argument("channel needs at least one operator");
  long d = ops_.front().rows();
  for (const auto& op : ops_) {
    if (op.rows() != d || op.cols() != d) {
      throw std::invalid_argument("Kraus operators must share one square dimension");
    }
  }
  if (completeness_deviation() > 1e-12) {
    std::ostringstream os;
    os << "Kraus completeness violated by " << completeness_deviation();
    throw std::invalid_argument(os.str());
  }
}

double KrausChannel::completeness_deviation() const {
  Matrix acc = Matrix::Zero(dim(), dim());
  for (const auto& op : ops_) acc += op.adjoint() * op;
  acc -= Matrix::Identity(dim(), dim());
  return acc.cwiseAbs().maxCoeff();
}

KrausChannel ad_qutrit(double p) {
  require_unit_interval(p, "ad_qutrit");
  Matrix e0 = Matrix::Zero(3, 3);
  e0(0, 0) = 1.0;
  e0(1, 1) = std::sqrt(1.0 - p);
  e0(2, 2) = 1.0;
  Matrix e1 = Matrix::Zero(3, 3);
  e1(0, 1) = std::sqrt(p);
  return KrausChannel("amplitude_damping", p, {e0, e1});
}

KrausChannel depol_qutrit(double p) {
  require_unit_interval(p, "depol_qutrit");
  const qlin::Complex i(0.0, 1.0);
  Matrix d0 = std::sqrt(1.0 - p) * Matrix::Identity(3, 3);
  Matrix dx = Matrix::Zero(3, 3);
  dx(0, 1) = dx(1, 0) = 1.0;
  dx(2, 2) = 1.0;
  Matrix dy = Matrix::Zero(3, 3);
  dy(0, 1) = -i;
  dy(1, 0) = i;
  dy(2, 2) = 1.0;
  Matrix dz = Matrix::Zero(3, 3);
  dz(0, 0) = 1.0;
  dz(1, 1) = -1.0;
  dz(2, 2) = 1.0;
  double w = std::sqrt(p / 3.0);
  return KrausChannel("depolarizing", p, {d0, w * dx, w * dy, w * dz});
}

KrausChannel identity_channel(int dim) {
  return KrausChannel("identity", 0.0, {Matrix::Identity(dim, dim)});
}

Matrix lift_operator(const qlin::SubsystemLayout& layout, const Matrix& op, Label target) {
  std::size_t pos = layout.position_of(target);
  if (layout.subsystems()[pos].dim != op.rows()) {
    throw std::invalid_argument("operator dimension does not match target subsystem");
  }
  long left = 1, right = 1;
  for (std::size_t i = 0; i < pos; ++i) left *= layout.subsystems()[i].dim;
  for (std::size_t i = pos + 1; i < layout.size(); ++i) right *= layout.subsystems()[i].dim;
  Matrix lifted = Eigen::kroneckerProduct(Matrix::Identity(left, left), op).eval();
  return Eigen::kroneckerProduct(lifted, Matrix::Identity(right, right));
}

DensityOperator apply_channel(const DensityOperator& rho, const KrausChannel& ch,
                              Label target) {
  Matrix out = Matrix::Zero(rho.dim(), rho.dim());
  for (const auto& op : ch.operators()) {
    Matrix lifted = lift_operator(rho.layout(), op, target);
    out += lifted * rho.matrix() * lifted.adjoint();
  }
  return DensityOperator(rho.layout(), std::move(out));
}

double p_from_time(double tau, double t) {
  if (tau < 0.0 || t < 0.0) throw std::invalid_argument("p_from_time needs nonnegative inputs");
  double p = 1.0 - std::exp(-tau * t / 2.0);
  return std::clamp(p, 0.0, 1.0);
}

}  // namespace ppsim::channels
