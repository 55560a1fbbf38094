#include "ppsim/attack.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ppsim/channels.hpp"

namespace ppsim::attack {

namespace {

int idx_txy(int t, int x, int y) { return (t * 3 + x) * 3 + y; }

qlin::Vector ht_basis(int h, int t) {
  qlin::Vector v = qlin::Vector::Zero(6);
  v(h * 3 + t) = 1.0;
  return v;
}

}  // namespace

Matrix build_cpbs() {
  Matrix u = Matrix::Identity(27, 27);
  const std::array<std::pair<int, int>, 2> swaps = {{
      {idx_txy(0, 2, 0), idx_txy(0, 0, 2)},
      {idx_txy(1, 2, 1), idx_txy(1, 1, 2)},
  }};
  for (auto [i, j] : swaps) {
    u(i, i) = u(j, j) = 0.0;
    u(i, j) = u(j, i) = 1.0;
  }
  return u;
}

Matrix build_probe_hadamard() {
  Matrix h = Matrix::Zero(3, 3);
  const double s = 1.0 / std::sqrt(2.0);
  h(0, 0) = h(0, 1) = h(1, 0) = s;
  h(1, 1) = -s;
  h(2, 2) = 1.0;
  return h;
}

Matrix build_swap_tx() {
  Matrix u = Matrix::Zero(27, 27);
  for (int t = 0; t < 3; ++t)
    for (int x = 0; x < 3; ++x)
      for (int y = 0; y < 3; ++y) u(idx_txy(x, t, y), idx_txy(t, x, y)) = 1.0;
  return u;
}

AttackOperators build_q() {
  AttackOperators ops;
  ops.cpbs = build_cpbs();
  ops.h_y = build_probe_hadamard();
  ops.swap_tx = build_swap_tx();
  qlin::SubsystemLayout txy{{qlin::Label::t, 3}, {qlin::Label::x, 3}, {qlin::Label::y, 3}};
  Matrix h_y27 = channels::lift_operator(txy, ops.h_y, qlin::Label::y);
  ops.q = ops.swap_tx * ops.cpbs * h_y27;
  ops.q_inverse = ops.q.adjoint();
  return ops;
}

Matrix encoding_operator(int bit) {
  if (bit != 0 && bit != 1) throw std::invalid_argument("encoding bit must be 0 or 1");
  Matrix m = Matrix::Identity(3, 3);
  if (bit == 1) m(1, 1) = -1.0;
  return m;
}

double BellMeasurement::resolution_deviation() const {
  double worst = 0.0;
  Matrix sum = Matrix::Zero(6, 6);
  for (std::size_t i = 0; i < projectors.size(); ++i) {
    sum += projectors[i];
    worst = std::max(worst,
                     (projectors[i] * projectors[i] - projectors[i]).cwiseAbs().maxCoeff());
    for (std::size_t j = i + 1; j < projectors.size(); ++j) {
      worst = std::max(worst, (projectors[i] * projectors[j]).cwiseAbs().maxCoeff());
    }
  }
  worst = std::max(worst, (sum - Matrix::Identity(6, 6)).cwiseAbs().maxCoeff());
  return worst;
}

BellMeasurement build_bell_measurement() {
  const double s = 1.0 / std::sqrt(2.0);
  qlin::Vector psi_plus = s * (ht_basis(0, 1) + ht_basis(1, 0));
  qlin::Vector psi_minus = s * (ht_basis(0, 1) - ht_basis(1, 0));
  qlin::Vector phi_plus = s * (ht_basis(0, 0) + ht_basis(1, 1));
  qlin::Vector phi_minus = s * (ht_basis(0, 0) - ht_basis(1, 1));

  BellMeasurement bm;
  const std::array<qlin::Vector, 4> bells = {psi_plus, psi_minus, phi_plus, phi_minus};
  Matrix acc = Matrix::Zero(6, 6);
  for (int i = 0; i < 4; ++i) {
    bm.projectors[i] = bells[i] * bells[i].adjoint();
    acc += bm.projectors[i];
  }
  bm.projectors[kResidualOutcome] = Matrix::Identity(6, 6) - acc;
  return bm;
}

double MeasureResult::vacuum_mass() const {
  double m = 0.0;
  for (int b = 0; b < 5; ++b) m += eb.at({kVacuumOutcome, b});
  return m;
}

double MeasureResult::residual_mass() const {
  double m = 0.0;
  for (int e = 0; e < 3; ++e) m += eb.at({e, kResidualOutcome});
  return m;
}

MeasureResult measure(const DensityOperator& rho_htxy, const MeasureOptions& opts) {
  const auto& layout = rho_htxy.layout();
  if (layout != qlin::SubsystemLayout::standard()) {
    throw std::invalid_argument("measure expects the standard (h,t,x,y) layout");
  }

  // The x probe must have returned to the vacuum state.
  DensityOperator rho_x = qlin::partial_trace(rho_htxy, {qlin::Label::x});
  Matrix vac = Matrix::Zero(3, 3);
  vac(2, 2) = 1.0;
  double x_dev = (rho_x.matrix() - vac).cwiseAbs().maxCoeff();
  if (opts.enforce_x_purity && x_dev > opts.x_purity_tol) {
    std::ostringstream os;
    os << "x probe deviates from |2><2| by " << x_dev << " (pipeline bug?)";
    throw std::runtime_error(os.str());
  }

  static const BellMeasurement bell = build_bell_measurement();

  // Bell projectors act on the leading (h, t) pair, so their lift is
  // projector (x) I_9 on the x,y tail.
  std::array<Matrix, 5> pb_full;
  for (int b = 0; b < 5; ++b) {
    Matrix pb = Matrix::Zero(54, 54);
    for (int r = 0; r < 6; ++r)
      for (int c = 0; c < 6; ++c)
        if (bell.projectors[b](r, c) != qlin::Complex(0.0, 0.0))
          for (int k = 0; k < 9; ++k) pb(r * 9 + k, c * 9 + k) = bell.projectors[b](r, c);
    pb_full[b] = std::move(pb);
  }

  MeasureResult result{qlin::ProbabilityTable({{"e", 3}, {"b", 5}}), x_dev};
  for (int e = 0; e < 3; ++e) {
    Matrix proj_e = Matrix::Zero(3, 3);
    proj_e(e, e) = 1.0;
    Matrix pe = channels::lift_operator(layout, proj_e, qlin::Label::y);
    for (int b = 0; b < 5; ++b) {
      double prob = (pb_full[b] * pe * rho_htxy.matrix()).trace().real();
      result.eb.at({e, b}) = std::max(prob, 0.0);
    }
  }
  return result;
}

}  // namespace ppsim::attack
