#include "ppsim/qlin.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ppsim::qlin {

StateVector tensor(const StateVector& a, const StateVector& b) {
  SubsystemLayout layout = concat(a.layout(), b.layout());
  Vector amp = Eigen::kroneckerProduct(a.amplitudes(), b.amplitudes());
  return StateVector(std::move(layout), std::move(amp));
}

DensityOperator tensor(const DensityOperator& a, const DensityOperator& b) {
  SubsystemLayout layout = concat(a.layout(), b.layout());
  Matrix mat = Eigen::kroneckerProduct(a.matrix(), b.matrix());
  return DensityOperator(std::move(layout), std::move(mat));
}

DensityOperator partial_trace(const DensityOperator& rho, const std::vector<Label>& keep) {
  const auto& layout = rho.layout();
  std::vector<bool> kept(layout.size(), false);
  for (Label l : keep) kept[layout.position_of(l)] = true;

  std::vector<Subsystem> keep_subs, trace_subs;
  for (std::size_t i = 0; i < layout.size(); ++i) {
    (kept[i] ? keep_subs : trace_subs).push_back(layout.subsystems()[i]);
  }
  SubsystemLayout out_layout(keep_subs);

  long keep_dim = out_layout.total_dim();
  long trace_dim = layout.total_dim() / keep_dim;
  Matrix out = Matrix::Zero(keep_dim, keep_dim);

  // Walk all (kept row, kept col, traced diagonal) triples through the
  // row-major digit decomposition of the full space.
  std::vector<long> keep_strides, trace_strides;
  std::vector<int> keep_dims, trace_dims;
  for (std::size_t i = 0; i < layout.size(); ++i) {
    if (kept[i]) {
      keep_strides.push_back(layout.stride(i));
      keep_dims.push_back(layout.subsystems()[i].dim);
    } else {
      trace_strides.push_back(layout.stride(i));
      trace_dims.push_back(layout.subsystems()[i].dim);
    }
  }
  auto offset = [](long code, const std::vector<int>& dims, const std::vector<long>& strides) {
    long off = 0;
    for (std::size_t i = dims.size(); i-- > 0;) {
      off += (code % dims[i]) * strides[i];
      code /= dims[i];
    }
    return off;
  };

  for (long r = 0; r < keep_dim; ++r) {
    long row_off = offset(r, keep_dims, keep_strides);
    for (long c = 0; c < keep_dim; ++c) {
      long col_off = offset(c, keep_dims, keep_strides);
      Complex acc = 0.0;
      for (long d = 0; d < trace_dim; ++d) {
        long doff = offset(d, trace_dims, trace_strides);
        acc += rho.matrix()(row_off + doff, col_off + doff);
      }
      out(r, c) = acc;
    }
  }
  return DensityOperator(std::move(out_layout), std::move(out));
}

Eigen::VectorXd hermitian_spectrum(const Matrix& m, double herm_tol) {
  if (m.rows() != m.cols()) throw std::invalid_argument("matrix must be square");
  double dev = hermiticity_deviation(m);
  if (dev > herm_tol) {
    std::ostringstream os;
    os << "matrix deviates from Hermiticity by " << dev;
    throw std::invalid_argument(os.str());
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

Eigen::VectorXd hermitian_spectrum(const DensityOperator& rho, double herm_tol) {
  return hermitian_spectrum(rho.matrix(), herm_tol);
}

double von_neumann_entropy(const Matrix& m, double eig_tol) {
  Eigen::VectorXd eigs = hermitian_spectrum(m);
  double s = 0.0;
  for (long i = 0; i < eigs.size(); ++i) {
    double lam = eigs(i);
    if (lam < -eig_tol) {
      std::ostringstream os;
      os << "eigenvalue " << lam << " below positivity tolerance";
      throw std::invalid_argument(os.str());
    }
    lam = std::clamp(lam, 0.0, 1.0);
    if (lam > 0.0) s -= lam * std::log2(lam);
  }
  return std::max(s, 0.0);
}

double von_neumann_entropy(const DensityOperator& rho, double eig_tol) {
  return von_neumann_entropy(rho.matrix(), eig_tol);
}

double shannon_entropy(std::span<const double> probs) {
  double s = 0.0;
  for (double p : probs) {
    if (p > 0.0) s -= p * std::log2(p);
  }
  return s;
}

double mutual_information(const ProbabilityTable& joint, std::string_view axis1,
                          std::string_view axis2) {
  joint.check_normalized();
  ProbabilityTable pab = joint.marginal({std::string(axis1), std::string(axis2)});
  ProbabilityTable pa = pab.marginal({std::string(axis1)});
  ProbabilityTable pb = pab.marginal({std::string(axis2)});
  // I = H(A) + H(B) - H(A,B); all terms on clamped nonnegative entries.
  auto clamped = [](const std::vector<double>& v) {
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::max(v[i], 0.0);
    return out;
  };
  std::vector<double> va = clamped(pa.values());
  std::vector<double> vb = clamped(pb.values());
  std::vector<double> vab = clamped(pab.values());
  double info = shannon_entropy(va) + shannon_entropy(vb) - shannon_entropy(vab);
  return std::max(info, 0.0);
}

}  // namespace ppsim::qlin
