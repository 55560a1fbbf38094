#include "ppsim/protocol.hpp"

#include <atomic>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace ppsim::protocol {

namespace {

using qlin::Label;
using qlin::Matrix;
using qlin::StateVector;
using qlin::SubsystemLayout;
using qlin::Vector;

constexpr double kTailTol = 1e-10;

StateVector initial_state() {
  SubsystemLayout ht{{Label::h, 2}, {Label::t, 3}};
  Vector psi_plus = Vector::Zero(6);
  psi_plus(0 * 3 + 1) = 1.0 / std::sqrt(2.0);  // |01>
  psi_plus(1 * 3 + 0) = 1.0 / std::sqrt(2.0);  // |10>
  StateVector bell(ht, psi_plus);
  StateVector probe_x = StateVector::basis(Label::x, 3, 2);
  StateVector probe_y = StateVector::basis(Label::y, 3, 0);
  return qlin::tensor(qlin::tensor(bell, probe_x), probe_y);
}

struct LiftedOperators {
  std::vector<Matrix> channel_ops;  // lifted Kraus operators
  Matrix q;
  Matrix q_inverse;
  Matrix encode[2];
};

LiftedOperators lift_all(const SubsystemLayout& layout, const channels::KrausChannel& ch) {
  LiftedOperators ops;
  for (const auto& k : ch.operators()) {
    ops.channel_ops.push_back(channels::lift_operator(layout, k, Label::t));
  }
  attack::AttackOperators q = attack::build_q();
  // Q acts on the (t, x, y) tail, identity on the leading h qubit.
  auto lift_txy = [](const Matrix& m) {
    Matrix full = Matrix::Zero(54, 54);
    full.block(0, 0, 27, 27) = m;
    full.block(27, 27, 27, 27) = m;
    return full;
  };
  ops.q = lift_txy(q.q);
  ops.q_inverse = lift_txy(q.q_inverse);
  ops.encode[0] = channels::lift_operator(layout, attack::encoding_operator(0), Label::t);
  ops.encode[1] = channels::lift_operator(layout, attack::encoding_operator(1), Label::t);
  return ops;
}

Matrix kraus_apply(const std::vector<Matrix>& lifted, const Matrix& rho) {
  Matrix out = Matrix::Zero(rho.rows(), rho.cols());
  for (const auto& k : lifted) out += k * rho * k.adjoint();
  return out;
}

void check_state(const Matrix& m, const char* stage) {
  double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
  double trace_dev = std::abs(m.trace() - qlin::Complex(1.0, 0.0));
  if (herm > 1e-10 || trace_dev > 1e-10) {
    std::ostringstream os;
    os << "pipeline state invalid after " << stage << ": hermiticity " << herm
       << ", trace deviation " << trace_dev;
    throw std::runtime_error(os.str());
  }
}

}  // namespace

std::string channel_name(ChannelKind kind) {
  switch (kind) {
    case ChannelKind::none: return "none";
    case ChannelKind::amplitude_damping: return "amplitude_damping";
    case ChannelKind::depolarizing: return "depolarizing";
  }
  return "?";
}

channels::KrausChannel pipeline_channel(const ProtocolConfig& cfg) {
  switch (cfg.kind) {
    case ChannelKind::none:
      return channels::identity_channel(3);
    case ChannelKind::amplitude_damping:
      return channels::ad_qutrit(cfg.p);
    case ChannelKind::depolarizing:
      return channels::depol_qutrit(0.75 * cfg.p);
  }
  throw std::invalid_argument("unknown channel kind");
}

JointDistribution run_pipeline(const ProtocolConfig& cfg) {
  if (!(cfg.p >= 0.0 && cfg.p <= 1.0)) {
    throw std::invalid_argument("noise level must be in [0, 1]");
  }
  const SubsystemLayout layout = SubsystemLayout::standard();
  const channels::KrausChannel ch = pipeline_channel(cfg);
  const LiftedOperators ops = lift_all(layout, ch);
  const bool standard_order = cfg.ordering == NoiseOrdering::noise_before_attack;

  const DensityOperator rho_init = DensityOperator::from_state(initial_state());

  std::vector<DensityOperator> finals;
  std::vector<DensityOperator> reduced;
  std::vector<attack::MeasureResult> measured;
  for (int a = 0; a < 2; ++a) {
    Matrix rho = rho_init.matrix();
    if (standard_order) {
      rho = kraus_apply(ops.channel_ops, rho);            // onward noise
      rho = ops.q * rho * ops.q.adjoint();                // probe attack
    } else {
      rho = ops.q * rho * ops.q.adjoint();
      rho = kraus_apply(ops.channel_ops, rho);
    }
    rho = ops.encode[a] * rho * ops.encode[a].adjoint();  // Alice's bit
    if (standard_order) {
      rho = ops.q_inverse * rho * ops.q_inverse.adjoint();
      rho = kraus_apply(ops.channel_ops, rho);            // return noise
    } else {
      rho = kraus_apply(ops.channel_ops, rho);
      rho = ops.q_inverse * rho * ops.q_inverse.adjoint();
    }
    check_state(rho, "pipeline");

    DensityOperator state(layout, std::move(rho));
    attack::MeasureOptions mopts;
    mopts.enforce_x_purity = standard_order;
    measured.push_back(attack::measure(state, mopts));
    reduced.push_back(qlin::partial_trace(state, {Label::h, Label::t}));
    finals.push_back(std::move(state));
  }

  if (standard_order) {
    // The published supports contain no vacuum probe outcomes and no
    // residual Bell outcomes; anything there signals a pipeline bug.
    for (int a = 0; a < 2; ++a) {
      if (measured[a].vacuum_mass() > kTailTol) {
        throw std::runtime_error("unexpected vacuum probe outcome mass");
      }
      if (measured[a].residual_mass() > kTailTol) {
        throw std::runtime_error("unexpected residual Bell outcome mass");
      }
    }
    qlin::ProbabilityTable table({{"a", 2}, {"e", 2}, {"b", 4}});
    for (int a = 0; a < 2; ++a)
      for (int e = 0; e < 2; ++e)
        for (int b = 0; b < 4; ++b) table.at({a, e, b}) = 0.5 * measured[a].eb.at({e, b});
    table.check_normalized();
    return JointDistribution{std::move(table), std::move(finals), std::move(reduced)};
  }

  qlin::ProbabilityTable table({{"a", 2}, {"e", 3}, {"b", 5}});
  for (int a = 0; a < 2; ++a)
    for (int e = 0; e < 3; ++e)
      for (int b = 0; b < 5; ++b) table.at({a, e, b}) = 0.5 * measured[a].eb.at({e, b});
  table.check_normalized();
  return JointDistribution{std::move(table), std::move(finals), std::move(reduced)};
}

double holevo_bound(const DensityOperator& rho0, const DensityOperator& rho1) {
  if (rho0.dim() != rho1.dim()) {
    throw std::invalid_argument("holevo_bound needs equal dimensions");
  }
  Matrix avg = 0.5 * (rho0.matrix() + rho1.matrix());
  double chi = qlin::von_neumann_entropy(avg) -
               0.5 * (qlin::von_neumann_entropy(rho0) + qlin::von_neumann_entropy(rho1));
  return std::max(chi, 0.0);
}

ProtocolMetrics metrics(const JointDistribution& jd) {
  jd.p_aeb.check_normalized();
  ProtocolMetrics m;
  m.i_ab = qlin::mutual_information(jd.p_aeb, "a", "b");
  m.i_ae = qlin::mutual_information(jd.p_aeb, "a", "e");
  m.key_rate = m.i_ab - m.i_ae;

  const int n_e = jd.p_aeb.axis_size("e");
  const int n_b = jd.p_aeb.axis_size("b");
  double err_raw = 0.0, err_sifted = 0.0, sifted_mass = 0.0;
  for (int a = 0; a < 2; ++a) {
    for (int e = 0; e < n_e; ++e) {
      for (int b = 0; b < n_b; ++b) {
        double v = jd.p_aeb.at({a, e, b});
        bool sifted = b < 2;
        if (sifted) {
          sifted_mass += v;
          if (b != a) err_sifted += v;
        }
        if (b != a || !sifted) err_raw += v;  // outcomes beyond psi+- count as errors
      }
    }
  }
  m.qber_raw = err_raw;
  m.qber_sifted = sifted_mass > 0.0 ? err_sifted / sifted_mass : 0.0;

  m.holevo = holevo_bound(jd.reduced_ht[0], jd.reduced_ht[1]);

  if (m.i_ab < -1e-12 || m.i_ab > 1.0 + 1e-9 || m.i_ae < -1e-12 || m.i_ae > 1.0 + 1e-9) {
    throw std::runtime_error("mutual information outside [0, 1]");
  }
  if (m.i_ab > m.holevo + 1e-9) {
    throw std::runtime_error("I_AB exceeds the Holevo bound");
  }
  return m;
}

std::vector<double> linspace(double p_start, double p_end, int steps) {
  if (steps < 2) throw std::invalid_argument("sweep needs at least 2 steps");
  if (!(p_start >= 0.0 && p_end <= 1.0 && p_start <= p_end)) {
    throw std::invalid_argument("sweep range must satisfy 0 <= start <= end <= 1");
  }
  std::vector<double> grid(steps);
  for (int i = 0; i < steps; ++i) {
    grid[i] = p_start + (p_end - p_start) * static_cast<double>(i) / (steps - 1);
  }
  return grid;
}

std::vector<SweepPoint> sweep(ChannelKind kind, const std::vector<double>& grid, int jobs) {
  for (double p : grid) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("grid point outside [0, 1]");
  }
  std::vector<SweepPoint> out(grid.size());
  if (jobs <= 0) {
    jobs = static_cast<int>(std::thread::hardware_concurrency());
    if (jobs <= 0) jobs = 1;
  }
  jobs = std::min<int>(jobs, static_cast<int>(grid.size()));

  auto eval_point = [&](std::size_t i) {
    ProtocolConfig cfg{kind, grid[i]};
    JointDistribution jd = run_pipeline(cfg);
    out[i] = SweepPoint{grid[i], metrics(jd)};
  };

  if (jobs <= 1) {
    for (std::size_t i = 0; i < grid.size(); ++i) eval_point(i);
    return out;
  }

  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(jobs);
  std::vector<std::thread> workers;
  workers.reserve(jobs);
  for (int w = 0; w < jobs; ++w) {
    workers.emplace_back([&, w] {
      try {
        for (std::size_t i = next.fetch_add(1); i < grid.size(); i = next.fetch_add(1)) {
          eval_point(i);
        }
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : workers) th.join();
  for (auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }
  return out;
}

}  // namespace ppsim::protocol
