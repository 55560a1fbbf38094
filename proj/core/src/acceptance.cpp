#include "ppsim/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>
#include <sstream>

#include "ppsim/attack.hpp"
#include "ppsim/channels.hpp"
#include "ppsim/classical_sim.hpp"
#include "ppsim/closed_form.hpp"
#include "ppsim/io.hpp"
#include "ppsim/protocol.hpp"

namespace ppsim::acceptance {

namespace {

using protocol::ChannelKind;
using protocol::ProtocolConfig;
using qlin::Matrix;

struct Check {
  bool pass = true;
  std::vector<std::string> details;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      details.push_back(what);
    }
  }
  void note(const std::string& what) { details.push_back(what); }
};

std::string fmt(double v) { return io::format_value(v); }

std::vector<double> grid_11() { return protocol::linspace(0.0, 1.0, 11); }

std::vector<double> grid_05() {
  std::vector<double> g;
  for (int i = 1; i <= 20; ++i) g.push_back(0.05 * i);
  return g;
}

double table_max_dev(const qlin::ProbabilityTable& a, const qlin::ProbabilityTable& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.values().size(); ++i) {
    worst = std::max(worst, std::abs(a.values()[i] - b.values()[i]));
  }
  return worst;
}

/// Reduced (h, t) state restricted to the listed ht basis pairs, with a
/// check that everything outside that support is below tol.
Matrix restrict_ht(const qlin::DensityOperator& rho_ht,
                   const std::vector<std::pair<int, int>>& basis, double tol, Check& chk) {
  std::vector<int> keep;
  for (auto [h, t] : basis) keep.push_back(h * 3 + t);
  Matrix out(keep.size(), keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i)
    for (std::size_t j = 0; j < keep.size(); ++j) out(i, j) = rho_ht.matrix()(keep[i], keep[j]);
  double leak = 0.0;
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) {
      bool i_in = std::find(keep.begin(), keep.end(), i) != keep.end();
      bool j_in = std::find(keep.begin(), keep.end(), j) != keep.end();
      if (!i_in || !j_in) leak = std::max(leak, std::abs(rho_ht.matrix()(i, j)));
    }
  }
  chk.require(leak <= tol, "support leakage " + fmt(leak) + " outside listed basis");
  return out;
}

double spectrum_dev(const qlin::DensityOperator& rho, std::vector<double> expected) {
  Eigen::VectorXd eigs = qlin::hermitian_spectrum(rho);
  while (static_cast<long>(expected.size()) < eigs.size()) expected.push_back(0.0);
  std::sort(expected.begin(), expected.end());
  double worst = 0.0;
  for (long i = 0; i < eigs.size(); ++i) worst = std::max(worst, std::abs(eigs(i) - expected[i]));
  return worst;
}

qlin::DensityOperator average_ht(const protocol::JointDistribution& jd) {
  Matrix avg = 0.5 * (jd.reduced_ht[0].matrix() + jd.reduced_ht[1].matrix());
  return qlin::DensityOperator(jd.reduced_ht[0].layout(), std::move(avg));
}

qlin::DensityOperator random_density(std::mt19937_64& rng, int dim, int rank) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix m = Matrix::Zero(dim, dim);
  std::uniform_real_distribution<double> unif(0.1, 1.0);
  double total = 0.0;
  for (int k = 0; k < rank; ++k) {
    qlin::Vector v(dim);
    for (int i = 0; i < dim; ++i) v(i) = qlin::Complex(gauss(rng), gauss(rng));
    v.normalize();
    double w = unif(rng);
    total += w;
    m += w * (v * v.adjoint());
  }
  m /= total;
  return qlin::DensityOperator(qlin::SubsystemLayout::standard(), std::move(m));
}

// --- criteria -------------------------------------------------------------

Check criterion_noiseless_statistics() {
  Check chk;
  auto jd = protocol::run_pipeline({ChannelKind::none, 0.0});
  double dev = table_max_dev(jd.p_aeb, closed_form::noiseless_joint());
  chk.require(dev <= 1e-10, "joint table deviates by " + fmt(dev));

  auto m = protocol::metrics(jd);
  const double expected_info = 0.75 * std::log2(4.0 / 3.0);
  chk.require(std::abs(m.i_ab - expected_info) <= 1e-9,
              "I_AB = " + fmt(m.i_ab) + ", expected " + fmt(expected_info));
  chk.require(std::abs(m.i_ae - expected_info) <= 1e-9,
              "I_AE = " + fmt(m.i_ae) + ", expected " + fmt(expected_info));
  chk.require(std::abs(m.qber_raw - 0.25) <= 1e-10, "raw QBER = " + fmt(m.qber_raw));
  chk.require(std::abs(m.qber_sifted - 0.25) <= 1e-10, "sifted QBER = " + fmt(m.qber_sifted));
  return chk;
}

Check criterion_noiseless_final_state() {
  Check chk;
  auto jd = protocol::run_pipeline({ChannelKind::none, 0.0});
  for (int a = 0; a < 2; ++a) {
    qlin::Vector expected = qlin::Vector::Zero(54);
    const double s = 1.0 / std::sqrt(2.0);
    expected(((0 * 3 + 1) * 3 + 2) * 3 + a) = s;  // |0 1 2 a>
    expected(((1 * 3 + 0) * 3 + 2) * 3 + 0) = s;  // |1 0 2 0>
    double fidelity = (expected.adjoint() * jd.final_states[a].matrix() * expected)(0).real();
    chk.require(std::abs(1.0 - fidelity) <= 1e-10,
                "a=" + std::to_string(a) + " fidelity 1-F = " + fmt(1.0 - fidelity));
  }
  return chk;
}

Check criterion_ad_tables() {
  Check chk;
  for (double p : grid_11()) {
    auto jd = protocol::run_pipeline({ChannelKind::amplitude_damping, p});
    auto reference = closed_form::ad_joint(p);
    double dev = table_max_dev(jd.p_aeb, reference);
    if (dev > 1e-9) {
      chk.pass = false;
      std::ostringstream os;
      os << "p=" << fmt(p) << ": joint table deviates from the closed form by " << fmt(dev);
      for (int e = 0; e < 2; ++e) {
        for (int b = 0; b < 4; ++b) {
          for (int a = 0; a < 2; ++a) {
            double sim = jd.p_aeb.at({a, e, b});
            double ref = reference.at({a, e, b});
            if (std::abs(sim - ref) > 1e-9) {
              os << "; P" << a << e << b << " sim=" << fmt(sim) << " ref=" << fmt(ref);
            }
          }
        }
      }
      chk.note(os.str());
    }
    for (int a = 0; a < 2; ++a) {
      Matrix got = restrict_ht(jd.reduced_ht[a], {{0, 1}, {1, 0}, {0, 0}}, 1e-9, chk);
      Eigen::Matrix3d want = closed_form::ad_reduced_ht(p, a);
      double rdev = (got - want.cast<qlin::Complex>()).cwiseAbs().maxCoeff();
      chk.require(rdev <= 1e-9, "p=" + fmt(p) + " a=" + std::to_string(a) +
                                    ": reduced state deviates by " + fmt(rdev));
    }
    using closed_form::StatePick;
    chk.require(spectrum_dev(jd.reduced_ht[0], closed_form::ad_spectrum(p, StatePick::a0)) <= 1e-9,
                "p=" + fmt(p) + ": a=0 spectrum deviates");
    chk.require(spectrum_dev(jd.reduced_ht[1], closed_form::ad_spectrum(p, StatePick::a1)) <= 1e-9,
                "p=" + fmt(p) + ": a=1 spectrum deviates");
    chk.require(
        spectrum_dev(average_ht(jd), closed_form::ad_spectrum(p, StatePick::average)) <= 1e-9,
        "p=" + fmt(p) + ": average spectrum deviates");
  }
  return chk;
}

Check criterion_depol_tables() {
  Check chk;
  for (double p : grid_11()) {
    auto jd = protocol::run_pipeline({ChannelKind::depolarizing, p});
    double dev = table_max_dev(jd.p_aeb, closed_form::depol_joint(p));
    chk.require(dev <= 1e-9, "p=" + fmt(p) + ": joint table deviates by " + fmt(dev));

    for (int a = 0; a < 2; ++a) {
      Matrix got = restrict_ht(jd.reduced_ht[a], {{0, 0}, {0, 1}, {1, 0}, {1, 1}}, 1e-9, chk);
      Eigen::Matrix4d want = closed_form::depol_reduced_ht(p, a);
      double rdev = (got - want.cast<qlin::Complex>()).cwiseAbs().maxCoeff();
      chk.require(rdev <= 1e-9, "p=" + fmt(p) + " a=" + std::to_string(a) +
                                    ": reduced state deviates by " + fmt(rdev));
    }
    using closed_form::StatePick;
    chk.require(
        spectrum_dev(jd.reduced_ht[0], closed_form::depol_spectrum(p, StatePick::a0)) <= 1e-9,
        "p=" + fmt(p) + ": a=0 spectrum deviates");
    chk.require(
        spectrum_dev(jd.reduced_ht[1], closed_form::depol_spectrum(p, StatePick::a1)) <= 1e-9,
        "p=" + fmt(p) + ": a=1 spectrum deviates");
    chk.require(
        spectrum_dev(average_ht(jd), closed_form::depol_spectrum(p, StatePick::average)) <= 1e-9,
        "p=" + fmt(p) + ": average spectrum deviates");

    auto pae = jd.p_aeb.marginal({"a", "e"});
    const double expect[2][2] = {{0.5, 0.0}, {0.25, 0.25}};
    for (int a = 0; a < 2; ++a)
      for (int e = 0; e < 2; ++e)
        chk.require(std::abs(pae.at({a, e}) - expect[a][e]) <= 1e-9,
                    "p=" + fmt(p) + ": P_AE(" + std::to_string(a) + "," + std::to_string(e) +
                        ") = " + fmt(pae.at({a, e})));
  }
  return chk;
}

Check criterion_ad_advantage() {
  Check chk;
  for (double p : grid_05()) {
    auto jd = protocol::run_pipeline({ChannelKind::amplitude_damping, p});
    auto m = protocol::metrics(jd);
    if (m.key_rate <= 0.0) {
      chk.pass = false;
      chk.note("p=" + fmt(p) + ": key rate = " + fmt(m.key_rate) + " (not positive)");
    }
    chk.require(m.holevo >= m.i_ab - 1e-9,
                "p=" + fmt(p) + ": Holevo " + fmt(m.holevo) + " below I_AB " + fmt(m.i_ab));
  }
  auto m0 = protocol::metrics(protocol::run_pipeline({ChannelKind::amplitude_damping, 0.0}));
  chk.require(std::abs(m0.holevo - m0.i_ab) < 1e-6,
              "p=0: |Holevo - I_AB| = " + fmt(std::abs(m0.holevo - m0.i_ab)));
  return chk;
}

Check criterion_depol_nullity() {
  Check chk;
  double i_ae_ref = protocol::metrics(protocol::run_pipeline({ChannelKind::depolarizing, 0.0})).i_ae;
  for (double p : grid_05()) {
    auto m = protocol::metrics(protocol::run_pipeline({ChannelKind::depolarizing, p}));
    chk.require(std::abs(m.i_ae - i_ae_ref) <= 1e-9,
                "p=" + fmt(p) + ": I_AE drifted to " + fmt(m.i_ae));
    chk.require(m.key_rate <= 1e-12, "p=" + fmt(p) + ": key rate " + fmt(m.key_rate) + " > 0");
    chk.require(std::abs(m.holevo - m.i_ab) < 1e-9,
                "p=" + fmt(p) + ": |Holevo - I_AB| = " + fmt(std::abs(m.holevo - m.i_ab)));
  }
  return chk;
}

Check criterion_unitality_witness() {
  Check chk;
  Matrix block_mixed = Matrix::Zero(3, 3);
  block_mixed(0, 0) = block_mixed(1, 1) = 0.5;
  auto trace_distance = [](const Matrix& a, const Matrix& b) {
    Eigen::VectorXd eigs = qlin::hermitian_spectrum(Matrix(a - b));
    return 0.5 * eigs.cwiseAbs().sum();
  };
  auto apply3 = [](const channels::KrausChannel& ch, const Matrix& rho) {
    Matrix out = Matrix::Zero(3, 3);
    for (const auto& k : ch.operators()) out += k * rho * k.adjoint();
    return out;
  };
  for (double p : grid_11()) {
    Matrix depol_out = apply3(channels::depol_qutrit(p), block_mixed);
    double fix_dev = (depol_out - block_mixed).cwiseAbs().maxCoeff();
    chk.require(fix_dev <= 1e-12,
                "p=" + fmt(p) + ": depolarizing moves the block-mixed state by " + fmt(fix_dev));

    Matrix ad_out = apply3(channels::ad_qutrit(p), block_mixed);
    double dist = trace_distance(ad_out, block_mixed);
    chk.require(dist >= p / 2 - 1e-12,
                "p=" + fmt(p) + ": damping displacement " + fmt(dist) + " < p/2");
  }
  return chk;
}

Check criterion_classical_infeasibility() {
  Check chk;
  const struct {
    double p;
    double floor;  // frozen grid + refinement oracle minima (= p(2-p)/4)
  } cases[] = {{0.2, 0.09}, {0.5, 0.1875}, {0.8, 0.24}};
  for (const auto& c : cases) {
    auto checks = classical_sim::contradiction_checks(c.p);
    chk.require(checks.zero_row_applies, "p=" + fmt(c.p) + ": zero-row premise violated");
    chk.require(checks.branch_alice_never_zero.contradiction,
                "p=" + fmt(c.p) + ": never-zero branch not contradicted");
    chk.require(checks.branch_alice_identity.contradiction,
                "p=" + fmt(c.p) + ": identity branch not contradicted");

    auto report = classical_sim::search_feasibility(c.p);
    chk.require(report.min_distance > 0.9 * c.floor,
                "p=" + fmt(c.p) + ": search found distance " + fmt(report.min_distance) +
                    " below 90% of the frozen floor " + fmt(c.floor));
    chk.require(!report.budget_exhausted, "p=" + fmt(c.p) + ": search budget exhausted");

    double threshold =
        classical_sim::claim_threshold(c.p, classical_sim::DistanceMetric::total_variation);
    bool falsified = report.min_distance < threshold || !checks.all_confirmed();
    chk.require(!falsified, "p=" + fmt(c.p) + ": exit-code contract would report falsification");
  }
  return chk;
}

Check criterion_structural_properties() {
  Check chk;
  for (double p : grid_11()) {
    chk.require(channels::ad_qutrit(p).completeness_deviation() <= 1e-12,
                "p=" + fmt(p) + ": damping completeness");
    chk.require(channels::depol_qutrit(p).completeness_deviation() <= 1e-12,
                "p=" + fmt(p) + ": depolarizing completeness");
  }

  auto unitarity = [](const Matrix& u) {
    long n = u.rows();
    return (u.adjoint() * u - Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
  };
  auto ops = attack::build_q();
  chk.require(unitarity(ops.cpbs) <= 1e-12, "CPBS unitarity");
  chk.require(unitarity(ops.swap_tx) <= 1e-12, "SWAP unitarity");
  chk.require(unitarity(ops.h_y) <= 1e-12, "probe Hadamard unitarity");
  chk.require(unitarity(ops.q) <= 1e-12, "Q unitarity");
  chk.require((ops.q_inverse * ops.q - Matrix::Identity(27, 27)).cwiseAbs().maxCoeff() <= 1e-12,
              "Q^-1 Q = I");

  chk.require(attack::build_bell_measurement().resolution_deviation() <= 1e-12,
              "Bell projector resolution");

  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  for (int rep = 0; rep < 6; ++rep) {
    auto rho = random_density(rng, 54, 4);
    for (auto kind : {ChannelKind::amplitude_damping, ChannelKind::depolarizing}) {
      auto ch = protocol::pipeline_channel({kind, 0.3 + 0.1 * rep});
      auto out = channels::apply_channel(rho, ch, qlin::Label::t);
      chk.require(std::abs(out.trace() - 1.0) <= 1e-10, "random-state trace preservation");
      double min_eig = qlin::hermitian_spectrum(out).minCoeff();
      chk.require(min_eig >= -1e-10, "random-state positivity, min eig " + fmt(min_eig));
    }
  }

  for (auto kind : {ChannelKind::amplitude_damping, ChannelKind::depolarizing}) {
    for (double p : grid_11()) {
      auto jd = protocol::run_pipeline({kind, p});
      for (int a = 0; a < 2; ++a) {
        auto res = attack::measure(jd.final_states[a]);
        chk.require(res.x_purity_deviation <= 1e-10,
                    protocol::channel_name(kind) + " p=" + fmt(p) + ": x-probe impurity " +
                        fmt(res.x_purity_deviation));
        chk.require(res.vacuum_mass() < 1e-10, protocol::channel_name(kind) + " p=" + fmt(p) +
                                                   ": vacuum outcome mass " +
                                                   fmt(res.vacuum_mass()));
        chk.require(res.residual_mass() < 1e-10, protocol::channel_name(kind) + " p=" + fmt(p) +
                                                     ": residual outcome mass " +
                                                     fmt(res.residual_mass()));
      }
    }
  }
  return chk;
}

Check criterion_determinism() {
  Check chk;
  auto grid = protocol::linspace(0.0, 1.0, 101);
  std::string serial_a = io::render_sweep_csv(protocol::sweep(ChannelKind::amplitude_damping, grid, 1));
  std::string serial_b = io::render_sweep_csv(protocol::sweep(ChannelKind::amplitude_damping, grid, 1));
  std::string parallel = io::render_sweep_csv(protocol::sweep(ChannelKind::amplitude_damping, grid, 4));
  chk.require(serial_a == serial_b, "repeated sequential sweeps differ");
  chk.require(serial_a == parallel, "parallel sweep differs from sequential");
  return chk;
}

}  // namespace

CriterionResult run_criterion(int id) {
  struct Entry {
    const char* name;
    Check (*fn)();
  };
  static const Entry entries[kCriterionCount] = {
      {"noiseless attack statistics", criterion_noiseless_statistics},
      {"noiseless final state", criterion_noiseless_final_state},
      {"amplitude-damping tables", criterion_ad_tables},
      {"depolarizing tables", criterion_depol_tables},
      {"amplitude-damping advantage curve", criterion_ad_advantage},
      {"depolarizing nullity", criterion_depol_nullity},
      {"unitality witness", criterion_unitality_witness},
      {"classical-noise infeasibility", criterion_classical_infeasibility},
      {"structural properties", criterion_structural_properties},
      {"determinism", criterion_determinism},
  };
  if (id < 1 || id > kCriterionCount) throw std::invalid_argument("criterion id out of range");
  const Entry& e = entries[id - 1];
  CriterionResult result;
  result.id = id;
  result.name = e.name;
  try {
    Check chk = e.fn();
    result.pass = chk.pass;
    result.details = std::move(chk.details);
  } catch (const std::exception& ex) {
    result.pass = false;
    result.details.push_back(std::string("exception: ") + ex.what());
  }
  return result;
}

bool run_all(std::ostream& os, int id) {
  bool all_pass = true;
  for (int i = 1; i <= kCriterionCount; ++i) {
    if (id != 0 && i != id) continue;
    CriterionResult r = run_criterion(i);
    os << "criterion " << r.id << " (" << r.name << "): " << (r.pass ? "PASS" : "FAIL") << '\n';
    std::size_t shown = 0;
    for (const auto& d : r.details) {
      if (++shown > 8) {
        os << "    ... " << (r.details.size() - 8) << " more\n";
        break;
      }
      os << "    " << d << '\n';
    }
    all_pass = all_pass && r.pass;
  }
  return all_pass;
}

}  // namespace ppsim::acceptance
