#ifndef PPSIM_TESTS_HELPERS_HPP
#define PPSIM_TESTS_HELPERS_HPP

#include <cmath>
#include <random>

#include "ppsim/classical_sim.hpp"
#include "ppsim/qlin.hpp"

namespace test_helpers {

using ppsim::qlin::Complex;
using ppsim::qlin::Matrix;
using ppsim::qlin::Vector;

/// Joint distribution the damped pipeline actually produces, derived by
/// tracking the Kraus branches through the attack by hand:
///  - a=0 keeps both noise events at probe value 0, so the phi mass is
///    (2-p)p/8 per outcome at e=0;
///  - a=1 splits it: the onward damping leaves e=0 (weight p/8 per phi
///    outcome) while the return damping hits the component whose probe
///    already reads 1 (weight p(1-p)/8 per phi outcome at e=1).
/// This disagrees with the library's closed-form table in exactly those
/// four entries; the simulation is tested against this oracle.
inline ppsim::qlin::ProbabilityTable derived_ad_joint(double p) {
  ppsim::qlin::ProbabilityTable t({{"a", 2}, {"e", 2}, {"b", 4}});
  t.at({0, 0, 0}) = (2 - p) * (2 - p) / 8;
  t.at({0, 0, 1}) = p * p / 8;
  t.at({0, 0, 2}) = t.at({0, 0, 3}) = (2 - p) * p / 8;
  t.at({1, 0, 0}) = t.at({1, 0, 1}) = 1.0 / 8;
  t.at({1, 0, 2}) = t.at({1, 0, 3}) = p / 8;
  t.at({1, 1, 0}) = t.at({1, 1, 1}) = (1 - p) * (1 - p) / 8;
  t.at({1, 1, 2}) = t.at({1, 1, 3}) = p * (1 - p) / 8;
  return t;
}

/// Mutual information computed the direct way, sum p log p/(q r), as an
/// oracle independent of the entropy-identity implementation.
inline double direct_mutual_information(const ppsim::qlin::ProbabilityTable& joint,
                                        const std::string& ax1, const std::string& ax2) {
  auto pab = joint.marginal({ax1, ax2});
  auto pa = pab.marginal({ax1});
  auto pb = pab.marginal({ax2});
  int na = pa.axes()[0].size;
  int nb = pb.axes()[0].size;
  double info = 0.0;
  for (int i = 0; i < na; ++i) {
    for (int j = 0; j < nb; ++j) {
      double pij = pab.at({i, j});
      if (pij > 0.0) info += pij * std::log2(pij / (pa.at({i}) * pb.at({j})));
    }
  }
  return info;
}

inline Vector random_pure(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = Complex(gauss(rng), gauss(rng));
  v.normalize();
  return v;
}

inline Matrix random_density_matrix(std::mt19937_64& rng, int dim, int rank) {
  std::uniform_real_distribution<double> unif(0.1, 1.0);
  Matrix m = Matrix::Zero(dim, dim);
  double total = 0.0;
  for (int k = 0; k < rank; ++k) {
    Vector v = random_pure(rng, dim);
    double w = unif(rng);
    total += w;
    m += w * (v * v.adjoint());
  }
  return m / total;
}

inline ppsim::qlin::ProbabilityTable random_joint_table(std::mt19937_64& rng, int na, int ne,
                                                        int nb) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> vals(static_cast<std::size_t>(na) * ne * nb);
  double total = 0.0;
  for (auto& v : vals) {
    v = unif(rng);
    total += v;
  }
  for (auto& v : vals) v /= total;
  return ppsim::qlin::ProbabilityTable({{"a", na}, {"e", ne}, {"b", nb}}, vals);
}

inline ppsim::classical_sim::LocalNoiseModel random_model(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  ppsim::classical_sim::LocalNoiseModel m;
  m.alice.alpha = unif(rng);
  m.alice.g = unif(rng);
  m.alice.h = unif(rng);
  m.alice.r = unif(rng);
  m.bob.beta = unif(rng);
  auto random_row = [&] {
    std::array<double, 4> row;
    double total = 0.0;
    for (auto& v : row) {
      v = unif(rng) + 1e-3;
      total += v;
    }
    for (auto& v : row) v /= total;
    return row;
  };
  m.bob.rows[0] = random_row();
  m.bob.rows[1] = random_row();
  m.bob.coin = random_row();
  return m;
}

}  // namespace test_helpers

#endif
