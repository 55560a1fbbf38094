#include "ppsim/closed_form.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ppsim::closed_form {

namespace {
qlin::ProbabilityTable empty_joint() {
  return qlin::ProbabilityTable({{"a", 2}, {"e", 2}, {"b", 4}});
}

void require_unit_interval(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("noise level must be in [0, 1]");
}
}  // namespace

qlin::ProbabilityTable noiseless_joint() {
  auto t = empty_joint();
  t.at({0, 0, 0}) = 0.5;
  t.at({1, 0, 0}) = t.at({1, 0, 1}) = t.at({1, 1, 0}) = t.at({1, 1, 1}) = 0.125;
  return t;
}

qlin::ProbabilityTable ad_joint(double p) {
  require_unit_interval(p);
  auto t = empty_joint();
  t.at({0, 0, 0}) = (2 - p) * (2 - p) / 8;
  t.at({0, 0, 1}) = p * p / 8;
  t.at({0, 0, 2}) = t.at({0, 0, 3}) = (2 - p) * p / 8;
  t.at({1, 0, 0}) = t.at({1, 0, 1}) = 1.0 / 8;
  t.at({1, 0, 2}) = t.at({1, 0, 3}) = (2 - p) * p / 8;
  t.at({1, 1, 0}) = t.at({1, 1, 1}) = (1 - p) * (1 - p) / 8;
  return t;
}

qlin::ProbabilityTable depol_joint(double p) {
  require_unit_interval(p);
  auto t = empty_joint();
  t.at({0, 0, 0}) = 0.5 + 3 * p * (p - 2) / 8;
  t.at({0, 0, 1}) = t.at({0, 0, 2}) = t.at({0, 0, 3}) = p * (2 - p) / 8;
  for (int e = 0; e < 2; ++e) {
    t.at({1, e, 0}) = t.at({1, e, 1}) = 1.0 / 8 + p * (p - 2) / 16;
    t.at({1, e, 2}) = t.at({1, e, 3}) = p * (2 - p) / 16;
  }
  return t;
}

Eigen::Matrix3d ad_reduced_ht(double p, int a) {
  require_unit_interval(p);
  Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
  if (a == 0) {
    m << (1 - p) * (1 - p), 1 - p, 0,
         1 - p, 1, 0,
         0, 0, p * (2 - p);
  } else if (a == 1) {
    m << (1 - p) * (1 - p), 0, 0,
         0, 1, 0,
         0, 0, p * (2 - p);
  } else {
    throw std::invalid_argument("encoding bit must be 0 or 1");
  }
  return 0.5 * m;
}

Eigen::Matrix4d depol_reduced_ht(double p, int a) {
  require_unit_interval(p);
  Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
  double edge = (2 - p) * p;
  double mid = (p - 2) * p + 2;
  m(0, 0) = m(3, 3) = edge;
  m(1, 1) = m(2, 2) = mid;
  if (a == 0) {
    m(1, 2) = m(2, 1) = 2 * (p - 1) * (p - 1);
  } else if (a != 1) {
    throw std::invalid_argument("encoding bit must be 0 or 1");
  }
  return 0.25 * m;
}

std::vector<double> ad_spectrum(double p, StatePick which) {
  require_unit_interval(p);
  std::vector<double> eigs;
  double pp = (p - 2) * p;
  switch (which) {
    case StatePick::a0:
      eigs = {0.0, -pp / 2, (pp + 2) / 2};
      break;
    case StatePick::a1:
      eigs = {0.5, (p - 1) * (p - 1) / 2, -pp / 2};
      break;
    case StatePick::average: {
      double s = std::sqrt(pp * (p - 1) * (p - 1) + 1);
      eigs = {(2 - p) * p / 2, (pp + s + 2) / 4, (pp - s + 2) / 4};
      break;
    }
  }
  std::sort(eigs.begin(), eigs.end());
  return eigs;
}

std::vector<double> depol_spectrum(double p, StatePick which) {
  require_unit_interval(p);
  double edge = (2 - p) * p;
  std::vector<double> eigs;
  switch (which) {
    case StatePick::a0:
      eigs = {edge / 4, edge / 4, edge / 4, (3 * (p - 2) * p + 4) / 4};
      break;
    case StatePick::a1:
      eigs = {edge / 4, edge / 4, ((p - 2) * p + 2) / 4, ((p - 2) * p + 2) / 4};
      break;
    case StatePick::average:
      eigs = {0.25, edge / 4, edge / 4, (2 * (p - 2) * p + 3) / 4};
      break;
  }
  std::sort(eigs.begin(), eigs.end());
  return eigs;
}

double classical_floor_tv(double p) {
  require_unit_interval(p);
  return p * (2 - p) / 4;
}

}  // namespace ppsim::closed_form
