#include "ppsim/prob_table.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ppsim::qlin {

namespace {
long total_size(const std::vector<Axis>& axes) {
  long n = 1;
  for (const auto& ax : axes) {
    if (ax.size < 1) throw std::invalid_argument("axis size must be positive");
    n *= ax.size;
  }
  return n;
}
}  // namespace

ProbabilityTable::ProbabilityTable(std::vector<Axis> axes, std::vector<double> values)
    : axes_(std::move(axes)), values_(std::move(values)) {
  if (static_cast<long>(values_.size()) != total_size(axes_)) {
    throw std::invalid_argument("value count does not match axis sizes");
  }
}

ProbabilityTable::ProbabilityTable(std::vector<Axis> axes)
    : axes_(std::move(axes)), values_(total_size(axes_), 0.0) {}

std::size_t ProbabilityTable::axis_position(std::string_view name) const {
  for (std::size_t i = 0; i < axes_.size(); ++i) {
    if (axes_[i].name == name) return i;
  }
  throw std::invalid_argument("unknown axis '" + std::string(name) + "'");
}

int ProbabilityTable::axis_size(std::string_view name) const {
  return axes_[axis_position(name)].size;
}

long ProbabilityTable::flat(const std::vector<int>& idx) const {
  if (idx.size() != axes_.size()) throw std::invalid_argument("index rank mismatch");
  long f = 0;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] < 0 || idx[i] >= axes_[i].size) {
      throw std::invalid_argument("index out of range");
    }
    f = f * axes_[i].size + idx[i];
  }
  return f;
}

double& ProbabilityTable::at(const std::vector<int>& idx) { return values_[flat(idx)]; }
double ProbabilityTable::at(const std::vector<int>& idx) const { return values_[flat(idx)]; }

double ProbabilityTable::sum() const {
  return std::accumulate(values_.begin(), values_.end(), 0.0);
}

ProbabilityTable ProbabilityTable::marginal(const std::vector<std::string>& keep) const {
  std::vector<std::size_t> keep_pos;
  std::vector<Axis> keep_axes;
  keep_pos.reserve(keep.size());
  for (const auto& name : keep) {
    std::size_t p = axis_position(name);
    keep_pos.push_back(p);
    keep_axes.push_back(axes_[p]);
  }
  ProbabilityTable out(keep_axes);

  std::vector<int> idx(axes_.size(), 0);
  std::vector<int> kidx(keep.size(), 0);
  for (std::size_t f = 0; f < values_.size(); ++f) {
    for (std::size_t k = 0; k < keep_pos.size(); ++k) kidx[k] = idx[keep_pos[k]];
    out.at(kidx) += values_[f];
    // row-major increment
    for (std::size_t i = axes_.size(); i-- > 0;) {
      if (++idx[i] < axes_[i].size) break;
      idx[i] = 0;
    }
  }
  return out;
}

void ProbabilityTable::check_normalized(double tol) const {
  for (double v : values_) {
    if (v < -tol) {
      std::ostringstream os;
      os << "probability table has negative entry " << v;
      throw std::invalid_argument(os.str());
    }
  }
  if (std::abs(sum() - 1.0) > tol) {
    std::ostringstream os;
    os << "probability table sums to " << sum() << ", not 1";
    throw std::invalid_argument(os.str());
  }
}

}  // namespace ppsim::qlin
