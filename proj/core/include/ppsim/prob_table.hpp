#ifndef PPSIM_PROB_TABLE_HPP
#define PPSIM_PROB_TABLE_HPP

#include <string>
#include <string_view>
#include <vector>

namespace ppsim::qlin {

struct Axis {
  std::string name;
  int size;
};

/// Dense nonnegative table over named finite axes, stored row-major.
/// Used for joint outcome distributions such as P(a, e, b).
class ProbabilityTable {
 public:
  ProbabilityTable(std::vector<Axis> axes, std::vector<double> values);

  /// Zero-filled table.
  explicit ProbabilityTable(std::vector<Axis> axes);

  const std::vector<Axis>& axes() const { return axes_; }
  const std::vector<double>& values() const { return values_; }

  std::size_t axis_position(std::string_view name) const;  // throws if absent
  int axis_size(std::string_view name) const;

  double& at(const std::vector<int>& idx);
  double at(const std::vector<int>& idx) const;

  double sum() const;

  /// Marginal over the named axes, in the order given.
  ProbabilityTable marginal(const std::vector<std::string>& keep) const;

  /// Throws std::invalid_argument unless entries are >= -tol and sum to 1
  /// within tol.
  void check_normalized(double tol = 1e-10) const;

 private:
  long flat(const std::vector<int>& idx) const;

  std::vector<Axis> axes_;
  std::vector<double> values_;
};

}  // namespace ppsim::qlin

#endif
