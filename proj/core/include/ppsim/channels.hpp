#ifndef PPSIM_CHANNELS_HPP
#define PPSIM_CHANNELS_HPP

#include <string>
#include <vector>

#include "ppsim/qlin.hpp"

namespace ppsim::channels {

using qlin::DensityOperator;
using qlin::Label;
using qlin::Matrix;

/// Completely positive trace-preserving map as an ordered Kraus operator
/// list, sum_i A_i^dag A_i = I.
class KrausChannel {
 public:
  KrausChannel(std::string name, double p, std::vector<Matrix> operators);

  const std::string& name() const { return name_; }
  double p() const { return p_; }
  const std::vector<Matrix>& operators() const { return ops_; }
  long dim() const { return ops_.front().rows(); }

  /// max_ij |sum_i A_i^dag A_i - I|.
  double completeness_deviation() const;

 private:
  std::string name_;
  double p_;
  std::vector<Matrix> ops_;
};

/// Qutrit amplitude damping: decay |1> -> |0> with probability p on the
/// polarization pair, identity on the vacuum level |2>.
KrausChannel ad_qutrit(double p);

/// Qutrit depolarizing mixture: identity with weight 1-p plus the three
/// polarization-block Pauli rotations with weight p/3 each, all acting as
/// identity on the vacuum level |2>.
KrausChannel depol_qutrit(double p);

/// Identity channel of the given dimension (noise parameter 0).
KrausChannel identity_channel(int dim = 3);

/// rho' = sum_i (I (x) A_i (x) I) rho (I (x) A_i^dag (x) I) on the target
/// subsystem. Kraus dimension must equal the target dimension.
DensityOperator apply_channel(const DensityOperator& rho, const KrausChannel& ch,
                              Label target);

/// Kraus operator lifted to the full space of the layout (identity on all
/// other subsystems). Exposed so pipelines can materialize the lifted
/// operators once per run.
Matrix lift_operator(const qlin::SubsystemLayout& layout, const Matrix& op, Label target);

/// Decay-time convenience: p = 1 - exp(-tau * t / 2), clamped to [0, 1].
double p_from_time(double tau, double t);

}  // namespace ppsim::channels

#endif
