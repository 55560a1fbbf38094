#ifndef PPSIM_PROTOCOL_HPP
#define PPSIM_PROTOCOL_HPP

#include <optional>
#include <string>
#include <vector>

#include "ppsim/attack.hpp"
#include "ppsim/channels.hpp"
#include "ppsim/qlin.hpp"

namespace ppsim::protocol {

using qlin::DensityOperator;

enum class ChannelKind { none, amplitude_damping, depolarizing };

std::string channel_name(ChannelKind kind);

/// Position of the noise relative to the probe attack. The standard run
/// applies noise before Q on the way out and after Q^-1 on the way back;
/// the swapped order exists for exploration only (it breaks the
/// vacuum-free measurement guarantees).
enum class NoiseOrdering { noise_before_attack, noise_after_attack };

struct ProtocolConfig {
  ChannelKind kind = ChannelKind::none;
  /// Noise level as plotted: decay probability for amplitude damping,
  /// polarization-block replacement probability for depolarizing.
  double p = 0.0;
  NoiseOrdering ordering = NoiseOrdering::noise_before_attack;
};

/// The Kraus channel a config runs through the pipeline. For the
/// depolarizing case the mixing weight is 3p/4 so that p is the
/// block replacement probability (rho -> (1-p) rho + p I/2).
channels::KrausChannel pipeline_channel(const ProtocolConfig& cfg);

/// Joint statistics of one protocol evaluation. The table axes are
/// ("a",2), ("e",E), ("b",B); the standard ordering has E=2, B=4 after
/// the vacuum and residual outcomes are verified empty, while the
/// exploratory ordering keeps E=3, B=5.
struct JointDistribution {
  qlin::ProbabilityTable p_aeb;
  std::vector<DensityOperator> final_states;  // rho^a on (h,t,x,y), a = 0, 1
  std::vector<DensityOperator> reduced_ht;    // rho^a on (h,t)
};

/// Runs the full noisy pipeline for both encodings: prepare
/// |psi+>_ht |2>_x |0>_y, noise on t, Q on (t,x,y), encode on t, Q^-1,
/// noise on t, then measure. Branches are weighted 1/2 each.
JointDistribution run_pipeline(const ProtocolConfig& cfg);

struct ProtocolMetrics {
  double i_ab = 0.0;
  double i_ae = 0.0;
  double key_rate = 0.0;  // i_ab - i_ae
  double qber_raw = 0.0;
  double qber_sifted = 0.0;
  double holevo = 0.0;  // chi of the reduced (h,t) ensemble
};

/// chi = S((rho0+rho1)/2) - (S(rho0)+S(rho1))/2 in bits.
double holevo_bound(const DensityOperator& rho0, const DensityOperator& rho1);

ProtocolMetrics metrics(const JointDistribution& jd);

struct SweepPoint {
  double p = 0.0;
  ProtocolMetrics metrics;
};

/// Evenly spaced grid of `steps` points covering [p_start, p_end].
std::vector<double> linspace(double p_start, double p_end, int steps);

/// Evaluates the grid in order; points may be computed concurrently
/// (jobs = 0 means hardware concurrency) but the result is identical to
/// sequential evaluation.
std::vector<SweepPoint> sweep(ChannelKind kind, const std::vector<double>& grid,
                              int jobs = 0);

}  // namespace ppsim::protocol

#endif
