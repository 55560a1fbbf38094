#ifndef PPSIM_IO_HPP
#define PPSIM_IO_HPP

#include <string>
#include <vector>

#include "ppsim/classical_sim.hpp"
#include "ppsim/protocol.hpp"

namespace ppsim::io {

/// Fixed CSV header of sweep output. Byte-exact contract for downstream
/// plotting tools.
inline constexpr const char* kSweepCsvHeader =
    "p,i_ab,i_ae,key_rate,holevo,qber_raw,qber_sifted";

/// Shortest-round-trip decimal with 12 significant digits.
std::string format_value(double v);

std::string render_sweep_csv(const std::vector<protocol::SweepPoint>& points);

std::string render_sweep_json(ppsim::protocol::ChannelKind kind,
                              const std::vector<protocol::SweepPoint>& points);

/// Single-point report: joint table, reduced-state eigenvalues, metrics.
std::string render_point_json(const protocol::ProtocolConfig& cfg,
                              const protocol::JointDistribution& jd,
                              const protocol::ProtocolMetrics& m);

std::string render_feasibility_json(const classical_sim::FeasibilityReport& report,
                                    const classical_sim::ContradictionReport& checks,
                                    double threshold, bool claim_falsified,
                                    unsigned long long seed);

}  // namespace ppsim::io

#endif
