#include "ppsim/io.hpp"

#include <cstdio>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ppsim/qlin.hpp"

namespace ppsim::io {

using nlohmann::json;

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string render_sweep_csv(const std::vector<protocol::SweepPoint>& points) {
  std::ostringstream os;
  os << kSweepCsvHeader << '\n';
  for (const auto& pt : points) {
    const auto& m = pt.metrics;
    os << format_value(pt.p) << ',' << format_value(m.i_ab) << ',' << format_value(m.i_ae)
       << ',' << format_value(m.key_rate) << ',' << format_value(m.holevo) << ','
       << format_value(m.qber_raw) << ',' << format_value(m.qber_sifted) << '\n';
  }
  return os.str();
}

namespace {

json metrics_json(const protocol::ProtocolMetrics& m) {
  return json{{"i_ab", m.i_ab},         {"i_ae", m.i_ae},
              {"key_rate", m.key_rate}, {"holevo", m.holevo},
              {"qber_raw", m.qber_raw}, {"qber_sifted", m.qber_sifted}};
}

json table_json(const qlin::ProbabilityTable& t) {
  const int n_e = t.axis_size("e");
  const int n_b = t.axis_size("b");
  json rows = json::array();
  for (int a = 0; a < 2; ++a) {
    json per_e = json::array();
    for (int e = 0; e < n_e; ++e) {
      json per_b = json::array();
      for (int b = 0; b < n_b; ++b) per_b.push_back(t.at({a, e, b}));
      per_e.push_back(per_b);
    }
    rows.push_back(per_e);
  }
  return rows;
}

json spectrum_json(const qlin::DensityOperator& rho) {
  Eigen::VectorXd eigs = qlin::hermitian_spectrum(rho);
  json out = json::array();
  for (long i = 0; i < eigs.size(); ++i) out.push_back(eigs(i));
  return out;
}

}  // namespace

std::string render_sweep_json(protocol::ChannelKind kind,
                              const std::vector<protocol::SweepPoint>& points) {
  json rows = json::array();
  for (const auto& pt : points) {
    json row = metrics_json(pt.metrics);
    row["p"] = pt.p;
    rows.push_back(row);
  }
  json doc{{"channel", protocol::channel_name(kind)}, {"points", rows}};
  return doc.dump(2) + "\n";
}

std::string render_point_json(const protocol::ProtocolConfig& cfg,
                              const protocol::JointDistribution& jd,
                              const protocol::ProtocolMetrics& m) {
  qlin::Matrix avg = 0.5 * (jd.reduced_ht[0].matrix() + jd.reduced_ht[1].matrix());
  json doc{
      {"p", cfg.p},
      {"channel", protocol::channel_name(cfg.kind)},
      {"joint", table_json(jd.p_aeb)},
      {"metrics", metrics_json(m)},
      {"eigenvalues",
       {{"a0", spectrum_json(jd.reduced_ht[0])},
        {"a1", spectrum_json(jd.reduced_ht[1])},
        {"average", spectrum_json(qlin::DensityOperator(jd.reduced_ht[0].layout(), avg))}}},
  };
  return doc.dump(2) + "\n";
}

std::string render_feasibility_json(const classical_sim::FeasibilityReport& report,
                                    const classical_sim::ContradictionReport& checks,
                                    double threshold, bool claim_falsified,
                                    unsigned long long seed) {
  const auto& m = report.best_model;
  json doc{
      {"p", report.p},
      {"metric", report.metric},
      {"min_distance", report.min_distance},
      {"claim_threshold", threshold},
      {"claim_falsified", claim_falsified},
      {"contradictions",
       {{"zero_row_applies", checks.zero_row_applies},
        {"alice_never_zero",
         {{"forced_p000", checks.branch_alice_never_zero.forced_p000},
          {"target_p000", checks.branch_alice_never_zero.target_p000},
          {"contradiction", checks.branch_alice_never_zero.contradiction}}},
        {"alice_identity",
         {{"model_ratio", checks.branch_alice_identity.model_ratio},
          {"target_ratio", checks.branch_alice_identity.target_ratio},
          {"required_row_sum", checks.branch_alice_identity.required_row_sum},
          {"contradiction", checks.branch_alice_identity.contradiction}}},
        {"all_confirmed", checks.all_confirmed()}}},
      {"best_model",
       {{"alice",
         {{"alpha", m.alice.alpha}, {"g", m.alice.g}, {"h", m.alice.h}, {"r", m.alice.r}}},
        {"bob",
         {{"beta", m.bob.beta},
          {"rows", {m.bob.rows[0], m.bob.rows[1]}},
          {"coin", m.bob.coin}}}}},
      {"search",
       {{"evaluations", report.evaluations},
        {"budget", report.budget},
        {"budget_exhausted", report.budget_exhausted}}},
      {"seed", seed},
  };
  return doc.dump(2) + "\n";
}

}  // namespace ppsim::io
