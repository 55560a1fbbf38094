#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ppsim/acceptance.hpp"
#include "ppsim/classical_sim.hpp"
#include "ppsim/io.hpp"
#include "ppsim/protocol.hpp"

namespace {

using ppsim::protocol::ChannelKind;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitClaimFalsified = 2;

ChannelKind parse_channel(const std::string& name) {
  if (name == "ad") return ChannelKind::amplitude_damping;
  if (name == "depol") return ChannelKind::depolarizing;
  if (name == "none") return ChannelKind::none;
  throw CLI::ValidationError("--channel", "expected one of ad, depol, none");
}

int default_jobs() {
  if (const char* env = std::getenv("PPSIM_JOBS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 0;  // library default: hardware concurrency
}

int emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return kExitOk;
  }
  std::ofstream os(out_path, std::ios::binary);
  if (!os) {
    std::cerr << "error: cannot open '" << out_path << "' for writing\n";
    return kExitUsage;
  }
  os << text;
  if (!os.good()) {
    std::cerr << "error: failed writing '" << out_path << "'\n";
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ping-pong QKD protocol simulator under noisy probe attacks"};
  app.require_subcommand(1);

  // sweep
  std::string sweep_channel = "ad";
  int sweep_steps = 101;
  double sweep_start = 0.0, sweep_end = 1.0;
  std::string sweep_format = "csv";
  std::string sweep_out;
  int sweep_jobs = default_jobs();
  auto* sweep_cmd = app.add_subcommand("sweep", "Metrics over a noise-level grid");
  sweep_cmd->add_option("--channel", sweep_channel, "ad, depol or none")
      ->capture_default_str();
  sweep_cmd->add_option("--steps", sweep_steps, "grid points (>= 2)")->capture_default_str();
  sweep_cmd->add_option("--p-start", sweep_start, "grid start")->capture_default_str();
  sweep_cmd->add_option("--p-end", sweep_end, "grid end")->capture_default_str();
  sweep_cmd->add_option("--format", sweep_format, "csv or json")->capture_default_str();
  sweep_cmd->add_option("--out", sweep_out, "output path (default: stdout)");
  sweep_cmd->add_option("--jobs", sweep_jobs, "worker threads (default: all cores)");

  // point
  std::string point_channel = "ad";
  double point_p = 0.0;
  std::string point_out;
  auto* point_cmd = app.add_subcommand("point", "Full JSON report at one noise level");
  point_cmd->add_option("--channel", point_channel, "ad, depol or none")
      ->capture_default_str();
  point_cmd->add_option("--p", point_p, "noise level in [0, 1]")->capture_default_str();
  point_cmd->add_option("--out", point_out, "output path (default: stdout)");

  // classical-sim
  double cs_p = 0.5;
  std::string cs_metric = "tv";
  std::uint64_t cs_budget = ppsim::classical_sim::SearchSettings{}.budget;
  unsigned long long cs_seed = 0;
  std::string cs_out;
  int cs_jobs = default_jobs();
  auto* cs_cmd = app.add_subcommand(
      "classical-sim", "Certify that local classical noise cannot reproduce the damped statistics");
  cs_cmd->add_option("--p", cs_p, "noise level in (0, 1)")->required();
  cs_cmd->add_option("--metric", cs_metric, "tv or l2")->capture_default_str();
  cs_cmd->add_option("--budget", cs_budget, "objective evaluation cap")->capture_default_str();
  cs_cmd->add_option("--seed", cs_seed, "echoed into the report; the search is deterministic");
  cs_cmd->add_option("--out", cs_out, "output path (default: stdout)");
  cs_cmd->add_option("--jobs", cs_jobs, "worker threads (default: all cores)");

  // selftest
  int selftest_criterion = 0;
  auto* selftest_cmd = app.add_subcommand("selftest", "Run the acceptance criteria");
  selftest_cmd->add_option("--criterion", selftest_criterion, "run a single criterion (1-10)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (sweep_cmd->parsed()) {
      ChannelKind kind = parse_channel(sweep_channel);
      if (sweep_format != "csv" && sweep_format != "json") {
        std::cerr << "error: --format must be csv or json\n";
        return kExitUsage;
      }
      auto grid = ppsim::protocol::linspace(sweep_start, sweep_end, sweep_steps);
      auto points = ppsim::protocol::sweep(kind, grid, sweep_jobs);
      std::string text = sweep_format == "csv" ? ppsim::io::render_sweep_csv(points)
                                               : ppsim::io::render_sweep_json(kind, points);
      return emit(text, sweep_out);
    }

    if (point_cmd->parsed()) {
      ChannelKind kind = parse_channel(point_channel);
      if (!(point_p >= 0.0 && point_p <= 1.0)) {
        std::cerr << "error: --p must lie in [0, 1]\n";
        return kExitUsage;
      }
      ppsim::protocol::ProtocolConfig cfg{kind, point_p};
      auto jd = ppsim::protocol::run_pipeline(cfg);
      auto m = ppsim::protocol::metrics(jd);
      return emit(ppsim::io::render_point_json(cfg, jd, m), point_out);
    }

    if (cs_cmd->parsed()) {
      if (!(cs_p > 0.0 && cs_p < 1.0)) {
        std::cerr << "error: --p must lie strictly inside (0, 1)\n";
        return kExitUsage;
      }
      ppsim::classical_sim::SearchSettings settings;
      if (cs_metric == "tv") {
        settings.metric = ppsim::classical_sim::DistanceMetric::total_variation;
      } else if (cs_metric == "l2") {
        settings.metric = ppsim::classical_sim::DistanceMetric::l2;
      } else {
        std::cerr << "error: --metric must be tv or l2\n";
        return kExitUsage;
      }
      settings.budget = cs_budget;
      settings.jobs = cs_jobs;
      auto report = ppsim::classical_sim::search_feasibility(cs_p, settings);
      auto checks = ppsim::classical_sim::contradiction_checks(cs_p);
      double threshold = ppsim::classical_sim::claim_threshold(cs_p, settings.metric);
      bool falsified = report.min_distance < threshold || !checks.all_confirmed();
      int rc = emit(ppsim::io::render_feasibility_json(report, checks, threshold, falsified,
                                                       cs_seed),
                    cs_out);
      if (rc != kExitOk) return rc;
      if (falsified) {
        std::cerr << "claim falsified: local classical noise reached distance "
                  << ppsim::io::format_value(report.min_distance) << " (threshold "
                  << ppsim::io::format_value(threshold) << ")\n";
        return kExitClaimFalsified;
      }
      return kExitOk;
    }

    if (selftest_cmd->parsed()) {
      bool ok = ppsim::acceptance::run_all(std::cout, selftest_criterion);
      return ok ? kExitOk : kExitUsage;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
