#ifndef PPSIM_CLASSICAL_SIM_HPP
#define PPSIM_CLASSICAL_SIM_HPP

#include <array>
#include <cstdint>
#include <string>

#include "ppsim/prob_table.hpp"

namespace ppsim::classical_sim {

/// Local classical post-processing of the measured records. Alice
/// relabels her bit a through a conditional distribution P^A(x|y) (with
/// probability alpha) or a coin with P(0) = r (with probability
/// 1 - alpha). Bob relabels his Bell symbol b through two conditional
/// rows over {0,1,2,3} (with probability beta) or a four-outcome coin
/// (with probability 1 - beta). Eve's symbol is untouched.
struct LocalNoiseModel {
  struct Alice {
    double alpha = 1.0;
    double g = 1.0;  // P^A(0|0)
    double h = 0.0;  // P^A(0|1)
    double r = 0.0;  // coin P(0)
  } alice;
  struct Bob {
    double beta = 1.0;
    std::array<std::array<double, 4>, 2> rows = {{{1, 0, 0, 0}, {0, 1, 0, 0}}};
    std::array<double, 4> coin = {1, 0, 0, 0};
  } bob;

  static LocalNoiseModel identity();

  /// Throws std::invalid_argument unless every weight lies in [0,1] and
  /// every row/coin sums to 1 within 1e-12.
  void validate() const;

  /// Effective 2x2 Alice matrix entries: P~(0|0), P~(0|1).
  double effective_g() const;
  double effective_h() const;
  /// Effective Bob row for input symbol y in {0, 1}.
  std::array<double, 4> effective_row(int y) const;
};

/// Applies Alice's map to the a axis and Bob's map to the b axis of a
/// joint (a, e, b) table. Bob's conditional rows are defined for input
/// symbols 0 and 1; input symbols 2 and 3 (empty in the source
/// statistics) pass through unchanged.
qlin::ProbabilityTable apply_local_noise(const qlin::ProbabilityTable& p,
                                         const LocalNoiseModel& m);

/// The analytic impossibility argument against reproducing the damped
/// statistics, evaluated at noise level p. Step 1: the target's zero
/// (a=0, e=1) row forces Alice's effective P~(0|1) to vanish, leaving two
/// branches. Step 2: the branch where Alice never outputs 0 forces
/// output P000 = 0 against a positive target. Step 3: the branch with
/// P~(0|0) = g > 0 fixes the published component ratio P000/P100 at 4,
/// against the target ratio (2-p)^2.
struct ContradictionReport {
  double p = 0.0;

  bool zero_row_applies = false;  // target P(0,1,b) = 0 for all b

  struct BranchAliceNeverZero {
    double forced_p000 = 0.0;
    double target_p000 = 0.0;
    bool contradiction = false;
  } branch_alice_never_zero;

  struct BranchAliceIdentity {
    double model_ratio = 4.0;   // forced P000/P100
    double target_ratio = 0.0;  // (2-p)^2
    bool contradiction = false;
    /// Exact-matching witness: reproducing the (a=1) rows would need
    /// Bob's effective column sums B(0|0) = B(1|0) = (2-p)/2, whose row
    /// total 2-p exceeds 1 for p < 1.
    double required_row_sum = 0.0;
  } branch_alice_identity;

  bool all_confirmed() const;
};

ContradictionReport contradiction_checks(double p);

enum class DistanceMetric { total_variation, l2 };

std::string metric_name(DistanceMetric m);

double table_distance(const qlin::ProbabilityTable& a, const qlin::ProbabilityTable& b,
                      DistanceMetric metric);

struct SearchSettings {
  DistanceMetric metric = DistanceMetric::total_variation;
  /// Objective evaluation cap; the search reports best-so-far and sets
  /// budget_exhausted when it runs out.
  std::uint64_t budget = 50'000'000;
  double coarse_step = 0.1;
  int top_k = 32;
  double refine_step_min = 1e-4;
  int jobs = 0;  // 0 = hardware concurrency
};

struct FeasibilityReport {
  double p = 0.0;
  LocalNoiseModel best_model;
  double min_distance = 0.0;
  std::string metric;
  std::uint64_t evaluations = 0;
  std::uint64_t budget = 0;
  bool budget_exhausted = false;
};

/// Minimizes distance(apply_local_noise(noiseless table, m), damped
/// target at p) over all valid models: deterministic coarse grid over
/// the effective parameters followed by coordinate-descent refinement of
/// the best grid points. Ties break lexicographically, so results do not
/// depend on evaluation order or parallelism.
FeasibilityReport search_feasibility(double p, const SearchSettings& settings = {});

/// Threshold below which a found distance would falsify the
/// impossibility claim (half the probe-marginal floor, mapped per
/// metric). Used for the CLI exit-code contract.
double claim_threshold(double p, DistanceMetric metric);

}  // namespace ppsim::classical_sim

#endif
