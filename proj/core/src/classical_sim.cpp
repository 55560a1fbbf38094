#include "ppsim/classical_sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "ppsim/closed_form.hpp"

namespace ppsim::classical_sim {

namespace {

constexpr double kRowTol = 1e-12;

void require_prob(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) {
    std::ostringstream os;
    os << what << " must lie in [0, 1], got " << v;
    throw std::invalid_argument(os.str());
  }
}

void require_simplex(const std::array<double, 4>& row, const char* what) {
  double sum = 0.0;
  for (double v : row) {
    if (v < -kRowTol) {
      std::ostringstream os;
      os << what << " has negative entry " << v;
      throw std::invalid_argument(os.str());
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > kRowTol) {
    std::ostringstream os;
    os << what << " sums to " << sum << ", not 1";
    throw std::invalid_argument(os.str());
  }
}

}  // namespace

LocalNoiseModel LocalNoiseModel::identity() { return LocalNoiseModel{}; }

void LocalNoiseModel::validate() const {
  require_prob(alice.alpha, "alice.alpha");
  require_prob(alice.g, "alice.g");
  require_prob(alice.h, "alice.h");
  require_prob(alice.r, "alice.r");
  require_prob(bob.beta, "bob.beta");
  require_simplex(bob.rows[0], "bob row 0");
  require_simplex(bob.rows[1], "bob row 1");
  require_simplex(bob.coin, "bob coin");
}

double LocalNoiseModel::effective_g() const {
  return alice.alpha * alice.g + (1.0 - alice.alpha) * alice.r;
}

double LocalNoiseModel::effective_h() const {
  return alice.alpha * alice.h + (1.0 - alice.alpha) * alice.r;
}

std::array<double, 4> LocalNoiseModel::effective_row(int y) const {
  std::array<double, 4> row{};
  for (int i = 0; i < 4; ++i) {
    row[i] = bob.beta * bob.rows[y][i] + (1.0 - bob.beta) * bob.coin[i];
  }
  return row;
}

qlin::ProbabilityTable apply_local_noise(const qlin::ProbabilityTable& p,
                                         const LocalNoiseModel& m) {
  m.validate();
  p.check_normalized(1e-10);
  const int n_e = p.axis_size("e");
  const int n_b = p.axis_size("b");
  if (p.axis_size("a") != 2 || n_b > 4) {
    throw std::invalid_argument("apply_local_noise expects a binary a axis and b in {0..3}");
  }

  const double g = m.effective_g();
  const double h = m.effective_h();
  const std::array<double, 4> alice_map[2] = {
      {g, 1.0 - g, 0, 0},  // P~(x|0) over x in {0,1}
      {h, 1.0 - h, 0, 0},
  };
  std::array<std::array<double, 4>, 4> bob_map{};  // bob_map[y][x] = P~(x|y)
  bob_map[0] = m.effective_row(0);
  bob_map[1] = m.effective_row(1);
  // Input symbols beyond the conditional's domain pass through.
  bob_map[2] = {0, 0, 1, 0};
  bob_map[3] = {0, 0, 0, 1};

  qlin::ProbabilityTable out({{"a", 2}, {"e", n_e}, {"b", 4}});
  for (int a = 0; a < 2; ++a) {
    for (int e = 0; e < n_e; ++e) {
      for (int b = 0; b < n_b; ++b) {
        double v = p.at({a, e, b});
        if (v == 0.0) continue;
        for (int a2 = 0; a2 < 2; ++a2) {
          double va = v * alice_map[a][a2];
          if (va == 0.0) continue;
          for (int b2 = 0; b2 < 4; ++b2) {
            out.at({a2, e, b2}) += va * bob_map[b][b2];
          }
        }
      }
    }
  }
  out.check_normalized(1e-10);
  return out;
}

bool ContradictionReport::all_confirmed() const {
  return zero_row_applies && branch_alice_never_zero.contradiction &&
         branch_alice_identity.contradiction;
}

ContradictionReport contradiction_checks(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
  const qlin::ProbabilityTable target = closed_form::ad_joint(p);

  ContradictionReport rep;
  rep.p = p;

  rep.zero_row_applies = true;
  for (int b = 0; b < 4; ++b) {
    if (target.at({0, 1, b}) > kRowTol) rep.zero_row_applies = false;
  }

  rep.branch_alice_never_zero.forced_p000 = 0.0;
  rep.branch_alice_never_zero.target_p000 = target.at({0, 0, 0});
  rep.branch_alice_never_zero.contradiction =
      rep.branch_alice_never_zero.target_p000 > kRowTol;

  rep.branch_alice_identity.model_ratio = 4.0;
  rep.branch_alice_identity.target_ratio = target.at({0, 0, 0}) / target.at({1, 0, 0});
  rep.branch_alice_identity.contradiction =
      std::abs(rep.branch_alice_identity.target_ratio - 4.0) > 1e-9;
  rep.branch_alice_identity.required_row_sum = 2.0 - p;

  return rep;
}

std::string metric_name(DistanceMetric m) {
  return m == DistanceMetric::total_variation ? "total-variation" : "l2";
}

double table_distance(const qlin::ProbabilityTable& a, const qlin::ProbabilityTable& b,
                      DistanceMetric metric) {
  if (a.values().size() != b.values().size()) {
    throw std::invalid_argument("table shape mismatch");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < a.values().size(); ++i) {
    double d = a.values()[i] - b.values()[i];
    acc += metric == DistanceMetric::total_variation ? std::abs(d) : d * d;
  }
  return metric == DistanceMetric::total_variation ? 0.5 * acc : std::sqrt(acc);
}

double claim_threshold(double p, DistanceMetric metric) {
  double tv_floor = closed_form::classical_floor_tv(p);
  // L1 >= 2 TV; L2 >= L1 / sqrt(16 cells) = TV / 2.
  double floor = metric == DistanceMetric::total_variation ? tv_floor : tv_floor / 2.0;
  return 0.5 * floor;
}

// ---------------------------------------------------------------------------
// Feasibility search over the effective model space. The output table
// depends on a model only through (G, H, B0, B1) = (effective_g,
// effective_h, effective_row(0), effective_row(1)), and every such tuple
// is realized by a model with alpha = beta = 1, so searching the
// effective space covers the full model family.
// ---------------------------------------------------------------------------

namespace {

struct EffectiveParams {
  double g = 1.0;
  double h = 0.0;
  std::array<double, 4> row0 = {1, 0, 0, 0};
  std::array<double, 4> row1 = {0, 1, 0, 0};
};

struct Objective {
  // Source masses of the noiseless table: a=0 has 1/2 on b=0 (e=0);
  // a=1 has 1/8 on each (e,b) in {0,1}^2.
  std::array<double, 16> target{};  // (a*2+e)*4+b
  DistanceMetric metric = DistanceMetric::total_variation;

  explicit Objective(double p, DistanceMetric m) : metric(m) {
    const qlin::ProbabilityTable t = closed_form::ad_joint(p);
    for (int a = 0; a < 2; ++a)
      for (int e = 0; e < 2; ++e)
        for (int b = 0; b < 4; ++b) target[(a * 2 + e) * 4 + b] = t.at({a, e, b});
  }

  double operator()(const EffectiveParams& q) const {
    double acc = 0.0;
    for (int b = 0; b < 4; ++b) {
      double s = q.row0[b] + q.row1[b];
      double o00 = 0.5 * q.g * q.row0[b] + 0.125 * q.h * s;
      double o10 = 0.5 * (1 - q.g) * q.row0[b] + 0.125 * (1 - q.h) * s;
      double o01 = 0.125 * q.h * s;
      double o11 = 0.125 * (1 - q.h) * s;
      if (metric == DistanceMetric::total_variation) {
        acc += std::abs(o00 - target[0 + b]) + std::abs(o01 - target[4 + b]) +
               std::abs(o10 - target[8 + b]) + std::abs(o11 - target[12 + b]);
      } else {
        auto sq = [](double d) { return d * d; };
        acc += sq(o00 - target[0 + b]) + sq(o01 - target[4 + b]) +
               sq(o10 - target[8 + b]) + sq(o11 - target[12 + b]);
      }
    }
    return metric == DistanceMetric::total_variation ? 0.5 * acc : std::sqrt(acc);
  }
};

struct Candidate {
  double value = 0.0;
  std::array<int, 4> order_key{};  // coarse-grid indices for tie-breaking
  EffectiveParams params;

  bool operator<(const Candidate& other) const {
    if (value != other.value) return value < other.value;
    return order_key < other.order_key;
  }
};

std::vector<std::array<double, 4>> simplex_grid(double step) {
  const int n = static_cast<int>(std::lround(1.0 / step));
  std::vector<std::array<double, 4>> pts;
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n - i; ++j)
      for (int k = 0; k <= n - i - j; ++k) {
        int l = n - i - j - k;
        pts.push_back({static_cast<double>(i) / n, static_cast<double>(j) / n,
                       static_cast<double>(k) / n, static_cast<double>(l) / n});
      }
  return pts;
}

/// Shrinking-step coordinate descent: axis moves on g and h, pairwise
/// mass transfers inside each Bob row.
double refine(const Objective& obj, EffectiveParams& q, double step0, double step_min,
              std::uint64_t budget, std::uint64_t& evals) {
  double best = obj(q);
  ++evals;
  for (double step = step0; step >= step_min;) {
    bool improved = false;
    auto try_params = [&](const EffectiveParams& cand) {
      if (evals >= budget) return;
      double v = obj(cand);
      ++evals;
      if (v < best - 1e-15) {
        best = v;
        q = cand;
        improved = true;
      }
    };

    for (double sign : {+1.0, -1.0}) {
      EffectiveParams cand = q;
      cand.g = std::clamp(q.g + sign * step, 0.0, 1.0);
      try_params(cand);
      cand = q;
      cand.h = std::clamp(q.h + sign * step, 0.0, 1.0);
      try_params(cand);
    }
    for (auto row_field : {&EffectiveParams::row0, &EffectiveParams::row1}) {
      for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
          if (i == j || (q.*row_field)[i] < step) continue;
          EffectiveParams cand = q;
          (cand.*row_field)[i] -= step;
          (cand.*row_field)[j] += step;
          try_params(cand);
        }
      }
    }
    if (evals >= budget) break;
    if (!improved) step *= 0.5;
  }
  return best;
}

LocalNoiseModel to_model(const EffectiveParams& q) {
  LocalNoiseModel m;
  m.alice.alpha = 1.0;
  m.alice.g = q.g;
  m.alice.h = q.h;
  m.alice.r = 0.0;
  m.bob.beta = 1.0;
  m.bob.rows[0] = q.row0;
  m.bob.rows[1] = q.row1;
  m.bob.coin = {1, 0, 0, 0};
  return m;
}

}  // namespace

FeasibilityReport search_feasibility(double p, const SearchSettings& settings) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");

  const Objective obj(p, settings.metric);
  const int n_gh = static_cast<int>(std::lround(1.0 / settings.coarse_step)) + 1;
  const std::vector<std::array<double, 4>> rows = simplex_grid(settings.coarse_step);
  const std::uint64_t grid_total = static_cast<std::uint64_t>(n_gh) * n_gh *
                                   rows.size() * rows.size();

  int jobs = settings.jobs > 0 ? settings.jobs
                               : static_cast<int>(std::thread::hardware_concurrency());
  if (jobs <= 0) jobs = 1;
  jobs = std::min<int>(jobs, n_gh);

  // Coarse scan, parallel over the g index; each worker keeps its own
  // top-k, merged deterministically afterwards.
  std::vector<std::vector<Candidate>> worker_best(jobs);
  std::vector<std::uint64_t> worker_evals(jobs, 0);
  const std::uint64_t per_g_budget = settings.budget / n_gh;
  std::atomic<int> next_g{0};
  auto scan = [&](int w) {
    auto& heap = worker_best[w];
    for (int ig = next_g.fetch_add(1); ig < n_gh; ig = next_g.fetch_add(1)) {
      std::uint64_t used = 0;
      EffectiveParams q;
      q.g = static_cast<double>(ig) / (n_gh - 1);
      for (int ih = 0; ih < n_gh; ++ih) {
        q.h = static_cast<double>(ih) / (n_gh - 1);
        for (std::size_t i0 = 0; i0 < rows.size(); ++i0) {
          q.row0 = rows[i0];
          for (std::size_t i1 = 0; i1 < rows.size(); ++i1) {
            if (used >= per_g_budget) break;
            q.row1 = rows[i1];
            Candidate cand{obj(q),
                           {ig, ih, static_cast<int>(i0), static_cast<int>(i1)},
                           q};
            ++used;
            if (heap.size() < static_cast<std::size_t>(settings.top_k)) {
              heap.push_back(cand);
              std::sort(heap.begin(), heap.end());
            } else if (cand < heap.back()) {
              heap.back() = cand;
              std::sort(heap.begin(), heap.end());
            }
          }
        }
      }
      worker_evals[w] += used;
    }
  };
  if (jobs == 1) {
    scan(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(jobs);
    for (int w = 0; w < jobs; ++w) threads.emplace_back(scan, w);
    for (auto& th : threads) th.join();
  }

  std::vector<Candidate> merged;
  for (const auto& heap : worker_best) merged.insert(merged.end(), heap.begin(), heap.end());
  std::sort(merged.begin(), merged.end());
  if (merged.size() > static_cast<std::size_t>(settings.top_k)) {
    merged.resize(settings.top_k);
  }

  std::uint64_t evals = 0;
  for (auto e : worker_evals) evals += e;
  bool exhausted = evals >= settings.budget || evals < grid_total;

  Candidate best = merged.empty() ? Candidate{obj(EffectiveParams{}), {}, EffectiveParams{}}
                                  : merged.front();
  double best_value = best.value;
  EffectiveParams best_params = best.params;
  for (auto& cand : merged) {
    EffectiveParams q = cand.params;
    double v = refine(obj, q, settings.coarse_step / 2.0, settings.refine_step_min,
                      settings.budget, evals);
    if (v < best_value) {
      best_value = v;
      best_params = q;
    }
    if (evals >= settings.budget) {
      exhausted = true;
      break;
    }
  }

  FeasibilityReport report;
  report.p = p;
  report.best_model = to_model(best_params);
  report.min_distance = best_value;
  report.metric = metric_name(settings.metric);
  report.evaluations = evals;
  report.budget = settings.budget;
  report.budget_exhausted = exhausted;
  return report;
}

}  // namespace ppsim::classical_sim
