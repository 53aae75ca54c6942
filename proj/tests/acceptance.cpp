// Acceptance suite: one check per release criterion, one line per result.
// Every threshold is pinned here; the binary exits nonzero if any fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "beamsched/beamsched.hpp"

using namespace beamsched;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kBaseSeed = 20260808;

int failures = 0;

void report(int criterion, const char* label, bool ok, const std::string& detail) {
  std::printf("[%s] criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", criterion, label,
              detail.c_str());
  if (!ok) ++failures;
}

std::string fmt(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.6g", v);
  return buffer;
}

SystemConfig config_n2(int ues, double icd) {
  SystemConfig config;
  config.num_ues_per_ap_M = ues;
  config.inter_cell_distance = icd;
  return config;
}

// 1. Simplex preservation across >= 1e4 randomized reward-inaction updates.
void criterion_simplex() {
  Rng rng(kBaseSeed);
  double worst_sum = 0.0;
  double worst_min = 1.0;
  int updates = 0;
  for (int chain = 0; chain < 20; ++chain) {
    const int size = 2 + static_cast<int>(rng.uniform_below(119));
    std::vector<double> p(size);
    double total = 0.0;
    for (double& v : p) {
      v = -std::log(1.0 - rng.uniform01() + 1e-300);
      total += v;
    }
    for (double& v : p) v /= total;
    for (int step = 0; step < 600; ++step, ++updates) {
      lri_update(p, rng.uniform_below(size), rng.uniform01(), 0.01 + 0.98 * rng.uniform01());
      double sum = 0.0;
      double low = 1.0;
      for (double v : p) {
        sum += v;
        low = std::min(low, v);
      }
      worst_sum = std::max(worst_sum, std::abs(sum - 1.0));
      worst_min = std::min(worst_min, low);
    }
  }
  const bool ok = updates >= 10000 && worst_sum <= 1e-9 && worst_min >= 0.0;
  report(1, "simplex invariant", ok,
         std::to_string(updates) + " updates, worst |sum-1| " + fmt(worst_sum) + ", min entry " +
             fmt(worst_min));
}

// 2. Oracle dominance and statistical ordering over 100 paired trials at
// N=2, M=3 (inter-cell distance 200 m, the coupled Table-1 case).
void criterion_dominance() {
  ExperimentSpec spec;
  spec.config = config_n2(3, 200.0);
  spec.trials = 100;
  spec.base_seed = kBaseSeed;
  const ResultSet results = run_experiment(spec);

  int violations = 0;
  std::vector<double> diff;
  for (const TrialRecord& record : results.trials) {
    const double exhaustive = record.outcome(SchedulerKind::exhaustive)->network_utility;
    const double greedy = record.outcome(SchedulerKind::greedy)->network_utility;
    const double learning = record.outcome(SchedulerKind::learning)->network_utility;
    const double random = record.outcome(SchedulerKind::random)->network_utility;
    if (exhaustive < greedy || exhaustive < learning || exhaustive < random) ++violations;
    diff.push_back(learning - random);
  }
  double mean_diff = 0.0;
  for (double d : diff) mean_diff += d;
  mean_diff /= diff.size();
  double var_diff = 0.0;
  for (double d : diff) var_diff += (d - mean_diff) * (d - mean_diff);
  var_diff /= (diff.size() - 1);
  const double t = mean_diff / std::sqrt(var_diff / diff.size());
  const double t_crit = 1.9842;  // two-sided 95% Student quantile, 99 dof

  const double mean_greedy = results.summary(SchedulerKind::greedy).mean;
  const double mean_learning = results.summary(SchedulerKind::learning).mean;
  const bool ok = violations == 0 && mean_greedy >= mean_learning && t > t_crit;
  report(2, "oracle dominance", ok,
         "exhaustive violations " + std::to_string(violations) + ", mean greedy " +
             fmt(mean_greedy) + " >= learning " + fmt(mean_learning) + ", learning-random t " +
             fmt(t) + " > " + fmt(t_crit));
}

// 3. Evaluation counters match the complexity formulas bit-exactly.
void criterion_counters() {
  bool ok = true;
  std::string detail;

  for (int ues : {3, 5}) {
    const SystemConfig config = config_n2(ues, 400.0);
    Rng scenario_rng(stream_seed(kBaseSeed, 0));
    const Scenario scenario = make_scenario(config, scenario_rng);
    const std::uint64_t space = factorial(ues);

    if (ues == 3) {
      EvalCounter counter;
      exhaustive_search(scenario, counter);
      ok = ok && counter.evaluations == space * space;
      detail += "exhaustive " + std::to_string(counter.evaluations) + "/" +
                std::to_string(space * space) + " ";
    }
    {
      Rng rng(stream_seed(kBaseSeed, 3));
      EvalCounter counter;
      greedy_schedule(scenario, config.greedy_iters_NDG, rng, counter);
      const std::uint64_t expected = 10ull * 2ull * space;
      ok = ok && counter.evaluations == expected;
      detail += "greedy " + std::to_string(counter.evaluations) + "/" + std::to_string(expected) +
                " ";
    }
    {
      Rng rng(stream_seed(kBaseSeed, 4));
      EvalCounter counter;
      learning_schedule(scenario, config.learning_weight_w, config.max_learning_iters_T, rng,
                        counter);
      ok = ok && counter.evaluations == 200ull * 2ull;
      detail += "learning " + std::to_string(counter.evaluations) + "/400 ";
    }
  }

  // and on every harness run: re-check a full experiment's counter files
  ExperimentSpec spec;
  spec.config = config_n2(3, 200.0);
  spec.trials = 20;
  spec.base_seed = kBaseSeed + 1;
  const ResultSet results = run_experiment(spec);
  for (const TrialRecord& record : results.trials) {
    ok = ok && record.outcome(SchedulerKind::exhaustive)->evaluations == 36;
    ok = ok && record.outcome(SchedulerKind::greedy)->evaluations == 120;
    ok = ok && record.outcome(SchedulerKind::learning)->evaluations == 400;
    ok = ok && record.outcome(SchedulerKind::random)->evaluations == 0;
  }
  report(3, "complexity counters", ok, detail + "+ 20 harness trials");
}

// 4. Convergence shape at N=2, M=5, w=0.15, 400 m: most seeds concentrate
// probability mass within 100 iterations; running maxima never decrease.
void criterion_convergence() {
  const SystemConfig config = config_n2(5, 400.0);
  const int trials = 50;
  int converged = 0;
  int monotone = 0;
  for (int trial = 0; trial < trials; ++trial) {
    const std::uint64_t seed = trial_seed(kBaseSeed, trial);
    Rng scenario_rng(stream_seed(seed, 0));
    const Scenario scenario = make_scenario(config, scenario_rng);
    Rng rng(stream_seed(seed, 4));
    EvalCounter counter;
    const LearningResult result = learning_schedule(scenario, 0.15, 100, rng, counter);

    std::vector<bool> reached(2, false);
    std::vector<double> last_max(2, 0.0);
    bool non_decreasing = true;
    for (const LearningStep& step : result.trace) {
      if (step.max_probability > 0.9) reached[step.ap] = true;
      if (step.max_utility < last_max[step.ap]) non_decreasing = false;
      last_max[step.ap] = step.max_utility;
    }
    if (reached[0] && reached[1]) ++converged;
    if (non_decreasing) ++monotone;
  }
  const bool ok = converged >= trials * 60 / 100 && monotone == trials;
  report(4, "convergence shape", ok,
         std::to_string(converged) + "/" + std::to_string(trials) +
             " trials reached max probability > 0.9 within 100 iterations, " +
             std::to_string(monotone) + "/" + std::to_string(trials) + " monotone running max");
}

// 5. Learning stays within 10% of greedy, and the greedy-learning gap does
// not widen by more than 0.05 bits/s/Hz when cells shrink 400 m -> 200 m.
void criterion_near_optimality() {
  double gap[2] = {0.0, 0.0};
  double mean_greedy[2] = {0.0, 0.0};
  double mean_learning[2] = {0.0, 0.0};
  int i = 0;
  for (double icd : {400.0, 200.0}) {
    ExperimentSpec spec;
    spec.config = config_n2(3, icd);
    spec.schedulers = {SchedulerKind::greedy, SchedulerKind::learning};
    spec.trials = 200;
    spec.base_seed = kBaseSeed;
    const ResultSet results = run_experiment(spec);
    mean_greedy[i] = results.summary(SchedulerKind::greedy).mean;
    mean_learning[i] = results.summary(SchedulerKind::learning).mean;
    gap[i] = mean_greedy[i] - mean_learning[i];
    ++i;
  }
  const bool near = mean_learning[0] >= 0.9 * mean_greedy[0] &&
                    mean_learning[1] >= 0.9 * mean_greedy[1];
  const bool shrinks = gap[1] <= gap[0] + 0.05;
  report(5, "near-optimality", near && shrinks,
         "learning/greedy " + fmt(mean_learning[0] / mean_greedy[0]) + " @400m, " +
             fmt(mean_learning[1] / mean_greedy[1]) + " @200m; gap " + fmt(gap[0]) + " -> " +
             fmt(gap[1]));
}

// 6. With a single AP, every sequence yields the same cycle utility.
void criterion_decoupling() {
  double worst = 0.0;
  for (int ues : {3, 4}) {
    SystemConfig config;
    config.num_aps_N = 1;
    config.num_ues_per_ap_M = ues;
    const int seeds = ues == 3 ? 25 : 5;
    for (int s = 0; s < seeds; ++s) {
      Rng rng(trial_seed(kBaseSeed, s));
      const Scenario scenario = make_scenario(config, rng);
      double low = 1e300, high = -1e300;
      for (const BeamSequence& sequence : enumerate_sequences(ues)) {
        const double utility = cycle_utility(scenario, {sequence}, 0);
        low = std::min(low, utility);
        high = std::max(high, utility);
      }
      worst = std::max(worst, high - low);
    }
  }
  report(6, "permutation decoupling", worst <= 1e-12, "max spread " + fmt(worst) + " <= 1e-12");
}

// 7. Physical-layer point checks: thermal noise, codebook norms, beam
// selection against a full scan.
void criterion_physics() {
  const SystemConfig config = config_n2(5, 400.0);

  const double noise = noise_power_watts(config);
  const bool noise_ok = std::abs(noise - 2.0710e-12) <= 1e-4 * 2.0710e-12;

  const Codebook codebook = build_codebook(config);
  double worst_norm = 0.0;
  for (const CxVector& entry : codebook.entries) {
    double norm = 0.0;
    for (const Cx& c : entry) norm += std::norm(c);
    worst_norm = std::max(worst_norm, std::abs(norm - 1.0));
  }

  Rng rng(kBaseSeed);
  int mismatches = 0;
  for (int i = 0; i < 1000; ++i) {
    const CxVector h = generate_channel(rng, config);
    int best = -1;
    double best_gain = -1.0;
    for (int c = 0; c < codebook.size(); ++c) {
      const double gain = beamforming_gain(codebook.entries[c], h);
      if (gain > best_gain) {
        best_gain = gain;
        best = c;
      }
    }
    if (select_beam(codebook, h) != best) ++mismatches;
  }

  const bool ok = noise_ok && worst_norm <= 1e-12 && mismatches == 0;
  report(7, "physical-layer point checks", ok,
         "noise " + fmt(noise) + " W, worst codebook norm error " + fmt(worst_norm) +
             ", beam mismatches " + std::to_string(mismatches) + "/1000");
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// 8. Bit-identical result files for the same base seed, serial or threaded.
void criterion_determinism() {
  ExperimentSpec spec;
  spec.config = config_n2(3, 200.0);
  spec.trials = 12;
  spec.base_seed = kBaseSeed;
  spec.threads = 4;

  const fs::path dir_a = fs::temp_directory_path() / "beamsched_accept_a";
  const fs::path dir_b = fs::temp_directory_path() / "beamsched_accept_b";
  const fs::path dir_c = fs::temp_directory_path() / "beamsched_accept_c";
  for (const fs::path& dir : {dir_a, dir_b, dir_c}) fs::remove_all(dir);

  write_result_files(run_experiment(spec), dir_a);
  write_result_files(run_experiment(spec), dir_b);
  ExperimentSpec serial = spec;
  serial.threads = 1;
  write_result_files(run_experiment(serial), dir_c);

  bool ok = true;
  int compared = 0;
  for (const auto& entry : fs::directory_iterator(dir_a)) {
    const std::string name = entry.path().filename().string();
    const std::string content = read_file(entry.path());
    ok = ok && !content.empty();
    ok = ok && content == read_file(dir_b / name);
    ok = ok && content == read_file(dir_c / name);
    ++compared;
  }
  ok = ok && compared == 14;  // 4 schedulers x 3 kinds + 2 trace files
  report(8, "determinism", ok,
         std::to_string(compared) + " files byte-identical across reruns and thread counts");
  for (const fs::path& dir : {dir_a, dir_b, dir_c}) fs::remove_all(dir);
}

}  // namespace

int main() {
  criterion_simplex();
  criterion_dominance();
  criterion_counters();
  criterion_convergence();
  criterion_near_optimality();
  criterion_decoupling();
  criterion_physics();
  criterion_determinism();
  if (failures == 0)
    std::printf("all 8 acceptance criteria passed\n");
  else
    std::printf("%d acceptance criteria FAILED\n", failures);
  return failures == 0 ? 0 : 1;
}
