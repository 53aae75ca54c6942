#pragma once

#include <array>
#include <atomic>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "beamsched/config.hpp"
#include "beamsched/rng.hpp"
#include "beamsched/scenario.hpp"
#include "beamsched/schedulers.hpp"
#include "beamsched/utility.hpp"

namespace beamsched {

enum class SchedulerKind { random = 0, exhaustive = 1, greedy = 2, learning = 3 };

inline constexpr std::array<SchedulerKind, 4> kAllSchedulers = {
    SchedulerKind::random, SchedulerKind::exhaustive, SchedulerKind::greedy,
    SchedulerKind::learning};

inline const char* scheduler_name(SchedulerKind kind) {
  switch (kind) {
    case SchedulerKind::random: return "random";
    case SchedulerKind::exhaustive: return "exhaustive";
    case SchedulerKind::greedy: return "greedy";
    case SchedulerKind::learning: return "learning";
  }
  throw std::invalid_argument("scheduler_name: unknown scheduler");
}

inline std::optional<SchedulerKind> scheduler_from_name(std::string_view name) {
  for (SchedulerKind kind : kAllSchedulers)
    if (name == scheduler_name(kind)) return kind;
  return std::nullopt;
}

struct ExperimentSpec {
  SystemConfig config;
  std::vector<SchedulerKind> schedulers{kAllSchedulers.begin(), kAllSchedulers.end()};
  int trials = 200;
  std::uint64_t base_seed = 1;
  std::uint64_t exhaustive_budget = kDefaultExhaustiveBudget;
  int threads = 1;
};

struct SchedulerOutcome {
  double network_utility = 0.0;
  std::uint64_t evaluations = 0;
};

struct TrialRecord {
  std::uint64_t seed = 0;
  std::array<std::optional<SchedulerOutcome>, 4> outcomes;  // indexed by SchedulerKind
  std::vector<GreedyStep> greedy_trace;
  std::vector<LearningStep> learning_trace;

  const std::optional<SchedulerOutcome>& outcome(SchedulerKind kind) const {
    return outcomes[static_cast<std::size_t>(kind)];
  }
};

// Per-scheduler aggregate. Mean and variance are computed over the sorted
// samples so that reloading the emitted CDF reproduces them bit-exactly.
struct SchedulerSummary {
  SchedulerKind scheduler = SchedulerKind::random;
  std::vector<double> sorted_utilities;
  double mean = 0.0;
  double variance = 0.0;  // unbiased, 0 for a single trial
  std::uint64_t total_evaluations = 0;
};

struct ResultSet {
  ExperimentSpec spec;
  std::vector<SchedulerKind> executed;
  std::vector<std::string> refusals;
  std::vector<TrialRecord> trials;
  std::vector<SchedulerSummary> summaries;  // in `executed` order

  const SchedulerSummary& summary(SchedulerKind kind) const {
    for (const SchedulerSummary& s : summaries)
      if (s.scheduler == kind) return s;
    throw std::out_of_range(std::string("no summary for scheduler ") + scheduler_name(kind));
  }
};

struct CdfPoint {
  double value = 0.0;
  double fraction = 0.0;
};

// Order statistics with cumulative fractions k/n.
inline std::vector<CdfPoint> empirical_cdf(std::span<const double> samples) {
  if (samples.empty()) throw std::invalid_argument("empirical_cdf: no samples");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<CdfPoint> cdf;
  cdf.reserve(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i)
    cdf.push_back({sorted[i], static_cast<double>(i + 1) / static_cast<double>(sorted.size())});
  return cdf;
}

namespace detail {

struct MeanVariance {
  double mean = 0.0;
  double variance = 0.0;
};

inline MeanVariance mean_variance(std::span<const double> values) {
  MeanVariance mv;
  if (values.empty()) return mv;
  double sum = 0.0;
  for (double v : values) sum += v;
  mv.mean = sum / static_cast<double>(values.size());
  if (values.size() < 2) return mv;
  double squares = 0.0;
  for (double v : values) squares += (v - mv.mean) * (v - mv.mean);
  mv.variance = squares / static_cast<double>(values.size() - 1);
  return mv;
}

inline void run_trial(const ExperimentSpec& spec, const std::vector<SchedulerKind>& executed,
                      int trial_index, TrialRecord& record) {
  const std::uint64_t seed = trial_seed(spec.base_seed, static_cast<std::uint64_t>(trial_index));
  record.seed = seed;

  // stream 0 generates the scenario; streams 1..4 belong to the schedulers,
  // keyed by kind so results do not depend on which other schedulers run
  Rng scenario_rng(stream_seed(seed, 0));
  const Scenario scenario = make_scenario(spec.config, scenario_rng);

  for (SchedulerKind kind : executed) {
    Rng rng(stream_seed(seed, 1 + static_cast<std::uint64_t>(kind)));
    EvalCounter counter;
    SchedulerOutcome outcome;
    switch (kind) {
      case SchedulerKind::random: {
        const JointSchedule joint =
            random_schedule(rng, spec.config.num_ues_per_ap_M, spec.config.num_aps_N);
        outcome.network_utility = network_utility(scenario, joint);
        break;
      }
      case SchedulerKind::exhaustive: {
        const ExhaustiveResult result =
            exhaustive_search(scenario, counter, spec.exhaustive_budget);
        outcome.network_utility = result.utility;
        break;
      }
      case SchedulerKind::greedy: {
        GreedyResult result = greedy_schedule(scenario, spec.config.greedy_iters_NDG, rng, counter);
        outcome.network_utility = network_utility(scenario, result.schedule);
        record.greedy_trace = std::move(result.trace);
        break;
      }
      case SchedulerKind::learning: {
        LearningResult result = learning_schedule(scenario, spec.config.learning_weight_w,
                                                  spec.config.max_learning_iters_T, rng, counter);
        outcome.network_utility = network_utility(scenario, result.schedule);
        record.learning_trace = std::move(result.trace);
        break;
      }
    }
    outcome.evaluations = counter.evaluations;
    record.outcomes[static_cast<std::size_t>(kind)] = outcome;
  }
}

}  // namespace detail

// Runs every requested scheduler on identical per-trial inputs. Trials are
// independent and may run on several threads; results are keyed by trial
// index, so the outcome is identical either way.
inline ResultSet run_experiment(const ExperimentSpec& spec) {
  spec.config.validate();
  if (spec.trials < 1) throw std::invalid_argument("run_experiment: trials must be at least 1");
  if (spec.schedulers.empty())
    throw std::invalid_argument("run_experiment: no schedulers selected");
  if (spec.threads < 1) throw std::invalid_argument("run_experiment: threads must be at least 1");

  ResultSet results;
  results.spec = spec;
  for (SchedulerKind kind : spec.schedulers) {
    if (std::find(results.executed.begin(), results.executed.end(), kind) !=
        results.executed.end())
      continue;
    if (kind == SchedulerKind::exhaustive) {
      const std::uint64_t space =
          joint_space_size(spec.config.num_ues_per_ap_M, spec.config.num_aps_N);
      if (space > spec.exhaustive_budget) {
        results.refusals.push_back(
            "exhaustive search refused: (M!)^N = " +
            format_joint_space(spec.config.num_ues_per_ap_M, spec.config.num_aps_N) +
            " joint schedules exceeds budget " + std::to_string(spec.exhaustive_budget));
        continue;
      }
    }
    results.executed.push_back(kind);
  }
  if (results.executed.empty())
    throw std::runtime_error("run_experiment: every requested scheduler was refused: " +
                             (results.refusals.empty() ? std::string("none selected")
                                                       : results.refusals.front()));

  results.trials.resize(spec.trials);
  const int threads = std::min(spec.threads, spec.trials);
  if (threads == 1) {
    for (int trial = 0; trial < spec.trials; ++trial)
      detail::run_trial(spec, results.executed, trial, results.trials[trial]);
  } else {
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&]() {
      for (int trial = next.fetch_add(1); trial < spec.trials; trial = next.fetch_add(1)) {
        try {
          detail::run_trial(spec, results.executed, trial, results.trials[trial]);
        } catch (...) {
          std::scoped_lock lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          return;
        }
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
  }

  for (SchedulerKind kind : results.executed) {
    SchedulerSummary summary;
    summary.scheduler = kind;
    summary.sorted_utilities.reserve(results.trials.size());
    for (const TrialRecord& record : results.trials) {
      const auto& outcome = record.outcome(kind);
      summary.sorted_utilities.push_back(outcome->network_utility);
      summary.total_evaluations += outcome->evaluations;
    }
    std::sort(summary.sorted_utilities.begin(), summary.sorted_utilities.end());
    const auto mv = detail::mean_variance(summary.sorted_utilities);
    summary.mean = mv.mean;
    summary.variance = mv.variance;
    results.summaries.push_back(std::move(summary));
  }
  return results;
}

namespace detail {

inline std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path.string());
  return out;
}

}  // namespace detail

// One file per scheduler per artifact kind (cdf, counters, summary, trace).
// Floating-point columns carry 17 significant digits so files round-trip.
inline void write_result_files(const ResultSet& results, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  for (const SchedulerSummary& summary : results.summaries) {
    const std::string name = scheduler_name(summary.scheduler);

    auto cdf = detail::open_output(out_dir / ("cdf_" + name + ".csv"));
    cdf << "network_utility,cdf_fraction\n";
    for (const CdfPoint& point : empirical_cdf(summary.sorted_utilities))
      cdf << detail::format_double(point.value) << ',' << detail::format_double(point.fraction)
          << '\n';

    auto counters = detail::open_output(out_dir / ("counters_" + name + ".csv"));
    counters << "trial,evaluations\n";
    for (std::size_t trial = 0; trial < results.trials.size(); ++trial)
      counters << trial << ',' << results.trials[trial].outcome(summary.scheduler)->evaluations
               << '\n';

    auto summary_file = detail::open_output(out_dir / ("summary_" + name + ".csv"));
    summary_file << "scheduler,trials,mean,variance,total_evaluations\n";
    summary_file << name << ',' << results.trials.size() << ','
                 << detail::format_double(summary.mean) << ','
                 << detail::format_double(summary.variance) << ',' << summary.total_evaluations
                 << '\n';
  }

  const bool ran_greedy = std::find(results.executed.begin(), results.executed.end(),
                                    SchedulerKind::greedy) != results.executed.end();
  if (ran_greedy) {
    auto trace = detail::open_output(out_dir / "trace_greedy.csv");
    trace << "trial,iteration,ap,sequence_id,utility\n";
    for (std::size_t trial = 0; trial < results.trials.size(); ++trial)
      for (const GreedyStep& step : results.trials[trial].greedy_trace)
        trace << trial << ',' << step.iteration << ',' << step.ap + 1 << ','
              << step.sequence_rank + 1 << ',' << detail::format_double(step.utility) << '\n';
  }
  const bool ran_learning = std::find(results.executed.begin(), results.executed.end(),
                                      SchedulerKind::learning) != results.executed.end();
  if (ran_learning) {
    auto trace = detail::open_output(out_dir / "trace_learning.csv");
    trace << "trial,iteration,ap,sequence_id,utility,u_max,max_probability\n";
    for (std::size_t trial = 0; trial < results.trials.size(); ++trial)
      for (const LearningStep& step : results.trials[trial].learning_trace)
        trace << trial << ',' << step.iteration << ',' << step.ap + 1 << ','
              << step.sequence_rank + 1 << ',' << detail::format_double(step.utility) << ','
              << detail::format_double(step.max_utility) << ','
              << detail::format_double(step.max_probability) << '\n';
  }
}

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

inline std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path.string());
  return in;
}

}  // namespace detail

inline std::vector<double> load_cdf_samples(const std::filesystem::path& path) {
  auto in = detail::open_input(path);
  std::string line;
  if (!std::getline(in, line) || line != "network_utility,cdf_fraction")
    throw std::runtime_error("load_cdf_samples: bad header in " + path.string());
  std::vector<double> samples;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = detail::split_csv_line(line);
    if (fields.size() != 2) throw std::runtime_error("load_cdf_samples: bad row: " + line);
    samples.push_back(detail::parse_double_value("network_utility", fields[0]));
  }
  return samples;
}

struct StoredSummary {
  std::string scheduler;
  int trials = 0;
  double mean = 0.0;
  double variance = 0.0;
  std::uint64_t total_evaluations = 0;
};

inline StoredSummary load_summary(const std::filesystem::path& path) {
  auto in = detail::open_input(path);
  std::string line;
  if (!std::getline(in, line) || line != "scheduler,trials,mean,variance,total_evaluations")
    throw std::runtime_error("load_summary: bad header in " + path.string());
  if (!std::getline(in, line)) throw std::runtime_error("load_summary: missing row");
  const auto fields = detail::split_csv_line(line);
  if (fields.size() != 5) throw std::runtime_error("load_summary: bad row: " + line);
  StoredSummary summary;
  summary.scheduler = fields[0];
  summary.trials = detail::parse_int_value("trials", fields[1]);
  summary.mean = detail::parse_double_value("mean", fields[2]);
  summary.variance = detail::parse_double_value("variance", fields[3]);
  summary.total_evaluations = detail::parse_u64_value("total_evaluations", fields[4]);
  return summary;
}

inline std::vector<std::uint64_t> load_counters(const std::filesystem::path& path) {
  auto in = detail::open_input(path);
  std::string line;
  if (!std::getline(in, line) || line != "trial,evaluations")
    throw std::runtime_error("load_counters: bad header in " + path.string());
  std::vector<std::uint64_t> evaluations;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = detail::split_csv_line(line);
    if (fields.size() != 2) throw std::runtime_error("load_counters: bad row: " + line);
    if (detail::parse_int_value("trial", fields[0]) != static_cast<int>(evaluations.size()))
      throw std::runtime_error("load_counters: trial indices out of order");
    evaluations.push_back(detail::parse_u64_value("evaluations", fields[1]));
  }
  return evaluations;
}

}  // namespace beamsched
