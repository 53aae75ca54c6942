#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "beamsched/rng.hpp"
#include "beamsched/scenario.hpp"
#include "beamsched/sequences.hpp"
#include "beamsched/utility.hpp"

namespace beamsched {

// Counts objective evaluations in the units of the complexity analysis:
// one joint network-utility evaluation for the exhaustive search, one
// per-AP cycle-utility evaluation for the distributed schedulers. The
// random baseline evaluates nothing.
struct EvalCounter {
  std::uint64_t evaluations = 0;

  void add(std::uint64_t n = 1) { evaluations += n; }
};

inline constexpr std::uint64_t kDefaultExhaustiveBudget = 10'000'000;

// Human-readable (M!)^N, exact when it fits, scientific once saturated.
inline std::string format_joint_space(int ues_per_ap, int num_aps) {
  const std::uint64_t space = joint_space_size(ues_per_ap, num_aps);
  if (space != std::numeric_limits<std::uint64_t>::max()) return std::to_string(space);
  const long double approx =
      std::pow(static_cast<long double>(factorial(ues_per_ap)), static_cast<long double>(num_aps));
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.3Le", approx);
  return buffer;
}

// Each AP draws its sequence uniformly over the M! permutations.
inline JointSchedule random_schedule(Rng& rng, int ues_per_ap, int num_aps) {
  if (num_aps < 1) throw std::invalid_argument("random_schedule: num_aps must be at least 1");
  const std::uint64_t space = factorial(ues_per_ap);
  JointSchedule joint;
  joint.reserve(num_aps);
  for (int n = 0; n < num_aps; ++n) joint.push_back(sequence_at(ues_per_ap, rng.uniform_below(space)));
  return joint;
}

struct ExhaustiveResult {
  JointSchedule schedule;
  double utility = 0.0;
};

// Joint maximization of the network utility over all (M!)^N combinations,
// visited in lexicographic rank order so ties resolve to the smallest
// joint rank tuple. Refuses instances larger than the budget.
inline ExhaustiveResult exhaustive_search(const Scenario& scenario, EvalCounter& counter,
                                          std::uint64_t budget = kDefaultExhaustiveBudget) {
  const int num_aps = scenario.config.num_aps_N;
  const int ues = scenario.config.num_ues_per_ap_M;
  const std::uint64_t space = joint_space_size(ues, num_aps);
  if (space > budget)
    throw std::domain_error("exhaustive search refused: (M!)^N = " +
                            format_joint_space(ues, num_aps) +
                            " joint schedules exceeds budget " + std::to_string(budget));

  const std::vector<BeamSequence> sequences = enumerate_sequences(ues);
  std::vector<std::size_t> ranks(num_aps, 0);
  JointSchedule joint(num_aps, sequences[0]);
  ExhaustiveResult best{joint, -std::numeric_limits<double>::infinity()};
  while (true) {
    const double utility = network_utility(scenario, joint);
    counter.add(1);
    if (utility > best.utility) best = {joint, utility};
    int pos = num_aps - 1;
    while (pos >= 0 && ranks[pos] + 1 == sequences.size()) {
      ranks[pos] = 0;
      joint[pos] = sequences[0];
      --pos;
    }
    if (pos < 0) break;
    ++ranks[pos];
    joint[pos] = sequences[ranks[pos]];
  }
  return best;
}

struct GreedyStep {
  int iteration = 0;           // 1-based
  int ap = 0;                  // 0-based
  std::uint64_t sequence_rank = 0;  // 0-based lexicographic rank adopted
  double utility = 0.0;        // the AP's own cycle utility after adoption
};

struct GreedyResult {
  JointSchedule schedule;
  std::vector<GreedyStep> trace;
};

// Block-coordinate search from a random start: AP by AP, scan all M! own
// sequences with every other AP held fixed and adopt the argmax (smallest
// rank on ties); repeat for num_iterations rounds.
inline GreedyResult greedy_schedule(const Scenario& scenario, int num_iterations, Rng& rng,
                                    EvalCounter& counter) {
  if (num_iterations < 1)
    throw std::invalid_argument("greedy_schedule: num_iterations must be at least 1");
  const int num_aps = scenario.config.num_aps_N;
  const int ues = scenario.config.num_ues_per_ap_M;

  GreedyResult result;
  result.schedule = random_schedule(rng, ues, num_aps);
  const std::vector<BeamSequence> sequences = enumerate_sequences(ues);
  result.trace.reserve(static_cast<std::size_t>(num_iterations) * num_aps);
  for (int iteration = 1; iteration <= num_iterations; ++iteration) {
    for (int ap = 0; ap < num_aps; ++ap) {
      std::size_t best_rank = 0;
      double best_utility = -std::numeric_limits<double>::infinity();
      for (std::size_t rank = 0; rank < sequences.size(); ++rank) {
        result.schedule[ap] = sequences[rank];
        const double utility = cycle_utility(scenario, result.schedule, ap);
        counter.add(1);
        if (utility > best_utility) {
          best_utility = utility;
          best_rank = rank;
        }
      }
      result.schedule[ap] = sequences[best_rank];
      result.trace.push_back({iteration, ap, best_rank, best_utility});
    }
  }
  return result;
}

// Linear reward-inaction step. The played action gains weight * reward
// times the probability mass of the others; every other action sheds the
// same factor of its own mass, so the total is preserved analytically.
inline void lri_update(std::vector<double>& probabilities, std::size_t played, double reward,
                       double weight) {
  if (probabilities.empty() || played >= probabilities.size())
    throw std::out_of_range("lri_update: played index out of range");
  if (!(reward >= 0.0 && reward <= 1.0))
    throw std::invalid_argument("lri_update: reward must lie in [0, 1]");
  if (!(weight > 0.0 && weight < 1.0))
    throw std::invalid_argument("lri_update: weight must lie in (0, 1)");
  double sum = 0.0;
  double others = 0.0;
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    if (!(probabilities[i] >= 0.0 && probabilities[i] <= 1.0 + 1e-9))
      throw std::invalid_argument("lri_update: probability outside [0, 1]");
    sum += probabilities[i];
    if (i != played) others += probabilities[i];
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw std::invalid_argument("lri_update: probability vector off the simplex");

  const double step = weight * reward;
  for (std::size_t i = 0; i < probabilities.size(); ++i)
    if (i != played) probabilities[i] -= step * probabilities[i];
  probabilities[played] += step * others;
}

// One automaton per AP.
struct LearningState {
  std::vector<double> probabilities;  // over the M! sequences, lexicographic order
  double max_utility = 0.0;           // running maximum of this AP's realized utilities
  std::uint64_t held = 0;             // most recently played sequence rank (0-based)
};

struct LearningStep {
  int iteration = 0;                // 1-based
  int ap = 0;                       // 0-based
  std::uint64_t sequence_rank = 0;  // 0-based rank played
  double utility = 0.0;
  double max_utility = 0.0;
  double max_probability = 0.0;  // after the update
};

struct LearningResult {
  JointSchedule schedule;
  std::vector<LearningState> automata;
  std::vector<LearningStep> trace;
};

namespace detail {

inline std::size_t sample_index(const std::vector<double>& probabilities, Rng& rng) {
  const double u = rng.uniform01();
  double cumulative = 0.0;
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    cumulative += probabilities[i];
    if (u < cumulative) return i;
  }
  return probabilities.size() - 1;  // rounding left the cumulative sum just under u
}

}  // namespace detail

// Distributed learning over sequence probabilities. Every AP starts uniform
// and draws its first sequence before any utility is computed; then, AP by
// AP within each iteration, the played sequence's normalized reward
// U / U_max drives a reward-inaction update while all other APs hold their
// most recent sequences. After num_iterations rounds each AP commits to its
// most probable sequence (smallest rank on ties).
inline LearningResult learning_schedule(const Scenario& scenario, double weight,
                                        int num_iterations, Rng& rng, EvalCounter& counter) {
  if (num_iterations < 1)
    throw std::invalid_argument("learning_schedule: num_iterations must be at least 1");
  if (!(weight > 0.0 && weight < 1.0))
    throw std::invalid_argument("learning_schedule: weight must lie in (0, 1)");
  const int num_aps = scenario.config.num_aps_N;
  const int ues = scenario.config.num_ues_per_ap_M;
  const std::uint64_t space = factorial(ues);

  LearningResult result;
  result.automata.assign(num_aps,
                         LearningState{std::vector<double>(space, 1.0 / static_cast<double>(space)),
                                       0.0, 0});
  JointSchedule joint(num_aps);
  for (int ap = 0; ap < num_aps; ++ap) {
    result.automata[ap].held = detail::sample_index(result.automata[ap].probabilities, rng);
    joint[ap] = sequence_at(ues, result.automata[ap].held);
  }

  result.trace.reserve(static_cast<std::size_t>(num_iterations) * num_aps);
  for (int iteration = 1; iteration <= num_iterations; ++iteration) {
    for (int ap = 0; ap < num_aps; ++ap) {
      LearningState& state = result.automata[ap];
      const std::uint64_t rank =
          iteration == 1 ? state.held : detail::sample_index(state.probabilities, rng);
      joint[ap] = sequence_at(ues, rank);
      const double utility = cycle_utility(scenario, joint, ap);
      counter.add(1);
      state.max_utility = std::max(state.max_utility, utility);
      // first play and zero-utility runs both degenerate cleanly here
      const double reward = state.max_utility > 0.0 ? utility / state.max_utility : 0.0;
      lri_update(state.probabilities, static_cast<std::size_t>(rank), reward, weight);
      state.held = rank;
      const double max_probability =
          *std::max_element(state.probabilities.begin(), state.probabilities.end());
      result.trace.push_back({iteration, ap, rank, utility, state.max_utility, max_probability});
    }
  }

  result.schedule.resize(num_aps);
  for (int ap = 0; ap < num_aps; ++ap) {
    const auto& probabilities = result.automata[ap].probabilities;
    std::size_t best = 0;
    for (std::size_t i = 1; i < probabilities.size(); ++i)
      if (probabilities[i] > probabilities[best]) best = i;
    result.schedule[ap] = sequence_at(ues, best);
  }
  return result;
}

}  // namespace beamsched
