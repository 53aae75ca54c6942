#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace beamsched {

// A beam sequence is a permutation of the UE indices 0..M-1; the entry at
// slot s is the UE served in that slot. A joint schedule holds one sequence
// per AP.
using BeamSequence = std::vector<int>;
using JointSchedule = std::vector<BeamSequence>;

// Sequence ranks are stored in 64-bit integers; 12! is the largest factorial
// the configuration layer accepts.
inline constexpr int kMaxSequenceLength = 12;

inline std::uint64_t factorial(int m) {
  if (m < 0 || m > 20) throw std::out_of_range("factorial: argument out of range");
  std::uint64_t f = 1;
  for (int i = 2; i <= m; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

namespace detail {

inline void check_sequence_length(int ues_per_ap) {
  if (ues_per_ap < 1 || ues_per_ap > kMaxSequenceLength)
    throw std::out_of_range("sequence length " + std::to_string(ues_per_ap) +
                            " outside [1, " + std::to_string(kMaxSequenceLength) + "]");
}

}  // namespace detail

// All M! sequences in lexicographic order; rank k (0-based) in this list is
// the canonical identifier used by the schedulers.
inline std::vector<BeamSequence> enumerate_sequences(int ues_per_ap) {
  detail::check_sequence_length(ues_per_ap);
  BeamSequence sequence(ues_per_ap);
  std::iota(sequence.begin(), sequence.end(), 0);
  std::vector<BeamSequence> all;
  all.reserve(factorial(ues_per_ap));
  do {
    all.push_back(sequence);
  } while (std::next_permutation(sequence.begin(), sequence.end()));
  return all;
}

// Lexicographic unranking via the factorial number system; equals
// enumerate_sequences(m)[rank] without materializing the list.
inline BeamSequence sequence_at(int ues_per_ap, std::uint64_t rank) {
  detail::check_sequence_length(ues_per_ap);
  if (rank >= factorial(ues_per_ap))
    throw std::out_of_range("sequence_at: rank " + std::to_string(rank) + " out of range");
  std::vector<int> pool(ues_per_ap);
  std::iota(pool.begin(), pool.end(), 0);
  BeamSequence sequence;
  sequence.reserve(ues_per_ap);
  for (int remaining = ues_per_ap - 1; remaining >= 0; --remaining) {
    const std::uint64_t f = factorial(remaining);
    const std::size_t digit = static_cast<std::size_t>(rank / f);
    rank %= f;
    sequence.push_back(pool[digit]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(digit));
  }
  return sequence;
}

inline bool is_valid_sequence(const BeamSequence& sequence) {
  std::vector<bool> used(sequence.size(), false);
  for (int ue : sequence) {
    if (ue < 0 || ue >= static_cast<int>(sequence.size()) || used[ue]) return false;
    used[ue] = true;
  }
  return !sequence.empty();
}

// (M!)^N, saturating at the 64-bit maximum.
inline std::uint64_t joint_space_size(int ues_per_ap, int num_aps) {
  detail::check_sequence_length(ues_per_ap);
  if (num_aps < 1) throw std::out_of_range("joint_space_size: num_aps must be at least 1");
  const std::uint64_t f = factorial(ues_per_ap);
  std::uint64_t total = 1;
  for (int n = 0; n < num_aps; ++n) {
    if (total > std::numeric_limits<std::uint64_t>::max() / f)
      return std::numeric_limits<std::uint64_t>::max();
    total *= f;
  }
  return total;
}

}  // namespace beamsched
