#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "derange/permutation.hpp"
#include "derange/rng.hpp"

namespace derange {

// The cyclic derangement 2 3 ... n 1.
Permutation cyclic_derangement(std::uint32_t n);

// The fixed-point-free involution 2 1 4 3 ... n n-1 (n even).
Permutation adjacent_involution(std::uint32_t n);

// Uniformly random cyclic permutation (single n-cycle), one-pass swap loop,
// exactly n-1 index draws.
Permutation sattolo(std::uint32_t n, Rng& rng);

// Uniformly random permutation (all n! equally likely), n-1 index draws.
Permutation fisher_yates(std::uint32_t n, Rng& rng);

// --- restricted-transposition walk -----------------------------------------

enum class StepOutcome : std::uint8_t {
  rejected,  // condition sigma_i != j && sigma_j != i failed
  vacuous,   // i == j: condition ran, swap is a no-op
  split,     // accepted, i and j were in the same cycle (cycle count +1)
  joined,    // accepted, i and j were in different cycles (cycle count -1)
  switched,  // matching mode: partners exchanged (cycle count unchanged)
};

// True iff positions i and j lie in the same cycle. Bidirectional scan, cost
// bounded by the smaller of the two cycles involved.
bool same_cycle(std::span<const std::uint32_t> images, std::uint32_t i, std::uint32_t j);

// One attempted restricted transposition on 0-based images: swap values at
// positions i and j iff sigma_i != j and sigma_j != i. Preserves
// derangement-hood. i == j is permitted and vacuous.
StepOutcome attempt_restricted_swap(std::span<std::uint32_t> images, std::uint32_t i,
                                    std::uint32_t j);

// Same move without the cycle classification (no same-cycle scan); returns
// true when the condition passed. For loops that only need the final state.
inline bool try_restricted_swap(std::span<std::uint32_t> images, std::uint32_t i,
                                std::uint32_t j) {
  if (images[i] == j || images[j] == i) return false;
  const std::uint32_t tmp = images[i];
  images[i] = images[j];
  images[j] = tmp;
  return true;
}

// Matching-mode step: under the same admissibility condition, reconnect the
// pairs {i, sigma_i}, {j, sigma_j} as {i, sigma_j}, {j, sigma_i}. Requires a
// fixed-point-free involution and keeps the state inside that class.
StepOutcome attempt_partner_swap(std::span<std::uint32_t> images, std::uint32_t i,
                                 std::uint32_t j);

struct WalkConfig {
  enum class Initial { cyclic, involution, given };

  std::uint32_t n = 0;
  std::uint64_t mix = 0;  // attempted transpositions (rejected attempts count)
  Initial initial = Initial::cyclic;
  std::optional<Permutation> start;  // for Initial::given

  void validate() const;
};

// Algorithm: mix attempts, each drawing i and j independently uniform on
// 1..n and swapping under the restriction. Involution initial runs the
// matching-mode step and therefore emits fixed-point-free involutions only.
// Consumes exactly 2*mix index draws.
Permutation restricted_transposition_walk(const WalkConfig& cfg, Rng& rng);

// Matching mode with the involution start, n even.
Permutation perfect_matching_sampler(std::uint32_t n, std::uint64_t mix, Rng& rng);

// --- sequential importance sampling -----------------------------------------

struct SisOutcome {
  std::optional<Permutation> result;  // empty on failure
  std::uint64_t draws = 0;            // random index choices consumed

  bool failed() const { return !result.has_value(); }
};

// Builds sigma_1..sigma_n left to right, each sigma_i uniform on the unused
// labels minus {i}. Fails (returns an empty result) exactly when the last
// remaining label is n. O(n) time.
SisOutcome sis_derangement(std::uint32_t n, Rng& rng);

struct SisRetryOutcome {
  Permutation result;
  std::uint64_t attempts = 0;  // total attempts including the successful one
};

// Retries sis_derangement until it completes.
SisRetryOutcome sis_retry(std::uint32_t n, Rng& rng);

// Uniform over D_n: Fisher-Yates permutations retried until derangement.
// The uniformity oracle for the statistical comparisons.
Permutation rejection_sampler(std::uint32_t n, Rng& rng);

namespace detail {

// Buffer-reusing cores for the hot experiment loops. Each fills `images`
// (0-based, size n) and returns the cycle count of the sample, or 0 where
// failure is possible (SIS only).

void sattolo_fill(std::span<std::uint32_t> images, Rng& rng);
void fisher_yates_fill(std::span<std::uint32_t> images, Rng& rng);
void rejection_fill(std::span<std::uint32_t> images, Rng& rng);

// Returns false on SIS failure. scratch_pool and scratch_pos must have size n.
bool sis_fill(std::span<std::uint32_t> images, std::span<std::uint32_t> scratch_pool,
              std::span<std::uint32_t> scratch_pos, Rng& rng);

}  // namespace detail

}  // namespace derange
