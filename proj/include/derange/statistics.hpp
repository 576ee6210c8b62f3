#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "derange/combinatorics.hpp"
#include "derange/permutation.hpp"

namespace derange {

// Running histogram of cycle counts over derangement samples of length n.
class EmpiricalMeasure {
 public:
  explicit EmpiricalMeasure(std::uint32_t n);

  void accumulate(const Permutation& p);  // validates length and derangement-hood
  void add_cycle_count(std::uint32_t k, std::uint64_t weight = 1);  // trusted fast path

  std::uint32_t n() const { return n_; }
  std::uint64_t total() const { return total_; }
  std::span<const std::uint64_t> counts() const { return counts_; }  // index 0 <-> k = 1
  double mass(std::uint32_t k) const;                                // mu(k)

 private:
  std::uint32_t n_ = 0;
  std::uint64_t total_ = 0;
  std::vector<std::uint64_t> counts_;
};

// 1/2 sum_k |p(k) - q(k)| over the common support length.
double tv_distance(std::span<const double> p, std::span<const double> q);
double tv_distance(const EmpiricalMeasure& m, const CycleCountDistribution& nu);

// --- mixing time ------------------------------------------------------------

// How the per-step distance trajectory is averaged:
//   time_average - each run keeps the running time average of its visited
//                  cycle counts; the per-run distances are averaged across
//                  runs. This is the primary estimator: it reproduces the
//                  t_mix ~ 0.9 n^0.527 * 2 log n reference values, e.g. 67
//                  at n=64 (the pooled convention relaxes in ~n/5 steps and
//                  does not).
//   ensemble     - pooled cycle-count distribution across runs at fixed t,
//                  kept as the comparison mode.
enum class TrajectoryAveraging { time_average, ensemble };

struct MixingResult {
  std::uint32_t n = 0;
  double epsilon = 0;
  std::uint64_t runs = 0;
  bool mixed = false;
  std::int64_t t_mix = -1;         // first t with <d_TV(t)> < epsilon; -1 if never
  std::vector<double> trajectory;  // <d_TV(t)> for t = 0..max_t
};

// Independent restricted-transposition walks from the cyclic derangement,
// cycle counts maintained incrementally (one unit per accepted swap),
// distances evaluated after every attempted transposition. Worker w draws
// from the derived stream (master_seed, stream_base + w).
MixingResult mixing_time(std::uint32_t n, double epsilon, std::uint64_t runs,
                         std::uint64_t max_t, std::uint64_t master_seed, unsigned workers = 1,
                         TrajectoryAveraging averaging = TrajectoryAveraging::time_average,
                         std::uint64_t stream_base = 0);

// --- mixing-law fit ----------------------------------------------------------

struct FitPoint {
  double n = 0;
  double t_mix = 0;
};

struct FitResult {
  double a = 0;
  double c = 0;
  double residual = 0;  // sum of squared residuals in the log domain
};

// Least squares of log t = log c + a log n + log(2 log n) (the model
// t = c n^a log n^2 with log n^2 read as 2 log n).
FitResult fit_mixing_law(std::span<const FitPoint> points);

// --- SIS failure experiments --------------------------------------------------

// (1/(n-1)) prod_{i=1}^{n-1} [1 + 1/((n-2)(n-i))]^{-1}. An approximation of
// the failure probability that is not a valid upper bound at small n
// (n = 3 gives 1/6 while the true probability is 1/4); reported, never
// asserted against.
double refined_failure_bound(std::uint32_t n);

struct FailureReport {
  std::uint32_t n = 0;
  std::uint64_t samples = 0;
  std::uint64_t failures = 0;
  double rate = 0;
  double std_error = 0;         // binomial standard error of rate
  double bound_one_over_n = 0;  // 1/n
  double bound_refined = 0;     // refined_failure_bound(n)
};

FailureReport failure_experiment_single(std::uint32_t n, std::uint64_t samples,
                                        std::uint64_t master_seed, unsigned workers = 1,
                                        std::uint64_t stream_base = 0);
std::vector<FailureReport> failure_experiment(std::span<const std::uint32_t> n_list,
                                              std::uint64_t samples, std::uint64_t master_seed,
                                              unsigned workers = 1);

// --- goodness of fit ----------------------------------------------------------

struct GofResult {
  double statistic = 0;
  std::uint32_t dof = 0;
  double p_value = 1;
  std::uint32_t bins = 0;  // bins remaining after tail merge
};

// Pearson chi-squared of the measure against expected counts total*nu(k),
// right tail merged leftwards until every merged expected count is >= 5.
GofResult chi_square_gof(const EmpiricalMeasure& m, const CycleCountDistribution& nu);

// --- uniformity of occurrence counts ------------------------------------------

enum class SamplerKind { sis, walk, rejection, sattolo };

struct UniformityResult {
  std::uint32_t n = 0;
  std::uint64_t multiplier = 0;
  std::uint64_t dn = 0;             // |D_n|
  std::uint64_t total_samples = 0;  // multiplier * dn
  double mean = 0;                  // mean occurrence count (= multiplier)
  double sd = 0;                    // population sd of occurrence counts
  std::uint32_t min_count = 0;
  std::uint32_t max_count = 0;
  bool full_coverage = false;  // every derangement appeared at least once
  std::vector<std::pair<std::uint64_t, std::uint64_t>> histogram;  // (bin lower edge, size-5 bin count)
};

// Draws multiplier*|D_n| derangements and tallies occurrences per
// derangement via lexicographic ranking. 4 <= n <= 11.
UniformityResult uniformity_experiment(std::uint32_t n, std::uint64_t multiplier,
                                       SamplerKind sampler, std::uint64_t master_seed);

// --- repeated-sample check -----------------------------------------------------

struct CollisionResult {
  std::uint32_t n = 0;
  std::uint64_t samples = 0;
  std::uint64_t repeats = 0;  // samples minus distinct derangements drawn
};

// Draws completed SIS derangements and counts exact repeats. Hash-based with
// an exact second pass over duplicated hash values, so the count is exact.
CollisionResult repeat_collision_check(std::uint32_t n, std::uint64_t samples,
                                       std::uint64_t master_seed);

}  // namespace derange
