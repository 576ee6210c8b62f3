#pragma once

#include <cstdint>
#include <vector>

#include "derange/bigcount.hpp"
#include "derange/cycle_type.hpp"

namespace derange {

// Exact probability vector nu(k) = d_n^(k) / d_n for k = 1..floor(n/2).
struct CycleCountDistribution {
  std::uint32_t n = 0;
  std::vector<double> nu;  // nu[k-1] = nu(k)

  std::uint32_t max_cycles() const { return static_cast<std::uint32_t>(nu.size()); }
  double operator()(std::uint32_t k) const {
    return (k >= 1 && k <= nu.size()) ? nu[k - 1] : 0.0;
  }
};

// Number of derangements of n labels, by the recursion
// d_{n+1} = n (d_n + d_{n-1}), d_0 = 1, d_1 = 0.
BigCount rencontres(std::uint32_t n);

// Unsigned Stirling number of the first kind [n k]: permutations of n labels
// with k cycles. Computed bottom-up, full triangle memoized.
BigCount stirling_first_unsigned(std::uint32_t n, std::uint32_t k);

// |D_n^(k)| by inclusion-exclusion over forced fixed points:
// sum_{j=0}^{k} (-1)^j C(n,j) [n-j  k-j].
BigCount dnk_inclusion_exclusion(std::uint32_t n, std::uint32_t k);

// |D_n^(k)| by the recursion d_{n+1}^(k) = n (d_n^(k) + d_{n-1}^(k-1)),
// d_0^(0) = 1, d_n^(0) = 0 for n >= 1. Table memoized.
BigCount dnk_recursion(std::uint32_t n, std::uint32_t k);

// nu(k) = d_n^(k)/d_n with the two d_n^(k) routes cross-checked first.
// Throws internal_consistency_error if the routes disagree.
CycleCountDistribution cycle_count_distribution(std::uint32_t n);

// Number of n-permutations of the given cycle type (n = sum k*a_k):
// n! / prod_k k^{a_k} a_k!.
BigCount cauchy_count(const CycleType& type);

// Perfect matchings on the complete graph with n vertices (n even):
// n! / (2^{n/2} (n/2)!) = (n-1)!!.
BigCount perfect_matching_count(std::uint32_t n);

enum class MatchingProbability { exact, asymptotic };

// P(random derangement is a perfect matching), n even, n >= 4.
// exact: perfect_matching_count(n)/d_n; asymptotic: (e/sqrt(pi n)) sqrt((e/n)^n).
double perfect_matching_probability(std::uint32_t n, MatchingProbability mode);

struct NormalApproximation {
  double exact_mean = 0;   // <k> under nu
  double exact_sd = 0;     // sqrt(<k^2> - <k>^2)
  double approx_mean = 0;  // log n
  double approx_sd = 0;    // sqrt(log n)
};

// Exact cycle-count moments next to the log-normal-comparison parameters.
// For n beyond the exact-table range the moments come from the same recursion
// run on probability ratios in double precision (agrees with the exact route
// to ~1e-12 wherever both are available).
NormalApproximation normal_approximation_params(std::uint32_t n);

// Double-precision route for nu(.) used above the exact-table cap; exposed
// so tests can pin it against the exact distribution.
std::vector<double> cycle_count_distribution_fp(std::uint32_t n);

// Largest n for which the exact (cross-checked bigint) route is used by
// cycle-count consumers with an open-ended n.
inline constexpr std::uint32_t kExactDistributionCap = 1024;

}  // namespace derange
