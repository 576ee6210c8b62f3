#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

namespace derange {

// Cycle type (a_1, ..., a_n): a_k cycles of length k, with sum k*a_k = n.
struct CycleType {
  std::vector<std::uint32_t> a;  // a[k-1] = number of k-cycles

  std::uint64_t weighted_sum() const {
    std::uint64_t s = 0;
    for (std::size_t k = 1; k <= a.size(); ++k) s += k * static_cast<std::uint64_t>(a[k - 1]);
    return s;
  }

  std::uint32_t cycle_count() const {
    return std::accumulate(a.begin(), a.end(), std::uint32_t{0});
  }

  // True iff the type describes permutations of exactly n labels.
  bool valid_for(std::uint32_t n) const { return weighted_sum() == n; }

  bool operator==(const CycleType&) const = default;
};

}  // namespace derange
