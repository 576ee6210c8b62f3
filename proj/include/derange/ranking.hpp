#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace derange {

// Lexicographic ranking of derangements. rank() maps a derangement of n
// labels to its 0-based position in the lexicographic enumeration of D_n,
// enabling dense occurrence-count arrays instead of hashing.
//
// Counting principle: with m positions left and f remaining labels that
// still coincide with a remaining position, the number of completions is
// N(m, f) = sum_t (-1)^t C(f,t) (m-t)!. Counts fit in 64 bits up to n = 20.
class DerangementRanker {
 public:
  static constexpr std::uint32_t kMaxN = 20;

  explicit DerangementRanker(std::uint32_t n);

  std::uint32_t n() const { return n_; }
  std::uint64_t count() const { return completions_[n_][n_]; }  // |D_n|

  // images: 0-based permutation images; must be a derangement of length n.
  std::uint64_t rank(std::span<const std::uint32_t> images) const;

 private:
  std::uint32_t n_;
  std::vector<std::vector<std::uint64_t>> completions_;  // N(m, f)
};

}  // namespace derange
