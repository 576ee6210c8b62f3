#include "derange/ranking.hpp"

#include <cassert>
#include <stdexcept>

namespace derange {

DerangementRanker::DerangementRanker(std::uint32_t n) : n_(n) {
  if (n < 2 || n > kMaxN)
    throw std::invalid_argument("DerangementRanker: n must be in 2.." + std::to_string(kMaxN));
  // N(m, f) = N(m, f-1) - N(m-1, f-1), N(m, 0) = m!: bijections of m labels
  // onto m positions avoiding f label==position coincidences.
  completions_.assign(n + 1, {});
  completions_[0] = {1};
  std::uint64_t fact = 1;
  for (std::uint32_t m = 1; m <= n; ++m) {
    fact *= m;
    completions_[m].assign(m + 1, 0);
    completions_[m][0] = fact;
    for (std::uint32_t f = 1; f <= m; ++f)
      completions_[m][f] = completions_[m][f - 1] - completions_[m - 1][f - 1];
  }
}

std::uint64_t DerangementRanker::rank(std::span<const std::uint32_t> images) const {
  if (images.size() != n_) throw std::invalid_argument("rank: wrong length");
  std::uint64_t r = 0;
  std::vector<bool> used(n_, false);
  for (std::uint32_t i = 0; i < n_; ++i) {
    const std::uint32_t chosen = images[i];
    assert(chosen != i && chosen < n_ && !used[chosen]);
    const std::uint32_t m = n_ - i;  // unused labels before this choice
    // g: unused labels that still coincide with a position beyond i.
    std::uint32_t g = 0, below = 0, between = 0;
    for (std::uint32_t v = 0; v < n_; ++v) {
      if (used[v]) continue;
      if (v > i) ++g;
      if (v < chosen) {
        if (v < i) ++below;
        else if (v > i) ++between;
      }
    }
    // Candidates smaller than the chosen label: those below position i keep
    // g dangerous labels for the remaining m-1 positions; those between i
    // and the chosen label consume one.
    if (below > 0) r += below * completions_[m - 1][g];
    if (between > 0) r += between * completions_[m - 1][g - 1];
    used[chosen] = true;
  }
  return r;
}

}  // namespace derange
