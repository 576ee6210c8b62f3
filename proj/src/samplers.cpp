#include "derange/samplers.hpp"

#include <cassert>
#include <stdexcept>
#include <utility>

#include "derange/errors.hpp"

namespace derange {

Permutation cyclic_derangement(std::uint32_t n) {
  if (n < 2) throw std::invalid_argument("cyclic_derangement: n must be >= 2");
  std::vector<std::uint32_t> im(n);
  for (std::uint32_t i = 0; i < n; ++i) im[i] = (i + 1) % n;
  return Permutation::from_images(std::move(im));
}

Permutation adjacent_involution(std::uint32_t n) {
  if (n < 2 || n % 2 != 0)
    throw std::invalid_argument("adjacent_involution: n must be even and >= 2");
  std::vector<std::uint32_t> im(n);
  for (std::uint32_t i = 0; i < n; i += 2) {
    im[i] = i + 1;
    im[i + 1] = i;
  }
  return Permutation::from_images(std::move(im));
}

namespace detail {

void sattolo_fill(std::span<std::uint32_t> images, Rng& rng) {
  const auto n = static_cast<std::uint32_t>(images.size());
  for (std::uint32_t i = 0; i < n; ++i) images[i] = i;
  for (std::uint32_t i = n - 1; i >= 1; --i) {
    const auto j = static_cast<std::uint32_t>(rng.next_index(i) - 1);  // 0..i-1, never i
    std::swap(images[i], images[j]);
  }
}

void fisher_yates_fill(std::span<std::uint32_t> images, Rng& rng) {
  const auto n = static_cast<std::uint32_t>(images.size());
  for (std::uint32_t i = 0; i < n; ++i) images[i] = i;
  for (std::uint32_t i = n - 1; i >= 1; --i) {
    const auto j = static_cast<std::uint32_t>(rng.next_index(i + 1) - 1);  // 0..i
    std::swap(images[i], images[j]);
  }
}

void rejection_fill(std::span<std::uint32_t> images, Rng& rng) {
  do {
    fisher_yates_fill(images, rng);
  } while (!is_derangement(images));
}

bool sis_fill(std::span<std::uint32_t> images, std::span<std::uint32_t> pool,
              std::span<std::uint32_t> pos, Rng& rng) {
  const auto n = static_cast<std::uint32_t>(images.size());
  // pool holds the unused labels; pos[v] is v's index in pool.
  for (std::uint32_t v = 0; v < n; ++v) {
    pool[v] = v;
    pos[v] = v;
  }
  std::uint32_t remaining = n;
  for (std::uint32_t i = 0; i < n; ++i) {
    assert(remaining == n - i);
    std::uint32_t v;
    if (remaining == 1) {
      if (pool[0] == i) return false;  // J \ {i} empty; only possible at i = n-1
      v = pool[0];                     // forced final label
    } else {
      do {
        v = pool[rng.next_index(remaining) - 1];
      } while (v == i);  // uniform on J \ {i}
    }
    images[i] = v;
    // remove v from the pool (swap with last)
    const std::uint32_t last = pool[remaining - 1];
    pool[pos[v]] = last;
    pos[last] = pos[v];
    --remaining;
  }
  return true;
}

}  // namespace detail

Permutation sattolo(std::uint32_t n, Rng& rng) {
  if (n < 2) throw std::invalid_argument("sattolo: n must be >= 2");
  std::vector<std::uint32_t> im(n);
  detail::sattolo_fill(im, rng);
  return Permutation::from_images(std::move(im));
}

Permutation fisher_yates(std::uint32_t n, Rng& rng) {
  if (n < 1) throw std::invalid_argument("fisher_yates: n must be >= 1");
  std::vector<std::uint32_t> im(n);
  detail::fisher_yates_fill(im, rng);
  return Permutation::from_images(std::move(im));
}

bool same_cycle(std::span<const std::uint32_t> s, std::uint32_t i, std::uint32_t j) {
  if (i == j) return true;
  std::uint32_t a = s[i];
  std::uint32_t b = s[j];
  for (;;) {
    if (a == j || b == i) return true;
    if (a == i || b == j) return false;  // one cycle closed without meeting the other position
    a = s[a];
    b = s[b];
  }
}

StepOutcome attempt_restricted_swap(std::span<std::uint32_t> s, std::uint32_t i,
                                    std::uint32_t j) {
  if (s[i] == j || s[j] == i) return StepOutcome::rejected;
  if (i == j) return StepOutcome::vacuous;
  const bool split = same_cycle(s, i, j);
  std::swap(s[i], s[j]);
  return split ? StepOutcome::split : StepOutcome::joined;
}

StepOutcome attempt_partner_swap(std::span<std::uint32_t> s, std::uint32_t i, std::uint32_t j) {
  if (s[i] == j || s[j] == i) return StepOutcome::rejected;  // same pair (or would fix a point)
  if (i == j) return StepOutcome::vacuous;
  const std::uint32_t pi = s[i];
  const std::uint32_t pj = s[j];
  s[i] = pj;
  s[pj] = i;
  s[j] = pi;
  s[pi] = j;
  return StepOutcome::switched;
}

void WalkConfig::validate() const {
  if (n < 4) throw std::invalid_argument("walk: n must be >= 4");
  switch (initial) {
    case Initial::cyclic:
      if (mix < (n + 1) / 2)
        throw std::invalid_argument("walk: cyclic start needs mix >= ceil(n/2) to reach every "
                                    "cycle count");
      break;
    case Initial::involution:
      if (n % 2 != 0) throw std::invalid_argument("walk: involution start needs even n");
      break;
    case Initial::given:
      if (!start) throw std::invalid_argument("walk: missing start permutation");
      if (start->size() != n) throw std::invalid_argument("walk: start has wrong length");
      if (!is_derangement(*start))
        throw std::invalid_argument("walk: start must be a derangement");
      break;
  }
}

Permutation restricted_transposition_walk(const WalkConfig& cfg, Rng& rng) {
  cfg.validate();
  Permutation p;
  switch (cfg.initial) {
    case WalkConfig::Initial::cyclic: p = cyclic_derangement(cfg.n); break;
    case WalkConfig::Initial::involution: p = adjacent_involution(cfg.n); break;
    case WalkConfig::Initial::given: p = *cfg.start; break;
  }
  std::vector<std::uint32_t> im(p.images().begin(), p.images().end());
  const bool matching_mode = cfg.initial == WalkConfig::Initial::involution;
  const std::uint32_t n = cfg.n;
  for (std::uint64_t m = 0; m < cfg.mix; ++m) {
    const auto i = static_cast<std::uint32_t>(rng.next_index(n) - 1);
    const auto j = static_cast<std::uint32_t>(rng.next_index(n) - 1);
    if (matching_mode)
      attempt_partner_swap(im, i, j);
    else
      try_restricted_swap(im, i, j);
  }
  return Permutation::from_images(std::move(im));
}

Permutation perfect_matching_sampler(std::uint32_t n, std::uint64_t mix, Rng& rng) {
  if (n < 4 || n % 2 != 0)
    throw std::invalid_argument("perfect_matching_sampler: n must be even and >= 4");
  WalkConfig cfg;
  cfg.n = n;
  cfg.mix = mix;
  cfg.initial = WalkConfig::Initial::involution;
  Permutation out = restricted_transposition_walk(cfg, rng);
  if (!is_fixed_point_free_involution(out))
    throw internal_consistency_error("matching walk left the involution class");
  return out;
}

SisOutcome sis_derangement(std::uint32_t n, Rng& rng) {
  if (n < 2) throw std::invalid_argument("sis_derangement: n must be >= 2");
  std::vector<std::uint32_t> im(n), pool(n), pos(n);
  const std::uint64_t draws_before = rng.index_draws();
  SisOutcome out;
  if (detail::sis_fill(im, pool, pos, rng)) out.result = Permutation::from_images(std::move(im));
  out.draws = rng.index_draws() - draws_before;
  return out;
}

SisRetryOutcome sis_retry(std::uint32_t n, Rng& rng) {
  if (n < 2) throw std::invalid_argument("sis_retry: n must be >= 2");
  std::vector<std::uint32_t> im(n), pool(n), pos(n);
  SisRetryOutcome out;
  for (;;) {
    ++out.attempts;
    if (detail::sis_fill(im, pool, pos, rng)) break;
  }
  out.result = Permutation::from_images(std::move(im));
  return out;
}

Permutation rejection_sampler(std::uint32_t n, Rng& rng) {
  if (n < 2) throw std::invalid_argument("rejection_sampler: n must be >= 2");
  std::vector<std::uint32_t> im(n);
  detail::rejection_fill(im, rng);
  return Permutation::from_images(std::move(im));
}

}  // namespace derange
