#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <stdexcept>

namespace derange {

// splitmix64 step constants (Steele, Lea & Flood / Vigna's seeding helper).
inline constexpr std::uint64_t kSplitmixGamma = 0x9E3779B97F4A7C15ull;

// splitmix64 output for counter value x + gamma (the standard finalizer
// applied after advancing the counter once).
inline std::uint64_t splitmix64_mix(std::uint64_t x) {
  std::uint64_t z = x + kSplitmixGamma;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// xoshiro256+ with splitmix64 seeding. Bit-exact across platforms; one
// instance per thread of execution, never shared.
class Rng {
 public:
  // Expands the master seed into four state words through successive
  // splitmix64 outputs. Distinct seeds always yield distinct states.
  explicit Rng(std::uint64_t master_seed) : seed_(master_seed) {
    std::uint64_t c = master_seed;
    for (auto& w : s_) {
      w = splitmix64_mix(c);
      c += kSplitmixGamma;
    }
    if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = kSplitmixGamma;  // never all-zero
  }

  // Reproducible per-worker stream: the worker seed is
  // splitmix64_mix(master ^ splitmix64_mix(worker + kWorkerSalt)), then
  // expanded as above. Injective in worker for a fixed master, so distinct
  // workers always get distinct state vectors.
  static Rng derive_stream(std::uint64_t master_seed, std::uint64_t worker) {
    Rng r(splitmix64_mix(master_seed ^ splitmix64_mix(worker + kWorkerSalt)));
    r.seed_ = master_seed;
    return r;
  }

  // Output s0 + s3 computed before the state update.
  std::uint64_t next_u64() {
    const std::uint64_t result = s_[0] + s_[3];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = std::rotl(s_[3], 45);
    return result;
  }

  // Uniform deviate in the open interval (0,1): top 53 bits scaled by 2^-53,
  // redrawing the (2^-53-probability) exact zero.
  double next_unit_open() {
    for (;;) {
      const double u = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
      if (u > 0.0) return u;
    }
  }

  // Uniform on {1,...,n} by exact rejection sampling on 64-bit words
  // (multiply-shift bound with rejection on the low word; no modulo bias).
  std::uint64_t next_index(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("next_index: n must be >= 1");
    ++index_draws_;
    unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * n;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < n) {
      const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
      while (lo < threshold) {
        m = static_cast<unsigned __int128>(next_u64()) * n;
        lo = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64) + 1;
  }

  std::uint64_t master_seed() const { return seed_; }
  const std::array<std::uint64_t, 4>& state() const { return s_; }
  void restore(const std::array<std::uint64_t, 4>& s, std::uint64_t master_seed) {
    if ((s[0] | s[1] | s[2] | s[3]) == 0)
      throw std::invalid_argument("Rng::restore: all-zero state");
    s_ = s;
    seed_ = master_seed;
  }

  // Number of next_index calls made so far (one per random index choice,
  // regardless of how many words the rejection loop consumed).
  std::uint64_t index_draws() const { return index_draws_; }

 private:
  static constexpr std::uint64_t kWorkerSalt = 0xA0761D6478BD642Full;

  std::array<std::uint64_t, 4> s_{};
  std::uint64_t seed_ = 0;
  std::uint64_t index_draws_ = 0;
};

}  // namespace derange
