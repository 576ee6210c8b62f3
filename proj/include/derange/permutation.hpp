#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "derange/cycle_type.hpp"

namespace derange {

// Permutation of {1,...,n}. Stored 0-based internally; all text I/O is
// 1-based one-line notation ("2 3 4 1").
class Permutation {
 public:
  static constexpr std::uint32_t kMaxSize = 1u << 24;

  Permutation() = default;

  static Permutation identity(std::uint32_t n);

  // Takes 0-based images, validates bijection.
  static Permutation from_images(std::vector<std::uint32_t> images);

  // 1-based labels as in the one-line notation.
  static Permutation from_one_line(std::span<const std::uint32_t> labels);

  // Parses space-separated 1-based labels; rejects non-bijections with a
  // diagnostic naming the offending label.
  static Permutation parse_one_line(std::string_view text);

  std::uint32_t size() const { return static_cast<std::uint32_t>(images_.size()); }
  std::uint32_t operator()(std::uint32_t i) const { return images_[i]; }  // 0-based
  std::span<const std::uint32_t> images() const { return images_; }

  std::string one_line() const;

  bool operator==(const Permutation&) const = default;

 private:
  std::vector<std::uint32_t> images_;
};

struct CycleDecomposition {
  std::vector<std::vector<std::uint32_t>> cycles;  // 0-based indices
  std::uint32_t cycle_count = 0;
  CycleType type;
};

// All cycles via a visited-mark sweep, O(n).
CycleDecomposition decompose(const Permutation& p);

// Just the number of cycles, without materializing them.
std::uint32_t cycle_count(const Permutation& p);
std::uint32_t cycle_count(std::span<const std::uint32_t> images);

bool is_derangement(const Permutation& p);
bool is_derangement(std::span<const std::uint32_t> images);

// Derangement with every cycle of length 2 (perfect matching on n vertices).
bool is_fixed_point_free_involution(const Permutation& p);

// r(i) = p(q(i)).
Permutation compose(const Permutation& p, const Permutation& q);

}  // namespace derange
