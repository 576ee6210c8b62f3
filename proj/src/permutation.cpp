#include "derange/permutation.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <stdexcept>

namespace derange {
namespace {

void validate_bijection(const std::vector<std::uint32_t>& images) {
  const auto n = images.size();
  if (n > Permutation::kMaxSize) throw std::invalid_argument("permutation too large");
  std::vector<bool> seen(n, false);
  for (std::uint32_t v : images) {
    if (v >= n)
      throw std::invalid_argument("label " + std::to_string(v + 1) + " out of range 1.." +
                                  std::to_string(n));
    if (seen[v])
      throw std::invalid_argument("label " + std::to_string(v + 1) + " appears more than once");
    seen[v] = true;
  }
}

}  // namespace

Permutation Permutation::identity(std::uint32_t n) {
  std::vector<std::uint32_t> im(n);
  std::iota(im.begin(), im.end(), 0u);
  Permutation p;
  p.images_ = std::move(im);
  return p;
}

Permutation Permutation::from_images(std::vector<std::uint32_t> images) {
  validate_bijection(images);
  Permutation p;
  p.images_ = std::move(images);
  return p;
}

Permutation Permutation::from_one_line(std::span<const std::uint32_t> labels) {
  std::vector<std::uint32_t> im(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == 0) throw std::invalid_argument("labels are 1-based; found 0");
    im[i] = labels[i] - 1;
  }
  return from_images(std::move(im));
}

Permutation Permutation::parse_one_line(std::string_view text) {
  std::vector<std::uint32_t> labels;
  const char* p = text.data();
  const char* end = p + text.size();
  while (p < end) {
    while (p < end && (*p == ' ' || *p == '\t' || *p == '\n' || *p == '\r')) ++p;
    if (p == end) break;
    std::uint32_t v = 0;
    auto [next, ec] = std::from_chars(p, end, v);
    if (ec != std::errc{} || next == p)
      throw std::invalid_argument("expected a positive integer label near '" +
                                  std::string(p, std::min<std::size_t>(8, end - p)) + "'");
    labels.push_back(v);
    p = next;
  }
  if (labels.empty()) throw std::invalid_argument("empty permutation");
  // Report a missing label by name when the multiset is wrong.
  const auto n = labels.size();
  std::vector<std::uint32_t> count(n + 1, 0);
  for (std::uint32_t v : labels) {
    if (v == 0 || v > n)
      throw std::invalid_argument("label " + std::to_string(v) + " out of range 1.." +
                                  std::to_string(n));
    if (++count[v] > 1)
      throw std::invalid_argument("label " + std::to_string(v) + " appears more than once");
  }
  for (std::uint32_t v = 1; v <= n; ++v)
    if (count[v] == 0) throw std::invalid_argument("label " + std::to_string(v) + " is missing");
  return from_one_line(labels);
}

std::string Permutation::one_line() const {
  std::string out;
  out.reserve(images_.size() * 3);
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (i) out.push_back(' ');
    out += std::to_string(images_[i] + 1);
  }
  return out;
}

CycleDecomposition decompose(const Permutation& p) {
  const std::uint32_t n = p.size();
  CycleDecomposition d;
  d.type.a.assign(n, 0);
  std::vector<bool> seen(n, false);
  for (std::uint32_t i = 0; i < n; ++i) {
    if (seen[i]) continue;
    std::vector<std::uint32_t> cyc;
    std::uint32_t j = i;
    while (!seen[j]) {
      seen[j] = true;
      cyc.push_back(j);
      j = p(j);
    }
    d.type.a[cyc.size() - 1]++;
    d.cycles.push_back(std::move(cyc));
  }
  d.cycle_count = static_cast<std::uint32_t>(d.cycles.size());
  return d;
}

std::uint32_t cycle_count(std::span<const std::uint32_t> images) {
  const std::size_t n = images.size();
  std::vector<bool> seen(n, false);
  std::uint32_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (seen[i]) continue;
    ++k;
    std::size_t j = i;
    while (!seen[j]) {
      seen[j] = true;
      j = images[j];
    }
  }
  return k;
}

std::uint32_t cycle_count(const Permutation& p) { return cycle_count(p.images()); }

bool is_derangement(std::span<const std::uint32_t> images) {
  for (std::size_t i = 0; i < images.size(); ++i)
    if (images[i] == i) return false;
  return true;
}

bool is_derangement(const Permutation& p) { return is_derangement(p.images()); }

bool is_fixed_point_free_involution(const Permutation& p) {
  const std::uint32_t n = p.size();
  if (n % 2 != 0) return false;
  for (std::uint32_t i = 0; i < n; ++i) {
    if (p(i) == i) return false;
    if (p(p(i)) != i) return false;
  }
  return true;
}

Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.size() != q.size()) throw std::invalid_argument("compose: length mismatch");
  std::vector<std::uint32_t> im(p.size());
  for (std::uint32_t i = 0; i < p.size(); ++i) im[i] = p(q(i));
  return Permutation::from_images(std::move(im));
}

}  // namespace derange
